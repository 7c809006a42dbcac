use super::gauss::GRat;
use super::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense matrix over the rationals, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    s += &self[(i, j)] * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn add(&self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= r;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Row echelon reduction in place; returns (rank, pivot columns, det of
    /// the square part if square, accounting for row swaps).
    fn row_reduce(&mut self) -> (usize, Vec<usize>, Rat) {
        let mut det = Rat::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if !self[(i, c)].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, p * self.cols + j);
                }
                det = -det;
            }
            let inv = self[(r, c)].recip();
            det *= &self[(r, c)];
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &factor * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if r < self.rows.min(self.cols) {
            det = Rat::zero();
        }
        (r, pivots, det)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().0
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        if self.rows == 0 {
            return Rat::one();
        }
        let mut m = self.clone();
        let (rank, _, det) = m.row_reduce();
        if rank < self.rows {
            Rat::zero()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (rank, pivots, _) = aug.row_reduce();
        if rank < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut out = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    /// Solves `A x = b`; `None` when inconsistent. Free variables are set to 0.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (_, pivots, _) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // pivot in augmented column: inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let (_, pivots, _) = m.row_reduce();
        let mut basis = Vec::new();
        let pivset: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivset.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial coefficients, lowest degree first, via
    /// the Faddeev-LeVerrier recursion (exact).
    pub fn char_poly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = QMat::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let mut tr = Rat::zero();
            for i in 0..n {
                tr += &m[(i, i)];
            }
            let c = -tr / Rat::from_integer((k as i64).into());
            coeffs[n - k] = c.clone();
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }

    /// Horner evaluation of an integer polynomial at this matrix.
    pub fn eval_int_poly(&self, coeffs: &[BigInt]) -> QMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = QMat::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc);
            let cr = Rat::from_integer(c.clone());
            for i in 0..n {
                acc[(i, i)] += &cr;
            }
        }
        acc
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for x in &self.data {
            let d = x.denom();
            let g = num_integer::Integer::gcd(&l, d);
            l = l / g * d;
        }
        l
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<GRat>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![GRat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        CMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GRat::one();
        }
        m
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    pub fn det(&self) -> GRat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return GRat::one();
        }
        let mut m = self.clone();
        let mut det = GRat::one();
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if !m[(i, c)].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { return GRat::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(c * n + j, p * n + j);
                }
                det = -&det;
            }
            let pivval = m[(c, c)].clone();
            det = &det * &pivval;
            let inv = pivval.inv().unwrap();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &(&factor * &m[(c, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Real 2n x n matrix `(Re; Im)` of the column span, for rank checks.
    pub fn real_stack(&self) -> QMat {
        let mut out = QMat::zeros(2 * self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].re.clone();
                out[(self.rows + i, j)] = self[(i, j)].im.clone();
            }
        }
        out
    }

    pub fn conj(&self) -> CMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.conj();
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let mut t = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = GRat;
    fn index(&self, (i, j): (usize, usize)) -> &GRat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GRat {
        &mut self.data[i * self.cols + j]
    }
}

/// Column-style Hermite normal form of an integer matrix (columns generate
/// the lattice). Returns the HNF with zero columns dropped.
pub fn hermite_normal_form(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let rows = mat.len();
    let cols = mat[0].len();
    // work on columns
    let mut c: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..rows).map(|i| mat[i][j].clone()).collect())
        .collect();
    let mut col = 0;
    for row in 0..rows {
        // find a column with nonzero entry at `row`, reduce pairwise gcd-style
        loop {
            let mut best: Option<usize> = None;
            for j in col..c.len() {
                if !c[j][row].is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if c[j][row].magnitude() < c[b][row].magnitude() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            c.swap(col, b);
            let mut done = true;
            for j in (col + 1)..c.len() {
                if c[j][row].is_zero() {
                    continue;
                }
                let q = &c[j][row] / &c[col][row];
                if !q.is_zero() {
                    for i in 0..rows {
                        let v = &c[j][i] - &q * &c[col][i];
                        c[j][i] = v;
                    }
                }
                if !c[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if col < c.len() && !c[col][row].is_zero() {
            if c[col][row].is_negative() {
                for i in 0..rows {
                    c[col][i] = -c[col][i].clone();
                }
            }
            // reduce earlier columns against this pivot
            for j in 0..col {
                if c[j][row].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&c[j][row], &c[col][row]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let v = &c[j][i] - &q * &c[col][i];
                        c[j][i] = v;
                    }
                }
            }
            col += 1;
        }
    }
    c.truncate(col);
    // back to row major
    c.iter()
        .map(|colv| colv.clone())
        .collect::<Vec<_>>()
        .iter()
        .fold(vec![vec![]; rows], |mut acc, colv| {
            for (i, v) in colv.iter().enumerate() {
                acc[i].push(v.clone());
            }
            acc
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat_i;

    #[test]
    fn det_solve_inverse() {
        let a = QMat::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(), rat_i(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        let x = a.solve(&[rat_i(3), rat_i(2)]).unwrap();
        assert_eq!(x, vec![rat_i(1), rat_i(1)]);
    }

    #[test]
    fn char_poly_companion() {
        // [[0,-1],[1,3]] has char poly x^2 - 3x + 1
        let a = QMat::from_int_rows(&[vec![0, -1], vec![1, 3]]);
        let cp = a.char_poly();
        assert_eq!(cp, vec![rat_i(1), rat_i(-3), rat_i(1)]);
    }

    #[test]
    fn kernel_and_rank() {
        let a = QMat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            let img = a.mul_vec(&v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn hnf_canonical() {
        use num_bigint::BigInt;
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(0), BigInt::from(2)],
        ];
        let h = hermite_normal_form(&m);
        // lattice 2Z x 2Z: HNF diag(2,2)
        assert_eq!(h.len(), 2);
        assert_eq!(h[0][0], BigInt::from(2));
        assert_eq!(h[1][1], BigInt::from(2));
    }
}
