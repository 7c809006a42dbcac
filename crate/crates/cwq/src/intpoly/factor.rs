//! Exact factorization over the rationals: Berlekamp modulo a small prime,
//! linear Hensel lifting, and subset recombination. Sized for the desk
//! scale of this crate (degrees up to ~12).

use super::poly::{IntPolynomial, RatPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

const SMALL_PRIMES: [u64; 20] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
];

/// Full factorization into primitive irreducible factors with positive
/// leading coefficients. The rational content is dropped: the product of
/// the returned powers equals `f` up to a rational constant; for monic
/// input it equals `f` exactly.
pub fn factor_over_rationals(f: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(IntPolynomial, usize)> = Vec::new();
    let (v, deflated) = f.split_off_x_power();
    if v > 0 {
        out.push((IntPolynomial::x(), v));
    }
    let g = deflated.primitive();
    if g.degree() >= 1 {
        let sf = squarefree_part(&g);
        for h in factor_squarefree(&sf) {
            let mut m = 0;
            let mut rest = g.clone();
            while let Some(q) = rest.div_exact(&h) {
                m += 1;
                rest = q;
            }
            debug_assert!(m >= 1);
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    out
}

/// Product of the distinct irreducible factors (the radical).
pub fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    let fr = RatPoly::from_int(f);
    let g = fr.gcd(&fr.derivative());
    if g.degree() == 0 {
        return f.primitive();
    }
    let (q, r) = fr.divrem(&g);
    debug_assert!(r.is_zero());
    q.to_int_primitive()
}

/// Squarefree decomposition `f = prod f_i^i` (up to rational content),
/// with pairwise coprime squarefree `f_i`.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut rest = f.primitive();
    let mut out = Vec::new();
    let mut mult = 1usize;
    while rest.degree() >= 1 {
        let sf = squarefree_part(&rest);
        // the factors of multiplicity exactly `mult` in the original are the
        // ones of `sf` not dividing rest/sf
        let quot = rest.div_exact(&sf).unwrap_or_else(IntPolynomial::one);
        let sf_next = if quot.degree() >= 1 {
            squarefree_part(&quot)
        } else {
            IntPolynomial::one()
        };
        let level = RatPoly::from_int(&sf)
            .divrem(&RatPoly::from_int(&sf).gcd(&RatPoly::from_int(&sf_next)))
            .0
            .to_int_primitive();
        if level.degree() >= 1 {
            out.push((level, mult));
        }
        rest = quot;
        mult += 1;
    }
    out
}

/// Factors a primitive squarefree polynomial into irreducibles.
fn factor_squarefree(g: &IntPolynomial) -> Vec<IntPolynomial> {
    if g.degree() <= 1 {
        return vec![g.clone()];
    }
    let p = choose_prime(g);
    let gp = FpPoly::from_int(g, p).make_monic(p);
    let modular = berlekamp(&gp, p);
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // Hensel lift to p^k beyond twice the factor coefficient bound.
    let bound = factor_coeff_bound(g);
    let target = BigInt::from(2) * &bound + BigInt::one();
    let mut pk = BigInt::from(p);
    let mut k = 1u32;
    while pk < target {
        pk *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift(g, &modular, p, k);
    recombine(g, lifted, &pk)
}

fn choose_prime(g: &IntPolynomial) -> u64 {
    for &p in &SMALL_PRIMES {
        if (g.leading() % BigInt::from(p)).is_zero() {
            continue;
        }
        let gp = FpPoly::from_int(g, p);
        let der = gp.derivative(p);
        if der.is_zero() {
            continue;
        }
        if gp.gcd(&der, p).degree() == 0 {
            return p;
        }
    }
    panic!("no small prime with squarefree reduction; input degree too large for desk scale");
}

/// Mignotte-style bound on the coefficients of any integer factor times lc.
fn factor_coeff_bound(g: &IntPolynomial) -> BigInt {
    let norm2_sq: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + BigInt::one();
    (BigInt::one() << g.degree()) * norm2 * g.leading().abs()
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
struct FpPoly {
    c: Vec<u64>, // lowest first, no trailing zeros
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}
fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}
fn invm(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut t, mut newt): (i128, i128) = (0, 1);
    let (mut r, mut newr): (i128, i128) = (p as i128, (a % p) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert!(r == 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

impl FpPoly {
    fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { c }
    }

    fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let pp = BigInt::from(p);
        FpPoly::new(
            f.coeffs()
                .iter()
                .map(|x| {
                    use num_traits::ToPrimitive;
                    x.mod_floor(&pp).to_u64().unwrap()
                })
                .collect(),
        )
    }

    fn zero() -> Self {
        FpPoly { c: vec![] }
    }

    fn one() -> Self {
        FpPoly { c: vec![1] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn make_monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(self.lead(), p);
        FpPoly::new(self.c.iter().map(|&x| mulm(x, inv, p)).collect())
    }

    fn add(&self, rhs: &Self, p: u64) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = vec![0u64; n];
        for (i, &x) in self.c.iter().enumerate() {
            out[i] = x;
        }
        for (i, &x) in rhs.c.iter().enumerate() {
            out[i] = addm(out[i], x, p);
        }
        FpPoly::new(out)
    }

    fn sub(&self, rhs: &Self, p: u64) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut out = vec![0u64; n];
        for (i, &x) in self.c.iter().enumerate() {
            out[i] = x;
        }
        for (i, &x) in rhs.c.iter().enumerate() {
            out[i] = subm(out[i], x, p);
        }
        FpPoly::new(out)
    }

    fn mul(&self, rhs: &Self, p: u64) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero();
        }
        let mut out = vec![0u128; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p as u128;
            }
        }
        FpPoly::new(out.into_iter().map(|x| x as u64).collect())
    }

    fn divrem(&self, div: &Self, p: u64) -> (Self, Self) {
        assert!(!div.is_zero());
        if self.degree() < div.degree() || self.is_zero() {
            return (FpPoly::zero(), self.clone());
        }
        let mut rem = self.c.clone();
        let dq = self.degree() - div.degree();
        let mut quot = vec![0u64; dq + 1];
        let linv = invm(div.lead(), p);
        for k in (0..=dq).rev() {
            let top = rem[k + div.degree()];
            if top == 0 {
                continue;
            }
            let q = mulm(top, linv, p);
            quot[k] = q;
            for (i, &c) in div.c.iter().enumerate() {
                rem[k + i] = subm(rem[k + i], mulm(q, c, p), p);
            }
        }
        (FpPoly::new(quot), FpPoly::new(rem))
    }

    fn rem(&self, div: &Self, p: u64) -> Self {
        self.divrem(div, p).1
    }

    fn gcd(&self, other: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.make_monic(p)
    }

    fn derivative(&self, p: u64) -> Self {
        if self.c.len() <= 1 {
            return FpPoly::zero();
        }
        FpPoly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mulm(c, (i as u64 + 1) % p, p))
                .collect(),
        )
    }

    /// x^e mod (self), by square and multiply.
    fn x_pow_mod(&self, e: u64, p: u64) -> Self {
        let mut acc = FpPoly::one();
        let mut base = FpPoly::new(vec![0, 1]).rem(self, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(self, p);
            }
            base = base.mul(&base, p).rem(self, p);
            e >>= 1;
        }
        acc
    }

    /// Inverse of self modulo `m` (extended Euclid); None if not coprime.
    fn inv_mod(&self, m: &Self, p: u64) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m, p));
        let (mut t0, mut t1) = (FpPoly::zero(), FpPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            let t = t0.sub(&q.mul(&t1, p), p);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != 0 {
            return None;
        }
        let inv = invm(r0.lead(), p);
        Some(FpPoly::new(t0.c.iter().map(|&x| mulm(x, inv, p)).collect()).rem(m, p))
    }
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(g: &FpPoly, p: u64) -> Vec<FpPoly> {
    let g = g.make_monic(p);
    let n = g.degree();
    if n <= 1 {
        return vec![g];
    }
    // Frobenius matrix: column i = x^{ip} mod g
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        let col = g.x_pow_mod(i as u64 * p, p);
        for (j, &c) in col.c.iter().enumerate() {
            m[j][i] = c;
        }
    }
    for i in 0..n {
        m[i][i] = subm(m[i][i], 1, p);
    }
    let kernel = fp_kernel(&m, p);
    let r = kernel.len();
    if r == 1 {
        return vec![g];
    }
    let mut factors = vec![g.clone()];
    for v in kernel.iter() {
        if factors.len() == r {
            break;
        }
        let vp = FpPoly::new(v.clone());
        if vp.degree() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for f in factors.drain(..) {
            if f.degree() <= 1 {
                next.push(f);
                continue;
            }
            let mut rest = f;
            for s in 0..p {
                if rest.degree() <= 1 {
                    break;
                }
                let shifted = vp.sub(&FpPoly::new(vec![s]), p);
                let d = rest.gcd(&shifted, p);
                if d.degree() >= 1 && d.degree() < rest.degree() {
                    let (q, _) = rest.divrem(&d, p);
                    next.push(d);
                    rest = q;
                }
            }
            if !rest.is_zero() && rest.degree() >= 1 {
                next.push(rest);
            }
        }
        factors = next;
    }
    factors.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
    factors
}

fn fp_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let mut piv = None;
        for row in rank..n {
            if a[row][col] != 0 {
                piv = Some(row);
                break;
            }
        }
        let Some(pr) = piv else { continue };
        a.swap(rank, pr);
        let inv = invm(a[rank][col], p);
        for j in 0..n {
            a[rank][j] = mulm(a[rank][j], inv, p);
        }
        for row in 0..n {
            if row != rank && a[row][col] != 0 {
                let f = a[row][col];
                for j in 0..n {
                    a[row][j] = subm(a[row][j], mulm(f, a[rank][j], p), p);
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for fcol in 0..n {
        if pivots[fcol].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[fcol] = 1;
        for col in 0..n {
            if let Some(r) = pivots[col] {
                v[col] = subm(0, a[r][fcol], p);
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting and recombination.
// ---------------------------------------------------------------------------

fn mod_sym(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * BigInt::from(2) > *m {
        r - m
    } else {
        r
    }
}

fn int_poly_mod_sym(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| mod_sym(c, m)).collect())
}

/// Lifts `g = lc * prod(u_i) mod p` to the same congruence mod `p^k`.
/// The `u_i` stay monic. Linear lifting, one prime power at a time.
fn hensel_lift(g: &IntPolynomial, modular: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    let pp = BigInt::from(p);
    let lc = g.leading();
    // Bezout data mod p: s_i = (lc * prod_{j != i} u_j)^{-1} mod (u_i, p)
    let mut bezout = Vec::new();
    for (i, ui) in modular.iter().enumerate() {
        let mut w = FpPoly::new(vec![{
            use num_traits::ToPrimitive;
            lc.mod_floor(&pp).to_u64().unwrap()
        }]);
        for (j, uj) in modular.iter().enumerate() {
            if j != i {
                w = w.mul(uj, p).rem(ui, p);
            }
        }
        let s = w
            .inv_mod(ui, p)
            .expect("pairwise coprime modular factors");
        bezout.push(s);
    }
    let mut lifted: Vec<IntPolynomial> = modular
        .iter()
        .map(|u| IntPolynomial::new(u.c.iter().map(|&c| BigInt::from(c)).collect()))
        .collect();
    let mut modulus = pp.clone();
    for _ in 1..k {
        // error e = (g - lc*prod u_i)/modulus  mod p
        let mut prod = IntPolynomial::constant(lc.clone());
        for u in &lifted {
            prod = prod.mul(u);
        }
        let diff = g.sub(&prod);
        let e_coeffs: Vec<BigInt> = diff
            .coeffs()
            .iter()
            .map(|c| {
                let q = c / &modulus;
                debug_assert!((c - &q * &modulus).is_zero());
                q.mod_floor(&pp)
            })
            .collect();
        let e = FpPoly::new(
            e_coeffs
                .iter()
                .map(|c| {
                    use num_traits::ToPrimitive;
                    c.to_u64().unwrap()
                })
                .collect(),
        );
        for (i, u) in lifted.iter_mut().enumerate() {
            let ui_p = FpPoly::from_int(u, p);
            let delta = e.mul(&bezout[i], p).rem(&ui_p, p);
            let delta_int =
                IntPolynomial::new(delta.c.iter().map(|&c| BigInt::from(c)).collect());
            *u = u.add(&delta_int.scale(&modulus));
        }
        modulus *= &pp;
    }
    lifted
}

/// Subset recombination of lifted modular factors into true factors.
fn recombine(g: &IntPolynomial, mut pool: Vec<IntPolynomial>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let idxs: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand = IntPolynomial::constant(rest.leading());
            for &i in &combo {
                cand = cand.mul(&pool[i]);
                cand = int_poly_mod_sym(&cand, pk);
            }
            let cand = cand.primitive();
            if cand.degree() >= 1 {
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q.primitive();
                    let mut keep = Vec::new();
                    for (i, f) in pool.drain(..).enumerate() {
                        if !combo.contains(&i) {
                            keep.push(f);
                        }
                    }
                    pool = keep;
                    continue 'outer;
                }
            }
        }
        size += 1;
    }
    if rest.degree() >= 1 {
        out.push(rest);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

use num_integer::Integer;

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn factor_x4_minus_1() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = poly(&[-1, 0, 0, 0, 1]);
        let fs = factor_over_rationals(&f);
        assert_eq!(fs.len(), 3);
        let expect = [poly(&[-1, 1]), poly(&[1, 1]), poly(&[1, 0, 1])];
        for e in &expect {
            assert!(fs.iter().any(|(h, m)| h == e && *m == 1), "missing {e}");
        }
    }

    #[test]
    fn factor_f6_irreducible() {
        let f = poly(&[1, 0, -1, -1, -1, 0, 1]);
        let fs = factor_over_rationals(&f);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (f, 1));
    }

    #[test]
    fn factor_square() {
        // (x^2-3x+1)^2
        let f = poly(&[1, -3, 1]).mul(&poly(&[1, -3, 1]));
        let fs = factor_over_rationals(&f);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (poly(&[1, -3, 1]), 2));
    }

    #[test]
    fn factor_products_roundtrip() {
        let f = poly(&[-1, 4, -4, 1]); // (x-1)(x^2-3x+1)
        let fs = factor_over_rationals(&f);
        let mut prod = IntPolynomial::one();
        for (h, m) in &fs {
            prod = prod.mul(&h.pow(*m));
        }
        assert_eq!(prod, f);
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn factor_cyclotomic_product() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = poly(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor_over_rationals(&f);
        assert_eq!(fs.len(), 4);
        let mut prod = IntPolynomial::one();
        for (h, m) in &fs {
            prod = prod.mul(&h.pow(*m));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn squarefree_decomp() {
        // (x-1)^3 (x+2)
        let f = poly(&[-1, 1]).pow(3).mul(&poly(&[2, 1]));
        let d = squarefree_decomposition(&f);
        assert!(d.contains(&(poly(&[2, 1]), 1)));
        assert!(d.contains(&(poly(&[-1, 1]), 3)));
    }
}
