//! Cahen-Wallach parameter handling: moduli normalization and isometry
//! testing, the metric, and exact arithmetic in the isometry-group model
//! `H_n(omega) x| (R x K)`.
//!
//! The concrete ambient follows the oscillator-group coordinates:
//! `a = C^p (+) C^q`, the involution is complex conjugation,
//! `L = (L_lambda o conj_p) (+) L_mu`, the scalar product is
//! `<u,v>_{p,p} (+) <u,v>_{2q}` and `omega = <L . , .>`.

use crate::arith::{GRat, Number, QMat, Rat};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CwError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible ambient data")]
    IncompatibleAmbient,
    #[error("parameters must be nonzero")]
    ZeroParameter,
}

/// Cahen-Wallach space type and flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CwType {
    Real,
    Imaginary,
    Mixed,
}

/// One parameter value: an exact scalar in the declared field when
/// available, always with a float shadow for normalization and reporting.
#[derive(Clone, Debug)]
pub struct ParamValue {
    pub exact: Option<Number>,
    pub approx: f64,
}

impl ParamValue {
    pub fn from_f64(x: f64) -> Self {
        ParamValue {
            exact: crate::arith::rat_from_f64_approx(x).map(Number::from_rat),
            approx: x,
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        ParamValue {
            approx: crate::arith::rat_to_f64(&r),
            exact: Some(Number::from_rat(r)),
        }
    }

    pub fn from_number(n: Number) -> Self {
        ParamValue {
            approx: n.approx(),
            exact: Some(n),
        }
    }

    pub fn approx_only(x: f64) -> Self {
        ParamValue { exact: None, approx: x }
    }
}

/// Parameters `(lambda; mu)` of `X_{p,q}(lambda, mu)`; all entries nonzero.
#[derive(Clone, Debug)]
pub struct CWParams {
    pub lambda: Vec<ParamValue>,
    pub mu: Vec<ParamValue>,
}

impl CWParams {
    pub fn new(lambda: Vec<ParamValue>, mu: Vec<ParamValue>) -> Result<Self, CwError> {
        if lambda.is_empty() && mu.is_empty() {
            return Err(CwError::DimensionMismatch("(p, q) = (0, 0)".into()));
        }
        for v in lambda.iter().chain(&mu) {
            if v.approx == 0.0 && v.exact.as_ref().map_or(true, |e| e.is_zero()) {
                return Err(CwError::ZeroParameter);
            }
        }
        Ok(CWParams { lambda, mu })
    }

    pub fn from_f64(lambda: &[f64], mu: &[f64]) -> Result<Self, CwError> {
        CWParams::new(
            lambda.iter().map(|&x| ParamValue::from_f64(x)).collect(),
            mu.iter().map(|&x| ParamValue::from_f64(x)).collect(),
        )
    }

    pub fn p(&self) -> usize {
        self.lambda.len()
    }

    pub fn q(&self) -> usize {
        self.mu.len()
    }

    pub fn cw_type(&self) -> CwType {
        match (self.p(), self.q()) {
            (_, 0) => CwType::Real,
            (0, _) => CwType::Imaginary,
            _ => CwType::Mixed,
        }
    }

    /// Canonical representative of the isometry class: absolute values
    /// sorted increasingly, scaled so that the anchor entry is 1
    /// (`mu_1 = 1` when `q > 0`, else `lambda_1 = 1`); for mixed type the
    /// lambda block stays positive increasing.
    pub fn normalize(&self) -> CWParams {
        let mut lam: Vec<f64> = self.lambda.iter().map(|v| v.approx.abs()).collect();
        let mut mu: Vec<f64> = self.mu.iter().map(|v| v.approx.abs()).collect();
        lam.sort_by(|a, b| a.partial_cmp(b).unwrap());
        mu.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = if !mu.is_empty() { mu[0] } else { lam[0] };
        // exact path: all entries exact and proportional to the anchor by
        // rationals
        if let Some(exact) = self.normalize_exact() {
            return exact;
        }
        CWParams {
            lambda: lam
                .iter()
                .map(|&x| ParamValue::approx_only(x / scale))
                .collect(),
            mu: mu
                .iter()
                .map(|&x| ParamValue::approx_only(x / scale))
                .collect(),
        }
    }

    /// Exact normalization when every entry is exact, absolute values are
    /// decidable, and all ratios to the anchor are rational.
    fn normalize_exact(&self) -> Option<CWParams> {
        let mut lam: Vec<Number> = Vec::new();
        for v in &self.lambda {
            lam.push(v.exact.clone()?.abs()?);
        }
        let mut mu: Vec<Number> = Vec::new();
        for v in &self.mu {
            mu.push(v.exact.clone()?.abs()?);
        }
        sort_numbers(&mut lam)?;
        sort_numbers(&mut mu)?;
        let anchor = if !mu.is_empty() { mu[0].clone() } else { lam[0].clone() };
        // ratios must be rational: value = r * anchor
        let ratio = |x: &Number| -> Option<Rat> {
            if let (Some(xr), Some(ar)) = (x.as_rat(), anchor.as_rat()) {
                return Some(xr / ar);
            }
            // both irrational in the same one-generator direction
            if x.rational_part().is_zero() && anchor.rational_part().is_zero() {
                let xc: Vec<(usize, Rat)> =
                    x.coords().map(|(i, c)| (i, c.clone())).collect();
                let ac: Vec<(usize, Rat)> =
                    anchor.coords().map(|(i, c)| (i, c.clone())).collect();
                if xc.len() == 1 && ac.len() == 1 && xc[0].0 == ac[0].0 {
                    return Some(&xc[0].1 / &ac[0].1);
                }
            }
            // general proportionality check x = r * anchor over all coords
            let ar = anchor.rational_part();
            if !ar.is_zero() {
                let r = x.rational_part() / ar;
                if x.eq_exact(&anchor.scale(&r)) {
                    return Some(r);
                }
            }
            None
        };
        let lam_out: Option<Vec<ParamValue>> = lam
            .iter()
            .map(|x| ratio(x).map(|r| ParamValue::from_rat(r)))
            .collect();
        let mu_out: Option<Vec<ParamValue>> = mu
            .iter()
            .map(|x| ratio(x).map(|r| ParamValue::from_rat(r)))
            .collect();
        Some(CWParams {
            lambda: lam_out?,
            mu: mu_out?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p(),
            "q": self.q(),
            "lambda": self.lambda.iter().map(|v| v.approx).collect::<Vec<_>>(),
            "mu": self.mu.iter().map(|v| v.approx).collect::<Vec<_>>(),
        })
    }
}

fn sort_numbers(xs: &mut [Number]) -> Option<()> {
    // insertion sort with certified comparisons
    for i in 1..xs.len() {
        let mut j = i;
        while j > 0 {
            let diff = xs[j - 1].sub(&xs[j]);
            match diff.sign()? {
                1 => {
                    xs.swap(j - 1, j);
                    j -= 1;
                }
                _ => break,
            }
        }
    }
    Some(())
}

/// Isometry test: same type and equal canonical forms (exact where both
/// sides are exact, tolerance `1e-12` otherwise).
pub fn isometric(a: &CWParams, b: &CWParams) -> bool {
    if a.p() != b.p() || a.q() != b.q() {
        return false;
    }
    let na = a.normalize();
    let nb = b.normalize();
    let close = |x: &ParamValue, y: &ParamValue| -> bool {
        if let (Some(xe), Some(ye)) = (&x.exact, &y.exact) {
            if xe.registry().is_none() && ye.registry().is_none() {
                return xe.eq_exact(ye);
            }
        }
        let scale = x.approx.abs().max(y.approx.abs()).max(1.0);
        (x.approx - y.approx).abs() <= 1e-12 * scale
    };
    na.lambda.iter().zip(&nb.lambda).all(|(x, y)| close(x, y))
        && na.mu.iter().zip(&nb.mu).all(|(x, y)| close(x, y))
}

/// Metric evaluation `g(u, v)` at a point, with
/// `g = 2 dz dz' + sum dx_i^2 + (sum lambda_i^2 x_i^2 - sum mu_j^2
/// x_{p+j}^2) dz'^2` and coordinates ordered `(z, x_1..x_n, z')`.
pub fn metric_at(
    params: &CWParams,
    point: &[f64],
    u: &[f64],
    v: &[f64],
) -> Result<f64, CwError> {
    let n = params.p() + params.q();
    if point.len() != n + 2 || u.len() != n + 2 || v.len() != n + 2 {
        return Err(CwError::DimensionMismatch(format!(
            "expected {} coordinates",
            n + 2
        )));
    }
    let x = &point[1..=n];
    let mut coef = 0.0;
    for (i, l) in params.lambda.iter().enumerate() {
        coef += l.approx * l.approx * x[i] * x[i];
    }
    for (j, m) in params.mu.iter().enumerate() {
        coef -= m.approx * m.approx * x[params.p() + j] * x[params.p() + j];
    }
    let zp = n + 1;
    let mut val = u[0] * v[zp] + u[zp] * v[0]; // 2 dz dz' as a symmetric form
    for i in 1..=n {
        val += u[i] * v[i];
    }
    val += coef * u[zp] * v[zp];
    Ok(val)
}

// ---------------------------------------------------------------------------
// Exact group arithmetic in H x| (R x K).
// ---------------------------------------------------------------------------

/// Exact rational ambient `a = C^p (+) C^q` with the standard structure
/// maps; hosts the Heisenberg cocycle and the semidirect action.
#[derive(Clone, Debug)]
pub struct CwAmbient {
    pub lambda: Vec<Rat>,
    pub mu: Vec<Rat>,
}

impl CwAmbient {
    pub fn new(lambda: Vec<Rat>, mu: Vec<Rat>) -> Result<Self, CwError> {
        if lambda.iter().chain(&mu).any(|x| x.is_zero()) {
            return Err(CwError::ZeroParameter);
        }
        Ok(CwAmbient { lambda, mu })
    }

    pub fn n(&self) -> usize {
        self.lambda.len() + self.mu.len()
    }

    /// `L a`: `i lambda_j conj(a_j)` on the real block, `i mu_j a_j` on the
    /// imaginary block.
    pub fn l_map(&self, a: &[GRat]) -> Vec<GRat> {
        assert_eq!(a.len(), self.n());
        let p = self.lambda.len();
        let mut out = Vec::with_capacity(a.len());
        for (j, x) in a.iter().enumerate() {
            let v = if j < p {
                let c = x.conj();
                GRat::new(-&c.im * &self.lambda[j], &c.re * &self.lambda[j])
            } else {
                GRat::new(-&x.im * &self.mu[j - p], &x.re * &self.mu[j - p])
            };
            out.push(v);
        }
        out
    }

    /// conjugation involution `theta_a`.
    pub fn theta_a(&self, a: &[GRat]) -> Vec<GRat> {
        a.iter().map(|x| x.conj()).collect()
    }

    /// `<u, v>_a = <u,v>_{p,p} (+) <u,v>_{2q}`: `-Re(sum u_j v_j)` on the
    /// real block (no conjugation), `Re(sum u_j conj(v_j))` on the
    /// imaginary block.
    pub fn inner(&self, u: &[GRat], v: &[GRat]) -> Rat {
        let p = self.lambda.len();
        let mut acc = Rat::zero();
        for j in 0..u.len() {
            if j < p {
                acc -= &u[j].re * &v[j].re - &u[j].im * &v[j].im;
            } else {
                acc += &u[j].re * &v[j].re + &u[j].im * &v[j].im;
            }
        }
        acc
    }

    /// Symplectic cocycle `omega(u, v) = <L u, v>_a`.
    pub fn omega(&self, u: &[GRat], v: &[GRat]) -> Rat {
        self.inner(&self.l_map(u), v)
    }

    /// Structure checks: `theta* omega = -omega`, `L theta = -theta L`,
    /// `omega(L u, v) + omega(u, L v) = 0`, verified on a spanning set.
    pub fn verify_structure(&self) -> bool {
        let n = self.n();
        let mut basis: Vec<Vec<GRat>> = Vec::new();
        for j in 0..n {
            let mut e = vec![GRat::zero(); n];
            e[j] = GRat::from_int(1);
            basis.push(e.clone());
            e[j] = GRat::i();
            basis.push(e);
        }
        for u in &basis {
            for v in &basis {
                let tu = self.theta_a(u);
                let tv = self.theta_a(v);
                if self.omega(&tu, &tv) != -self.omega(u, v) {
                    return false;
                }
                let ltu = self.l_map(&tu);
                let tlu = self.theta_a(&self.l_map(u));
                if ltu.iter().zip(&tlu).any(|(x, y)| x != &(-y)) {
                    return false;
                }
                let a = self.omega(&self.l_map(u), v) + self.omega(u, &self.l_map(v));
                if !a.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Lie bracket on `z (+) a (+) R`:
    /// `[(z,a,t), (z',a',t')] = (omega(a,a'), t L a' - t' L a, 0)`.
    pub fn bracket(
        &self,
        x: (&Rat, &[GRat], &Rat),
        y: (&Rat, &[GRat], &Rat),
    ) -> (Rat, Vec<GRat>, Rat) {
        let z = self.omega(x.1, y.1);
        let la_y = self.l_map(y.1);
        let la_x = self.l_map(x.1);
        let a: Vec<GRat> = la_y
            .iter()
            .zip(&la_x)
            .map(|(ly, lx)| &ly.scale(x.2) - &lx.scale(y.2))
            .collect();
        (z, a, Rat::zero())
    }

    /// Ad-invariant scalar product on `z (+) a (+) R`:
    /// `z (perp) z (+) a`, `<z, t> = z t`, `<a, a>` as `inner`.
    pub fn triple_inner(
        &self,
        x: (&Rat, &[GRat], &Rat),
        y: (&Rat, &[GRat], &Rat),
    ) -> Rat {
        x.0 * y.2 + y.0 * x.2 + self.inner(x.1, y.1)
    }
}

/// Group element `(z, a) . t . act` of `H x| (R x K)`; the `R x K` part is
/// stored by its exact action matrix on `a` (for `t = 0` this is a `K`
/// element; in general it represents `e^{tL} phi`).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub z: Rat,
    pub a: Vec<GRat>,
    pub t: Rat,
    pub act: Vec<Vec<GRat>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            z: Rat::zero(),
            a: vec![GRat::zero(); n],
            t: Rat::zero(),
            act: identity_act(n),
        }
    }

    pub fn central(n: usize, z: Rat) -> Self {
        let mut e = GroupElement::identity(n);
        e.z = z;
        e
    }

    pub fn translation(a: Vec<GRat>) -> Self {
        let n = a.len();
        GroupElement {
            z: Rat::zero(),
            a,
            t: Rat::zero(),
            act: identity_act(n),
        }
    }
}

pub fn identity_act(n: usize) -> Vec<Vec<GRat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GRat::from_int(1) } else { GRat::zero() })
                .collect()
        })
        .collect()
}

fn act_apply(act: &[Vec<GRat>], a: &[GRat]) -> Vec<GRat> {
    act.iter()
        .map(|row| {
            let mut acc = GRat::zero();
            for (x, y) in row.iter().zip(a) {
                acc += &(x * y);
            }
            acc
        })
        .collect()
}

fn act_mul(x: &[Vec<GRat>], y: &[Vec<GRat>]) -> Vec<Vec<GRat>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = GRat::zero();
                    for k in 0..n {
                        acc += &(&x[i][k] * &y[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Validation of a group element against the ambient: the action must
/// preserve `omega` (symplecticity); for `t = 0` it must in addition lie
/// in `K` (orthogonal, commuting with `theta_a` and `L`).
pub fn validate_element(amb: &CwAmbient, g: &GroupElement) -> Result<(), CwError> {
    let n = amb.n();
    if g.a.len() != n || g.act.len() != n {
        return Err(CwError::DimensionMismatch("element size".into()));
    }
    let mut basis: Vec<Vec<GRat>> = Vec::new();
    for j in 0..n {
        let mut e = vec![GRat::zero(); n];
        e[j] = GRat::from_int(1);
        basis.push(e.clone());
        e[j] = GRat::i();
        basis.push(e);
    }
    for u in &basis {
        for v in &basis {
            let au = act_apply(&g.act, u);
            let av = act_apply(&g.act, v);
            if amb.omega(&au, &av) != amb.omega(u, v) {
                return Err(CwError::IncompatibleAmbient);
            }
        }
    }
    if g.t.is_zero() {
        for u in &basis {
            for v in &basis {
                let au = act_apply(&g.act, u);
                let av = act_apply(&g.act, v);
                if amb.inner(&au, &av) != amb.inner(u, v) {
                    return Err(CwError::IncompatibleAmbient);
                }
            }
            // commutation with theta and L
            let a1 = act_apply(&g.act, &amb.theta_a(u));
            let a2 = amb.theta_a(&act_apply(&g.act, u));
            if a1 != a2 {
                return Err(CwError::IncompatibleAmbient);
            }
            let b1 = act_apply(&g.act, &amb.l_map(u));
            let b2 = amb.l_map(&act_apply(&g.act, u));
            if b1 != b2 {
                return Err(CwError::IncompatibleAmbient);
            }
        }
    }
    Ok(())
}

/// Multiplication in `H x| (R x K)`: the Heisenberg law with cocycle
/// `omega(a, a')/2`, the `R x K` part acting on the second factor.
pub fn group_mul(amb: &CwAmbient, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
    let moved = act_apply(&g1.act, &g2.a);
    let half = Rat::new(1.into(), 2.into());
    let z = &g1.z + &g2.z + amb.omega(&g1.a, &moved) * half;
    let a: Vec<GRat> = g1.a.iter().zip(&moved).map(|(x, y)| x + y).collect();
    GroupElement {
        z,
        a,
        t: &g1.t + &g2.t,
        act: act_mul(&g1.act, &g2.act),
    }
}

pub fn group_inv(amb: &CwAmbient, g: &GroupElement) -> GroupElement {
    // (h, r)^-1 = (r^-1(h^-1), r^-1); h^-1 = (-z, -a)
    let inv_act = invert_act(&g.act);
    let back = act_apply(&inv_act, &g.a);
    let a: Vec<GRat> = back.iter().map(|x| -x).collect();
    let _ = amb;
    GroupElement {
        z: -g.z.clone(),
        a,
        t: -g.t.clone(),
        act: inv_act,
    }
}

fn invert_act(act: &[Vec<GRat>]) -> Vec<Vec<GRat>> {
    // real 2n x 2n inversion via the complex entries: treat as CMat
    let n = act.len();
    let m = crate::arith::CMat::from_rows(act.to_vec());
    // Gauss-Jordan over the Gaussian rationals
    let mut aug = crate::arith::CMat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = GRat::from_int(1);
    }
    for c in 0..n {
        let mut piv = None;
        for r in c..n {
            if !aug[(r, c)].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let p = piv.expect("action matrix invertible");
        if p != c {
            for j in 0..2 * n {
                let tmp = aug[(c, j)].clone();
                aug[(c, j)] = aug[(p, j)].clone();
                aug[(p, j)] = tmp;
            }
        }
        let inv = aug[(c, c)].inv().unwrap();
        for j in 0..2 * n {
            aug[(c, j)] = &aug[(c, j)] * &inv;
        }
        for r in 0..n {
            if r != c && !aug[(r, c)].is_zero() {
                let f = aug[(r, c)].clone();
                for j in 0..2 * n {
                    let v = &aug[(r, j)] - &(&f * &aug[(c, j)]);
                    aug[(r, j)] = v;
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| aug[(i, n + j)].clone()).collect())
        .collect()
}

/// The involution `theta(z, a, t, act) = (-z, theta_a(a), -t, theta act
/// theta)`.
pub fn theta(amb: &CwAmbient, g: &GroupElement) -> GroupElement {
    let n = amb.n();
    let mut conj_act = vec![vec![GRat::zero(); n]; n];
    // theta act theta: conjugate all entries of the complex matrix
    // (conjugation is the real-coordinates conjugation of the action)
    for i in 0..n {
        for j in 0..n {
            conj_act[i][j] = g.act[i][j].conj();
        }
    }
    GroupElement {
        z: -g.z.clone(),
        a: amb.theta_a(&g.a),
        t: -g.t.clone(),
        act: conj_act,
    }
}

/// JSON per the external interface.
pub fn element_to_json(g: &GroupElement) -> serde_json::Value {
    serde_json::json!({
        "z": crate::arith::rat_to_f64(&g.z),
        "a": g.a.iter().map(|x| {
            let (re, im) = x.to_c64();
            serde_json::json!([re, im])
        }).collect::<Vec<_>>(),
        "t": crate::arith::rat_to_f64(&g.t),
        "phi": g.act.iter().map(|row| row.iter().map(|x| {
            let (re, im) = x.to_c64();
            serde_json::json!([re, im])
        }).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Exact metric for rational data (test and verification path).
pub fn metric_at_rat(
    lambda: &[Rat],
    mu: &[Rat],
    point: &[Rat],
    u: &[Rat],
    v: &[Rat],
) -> Result<Rat, CwError> {
    let n = lambda.len() + mu.len();
    if point.len() != n + 2 || u.len() != n + 2 || v.len() != n + 2 {
        return Err(CwError::DimensionMismatch(format!(
            "expected {} coordinates",
            n + 2
        )));
    }
    let x = &point[1..=n];
    let mut coef = Rat::zero();
    for (i, l) in lambda.iter().enumerate() {
        coef += l * l * &x[i] * &x[i];
    }
    for (j, m) in mu.iter().enumerate() {
        coef -= m * m * &x[lambda.len() + j] * &x[lambda.len() + j];
    }
    let zp = n + 1;
    let mut val = &u[0] * &v[zp] + &u[zp] * &v[0];
    for i in 1..=n {
        val += &u[i] * &v[i];
    }
    val += coef * &u[zp] * &v[zp];
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn normalize_examples() {
        // ((2,-2), ()) -> ((1,1), ())
        let p = CWParams::from_f64(&[2.0, -2.0], &[]).unwrap();
        let n = p.normalize();
        assert!((n.lambda[0].approx - 1.0).abs() < 1e-14);
        assert!((n.lambda[1].approx - 1.0).abs() < 1e-14);
        // ((3), (6,-9)) -> ((1/2), (1, 3/2))
        let p = CWParams::from_f64(&[3.0], &[6.0, -9.0]).unwrap();
        let n = p.normalize();
        assert!((n.lambda[0].approx - 0.5).abs() < 1e-14);
        assert!((n.mu[0].approx - 1.0).abs() < 1e-14);
        assert!((n.mu[1].approx - 1.5).abs() < 1e-14);
        // exactness of the rational path
        assert!(n.mu[1].exact.as_ref().unwrap().as_rat().unwrap() == &rat(3, 2));
        // ((), (5,5)) -> ((), (1,1))
        let p = CWParams::from_f64(&[], &[5.0, 5.0]).unwrap();
        let n = p.normalize();
        assert!((n.mu[0].approx - 1.0).abs() < 1e-14);
    }

    #[test]
    fn isometric_examples() {
        let a = CWParams::from_f64(&[1.0, 1.0], &[]).unwrap();
        let b = CWParams::from_f64(&[7.0, 7.0], &[]).unwrap();
        assert!(isometric(&a, &b));
        let c = CWParams::from_f64(&[1.0, 2.0], &[]).unwrap();
        assert!(!isometric(&a, &c));
        let d = CWParams::from_f64(&[1.0], &[1.0]).unwrap();
        let e = CWParams::from_f64(&[2.0], &[2.0]).unwrap();
        assert!(isometric(&d, &e));
        // different types never isometric
        assert!(!isometric(&a, &d));
    }

    #[test]
    fn normalize_idempotent_and_fiber_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p: usize = rng.gen_range(0..3);
            let q: usize = rng.gen_range(usize::from(p == 0)..3);
            let lam: Vec<f64> = (0..p)
                .map(|_| (rng.gen_range(1..20) as f64) * if rng.gen_bool(0.5) { -0.25 } else { 0.5 })
                .collect();
            let mu: Vec<f64> = (0..q)
                .map(|_| (rng.gen_range(1..20) as f64) * if rng.gen_bool(0.5) { -0.25 } else { 0.5 })
                .collect();
            let params = CWParams::from_f64(&lam, &mu).unwrap();
            let n1 = params.normalize();
            let n2 = n1.normalize();
            assert!(isometric(&n1, &n2));
            // fiber invariance: scale and signed-permute
            let r = 3.0;
            let mut lam2: Vec<f64> = lam.iter().map(|x| -x * r).collect();
            lam2.reverse();
            let mut mu2: Vec<f64> = mu.iter().map(|x| x * r).collect();
            mu2.reverse();
            let params2 = CWParams::from_f64(&lam2, &mu2).unwrap();
            assert!(isometric(&params, &params2));
        }
    }

    #[test]
    fn metric_values() {
        let p = CWParams::from_f64(&[1.0], &[]).unwrap();
        // u = v = d_z: no dz^2 term
        let point = vec![0.3, 0.7, 0.9];
        let dz = vec![1.0, 0.0, 0.0];
        let dzp = vec![0.0, 0.0, 1.0];
        assert_eq!(metric_at(&p, &point, &dz, &dz).unwrap(), 0.0);
        // g(d_z, d_z') = 1
        assert_eq!(metric_at(&p, &point, &dz, &dzp).unwrap(), 1.0);
        // lambda = (1), q = 0: g(d_z', d_z') = x_1^2
        let v = metric_at(&p, &point, &dzp, &dzp).unwrap();
        assert!((v - 0.49).abs() < 1e-14);
        // exact rational twin
        let vr = metric_at_rat(
            &[rat_i(1)],
            &[],
            &[rat(3, 10), rat(7, 10), rat(9, 10)],
            &[rat_i(0), rat_i(0), rat_i(1)],
            &[rat_i(0), rat_i(0), rat_i(1)],
        )
        .unwrap();
        assert_eq!(vr, rat(49, 100));
    }

    #[test]
    fn ambient_structure_checks() {
        let amb = CwAmbient::new(vec![rat_i(1), rat_i(2)], vec![rat_i(3)]).unwrap();
        assert!(amb.verify_structure());
    }

    #[test]
    fn heisenberg_cocycle_example() {
        // q = 1, mu = (1): e1 = 1, e2 = i, omega(e1, e2) = 1:
        // (0, e1, 0, id) (0, e2, 0, id) = (1/2, e1 + e2, 0, id)
        let amb = CwAmbient::new(vec![], vec![rat_i(1)]).unwrap();
        let e1 = GroupElement::translation(vec![GRat::from_int(1)]);
        let e2 = GroupElement::translation(vec![GRat::i()]);
        assert_eq!(amb.omega(&e1.a, &e2.a), rat_i(1));
        let prod = group_mul(&amb, &e1, &e2);
        assert_eq!(prod.z, rat(1, 2));
        assert_eq!(prod.a, vec![GRat::new(rat_i(1), rat_i(1))]);
        // identity is neutral
        let id = GroupElement::identity(1);
        assert_eq!(group_mul(&amb, &id, &e1), e1);
        assert_eq!(group_mul(&amb, &e1, &id), e1);
    }

    fn random_element(amb: &CwAmbient, rng: &mut ChaCha8Rng) -> GroupElement {
        let n = amb.n();
        let a: Vec<GRat> = (0..n)
            .map(|_| {
                GRat::new(
                    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                )
            })
            .collect();
        // exact symplectic action: coordinatewise unit multiplications
        // in the imaginary block, identity on the real block (these are
        // exact K-type or flow-type actions)
        let p = amb.lambda.len();
        let mut act = identity_act(n);
        for (j, row) in act.iter_mut().enumerate().skip(p) {
            let units = [
                GRat::from_int(1),
                GRat::i(),
                -&GRat::from_int(1),
                -&GRat::i(),
                // a Pythagorean rotation (3+4i)/5
                GRat::new(rat(3, 5), rat(4, 5)),
            ];
            row[j] = units[rng.gen_range(0..units.len())].clone();
        }
        GroupElement {
            z: rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
            a,
            t: rat(rng.gen_range(-3..=3), 1),
            act,
        }
    }

    #[test]
    fn associativity_exact() {
        let amb = CwAmbient::new(vec![], vec![rat_i(1), rat_i(2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let g1 = random_element(&amb, &mut rng);
            let g2 = random_element(&amb, &mut rng);
            let g3 = random_element(&amb, &mut rng);
            let left = group_mul(&amb, &group_mul(&amb, &g1, &g2), &g3);
            let right = group_mul(&amb, &g1, &group_mul(&amb, &g2, &g3));
            assert_eq!(left, right);
        }
    }

    #[test]
    fn conjugation_acts_by_flow() {
        // (0,0,t,A) (0,a,0,id) (0,0,t,A)^-1 = (0, A a, 0, id)
        let amb = CwAmbient::new(vec![], vec![rat_i(1)]).unwrap();
        let mut flow = GroupElement::identity(1);
        flow.t = rat_i(2);
        flow.act = vec![vec![GRat::new(rat(3, 5), rat(4, 5))]];
        let a = GroupElement::translation(vec![GRat::new(rat_i(1), rat_i(1))]);
        let conj = group_mul(
            &amb,
            &group_mul(&amb, &flow, &a),
            &group_inv(&amb, &flow),
        );
        assert_eq!(conj.t, Rat::zero());
        assert_eq!(conj.a, act_apply(&flow.act, &a.a));
        assert!(conj.z.is_zero());
    }

    #[test]
    fn theta_involution_and_automorphism() {
        let amb = CwAmbient::new(vec![rat_i(1)], vec![rat_i(2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let g = random_element(&amb, &mut rng);
            let tt = theta(&amb, &theta(&amb, &g));
            assert_eq!(tt, g);
        }
        // explicit formula: theta(1, x+iy, 2) = (-1, x-iy, -2)
        let g = GroupElement {
            z: rat_i(1),
            a: vec![GRat::new(rat_i(3), rat_i(4)), GRat::zero()],
            t: rat_i(2),
            act: identity_act(2),
        };
        let tg = theta(&amb, &g);
        assert_eq!(tg.z, rat_i(-1));
        assert_eq!(tg.a[0], GRat::new(rat_i(3), rat_i(-4)));
        assert_eq!(tg.t, rat_i(-2));
        // theta is a group automorphism
        for _ in 0..100 {
            let g1 = random_element(&amb, &mut rng);
            let g2 = random_element(&amb, &mut rng);
            let lhs = theta(&amb, &group_mul(&amb, &g1, &g2));
            let rhs = group_mul(&amb, &theta(&amb, &g1), &theta(&amb, &g2));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bracket_ad_invariance() {
        let amb = CwAmbient::new(vec![rat_i(1)], vec![rat_i(2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rand_vec = |rng: &mut ChaCha8Rng| -> (Rat, Vec<GRat>, Rat) {
            (
                rat(rng.gen_range(-4..=4), 1),
                (0..2)
                    .map(|_| GRat::new(rat(rng.gen_range(-4..=4), 1), rat(rng.gen_range(-4..=4), 1)))
                    .collect(),
                rat(rng.gen_range(-4..=4), 1),
            )
        };
        for _ in 0..200 {
            let x = rand_vec(&mut rng);
            let y = rand_vec(&mut rng);
            let w = rand_vec(&mut rng);
            let xy = amb.bracket((&x.0, &x.1, &x.2), (&y.0, &y.1, &y.2));
            let xw = amb.bracket((&x.0, &x.1, &x.2), (&w.0, &w.1, &w.2));
            let lhs = amb.triple_inner((&xy.0, &xy.1, &xy.2), (&w.0, &w.1, &w.2));
            let rhs = amb.triple_inner((&y.0, &y.1, &y.2), (&xw.0, &xw.1, &xw.2));
            assert!((lhs + rhs).is_zero(), "ad-invariance fails");
        }
    }

    #[test]
    fn element_validation() {
        let amb = CwAmbient::new(vec![], vec![rat_i(1)]).unwrap();
        // t = 0 requires a K element: -1 commutes with conjugation and L
        let good = GroupElement {
            z: Rat::zero(),
            a: vec![GRat::zero()],
            t: Rat::zero(),
            act: vec![vec![-&GRat::from_int(1)]],
        };
        assert!(validate_element(&amb, &good).is_ok());
        // multiplication by i anticommutes with conjugation: not in K, but
        // symplectic, hence fine as a flow action with t != 0
        let flow = GroupElement {
            z: Rat::zero(),
            a: vec![GRat::zero()],
            t: rat_i(1),
            act: vec![vec![GRat::i()]],
        };
        assert!(validate_element(&amb, &flow).is_ok());
        let not_k = GroupElement {
            t: Rat::zero(),
            ..flow.clone()
        };
        assert!(validate_element(&amb, &not_k).is_err());
        let bad = GroupElement {
            z: Rat::zero(),
            a: vec![GRat::zero()],
            t: Rat::zero(),
            act: vec![vec![GRat::from_int(2)]],
        };
        assert!(validate_element(&amb, &bad).is_err());
    }
}
