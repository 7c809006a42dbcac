//! Laurent trigonometric polynomials `f(z) = sum d_m z^m` restricted to the
//! unit circle, and certificates that such an `f` has no zero there.
//!
//! Two certification modes:
//! * exact — Gaussian-rational coefficients; the circle is parametrized by
//!   the Weierstrass substitution and zero-freeness reduces to exact Sturm
//!   root counting of a rational polynomial;
//! * certified numeric — interval coefficients; a grid minimum together
//!   with the Lipschitz bound `sum |m| |d_m|` proves a positive lower
//!   bound for `|f|` on the whole circle.

use crate::arith::{cos_sin_2pi_frac, pi, sqrt_interval, CF64, CInt, CMat, F64I, GRat, Rat, RatInterval};
use crate::intpoly::{isolate_real_roots, RatPoly};
use crate::par;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Errors of this module.
#[derive(Debug, thiserror::Error)]
pub enum TrigError {
    #[error("columns are R-linearly dependent")]
    DependentColumns,
    #[error("coefficients violate the circle-reality symmetry d_-m = conj(d_m)")]
    AsymmetricCoefficients,
    #[error("certification inconclusive at maximal grid resolution")]
    InconclusiveAtResolution,
}

/// Laurent polynomial with conjugate-symmetric coefficients
/// (`d_{-m} = conj(d_m)`), hence real-valued on the unit circle.
#[derive(Clone, Debug)]
pub enum LaurentPoly {
    Exact(BTreeMap<i64, GRat>),
    Numeric(BTreeMap<i64, CInt>),
}

impl LaurentPoly {
    pub fn exact(terms: BTreeMap<i64, GRat>) -> Result<Self, TrigError> {
        let clean: BTreeMap<i64, GRat> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for (m, c) in &clean {
            let partner = clean.get(&-m).cloned().unwrap_or_else(GRat::zero);
            if partner != c.conj() {
                return Err(TrigError::AsymmetricCoefficients);
            }
        }
        Ok(LaurentPoly::Exact(clean))
    }

    pub fn numeric(terms: BTreeMap<i64, CInt>) -> Result<Self, TrigError> {
        for (m, c) in &terms {
            if let Some(partner) = terms.get(&-m) {
                if !partner.conj().intersects(c) {
                    return Err(TrigError::AsymmetricCoefficients);
                }
            } else if !c.contains_zero() {
                return Err(TrigError::AsymmetricCoefficients);
            }
        }
        Ok(LaurentPoly::Numeric(terms))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LaurentPoly::Exact(_))
    }

    /// Largest |exponent|.
    pub fn bandwidth(&self) -> i64 {
        match self {
            LaurentPoly::Exact(t) => t.keys().map(|m| m.abs()).max().unwrap_or(0),
            LaurentPoly::Numeric(t) => t.keys().map(|m| m.abs()).max().unwrap_or(0),
        }
    }

    pub fn exponents(&self) -> Vec<i64> {
        match self {
            LaurentPoly::Exact(t) => t.keys().copied().collect(),
            LaurentPoly::Numeric(t) => t.keys().copied().collect(),
        }
    }

    /// The coefficient `d_0`, which equals the mean value
    /// `(1/2pi) integral of f(e^{it}) dt`.
    pub fn mean_value(&self) -> CInt {
        match self {
            LaurentPoly::Exact(t) => t.get(&0).map(CInt::from_grat).unwrap_or_else(CInt::zero),
            LaurentPoly::Numeric(t) => t.get(&0).cloned().unwrap_or_else(CInt::zero),
        }
    }

    /// Exact evaluation at a Gaussian-rational point of the unit circle.
    pub fn eval_exact_on_circle(&self, z: &GRat) -> Option<GRat> {
        let LaurentPoly::Exact(t) = self else { return None };
        if !z.on_unit_circle() {
            return None;
        }
        let mut acc = GRat::zero();
        for (m, c) in t {
            let zm = grat_circle_pow(z, *m);
            acc += &(c * &zm);
        }
        Some(acc)
    }

    /// Float evaluation at `e^{i t}`.
    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        let eval_term = |acc: &mut f64, m: i64, re: f64, im: f64| {
            let ang = t * (m as f64);
            *acc += re * ang.cos() - im * ang.sin();
        };
        match self {
            LaurentPoly::Exact(terms) => {
                for (m, c) in terms {
                    let (re, im) = c.to_c64();
                    eval_term(&mut acc, *m, re, im);
                }
            }
            LaurentPoly::Numeric(terms) => {
                for (m, c) in terms {
                    let (re, im) = c.to_c64();
                    eval_term(&mut acc, *m, re, im);
                }
            }
        }
        acc
    }

    /// Interval coefficients view (exact coefficients become points).
    pub fn numeric_terms(&self) -> BTreeMap<i64, CInt> {
        match self {
            LaurentPoly::Exact(t) => t.iter().map(|(m, c)| (*m, CInt::from_grat(c))).collect(),
            LaurentPoly::Numeric(t) => t.clone(),
        }
    }

    /// Upper bound for the Lipschitz constant `sum |m| |d_m|` of
    /// `t -> f(e^{it})`.
    pub fn lipschitz_upper(&self) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in self.numeric_terms() {
            if m == 0 {
                continue;
            }
            let modulus = sqrt_interval(&c.norm_sqr(), 40).hi;
            acc += modulus * Rat::from_integer(m.abs().into());
        }
        acc
    }

    /// JSON per the external interface: `{ "exponent": [re, im] }`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in self.numeric_terms() {
            let (re, im) = c.to_c64();
            map.insert(m.to_string(), serde_json::json!([re, im]));
        }
        serde_json::Value::Object(map)
    }
}

/// z^m for |z| = 1 exactly (negative powers via conjugation).
fn grat_circle_pow(z: &GRat, m: i64) -> GRat {
    let base = if m >= 0 { z.clone() } else { z.conj() };
    let mut e = m.unsigned_abs();
    let mut acc = GRat::one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Building f_C(z) = det Im(z^k C).
// ---------------------------------------------------------------------------

/// Exact construction of `f_C(z) = det Im(z^k C)` by expansion over the
/// `2^n` sign vectors: choosing per row the `z^{k_l} c_l / 2i` or the
/// `-z^{-k_l} conj(c_l) / 2i` half contributes
/// `(prod kappa_l / (2i)^n) det(M_kappa) z^{<kappa, k>}`.
pub fn laurent_from_exact(k: &[i64], c: &CMat) -> Result<LaurentPoly, TrigError> {
    let n = k.len();
    assert_eq!(c.rows, n);
    assert_eq!(c.cols, n);
    if c.real_stack().rank() < n {
        return Err(TrigError::DependentColumns);
    }
    // (1/2i)^n = (-i/2)^n
    let half_minus_i = GRat::new(Rat::zero(), -Rat::new(1.into(), 2.into()));
    let scale = grat_pow(&half_minus_i, n as u32);
    let mut terms: BTreeMap<i64, GRat> = BTreeMap::new();
    let masks: Vec<usize> = (0..1usize << n).collect();
    let contributions = par::map(&masks, |&mask| {
        let mut exp = 0i64;
        let mut negate = false;
        let mut m = CMat::zeros(n, n);
        for l in 0..n {
            let plus = (mask >> l) & 1 == 0;
            if plus {
                exp += k[l];
            } else {
                exp -= k[l];
                negate = !negate;
            }
            for j in 0..n {
                m[(l, j)] = if plus { c[(l, j)].clone() } else { c[(l, j)].conj() };
            }
        }
        let d = m.det();
        (exp, if negate { -&d } else { d })
    });
    for (exp, v) in contributions {
        let entry = terms.entry(exp).or_insert_with(GRat::zero);
        *entry += &v;
    }
    let terms = terms
        .into_iter()
        .map(|(m, v)| (m, &v * &scale))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    LaurentPoly::exact(terms)
}

fn grat_pow(g: &GRat, e: u32) -> GRat {
    let mut acc = GRat::one();
    for _ in 0..e {
        acc = &acc * g;
    }
    acc
}

/// Interval-coefficient construction of `f_C` for matrices with certified
/// (possibly irrational) entries.
pub fn laurent_from_numeric(k: &[i64], c: &[Vec<CInt>]) -> Result<LaurentPoly, TrigError> {
    let n = k.len();
    assert_eq!(c.len(), n);
    let half_minus_i = CInt::new(
        RatInterval::zero(),
        RatInterval::point(-Rat::new(1.into(), 2.into())),
    );
    let mut scale = CInt::one();
    for _ in 0..n {
        scale = scale.mul(&half_minus_i);
    }
    let mut terms: BTreeMap<i64, CInt> = BTreeMap::new();
    let masks: Vec<usize> = (0..1usize << n).collect();
    let contributions = par::map(&masks, |&mask| {
        let mut exp = 0i64;
        let mut negate = false;
        let mut m: Vec<Vec<CInt>> = Vec::with_capacity(n);
        for l in 0..n {
            let plus = (mask >> l) & 1 == 0;
            if plus {
                exp += k[l];
            } else {
                exp -= k[l];
                negate = !negate;
            }
            m.push(
                c[l].iter()
                    .map(|x| if plus { x.clone() } else { x.conj() })
                    .collect(),
            );
        }
        let d = cint_det(m);
        (exp, if negate { d.neg() } else { d })
    });
    for (exp, v) in contributions {
        let entry = terms.entry(exp).or_insert_with(CInt::zero);
        *entry = entry.add(&v);
    }
    let terms: BTreeMap<i64, CInt> = terms
        .into_iter()
        .map(|(m, v)| (m, v.mul(&scale).compress()))
        .collect();
    LaurentPoly::numeric(terms)
}

/// Determinant of a small complex-interval matrix by cofactor expansion.
fn cint_det(mut m: Vec<Vec<CInt>>) -> CInt {
    let n = m.len();
    match n {
        0 => CInt::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let row = m.remove(0);
            let mut acc = CInt::zero();
            for (j, pivot) in row.iter().enumerate() {
                if pivot.norm_sqr().hi.is_zero() {
                    continue; // exactly zero entry
                }
                let minor: Vec<Vec<CInt>> = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(jj, _)| *jj != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = pivot.mul(&cint_det(minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc.compress()
        }
    }
}

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

/// Default and maximal grid resolutions (powers of two).
const GRID_DEFAULT_LOG2: u32 = 14;
const GRID_MAX_LOG2: u32 = 18;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum CertKind {
    NoZero,
    ZeroFound,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum CertMode {
    Exact,
    CertifiedNumeric,
}

/// Certificate for the circle behaviour of a real-valued Laurent polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircleCertificate {
    pub kind: CertKind,
    pub mode: CertMode,
    /// Certified lower bound for `min |f|` on the circle, when available.
    pub certified_min_abs: Option<f64>,
    /// Numeric-mode witness: `lower_bound > lipschitz_bound * h / 2`.
    pub grid: Option<GridWitness>,
    /// Approximate location of a zero (certified sign change or exact).
    pub zero_witness: Option<(f64, f64)>,
    /// Exact-mode witness on the Weierstrass model.
    pub sturm: Option<SturmWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridWitness {
    pub grid_log2: u32,
    pub grid_step_upper: f64,
    pub lower_bound: f64,
    pub lipschitz_bound: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SturmWitness {
    pub model_degree: usize,
    pub real_root_count: usize,
    pub value_at_minus_one_nonzero: bool,
}

impl CircleCertificate {
    pub fn is_no_zero(&self) -> bool {
        self.kind == CertKind::NoZero
    }
}

/// Proves `f != 0` on the whole unit circle, or locates a zero.
pub fn certify_no_zero_on_circle(f: &LaurentPoly) -> Result<CircleCertificate, TrigError> {
    match f {
        LaurentPoly::Exact(_) => Ok(certify_exact(f)),
        LaurentPoly::Numeric(_) => certify_numeric(f),
    }
}

fn certify_exact(f: &LaurentPoly) -> CircleCertificate {
    let LaurentPoly::Exact(terms) = f else { unreachable!() };
    // value at z = -1 (the Weierstrass substitution misses t = pi)
    let minus_one = GRat::new(-Rat::one(), Rat::zero());
    let at_minus_one = f.eval_exact_on_circle(&minus_one).unwrap();
    debug_assert!(at_minus_one.im.is_zero());
    let p = weierstrass_model(terms);
    let (count, zero_u) = if p.is_zero() {
        (usize::MAX, Some(Rat::zero()))
    } else {
        let sq = squarefree_ratpoly(&p);
        let roots = isolate_real_roots(&sq);
        let witness = roots.first().map(|iv| iv.mid());
        (roots.len(), witness)
    };
    if count == 0 && !at_minus_one.is_zero() {
        let margin = numeric_margin(f);
        return CircleCertificate {
            kind: CertKind::NoZero,
            mode: CertMode::Exact,
            certified_min_abs: margin,
            grid: None,
            zero_witness: None,
            sturm: Some(SturmWitness {
                model_degree: p.degree(),
                real_root_count: 0,
                value_at_minus_one_nonzero: true,
            }),
        };
    }
    let witness = if at_minus_one.is_zero() {
        (-1.0, 0.0)
    } else {
        let u = crate::arith::rat_to_f64(&zero_u.unwrap_or_else(Rat::zero));
        let t = 2.0 * u.atan();
        (t.cos(), t.sin())
    };
    CircleCertificate {
        kind: CertKind::ZeroFound,
        mode: CertMode::Exact,
        certified_min_abs: None,
        grid: None,
        zero_witness: Some(witness),
        sturm: Some(SturmWitness {
            model_degree: if p.is_zero() { 0 } else { p.degree() },
            real_root_count: if count == usize::MAX { 0 } else { count },
            value_at_minus_one_nonzero: !at_minus_one.is_zero(),
        }),
    }
}

fn squarefree_ratpoly(p: &RatPoly) -> RatPoly {
    let g = p.gcd(&p.derivative());
    if g.degree() == 0 {
        return p.clone();
    }
    p.divrem(&g).0
}

/// `P(u) = f(e^{it}) (1+u^2)^N` under `cos t = (1-u^2)/(1+u^2)`,
/// `sin t = 2u/(1+u^2)`: a polynomial with rational coefficients whose
/// real roots are exactly the circle zeros of `f` away from `z = -1`.
fn weierstrass_model(terms: &BTreeMap<i64, GRat>) -> RatPoly {
    let n_band = terms.keys().map(|m| m.abs()).max().unwrap_or(0) as usize;
    let denom = RatPoly::new(vec![Rat::one(), Rat::zero(), Rat::one()]); // 1+u^2
    let c1 = RatPoly::new(vec![Rat::one(), Rat::zero(), -Rat::one()]); // 1-u^2
    let s1 = RatPoly::new(vec![Rat::zero(), Rat::from_integer(2.into())]); // 2u
    // C_m, S_m with cos(mt) = C_m/(1+u^2)^m, sin(mt) = S_m/(1+u^2)^m
    let mut cs: Vec<(RatPoly, RatPoly)> =
        vec![(RatPoly::new(vec![Rat::one()]), RatPoly::zero())];
    for m in 1..=n_band {
        let (cm, sm) = &cs[m - 1];
        cs.push((
            cm.mul(&c1).add(&sm.mul(&s1).neg()),
            sm.mul(&c1).add(&cm.mul(&s1)),
        ));
    }
    let mut acc = RatPoly::zero();
    for (m, d) in terms {
        if *m < 0 {
            continue;
        }
        let m_us = *m as usize;
        let mut pow = RatPoly::new(vec![Rat::one()]);
        for _ in 0..(n_band - m_us) {
            pow = pow.mul(&denom);
        }
        let (cm, sm) = &cs[m_us];
        let part = if *m == 0 {
            RatPoly::new(vec![d.re.clone()])
        } else {
            cm.scale(&(&d.re * Rat::from_integer(2.into())))
                .add(&sm.scale(&(-&d.im * Rat::from_integer(2.into()))))
        };
        acc = acc.add(&part.mul(&pow));
    }
    acc
}

fn certify_numeric(f: &LaurentPoly) -> Result<CircleCertificate, TrigError> {
    let mut log2 = GRID_DEFAULT_LOG2;
    loop {
        match grid_attempt(f, log2) {
            GridOutcome::Decided(cert) => return Ok(cert),
            GridOutcome::Inconclusive => {
                if log2 >= GRID_MAX_LOG2 {
                    return Err(TrigError::InconclusiveAtResolution);
                }
                log2 = GRID_MAX_LOG2;
            }
        }
    }
}

enum GridOutcome {
    Decided(CircleCertificate),
    Inconclusive,
}

/// Certified values of `f` on the `2^log2`-point grid, in fast outward
/// f64 interval arithmetic; deterministic and identical for the parallel
/// and sequential paths.
pub fn grid_values(f: &LaurentPoly, log2: u32) -> Vec<F64I> {
    let m = 1usize << log2;
    let term_list = term_list_f64(f);
    let powers = circle_powers(m);
    par::map_range(m, |j| grid_point_value(&term_list, &powers, m, j))
}

/// Sequential twin of [`grid_values`] for the benchmark suite.
pub fn grid_values_seq(f: &LaurentPoly, log2: u32) -> Vec<F64I> {
    let m = 1usize << log2;
    let term_list = term_list_f64(f);
    let powers = circle_powers(m);
    par::map_range_seq(m, |j| grid_point_value(&term_list, &powers, m, j))
}

fn term_list_f64(f: &LaurentPoly) -> Vec<(i64, CF64)> {
    f.numeric_terms()
        .into_iter()
        .map(|(m, c)| {
            (
                m,
                CF64::new(F64I::from_rat_interval(&c.re), F64I::from_rat_interval(&c.im)),
            )
        })
        .collect()
}

fn circle_powers(m: usize) -> Vec<CF64> {
    // rigorous enclosure of the primitive root, then outward f64 powers
    let (c1, s1) = cos_sin_2pi_frac(1, m as i64, 80);
    let z1 = CF64::new(F64I::from_rat_interval(&c1), F64I::from_rat_interval(&s1));
    let mut powers: Vec<CF64> = Vec::with_capacity(m);
    let mut acc = CF64::one();
    for _ in 0..m {
        powers.push(acc);
        acc = acc.mul(z1);
    }
    powers
}

fn grid_point_value(term_list: &[(i64, CF64)], powers: &[CF64], m: usize, j: usize) -> F64I {
    let mut v = F64I::zero();
    for (e, d) in term_list {
        let idx = (e.rem_euclid(m as i64) as usize).wrapping_mul(j) % m;
        let z = powers[idx];
        // real part of d * z
        v = v.add(d.re.mul(z.re).sub(d.im.mul(z.im)));
    }
    v
}

fn grid_attempt(f: &LaurentPoly, log2: u32) -> GridOutcome {
    let m = 1usize << log2;
    let values = grid_values(f, log2);
    // two certified opposite signs anywhere prove a zero in between
    let mut last_certified: Option<(usize, bool)> = None;
    let mut change_at: Option<usize> = None;
    for (j, v) in values.iter().enumerate().chain(values.first().map(|v| (0, v))) {
        let sign = if v.lo > 0.0 {
            Some(true)
        } else if v.hi < 0.0 {
            Some(false)
        } else {
            None
        };
        if let Some(s) = sign {
            if let Some((_, prev)) = last_certified {
                if prev != s {
                    change_at = Some(j);
                    break;
                }
            }
            last_certified = Some((j, s));
        }
    }
    if let Some(j) = change_at {
        {
            let t = 2.0 * std::f64::consts::PI * (j as f64 - 0.5) / m as f64;
            return GridOutcome::Decided(CircleCertificate {
                kind: CertKind::ZeroFound,
                mode: CertMode::CertifiedNumeric,
                certified_min_abs: None,
                grid: Some(GridWitness {
                    grid_log2: log2,
                    grid_step_upper: grid_step_upper_f64(m),
                    lower_bound: 0.0,
                    lipschitz_bound: crate::arith::rat_to_f64(&f.lipschitz_upper()),
                }),
                zero_witness: Some((t.cos(), t.sin())),
                sturm: None,
            });
        }
    }
    // certified grid minimum of |f|
    let min_abs = values
        .iter()
        .map(|v| v.abs_lower())
        .fold(f64::INFINITY, f64::min);
    let lip = f.lipschitz_upper();
    let half_h = pi(60).hi / Rat::from_integer((m as i64).into()); // h/2 = pi/m
    let threshold = crate::arith::rat_to_f64(&(&lip * &half_h)).next_up();
    if min_abs > threshold {
        let margin = (min_abs - threshold).next_down();
        return GridOutcome::Decided(CircleCertificate {
            kind: CertKind::NoZero,
            mode: CertMode::CertifiedNumeric,
            certified_min_abs: Some(margin),
            grid: Some(GridWitness {
                grid_log2: log2,
                grid_step_upper: grid_step_upper_f64(m),
                lower_bound: min_abs,
                lipschitz_bound: crate::arith::rat_to_f64(&lip).next_up(),
            }),
            zero_witness: None,
            sturm: None,
        });
    }
    GridOutcome::Inconclusive
}

fn grid_step_upper_f64(m: usize) -> f64 {
    let h = pi(60).hi * Rat::from_integer(2.into()) / Rat::from_integer((m as i64).into());
    crate::arith::rat_to_f64(&h)
}

/// Certified numeric lower bound for `min |f|`, for attaching margins to
/// exact certificates; `None` when not positive up to the maximal grid.
fn numeric_margin(f: &LaurentPoly) -> Option<f64> {
    for level in [12u32, GRID_DEFAULT_LOG2, GRID_MAX_LOG2] {
        if let GridOutcome::Decided(c) = grid_attempt(f, level) {
            if c.is_no_zero() {
                return c.certified_min_abs;
            }
            return None;
        }
    }
    None
}

/// All sign vectors `kappa in {+-1}^n` with `<kappa, k> = 0`; an empty
/// result means the balance (trace) condition fails. Exhaustive over
/// `2^n`, `n <= 24`.
pub fn trace_condition(k: &[i64]) -> Vec<Vec<i8>> {
    let n = k.len();
    assert!(n <= 24, "exhaustive sign enumeration capped at n = 24");
    let hits = par::map_range(1usize << n, |mask| {
        let mut sum = 0i64;
        for (l, &kl) in k.iter().enumerate() {
            if (mask >> l) & 1 == 0 {
                sum += kl;
            } else {
                sum -= kl;
            }
        }
        if sum == 0 {
            Some(
                (0..n)
                    .map(|l| if (mask >> l) & 1 == 0 { 1i8 } else { -1i8 })
                    .collect::<Vec<i8>>(),
            )
        } else {
            None
        }
    });
    hits.into_iter().flatten().collect()
}

/// The constant Laurent polynomial.
pub fn constant(c: GRat) -> LaurentPoly {
    let mut t = BTreeMap::new();
    if !c.is_zero() {
        t.insert(0, c);
    }
    LaurentPoly::Exact(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grat(re: i64, im: i64) -> GRat {
        GRat::new(Rat::from_integer(re.into()), Rat::from_integer(im.into()))
    }

    #[test]
    fn constant_minus_one_has_no_zero() {
        let f = constant(grat(-1, 0));
        let cert = certify_no_zero_on_circle(&f).unwrap();
        assert!(cert.is_no_zero());
        assert_eq!(cert.mode, CertMode::Exact);
        assert_eq!(f.mean_value().mid(), grat(-1, 0));
    }

    #[test]
    fn re_z_has_zeros() {
        // f(z) = Re z = (z + z^-1)/2
        let mut t = BTreeMap::new();
        t.insert(1i64, GRat::new(Rat::new(1.into(), 2.into()), Rat::zero()));
        t.insert(-1i64, GRat::new(Rat::new(1.into(), 2.into()), Rat::zero()));
        let f = LaurentPoly::exact(t).unwrap();
        let cert = certify_no_zero_on_circle(&f).unwrap();
        assert_eq!(cert.kind, CertKind::ZeroFound);
        assert!(f.mean_value().contains_zero());
        // zeros are at +-i
        let (x, _y) = cert.zero_witness.unwrap();
        assert!(x.abs() < 1e-6);
    }

    #[test]
    fn asymmetric_rejected() {
        let mut t = BTreeMap::new();
        t.insert(1i64, grat(1, 0));
        assert!(LaurentPoly::exact(t).is_err());
    }

    #[test]
    fn circle_line_subspace_gives_constant() {
        // k = (m, m), columns (1, i), (i, -1): f = -1 exactly
        for m in [1i64, 3, 7] {
            let c = CMat::from_rows(vec![
                vec![grat(1, 0), grat(0, 1)],
                vec![grat(0, 1), grat(-1, 0)],
            ]);
            let f = laurent_from_exact(&[m, m], &c).unwrap();
            let LaurentPoly::Exact(terms) = &f else { panic!() };
            assert_eq!(terms.len(), 1);
            assert_eq!(terms.get(&0).unwrap(), &grat(-1, 0));
        }
    }

    #[test]
    fn single_coordinate_imaginary_line() {
        // n = 1, k = (1), C = (i): f(z) = Im(z i) = Re z, exponents +-1
        let c = CMat::from_rows(vec![vec![grat(0, 1)]]);
        let f = laurent_from_exact(&[1], &c).unwrap();
        let LaurentPoly::Exact(terms) = &f else { panic!() };
        assert_eq!(terms.len(), 2);
        assert_eq!(
            terms.get(&1).unwrap(),
            &GRat::new(Rat::new(1.into(), 2.into()), Rat::zero())
        );
        assert_eq!(f.exponents(), vec![-1, 1]);
    }

    #[test]
    fn dependent_columns_rejected() {
        let c = CMat::from_rows(vec![
            vec![grat(1, 0), grat(2, 0)],
            vec![grat(0, 1), grat(0, 2)],
        ]);
        assert!(matches!(
            laurent_from_exact(&[1, 1], &c),
            Err(TrigError::DependentColumns)
        ));
    }

    #[test]
    fn trace_condition_examples() {
        let t = trace_condition(&[1, 2, 3]);
        assert!(t.iter().any(|k| k == &vec![1, 1, -1]));
        assert!(trace_condition(&[1, 2]).is_empty());
        let t6 = trace_condition(&[10, 11, 31, 15, 28, 19]);
        assert!(t6.iter().any(|k| k == &vec![1, -1, -1, -1, 1, 1]));
    }

    #[test]
    fn mean_value_quadrature_crosscheck() {
        let mut t = BTreeMap::new();
        t.insert(0i64, grat(3, 0));
        for (m, re, im) in [(1i64, 2i64, 1i64), (3, -1, 2), (7, 0, -3)] {
            t.insert(m, grat(re, im));
            t.insert(-m, grat(re, -im));
        }
        let f = LaurentPoly::exact(t).unwrap();
        let n = 1 << 12;
        let mut acc = 0.0;
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            acc += f.eval_f64(theta);
        }
        acc /= n as f64;
        let (d0, _) = f.mean_value().to_c64();
        assert!((acc - d0).abs() < 1e-9, "{acc} vs {d0}");
    }

    #[test]
    fn numeric_certificate_on_shifted_cosine() {
        // f(z) = 3 + Re z: min = 2 > 0
        let mut t = BTreeMap::new();
        t.insert(0i64, CInt::from_grat(&grat(3, 0)));
        let half = CInt::from_grat(&GRat::new(Rat::new(1.into(), 2.into()), Rat::zero()));
        t.insert(1i64, half.clone());
        t.insert(-1i64, half);
        let f = LaurentPoly::numeric(t).unwrap();
        let cert = certify_no_zero_on_circle(&f).unwrap();
        assert!(cert.is_no_zero());
        assert_eq!(cert.mode, CertMode::CertifiedNumeric);
        let margin = cert.certified_min_abs.unwrap();
        assert!(margin > 1.9 && margin < 2.01, "margin {margin}");
    }

    #[test]
    fn numeric_zero_found_on_cosine() {
        let mut t = BTreeMap::new();
        let half = CInt::from_grat(&GRat::new(Rat::new(1.into(), 2.into()), Rat::zero()));
        t.insert(1i64, half.clone());
        t.insert(-1i64, half);
        let f = LaurentPoly::numeric(t).unwrap();
        let cert = certify_no_zero_on_circle(&f).unwrap();
        assert_eq!(cert.kind, CertKind::ZeroFound);
    }

    #[test]
    fn exact_vs_numeric_grid_agree() {
        let c = CMat::from_rows(vec![
            vec![grat(1, 0), grat(0, 1)],
            vec![grat(0, 1), grat(-1, 0)],
        ]);
        let f = laurent_from_exact(&[2, 2], &c).unwrap();
        let g = grid_values(&f, 6);
        let gs = grid_values_seq(&f, 6);
        assert_eq!(g.len(), gs.len());
        for (a, b) in g.iter().zip(&gs) {
            assert_eq!(a, b); // identical regardless of parallelism
            assert!(a.lo <= -1.0 && a.hi >= -1.0);
        }
    }
}
