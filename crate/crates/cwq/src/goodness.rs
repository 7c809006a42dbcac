//! Candidate subspaces `V_C` of `C^n`, k-goodness certification, and the
//! constructive families (dimensions 2, 3, 4, 6 and the two-step induction)
//! behind R-admissibility and C-admissibility decisions.
//!
//! A real n-dimensional subspace `V_C = { C r | r in R^n }` is k-good when
//! `det Im(z^k C) != 0` on the whole unit circle. Goodness is invariant
//! under permuting tuple entries together with rows of `C`, under negating
//! an entry together with conjugating its row, and under scaling the tuple.

use crate::arith::{cos_sin_angle, CInt, CMat, GRat, Rat, RatInterval};
use crate::trigcert::{
    certify_no_zero_on_circle, laurent_from_exact, laurent_from_numeric, trace_condition,
    CircleCertificate, LaurentPoly, TrigError,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Errors of the goodness module.
#[derive(Debug, thiserror::Error)]
pub enum GoodnessError {
    #[error("tuple relation violated: {0}")]
    BadRelation(String),
    #[error("matrix shape unsuitable: {0}")]
    ShapeMismatch(String),
    #[error("tuple length must be even")]
    OddLength,
    #[error(transparent)]
    Trig(#[from] TrigError),
}

/// Complex square matrix whose real column span is the candidate subspace;
/// exact Gaussian-rational entries or certified interval entries (the
/// latter for a generic `omega = e^{ir}` with the sampled `r` recorded).
#[derive(Clone, Debug)]
pub struct SubspaceMatrix {
    pub n: usize,
    pub kind: SubspaceKind,
}

#[derive(Clone, Debug)]
pub enum SubspaceKind {
    Exact(CMat),
    Numeric {
        entries: Vec<Vec<CInt>>,
        /// the sampled phase of the generic unit `omega = e^{i r}`
        sampled_r: Option<Rat>,
    },
}

impl SubspaceMatrix {
    pub fn exact(c: CMat) -> Self {
        assert_eq!(c.rows, c.cols);
        SubspaceMatrix {
            n: c.rows,
            kind: SubspaceKind::Exact(c),
        }
    }

    pub fn numeric(entries: Vec<Vec<CInt>>, sampled_r: Option<Rat>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n));
        SubspaceMatrix {
            n,
            kind: SubspaceKind::Numeric { entries, sampled_r },
        }
    }

    pub fn as_exact(&self) -> Option<&CMat> {
        match &self.kind {
            SubspaceKind::Exact(c) => Some(c),
            _ => None,
        }
    }

    /// The Laurent polynomial `f_C(z) = det Im(z^k C)`.
    pub fn laurent(&self, k: &[i64]) -> Result<LaurentPoly, TrigError> {
        match &self.kind {
            SubspaceKind::Exact(c) => laurent_from_exact(k, c),
            SubspaceKind::Numeric { entries, .. } => laurent_from_numeric(k, entries),
        }
    }

    /// Entries as JSON (midpoints for numeric entries).
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<serde_json::Value>> = match &self.kind {
            SubspaceKind::Exact(c) => (0..c.rows)
                .map(|i| {
                    (0..c.cols)
                        .map(|j| {
                            let (re, im) = c[(i, j)].to_c64();
                            serde_json::json!([re, im])
                        })
                        .collect()
                })
                .collect(),
            SubspaceKind::Numeric { entries, .. } => entries
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            let (re, im) = x.to_c64();
                            serde_json::json!([re, im])
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::json!(rows)
    }
}

/// Three-valued admissibility verdict with a certified witness on `yes`.
#[derive(Debug)]
pub struct AdmissibilityVerdict {
    pub status: VerdictStatus,
    pub witness: Option<SubspaceMatrix>,
    pub witness_tuple: Option<Vec<i64>>,
    pub certificate: Option<CircleCertificate>,
    pub obstruction: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    Yes,
    No,
    Unknown,
}

impl AdmissibilityVerdict {
    pub fn yes(witness: SubspaceMatrix, tuple: Vec<i64>, cert: CircleCertificate) -> Self {
        AdmissibilityVerdict {
            status: VerdictStatus::Yes,
            witness: Some(witness),
            witness_tuple: Some(tuple),
            certificate: Some(cert),
            obstruction: None,
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        AdmissibilityVerdict {
            status: VerdictStatus::No,
            witness: None,
            witness_tuple: None,
            certificate: None,
            obstruction: Some(reason.into()),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        AdmissibilityVerdict {
            status: VerdictStatus::Unknown,
            witness: None,
            witness_tuple: None,
            certificate: None,
            obstruction: Some(reason.into()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == VerdictStatus::Yes
    }
}

/// Certifies whether `V_C` is k-good.
pub fn is_good(k: &[i64], c: &SubspaceMatrix) -> Result<CircleCertificate, GoodnessError> {
    if k.len() != c.n {
        return Err(GoodnessError::ShapeMismatch(format!(
            "tuple length {} vs matrix dimension {}",
            k.len(),
            c.n
        )));
    }
    let f = c.laurent(k)?;
    Ok(certify_no_zero_on_circle(&f)?)
}

// ---------------------------------------------------------------------------
// Small helpers for building exact matrices.
// ---------------------------------------------------------------------------

fn g(re: i64, im: i64) -> GRat {
    GRat::new(Rat::from_integer(re.into()), Rat::from_integer(im.into()))
}

/// The 2x2 block whose real span is the complex line `C (1, i)`;
/// `f_C = -1` identically for every `(k, k)`.
pub fn circle_line_block() -> CMat {
    CMat::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(-1, 0)]])
}

/// How the unit `omega` in the dimension-3/4 families is chosen.
#[derive(Clone, Debug)]
pub enum OmegaChoice {
    /// `omega = 1` (exact; the right entry-ordering makes the family work)
    One,
    /// an exact Gaussian rational on the unit circle
    ExactCircle(GRat),
    /// `omega = e^{ir}` with `r/pi` irrational; the artifact samples a
    /// concrete high-precision rational `r` and certifies that sample
    Generic { r: Rat },
}

impl OmegaChoice {
    /// A default generic sample: `r` rational with large denominator, so
    /// that `r/pi` is irrational (pi is irrational) and certification is
    /// expected to succeed away from the measure-zero bad set.
    pub fn generic_from_seed(seed: u64) -> Self {
        // deterministic pseudo-random rational in (0.3, 2.8)
        let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        x ^= x >> 33;
        let num = 3_000_000_007u64 + (x % 19_999_999_981u64);
        let den = 9_999_999_967u64;
        OmegaChoice::Generic {
            r: Rat::new(BigInt::from(num % (3 * den)), BigInt::from(den)),
        }
    }

    fn is_exact(&self) -> bool {
        !matches!(self, OmegaChoice::Generic { .. })
    }

    fn exact_value(&self) -> Option<GRat> {
        match self {
            OmegaChoice::One => Some(GRat::from_int(1)),
            OmegaChoice::ExactCircle(w) => {
                assert!(w.on_unit_circle(), "omega must lie on the unit circle");
                Some(w.clone())
            }
            OmegaChoice::Generic { .. } => None,
        }
    }

    fn interval_value(&self) -> CInt {
        match self {
            OmegaChoice::Generic { r } => {
                let (c, s) = cos_sin_angle(&RatInterval::point(r.clone()), 80);
                CInt::new(c, s)
            }
            _ => {
                let w = self.exact_value().unwrap();
                CInt::from_grat(&w)
            }
        }
    }

    fn sampled_r(&self) -> Option<Rat> {
        match self {
            OmegaChoice::Generic { r } => Some(r.clone()),
            _ => None,
        }
    }
}

/// Entry templates: a Gaussian-rational multiple of `1`, of `omega`, or of
/// `conj(omega)`. The third family row carries conjugated omegas: with them
/// the determinant collapses to `R(.)^2 + I(., omega)^2` on the circle
/// (with the unconjugated entries it would be
/// `R(.)^2 + I(., omega) I(., conj omega)`, which crosses zero for
/// non-real omega).
#[derive(Clone, Copy)]
enum Tpl {
    C(i64, i64),  // a + bi
    W(i64, i64),  // (a + bi) omega
    Wc(i64, i64), // (a + bi) conj(omega)
}

fn build_matrix(tpl: &[Vec<Tpl>], omega: &OmegaChoice) -> SubspaceMatrix {
    if let Some(w) = omega.exact_value() {
        let rows = tpl
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| match t {
                        Tpl::C(a, b) => g(*a, *b),
                        Tpl::W(a, b) => &g(*a, *b) * &w,
                        Tpl::Wc(a, b) => &g(*a, *b) * &w.conj(),
                    })
                    .collect()
            })
            .collect();
        SubspaceMatrix::exact(CMat::from_rows(rows))
    } else {
        let w = omega.interval_value();
        let rows: Vec<Vec<CInt>> = tpl
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| match t {
                        Tpl::C(a, b) => CInt::from_grat(&g(*a, *b)),
                        Tpl::W(a, b) => CInt::from_grat(&g(*a, *b)).mul(&w),
                        Tpl::Wc(a, b) => CInt::from_grat(&g(*a, *b)).mul(&w.conj()),
                    })
                    .collect()
            })
            .collect();
        SubspaceMatrix::numeric(rows, omega.sampled_r())
    }
}

/// 2-adic valuation (multiplicity of 2); `u32::MAX` for 0.
fn v2(k: i64) -> u32 {
    if k == 0 {
        u32::MAX
    } else {
        k.trailing_zeros()
    }
}

/// The dimension-3 family: for `k1 = k2 + k3` the span of the columns of
/// `[[i,-1,0],[1,i,-w],[iw,-w,i]]` is `(k1,k2,k3)`-good for generic
/// `omega`, with `f_C = R(k3)^2 + I(k2, omega)^2`; for `omega = 1` it is
/// good for `(k1,k2,k3)` or for the swap `(k1,k3,k2)` depending on the
/// 2-adic valuations of `k2`, `k3`.
pub fn construct_good_dim3(
    k1: i64,
    k2: i64,
    k3: i64,
    omega: &OmegaChoice,
) -> Result<SubspaceMatrix, GoodnessError> {
    if k1 != k2 + k3 {
        return Err(GoodnessError::BadRelation(format!(
            "k1 = k2 + k3 required, got {k1} != {k2} + {k3}"
        )));
    }
    let tpl = vec![
        vec![Tpl::C(0, 1), Tpl::C(-1, 0), Tpl::C(0, 0)],
        vec![Tpl::C(1, 0), Tpl::C(0, 1), Tpl::W(-1, 0)],
        vec![Tpl::Wc(0, 1), Tpl::Wc(-1, 0), Tpl::C(0, 1)],
    ];
    Ok(build_matrix(&tpl, omega))
}

/// Dimension-3 witness certified for the tuple as given (using the
/// valuation-correct orientation with `omega = 1`); rows are permuted so
/// the result matches `(k1,k2,k3)` exactly.
pub fn good_dim3_exact(k1: i64, k2: i64, k3: i64) -> Result<(SubspaceMatrix, CircleCertificate), GoodnessError> {
    if k1 != k2 + k3 {
        return Err(GoodnessError::BadRelation(format!(
            "k1 = k2 + k3 required, got {k1} != {k2} + {k3}"
        )));
    }
    // f_C(k1,a,b) = R(b)^2 + I(a, 1)^2, nonvanishing iff v2(a) <= v2(b)
    let direct_ok = v2(k2) <= v2(k3);
    let c = construct_good_dim3(k1, if direct_ok { k2 } else { k3 }, if direct_ok { k3 } else { k2 }, &OmegaChoice::One)?;
    let m = c.as_exact().unwrap().clone();
    let m = if direct_ok { m } else { swap_rows(&m, 1, 2) };
    let sm = SubspaceMatrix::exact(m);
    let cert = is_good(&[k1, k2, k3], &sm)?;
    if !cert.is_no_zero() {
        return Err(GoodnessError::BadRelation(
            "dimension-3 family failed to certify (unexpected)".into(),
        ));
    }
    Ok((sm, cert))
}

fn swap_rows(c: &CMat, a: usize, b: usize) -> CMat {
    let mut rows: Vec<Vec<GRat>> = (0..c.rows)
        .map(|i| (0..c.cols).map(|j| c[(i, j)].clone()).collect())
        .collect();
    rows.swap(a, b);
    CMat::from_rows(rows)
}

/// The dimension-4 family: for `k2 - k1 = k4 - k3` the span of the columns
/// of the 4x4 template below is a complex subspace with
/// `f_C = R(k2-k1)^2 + I(k1-k3, omega)^2`.
pub fn construct_good_dim4(
    k: &[i64; 4],
    omega: &OmegaChoice,
) -> Result<SubspaceMatrix, GoodnessError> {
    if k[1] - k[0] != k[3] - k[2] {
        return Err(GoodnessError::BadRelation(format!(
            "k2 - k1 = k4 - k3 required for {k:?}"
        )));
    }
    let tpl = vec![
        vec![Tpl::C(0, 1), Tpl::C(-1, 0), Tpl::C(0, 0), Tpl::C(0, 0)],
        vec![Tpl::C(1, 0), Tpl::C(0, 1), Tpl::W(-1, 0), Tpl::W(0, -1)],
        vec![Tpl::Wc(0, 1), Tpl::Wc(-1, 0), Tpl::C(0, 1), Tpl::C(-1, 0)],
        vec![Tpl::C(0, 0), Tpl::C(0, 0), Tpl::C(1, 0), Tpl::C(0, 1)],
    ];
    Ok(build_matrix(&tpl, omega))
}

/// Dimension-4 witness certified for the tuple as given with `omega = 1`
/// (choosing the valuation-correct inner ordering, then permuting back).
pub fn good_dim4_exact(k: &[i64; 4]) -> Result<(SubspaceMatrix, CircleCertificate), GoodnessError> {
    if k[1] - k[0] != k[3] - k[2] {
        return Err(GoodnessError::BadRelation(format!(
            "k2 - k1 = k4 - k3 required for {k:?}"
        )));
    }
    // orientation A needs v2(k1-k3) <= v2(k2-k1); B (middle rows swapped
    // in tuple space) needs the reverse
    let a_ok = v2(k[0] - k[2]) <= v2(k[1] - k[0]);
    let inner = if a_ok {
        [k[0], k[1], k[2], k[3]]
    } else {
        [k[0], k[2], k[1], k[3]]
    };
    let c = construct_good_dim4(&inner, &OmegaChoice::One)?;
    let m = c.as_exact().unwrap().clone();
    let m = if a_ok { m } else { swap_rows(&m, 1, 2) };
    let sm = SubspaceMatrix::exact(m);
    let cert = is_good(k, &sm)?;
    if !cert.is_no_zero() {
        return Err(GoodnessError::BadRelation(
            "dimension-4 family failed to certify (unexpected)".into(),
        ));
    }
    Ok((sm, cert))
}

/// The dimension-6 family of Example-type subspaces: columns
/// `(c1, i c1, c2, i c2, c3, i c3)` with
/// `f_C(z) = -1/4 Re((2 + z^{2a} - z^{2b})(2 - z^{2c} + z^{2d}))` where
/// `a = k1-k2, b = k1-k4, c = k5-k3, d = k6-k3`; requires
/// `k1+k5+k6 = k2+k3+k4`. Returns `yes` only when the sign is certified.
pub fn construct_good_dim6(k: &[i64; 6]) -> Result<AdmissibilityVerdict, GoodnessError> {
    if k[0] + k[4] + k[5] != k[1] + k[2] + k[3] {
        return Err(GoodnessError::BadRelation(format!(
            "k1+k5+k6 = k2+k3+k4 required for {k:?}"
        )));
    }
    let c = dim6_matrix();
    let sm = SubspaceMatrix::exact(c);
    let f = sm.laurent(k)?;
    // cross-check the closed form -1/4 Re((2+z^2a-z^2b)(2-z^2c+z^2d))
    let formula = dim6_formula(k[0] - k[1], k[0] - k[3], k[4] - k[2], k[5] - k[2]);
    debug_assert!(laurent_eq_exact(&f, &formula), "dimension-6 determinant identity");
    let cert = certify_no_zero_on_circle(&f)?;
    if cert.is_no_zero() {
        Ok(AdmissibilityVerdict::yes(sm, k.to_vec(), cert))
    } else {
        Ok(AdmissibilityVerdict::unknown(
            "dimension-6 family polynomial vanishes somewhere on the circle",
        ))
    }
}

fn dim6_matrix() -> CMat {
    let c1 = [g(1, 0), g(0, 0), g(0, 0), g(2, 0), g(0, -1), g(1, 0)];
    let c2 = [g(0, 0), g(1, 0), g(0, 0), g(0, -1), g(-1, 0), g(0, -1)];
    let c3 = [g(0, 0), g(0, 0), g(1, 0), g(0, 0), g(-1, 0), g(0, 1)];
    let cols: Vec<Vec<GRat>> = vec![
        c1.to_vec(),
        c1.iter().map(|x| &g(0, 1) * x).collect(),
        c2.to_vec(),
        c2.iter().map(|x| &g(0, 1) * x).collect(),
        c3.to_vec(),
        c3.iter().map(|x| &g(0, 1) * x).collect(),
    ];
    // transpose columns into a row-major matrix
    let rows: Vec<Vec<GRat>> = (0..6)
        .map(|i| (0..6).map(|j| cols[j][i].clone()).collect())
        .collect();
    CMat::from_rows(rows)
}

/// `-1/4 Re((2 + z^{2a} - z^{2b})(2 - z^{2c} + z^{2d}))` as a Laurent
/// polynomial (the closed form of the dimension-6 family determinant).
pub fn dim6_formula(a: i64, b: i64, c: i64, d: i64) -> LaurentPoly {
    use std::collections::BTreeMap;
    // p(z) = (2 + z^{2a} - z^{2b})(2 - z^{2c} + z^{2d}), then
    // f = -1/4 * (p + conj p)/2 with conj p(z) = p(z^-1)-conjugated coeffs.
    let mut p: BTreeMap<i64, Rat> = BTreeMap::new();
    let left = [(0i64, 2i64), (2 * a, 1), (2 * b, -1)];
    let right = [(0i64, 2i64), (2 * c, -1), (2 * d, 1)];
    for (e1, c1) in left {
        for (e2, c2) in right {
            *p.entry(e1 + e2).or_insert_with(Rat::zero) +=
                Rat::from_integer((c1 * c2).into());
        }
    }
    let quarter = Rat::new((-1).into(), 8.into()); // -1/4 * 1/2
    let mut terms: BTreeMap<i64, GRat> = BTreeMap::new();
    for (e, coef) in &p {
        // Re(w) = (w + conj w)/2: exponent e contributes coef/2 at e and at -e
        let half = coef * &quarter;
        for ee in [*e, -*e] {
            let entry = terms.entry(ee).or_insert_with(GRat::zero);
            *entry += &GRat::new(half.clone(), Rat::zero());
        }
    }
    LaurentPoly::exact(terms.into_iter().filter(|(_, v)| !v.is_zero()).collect()).unwrap()
}

fn laurent_eq_exact(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    match (a, b) {
        (LaurentPoly::Exact(x), LaurentPoly::Exact(y)) => x == y,
        _ => true, // only checked in the exact-exact case
    }
}

// ---------------------------------------------------------------------------
// Induction step (dimension n -> n + 2).
// ---------------------------------------------------------------------------

/// Checks that the last row of `c` equals `(0, ..., 0, 1, i)`.
fn last_row_is_canonical(c: &CMat) -> bool {
    let n = c.rows;
    if n < 2 {
        return false;
    }
    for j in 0..n - 2 {
        if !c[(n - 1, j)].is_zero() {
            return false;
        }
    }
    c[(n - 1, n - 2)] == g(1, 0) && c[(n - 1, n - 1)] == g(0, 1)
}

/// Real column operations bringing the last row to `(0, ..., 0, 1, i)`;
/// preserves the subspace and rescaling `f_C` by a nonzero real constant.
pub fn normalize_last_row(c: &CMat) -> Option<CMat> {
    let n = c.rows;
    if n < 2 {
        return None;
    }
    if last_row_is_canonical(c) {
        return Some(c.clone());
    }
    // solve (last row) * R = (0,...,0,1,i) over the reals: the row's
    // entries, as vectors (Re, Im), must span R^2
    use crate::arith::QMat;
    let mut m = QMat::zeros(2, n);
    for j in 0..n {
        m[(0, j)] = c[(n - 1, j)].re.clone();
        m[(1, j)] = c[(n - 1, j)].im.clone();
    }
    if m.rank() < 2 {
        return None;
    }
    // target columns: e_{n-2} -> (1,0), e_{n-1} -> (0,1), others -> (0,0),
    // built from a right inverse plus a kernel-completing basis
    let mut target = QMat::zeros(2, n);
    target[(0, n - 2)] = Rat::one();
    target[(1, n - 1)] = Rat::one();
    // R = P * target + K * free, where P is any right inverse of m and K
    // spans ker m. We need R invertible; build R column by column:
    // columns of R solve m * r_j = target_j; add kernel vectors to make
    // the whole R invertible.
    let kernel = m.kernel();
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let t = vec![target[(0, j)].clone(), target[(1, j)].clone()];
        let sol = m.solve(&t)?;
        cols.push(sol);
    }
    // greedily add kernel basis vectors to zero-target columns to reach
    // full rank
    let mut r = QMat::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            r[(i, j)] = col[i].clone();
        }
    }
    let mut kiter = kernel.into_iter();
    for j in 0..n {
        if j == n - 2 || j == n - 1 {
            continue;
        }
        if let Some(kv) = kiter.next() {
            for i in 0..n {
                r[(i, j)] = &r[(i, j)] + &kv[i];
            }
        }
    }
    if r.det().is_zero() {
        return None;
    }
    // apply: C' = C * R (real combinations of columns)
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = GRat::zero();
            for l in 0..n {
                acc += &c[(i, l)].scale(&r[(l, j)]);
            }
            out[(i, j)] = acc;
        }
    }
    debug_assert!(last_row_is_canonical(&out));
    Some(out)
}

/// Two-step induction: from a `k`-good `C` with last row `(0,...,0,1,i)`
/// and `k_n = 2 k_new - k_hat`, produces the `(k_1,...,k_{n-1}, k_new,
/// k_new, k_hat)`-good matrix of dimension `n + 2` (with canonical last
/// row again, so the step composes). The determinant identity
/// `f_new = f_old` keeps goodness exactly.
pub fn extend_by_induction(
    k: &[i64],
    c: &CMat,
    k_new: i64,
    k_hat: i64,
) -> Result<(Vec<i64>, CMat), GoodnessError> {
    let n = k.len();
    if c.rows != n || n < 2 {
        return Err(GoodnessError::ShapeMismatch("need an n x n matrix, n >= 2".into()));
    }
    if !last_row_is_canonical(c) {
        return Err(GoodnessError::ShapeMismatch(
            "last row must be (0, ..., 0, 1, i)".into(),
        ));
    }
    if k[n - 1] != 2 * k_new - k_hat {
        return Err(GoodnessError::BadRelation(format!(
            "k_n = 2 k_new - k_hat required: {} != 2*{} - {}",
            k[n - 1],
            k_new,
            k_hat
        )));
    }
    let mut kk: Vec<i64> = k[..n - 1].to_vec();
    kk.extend_from_slice(&[k_new, k_new, k_hat]);
    let m = n + 2;
    let mut out = CMat::zeros(m, m);
    // top-left: first n-1 rows of C, top-right: zeros
    for i in 0..n - 1 {
        for j in 0..n {
            out[(i, j)] = c[(i, j)].clone();
        }
    }
    // bottom three rows: [0 | 1  i | -1 -i]
    //                    [0 | i -1 |  i -1]
    //                    [0 | 0  0 |  1  i]
    let b = [
        [g(1, 0), g(0, 1), g(-1, 0), g(0, -1)],
        [g(0, 1), g(-1, 0), g(0, 1), g(-1, 0)],
        [g(0, 0), g(0, 0), g(1, 0), g(0, 1)],
    ];
    for (r, row) in b.iter().enumerate() {
        for (cix, v) in row.iter().enumerate() {
            out[(n - 1 + r, n - 2 + cix)] = v.clone();
        }
    }
    Ok((kk, out))
}

// ---------------------------------------------------------------------------
// R-admissibility: the constructive pipeline.
// ---------------------------------------------------------------------------

/// Decides R-admissibility of a nonzero integer tuple.
///
/// `no` is returned exactly when the balance condition fails (a proven
/// obstruction); `yes` comes with a certified witness built from the
/// constructive families (all entries Gaussian rational, so the
/// certificate is exact); `unknown` is an honest verdict beyond the
/// families (sufficiency of the balance condition is open for n >= 5).
pub fn decide_r_admissible(k: &[i64]) -> AdmissibilityVerdict {
    assert!(
        k.iter().all(|&x| x != 0),
        "R-admissibility is defined for nonzero tuples"
    );
    if k.is_empty() {
        return AdmissibilityVerdict::yes(
            SubspaceMatrix::exact(CMat::from_rows(vec![])),
            vec![],
            crate::trigcert::constant(GRat::from_int(-1))
                .pipe_certify(),
        );
    }
    let signs = trace_condition(k);
    if signs.is_empty() {
        return AdmissibilityVerdict::no("balance condition fails: no signs with sum(+-k) = 0");
    }
    for c in &signs {
        if let Some(m) = construct_witness_for_signs(k, c) {
            let sm = SubspaceMatrix::exact(m);
            if let Ok(cert) = is_good(k, &sm) {
                if cert.is_no_zero() {
                    return AdmissibilityVerdict::yes(sm, k.to_vec(), cert);
                }
            }
        }
    }
    // dimension-6 family as a direct certificate source
    if k.len() == 6 {
        if let Some(v) = try_dim6_all_orders(k) {
            return v;
        }
    }
    AdmissibilityVerdict::unknown(
        "balance condition holds but no constructive witness found (open beyond n = 4)",
    )
}

impl LaurentPoly {
    fn pipe_certify(&self) -> CircleCertificate {
        certify_no_zero_on_circle(self).expect("constant certificate")
    }
}

/// Tries the dimension-6 family over all signed permutations of `k`.
fn try_dim6_all_orders(k: &[i64]) -> Option<AdmissibilityVerdict> {
    let idx = [0usize, 1, 2, 3, 4, 5];
    let perms = permutations(&idx);
    for p in &perms {
        for mask in 0..64u32 {
            let mut kk = [0i64; 6];
            for (pos, &src) in p.iter().enumerate() {
                let s = if (mask >> pos) & 1 == 1 { -1 } else { 1 };
                kk[pos] = s * k[src];
            }
            if kk[0] + kk[4] + kk[5] != kk[1] + kk[2] + kk[3] {
                continue;
            }
            if let Ok(v) = construct_good_dim6(&kk) {
                if v.is_yes() {
                    // map the witness back: row i of the found matrix
                    // corresponds to entry p[i] of the original, with a
                    // conjugation when the sign was flipped
                    let m = v.witness.as_ref().unwrap().as_exact().unwrap();
                    let mut rows = vec![vec![GRat::zero(); 6]; 6];
                    for (pos, &src) in p.iter().enumerate() {
                        let flip = (mask >> pos) & 1 == 1;
                        for j in 0..6 {
                            rows[src][j] = if flip {
                                m[(pos, j)].conj()
                            } else {
                                m[(pos, j)].clone()
                            };
                        }
                    }
                    let sm = SubspaceMatrix::exact(CMat::from_rows(rows));
                    if let Ok(cert) = is_good(k, &sm) {
                        if cert.is_no_zero() {
                            return Some(AdmissibilityVerdict::yes(sm, k.to_vec(), cert));
                        }
                    }
                }
            }
        }
    }
    None
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &y)| y)
            .collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Builds a goodness witness for `k` from a zero-sum sign vector, following
/// the induction pipeline: opposite-sign equal pairs become complex-line
/// blocks, same-sign equal pairs feed the two-step induction, and the at
/// most four leftover entries form a dimension <= 4 base family.
fn construct_witness_for_signs(k: &[i64], c: &[i8]) -> Option<CMat> {
    let n = k.len();
    // work over absolute values with adjusted signs
    let absk: Vec<i64> = k.iter().map(|x| x.abs()).collect();
    let adj: Vec<i8> = k
        .iter()
        .zip(c)
        .map(|(&ki, &ci)| if ki < 0 { -ci } else { ci })
        .collect();
    debug_assert_eq!(
        absk.iter()
            .zip(&adj)
            .map(|(&v, &s)| v * s as i64)
            .sum::<i64>(),
        0
    );
    // group indices by value
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<i64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..n {
        let e = groups.entry(absk[i]).or_default();
        if adj[i] > 0 {
            e.0.push(i);
        } else {
            e.1.push(i);
        }
    }
    let mut direct_pairs: Vec<(usize, usize)> = Vec::new(); // (plus, minus)
    let mut chain_pairs: Vec<(usize, usize, i64)> = Vec::new(); // same sign, signed value
    let mut tail: Vec<(usize, i64)> = Vec::new(); // index, signed value
    for (val, (plus, minus)) in &groups {
        let d = plus.len().min(minus.len());
        for t in 0..d {
            direct_pairs.push((plus[t], minus[t]));
        }
        let (rest, sign) = if plus.len() > minus.len() {
            (&plus[d..], 1i64)
        } else {
            (&minus[d..], -1i64)
        };
        let mut it = rest.chunks_exact(2);
        for ch in &mut it {
            chain_pairs.push((ch[0], ch[1], sign * val));
        }
        for &i in it.remainder() {
            tail.push((i, sign * val));
        }
    }
    if tail.len() > 4 {
        return None;
    }
    if tail.is_empty() && !chain_pairs.is_empty() {
        // another sign vector (with those pairs flipped to opposite signs)
        // handles this case as pure direct sums
        return None;
    }

    // row bookkeeping: build a matrix for the tuple in construction order,
    // then permute/conjugate rows back to the input layout
    let mut order: Vec<usize> = Vec::new(); // original index per row
    let mut built: Option<(Vec<i64>, CMat)> = None;

    if !tail.is_empty() {
        // base tuple: tail[1..] plus the synthetic entry t0 := -(their sum),
        // which by the total balance equals tail[0] + 2 * (chain values)
        let t0: i64 = -tail[1..].iter().map(|(_, v)| v).sum::<i64>();
        if chain_pairs.is_empty() {
            // no chain: t0 must already equal the remaining tail value
            if t0 != tail[0].1 {
                return None;
            }
            let base_vals: Vec<i64> = tail.iter().map(|(_, v)| *v).collect();
            // reorder so t0's slot is last: base = (tail[1..], tail[0])
            let reordered: Vec<i64> = base_vals[1..]
                .iter()
                .copied()
                .chain(std::iter::once(base_vals[0]))
                .collect();
            let base = build_base(&reordered)?;
            for (i, _) in &tail[1..] {
                order.push(*i);
            }
            order.push(tail[0].0);
            built = Some((base.0, base.1.as_exact()?.clone()));
        } else {
            // per-step signed values: with m pairs and per-pair chain sign
            // s_j (from the balance vector), the telescoped endpoint of
            //   t_j = 2 kappa_j - t_{j-1}
            // lands exactly on +-tail[0] when
            //   kappa_j = (-1)^{m-j} eps_j val_j,
            //   eps_j = -s_j (m even) or s_j (m odd).
            let m = chain_pairs.len();
            let kappas: Vec<i64> = chain_pairs
                .iter()
                .enumerate()
                .map(|(jm1, (_, _, w))| {
                    let j = jm1 + 1;
                    let eps_w = if m % 2 == 0 { -w } else { *w };
                    if (m - j) % 2 == 0 {
                        eps_w
                    } else {
                        -eps_w
                    }
                })
                .collect();
            // simulate the chain endpoint
            let mut t_cur = t0;
            for kap in &kappas {
                t_cur = 2 * kap - t_cur;
            }
            if t_cur.abs() != tail[0].1.abs() {
                return None;
            }
            // build the base with t0 last
            let (mut tuple, mut mat) = if tail.len() == 1 {
                // one-dimensional base (t0 = 0): seed the chain with the
                // first pair directly via the dimension-3 family,
                // (2 kappa, kappa, kappa) reordered to (kappa, kappa, 2 kappa)
                debug_assert_eq!(t0, 0);
                let kap = kappas[0];
                let (sm, _) = good_dim3_exact(2 * kap, kap, kap).ok()?;
                let mm = sm.as_exact()?;
                let rows: Vec<Vec<GRat>> = [1usize, 2, 0]
                    .iter()
                    .map(|&i| (0..3).map(|j| mm[(i, j)].clone()).collect())
                    .collect();
                let (i1, i2, _) = chain_pairs[0];
                order.push(i1);
                order.push(i2);
                (vec![kap, kap, 2 * kap], CMat::from_rows(rows))
            } else {
                let base_vals: Vec<i64> = tail[1..]
                    .iter()
                    .map(|(_, v)| *v)
                    .chain(std::iter::once(t0))
                    .collect();
                let base = build_base(&base_vals)?;
                for (i, _) in &tail[1..] {
                    order.push(*i);
                }
                (base.0, base.1.as_exact()?.clone())
            };
            let start = if tail.len() == 1 { 1 } else { 0 };
            for (step, (i1, i2, _)) in chain_pairs.iter().enumerate().skip(start) {
                let kap = kappas[step];
                let t_prev = *tuple.last().unwrap();
                let t_next = 2 * kap - t_prev;
                let norm = normalize_last_row(&mat)?;
                let (kk, mm) = extend_by_induction(&tuple, &norm, kap, t_next).ok()?;
                tuple = kk;
                mat = mm;
                order.push(*i1);
                order.push(*i2);
            }
            order.push(tail[0].0);
            built = Some((tuple, mat));
        }
    }

    // append direct-sum circle-line blocks
    let (mut tuple, mut mat) = match built {
        Some((t, m)) => (t, m),
        None => (Vec::new(), CMat::from_rows(vec![])),
    };
    for (p, m_idx) in &direct_pairs {
        // the block is (v, v)-good; sign flips happen in the final mapping
        let v = absk[*p];
        let block = circle_line_block();
        mat = block_diag(&mat, &block);
        tuple.push(v);
        tuple.push(v);
        order.push(*p);
        order.push(*m_idx);
    }
    debug_assert_eq!(order.len(), n);

    // map back: row r of `mat` corresponds to original index order[r] and
    // carries tuple value tuple[r]; fix sign by conjugation where the
    // original k differs in sign
    let mut rows = vec![vec![GRat::zero(); n]; n];
    for (r, &orig) in order.iter().enumerate() {
        let want = k[orig];
        let have = tuple[r];
        if want.abs() != have.abs() {
            return None;
        }
        for j in 0..n {
            rows[orig][j] = if want == have {
                mat[(r, j)].clone()
            } else {
                mat[(r, j)].conj()
            };
        }
    }
    Some(CMat::from_rows(rows))
}

/// Block-diagonal join of two exact matrices.
pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let n = a.rows + b.rows;
    let mut out = CMat::zeros(n, n);
    for i in 0..a.rows {
        for j in 0..a.cols {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            out[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
        }
    }
    out
}

/// Builds a certified-good base for a zero-sum signed tuple of length 1-4.
/// Length 1 requires the single value 0 (the trivial base `C = (i)`).
fn build_base(vals: &[i64]) -> Option<(Vec<i64>, SubspaceMatrix)> {
    match vals.len() {
        1 => {
            if vals[0] != 0 {
                return None;
            }
            // V = R i inside C: Im(z^0 i) = 1 != 0
            let m = CMat::from_rows(vec![vec![g(0, 1)]]);
            Some((vec![0], SubspaceMatrix::exact(m)))
        }
        2 => {
            if vals[0] + vals[1] != 0 {
                return None;
            }
            // (a, -a): conjugate the second row of the circle-line block
            let b = circle_line_block();
            let rows = vec![
                vec![b[(0, 0)].clone(), b[(0, 1)].clone()],
                vec![b[(1, 0)].conj(), b[(1, 1)].conj()],
            ];
            Some((vals.to_vec(), SubspaceMatrix::exact(CMat::from_rows(rows))))
        }
        3 => {
            if vals.iter().sum::<i64>() != 0 {
                return None;
            }
            // arrange as (K1, K2, K3) with K1 = K2 + K3: K1 := -vals[p],
            // and certify for the signed tuple directly
            for first in 0..3 {
                let k1 = -vals[first];
                let others: Vec<i64> = (0..3).filter(|&i| i != first).map(|i| vals[i]).collect();
                if k1 != others[0] + others[1] {
                    continue;
                }
                if let Ok((sm, _)) = good_dim3_exact(k1, others[0], others[1]) {
                    // tuple built: (k1, o0, o1) = (-vals[first], ...);
                    // conjugate the first row to flip back to vals[first]
                    let m = sm.as_exact()?;
                    let rows = vec![
                        (0..3).map(|j| m[(0, j)].conj()).collect::<Vec<_>>(),
                        (0..3).map(|j| m[(1, j)].clone()).collect(),
                        (0..3).map(|j| m[(2, j)].clone()).collect(),
                    ];
                    let tuple = vec![vals[first], others[0], others[1]];
                    let sm2 = SubspaceMatrix::exact(CMat::from_rows(rows));
                    if let Ok(cert) = is_good(&tuple, &sm2) {
                        if cert.is_no_zero() {
                            return Some((tuple, sm2));
                        }
                    }
                }
            }
            None
        }
        4 => {
            if vals.iter().sum::<i64>() != 0 {
                return None;
            }
            // find an arrangement (K1,K2,K3,K4) of +-vals with
            // K2-K1 = K4-K3 whose certified matrix, after undoing the
            // sign flips, serves the signed tuple
            let idx = [0usize, 1, 2, 3];
            for p in permutations(&idx) {
                for flips in 0..16u32 {
                    let mut kk = [0i64; 4];
                    for (pos, &src) in p.iter().enumerate() {
                        let s = if (flips >> pos) & 1 == 1 { -1 } else { 1 };
                        kk[pos] = s * vals[src];
                    }
                    if kk[1] - kk[0] != kk[3] - kk[2] {
                        continue;
                    }
                    if let Ok((sm, _)) = good_dim4_exact(&kk) {
                        let m = sm.as_exact()?;
                        // map rows back to the vals order, undoing flips
                        let mut rows = vec![vec![GRat::zero(); 4]; 4];
                        let mut tuple = vec![0i64; 4];
                        for (pos, &src) in p.iter().enumerate() {
                            let flipped = (flips >> pos) & 1 == 1;
                            tuple[src] = vals[src];
                            for j in 0..4 {
                                rows[src][j] = if flipped {
                                    m[(pos, j)].conj()
                                } else {
                                    m[(pos, j)].clone()
                                };
                            }
                        }
                        let sm2 = SubspaceMatrix::exact(CMat::from_rows(rows));
                        if let Ok(cert) = is_good(&tuple, &sm2) {
                            if cert.is_no_zero() {
                                return Some((tuple, sm2));
                            }
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// C-admissibility.
// ---------------------------------------------------------------------------

/// Decides C-admissibility of an even-length integer tuple: existence of a
/// k-good *complex* subspace. Not invariant under sign flips, but invariant
/// under permutations and under adding a constant tuple.
pub fn decide_c_admissible(k: &[i64]) -> Result<AdmissibilityVerdict, GoodnessError> {
    if k.len() % 2 != 0 {
        return Err(GoodnessError::OddLength);
    }
    let n = k.len();
    if n == 0 {
        return Ok(AdmissibilityVerdict::yes(
            SubspaceMatrix::exact(CMat::from_rows(vec![])),
            vec![],
            crate::trigcert::constant(GRat::from_int(-1)).pipe_certify(),
        ));
    }
    if !has_balanced_partition(k) {
        return Ok(AdmissibilityVerdict::no(
            "no equal-cardinality partition with equal sums",
        ));
    }
    if let Some(v) = complex_witness_search(k, 3) {
        return Ok(v);
    }
    Ok(AdmissibilityVerdict::unknown(
        "balanced partition exists but no complex witness found (complete only for 2d <= 4)",
    ))
}

/// Is there `I (disjoint) J` of equal cardinality with equal sums?
pub fn has_balanced_partition(k: &[i64]) -> bool {
    let n = k.len();
    let d = n / 2;
    let total: i64 = k.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let half = total / 2;
    for mask in 0..(1u64 << n) {
        if (mask.count_ones() as usize) != d {
            continue;
        }
        let mut s = 0i64;
        for (i, &ki) in k.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                s += ki;
            }
        }
        if s == half {
            return true;
        }
    }
    false
}

/// Recursive search for a complex witness: equal pairs as complex-line
/// blocks, dimension-4 bases, and the complex-preserving induction.
fn complex_witness_search(k: &[i64], depth: u32) -> Option<AdmissibilityVerdict> {
    let n = k.len();
    // direct constructions first
    if n == 2 {
        if k[0] == k[1] {
            let sm = SubspaceMatrix::exact(circle_line_block());
            let cert = is_good(k, &sm).ok()?;
            if cert.is_no_zero() {
                return Some(AdmissibilityVerdict::yes(sm, k.to_vec(), cert));
            }
        }
        return None;
    }
    if n == 4 {
        for p in permutations(&[0, 1, 2, 3]) {
            let kk = [k[p[0]], k[p[1]], k[p[2]], k[p[3]]];
            if kk[1] - kk[0] != kk[3] - kk[2] {
                continue;
            }
            if let Ok((sm, _)) = good_dim4_exact(&kk) {
                let m = sm.as_exact()?;
                let mut rows = vec![vec![GRat::zero(); 4]; 4];
                for (pos, &src) in p.iter().enumerate() {
                    for j in 0..4 {
                        rows[src][j] = m[(pos, j)].clone();
                    }
                }
                let sm2 = SubspaceMatrix::exact(CMat::from_rows(rows));
                if let Ok(cert) = is_good(k, &sm2) {
                    if cert.is_no_zero() {
                        return Some(AdmissibilityVerdict::yes(sm2, k.to_vec(), cert));
                    }
                }
            }
        }
        return None;
    }
    if depth == 0 {
        return None;
    }
    // split off an equal pair as a complex-line block
    for i in 0..n {
        for j in i + 1..n {
            if k[i] != k[j] {
                continue;
            }
            let rest: Vec<i64> = (0..n).filter(|&t| t != i && t != j).map(|t| k[t]).collect();
            if let Some(sub) = complex_witness_search(&rest, depth - 1) {
                if sub.is_yes() {
                    let m = sub.witness.as_ref()?.as_exact()?;
                    let joined = block_diag(m, &circle_line_block());
                    // rows: rest order then (i, j); permute back
                    let mut order: Vec<usize> =
                        (0..n).filter(|&t| t != i && t != j).collect();
                    order.push(i);
                    order.push(j);
                    let mut rows = vec![vec![GRat::zero(); n]; n];
                    for (r, &orig) in order.iter().enumerate() {
                        for col in 0..n {
                            rows[orig][col] = joined[(r, col)].clone();
                        }
                    }
                    let sm = SubspaceMatrix::exact(CMat::from_rows(rows));
                    if let Ok(cert) = is_good(k, &sm) {
                        if cert.is_no_zero() {
                            return Some(AdmissibilityVerdict::yes(sm, k.to_vec(), cert));
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_line_is_good_for_equal_pairs() {
        for k in [1i64, 5, -3] {
            let sm = SubspaceMatrix::exact(circle_line_block());
            let cert = is_good(&[k, k], &sm).unwrap();
            assert!(cert.is_no_zero());
        }
    }

    #[test]
    fn single_line_not_good() {
        // k = (1), C = (1): f(z) = Im z vanishes at +-1
        let sm = SubspaceMatrix::exact(CMat::from_rows(vec![vec![g(1, 0)]]));
        let cert = is_good(&[1], &sm).unwrap();
        assert!(!cert.is_no_zero());
    }

    #[test]
    fn dim3_relation_enforced() {
        assert!(matches!(
            construct_good_dim3(4, 2, 1, &OmegaChoice::One),
            Err(GoodnessError::BadRelation(_))
        ));
    }

    #[test]
    fn dim3_exact_certifies_both_orientations() {
        // (3,2,1): v2(2)=1 > v2(1)=0, so the orientation machinery must
        // still certify the tuple as given
        let (_, cert) = good_dim3_exact(3, 2, 1).unwrap();
        assert!(cert.is_no_zero());
        // (5,3,2): v2(3)=0 <= v2(2)=1: direct orientation
        let (_, cert) = good_dim3_exact(5, 3, 2).unwrap();
        assert!(cert.is_no_zero());
    }

    #[test]
    fn dim3_generic_omega_certifies() {
        let omega = OmegaChoice::generic_from_seed(7);
        let c = construct_good_dim3(3, 2, 1, &omega).unwrap();
        let cert = is_good(&[3, 2, 1], &c).unwrap();
        assert!(cert.is_no_zero());
        match &c.kind {
            SubspaceKind::Numeric { sampled_r, .. } => assert!(sampled_r.is_some()),
            _ => panic!("generic omega should produce a numeric matrix"),
        }
    }

    #[test]
    fn dim4_relation_and_certification() {
        assert!(construct_good_dim4(&[1, 2, 3, 5], &OmegaChoice::One).is_err());
        let (_, cert) = good_dim4_exact(&[1, 3, 2, 4]).unwrap();
        assert!(cert.is_no_zero());
        // (1,1,1,1) reduces to two complex planes
        let (_, cert) = good_dim4_exact(&[1, 1, 1, 1]).unwrap();
        assert!(cert.is_no_zero());
    }

    #[test]
    fn dim6_paper_instance() {
        // (alpha,beta,gamma,delta) = (1,5,3,12), k = -16:
        // uk = -(10,11,31,15,28,19)
        let k = [-10i64, -11, -31, -15, -28, -19];
        let v = construct_good_dim6(&k).unwrap();
        assert!(v.is_yes());
        let cert = v.certificate.unwrap();
        assert!(cert.certified_min_abs.unwrap_or(0.0) > 0.0);
    }

    #[test]
    fn dim6_odd_gamma_delta_series() {
        // alpha = beta, gamma and delta odd: always good
        // pick alpha=beta=2, gamma=1, delta=3, k=7:
        // k = (k+a+b, k+b, k-c-d, k+a, k-d, k-c)
        let (a, b, c, d, kk) = (2i64, 2, 1, 3, 7);
        let k = [kk + a + b, kk + b, kk - c - d, kk + a, kk - d, kk - c];
        let v = construct_good_dim6(&k).unwrap();
        assert!(v.is_yes());
    }

    #[test]
    fn induction_from_circle_line() {
        // from (3,3) with last row (1, i): C = [[-i, 1], [1, i]]
        let c = normalize_last_row(&circle_line_block()).unwrap();
        let sm = SubspaceMatrix::exact(c.clone());
        assert!(is_good(&[3, 3], &sm).unwrap().is_no_zero());
        // 3 = 2*1 - (-1)
        let (kk, cc) = extend_by_induction(&[3, 3], &c, 1, -1).unwrap();
        assert_eq!(kk, vec![3, 1, 1, -1]);
        let cert = is_good(&kk, &SubspaceMatrix::exact(cc.clone())).unwrap();
        assert!(cert.is_no_zero());
        // even-multiplicity extension (m,m) -> (m,m,m,m)
        let (kk2, cc2) = extend_by_induction(&[5, 5], &normalize_last_row(&circle_line_block()).unwrap(), 5, 5).unwrap();
        assert_eq!(kk2, vec![5, 5, 5, 5]);
        assert!(is_good(&kk2, &SubspaceMatrix::exact(cc2)).unwrap().is_no_zero());
        let _ = cc;
    }

    #[test]
    fn induction_shape_mismatch() {
        let c = circle_line_block(); // last row (i, -1): not canonical
        assert!(matches!(
            extend_by_induction(&[3, 3], &c, 1, -1),
            Err(GoodnessError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn r_admissible_examples() {
        // (1,2,3): yes via the dimension-3 family
        let v = decide_r_admissible(&[1, 2, 3]);
        assert!(v.is_yes());
        // (1,2): trace obstruction
        let v = decide_r_admissible(&[1, 2]);
        assert_eq!(v.status, VerdictStatus::No);
        // (k,k): yes
        for k in [1i64, 4, 9] {
            assert!(decide_r_admissible(&[k, k]).is_yes());
        }
        // (3,3,6): needs the chain
        assert!(decide_r_admissible(&[3, 3, 6]).is_yes());
        // pure pairs
        assert!(decide_r_admissible(&[2, 2, 7, 7]).is_yes());
        // pairs + tail with chain absorption: (1,1,3,4,9)
        assert!(decide_r_admissible(&[1, 1, 3, 4, 9]).is_yes());
        // negative entries
        assert!(decide_r_admissible(&[-1, 2, -3]).is_yes());
    }

    #[test]
    fn r_admissible_dim6_fallback() {
        let v = decide_r_admissible(&[-10, -11, -31, -15, -28, -19]);
        assert!(v.is_yes(), "{:?}", v.obstruction);
    }

    #[test]
    fn c_admissible_examples() {
        // (k,k) complex line
        let v = decide_c_admissible(&[4, 4]).unwrap();
        assert!(v.is_yes());
        // (1,2,3,4): partition {1,4}/{2,3}
        let v = decide_c_admissible(&[1, 2, 3, 4]).unwrap();
        assert!(v.is_yes());
        // (1,1,1,2): no balanced partition
        let v = decide_c_admissible(&[1, 1, 1, 2]).unwrap();
        assert_eq!(v.status, VerdictStatus::No);
        // odd length
        assert!(decide_c_admissible(&[1, 2, 3]).is_err());
        // six entries, pairable
        let v = decide_c_admissible(&[2, 2, 5, 5, 1, 1]).unwrap();
        assert!(v.is_yes());
    }

    #[test]
    fn goodness_invariances() {
        // scaling invariance: (1,2,3) witness re-certifies for (2,4,6)
        let v = decide_r_admissible(&[1, 2, 3]);
        let w = v.witness.unwrap();
        let cert = is_good(&[2, 4, 6], &w).unwrap();
        assert!(cert.is_no_zero());
        // permutation invariance: permute tuple and rows together
        let m = w.as_exact().unwrap();
        let perm = [2usize, 0, 1];
        let rows: Vec<Vec<GRat>> = perm
            .iter()
            .map(|&i| (0..3).map(|j| m[(i, j)].clone()).collect())
            .collect();
        let kp = [3i64, 1, 2];
        let cert = is_good(&kp, &SubspaceMatrix::exact(CMat::from_rows(rows))).unwrap();
        assert!(cert.is_no_zero());
        // sign-flip invariance: negate an entry, conjugate the row
        let rows: Vec<Vec<GRat>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == 0 { m[(i, j)].conj() } else { m[(i, j)].clone() })
                    .collect()
            })
            .collect();
        let cert = is_good(&[-1, 2, 3], &SubspaceMatrix::exact(CMat::from_rows(rows))).unwrap();
        assert!(cert.is_no_zero());
    }

    #[test]
    fn dim3_dim4_closed_form_identity() {
        // the family determinant equals R(.)^2 + I(., omega)^2 pointwise
        let omega = OmegaChoice::generic_from_seed(42);
        let r = match &omega {
            OmegaChoice::Generic { r } => crate::arith::rat_to_f64(r),
            _ => unreachable!(),
        };
        let (k1, k2, k3) = (7i64, 4, 3);
        let c = construct_good_dim3(k1, k2, k3, &omega).unwrap();
        let f = c.laurent(&[k1, k2, k3]).unwrap();
        for j in 0..200 {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 200.0 + 0.017;
            let expect = (k3 as f64 * t).cos().powi(2)
                + (k2 as f64 * t + r).sin().powi(2);
            assert!((f.eval_f64(t) - expect).abs() < 1e-10, "dim3 identity at t={t}");
        }
        let k4 = [1i64, 3, 2, 4]; // k2-k1 = k4-k3 = 2
        let c = construct_good_dim4(&k4, &omega).unwrap();
        let f = c.laurent(&k4).unwrap();
        for j in 0..200 {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 200.0 + 0.017;
            let expect = ((k4[1] - k4[0]) as f64 * t).cos().powi(2)
                + ((k4[0] - k4[2]) as f64 * t + r).sin().powi(2);
            assert!((f.eval_f64(t) - expect).abs() < 1e-10, "dim4 identity at t={t}");
        }
    }

    #[test]
    fn openness_via_perturbation() {
        // certified-good instance stays good under small perturbations
        let v = decide_r_admissible(&[1, 2, 3]);
        let m = v.witness.unwrap().as_exact().unwrap().clone();
        let eps = Rat::new(1.into(), 1_000_000.into());
        let mut rows: Vec<Vec<GRat>> = (0..3)
            .map(|i| (0..3).map(|j| m[(i, j)].clone()).collect())
            .collect();
        rows[1][1] = &rows[1][1] + &GRat::new(eps.clone(), -eps.clone());
        rows[2][0] = &rows[2][0] + &GRat::new(Rat::zero(), eps);
        let cert = is_good(&[1, 2, 3], &SubspaceMatrix::exact(CMat::from_rows(rows))).unwrap();
        assert!(cert.is_no_zero());
    }
}
