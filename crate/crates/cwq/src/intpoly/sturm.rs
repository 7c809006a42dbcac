//! Sturm sequences: exact real-root counting and isolation.

use super::poly::RatPoly;
use crate::arith::{Rat, RatInterval};
use num_traits::{One, Signed, Zero};

/// Sturm chain of a squarefree rational polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(f: &RatPoly) -> Self {
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        SturmChain { chain }
    }

    fn sign_changes_at(&self, x: &Rat) -> usize {
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let s = v.is_positive();
            if let Some(prev) = last {
                if prev != s {
                    changes += 1;
                }
            }
            last = Some(s);
        }
        changes
    }

    fn sign_changes_at_inf(&self, positive: bool) -> usize {
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            if p.is_zero() {
                continue;
            }
            let lead = p.leading();
            let odd = p.degree() % 2 == 1;
            let s = if positive {
                lead.is_positive()
            } else {
                lead.is_positive() != odd
            };
            if let Some(prev) = last {
                if prev != s {
                    changes += 1;
                }
            }
            last = Some(s);
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        self.sign_changes_at(a) - self.sign_changes_at(b)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.sign_changes_at_inf(false) - self.sign_changes_at_inf(true)
    }

    /// Number of real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rat, b: &Rat) -> usize {
        let mut n = self.count_in(a, b);
        if self.chain[0].eval(b).is_zero() {
            n -= 1;
        }
        n
    }
}

/// Cauchy root bound: all complex roots have modulus below the returned value.
pub fn root_bound(f: &RatPoly) -> Rat {
    let lead = f.leading();
    let mut m = Rat::zero();
    for c in &f.coeffs[..f.coeffs.len().saturating_sub(1)] {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    m + Rat::one()
}

/// Isolates all real roots of a squarefree polynomial into disjoint
/// intervals, each containing exactly one root, sorted increasingly.
/// Rational roots may be returned as exact points (`lo == hi`).
pub fn isolate_real_roots(f: &RatPoly) -> Vec<RatInterval> {
    if f.degree() == 0 || f.is_zero() {
        return vec![];
    }
    let chain = SturmChain::new(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let total = chain.count_in(&(-b.clone()), &b);
    if total == 0 {
        return out;
    }
    let mut stack = vec![(-b.clone(), b.clone(), total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(RatInterval::new(lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        if f.eval(&mid).is_zero() {
            // exact rational root at the midpoint
            out.push(RatInterval::point(mid.clone()));
            // perturb the split point so sub-intervals stay half-open clean
            let eps = (&hi - &lo) / Rat::from_integer(1000.into());
            let left_hi = &mid - &eps;
            let right_lo = &mid + &eps;
            let lc = chain.count_in(&lo, &left_hi);
            let rc = chain.count_in(&right_lo, &hi);
            stack.push((lo, left_hi, lc));
            stack.push((right_lo, hi, rc));
        } else {
            let lc = chain.count_in(&lo, &mid);
            stack.push((lo, mid.clone(), lc));
            stack.push((mid, hi, count - lc));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval of a squarefree `f` below `width`.
pub fn refine_root(f: &RatPoly, iv: &RatInterval, width: &Rat) -> RatInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    let mut flo = f.eval(&lo);
    if flo.is_zero() {
        return RatInterval::point(lo);
    }
    let fhi = f.eval(&hi);
    if fhi.is_zero() {
        return RatInterval::point(hi);
    }
    debug_assert!(flo.is_positive() != fhi.is_positive(), "not a sign-change interval");
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let fm = f.eval(&mid);
        if fm.is_zero() {
            return RatInterval::point(mid);
        }
        if fm.is_positive() == flo.is_positive() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};
    use crate::intpoly::IntPolynomial;

    #[test]
    fn count_roots_quadratic() {
        // x^2 - 3x + 1: roots (3 +- sqrt 5)/2 ~ 0.382, 2.618
        let f = RatPoly::from_int(&IntPolynomial::from_i64(&[1, -3, 1]));
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_all(), 2);
        assert_eq!(chain.count_in(&rat_i(0), &rat_i(1)), 1);
        assert_eq!(chain.count_in(&rat_i(2), &rat_i(3)), 1);
        assert_eq!(chain.count_in(&rat_i(1), &rat_i(2)), 0);
    }

    #[test]
    fn isolate_and_refine() {
        let f = RatPoly::from_int(&IntPolynomial::from_i64(&[1, -3, 1]));
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let r0 = refine_root(&f, &roots[0], &rat(1, 1 << 30));
        let v = r0.to_f64();
        assert!((v - 0.3819660112501051).abs() < 1e-8);
    }

    #[test]
    fn exact_rational_roots() {
        // (x-1)(x+2)(2x-1)
        let f = RatPoly::from_int(&IntPolynomial::from_i64(&[2, -3, -3, 2]));
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
    }
}
