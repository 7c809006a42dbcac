//! Fast directed-rounding intervals over `f64`, for grid certification.
//!
//! Every operation widens the result by one ulp in each direction, so the
//! computed interval always encloses the exact value. Conversions from the
//! exact types round outward as well.

use super::interval::RatInterval;
use super::rat::rat_to_f64;

/// Closed f64 interval with outward rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64I {
    pub lo: f64,
    pub hi: f64,
}

impl F64I {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        F64I { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        F64I { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        F64I::point(0.0)
    }

    pub fn from_rat_interval(iv: &RatInterval) -> Self {
        F64I {
            lo: rat_to_f64(&iv.lo).next_down(),
            hi: rat_to_f64(&iv.hi).next_up(),
        }
    }

    pub fn add(self, rhs: F64I) -> Self {
        F64I {
            lo: (self.lo + rhs.lo).next_down(),
            hi: (self.hi + rhs.hi).next_up(),
        }
    }

    pub fn sub(self, rhs: F64I) -> Self {
        F64I {
            lo: (self.lo - rhs.hi).next_down(),
            hi: (self.hi - rhs.lo).next_up(),
        }
    }

    pub fn neg(self) -> Self {
        F64I {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(self, rhs: F64I) -> Self {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let mut lo = c[0];
        let mut hi = c[0];
        for &x in &c[1..] {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        F64I {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    /// Certified lower bound of `|x|` over the interval.
    pub fn abs_lower(self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }
}

/// Complex box over [`F64I`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CF64 {
    pub re: F64I,
    pub im: F64I,
}

impl CF64 {
    pub fn new(re: F64I, im: F64I) -> Self {
        CF64 { re, im }
    }

    pub fn one() -> Self {
        CF64 {
            re: F64I::point(1.0),
            im: F64I::zero(),
        }
    }

    pub fn add(self, rhs: CF64) -> Self {
        CF64::new(self.re.add(rhs.re), self.im.add(rhs.im))
    }

    pub fn mul(self, rhs: CF64) -> Self {
        CF64::new(
            self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        )
    }

    pub fn conj(self) -> Self {
        CF64::new(self.re, self.im.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outward_rounding_encloses() {
        let a = F64I::point(0.1);
        let b = F64I::point(0.2);
        let s = a.add(b);
        assert!(s.lo < 0.1 + 0.2 + 1e-17 && s.hi > 0.3 - 1e-16);
        assert!(s.hi - s.lo < 1e-15);
        let p = a.mul(b);
        assert!(p.lo <= 0.02 && p.hi >= 0.02 - 1e-17);
    }

    #[test]
    fn complex_power_stays_near_circle() {
        // (cos t + i sin t)^n stays on the circle within accumulated error
        let t = 2.0 * std::f64::consts::PI / 4096.0;
        let z = CF64::new(F64I::point(t.cos()), F64I::point(t.sin()));
        let mut acc = CF64::one();
        for _ in 0..4096 {
            acc = acc.mul(z);
        }
        let n = acc.re.mul(acc.re).add(acc.im.mul(acc.im));
        assert!(n.lo > 0.999 && n.hi < 1.001);
        assert!(n.hi - n.lo < 1e-9);
    }
}
