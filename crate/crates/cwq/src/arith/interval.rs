use super::rat::{ceil_dyadic, floor_dyadic, rat_to_f64, Rat};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Closed interval with exact rational endpoints.
///
/// All operations round outward, so an interval computed from enclosures
/// of the inputs encloses the exact result. Endpoints are periodically
/// compressed to dyadics to keep denominators small; compression also
/// rounds outward and therefore preserves soundness.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

/// Denominator bits kept when compressing endpoints.
const COMPRESS_BITS: u32 = 128;

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        RatInterval::point(Rat::zero())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersects(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified sign: `Some(1)` / `Some(-1)` when the whole interval is
    /// strictly positive / negative, `Some(0)` for the exact point zero,
    /// `None` when undecided.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Outward compression of the endpoints to dyadics.
    pub fn compress(&self) -> Self {
        RatInterval {
            lo: floor_dyadic(&self.lo, COMPRESS_BITS),
            hi: ceil_dyadic(&self.hi, COMPRESS_BITS),
        }
    }

    pub fn add(&self, rhs: &RatInterval) -> Self {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &RatInterval) -> Self {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, rhs: &RatInterval) -> Self {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    /// Square with the dependency taken into account (always >= 0).
    pub fn sqr(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            RatInterval::new(Rat::zero(), if a > b { a } else { b })
        } else {
            RatInterval::new(
                if a < b { a.clone() } else { b.clone() },
                if a > b { a } else { b },
            )
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_negative() {
            RatInterval::new(&self.hi * r, &self.lo * r)
        } else {
            RatInterval::new(&self.lo * r, &self.hi * r)
        }
    }

    pub fn shift(&self, r: &Rat) -> Self {
        RatInterval::new(&self.lo + r, &self.hi + r)
    }

    /// Reciprocal; `None` when the interval straddles zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, rhs: &RatInterval) -> Option<Self> {
        Some(self.mul(&rhs.recip()?))
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = if -&self.lo > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            RatInterval::new(Rat::zero(), m)
        }
    }

    pub fn hull(&self, other: &RatInterval) -> Self {
        RatInterval::new(
            if self.lo < other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            },
            if self.hi > other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            },
        )
    }

    /// Certified strict comparison; `None` when the intervals overlap.
    pub fn cmp_certain(&self, other: &RatInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = RatInterval::point(Rat::from_integer(1.into()));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6e}, {:.6e}]", rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }
}
