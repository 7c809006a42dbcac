use super::gauss::GRat;
use super::interval::RatInterval;
use super::rat::Rat;

/// Rectangular complex interval (a box in the complex plane).
#[derive(Clone, Debug, PartialEq)]
pub struct CInt {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl CInt {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        CInt { re, im }
    }

    pub fn point(re: Rat, im: Rat) -> Self {
        CInt {
            re: RatInterval::point(re),
            im: RatInterval::point(im),
        }
    }

    pub fn from_grat(g: &GRat) -> Self {
        CInt::point(g.re.clone(), g.im.clone())
    }

    pub fn zero() -> Self {
        CInt::new(RatInterval::zero(), RatInterval::zero())
    }

    pub fn one() -> Self {
        CInt::point(Rat::from_integer(1.into()), Rat::from_integer(0.into()))
    }

    pub fn add(&self, rhs: &CInt) -> Self {
        CInt::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &CInt) -> Self {
        CInt::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn neg(&self) -> Self {
        CInt::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, rhs: &CInt) -> Self {
        CInt::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    pub fn conj(&self) -> Self {
        CInt::new(self.re.clone(), self.im.neg())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CInt::new(self.re.scale(r), self.im.scale(r))
    }

    pub fn norm_sqr(&self) -> RatInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let inv = n.recip()?;
        Some(CInt::new(self.re.mul(&inv), self.im.neg().mul(&inv)))
    }

    pub fn div(&self, rhs: &CInt) -> Option<Self> {
        Some(self.mul(&rhs.recip()?))
    }

    pub fn compress(&self) -> Self {
        CInt::new(self.re.compress(), self.im.compress())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains(&self, g: &GRat) -> bool {
        self.re.contains(&g.re) && self.im.contains(&g.im)
    }

    pub fn intersects(&self, other: &CInt) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn width(&self) -> Rat {
        let wr = self.re.width();
        let wi = self.im.width();
        if wr > wi {
            wr
        } else {
            wi
        }
    }

    pub fn mid(&self) -> GRat {
        GRat::new(self.re.mid(), self.im.mid())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = CInt::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).compress();
            }
            base = base.mul(&base).compress();
            e >>= 1;
        }
        acc
    }

    /// Integer power with negative exponents allowed (needs 0 not in box).
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.recip().map(|r| r.pow((-e) as u64))
        }
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
