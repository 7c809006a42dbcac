use super::rat::{rat_to_f64, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Gaussian rational `re + im*i`, the exact complex scalar of the crate.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GRat::new(Rat::from_integer(n.into()), Rat::zero())
    }

    pub fn i() -> Self {
        GRat::new(Rat::zero(), Rat::one())
    }

    pub fn zero() -> Self {
        GRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GRat::new(Rat::one(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GRat::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// True when `|self| = 1` exactly.
    pub fn on_unit_circle(&self) -> bool {
        self.norm_sqr().is_one()
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}i)", self.re, self.im)
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        GRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GRat {
    type Output = GRat;
    fn div(self, rhs: &GRat) -> GRat {
        let inv = rhs.inv().expect("division by zero GRat");
        self * &inv
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($t:ident, $m:ident, $op:tt) => {
        impl $t for GRat {
            type Output = GRat;
            fn $m(self, rhs: GRat) -> GRat {
                (&self) $op (&rhs)
            }
        }
    };
}
forward_owned!(Add, add, +);
forward_owned!(Sub, sub, -);
forward_owned!(Mul, mul, *);
forward_owned!(Div, div, /);

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -(&self)
    }
}

impl AddAssign<&GRat> for GRat {
    fn add_assign(&mut self, rhs: &GRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GRat> for GRat {
    fn sub_assign(&mut self, rhs: &GRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GRat> for GRat {
    fn mul_assign(&mut self, rhs: &GRat) {
        *self = (&*self) * rhs;
    }
}
