use crate::arith::{CInt, GRat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
///
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    pub fn x() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        IntPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when `rhs` does not divide `self` over Z[x].
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero());
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < rhs.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - rhs.degree();
        let mut quot = vec![BigInt::zero(); dq + 1];
        let lead = rhs.leading();
        for k in (0..=dq).rev() {
            let top = rem[k + rhs.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (i, c) in rhs.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// GCD of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Reciprocal polynomial `x^d f(1/x)`, normalized to positive leading
    /// coefficient (this is the monic reversal for +-1 constant terms).
    pub fn reversal(&self) -> Self {
        let mut c: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        let p = IntPolynomial::new(c);
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// True when `x^d f(1/x) = +- f(x)` (circle-symmetric root set).
    pub fn is_self_reciprocal(&self) -> bool {
        let r = self.reversal();
        r == *self || r == self.neg()
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_grat(&self, x: &GRat) -> GRat {
        let mut acc = GRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &GRat::new(Rat::from_integer(c.clone()), Rat::zero());
        }
        acc
    }

    pub fn eval_cint(&self, x: &CInt) -> CInt {
        let mut acc = CInt::zero();
        for c in self.coeffs.iter().rev() {
            let cc = CInt::point(Rat::from_integer(c.clone()), Rat::zero());
            acc = acc.mul(x).add(&cc).compress();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    pub fn to_rat_coeffs(&self) -> Vec<Rat> {
        self.coeffs
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }

    /// `f(x^k)`
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        IntPolynomial::new(out)
    }

    /// Largest `v` with `x^v | f`, and the deflated polynomial.
    pub fn split_off_x_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, IntPolynomial::zero());
        }
        let v = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (v, IntPolynomial::new(self.coeffs[v..].to_vec()))
    }
}

pub fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{a}x")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{i}")?
                    } else {
                        write!(f, "{a}x^{i}")?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers (Sturm sequences, gcds).
// ---------------------------------------------------------------------------

/// Polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    pub coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(p: &IntPolynomial) -> Self {
        RatPoly::new(p.to_rat_coeffs())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let l = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, r: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn divrem(&self, div: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!div.is_zero());
        if self.degree() < div.degree() || self.is_zero() {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - div.degree();
        let mut quot = vec![Rat::zero(); dq + 1];
        let lead = div.leading();
        for k in (0..=dq).rev() {
            let top = rem[k + div.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / &lead;
            quot[k] = q.clone();
            for (i, c) in div.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators to a primitive integer polynomial.
    pub fn to_int_primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom();
            let g = l.gcd(d);
            l = l / g * d;
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let f = IntPolynomial::from_i64(&[1, -3, 1]); // x^2 - 3x + 1
        assert_eq!(f.degree(), 2);
        assert!(f.is_monic());
        let g = IntPolynomial::from_i64(&[-1, 1]); // x - 1
        let fg = f.mul(&g);
        assert_eq!(fg, IntPolynomial::from_i64(&[-1, 4, -4, 1]));
        assert_eq!(fg.div_exact(&g).unwrap(), f);
        assert!(g.divides(&fg));
        assert!(!IntPolynomial::from_i64(&[1, 1]).divides(&fg));
    }

    #[test]
    fn reversal_and_self_reciprocal() {
        let f = IntPolynomial::from_i64(&[1, -3, 1]);
        assert!(f.is_self_reciprocal());
        let salem = IntPolynomial::from_i64(&[1, -1, -1, -1, 0, 1]); // not palindromic
        assert!(!salem.is_self_reciprocal());
        let f6 = IntPolynomial::from_i64(&[1, 0, -1, -1, -1, 0, 1]);
        assert!(f6.is_self_reciprocal());
    }

    #[test]
    fn rat_divrem_gcd() {
        let f = RatPoly::from_int(&IntPolynomial::from_i64(&[-1, 0, 1])); // x^2-1
        let g = RatPoly::from_int(&IntPolynomial::from_i64(&[-1, 1])); // x-1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q.coeffs.len(), 2);
        let h = f.gcd(&g);
        assert_eq!(h.to_int_primitive(), IntPolynomial::from_i64(&[-1, 1]));
    }
}
