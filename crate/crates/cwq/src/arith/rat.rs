use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The rational `2^e` for possibly negative `e`.
pub fn rat_pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::one() << (e as usize))
    } else {
        Rat::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Nearest dyadic rational below `x` with denominator `2^prec`.
pub fn floor_dyadic(x: &Rat, prec: u32) -> Rat {
    let scaled = x * rat_pow2(prec as i64);
    Rat::new(scaled.floor().to_integer(), BigInt::one()) / rat_pow2(prec as i64)
}

/// Nearest dyadic rational above `x` with denominator `2^prec`.
pub fn ceil_dyadic(x: &Rat, prec: u32) -> Rat {
    let scaled = x * rat_pow2(prec as i64);
    Rat::new(scaled.ceil().to_integer(), BigInt::one()) / rat_pow2(prec as i64)
}

/// Nearest dyadic rational with denominator `2^prec` (rounds to nearest).
pub fn round_dyadic(x: &Rat, prec: u32) -> Rat {
    let scaled = x * rat_pow2(prec as i64);
    Rat::new(scaled.round().to_integer(), BigInt::one()) / rat_pow2(prec as i64)
}

/// Exact rational from an `f64` (the IEEE value itself, which is dyadic).
///
/// Returns `None` for non-finite inputs.
pub fn rat_from_f64_approx(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Best-effort `f64` view of a rational.
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division for extreme numerator/denominator sizes.
        let n = x.numer();
        let d = x.denom();
        let bits = n.bits().max(d.bits()) as i64 - 500;
        if bits > 0 {
            let shift = BigInt::one() << (bits as usize);
            let nn = (n / &shift).to_f64().unwrap_or(f64::NAN);
            let dd = (d / &shift).to_f64().unwrap_or(f64::NAN);
            nn / dd
        } else {
            f64::NAN
        }
    })
}

/// Integer square root test: returns `Some(r)` when `n = r^2`, `n >= 0`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}
