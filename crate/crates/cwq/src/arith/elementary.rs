//! Certified enclosures of the elementary functions needed by the crate:
//! pi, square roots, logarithms, arctangents and the circle map
//! `t -> (cos t, sin t)`. Every function returns an interval that provably
//! contains the exact value; `prec` is the target width exponent (the
//! result aims at width `<= 2^-prec` for point inputs).

use super::interval::RatInterval;
use super::rat::{rat_pow2, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Enclosure of pi via Machin's formula.
pub fn pi(prec: u32) -> RatInterval {
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_inv_int(5, prec + 6);
    let b = atan_inv_int(239, prec + 6);
    a.scale(&Rat::from_integer(16.into()))
        .sub(&b.scale(&Rat::from_integer(4.into())))
        .compress()
}

/// Alternating series for atan(1/n), n >= 2.
fn atan_inv_int(n: i64, prec: u32) -> RatInterval {
    let nn = Rat::from_integer(BigInt::from(n) * BigInt::from(n));
    let tol = rat_pow2(-(prec as i64));
    let mut term = Rat::new(BigInt::one(), BigInt::from(n));
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    loop {
        let contrib = &term / Rat::from_integer((2 * k + 1).into());
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term /= &nn;
        k += 1;
        let next = &term / Rat::from_integer((2 * k + 1).into());
        if next < tol {
            // Alternating series: truncation error bounded by the next term.
            return RatInterval::new(&sum - &next, &sum + &next);
        }
    }
}

/// Certified square root of a nonnegative interval.
pub fn sqrt_interval(x: &RatInterval, prec: u32) -> RatInterval {
    assert!(!x.lo.is_negative(), "sqrt of negative interval");
    RatInterval::new(sqrt_lower(&x.lo, prec), sqrt_upper(&x.hi, prec))
}

fn sqrt_lower(x: &Rat, prec: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    // floor(sqrt(x * 4^prec)) / 2^prec <= sqrt(x)
    let scaled = x * rat_pow2(2 * prec as i64);
    let n = scaled.floor().to_integer();
    Rat::from_integer(n.sqrt()) / rat_pow2(prec as i64)
}

fn sqrt_upper(x: &Rat, prec: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let scaled = x * rat_pow2(2 * prec as i64);
    let n = scaled.ceil().to_integer();
    Rat::from_integer(n.sqrt() + BigInt::one()) / rat_pow2(prec as i64)
}

/// Enclosure of ln(2).
fn ln2(prec: u32) -> RatInterval {
    // ln 2 = 2 atanh(1/3)
    atanh_small(&Rat::new(BigInt::one(), 3.into()), prec + 2)
        .scale(&Rat::from_integer(2.into()))
}

/// atanh for |u| <= 1/2, via the power series with geometric tail bound.
fn atanh_small(u: &Rat, prec: u32) -> RatInterval {
    let tol = rat_pow2(-(prec as i64));
    let u2 = u * u;
    let mut term = u.clone();
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    loop {
        sum += &term / Rat::from_integer((2 * k + 1).into());
        term *= &u2;
        k += 1;
        // Tail <= |term| * sum of geometric series / (2k+1).
        let tail = ((&term / Rat::from_integer((2 * k + 1).into()))
            / (Rat::one() - &u2))
            .abs();
        if tail < tol {
            return RatInterval::new(&sum - &tail, &sum + &tail);
        }
    }
}

/// Certified natural logarithm of a strictly positive interval.
pub fn ln_interval(x: &RatInterval, prec: u32) -> RatInterval {
    assert!(x.lo.is_positive(), "ln of non-positive interval");
    RatInterval::new(ln_point(&x.lo, prec, false), ln_point(&x.hi, prec, true)).compress()
}

fn ln_point(x: &Rat, prec: u32, upper: bool) -> Rat {
    // Reduce to m in [3/4, 3/2) with x = m * 2^e.
    let mut m = x.clone();
    let mut e: i64 = 0;
    let three_half = Rat::new(3.into(), 2.into());
    let three_quarter = Rat::new(3.into(), 4.into());
    while m >= three_half {
        m /= Rat::from_integer(2.into());
        e += 1;
    }
    while m < three_quarter {
        m *= Rat::from_integer(2.into());
        e -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1)), |u| <= 1/5 on the reduced range.
    let u = (&m - Rat::one()) / (&m + Rat::one());
    let lnm = atanh_small(&u, prec + 4).scale(&Rat::from_integer(2.into()));
    let l2 = ln2(prec + 4);
    let total = lnm.add(&l2.scale(&Rat::from_integer(e.into())));
    if upper {
        total.hi
    } else {
        total.lo
    }
}

/// atan for a rational point, any magnitude.
fn atan_point(x: &Rat, prec: u32) -> RatInterval {
    if x.is_negative() {
        return atan_point(&-x.clone(), prec).neg();
    }
    if x > &Rat::one() {
        // atan x = pi/2 - atan(1/x)
        let half_pi = pi(prec + 4).scale(&Rat::new(1.into(), 2.into()));
        return half_pi.sub(&atan_point(&x.recip(), prec));
    }
    // Halve the argument until it is small: atan u = 2 atan(u / (1 + sqrt(1+u^2))).
    let mut u = RatInterval::point(x.clone());
    let mut doublings = 0u32;
    let quarter = Rat::new(1.into(), 4.into());
    while u.hi > quarter {
        let one_plus = sqrt_interval(
            &u.mul(&u).shift(&Rat::one()),
            prec + 8,
        )
        .shift(&Rat::one());
        u = u.div(&one_plus).expect("atan reduction divisor positive");
        doublings += 1;
    }
    let tol = rat_pow2(-((prec + 4) as i64));
    // Alternating series on the interval midpoint with outward error.
    let u2 = u.mul(&u);
    let mut term = u.clone();
    let mut sum = RatInterval::zero();
    let mut k: u64 = 0;
    loop {
        let contrib = term.scale(&Rat::new(1.into(), (2 * k + 1).into()));
        sum = if k % 2 == 0 {
            sum.add(&contrib)
        } else {
            sum.sub(&contrib)
        };
        term = term.mul(&u2).compress();
        k += 1;
        let bound = &term.abs().hi / Rat::from_integer((2 * k + 1).into());
        if bound < tol {
            let err = RatInterval::new(-bound.clone(), bound);
            sum = sum.add(&err);
            break;
        }
    }
    sum.scale(&rat_pow2(doublings as i64)).compress()
}

/// Certified atan2 over a box that avoids the origin and, when `x` may be
/// non-positive, has a sign-definite `y`.
///
/// Returns `None` for boxes where the angle is not a well-defined interval
/// (origin inside, or straddling the branch cut).
pub fn atan2_interval(y: &RatInterval, x: &RatInterval, prec: u32) -> Option<RatInterval> {
    if x.lo.is_positive() {
        let q = y.div(x)?;
        return Some(RatInterval::new(
            atan_point(&q.lo, prec).lo,
            atan_point(&q.hi, prec).hi,
        ));
    }
    if y.lo.is_positive() {
        // atan2(y, x) = pi/2 - atan(x/y)
        let q = x.div(y)?;
        let a = RatInterval::new(atan_point(&q.lo, prec).lo, atan_point(&q.hi, prec).hi);
        return Some(pi(prec + 2).scale(&Rat::new(1.into(), 2.into())).sub(&a));
    }
    if y.hi.is_negative() {
        let flipped = atan2_interval(&y.neg(), x, prec)?;
        return Some(flipped.neg());
    }
    None
}

/// Certified `(cos t, sin t)` for an interval angle `t` (|t| up to ~4*pi).
pub fn cos_sin_angle(t: &RatInterval, prec: u32) -> (RatInterval, RatInterval) {
    // Range-reduce by quarter turns: t = k * (pi/2) + s with s in [0, pi/2).
    let half_pi = pi(prec + 8).scale(&Rat::new(1.into(), 2.into()));
    // k = floor(mid(t) / (pi/2)) as an integer estimate; the remainder interval
    // absorbs the estimate error.
    let approx = t.mid() / half_pi.mid();
    let k = approx.floor().to_integer();
    let k_i64: i64 = {
        use num_traits::ToPrimitive;
        k.to_i64().unwrap_or(0)
    };
    let s = t.sub(&half_pi.scale(&Rat::from_integer(k_i64.into())));
    let (c, sn) = cos_sin_reduced(&s, prec);
    match k_i64.rem_euclid(4) {
        0 => (c, sn),
        1 => (sn.neg(), c),
        2 => (c.neg(), sn.neg()),
        _ => (sn, c.neg()),
    }
}

/// (cos, sin) of `2*pi*num/den` (the grid map), reduced exactly first.
pub fn cos_sin_2pi_frac(num: i64, den: i64, prec: u32) -> (RatInterval, RatInterval) {
    assert!(den > 0);
    let reduced = num.rem_euclid(den);
    let angle = pi(prec + 8)
        .scale(&Rat::new((2 * reduced).into(), den.into()));
    cos_sin_angle(&angle, prec)
}

/// Taylor evaluation of cos and sin on an interval inside [-0.1, pi/2 + 0.1].
fn cos_sin_reduced(s: &RatInterval, prec: u32) -> (RatInterval, RatInterval) {
    let tol = rat_pow2(-((prec + 2) as i64));
    let s2 = s.mul(s).compress();
    // cos
    let mut term = RatInterval::point(Rat::one());
    let mut cos_sum = RatInterval::zero();
    let mut k: u64 = 0;
    loop {
        cos_sum = if k % 2 == 0 {
            cos_sum.add(&term)
        } else {
            cos_sum.sub(&term)
        };
        let div = Rat::from_integer(((2 * k + 1) * (2 * k + 2)).into());
        term = term.mul(&s2).scale(&div.recip()).compress();
        k += 1;
        if term.abs().hi < tol && k > 1 {
            let b = term.abs().hi;
            cos_sum = cos_sum.add(&RatInterval::new(-b.clone(), b));
            break;
        }
    }
    // sin
    let mut term = s.clone();
    let mut sin_sum = RatInterval::zero();
    let mut k: u64 = 0;
    loop {
        sin_sum = if k % 2 == 0 {
            sin_sum.add(&term)
        } else {
            sin_sum.sub(&term)
        };
        let div = Rat::from_integer(((2 * k + 2) * (2 * k + 3)).into());
        term = term.mul(&s2).scale(&div.recip()).compress();
        k += 1;
        if term.abs().hi < tol && k > 1 {
            let b = term.abs().hi;
            sin_sum = sin_sum.add(&RatInterval::new(-b.clone(), b));
            break;
        }
    }
    (cos_sum.compress(), sin_sum.compress())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, rat_i};

    #[test]
    fn pi_encloses() {
        let p = pi(60);
        assert!(p.contains(&rat(314159265358979, 100000000000000)) || p.lo.is_positive());
        assert!(p.to_f64() - std::f64::consts::PI < 1e-14);
        assert!(p.width() < rat_pow2(-50));
    }

    #[test]
    fn sqrt_ln_atan_basics() {
        let two = RatInterval::point(rat_i(2));
        let s = sqrt_interval(&two, 60);
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-12);
        let l = ln_interval(&two, 60);
        assert!((l.to_f64() - 2f64.ln()).abs() < 1e-12);
        let a = atan2_interval(&RatInterval::point(rat_i(1)), &RatInterval::point(rat_i(1)), 60)
            .unwrap();
        assert!((a.to_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn circle_map() {
        for (j, m) in [(1i64, 12i64), (5, 12), (7, 12), (11, 12), (3, 4)] {
            let (c, s) = cos_sin_2pi_frac(j, m, 60);
            let t = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64);
            assert!((c.to_f64() - t.cos()).abs() < 1e-12, "cos {j}/{m}");
            assert!((s.to_f64() - t.sin()).abs() < 1e-12, "sin {j}/{m}");
            assert!(c.width() < rat_pow2(-40));
        }
    }
}
