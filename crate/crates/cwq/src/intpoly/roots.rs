//! Certified root isolation with exact unit-circle classification.
//!
//! Circle roots are found exactly: an irreducible factor has roots on the
//! unit circle only if it is `x - 1`, `x + 1`, or self-reciprocal of even
//! degree, and in the latter case the circle roots correspond bijectively
//! to the real roots of the Chebyshev-type reduction `H(x + 1/x)` inside
//! `(-2, 2)`. Off-circle roots get interval-Newton certificates.

use super::factor::factor_over_rationals;
use super::poly::{IntPolynomial, RatPoly};
use super::sturm::{isolate_real_roots, refine_root, SturmChain};
use crate::arith::{rat_pow2, sqrt_interval, CInt, GRat, Rat, RatInterval};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Position of a root relative to the unit circle, certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ModulusClass {
    Inside,
    On,
    Outside,
}

/// Certified isolating box for a set of conjugate roots.
#[derive(Clone, Debug)]
pub struct RootBox {
    pub region: CInt,
    pub multiplicity: usize,
    pub modulus_class: ModulusClass,
    refiner: Refiner,
}

#[derive(Clone, Debug)]
enum Refiner {
    /// Exact rational (or Gaussian rational) root.
    Exact(GRat),
    /// Real root of a squarefree factor, bisection refinable.
    Real { factor: IntPolynomial },
    /// z with z + 1/z = y, y a real root of `cheb` in (-2,2): |z| = 1 exactly.
    Circle {
        cheb: IntPolynomial,
        y: RatInterval,
        upper_half: bool,
    },
    /// Simple non-real off-circle root, interval-Newton refinable.
    Complex { factor: IntPolynomial },
}

impl RootBox {
    /// Shrinks the box below `width` (both coordinates).
    pub fn refine(&mut self, width: &Rat) {
        match &self.refiner {
            Refiner::Exact(_) => {}
            Refiner::Real { factor } => {
                let rp = RatPoly::from_int(factor);
                let iv = refine_root(&rp, &self.region.re, width);
                self.region = CInt::new(iv, RatInterval::zero());
            }
            Refiner::Circle { cheb, y, upper_half } => {
                let rp = RatPoly::from_int(cheb);
                let upper = *upper_half;
                let cheb = cheb.clone();
                let mut target = width * rat_pow2(-3);
                let mut yiv = y.clone();
                // the im-coordinate derivative blows up near y = +-2, so
                // iterate until the box itself is narrow enough
                for _ in 0..16 {
                    yiv = refine_root(&rp, &yiv, &target);
                    let z = circle_box_from_y(&yiv, upper);
                    if z.width() <= *width {
                        self.region = z;
                        break;
                    }
                    self.region = z;
                    target = target * rat_pow2(-8);
                }
                self.refiner = Refiner::Circle {
                    cheb,
                    y: yiv,
                    upper_half: upper,
                };
            }
            Refiner::Complex { factor } => {
                let f = factor.clone();
                let mut region = self.region.clone();
                let mut budget = 64;
                while region.width() > *width && budget > 0 {
                    budget -= 1;
                    match newton_step(&f, &region) {
                        Some(next) => region = next,
                        None => break,
                    }
                }
                self.region = region;
            }
        }
        // classification can only sharpen after refinement
        if self.modulus_class != ModulusClass::On {
            self.modulus_class = classify_off_circle(&self.region)
                .unwrap_or(self.modulus_class);
        }
    }

    /// Certified enclosure of `log |root|`.
    pub fn log_abs(&self, prec: u32) -> RatInterval {
        if self.modulus_class == ModulusClass::On {
            return RatInterval::zero();
        }
        let mut bx = self.clone();
        let mut width = rat_pow2(-(prec as i64 / 2).max(20));
        loop {
            bx.refine(&width);
            let n = bx.region.norm_sqr();
            if n.lo.is_positive() {
                let half = Rat::new(BigInt::one(), BigInt::from(2));
                return crate::arith::ln_interval(&n, prec).scale(&half);
            }
            width = width * rat_pow2(-8);
        }
    }

    /// Certified enclosure of `arg(root) / 2pi` in `(0, 1/2)` for a circle
    /// root in the open upper half plane.
    pub fn angle_over_2pi(&self, prec: u32) -> Option<RatInterval> {
        if self.modulus_class != ModulusClass::On {
            return None;
        }
        let mut bx = self.clone();
        let mut width = rat_pow2(-(prec as i64 / 2).max(20));
        for _ in 0..8 {
            bx.refine(&width);
            if bx.region.im.lo.is_positive() || bx.region.re.lo.is_positive()
                || bx.region.re.hi.is_negative()
            {
                let theta = crate::arith::atan2_interval(&bx.region.im, &bx.region.re, prec)?;
                let twopi = crate::arith::pi(prec + 4).scale(&Rat::from_integer(2.into()));
                return theta.div(&twopi);
            }
            width = width * rat_pow2(-8);
        }
        None
    }

    pub fn is_real(&self) -> bool {
        matches!(self.refiner, Refiner::Real { .. })
            || matches!(&self.refiner, Refiner::Exact(g) if g.im.is_zero())
    }

    pub fn exact_value(&self) -> Option<GRat> {
        match &self.refiner {
            Refiner::Exact(g) => Some(g.clone()),
            _ => None,
        }
    }
}

fn circle_box_from_y(y: &RatInterval, upper_half: bool) -> CInt {
    // z = y/2 +- i sqrt(1 - y^2/4)
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let re = y.scale(&half);
    let quarter = Rat::new(BigInt::one(), BigInt::from(4));
    let one = RatInterval::point(Rat::one());
    let inner = one.sub(&y.sqr().scale(&quarter));
    let nonneg = RatInterval::new(
        if inner.lo.is_negative() { Rat::zero() } else { inner.lo.clone() },
        if inner.hi.is_negative() { Rat::zero() } else { inner.hi.clone() },
    );
    let im = sqrt_interval(&nonneg, 80);
    CInt::new(re, if upper_half { im } else { im.neg() })
}

fn classify_off_circle(region: &CInt) -> Option<ModulusClass> {
    let n = region.norm_sqr();
    if n.hi < Rat::one() {
        Some(ModulusClass::Inside)
    } else if n.lo > Rat::one() {
        Some(ModulusClass::Outside)
    } else {
        None
    }
}

/// One interval-Newton step `N(Z) = mid - f(mid)/f'(Z)`, intersected with Z.
fn newton_step(f: &IntPolynomial, z: &CInt) -> Option<CInt> {
    let mid = CInt::from_grat(&z.mid());
    let fm = f.eval_cint(&mid);
    let fd = f.derivative().eval_cint(z);
    let step = fm.div(&fd)?;
    let next = mid.sub(&step).compress();
    // intersect with the current box for soundness
    let re = RatInterval::new(
        if next.re.lo > z.re.lo { next.re.lo.clone() } else { z.re.lo.clone() },
        if next.re.hi < z.re.hi { next.re.hi.clone() } else { z.re.hi.clone() },
    );
    let im = RatInterval::new(
        if next.im.lo > z.im.lo { next.im.lo.clone() } else { z.im.lo.clone() },
        if next.im.hi < z.im.hi { next.im.hi.clone() } else { z.im.hi.clone() },
    );
    if re.lo > re.hi || im.lo > im.hi {
        return None;
    }
    Some(CInt::new(re, im))
}

/// Interval-Newton certificate: `N(Z)` strictly inside `Z` proves a unique
/// simple zero of `f` in `Z`.
fn newton_certifies(f: &IntPolynomial, z: &CInt) -> bool {
    let mid = CInt::from_grat(&z.mid());
    let fm = f.eval_cint(&mid);
    let fd = f.derivative().eval_cint(z);
    let Some(step) = fm.div(&fd) else { return false };
    let n = mid.sub(&step);
    n.re.lo > z.re.lo && n.re.hi < z.re.hi && n.im.lo > z.im.lo && n.im.hi < z.im.hi
}

/// The Chebyshev-type reduction of a palindromic polynomial of even degree
/// `2m`: returns `H` with `h(x) = x^m H(x + 1/x)`.
pub fn chebyshev_reduction(h: &IntPolynomial) -> IntPolynomial {
    let d = h.degree();
    assert!(d % 2 == 0, "even degree required");
    let m = d / 2;
    // Dickson basis: D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1},
    // with x^k + x^-k = D_k(x + 1/x).
    let mut d_prev = IntPolynomial::from_i64(&[2]);
    let mut d_cur = IntPolynomial::x();
    let mut acc = IntPolynomial::constant(h.coeff(m));
    for k in 1..=m {
        acc = acc.add(&d_cur.scale(&h.coeff(m + k)));
        if k < m {
            let next = IntPolynomial::x().mul(&d_cur).sub(&d_prev);
            d_prev = d_cur;
            d_cur = next;
        }
    }
    acc
}

/// Number of roots of `f` on the unit circle (with multiplicity) and the
/// gcd factor `gcd(f, x^d f(1/x))` carrying all of them.
pub fn unit_circle_root_count(f: &IntPolynomial) -> Result<(usize, IntPolynomial), ZeroConstantTerm> {
    if f.constant_term().is_zero() {
        return Err(ZeroConstantTerm);
    }
    let mut count = 0usize;
    for (h, m) in factor_over_rationals(f) {
        count += m * circle_roots_of_irreducible(&h);
    }
    // the rational gcd of f with its reversal carries all circle roots
    // (with multiplicity: the Euclidean gcd over Q respects powers)
    let gr = RatPoly::from_int(f);
    let rev = RatPoly::from_int(&f.reversal());
    let gcd_factor = gr.gcd(&rev).to_int_primitive();
    Ok((count, gcd_factor))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("zero is a root: constant term vanishes")]
pub struct ZeroConstantTerm;

/// Circle-root count of an irreducible primitive polynomial.
fn circle_roots_of_irreducible(h: &IntPolynomial) -> usize {
    if h.degree() == 0 {
        return 0;
    }
    if *h == IntPolynomial::from_i64(&[-1, 1]) || *h == IntPolynomial::from_i64(&[1, 1]) {
        return 1;
    }
    if !h.is_self_reciprocal() || h.degree() % 2 != 0 {
        return 0;
    }
    let cheb = chebyshev_reduction(h);
    let chain = SturmChain::new(&RatPoly::from_int(&cheb));
    2 * chain.count_open(&Rat::from_integer((-2).into()), &Rat::from_integer(2.into()))
}

/// True iff some root of `f` is a root of unity different from 1.
pub fn has_root_of_unity_except_one(f: &IntPolynomial) -> Result<bool, ZeroConstantTerm> {
    if f.constant_term().is_zero() {
        return Err(ZeroConstantTerm);
    }
    let n = f.degree();
    for m in super::cyclotomic::unity_orders_up_to_degree(n) {
        if super::cyclotomic::cyclotomic(m).divides(f) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Disjoint certified boxes covering all complex roots of `f`, classified
/// against the unit circle, refinable to `width`.
pub fn isolate_roots(f: &IntPolynomial, width: &Rat) -> Vec<RootBox> {
    assert!(width.is_positive());
    assert!(!f.is_zero());
    let mut out: Vec<RootBox> = Vec::new();
    for (h, mult) in factor_over_rationals(f) {
        for mut bx in isolate_roots_irreducible(&h) {
            bx.multiplicity = mult;
            bx.refine(width);
            out.push(bx);
        }
    }
    out.sort_by(|a, b| {
        (a.region.re.lo.clone(), a.region.im.lo.clone())
            .partial_cmp(&(b.region.re.lo.clone(), b.region.im.lo.clone()))
            .unwrap()
    });
    out
}

fn isolate_roots_irreducible(h: &IntPolynomial) -> Vec<RootBox> {
    let d = h.degree();
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    if d == 1 {
        // rational root -c0/c1
        let root = Rat::new(-h.coeff(0), h.coeff(1));
        let on = (root.clone() * root.clone()).is_one();
        out.push(RootBox {
            region: CInt::point(root.clone(), Rat::zero()),
            multiplicity: 1,
            modulus_class: if on {
                ModulusClass::On
            } else if root.clone().abs() < Rat::one() {
                ModulusClass::Inside
            } else {
                ModulusClass::Outside
            },
            refiner: Refiner::Exact(GRat::new(root, Rat::zero())),
        });
        return out;
    }
    let palindromic = h.is_self_reciprocal() && d % 2 == 0;
    let mut circle_count = 0usize;
    if palindromic {
        let cheb = chebyshev_reduction(h);
        let two = Rat::from_integer(2.into());
        for y in isolate_real_roots(&RatPoly::from_int(&cheb)) {
            // shrink until the interval is sign-definite against +-2
            let mut yiv = y;
            let rp = RatPoly::from_int(&cheb);
            while yiv.contains(&two) || yiv.contains(&-two.clone()) {
                let w = yiv.width() / Rat::from_integer(4.into());
                if w.is_zero() {
                    break;
                }
                yiv = refine_root(&rp, &yiv, &w);
            }
            if yiv.hi < two && yiv.lo > -two.clone() {
                // a conjugate pair on the circle
                circle_count += 2;
                for upper in [true, false] {
                    out.push(RootBox {
                        region: circle_box_from_y(&yiv, upper),
                        multiplicity: 1,
                        modulus_class: ModulusClass::On,
                        refiner: Refiner::Circle {
                            cheb: cheb.clone(),
                            y: yiv.clone(),
                            upper_half: upper,
                        },
                    });
                }
            }
        }
    }
    // real roots (always off-circle for irreducible h of degree >= 2)
    let rp = RatPoly::from_int(h);
    let mut real_count = 0usize;
    for iv in isolate_real_roots(&rp) {
        let mut iv = iv;
        let one = Rat::one();
        while iv.contains(&one) || iv.contains(&-one.clone()) {
            let w = iv.width() / Rat::from_integer(4.into());
            iv = refine_root(&rp, &iv, &w);
        }
        real_count += 1;
        let inside = iv.hi < one && iv.lo > -one.clone();
        out.push(RootBox {
            region: CInt::new(iv.clone(), RatInterval::zero()),
            multiplicity: 1,
            modulus_class: if inside {
                ModulusClass::Inside
            } else {
                ModulusClass::Outside
            },
            refiner: Refiner::Real { factor: h.clone() },
        });
    }
    // remaining non-real off-circle roots via Durand-Kerner + interval Newton
    let missing = d - circle_count - real_count;
    if missing > 0 {
        out.extend(isolate_complex_offcircle(h, &out, missing));
    }
    out
}

/// Durand-Kerner seeds in f64, Newton polish in exact arithmetic, then
/// interval-Newton certification. `known` are the already-certified boxes.
fn isolate_complex_offcircle(
    h: &IntPolynomial,
    known: &[RootBox],
    missing: usize,
) -> Vec<RootBox> {
    let d = h.degree();
    let coeffs: Vec<f64> = h
        .to_rat_coeffs()
        .iter()
        .map(crate::arith::rat::rat_to_f64)
        .collect();
    let lead = coeffs[d];
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for c in coeffs.iter().rev() {
            let nre = re * z.0 - im * z.1 + c;
            let nim = re * z.1 + im * z.0;
            re = nre;
            im = nim;
        }
        (re, im)
    };
    // Durand-Kerner iteration
    let mut zs: Vec<(f64, f64)> = (0..d)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * (i as f64) / (d as f64) + 0.4;
            (1.3f64.powi(i as i32 % 3) * t.cos(), 1.3f64.powi(i as i32 % 3) * t.sin())
        })
        .collect();
    for _ in 0..200 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let mut den = (lead, 0.0);
            for j in 0..d {
                if i == j {
                    continue;
                }
                let diff = (zs[i].0 - zs[j].0, zs[i].1 - zs[j].1);
                den = (den.0 * diff.0 - den.1 * diff.1, den.0 * diff.1 + den.1 * diff.0);
            }
            let v = eval(zs[i]);
            let n2 = den.0 * den.0 + den.1 * den.1;
            if n2 == 0.0 {
                continue;
            }
            let step = ((v.0 * den.0 + v.1 * den.1) / n2, (v.1 * den.0 - v.0 * den.1) / n2);
            zs[i] = (zs[i].0 - step.0, zs[i].1 - step.1);
            moved += step.0.abs() + step.1.abs();
        }
        if moved < 1e-14 {
            break;
        }
    }
    // keep upper-half-plane approximations not matching known boxes
    let mut cands: Vec<(f64, f64)> = zs
        .into_iter()
        .filter(|z| z.1 > 1e-9)
        .filter(|z| {
            !known.iter().any(|b| {
                let (br, bi) = b.region.to_c64();
                (z.0 - br).abs() < 1e-5 && (z.1 - bi).abs() < 1e-5
            })
        })
        .collect();
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-7 && (a.1 - b.1).abs() < 1e-7);

    let mut out = Vec::new();
    for z in cands {
        if out.len() >= missing {
            break;
        }
        // exact Newton polish from the f64 seed
        let mut zg = GRat::new(
            crate::arith::rat_from_f64_approx(z.0).unwrap(),
            crate::arith::rat_from_f64_approx(z.1).unwrap(),
        );
        let der = h.derivative();
        for _ in 0..6 {
            let fv = h.eval_grat(&zg);
            let dv = der.eval_grat(&zg);
            if dv.is_zero() {
                break;
            }
            zg = &zg - &(&fv / &dv);
            // round to dyadics to keep numbers small
            zg = GRat::new(
                crate::arith::rat::round_dyadic(&zg.re, 120),
                crate::arith::rat::round_dyadic(&zg.im, 120),
            );
        }
        // certification box around the polished point
        let mut r = rat_pow2(-40);
        let mut certified = None;
        for _ in 0..20 {
            let bx = CInt::new(
                RatInterval::new(&zg.re - &r, &zg.re + &r),
                RatInterval::new(&zg.im - &r, &zg.im + &r),
            );
            if newton_certifies(h, &bx) {
                certified = Some(bx);
                break;
            }
            r = r * rat_pow2(2); // also try growing the box
            if r > Rat::one() {
                break;
            }
        }
        let Some(bx) = certified else { continue };
        let mut bx_ref = bx.clone();
        for _ in 0..8 {
            match newton_step(h, &bx_ref) {
                Some(n) => bx_ref = n,
                None => break,
            }
            if let Some(_) = classify_off_circle(&bx_ref) {
                break;
            }
        }
        let Some(class) = classify_off_circle(&bx_ref) else { continue };
        let conj = CInt::new(bx_ref.re.clone(), bx_ref.im.neg());
        out.push(RootBox {
            region: bx_ref,
            multiplicity: 1,
            modulus_class: class,
            refiner: Refiner::Complex { factor: h.clone() },
        });
        out.push(RootBox {
            region: conj,
            multiplicity: 1,
            modulus_class: class,
            refiner: Refiner::Complex { factor: h.clone() },
        });
    }
    assert_eq!(
        out.len(),
        missing,
        "failed to certify all complex roots of {h}"
    );
    out
}
