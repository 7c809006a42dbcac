//! Exact integer/rational polynomial arithmetic with certified
//! root-structure queries: unit-circle counts, roots of unity, real roots,
//! factorization over Q and companion matrices.
//!
//! Everything here is exact; interval output (root boxes) carries rigorous
//! enclosures refinable on demand.

mod cyclotomic;
mod factor;
mod poly;
mod roots;
mod sturm;

pub use cyclotomic::{cyclotomic as cyclotomic_poly, euler_phi, unity_orders_up_to_degree};
pub use factor::{factor_over_rationals, squarefree_decomposition, squarefree_part};
pub use poly::{IntPolynomial, RatPoly};
pub use roots::{
    chebyshev_reduction, has_root_of_unity_except_one, isolate_roots, unit_circle_root_count,
    ModulusClass, RootBox, ZeroConstantTerm,
};
pub use sturm::{isolate_real_roots, refine_root, root_bound, SturmChain};

use crate::arith::QMat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors for the companion construction.
#[derive(Debug, thiserror::Error)]
pub enum CompanionError {
    #[error("polynomial is not monic")]
    NotMonic,
}

/// True iff `f` is monic with integer coefficients, constant term +-1
/// (so zero is not a root): the shape of characteristic polynomials of
/// unimodular lattice automorphisms.
pub fn validate_otto(f: &IntPolynomial) -> bool {
    if f.is_zero() || !f.is_monic() {
        return false;
    }
    f.constant_term().abs().is_one()
}

/// Companion matrix of a monic polynomial: subdiagonal ones, last column
/// `-a_0, ..., -a_{n-1}`.
pub fn companion_block(f: &IntPolynomial) -> Result<Vec<Vec<BigInt>>, CompanionError> {
    if !f.is_monic() {
        return Err(CompanionError::NotMonic);
    }
    let n = f.degree();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        m[i][n - 1] = -f.coeff(i);
    }
    Ok(m)
}

/// Integer matrix with characteristic polynomial `f`; for `f` a product of
/// distinct irreducibles this is the block diagonal of companion blocks of
/// the irreducible factors (hence semisimple). Repeated factors repeat
/// their block.
pub fn companion_matrix(f: &IntPolynomial) -> Result<Vec<Vec<BigInt>>, CompanionError> {
    if !f.is_monic() {
        return Err(CompanionError::NotMonic);
    }
    let n = f.degree();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    let mut offset = 0;
    for (h, mult) in factor_over_rationals(f) {
        let block = companion_block(&h)?;
        for _ in 0..mult {
            let d = h.degree();
            for i in 0..d {
                for j in 0..d {
                    m[offset + i][offset + j] = block[i][j].clone();
                }
            }
            offset += d;
        }
    }
    debug_assert_eq!(offset, n);
    Ok(m)
}

/// Exact characteristic polynomial of an integer matrix.
pub fn char_poly_int(m: &[Vec<BigInt>]) -> IntPolynomial {
    let n = m.len();
    let q = QMat::from_rows(
        m.iter()
            .map(|r| {
                r.iter()
                    .map(|c| crate::arith::Rat::from_integer(c.clone()))
                    .collect()
            })
            .collect(),
    );
    let cp = q.char_poly();
    let _ = n;
    IntPolynomial::new(cp.into_iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn otto_examples() {
        assert!(validate_otto(&poly(&[1, -3, 1])));
        assert!(!validate_otto(&poly(&[2, -3, 1])));
        assert!(validate_otto(&poly(&[-1, 1, 0, 1])));
        assert!(!validate_otto(&poly(&[0, 1]))); // zero constant term
        assert!(!validate_otto(&poly(&[1, -3, 2]))); // not monic
    }

    #[test]
    fn companion_textbook() {
        let f = poly(&[1, -3, 1]);
        let m = companion_matrix(&f).unwrap();
        assert_eq!(m[0][0], 0.into());
        assert_eq!(m[0][1], (-1).into());
        assert_eq!(m[1][0], 1.into());
        assert_eq!(m[1][1], 3.into());
        assert_eq!(char_poly_int(&m), f);

        let g = poly(&[-1, 1]);
        let m1 = companion_matrix(&g).unwrap();
        assert_eq!(m1, vec![vec![num_bigint::BigInt::from(1)]]);
    }

    #[test]
    fn companion_block_diag_roundtrip() {
        // (x^2-3x+1)(x-1): char poly round-trips
        let f = poly(&[1, -3, 1]).mul(&poly(&[-1, 1]));
        let m = companion_matrix(&f).unwrap();
        assert_eq!(char_poly_int(&m), f);
    }

    #[test]
    fn circle_count_examples() {
        // (x-1)^2 -> (2, (x-1)^2)
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1]));
        let (count, factor) = unit_circle_root_count(&f).unwrap();
        assert_eq!(count, 2);
        assert_eq!(factor, f);

        // Salem polynomial from F6: 4 circle roots
        let f6 = poly(&[1, 0, -1, -1, -1, 0, 1]);
        let (count, factor) = unit_circle_root_count(&f6).unwrap();
        assert_eq!(count, 4);
        assert_eq!(factor, f6); // irreducible self-reciprocal: gcd is all of f

        // x^2-3x+1: golden-ratio-squared roots, both real, none on circle
        let (count, _) = unit_circle_root_count(&poly(&[1, -3, 1])).unwrap();
        assert_eq!(count, 0);

        // zero constant term rejected
        assert!(unit_circle_root_count(&poly(&[0, 1, 1])).is_err());
    }

    #[test]
    fn roots_of_unity_detection() {
        assert!(has_root_of_unity_except_one(&poly(&[1, 1, 1])).unwrap()); // x^2+x+1
        assert!(!has_root_of_unity_except_one(&poly(&[-1, 1])).unwrap()); // x-1
        assert!(!has_root_of_unity_except_one(&poly(&[1, -3, 1])).unwrap());
        assert!(has_root_of_unity_except_one(&poly(&[1, 1])).unwrap()); // x+1: root -1
        // Salem: circle roots are not roots of unity
        assert!(!has_root_of_unity_except_one(&poly(&[1, 0, -1, -1, -1, 0, 1])).unwrap());
    }

    #[test]
    fn isolate_quadratic_roots() {
        let f = poly(&[1, -3, 1]);
        let boxes = isolate_roots(&f, &rat(1, 1 << 40));
        assert_eq!(boxes.len(), 2);
        let vals: Vec<f64> = boxes.iter().map(|b| b.region.re.to_f64()).collect();
        assert!((vals[0] - 0.38196601125).abs() < 1e-9);
        assert!((vals[1] - 2.61803398875).abs() < 1e-9);
        assert_eq!(boxes[0].modulus_class, ModulusClass::Inside);
        assert_eq!(boxes[1].modulus_class, ModulusClass::Outside);
        // log-abs values sum to zero (unit): check numerically
        let l0 = boxes[0].log_abs(60);
        let l1 = boxes[1].log_abs(60);
        let s = l0.add(&l1);
        assert!(s.contains_zero());
    }

    #[test]
    fn isolate_cube_and_gaussian() {
        // (x-1)^3: one box, multiplicity 3, on the circle
        let f = poly(&[-1, 1]).pow(3);
        let boxes = isolate_roots(&f, &rat(1, 1024));
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].multiplicity, 3);
        assert_eq!(boxes[0].modulus_class, ModulusClass::On);
        assert_eq!(boxes[0].exact_value().unwrap(), crate::arith::GRat::one());

        // x^2+1: boxes at +-i, on the circle
        let g = poly(&[1, 0, 1]);
        let boxes = isolate_roots(&g, &rat(1, 1024));
        assert_eq!(boxes.len(), 2);
        assert!(boxes.iter().all(|b| b.modulus_class == ModulusClass::On));
        let im_vals: Vec<f64> = boxes.iter().map(|b| b.region.im.to_f64()).collect();
        assert!((im_vals[0] + 1.0).abs() < 1e-3 || (im_vals[0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn isolate_salem_structure() {
        let f6 = poly(&[1, 0, -1, -1, -1, 0, 1]);
        let boxes = isolate_roots(&f6, &rat(1, 1 << 30));
        assert_eq!(boxes.len(), 6);
        let on = boxes.iter().filter(|b| b.modulus_class == ModulusClass::On).count();
        let inside = boxes.iter().filter(|b| b.modulus_class == ModulusClass::Inside).count();
        let outside = boxes.iter().filter(|b| b.modulus_class == ModulusClass::Outside).count();
        assert_eq!((on, inside, outside), (4, 1, 1));
    }

    #[test]
    fn isolate_complex_offcircle_roots() {
        // x^3 - x - 1: plastic number + complex pair inside the circle
        let f = poly(&[-1, -1, 0, 1]);
        let boxes = isolate_roots(&f, &rat(1, 1 << 30));
        assert_eq!(boxes.len(), 3);
        let real: Vec<_> = boxes.iter().filter(|b| b.is_real()).collect();
        assert_eq!(real.len(), 1);
        assert_eq!(real[0].modulus_class, ModulusClass::Outside);
        let complexes: Vec<_> = boxes.iter().filter(|b| !b.is_real()).collect();
        assert_eq!(complexes.len(), 2);
        assert!(complexes.iter().all(|b| b.modulus_class == ModulusClass::Inside));
    }

    #[test]
    fn log_abs_sum_zero_for_otto() {
        // product of |roots| = |constant| = 1 for otto polynomials
        for c in [
            vec![1i64, -3, 1],
            vec![-1, -1, 0, 1],
            vec![1, 0, -1, -1, -1, 0, 1],
        ] {
            let f = poly(&c);
            assert!(validate_otto(&f));
            let boxes = isolate_roots(&f, &rat_i(1));
            let mut sum = crate::arith::RatInterval::zero();
            for b in &boxes {
                let l = b.log_abs(70);
                for _ in 0..b.multiplicity {
                    sum = sum.add(&l);
                }
            }
            assert!(sum.contains_zero(), "sum log|roots| must enclose zero for {f}");
            assert!(sum.width() < rat(1, 1 << 20));
        }
    }
}
