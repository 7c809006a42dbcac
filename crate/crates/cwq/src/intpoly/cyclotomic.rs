//! Cyclotomic polynomials and root-of-unity detection.

use super::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::One;

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial, by exact division of `x^m - 1`.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    let mut num = {
        let mut c = vec![BigInt::from(0); m as usize + 1];
        c[0] = BigInt::from(-1);
        c[m as usize] = BigInt::one();
        IntPolynomial::new(c)
    };
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic(d);
            num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

/// All `m >= 2` with `phi(m) <= n` (the orders a root of unity can have
/// as a root of a degree-`n` integer polynomial, excluding 1).
pub fn unity_orders_up_to_degree(n: usize) -> Vec<u64> {
    // phi(m) >= sqrt(m/2), so m <= 2*(n^2) + 2 is a safe cutoff.
    let cap = 2 * (n as u64) * (n as u64) + 2;
    (2..=cap).filter(|&m| euler_phi(m) <= n as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(unity_orders_up_to_degree(2), vec![2, 3, 4, 6]);
    }
}
