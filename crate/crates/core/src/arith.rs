//! Small exact-arithmetic helpers shared across modules.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended gcd: returns `(g, u, v)` with `g = gcd(a, b) >= 0` and
/// `u*a + v*b = g`. Follows the convention `gcd(x, 0) = |x|`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_u, mut u) = (BigInt::one(), BigInt::zero());
    let (mut old_v, mut v) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_u = &old_u - &q * &u;
        old_u = core::mem::replace(&mut u, next_u);
        let next_v = &old_v - &q * &v;
        old_v = core::mem::replace(&mut v, next_v);
    }
    if old_r.is_negative() {
        (-old_r, -old_u, -old_v)
    } else {
        (old_r, old_u, old_v)
    }
}

/// Division rounded to the nearest integer, ties toward positive infinity.
/// Requires `d > 0`.
pub fn rounded_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    (n * 2u32 + d).div_floor(&(d * 2u32))
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Writes `n = s * f^2` with `s` squarefree; returns `(s, f)`.
/// Trial division; intended for the moderate magnitudes produced by
/// reduction and classification, not for cryptographic-size inputs.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square_root = BigInt::one();
    let mut free = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        if (&rest % &d).is_zero() {
            let mut mult = 0u32;
            while (&rest % &d).is_zero() {
                rest /= &d;
                mult += 1;
            }
            for _ in 0..mult / 2 {
                square_root *= &d;
            }
            if mult % 2 == 1 {
                free *= &d;
            }
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    // Whatever remains is prime (or 1) and occurs to the first power.
    free *= rest;
    (free, square_root)
}

/// True iff `n >= 1` has no repeated prime factor.
pub fn is_squarefree(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    let (_, f) = squarefree_decompose(n);
    f.is_one()
}

/// Euler totient for `1..=n`, by sieve. `phi[0]` is unused.
pub fn phi_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            // i is prime
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Euler totient of a single value, by trial division.
pub fn phi_u64(n: u64) -> u64 {
    let mut rest = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// Sum of divisors for `1..=n`, by sieve. `sigma[0]` is unused.
pub fn sigma_sieve(n: usize) -> Vec<u64> {
    let mut sigma = alloc::vec![0u64; n + 1];
    for d in 1..=n {
        let mut j = d;
        while j <= n {
            sigma[j] += d as u64;
            j += d;
        }
    }
    sigma
}

/// `sum_{k<=n} sigma(k)` without materializing the sieve:
/// each divisor `d` contributes `d * floor(n / d)`.
pub fn sigma_cumulative(n: u64) -> u64 {
    (1..=n).map(|d| d * (n / d)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(8, 7), (2, 2), (0, 5), (5, 0), (-3, -1), (12, 18)] {
            let (g, u, v) = ext_gcd(&bi(a), &bi(b));
            assert_eq!(g, bi(a.gcd(&b)));
            assert_eq!(u * a + v * b, g);
        }
    }

    #[test]
    fn rounded_div_halves() {
        assert_eq!(rounded_div(&bi(9), &bi(6)), bi(2)); // 1.5 -> 2
        assert_eq!(rounded_div(&bi(-9), &bi(6)), bi(-1)); // -1.5 -> -1
        assert_eq!(rounded_div(&bi(7), &bi(2)), bi(4));
        assert_eq!(rounded_div(&bi(8), &bi(3)), bi(3));
        assert_eq!(rounded_div(&bi(-8), &bi(3)), bi(-3));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(&bi(48)), (bi(3), bi(4)));
        assert_eq!(squarefree_decompose(&bi(1)), (bi(1), bi(1)));
        assert_eq!(squarefree_decompose(&bi(8)), (bi(2), bi(2)));
        assert_eq!(squarefree_decompose(&bi(97)), (bi(97), bi(1)));
        assert!(is_squarefree(&bi(30)));
        assert!(!is_squarefree(&bi(12)));
        assert!(!is_squarefree(&bi(0)));
    }

    #[test]
    fn sieves_agree_with_definitions() {
        let phi = phi_sieve(50);
        assert_eq!(&phi[1..=10], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        for n in 1..=50u64 {
            assert_eq!(phi_u64(n), phi[n as usize]);
        }
        let sigma = sigma_sieve(50);
        assert_eq!(&sigma[1..=10], &[1, 3, 4, 7, 6, 12, 8, 15, 13, 18]);
        let direct: u64 = sigma[1..=50].iter().sum();
        assert_eq!(sigma_cumulative(50), direct);
    }
}
