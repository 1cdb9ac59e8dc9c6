//! Shared oracles for integration tests. These stay independent of the
//! enumeration paths they check: plain scans over (q, r) and plain counting.

use num_bigint::BigInt;
use num_integer::Roots;
use wrlat_core::lattice::ClassTuple;

/// Direct Pell-style search: all class tuples of type `d` with `q <= q_max`,
/// found by scanning `(q, r)` and testing `q^2 - D r^2` for a perfect
/// square, sorted like the library output.
pub fn pell_search_classes(d: u64, q_max: u64) -> Vec<ClassTuple> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        for r in 1..=q {
            let dr2 = match d.checked_mul(r * r) {
                Some(v) if v <= q * q => v,
                _ => break,
            };
            let rest = q * q - dr2;
            let p = rest.sqrt();
            if p * p != rest {
                continue;
            }
            if gcd(p, q) == 1 && 2 * p <= q {
                out.push(
                    ClassTuple::new(
                        BigInt::from(p),
                        BigInt::from(r),
                        BigInt::from(q),
                        BigInt::from(d),
                    )
                    .expect("search conditions match tuple validation"),
                );
            }
        }
    }
    out.sort();
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Primitive conic point count by direct search, independent of the
/// library's point enumeration (counts sign orbits arithmetically).
pub fn pell_count_points(d: u64, q_max: u64) -> u64 {
    let mut count = 0u64;
    for q in 1..=q_max {
        for r in 0..=q {
            let dr2 = match d.checked_mul(r * r) {
                Some(v) if v <= q * q => v,
                _ => break,
            };
            let rest = q * q - dr2;
            let p = rest.sqrt();
            if p * p != rest {
                continue;
            }
            if gcd(gcd(p, r), q) == 1 {
                let orbit = match (p == 0, r == 0) {
                    (true, true) => unreachable!("q > 0"),
                    (true, false) | (false, true) => 2,
                    (false, false) => 4,
                };
                count += orbit;
            }
        }
    }
    count
}
