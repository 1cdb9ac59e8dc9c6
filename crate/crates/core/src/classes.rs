//! Enumeration of integral well-rounded similarity classes of a fixed type
//! `D` through the coprime `(m, n)` parameterization, zeta partial sums over
//! classes, totient lower-bound checks, and primitive points of the
//! associated Pell-type conic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_squarefree, phi_u64};
use crate::lattice::{ClassTuple, MNParam};
use crate::{Error, Result};

/// Which class zeta-function to sum: over minima `q` or over determinants
/// `r * sqrt(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Minimum,
    Determinant,
}

/// One enumerated class with its smallest `(m, n)` witness and the number of
/// distinct `(m, n)` pairs that generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub class: ClassTuple,
    pub m: BigInt,
    pub n: BigInt,
    pub e: u8,
    pub multiplicity: u64,
}

/// A primitive integer point `(p, r, q)` on `p^2 + D*r^2 = q^2` with
/// `q > 0`; `p` and `r` carry sign and `gcd(p, r, q) = 1`. The height of the
/// corresponding projective point is `q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConicPoint {
    pub q: BigInt,
    pub p: BigInt,
    pub r: BigInt,
    pub d: BigInt,
}

/// Maps a valid parameter pair to its class:
/// `p = |m^2 - D*n^2| / f`, `r = 2*m*n / f`, `q = (m^2 + D*n^2) / f`
/// with `f = 2^e * gcd(m, D)`.
pub fn mn_to_class(param: &MNParam) -> ClassTuple {
    let (d, m, n) = (param.d(), param.m(), param.n());
    let m2 = m * m;
    let dn2 = d * n * n;
    let mut f = m.gcd(d);
    if param.e() == 1 {
        f *= 2;
    }
    let p = (&m2 - &dn2).abs() / &f;
    let r = m * n * 2 / &f;
    let q = (&m2 + &dn2) / &f;
    ClassTuple::new(p, r, q, d.clone())
        .expect("the parameterization always lands on a valid class")
}

fn check_d(d: u64) -> Result<BigInt> {
    let d = BigInt::from(d);
    if !d.is_positive() {
        return Err(Error::InvalidParameter("D must be positive"));
    }
    if !is_squarefree(&d) {
        return Err(Error::NotSquarefree);
    }
    Ok(d)
}

/// Exact integer range of `m` for a given `n`: all `m` with
/// `3*m^2 >= D*n^2` and `m^2 <= 3*D*n^2`.
fn m_range(d: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    let dn2 = d * n * n;
    let mut lo = (&dn2 / 3u32).sqrt();
    while &lo * &lo * 3u32 < dn2 {
        lo += 1;
    }
    while lo > BigInt::one() && (&lo - 1) * (&lo - 1) * 3u32 >= dn2 {
        lo -= 1;
    }
    let three_dn2 = &dn2 * 3u32;
    let mut hi = three_dn2.sqrt();
    while (&hi + 1) * (&hi + 1) <= three_dn2 {
        hi += 1;
    }
    while &hi * &hi > three_dn2 {
        hi -= 1;
    }
    (lo, hi)
}

/// All classes of type `D` with `q <= q_max`, with witnesses and
/// multiplicities, sorted by tuple. Completeness comes from `q >= (2/3)*n^2`,
/// so scanning `n` with `2*n^2 <= 3*q_max` covers everything.
pub fn enumerate_class_records(d: u64, q_max: u64) -> Result<Vec<ClassRecord>> {
    let d = check_d(d)?;
    let q_bound = BigInt::from(q_max);
    let mut found: BTreeMap<ClassTuple, (BigInt, BigInt, u8, u64)> = BTreeMap::new();
    let mut n = BigInt::one();
    while &n * &n * 2u32 <= &q_bound * 3u32 {
        let (m_lo, m_hi) = m_range(&d, &n);
        let mut m = m_lo;
        while m <= m_hi {
            if m.gcd(&n).is_one() {
                let param = MNParam::new(d.clone(), m.clone(), n.clone())
                    .expect("scanned pair satisfies the range conditions");
                let e = param.e();
                let class = mn_to_class(&param);
                if class.q() <= &q_bound {
                    let entry = found
                        .entry(class)
                        .or_insert_with(|| (m.clone(), n.clone(), e, 0));
                    entry.3 += 1;
                    if (&m, &n) < (&entry.0, &entry.1) {
                        (entry.0, entry.1, entry.2) = (m.clone(), n.clone(), e);
                    }
                }
            }
            m += 1;
        }
        n += 1;
    }
    Ok(found
        .into_iter()
        .map(|(class, (m, n, e, multiplicity))| ClassRecord {
            class,
            m,
            n,
            e,
            multiplicity,
        })
        .collect())
}

/// Sorted, deduplicated classes of type `D` with `q <= q_max`.
pub fn enumerate_classes(d: u64, q_max: u64) -> Result<Vec<ClassTuple>> {
    Ok(enumerate_class_records(d, q_max)?
        .into_iter()
        .map(|r| r.class)
        .collect())
}

/// Truncated class zeta-function: sum over classes with `q <= q_max` of
/// `q^{-s}` (minimum kind) or `(r*sqrt(D))^{-s}` (determinant kind).
pub fn zeta_class_partial(d: u64, s: f64, q_max: u64, kind: ZetaKind) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    let classes = enumerate_classes(d, q_max)?;
    let sum: f64 = classes
        .iter()
        .map(|t| match kind {
            ZetaKind::Minimum => libm::pow(big_to_f64(t.q()), -s),
            ZetaKind::Determinant => libm::pow(big_to_f64(t.r()), -s),
        })
        .sum();
    Ok(match kind {
        ZetaKind::Minimum => sum,
        ZetaKind::Determinant => libm::pow(d as f64, -s / 2.0) * sum,
    })
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("finite conversion")
}

/// Result of the totient lower-bound check for a single `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiBound {
    pub a_n: u64,
    pub phi_n: u64,
    pub pass: bool,
}

/// Counts `a_n = #{m : n*sqrt(D/3) <= m <= n*sqrt(3D), gcd(m, n) = 1}`
/// by exact integer range tests and compares it with Euler's totient.
pub fn phi_bound_check(d: u64, n: u64) -> Result<PhiBound> {
    let d_big = check_d(d)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive"));
    }
    let n_big = BigInt::from(n);
    let (lo, hi) = m_range(&d_big, &n_big);
    let mut a_n = 0u64;
    let mut m = lo;
    while m <= hi {
        if m.gcd(&n_big).is_one() {
            a_n += 1;
        }
        m += 1;
    }
    let phi_n = phi_u64(n);
    Ok(PhiBound {
        a_n,
        phi_n,
        pass: a_n >= phi_n,
    })
}

/// All primitive points with `0 < q <= q_max`, sorted by `(q, p, r)`.
/// Signs of `p` and `r` vary freely; `r = 0` points lie on the line.
pub fn conic_points(d: u64, q_max: u64) -> Result<Vec<ConicPoint>> {
    let d_big = check_d(d)?;
    let mut out = Vec::new();
    for q in 1..=q_max {
        let q_big = BigInt::from(q);
        let q2 = &q_big * &q_big;
        let mut r = BigInt::zero();
        loop {
            let rest = &q2 - &d_big * &r * &r;
            if rest.is_negative() {
                break;
            }
            let p = rest.sqrt();
            if &p * &p == rest && p.gcd(&r).gcd(&q_big).is_one() {
                for (sp, sr) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    if (p.is_zero() && sp < 0) || (r.is_zero() && sr < 0) {
                        continue;
                    }
                    out.push(ConicPoint {
                        q: q_big.clone(),
                        p: &p * sp,
                        r: &r * sr,
                        d: d_big.clone(),
                    });
                }
            }
            r += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Truncated height zeta of the conic: sum of `q^{-s}` over primitive points
/// with `q <= q_max`.
pub fn height_zeta_partial(d: u64, s: f64, q_max: u64) -> Result<f64> {
    Ok(conic_points(d, q_max)?
        .iter()
        .map(|pt| libm::pow(big_to_f64(&pt.q), -s))
        .sum())
}
