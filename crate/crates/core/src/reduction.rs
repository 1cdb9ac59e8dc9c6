//! Gauss-Lagrange reduction of binary integer Gram matrices, the
//! well-rounded test, and similarity classification.
//!
//! Every positive definite binary Gram matrix is equivalent under a
//! unimodular change of basis (reflections allowed) to a unique reduced form
//! with `0 <= 2*g12 <= g11 <= g22`. The reduced `g11` is the lattice
//! minimum, and the lattice is well-rounded exactly when `g11 = g22`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rounded_div, squarefree_decompose};
use crate::lattice::{ClassTuple, GramMatrix, Mat2};
use crate::{Error, Result};

/// Reduces `g` to its canonical form, returning `(g_red, v)` with
/// `v` unimodular and `v^t * g * v = g_red` (asserted on every call).
pub fn gauss_reduce(g: &GramMatrix) -> (GramMatrix, Mat2) {
    let mut g11 = g.g11.clone();
    let mut g12 = g.g12.clone();
    let mut g22 = g.g22.clone();
    let mut v = Mat2::identity();

    loop {
        if g22 < g11 {
            // swap basis vectors
            core::mem::swap(&mut g11, &mut g22);
            v = v.mul(&Mat2::from_i64(0, 1, 1, 0));
            continue;
        }
        if g12.abs() * 2 > g11 {
            // shear: v2 -= t * v1 with t minimizing |g12 - t*g11|
            let t = rounded_div(&g12, &g11);
            g22 = &g22 - (&g12 * 2 - &g11 * &t) * &t;
            g12 -= &g11 * &t;
            v = v.mul(&Mat2::new(BigInt::one(), -t, BigInt::zero(), BigInt::one()));
            continue;
        }
        break;
    }
    if g12.is_negative() {
        g12 = -g12;
        v = v.mul(&Mat2::from_i64(1, 0, 0, -1));
    }

    let reduced = GramMatrix { g11, g12, g22 };
    assert!(v.is_unimodular());
    assert_eq!(
        crate::lattice::sublattice_gram(g, &v).expect("v is unimodular"),
        reduced,
        "reduction transform does not reproduce the reduced form"
    );
    (reduced, v)
}

/// Squared length of the shortest nonzero vector.
pub fn minimum(g: &GramMatrix) -> BigInt {
    gauss_reduce(g).0.g11
}

/// True iff the minimal vectors contain a basis, i.e. the reduced form has
/// equal diagonal.
pub fn is_wr(g: &GramMatrix) -> bool {
    let (red, _) = gauss_reduce(g);
    red.g11 == red.g22
}

/// Number of +/- pairs of minimal vectors: 1 generically, 2 for the square
/// shape, 3 on the hexagonal boundary. Decided by exhaustive search over the
/// reduced coefficient box `{-1, 0, 1}^2`.
pub fn minimal_pairs(g: &GramMatrix) -> u32 {
    let (red, _) = gauss_reduce(g);
    let min = &red.g11;
    let mut count = 0u32;
    for x in -1i64..=1 {
        for y in -1i64..=1 {
            if x == 0 && y == 0 {
                continue;
            }
            if &red.eval(&BigInt::from(x), &BigInt::from(y)) == min {
                count += 1;
            }
        }
    }
    let pairs = count / 2;
    debug_assert!((1..=3).contains(&pairs));
    debug_assert_eq!(pairs >= 2, red.g11 == red.g22);
    pairs
}

/// Extracts the similarity class of an integral well-rounded lattice.
///
/// The reduced form is `[[aa, bb], [bb, aa]]` with `0 <= 2*bb <= aa`;
/// dividing by `g = gcd(aa, bb)` (with `g = aa` when `bb = 0`) gives the
/// coprime pair `(p, q)`, and `q^2 - p^2 = D * r^2` with `D` squarefree.
pub fn similarity_class_of(g: &GramMatrix) -> Result<ClassTuple> {
    let (red, _) = gauss_reduce(g);
    if red.g11 != red.g22 {
        return Err(Error::NotWellRounded);
    }
    let (aa, bb) = (red.g11, red.g12);
    let scale = if bb.is_zero() { aa.clone() } else { aa.gcd(&bb) };
    let p = &bb / &scale;
    let q = &aa / &scale;
    let (d, r) = squarefree_decompose(&(&q * &q - &p * &p));
    ClassTuple::new(p, r, q, d)
}

/// True iff the two lattices are similar: reduced forms proportional as
/// triples, with the nonnegative-g12 normalization absorbing reflections.
pub fn is_similar(g1: &GramMatrix, g2: &GramMatrix) -> bool {
    let (r1, _) = gauss_reduce(g1);
    let (r2, _) = gauss_reduce(g2);
    &r1.g11 * &r2.g12 == &r2.g11 * &r1.g12 && &r1.g11 * &r2.g22 == &r2.g11 * &r1.g22
}
