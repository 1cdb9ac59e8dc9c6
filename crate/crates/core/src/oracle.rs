//! Independent brute-force ground truth: exhaustive Hermite-normal-form
//! enumeration of finite-index sublattices, a well-rounded census with
//! similarity tags, integral rescaling of rational Gram matrices, and a
//! least-index search for a well-rounded sublattice.
//!
//! Beyond the shared Gram/reduction primitives this module shares no code
//! with the formula path it cross-checks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::{sublattice_gram, ClassTuple, GramMatrix, Hnf};
use crate::reduction::{gauss_reduce, similarity_class_of};
use crate::{Error, Result};

/// All index-`n` sublattice coefficient matrices `[[a, b], [0, d]]` with
/// `a*d = n` and `0 <= b < a`, in lexicographic `(a, b)` order. There are
/// `sigma(n)` of them.
pub fn hnf_sublattices(n: u64) -> Vec<Hnf> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let d = n / a;
        for b in 0..a {
            out.push(Hnf {
                a: BigInt::from(a),
                b: BigInt::from(b),
                d: BigInt::from(d),
            });
        }
    }
    out
}

/// Exhaustive census: for each index `n <= n_max`, every sublattice whose
/// Gram matrix is well-rounded, tagged with its similarity class.
pub fn brute_wr_census(
    g: &GramMatrix,
    n_max: u64,
) -> Result<BTreeMap<u64, Vec<(Hnf, ClassTuple)>>> {
    let mut out = BTreeMap::new();
    for n in 1..=n_max {
        let mut hits = Vec::new();
        for hnf in hnf_sublattices(n) {
            let sub = sublattice_gram(g, &hnf.as_mat2())?;
            let (red, _) = gauss_reduce(&sub);
            if red.g11 == red.g22 {
                let class = similarity_class_of(&sub)?;
                hits.push((hnf, class));
            }
        }
        if !hits.is_empty() {
            out.insert(n, hits);
        }
    }
    Ok(out)
}

/// Least positive rational `alpha` such that `alpha * G` is integral with
/// entry gcd 1, together with the integral matrix.
pub fn rescale_to_integral(
    g11: &BigRational,
    g12: &BigRational,
    g22: &BigRational,
) -> Result<(BigRational, GramMatrix)> {
    let lcm = g11
        .denom()
        .lcm(g12.denom())
        .lcm(g22.denom());
    let scaled = |g: &BigRational| -> BigInt {
        let r = g * BigRational::from(lcm.clone());
        debug_assert!(r.is_integer());
        r.to_integer()
    };
    let (n11, n12, n22) = (scaled(g11), scaled(g12), scaled(g22));
    let content = n11.gcd(&n12).gcd(&n22);
    if content.is_zero() {
        return Err(Error::NotPositiveDefinite);
    }
    let alpha = BigRational::new(lcm, content.clone());
    if !alpha.is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let gram = GramMatrix::new(&n11 / &content, &n12 / &content, &n22 / &content)?;
    Ok((alpha, gram))
}

/// Outcome of the increasing-index search for a well-rounded sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        hnf: Hnf,
        index: u64,
        class: ClassTuple,
    },
    /// Nothing found at index `<= ceiling`. Cannot happen for arithmetic
    /// input, but the search must terminate.
    CeilingReached { ceiling: u64 },
}

/// Searches indices `1, 2, 3, ...` for the first well-rounded sublattice;
/// ties at equal index break by lexicographic HNF order. `progress` is
/// invoked with each index before it is scanned.
pub fn find_wr_sublattice(
    g: &GramMatrix,
    ceiling: u64,
    mut progress: impl FnMut(u64),
) -> Result<SearchOutcome> {
    for n in 1..=ceiling {
        progress(n);
        for hnf in hnf_sublattices(n) {
            let sub = sublattice_gram(g, &hnf.as_mat2())?;
            let (red, _) = gauss_reduce(&sub);
            if red.g11 == red.g22 {
                let class = similarity_class_of(&sub)?;
                return Ok(SearchOutcome::Found {
                    hnf,
                    index: n,
                    class,
                });
            }
        }
    }
    Ok(SearchOutcome::CeilingReached { ceiling })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sigma_sieve;
    use crate::lattice::gram_of;
    use num_traits::ToPrimitive;

    fn gm(g11: i64, g12: i64, g22: i64) -> GramMatrix {
        GramMatrix::from_i64(g11, g12, g22).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hnf_counts_are_sigma() {
        assert_eq!(hnf_sublattices(1).len(), 1);
        assert_eq!(hnf_sublattices(2).len(), 3);
        assert_eq!(hnf_sublattices(4).len(), 7);
        let sigma = sigma_sieve(60);
        for n in 1..=60u64 {
            assert_eq!(hnf_sublattices(n).len() as u64, sigma[n as usize]);
        }
    }

    #[test]
    fn census_hex_and_square() {
        let hex = ClassTuple::hexagonal();
        let census = brute_wr_census(&gram_of(&hex, true), 4).unwrap();
        let keys: Vec<u64> = census.keys().copied().collect();
        assert_eq!(keys, [1, 3, 4]);
        assert_eq!(census[&1].len(), 1);
        let (h, class) = &census[&3][0];
        assert_eq!(
            (h.a.to_i64().unwrap(), h.b.to_i64().unwrap(), h.d.to_i64().unwrap()),
            (3, 1, 1)
        );
        assert_eq!(class, &hex);
        let (h, _) = &census[&4][0];
        assert_eq!(
            (h.a.to_i64().unwrap(), h.b.to_i64().unwrap(), h.d.to_i64().unwrap()),
            (2, 0, 2)
        );

        let census = brute_wr_census(&gm(1, 0, 1), 2).unwrap();
        assert_eq!(census[&2].len(), 1);
        let (h, class) = &census[&2][0];
        assert_eq!(
            (h.a.to_i64().unwrap(), h.b.to_i64().unwrap(), h.d.to_i64().unwrap()),
            (2, 1, 1)
        );
        assert_eq!(class, &ClassTuple::square());

        // ambient not WR: nothing at index 1
        let census = brute_wr_census(&gm(1, 0, 2), 1).unwrap();
        assert!(census.is_empty());
    }

    #[test]
    fn census_is_similarity_invariant() {
        // Similar lattices have the same numbers of WR sublattices per index.
        let hex = gram_of(&ClassTuple::hexagonal(), false);
        let scaled = hex.scale(&BigInt::from(3));
        let transformed =
            sublattice_gram(&hex, &crate::lattice::Mat2::from_i64(2, 1, 1, 1)).unwrap();
        let base = brute_wr_census(&hex, 40).unwrap();
        for other in [scaled, transformed] {
            let census = brute_wr_census(&other, 40).unwrap();
            let counts = |c: &BTreeMap<u64, Vec<(Hnf, ClassTuple)>>| -> Vec<(u64, usize)> {
                c.iter().map(|(n, v)| (*n, v.len())).collect()
            };
            assert_eq!(counts(&base), counts(&census));
        }
    }

    #[test]
    fn rescale_examples() {
        let (alpha, g) = rescale_to_integral(&rat(1, 2), &rat(1, 4), &rat(1, 2)).unwrap();
        assert_eq!(alpha, rat(4, 1));
        assert_eq!(g, gm(2, 1, 2));

        let (alpha, g) = rescale_to_integral(&rat(6, 1), &rat(3, 1), &rat(6, 1)).unwrap();
        assert_eq!(alpha, rat(1, 3));
        assert_eq!(g, gm(2, 1, 2));

        assert!(rescale_to_integral(&rat(1, 2), &rat(1, 2), &rat(1, 2)).is_err());
    }

    #[test]
    fn find_examples() {
        let out = find_wr_sublattice(&gm(1, 0, 2), 10, |_| {}).unwrap();
        match out {
            SearchOutcome::Found { hnf, index, class } => {
                assert_eq!(index, 2);
                assert_eq!(
                    (hnf.a.to_i64().unwrap(), hnf.b.to_i64().unwrap(), hnf.d.to_i64().unwrap()),
                    (2, 1, 1)
                );
                assert_eq!(class.to_string(), "1,2,3,2");
            }
            other => panic!("expected Found, got {other:?}"),
        }

        let out = find_wr_sublattice(&gm(2, 1, 2), 10, |_| {}).unwrap();
        assert!(matches!(out, SearchOutcome::Found { index: 1, .. }));

        // Z + sqrt(7) Z has no WR sublattice of index <= 3.
        let mut seen = 0;
        let out = find_wr_sublattice(&gm(1, 0, 7), 3, |_| seen += 1).unwrap();
        assert_eq!(out, SearchOutcome::CeilingReached { ceiling: 3 });
        assert_eq!(seen, 3);
    }

    #[test]
    fn census_tags_carry_the_ambient_type() {
        for class in [ClassTuple::hexagonal(), ClassTuple::square()] {
            let census = brute_wr_census(&gram_of(&class, true), 30).unwrap();
            for entries in census.values() {
                for (_, tag) in entries {
                    assert_eq!(tag.d(), class.d());
                }
            }
        }
    }
}
