//! Generation of all well-rounded sublattices of a fixed integral
//! well-rounded lattice.
//!
//! For an ambient class `(p0, r0, q0, D)` and a target class `(p, r, q, D)`,
//! the sublattices of the scaled ambient lattice that are similar to the
//! target are indexed by integer pairs `(m, n) != (0, 0)` through a positive
//! definite integer quadratic form `Q(m, n)`: each pair solves one of two
//! congruence systems (a rotation and a reflection branch), every solution
//! yields an integer coefficient matrix, and the sublattice index is
//! `r * Q(m, n) / (r0 * q0)`. Distinct sublattices are recognized by their
//! Hermite normal forms; the raw `(m, n, branch)` multiplicity is kept as a
//! separate diagnostic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{ext_gcd, rounded_div};
use crate::lattice::{gram_of, hnf_canonicalize, ClassTuple, GramMatrix, Hnf, Mat2};
use crate::{Error, Result};

/// Integer binary quadratic form `a*m^2 + b*m*n + c*n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    pub fn eval(&self, m: &BigInt, n: &BigInt) -> BigInt {
        &self.a * m * m + &self.b * m * n + &self.c * n * n
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.disc_neg().is_positive()
    }

    /// `4ac - b^2`, positive for positive definite forms.
    pub fn disc_neg(&self) -> BigInt {
        &self.a * &self.c * 4 - &self.b * &self.b
    }

    /// Minimum over nonzero integer pairs, via coefficient reduction.
    pub fn min(&self) -> BigInt {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            if c < a {
                core::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b.abs() > a {
                let k = rounded_div(&b, &(&a * 2));
                c = &a * &k * &k - &b * &k + &c;
                b -= &a * &k * 2;
                continue;
            }
            break;
        }
        a
    }
}

/// The classification form for a fixed (ambient, target) pair, together with
/// its gcd and Bezout scaffolding.
#[derive(Debug, Clone)]
pub struct QFormData {
    pub ambient: ClassTuple,
    pub target: ClassTuple,
    /// `gcd(q0*r, q*r0)`
    pub d1: BigInt,
    /// `gcd(d1, p0*r - r0*p)`, with `gcd(x, 0) = x`
    pub d2: BigInt,
    /// Bezout witness: `a*q0*r + b*q*r0 = d1`
    pub a: BigInt,
    pub b: BigInt,
    /// Raw form; every coefficient is divisible by `q`.
    pub q1: BinaryForm,
    /// `q1 / q`, the classification form.
    pub q: BinaryForm,
}

/// Which congruence branch a parameter pair was solved on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Rotation,
    Reflection,
}

/// An integer solution `(x, y)` of one congruence branch, with
/// `(x*p0 + y*q0)^2 + D*(x*r0)^2 = q * k` and `k = Q(m, n)`.
#[derive(Debug, Clone)]
pub struct RotationSpec {
    pub branch: Branch,
    pub x: BigInt,
    pub y: BigInt,
    pub k: BigInt,
}

/// A sublattice identified by its ambient class and canonical coefficient
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeHandle {
    pub ambient: ClassTuple,
    pub hnf: Hnf,
}

impl SublatticeHandle {
    pub fn index(&self) -> BigInt {
        self.hnf.index()
    }
}

/// One deduplicated well-rounded sublattice in a census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrSublattice {
    pub hnf: Hnf,
    pub target: ClassTuple,
    /// Reduced Gram matrix, relative to the scaled ambient lattice.
    pub gram_reduced: GramMatrix,
    /// Number of `(m, n, branch)` preimages observed.
    pub witnesses: u64,
}

/// Census of well-rounded sublattices: index -> entries sorted by HNF.
pub type Census = BTreeMap<u64, Vec<WrSublattice>>;

fn with_bezout(
    ambient: &ClassTuple,
    target: &ClassTuple,
    d1: &BigInt,
    a: BigInt,
    b: BigInt,
) -> QFormData {
    let (p0, r0, q0) = (ambient.p(), ambient.r(), ambient.q());
    let (p, r, q) = (target.p(), target.r(), target.q());
    let delta = r0 * p - p0 * r;
    let d2 = if delta.is_zero() { d1.clone() } else { d1.gcd(&delta) };

    let a1 = q0 * q0 * q * q * r0 * r0 / (d1 * d1);
    let c1 = (&a * &a * &delta * &delta * q0 * q0
        + &a * d1 * p0 * q0 * &delta * 2
        + d1 * d1 * q0 * q0)
        / (&d2 * &d2);
    let b1 = (&a * &delta * q * q0 * q0 * r0 * 2 + d1 * q * q0 * r0 * p0 * 2) / (d1 * &d2);
    let q1 = BinaryForm { a: a1, b: b1, c: c1 };

    // Every coefficient of the raw form carries a factor of q.
    assert!(
        (&q1.a % q).is_zero() && (&q1.b % q).is_zero() && (&q1.c % q).is_zero(),
        "raw classification form not divisible by q"
    );
    let qf = BinaryForm {
        a: &q1.a / q,
        b: &q1.b / q,
        c: &q1.c / q,
    };
    assert!(qf.is_positive_definite(), "classification form not positive definite");

    QFormData {
        ambient: ambient.clone(),
        target: target.clone(),
        d1: d1.clone(),
        d2,
        a,
        b,
        q1,
        q: qf,
    }
}

/// Builds the classification form for `(ambient, target)`. Both classes must
/// have the same type `D`.
pub fn build_q_form(ambient: &ClassTuple, target: &ClassTuple) -> Result<QFormData> {
    if ambient.d() != target.d() {
        return Err(Error::TypeMismatch);
    }
    let u = ambient.q() * target.r();
    let v = target.q() * ambient.r();
    let (d1, a, b) = ext_gcd(&u, &v);
    debug_assert_eq!(&a * &u + &b * &v, d1);
    Ok(with_bezout(ambient, target, &d1, a, b))
}

/// Both congruence-branch solutions for a parameter pair.
pub fn rotation_specs(qf: &QFormData, m: &BigInt, n: &BigInt) -> Result<[RotationSpec; 2]> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::ZeroPair);
    }
    let (p0, r0, q0) = (qf.ambient.p(), qf.ambient.r(), qf.ambient.q());
    let (p, r, q) = (qf.target.p(), qf.target.r(), qf.target.q());
    let delta = r0 * p - p0 * r;
    let u = &qf.a * &delta * n / &qf.d2 + q * r0 * m / &qf.d1;
    let w = &qf.d1 * n / &qf.d2;
    let k = qf.q.eval(m, n);

    let specs = [
        RotationSpec {
            branch: Branch::Rotation,
            x: u.clone(),
            y: w.clone(),
            k: k.clone(),
        },
        RotationSpec {
            branch: Branch::Reflection,
            x: w,
            y: u,
            k,
        },
    ];
    for s in &specs {
        let lhs = {
            let t = &s.x * p0 + &s.y * q0;
            let xr = &s.x * r0;
            &t * &t + qf.ambient.d() * &xr * &xr
        };
        debug_assert_eq!(lhs, q * &s.k, "congruence solution fails the angle identity");
    }
    Ok(specs)
}

/// Realizes a branch solution as a canonical sublattice.
///
/// The off-diagonal entries of the coefficient matrix are the two congruence
/// values of the branch system divided by `q * r0`. The branch
/// parameterization forces one of them to be integral; the other can fail,
/// in which case the pair solves only half the system and corresponds to no
/// sublattice (`Error::NotASolution`).
pub fn coeff_matrix(qf: &QFormData, spec: &RotationSpec) -> Result<SublatticeHandle> {
    let (p0, r0, q0) = (qf.ambient.p(), qf.ambient.r(), qf.ambient.q());
    let (p, r, q) = (qf.target.p(), qf.target.r(), qf.target.q());
    let (x, y) = (&spec.x, &spec.y);
    let delta = r0 * p - p0 * r;
    let cross = r0 * p + p0 * r;
    let r0q = r0 * q;

    let (c12_num, c22_num) = match spec.branch {
        Branch::Rotation => (y * &delta - x * r * q0, x * &cross + y * r * q0),
        Branch::Reflection => (x * r * q0 + y * &cross, x * &delta - y * r * q0),
    };
    if !(&c12_num % &r0q).is_zero() || !(&c22_num % &r0q).is_zero() {
        return Err(Error::NotASolution);
    }
    let c = Mat2::new(y.clone(), c12_num / &r0q, x.clone(), c22_num / &r0q);

    let (hnf, index) = hnf_canonicalize(&c)?;
    // index = r * Q(m, n) / (r0 * q0), exactly
    debug_assert_eq!(&index * r0 * q0, r * &spec.k);
    // The sublattice Gram, taken against the scaled ambient lattice, reduces
    // to k * [[q, p], [p, q]].
    debug_assert_eq!(
        crate::reduction::gauss_reduce(
            &crate::lattice::sublattice_gram(&gram_of(&qf.ambient, true), &c).expect("det != 0")
        )
        .0,
        gram_of(&qf.target, false).scale(&spec.k),
    );
    Ok(SublatticeHandle {
        ambient: qf.ambient.clone(),
        hnf,
    })
}

/// All sublattices of the scaled ambient lattice similar to `target`, up to
/// `index_max`, deduplicated by HNF, with witness multiplicities.
pub fn enumerate_similar(
    ambient: &ClassTuple,
    target: &ClassTuple,
    index_max: u64,
) -> Result<Census> {
    let qf = build_q_form(ambient, target)?;
    enumerate_with_form(&qf, index_max)
}

/// Visits every nonzero `(m, n)` with `form(m, n) <= bound`, exactly:
/// `4A*Q(m,n) = (2A*m + B*n)^2 + (4AC - B^2)*n^2`, so the `m` range per `n`
/// comes from an integer square root with no floating point involved.
fn scan_ellipse<F>(form: &BinaryForm, bound: &BigInt, mut visit: F) -> Result<()>
where
    F: FnMut(&BigInt, &BigInt) -> Result<()>,
{
    if bound < &form.min() {
        return Ok(());
    }
    let disc = form.disc_neg();
    let four_a_bound = &form.a * bound * 4u32;
    let two_a = &form.a * 2u32;
    let n_max = (&four_a_bound / &disc).sqrt() + 1u32;
    let mut n = -n_max.clone();
    while n <= n_max {
        let rhs = &four_a_bound - &disc * &n * &n;
        if rhs.is_negative() {
            n += 1;
            continue;
        }
        let s = rhs.sqrt();
        let mid = -(&form.b * &n);
        let m_lo = (&mid - &s).div_ceil(&two_a);
        let m_hi = (&mid + &s).div_floor(&two_a);
        let mut m = m_lo;
        while m <= m_hi {
            if !(m.is_zero() && n.is_zero()) {
                debug_assert!(form.eval(&m, &n) <= *bound);
                visit(&m, &n)?;
            }
            m += 1;
        }
        n += 1;
    }
    Ok(())
}

/// `Q(m, n) <= bound` captures every index up to `index_max`.
fn index_bound(qf: &QFormData, index_max: u64) -> BigInt {
    let r0q0 = qf.ambient.r() * qf.ambient.q();
    (BigInt::from(index_max) * r0q0).div_floor(qf.target.r())
}

fn enumerate_with_form(qf: &QFormData, index_max: u64) -> Result<Census> {
    if index_max == 0 {
        return Err(Error::InvalidParameter("index_max must be >= 1"));
    }
    let bound = index_bound(qf, index_max);
    let mut map: BTreeMap<u64, BTreeMap<Hnf, WrSublattice>> = BTreeMap::new();
    scan_ellipse(&qf.q, &bound, |m, n| {
        for spec in rotation_specs(qf, m, n)? {
            let handle = match coeff_matrix(qf, &spec) {
                Ok(handle) => handle,
                // Pair solves only one congruence of this branch: no lattice.
                Err(Error::NotASolution) => continue,
                Err(e) => return Err(e),
            };
            let index = handle.index().to_u64().expect("index bounded by index_max");
            let entry = map
                .entry(index)
                .or_default()
                .entry(handle.hnf.clone())
                .or_insert_with(|| WrSublattice {
                    hnf: handle.hnf,
                    target: qf.target.clone(),
                    gram_reduced: gram_of(&qf.target, false).scale(&spec.k),
                    witnesses: 0,
                });
            entry.witnesses += 1;
        }
        Ok(())
    })?;

    Ok(map
        .into_iter()
        .map(|(idx, entries)| (idx, entries.into_values().collect()))
        .collect())
}

/// The literal truncated lattice sum `(r0*q0/r)^s * sum Q(m, n)^{-s}` over
/// all nonzero pairs in the index range, solutions or not. It dominates the
/// deduplicated sublattice sum.
pub fn raw_epstein_partial(
    ambient: &ClassTuple,
    target: &ClassTuple,
    s: f64,
    index_max: u64,
) -> Result<f64> {
    let qf = build_q_form(ambient, target)?;
    let bound = index_bound(&qf, index_max);
    let scale = (ambient.r() * ambient.q())
        .to_f64()
        .expect("finite conversion");
    let rf = target.r().to_f64().expect("finite conversion");
    let mut sum = 0.0;
    scan_ellipse(&qf.q, &bound, |m, n| {
        let k = qf.q.eval(m, n).to_f64().expect("finite conversion");
        sum += libm::pow(rf * k / scale, -s);
        Ok(())
    })?;
    Ok(sum)
}

/// Target classes that can contribute a sublattice of index `<= index_max`:
/// every class of the ambient type with `r <= index_max * q0 * r0`, found by
/// enumerating classes up to the implied `q` bound `3q^2 <= 4*D*r^2`.
pub fn wr_target_classes(ambient: &ClassTuple, index_max: u64) -> Result<Vec<ClassTuple>> {
    let d = ambient
        .d()
        .to_u64()
        .ok_or(Error::InvalidParameter("D too large"))?;
    let r_cut = BigInt::from(index_max) * ambient.q() * ambient.r();
    let q_cut = (ambient.d() * &r_cut * &r_cut * 4u32 / 3u32)
        .sqrt()
        .to_u64()
        .ok_or(Error::InvalidParameter("index_max too large"))?;
    Ok(crate::classes::enumerate_classes(d, q_cut)?
        .into_iter()
        .filter(|t| t.r() <= &r_cut)
        .collect())
}

/// Union of `enumerate_similar` over all contributing target classes.
/// The per-class HNF sets are disjoint, so the merge is a plain union.
pub fn enumerate_all_wr(ambient: &ClassTuple, index_max: u64) -> Result<Census> {
    let targets = wr_target_classes(ambient, index_max)?;
    let censuses = targets
        .iter()
        .map(|t| enumerate_similar(ambient, t, index_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_censuses(censuses))
}

/// Merges per-class censuses into one, keeping each index's entries sorted
/// by HNF. Entries coming from different classes are necessarily distinct.
pub fn merge_censuses(censuses: Vec<Census>) -> Census {
    let mut out: Census = BTreeMap::new();
    for census in censuses {
        for (idx, mut entries) in census {
            out.entry(idx).or_default().append(&mut entries);
        }
    }
    for entries in out.values_mut() {
        entries.sort_by(|a, b| a.hnf.cmp(&b.hnf));
        debug_assert!(entries.windows(2).all(|w| w[0].hnf != w[1].hnf));
    }
    out
}
