//! Exact representations: class tuples, integer Gram matrices, integer
//! coefficient matrices, and the canonical Hermite normal form.
//!
//! Irrational basis entries are never materialized; all geometry flows
//! through integer Gram matrices.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ext_gcd, is_squarefree};
use crate::{Error, Result};

/// An integral well-rounded similarity class of type `D`: the tuple
/// `(p, r, q, D)` with `p^2 + D*r^2 = q^2`, `gcd(p, q) = 1`, `2p <= q`
/// and `D` squarefree. `p = 0` occurs only for the square class
/// `(0, 1, 1, 1)`.
///
/// The minimal integral lattice of the class has Gram matrix
/// `[[q, p], [p, q]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassTuple {
    d: BigInt,
    q: BigInt,
    p: BigInt,
    r: BigInt,
}

impl ClassTuple {
    pub fn new(p: BigInt, r: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        let fail = |why: String| Err(Error::InvalidTuple(why));
        if !r.is_positive() || !q.is_positive() || !d.is_positive() {
            return fail(format!("r, q, D must be positive (got r={r}, q={q}, D={d})"));
        }
        if p.is_negative() {
            return fail(format!("p must be nonnegative (got p={p})"));
        }
        if p.is_zero() && !(r.is_one() && q.is_one() && d.is_one()) {
            return fail(String::from("p = 0 is admitted only for the square class 0,1,1,1"));
        }
        if &p * &p + &d * &r * &r != &q * &q {
            return fail(format!("p^2 + D*r^2 != q^2 for ({p},{r},{q},{d})"));
        }
        if !p.gcd(&q).is_one() {
            return fail(format!("gcd(p, q) != 1 for ({p},{q})"));
        }
        if &p * 2 > q {
            return fail(format!("2p > q for ({p},{q})"));
        }
        if !is_squarefree(&d) {
            return Err(Error::NotSquarefree);
        }
        Ok(ClassTuple { d, q, p, r })
    }

    /// The hexagonal class `(1, 1, 2, 3)`.
    pub fn hexagonal() -> Self {
        ClassTuple::new(BigInt::one(), BigInt::one(), BigInt::from(2), BigInt::from(3))
            .expect("hexagonal class is valid")
    }

    /// The square class `(0, 1, 1, 1)`.
    pub fn square() -> Self {
        ClassTuple::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::one())
            .expect("square class is valid")
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_square_class(&self) -> bool {
        self.p.is_zero()
    }
}

/// Text form `p,r,q,D` used by the CLI and CSV output.
impl fmt::Display for ClassTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p, self.r, self.q, self.d)
    }
}

impl FromStr for ClassTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',');
        let mut next = || -> Result<BigInt> {
            parts
                .next()
                .and_then(|t| BigInt::from_str(t.trim()).ok())
                .ok_or(Error::InvalidParameter("expected four integers p,r,q,D"))
        };
        let (p, r, q, d) = (next()?, next()?, next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::InvalidParameter("expected four integers p,r,q,D"));
        }
        ClassTuple::new(p, r, q, d)
    }
}

/// A symmetric positive definite 2x2 integer matrix `[[g11, g12], [g12, g22]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GramMatrix {
    pub g11: BigInt,
    pub g12: BigInt,
    pub g22: BigInt,
}

impl GramMatrix {
    pub fn new(g11: BigInt, g12: BigInt, g22: BigInt) -> Result<Self> {
        if !g11.is_positive() || &g11 * &g22 - &g12 * &g12 <= BigInt::zero() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(GramMatrix { g11, g12, g22 })
    }

    pub fn from_i64(g11: i64, g12: i64, g22: i64) -> Result<Self> {
        GramMatrix::new(BigInt::from(g11), BigInt::from(g12), BigInt::from(g22))
    }

    pub fn det(&self) -> BigInt {
        &self.g11 * &self.g22 - &self.g12 * &self.g12
    }

    /// Value of the associated quadratic form at integer coordinates.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.g11 * x * x + &self.g12 * x * y * 2 + &self.g22 * y * y
    }

    /// Scalar multiple `c * G` (requires `c > 0` to stay positive definite).
    pub fn scale(&self, c: &BigInt) -> GramMatrix {
        debug_assert!(c.is_positive());
        GramMatrix {
            g11: &self.g11 * c,
            g12: &self.g12 * c,
            g22: &self.g22 * c,
        }
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.g11, self.g12, self.g12, self.g22)
    }
}

/// A general 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    pub fn identity() -> Self {
        Mat2::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Column Hermite normal form `[[a, b], [0, d]]` with `a, d >= 1` and
/// `0 <= b < a`: the unique canonical coefficient matrix of a finite-index
/// sublattice. All deduplication keys on this form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hnf {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl Hnf {
    pub fn index(&self) -> BigInt {
        &self.a * &self.d
    }

    pub fn as_mat2(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.b.clone(), BigInt::zero(), self.d.clone())
    }
}

impl fmt::Display for Hnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.d)
    }
}

/// Coprime parameter pair `(m, n)` generating a class of type `D`, with the
/// exact range condition `3*m^2 >= D*n^2` and `m^2 <= 3*D*n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MNParam {
    d: BigInt,
    m: BigInt,
    n: BigInt,
}

impl MNParam {
    pub fn new(d: BigInt, m: BigInt, n: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidParameter("D must be positive"));
        }
        if !is_squarefree(&d) {
            return Err(Error::NotSquarefree);
        }
        if !m.is_positive() || !n.is_positive() {
            return Err(Error::InvalidParameter("m, n must be positive"));
        }
        if !m.gcd(&n).is_one() {
            return Err(Error::InvalidParameter("gcd(m, n) != 1"));
        }
        let m2 = &m * &m;
        let dn2 = &d * &n * &n;
        if &m2 * 3 < dn2 || m2 > &dn2 * 3 {
            return Err(Error::InvalidParameter("m/n outside [sqrt(D/3), sqrt(3D)]"));
        }
        Ok(MNParam { d, m, n })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// Halving exponent: 0 if `2 | D`, or if `D` is odd and `m*n` is even;
    /// 1 otherwise.
    pub fn e(&self) -> u8 {
        if self.d.is_even() || (&self.m * &self.n).is_even() {
            0
        } else {
            1
        }
    }
}

/// Gram matrix of the minimal integral representative of `class`
/// (`scaled = false`), or of its `sqrt(q)`-scaled version (`scaled = true`).
///
/// The unscaled Gram is `[[q, p], [p, q]]`; the scaled one is `q` times that.
pub fn gram_of(class: &ClassTuple, scaled: bool) -> GramMatrix {
    let base = GramMatrix {
        g11: class.q().clone(),
        g12: class.p().clone(),
        g22: class.q().clone(),
    };
    if scaled {
        base.scale(class.q())
    } else {
        base
    }
}

/// Change of basis: `T^t * G * T` for an integer coefficient matrix `T`.
/// The determinant of the result is `det(T)^2 * det(G)`.
pub fn sublattice_gram(g: &GramMatrix, t: &Mat2) -> Result<GramMatrix> {
    if t.det().is_zero() {
        return Err(Error::Singular);
    }
    // Columns of T are sublattice basis vectors in ambient coordinates.
    let g11 = quad(g, &t.a, &t.c);
    let g22 = quad(g, &t.b, &t.d);
    let g12 = &g.g11 * &t.a * &t.b
        + &g.g12 * (&t.a * &t.d + &t.c * &t.b)
        + &g.g22 * &t.c * &t.d;
    let out = GramMatrix { g11, g12, g22 };
    debug_assert!(out.det() == t.det() * t.det() * g.det());
    Ok(out)
}

fn quad(g: &GramMatrix, x: &BigInt, y: &BigInt) -> BigInt {
    &g.g11 * x * x + &g.g12 * x * y * 2 + &g.g22 * y * y
}

/// Canonicalizes an integer coefficient matrix to column Hermite normal form,
/// returning the form and the index `a*d = |det T|`. The column span over the
/// integers is preserved.
pub fn hnf_canonicalize(t: &Mat2) -> Result<(Hnf, BigInt)> {
    let det = t.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    // Zero the bottom-left entry with a unimodular column operation built
    // from the extended gcd of the bottom row.
    let (g, u, v) = ext_gcd(&t.c, &t.d);
    let (x_over_g, y_over_g) = (&t.c / &g, &t.d / &g);
    let mut a = &y_over_g * &t.a - &x_over_g * &t.b;
    let mut b = &u * &t.a + &v * &t.b;
    let d = g;
    if a.is_negative() {
        a = -a;
        // column negation; b is untouched
    }
    debug_assert!(a.is_positive() && d.is_positive());
    b = b.mod_floor(&a);
    let hnf = Hnf { a, b, d };
    debug_assert_eq!(hnf.index(), det.abs());
    let index = hnf.index();
    Ok((hnf, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn tuple(p: i64, r: i64, q: i64, d: i64) -> ClassTuple {
        ClassTuple::new(bi(p), bi(r), bi(q), bi(d)).unwrap()
    }

    #[test]
    fn tuple_validation() {
        assert!(ClassTuple::new(bi(1), bi(1), bi(2), bi(3)).is_ok());
        assert!(ClassTuple::new(bi(0), bi(1), bi(1), bi(1)).is_ok());
        // p = 0 outside the square class
        assert!(matches!(
            ClassTuple::new(bi(0), bi(1), bi(2), bi(4)),
            Err(Error::InvalidTuple(_))
        ));
        // wrong norm equation
        assert!(ClassTuple::new(bi(1), bi(1), bi(3), bi(3)).is_err());
        // gcd(p, q) > 1: 3^2 + 6*1 = 15, not a square anyway; use (2,2,4,3)? 4+12=16 ok
        assert!(ClassTuple::new(bi(2), bi(2), bi(4), bi(3)).is_err());
        // 2p > q: (4,3,5,1)? 16+9=25 but 8 > 5
        assert!(ClassTuple::new(bi(4), bi(3), bi(5), bi(1)).is_err());
        // non-squarefree D: 25 + 4*36 = 169 with 2p <= q
        assert_eq!(
            ClassTuple::new(bi(5), bi(6), bi(13), bi(4)),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn tuple_text_round_trip() {
        let t = tuple(1, 4, 7, 3);
        assert_eq!(t.to_string(), "1,4,7,3");
        assert_eq!("1,4,7,3".parse::<ClassTuple>().unwrap(), t);
        assert!("1,4,7".parse::<ClassTuple>().is_err());
        assert!("1,4,7,3,9".parse::<ClassTuple>().is_err());
        assert!("a,b,c,d".parse::<ClassTuple>().is_err());
    }

    #[test]
    fn gram_of_examples() {
        let hex = tuple(1, 1, 2, 3);
        assert_eq!(gram_of(&hex, false), GramMatrix::from_i64(2, 1, 2).unwrap());
        assert_eq!(gram_of(&hex, true), GramMatrix::from_i64(4, 2, 4).unwrap());
        let sq = ClassTuple::square();
        assert_eq!(gram_of(&sq, false), GramMatrix::from_i64(1, 0, 1).unwrap());
    }

    #[test]
    fn gram_det_is_d_r_squared() {
        for t in [tuple(1, 1, 2, 3), tuple(1, 4, 7, 3), tuple(1, 2, 3, 2), tuple(0, 1, 1, 1)] {
            let g = gram_of(&t, false);
            assert_eq!(g.det(), t.d() * t.r() * t.r());
            assert!(g.det().is_positive());
            assert!(gram_of(&t, true).det().is_positive());
        }
    }

    #[test]
    fn rq_inequality_exact() {
        // sqrt(3)/2 * q <= r*sqrt(D) <= q, as 3q^2 <= 4Dr^2 and Dr^2 <= q^2.
        for t in [tuple(1, 1, 2, 3), tuple(1, 4, 7, 3), tuple(1, 2, 3, 2), tuple(0, 1, 1, 1)] {
            let (q2, dr2) = (t.q() * t.q(), t.d() * t.r() * t.r());
            assert!(&q2 * 3 <= &dr2 * 4);
            assert!(dr2 <= q2);
        }
    }

    #[test]
    fn sublattice_gram_examples() {
        let g = GramMatrix::from_i64(2, 1, 2).unwrap();
        assert_eq!(sublattice_gram(&g, &Mat2::identity()).unwrap(), g);
        assert_eq!(
            sublattice_gram(&g, &Mat2::from_i64(3, 1, 0, 1)).unwrap(),
            GramMatrix::from_i64(18, 9, 6).unwrap()
        );
        let id = GramMatrix::from_i64(1, 0, 1).unwrap();
        assert_eq!(
            sublattice_gram(&id, &Mat2::from_i64(2, 1, 0, 1)).unwrap(),
            GramMatrix::from_i64(4, 2, 2).unwrap()
        );
        assert_eq!(
            sublattice_gram(&g, &Mat2::from_i64(1, 2, 2, 4)),
            Err(Error::Singular)
        );
    }

    /// Independent span membership check: is `v` an integer combination of
    /// the columns of `t`?
    fn in_span(t: &Mat2, vx: i64, vy: i64) -> bool {
        let det = t.det();
        // Cramer: solve t * (s1, s2)^t = v exactly.
        let s1 = &t.d * vx - &t.b * vy;
        let s2 = &t.a * vy - &t.c * vx;
        (&s1 % &det).is_zero() && (&s2 % &det).is_zero()
    }

    fn same_span(t1: &Mat2, t2: &Mat2) -> bool {
        // Equal index plus mutual containment of generators.
        t1.det().abs() == t2.det().abs()
            && [(0, t2), (1, t2)].iter().all(|(col, m)| {
                let (vx, vy) = if *col == 0 {
                    (m.a.clone(), m.c.clone())
                } else {
                    (m.b.clone(), m.d.clone())
                };
                use num_traits::ToPrimitive;
                in_span(t1, vx.to_i64().unwrap(), vy.to_i64().unwrap())
            })
    }

    #[test]
    fn hnf_examples() {
        // Frozen from the span-check oracle below: the column span of
        // [[1,1],[-1,2]] contains (3,0) and (2,1) but not (1,1).
        let t = Mat2::from_i64(1, 1, -1, 2);
        let (h, idx) = hnf_canonicalize(&t).unwrap();
        assert_eq!((h.a, h.b, h.d), (bi(3), bi(2), bi(1)));
        assert_eq!(idx, bi(3));
        assert!(in_span(&t, 3, 0) && in_span(&t, 2, 1) && !in_span(&t, 1, 1));

        let (h, idx) = hnf_canonicalize(&Mat2::from_i64(2, 0, 0, 2)).unwrap();
        assert_eq!((h.a, h.b, h.d), (bi(2), bi(0), bi(2)));
        assert_eq!(idx, bi(4));

        let (h, idx) = hnf_canonicalize(&Mat2::from_i64(0, 1, -2, 0)).unwrap();
        assert_eq!((h.a, h.b, h.d), (bi(1), bi(0), bi(2)));
        assert_eq!(idx, bi(2));

        assert_eq!(hnf_canonicalize(&Mat2::from_i64(2, 1, 4, 2)), Err(Error::Singular));
    }

    #[test]
    fn hnf_preserves_span_and_is_idempotent() {
        for (a, b, c, d) in [(1, 1, -1, 2), (0, 1, -2, 0), (5, 3, 2, 4), (-7, 2, 3, -1)] {
            let t = Mat2::from_i64(a, b, c, d);
            let (h, _) = hnf_canonicalize(&t).unwrap();
            assert!(same_span(&t, &h.as_mat2()), "span changed for {t}");
            let (h2, _) = hnf_canonicalize(&h.as_mat2()).unwrap();
            assert_eq!(h, h2);
        }
    }

    #[test]
    fn mn_param_validation_and_e() {
        let p = MNParam::new(bi(3), bi(1), bi(1)).unwrap();
        assert_eq!(p.e(), 1);
        let p = MNParam::new(bi(3), bi(2), bi(1)).unwrap();
        assert_eq!(p.e(), 0);
        let p = MNParam::new(bi(2), bi(1), bi(1)).unwrap();
        assert_eq!(p.e(), 0);
        // boundary m/n = sqrt(3D) is admitted exactly
        assert!(MNParam::new(bi(3), bi(3), bi(1)).is_ok());
        assert!(MNParam::new(bi(3), bi(4), bi(1)).is_err());
        assert!(MNParam::new(bi(3), bi(2), bi(2)).is_err()); // gcd
        assert!(MNParam::new(bi(12), bi(1), bi(1)).is_err()); // squarefree
    }
}
