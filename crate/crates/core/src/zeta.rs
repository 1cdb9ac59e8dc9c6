//! Coefficient series and real-argument partial sums: the zeta-function of
//! well-rounded sublattices, per-class and total sublattice series, totient
//! and Epstein reference series, the numeric sandwich check, and coefficient
//! growth diagnostics.
//!
//! Coefficients are exact integers; partial-sum evaluation is binary64.
//! Pole orders are never asserted directly, only operationalized as growth
//! diagnostics of partial sums.

use alloc::vec::Vec;

use crate::arith::{phi_sieve, sigma_sieve};
use crate::classes::{zeta_class_partial, ZetaKind};
use crate::lattice::ClassTuple;
use crate::sublattices::{
    enumerate_all_wr, enumerate_similar, raw_epstein_partial, wr_target_classes,
};
use crate::{Error, Result};

/// Integer coefficient sequence `c_1 .. c_N` of a Dirichlet series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSeries {
    coeffs: Vec<u64>,
}

impl CoeffSeries {
    /// Takes `c_1 .. c_N` in order.
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        CoeffSeries { coeffs }
    }

    /// The series with `c_n = sigma(n)`, counting all index-`n` sublattices
    /// of any planar lattice.
    pub fn sigma(n: usize) -> Self {
        let sieve = sigma_sieve(n);
        CoeffSeries {
            coeffs: sieve[1..].to_vec(),
        }
    }

    pub fn horizon(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// `c_n`; zero outside `1..=horizon`.
    pub fn coeff(&self, n: u64) -> u64 {
        if n == 0 || n > self.horizon() {
            0
        } else {
            self.coeffs[(n - 1) as usize]
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `C(n) = sum_{k<=n} c_k`.
    pub fn cumulative(&self, n: u64) -> u64 {
        self.coeffs[..n.min(self.horizon()) as usize]
            .iter()
            .fold(0u64, |acc, &c| acc.checked_add(c).expect("count overflow"))
    }

    /// `sum c_n * n^{-s}` over the horizon; monotone in the horizon for
    /// real `s`.
    pub fn partial_sum(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * libm::pow((i + 1) as f64, -s))
            .sum()
    }
}

/// Coefficients of the zeta-function of well-rounded sublattices:
/// `c_n` counts distinct WR sublattices of index `n`.
pub fn wr_zeta_coeffs(ambient: &ClassTuple, n: u64) -> Result<CoeffSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("horizon must be >= 1"));
    }
    let census = enumerate_all_wr(ambient, n)?;
    let mut coeffs = alloc::vec![0u64; n as usize];
    for (idx, entries) in census {
        coeffs[(idx - 1) as usize] = entries.len() as u64;
    }
    Ok(CoeffSeries::from_coeffs(coeffs))
}

/// A truncated sublattice zeta value: the sum over distinct sublattices and
/// the raw lattice-sum variant that counts each parameter pair once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPartial {
    pub dedup: f64,
    pub raw_epstein: f64,
    /// Set when `s <= 1`, where the full series diverges.
    pub divergence_warning: bool,
}

/// Truncated sum of `index^{-s}` over sublattices of the scaled ambient
/// lattice similar to `target`, for indices `<= n_max`. `dedup` counts
/// distinct sublattices; `raw_epstein` is
/// `(r0*q0/r)^s * sum Q(m, n)^{-s}` over the same index range.
pub fn z_class_partial(
    ambient: &ClassTuple,
    target: &ClassTuple,
    s: f64,
    n_max: u64,
) -> Result<ZPartial> {
    if s <= 0.0 {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    let census = enumerate_similar(ambient, target, n_max)?;
    let dedup = census
        .iter()
        .map(|(idx, entries)| entries.len() as f64 * libm::pow(*idx as f64, -s))
        .sum();
    Ok(ZPartial {
        dedup,
        raw_epstein: raw_epstein_partial(ambient, target, s, n_max)?,
        divergence_warning: s <= 1.0,
    })
}

/// Truncated sum of `index^{-s}` over all WR sublattices of the scaled
/// ambient lattice, via the merged census.
pub fn z_total_partial(ambient: &ClassTuple, s: f64, n_max: u64) -> Result<ZPartial> {
    if s <= 0.0 {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    let census = enumerate_all_wr(ambient, n_max)?;
    let dedup = census
        .iter()
        .map(|(idx, entries)| entries.len() as f64 * libm::pow(*idx as f64, -s))
        .sum();
    let raw = wr_target_classes(ambient, n_max)?
        .iter()
        .map(|t| raw_epstein_partial(ambient, t, s, n_max))
        .sum::<Result<f64>>()?;
    Ok(ZPartial {
        dedup,
        raw_epstein: raw,
        divergence_warning: s <= 1.0,
    })
}

/// `sum_{n<=N} phi(n) * n^{-2s}`, the totient reference series.
pub fn reference_phi_partial(s: f64, n: u64) -> f64 {
    let phi = phi_sieve(n as usize);
    (1..=n as usize)
        .map(|k| phi[k] as f64 * libm::pow(k as f64, -2.0 * s))
        .sum()
}

/// A truncated Epstein-style lattice sum with a rigorous tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsteinPartial {
    pub value: f64,
    /// Upper bound on the sum outside the box: points of sup-norm `k > B`
    /// number `8k` and satisfy `m^2 + D*n^2 >= k^2`, so the tail is at most
    /// `8 * sum_{k>B} k^{1-2s} <= 4 * B^{2-2s} / (s-1)`.
    pub tail_bound: f64,
}

/// `sum (m^2 + D*n^2)^{-s}` over nonzero integer pairs with
/// `max(|m|, |n|) <= box_size`.
pub fn epstein_partial(d: u64, s: f64, box_size: u64) -> Result<EpsteinPartial> {
    if s <= 0.0 {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    let b = box_size as i64;
    let df = d as f64;
    let mut value = 0.0;
    for m in -b..=b {
        for n in -b..=b {
            if m == 0 && n == 0 {
                continue;
            }
            value += libm::pow((m * m) as f64 + df * (n * n) as f64, -s);
        }
    }
    let tail_bound = if s > 1.0 && box_size > 0 {
        4.0 * libm::pow(box_size as f64, 2.0 - 2.0 * s) / (s - 1.0)
    } else {
        f64::INFINITY
    };
    Ok(EpsteinPartial { value, tail_bound })
}

/// Riemann zeta for real `sigma > 1`, by Euler-Maclaurin summation.
pub fn riemann_zeta(sigma: f64) -> f64 {
    let m = 2000u64;
    let mf = m as f64;
    let head: f64 = (1..=m).map(|n| libm::pow(n as f64, -sigma)).sum();
    head + libm::pow(mf, 1.0 - sigma) / (sigma - 1.0) - 0.5 * libm::pow(mf, -sigma)
        + sigma / 12.0 * libm::pow(mf, -sigma - 1.0)
        - sigma * (sigma + 1.0) * (sigma + 2.0) / 720.0 * libm::pow(mf, -sigma - 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SandwichVerdict {
    Pass,
    /// The truncated lower-bound link fell short; expected for small
    /// truncations since the truncated series underestimates.
    Inconclusive,
    Fail,
}

/// Margins of the three-link inequality chain bounding the class
/// zeta-functions between a totient series and a lattice sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub d: u64,
    pub s: f64,
    pub q_max: u64,
    pub box_size: u64,
    /// `(2*sqrt(3D))^{-s} * zeta(2s-1) / zeta(2s)`
    pub lower_ref: f64,
    pub zeta_d_partial: f64,
    pub zeta_m_partial: f64,
    pub epstein: EpsteinPartial,
    /// `zeta_d_partial - lower_ref`; nonnegative once the truncation is
    /// large enough.
    pub margin_lower: f64,
    /// `(2/sqrt(3))^s * zeta_m_partial - zeta_d_partial`; holds term-wise.
    pub margin_mid: f64,
    /// `(2D)^s * epstein_box - zeta_m_partial`.
    pub margin_upper: f64,
    pub verdict: SandwichVerdict,
}

/// Evaluates the inequality chain numerically at one `(D, s)` point.
/// Rejects `s <= 1`.
pub fn sandwich_check(d: u64, s: f64, q_max: u64, box_size: u64) -> Result<SandwichReport> {
    if s <= 1.0 {
        return Err(Error::InvalidParameter("s must exceed 1"));
    }
    let zeta_m = zeta_class_partial(d, s, q_max, ZetaKind::Minimum)?;
    let zeta_d = zeta_class_partial(d, s, q_max, ZetaKind::Determinant)?;
    let epstein = epstein_partial(d, s, box_size)?;
    let lower_ref = libm::pow(2.0 * libm::sqrt(3.0 * d as f64), -s) * riemann_zeta(2.0 * s - 1.0)
        / riemann_zeta(2.0 * s);
    let margin_lower = zeta_d - lower_ref;
    let margin_mid = libm::pow(2.0 / libm::sqrt(3.0), s) * zeta_m - zeta_d;
    let upper_scale = libm::pow(2.0 * d as f64, s);
    let margin_upper = upper_scale * epstein.value - zeta_m;

    let verdict = if margin_mid < 0.0 || margin_upper < -upper_scale * epstein.tail_bound {
        SandwichVerdict::Fail
    } else if margin_lower < 0.0 || margin_upper < 0.0 {
        SandwichVerdict::Inconclusive
    } else {
        SandwichVerdict::Pass
    };
    Ok(SandwichReport {
        d,
        s,
        q_max,
        box_size,
        lower_ref,
        zeta_d_partial: zeta_d,
        zeta_m_partial: zeta_m,
        epstein,
        margin_lower,
        margin_mid,
        margin_upper,
        verdict,
    })
}

/// One checkpoint row of a coefficient-growth report.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: u64,
    pub cumulative: u64,
    pub per_n: f64,
    /// `C(n) / (n * ln n)`; absent at `n = 1`.
    pub per_nlogn: Option<f64>,
    pub per_n2: f64,
    /// `C(2n) / C(n)` when `2n` is within the horizon and `C(n) > 0`.
    pub doubling: Option<f64>,
}

/// Cumulative counts and growth ratios of a coefficient series at the given
/// checkpoints.
pub fn growth_report(series: &CoeffSeries, checkpoints: &[u64]) -> Result<Vec<GrowthRow>> {
    if checkpoints.iter().any(|&n| n == 0 || n > series.horizon()) {
        return Err(Error::InvalidParameter("checkpoints must lie within the horizon"));
    }
    Ok(checkpoints
        .iter()
        .map(|&n| {
            let c = series.cumulative(n);
            let nf = n as f64;
            let cf = c as f64;
            let doubling = (2 * n <= series.horizon() && c > 0)
                .then(|| series.cumulative(2 * n) as f64 / cf);
            GrowthRow {
                n,
                cumulative: c,
                per_n: cf / nf,
                per_nlogn: (n > 1).then(|| cf / (nf * libm::log(nf))),
                per_n2: cf / (nf * nf),
                doubling,
            }
        })
        .collect())
}

/// Classes contributing to the census with their per-class partial sums;
/// used by the reporting front end.
pub fn z_class_breakdown(
    ambient: &ClassTuple,
    s: f64,
    n_max: u64,
) -> Result<Vec<(ClassTuple, ZPartial)>> {
    wr_target_classes(ambient, n_max)?
        .into_iter()
        .map(|t| {
            let z = z_class_partial(ambient, &t, s, n_max)?;
            Ok((t, z))
        })
        .collect()
}
