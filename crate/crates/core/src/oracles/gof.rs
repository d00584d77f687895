//! Pearson chi-square goodness-of-fit and related calibration statistics.

use crate::error::{Error, Result};
use crate::polygon::PlanePolygon;
use crate::projective::PlanePoint;

use super::special::chi_square_sf;

/// Smallest expected count per bin for the chi-square approximation.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinCount {
    pub expected: f64,
    pub observed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub bins: Vec<BinCount>,
}

/// Bins `samples` into `bins` (first containing bin wins) and tests the
/// counts against `masses`, which are renormalized to sum to one.
pub fn chi_square_gof(
    samples: &[PlanePoint],
    bins: &[PlanePolygon],
    masses: &[f64],
) -> Result<GofReport> {
    if bins.len() != masses.len() {
        return Err(Error::InvalidBinning(format!(
            "{} bins but {} masses",
            bins.len(),
            masses.len()
        )));
    }
    let mut observed = vec![0u64; bins.len()];
    for (k, &x) in samples.iter().enumerate() {
        let bin = bins.iter().position(|b| b.contains(x)).ok_or_else(|| {
            Error::InvalidBinning(format!(
                "sample {k} at ({}, {}) falls in no bin",
                x.x1(),
                x.x2()
            ))
        })?;
        observed[bin] += 1;
    }
    chi_square_counts(&observed, masses)
}

/// Pearson test of raw counts against bin probabilities.
pub fn chi_square_counts(observed: &[u64], masses: &[f64]) -> Result<GofReport> {
    if observed.len() != masses.len() || observed.len() < 2 {
        return Err(Error::InvalidBinning(format!(
            "need matching counts and masses for at least 2 bins, got {} and {}",
            observed.len(),
            masses.len()
        )));
    }
    if masses.iter().any(|&m| !(m >= 0.0 && m.is_finite())) {
        return Err(Error::InvalidBinning(
            "bin masses must be finite and non-negative".into(),
        ));
    }
    let total_mass: f64 = masses.iter().sum();
    let n: u64 = observed.iter().sum();
    let mut bins = Vec::with_capacity(observed.len());
    let mut statistic = 0.0;
    for (i, (&o, &m)) in observed.iter().zip(masses).enumerate() {
        let expected = n as f64 * m / total_mass;
        if expected.is_nan() || expected < MIN_EXPECTED_COUNT {
            return Err(Error::InvalidBinning(format!(
                "bin {i} expects {expected:.3} samples, below {MIN_EXPECTED_COUNT}"
            )));
        }
        let d = o as f64 - expected;
        statistic += d * d / expected;
        bins.push(BinCount {
            expected,
            observed: o,
        });
    }
    let dof = observed.len() - 1;
    Ok(GofReport {
        statistic,
        dof,
        p_value: chi_square_sf(statistic, dof),
        bins,
    })
}

/// Chi-square test that two count vectors over the same bins come from the
/// same distribution (2×k contingency table). Returns `(statistic, dof, p)`.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> Result<(f64, usize, f64)> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InvalidBinning(
            "count vectors must match and have ≥ 2 bins".into(),
        ));
    }
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let n = na + nb;
    let mut statistic = 0.0;
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        let col = (x + y) as f64;
        let (ea, eb) = (na * col / n, nb * col / n);
        if ea < MIN_EXPECTED_COUNT || eb < MIN_EXPECTED_COUNT {
            return Err(Error::InvalidBinning(format!(
                "bin {i} expects fewer than 5 samples"
            )));
        }
        statistic += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = a.len() - 1;
    Ok((statistic, dof, chi_square_sf(statistic, dof)))
}

/// Kolmogorov–Smirnov distance between the empirical distribution of
/// `values` and the uniform distribution on `[0, 1]`.
pub fn ks_uniform_distance(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x.clamp(0.0, 1.0);
            ((i + 1) as f64 / n - x).max(x - i as f64 / n)
        })
        .fold(0.0, f64::max)
}
