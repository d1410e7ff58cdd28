//! Zipf popularity model: request sampling and the analytic
//! fraction-served-locally curve.
//!
//! Under a Zipf law the `r`-th most popular of `N` files draws requests
//! proportional to `r^-alpha`. When a group holds knowledge of the top
//! `coverage * N` files, the fraction of requests it can answer locally is
//! the ratio of partial to total power sums; [`fraction_served`] evaluates
//! it and [`figure2_curve`] tabulates it over a grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkloadError {
    #[error("invalid workload parameter: {0}")]
    Parameter(String),
}

/// Ranked file-popularity model: rank `r` in `1..=n_files` is drawn with
/// probability `r^-alpha / sum_j j^-alpha`.
///
/// Immutable; every sampling stream obtained from it owns its RNG state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfWorkload {
    alpha: f64,
    n_files: u64,
    seed: u64,
}

impl ZipfWorkload {
    pub fn new(alpha: f64, n_files: u64, seed: u64) -> Result<Self, WorkloadError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(WorkloadError::Parameter(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if n_files == 0 {
            return Err(WorkloadError::Parameter("n_files must be >= 1".into()));
        }
        Ok(ZipfWorkload {
            alpha,
            n_files,
            seed,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_files(&self) -> u64 {
        self.n_files
    }

    /// A fresh sampling stream; streams from the same workload are
    /// identical, so repeated calls replay the same rank sequence.
    pub fn sampler(&self) -> ZipfSampler {
        ZipfSampler::new(self)
    }

    /// The first `count` ranks of the workload's stream.
    pub fn sample_n(&self, count: usize) -> Vec<u64> {
        let mut sampler = self.sampler();
        (0..count).map(|_| sampler.next_rank()).collect()
    }
}

/// Inverse-CDF sampler over a precomputed cumulative table.
#[derive(Debug, Clone)]
pub struct ZipfSampler {
    /// cumulative[r - 1] = sum_{j=1}^{r} j^-alpha, ascending accumulation.
    cumulative: Vec<f64>,
    rng: ChaCha8Rng,
}

impl ZipfSampler {
    fn new(workload: &ZipfWorkload) -> Self {
        let mut cumulative = Vec::with_capacity(workload.n_files as usize);
        let mut total = 0.0;
        for rank in 1..=workload.n_files {
            total += (rank as f64).powf(-workload.alpha);
            cumulative.push(total);
        }
        ZipfSampler {
            cumulative,
            rng: ChaCha8Rng::seed_from_u64(workload.seed),
        }
    }

    /// Next i.i.d. rank in `1..=n_files`.
    pub fn next_rank(&mut self) -> u64 {
        let total = *self.cumulative.last().expect("table is non-empty");
        let u: f64 = self.rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        (idx as u64 + 1).min(self.cumulative.len() as u64)
    }
}

/// Fraction of requests the top `coverage` slice of the catalog absorbs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ServedFraction {
    pub coverage: f64,
    pub fraction_served: f64,
}

/// With `C = floor(coverage * n_files)` most-popular files known locally,
/// the served fraction is `sum_{r<=C} r^-alpha / sum_{r<=N} r^-alpha`
/// (0 when `C` is 0, 1 at full coverage). Non-decreasing in coverage and,
/// below full coverage, in alpha.
pub fn fraction_served(
    alpha: f64,
    n_files: u64,
    coverage: f64,
) -> Result<ServedFraction, WorkloadError> {
    if !(0.0..=1.0).contains(&coverage) {
        return Err(WorkloadError::Parameter(format!(
            "coverage must be in [0, 1], got {coverage}"
        )));
    }
    let workload = ZipfWorkload::new(alpha, n_files, 0)?;
    let covered = ((coverage * n_files as f64).floor() as u64).min(n_files);
    let mut partial = 0.0;
    let mut total = 0.0;
    for rank in 1..=n_files {
        let weight = (rank as f64).powf(-workload.alpha);
        total += weight;
        if rank <= covered {
            partial += weight;
        }
    }
    Ok(ServedFraction {
        coverage,
        fraction_served: partial / total,
    })
}

/// One `(alpha, coverage, fraction_served)` row of the served-locally curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub alpha: f64,
    pub coverage: f64,
    pub fraction_served: f64,
}

/// Tabulates [`fraction_served`] for every `(alpha, coverage)` combination,
/// rows in grid order (alpha-major).
pub fn figure2_curve(
    alphas: &[f64],
    n_files: u64,
    coverage_grid: &[f64],
) -> Result<Vec<CurveRow>, WorkloadError> {
    if alphas.is_empty() || coverage_grid.is_empty() {
        return Err(WorkloadError::Parameter(
            "alpha list and coverage grid must be non-empty".into(),
        ));
    }
    let mut rows = Vec::with_capacity(alphas.len() * coverage_grid.len());
    for &alpha in alphas {
        for &coverage in coverage_grid {
            let served = fraction_served(alpha, n_files, coverage)?;
            rows.push(CurveRow {
                alpha,
                coverage,
                fraction_served: served.fraction_served,
            });
        }
    }
    Ok(rows)
}

/// Writes curve rows as CSV with header `alpha,coverage,fraction_served`.
pub fn write_curve_csv<W: std::io::Write>(rows: &[CurveRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "alpha,coverage,fraction_served")?;
    for row in rows {
        writeln!(out, "{},{},{}", row.alpha, row.coverage, row.fraction_served)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Harmonic-style power sum, the independent oracle for the formulas.
    fn power_sum(n: u64, alpha: f64) -> f64 {
        (1..=n).map(|r| (r as f64).powf(-alpha)).sum()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ZipfWorkload::new(-0.1, 10, 0).is_err());
        assert!(ZipfWorkload::new(f64::NAN, 10, 0).is_err());
        assert!(ZipfWorkload::new(1.0, 0, 0).is_err());
        assert!(fraction_served(1.0, 10, -0.1).is_err());
        assert!(fraction_served(1.0, 10, 1.1).is_err());
    }

    #[test]
    fn single_file_always_rank_one() {
        let w = ZipfWorkload::new(1.2, 1, 9).unwrap();
        assert!(w.sample_n(1000).iter().all(|&r| r == 1));
    }

    #[test]
    fn uniform_limit_at_alpha_zero() {
        let n = 10u64;
        let samples = 100_000usize;
        let w = ZipfWorkload::new(0.0, n, 5).unwrap();
        let mut counts = vec![0u64; n as usize];
        for rank in w.sample_n(samples) {
            counts[(rank - 1) as usize] += 1;
        }
        let p = 1.0 / n as f64;
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        for (rank, &count) in counts.iter().enumerate() {
            let freq = count as f64 / samples as f64;
            assert!(
                (freq - p).abs() <= 3.0 * se,
                "rank {}: freq {freq}",
                rank + 1
            );
        }
    }

    #[test]
    fn top_rank_frequency_matches_harmonic_sum() {
        let n = 1000u64;
        let samples = 1_000_000usize;
        let w = ZipfWorkload::new(1.0, n, 11).unwrap();
        let hits = w.sample_n(samples).iter().filter(|&&r| r == 1).count();
        let p = 1.0 / power_sum(n, 1.0);
        assert!((p - 0.13359213049244018).abs() < 1e-12);
        let freq = hits as f64 / samples as f64;
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        assert!((freq - p).abs() <= 3.0 * se, "freq {freq}, p {p}");
    }

    #[test]
    fn identical_seeds_identical_streams() {
        let w = ZipfWorkload::new(0.9, 500, 77).unwrap();
        assert_eq!(w.sample_n(2000), w.sample_n(2000));
        let other = ZipfWorkload::new(0.9, 500, 78).unwrap();
        assert_ne!(w.sample_n(2000), other.sample_n(2000));
    }

    #[test]
    fn full_coverage_serves_everything() {
        let served = fraction_served(1.3, 1000, 1.0).unwrap();
        assert_eq!(served.fraction_served, 1.0);
        let none = fraction_served(1.3, 1000, 0.0).unwrap();
        assert_eq!(none.fraction_served, 0.0);
    }

    #[test]
    fn alpha_zero_is_proportional_coverage() {
        let n = 1000u64;
        for coverage in [0.1, 0.25, 0.5, 0.9] {
            let served = fraction_served(0.0, n, coverage).unwrap();
            let expected = (coverage * n as f64).floor() / n as f64;
            assert!((served.fraction_served - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn group_serves_68_percent_at_one_percent_coverage() {
        let served = fraction_served(1.0, 1_000_000, 0.01).unwrap();
        assert!(
            (served.fraction_served - 0.680).abs() <= 0.005,
            "fraction {}",
            served.fraction_served
        );
        // Cross-check against the direct partial-sum oracle.
        let oracle = power_sum(10_000, 1.0) / power_sum(1_000_000, 1.0);
        assert!((served.fraction_served - oracle).abs() < 1e-12);
    }

    #[test]
    fn fraction_monotone_in_coverage_and_alpha() {
        let n = 10_000u64;
        let coverages = [0.0, 0.01, 0.05, 0.1, 0.3, 0.7, 1.0];
        let alphas = [0.0, 0.5, 0.65, 0.85, 1.0, 1.5];
        for &alpha in &alphas {
            let mut prev = -1.0;
            for &coverage in &coverages {
                let f = fraction_served(alpha, n, coverage).unwrap().fraction_served;
                assert!(f >= prev, "alpha {alpha}, coverage {coverage}");
                prev = f;
            }
        }
        for &coverage in &coverages[1..coverages.len() - 1] {
            let mut prev = -1.0;
            for &alpha in &alphas {
                let f = fraction_served(alpha, n, coverage).unwrap().fraction_served;
                assert!(f >= prev, "alpha {alpha}, coverage {coverage}");
                prev = f;
            }
        }
    }

    #[test]
    fn sampling_consistent_with_fraction_served() {
        let (alpha, n, coverage) = (0.8, 2000u64, 0.05);
        let covered = (coverage * n as f64).floor() as u64;
        let samples = 200_000usize;
        let w = ZipfWorkload::new(alpha, n, 23).unwrap();
        let local = w.sample_n(samples).iter().filter(|&&r| r <= covered).count();
        let expected = fraction_served(alpha, n, coverage).unwrap().fraction_served;
        let freq = local as f64 / samples as f64;
        let se = (expected * (1.0 - expected) / samples as f64).sqrt();
        assert!(
            (freq - expected).abs() <= 3.0 * se,
            "freq {freq}, expected {expected}"
        );
    }

    #[test]
    fn curve_rows_in_grid_order_and_monotone() {
        let rows = figure2_curve(&[0.65, 0.85], 10_000, &[0.0, 0.01, 0.1, 1.0]).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].fraction_served, 0.0);
        assert_eq!(rows[3].fraction_served, 1.0);
        for pair in rows.chunks(4) {
            for w in pair.windows(2) {
                assert!(w[1].fraction_served >= w[0].fraction_served);
            }
        }
        assert!(figure2_curve(&[], 10, &[0.1]).is_err());
        assert!(figure2_curve(&[1.0], 10, &[]).is_err());
    }

    #[test]
    fn curve_csv_schema() {
        let rows = figure2_curve(&[1.0], 100, &[0.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("alpha,coverage,fraction_served"));
        assert_eq!(lines.next(), Some("1,0,0"));
        assert_eq!(lines.next(), Some("1,1,1"));
    }
}
