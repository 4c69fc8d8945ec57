//! Brownian-motion convergence experiment and Gram matrices.
//!
//! Pairs of `d`-dimensional Brownian paths are sampled on a fine uniform grid.
//! The reference kernel is the degree-1 solve on the fine grid itself; each
//! `(degree, factor)` cell of the experiment solves the coupled system on
//! the grid coarsened by `factor` and records the absolute deviation from
//! the reference. The same pairs are reused across all cells.
//!
//! Sampling uses ChaCha8 (`rand_chacha`) seeded through `seed_from_u64`, with
//! Gaussians from `rand_distr::StandardNormal` (ziggurat). Runs are
//! deterministic for a fixed seed regardless of thread scheduling.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goursat::{solve, solve_order1};
use crate::path::{build_pab, every_kth_time, TimeSeries};

/// Parameters of the convergence experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub n_fine: usize,
    pub factors: Vec<usize>,
    pub degrees: Vec<usize>,
    pub repetitions: usize,
    pub horizon: f64,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            n_fine: 1024,
            factors: vec![4, 8, 16, 32, 64],
            degrees: vec![1, 2, 3, 4],
            repetitions: 20,
            horizon: 1.0,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.dim == 0 {
            return bad("dim must be ≥ 1".into());
        }
        if self.n_fine == 0 {
            return bad("n_fine must be ≥ 1".into());
        }
        if self.repetitions == 0 {
            return bad("repetitions must be ≥ 1".into());
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return bad(format!("horizon must be positive, got {}", self.horizon));
        }
        if self.factors.is_empty() || self.degrees.is_empty() {
            return bad("factors and degrees must be non-empty".into());
        }
        if let Some(k) = self
            .factors
            .iter()
            .find(|&&k| k == 0 || !self.n_fine.is_multiple_of(k))
        {
            return bad(format!(
                "factor {k} does not divide n_fine = {}",
                self.n_fine
            ));
        }
        if self.degrees.contains(&0) {
            return bad("degrees must be ≥ 1".into());
        }
        Ok(())
    }
}

/// Mean error of one `(degree, factor)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub degree: usize,
    pub factor: usize,
    pub mean_error: f64,
    /// Standard error of the mean (sample standard deviation over `√R`).
    pub stderr: f64,
    pub errors: Vec<f64>,
}

impl ErrorRecord {
    fn from_errors(degree: usize, factor: usize, errors: Vec<f64>) -> Self {
        let n = errors.len() as f64;
        let mean = errors.iter().sum::<f64>() / n;
        let stderr = if errors.len() > 1 {
            let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Self {
            degree,
            factor,
            mean_error: mean,
            stderr,
            errors,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeds of the two paths in pair `r` of an experiment seeded with `seed`.
pub fn pair_seeds(seed: u64, r: usize) -> (u64, u64) {
    let base = splitmix64(seed ^ splitmix64(r as u64));
    (splitmix64(base), splitmix64(base ^ 0x5DEE_CE66_D1CE_4E5B))
}

/// Brownian motion on `n + 1` uniform points of `[0, horizon]`, started at 0.
pub fn simulate_bm(dim: usize, n: usize, horizon: f64, seed: u64) -> Result<TimeSeries> {
    if n == 0 || dim == 0 {
        return Err(Error::InvalidConfig(
            "simulate_bm needs n ≥ 1 and dim ≥ 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd = (horizon / n as f64).sqrt();
    let mut values = Vec::with_capacity(n + 1);
    let mut x = vec![0.0; dim];
    values.push(x.clone());
    for _ in 0..n {
        for xi in x.iter_mut() {
            let z: f64 = StandardNormal.sample(&mut rng);
            *xi += sd * z;
        }
        values.push(x.clone());
    }
    let times = (0..=n).map(|i| horizon * i as f64 / n as f64).collect();
    TimeSeries::new(times, values)
}

/// Degree-1 solve on the full sample grid.
pub fn reference_value(ts_x: &TimeSeries, ts_y: &TimeSeries) -> Result<f64> {
    if ts_x.dim() != ts_y.dim() {
        return Err(Error::DimMismatch(ts_x.dim(), ts_y.dim()));
    }
    Ok(solve_order1(&ts_x.increments(), &ts_y.increments(), false)?.value)
}

/// Kernel from degree-`degree` approximations on the grid coarsened by `factor`.
pub fn coarse_value(
    ts_x: &TimeSeries,
    ts_y: &TimeSeries,
    degree: usize,
    factor: usize,
) -> Result<f64> {
    for ts in [ts_x, ts_y] {
        if factor == 0 || ts.segments() % factor != 0 {
            return Err(Error::InvalidPartition(format!(
                "factor {factor} does not divide {} segments",
                ts.segments()
            )));
        }
    }
    let px = build_pab(ts_x, &every_kth_time(ts_x, factor)?, degree)?;
    let py = build_pab(ts_y, &every_kth_time(ts_y, factor)?, degree)?;
    if degree == 1 {
        return Ok(solve_order1(&px.level1_increments(), &py.level1_increments(), false)?.value);
    }
    Ok(solve(&px, &py, false)?.value)
}

/// `|reference − coarse|` for one pair.
pub fn error_estimate(
    ts_x: &TimeSeries,
    ts_y: &TimeSeries,
    degree: usize,
    factor: usize,
) -> Result<f64> {
    let reference = reference_value(ts_x, ts_y)?;
    Ok((reference - coarse_value(ts_x, ts_y, degree, factor)?).abs())
}

/// Applies `f` to `0..n`, in parallel when enabled; output order is by index.
fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Simulated pair `r` of the experiment.
pub fn experiment_pair(cfg: &ExperimentConfig, r: usize) -> Result<(TimeSeries, TimeSeries)> {
    let (sx, sy) = pair_seeds(cfg.seed, r);
    Ok((
        simulate_bm(cfg.dim, cfg.n_fine, cfg.horizon, sx)?,
        simulate_bm(cfg.dim, cfg.n_fine, cfg.horizon, sy)?,
    ))
}

/// Runs the experiment; records are ordered by degree, then factor, in the
/// order given by the config.
pub fn convergence_experiment(cfg: &ExperimentConfig) -> Result<Vec<ErrorRecord>> {
    cfg.validate()?;
    let cells: Vec<(usize, usize)> = cfg
        .degrees
        .iter()
        .flat_map(|&m| cfg.factors.iter().map(move |&k| (m, k)))
        .collect();
    let per_pair: Vec<Result<Vec<f64>>> = indexed_map(cfg.repetitions, |r| {
        let (x, y) = experiment_pair(cfg, r)?;
        let reference = reference_value(&x, &y)?;
        cells
            .iter()
            .map(|&(m, k)| Ok((reference - coarse_value(&x, &y, m, k)?).abs()))
            .collect()
    });
    let per_pair = per_pair.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(cells
        .iter()
        .enumerate()
        .map(|(c, &(m, k))| {
            let errors = per_pair.iter().map(|errs| errs[c]).collect();
            ErrorRecord::from_errors(m, k, errors)
        })
        .collect())
}

/// Summary CSV: `degree,factor,mean_error,stderr,pairs`.
pub fn records_csv(records: &[ErrorRecord]) -> String {
    let mut out = String::from("degree,factor,mean_error,stderr,pairs\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.degree,
            r.factor,
            r.mean_error,
            r.stderr,
            r.errors.len()
        ));
    }
    out
}

/// Long-format CSV with one row per pair: `degree,factor,pair,error`.
pub fn records_long_csv(records: &[ErrorRecord]) -> String {
    let mut out = String::from("degree,factor,pair,error\n");
    for r in records {
        for (p, e) in r.errors.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", r.degree, r.factor, p, e));
        }
    }
    out
}

/// How each series in a Gram matrix is partitioned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionRule {
    /// Every `k`-th sample, always including the last one.
    Every(usize),
}

impl PartitionRule {
    pub fn partition(&self, ts: &TimeSeries) -> Result<Vec<f64>> {
        match *self {
            PartitionRule::Every(k) => every_kth_time(ts, k),
        }
    }
}

/// Symmetric matrix of pairwise kernels; entries `i ≤ j` are computed and
/// mirrored.
pub fn gram_matrix(
    dataset: &[TimeSeries],
    degree: usize,
    rule: PartitionRule,
) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = dataset.first() {
        if let Some(ts) = dataset.iter().find(|ts| ts.dim() != first.dim()) {
            return Err(Error::DimMismatch(first.dim(), ts.dim()));
        }
    }
    let paths = dataset
        .iter()
        .map(|ts| build_pab(ts, &rule.partition(ts)?, degree))
        .collect::<Result<Vec<_>>>()?;
    let n = paths.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values = indexed_map(pairs.len(), |p| {
        let (i, j) = pairs[p];
        solve(&paths[i], &paths[j], false).map(|s| s.value)
    });
    let mut gram = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        gram[i][j] = v;
        gram[j][i] = v;
    }
    Ok(gram)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    if n == 0 {
        return f64::INFINITY;
    }
    let m = DMatrix::from_fn(n, n, |i, j| matrix[i][j]);
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
