#![allow(dead_code)]

pub use rand::Rng;
use std::ops::{Range, RangeInclusive};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sigkernel_core::tensor::{level_len, level_offset, tensor_len};
use sigkernel_core::{TimeSeries, TruncTensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_tensor(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> TruncTensor {
    let coeffs = (0..tensor_len(dim, degree))
        .map(|_| rng.sample(StandardNormal))
        .collect();
    TruncTensor::from_coeffs(dim, degree, coeffs).unwrap()
}

/// Gaussian coefficients on level `level` only.
pub fn homogeneous(rng: &mut ChaCha8Rng, dim: usize, degree: usize, level: usize) -> TruncTensor {
    let mut coeffs = vec![0.0; tensor_len(dim, degree)];
    let lo = level_offset(dim, level);
    for c in &mut coeffs[lo..lo + level_len(dim, level)] {
        *c = rng.sample(StandardNormal);
    }
    TruncTensor::from_coeffs(dim, degree, coeffs).unwrap()
}

/// Gaussian tensor with zero scalar slot, scaled down so `exp` stays tame.
pub fn lie_like(rng: &mut ChaCha8Rng, dim: usize, degree: usize, scale: f64) -> TruncTensor {
    let mut coeffs: Vec<f64> = (0..tensor_len(dim, degree))
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    coeffs[0] = 0.0;
    TruncTensor::from_coeffs(dim, degree, coeffs).unwrap()
}

/// Random piecewise-linear path on a uniform grid of `[0, 1]`, with segment
/// count and 1-variation drawn from the given ranges.
pub fn random_path(
    rng: &mut ChaCha8Rng,
    dim: usize,
    segments: RangeInclusive<usize>,
    variation: Range<f64>,
) -> TimeSeries {
    let segments = rng.gen_range(segments);
    let variation = rng.gen_range(variation);
    let steps: Vec<Vec<f64>> = (0..segments)
        .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    let total: f64 = steps
        .iter()
        .map(|s| s.iter().map(|x: &f64| x * x).sum::<f64>().sqrt())
        .sum();
    let mut x = vec![0.0; dim];
    let mut values = vec![x.clone()];
    for s in &steps {
        for (xi, si) in x.iter_mut().zip(s) {
            *xi += si * variation / total;
        }
        values.push(x.clone());
    }
    let times = (0..=segments).map(|i| i as f64 / segments as f64).collect();
    TimeSeries::new(times, values).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
