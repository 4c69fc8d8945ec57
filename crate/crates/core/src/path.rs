//! Lifting time series to truncated signatures and piecewise-abelian paths.
//!
//! A time series is read as the piecewise linear path through its samples.
//! The signature of one linear segment is the exponential of its increment,
//! and Chen's identity turns the signature over any window of samples into
//! the ordered product of segment signatures.
//!
//! A [`PiecewiseAbelianPath`] replaces the path on every partition interval
//! by the log-linear path `exp((t - t_i) / (t_{i+1} - t_i) · L_i)`, where
//! `L_i` is the truncated log-signature over that interval.

use crate::error::{Error, Result};
use crate::tensor::{level_len, level_offset, TruncTensor};

/// Samples of a path in `R^d` at strictly increasing times.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidSeries(format!(
                "{} timestamps but {} samples",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidSeries("need at least two samples".into()));
        }
        let dim = values[0].len();
        if dim == 0 {
            return Err(Error::InvalidSeries(
                "samples must have dimension ≥ 1".into(),
            ));
        }
        if let Some(i) = values.iter().position(|v| v.len() != dim) {
            return Err(Error::InvalidSeries(format!(
                "sample {i} has dimension {}, expected {dim}",
                values[i].len()
            )));
        }
        if times
            .iter()
            .chain(values.iter().flatten())
            .any(|x| !x.is_finite())
        {
            return Err(Error::NonFinite("time series entry".into()));
        }
        if let Some(i) = times.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSeries(format!(
                "times not strictly increasing at row {}",
                i + 1
            )));
        }
        Ok(Self { times, values })
    }

    /// Samples at `0, 1, .., n` from a list of points.
    pub fn from_points(values: Vec<Vec<f64>>) -> Result<Self> {
        let times = (0..values.len()).map(|i| i as f64).collect();
        Self::new(times, values)
    }

    pub fn dim(&self) -> usize {
        self.values[0].len()
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Number of linear segments.
    pub fn segments(&self) -> usize {
        self.times.len() - 1
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last_time(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// `x(t_{i+1}) - x(t_i)`.
    pub fn increment(&self, i: usize) -> Vec<f64> {
        self.values[i + 1]
            .iter()
            .zip(&self.values[i])
            .map(|(b, a)| b - a)
            .collect()
    }

    pub fn increments(&self) -> Vec<Vec<f64>> {
        (0..self.segments()).map(|i| self.increment(i)).collect()
    }

    /// Sum of Euclidean segment lengths; the 1-variation of the linear interpolation.
    pub fn one_variation(&self) -> f64 {
        (0..self.segments())
            .map(|i| self.increment(i).iter().map(|x| x * x).sum::<f64>().sqrt())
            .sum()
    }

    /// Position of an exact sample time.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times
            .binary_search_by(|probe| probe.total_cmp(&t))
            .ok()
    }

    fn window_indices(&self, window: (f64, f64)) -> Result<(usize, usize)> {
        let (s, t) = window;
        if s >= t {
            return Err(Error::InvalidPartition(format!(
                "window start {s} ≥ end {t}"
            )));
        }
        let i = self
            .index_of(s)
            .ok_or_else(|| Error::InvalidPartition(format!("{s} is not a sample time")))?;
        let j = self
            .index_of(t)
            .ok_or_else(|| Error::InvalidPartition(format!("{t} is not a sample time")))?;
        Ok((i, j))
    }
}

/// Every `k`-th sample time, always ending at the final sample.
pub fn every_kth_time(ts: &TimeSeries, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidPartition(
            "coarsening factor must be ≥ 1".into(),
        ));
    }
    let mut times: Vec<f64> = ts.times().iter().step_by(k).copied().collect();
    if *times.last().expect("non-empty series") != ts.last_time() {
        times.push(ts.last_time());
    }
    Ok(times)
}

/// Signature of a single linear segment with increment `dx`: level `k` is
/// `dx^{⊗k} / k!`.
pub fn segment_signature(dx: &[f64], degree: usize) -> Result<TruncTensor> {
    let dim = dx.len();
    let mut sig = TruncTensor::unit(dim, degree)?;
    let coeffs = sig.coeffs_mut();
    for k in 1..=degree {
        let prev = level_offset(dim, k - 1);
        let cur = level_offset(dim, k);
        let inv_k = 1.0 / k as f64;
        for i in 0..level_len(dim, k - 1) {
            let p = coeffs[prev + i] * inv_k;
            for (j, d) in dx.iter().enumerate() {
                coeffs[cur + i * dim + j] = p * d;
            }
        }
    }
    Ok(sig)
}

/// Signature between sample indices `start < end`.
pub fn chen_signature_between(
    ts: &TimeSeries,
    start: usize,
    end: usize,
    degree: usize,
) -> Result<TruncTensor> {
    if start >= end || end >= ts.len() {
        return Err(Error::InvalidPartition(format!(
            "sample range {start}..{end} invalid for {} samples",
            ts.len()
        )));
    }
    let mut sig = segment_signature(&ts.increment(start), degree)?;
    for i in start + 1..end {
        sig = sig.mul(&segment_signature(&ts.increment(i), degree)?)?;
    }
    Ok(sig)
}

/// Truncated signature of the linear interpolation over `window = (s, t)`;
/// both ends must be sample times.
pub fn chen_signature(ts: &TimeSeries, window: (f64, f64), degree: usize) -> Result<TruncTensor> {
    let (i, j) = ts.window_indices(window)?;
    chen_signature_between(ts, i, j, degree)
}

/// Truncated signature over the whole series.
pub fn full_signature(ts: &TimeSeries, degree: usize) -> Result<TruncTensor> {
    chen_signature_between(ts, 0, ts.len() - 1, degree)
}

/// Truncated log-signature of one partition interval.
///
/// The tensor holds the unscaled log-signature; divide by the interval length
/// to get the diagonal derivative of the log-linear path.
#[derive(Clone, Debug, PartialEq)]
pub struct LieIncrement {
    tensor: TruncTensor,
    span: (f64, f64),
}

impl LieIncrement {
    pub fn new(tensor: TruncTensor, span: (f64, f64)) -> Result<Self> {
        if tensor.scalar() != 0.0 {
            return Err(Error::ScalarSlot {
                expected: 0.0,
                found: tensor.scalar(),
            });
        }
        if span.0.partial_cmp(&span.1) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidPartition(format!(
                "interval ({}, {}) is empty",
                span.0, span.1
            )));
        }
        Ok(Self { tensor, span })
    }

    pub fn tensor(&self) -> &TruncTensor {
        &self.tensor
    }

    pub fn span(&self) -> (f64, f64) {
        self.span
    }

    /// Constant diagonal derivative on the interval.
    pub fn diagonal_derivative(&self) -> TruncTensor {
        self.tensor.scaled(1.0 / (self.span.1 - self.span.0))
    }
}

/// Truncated log-signature of the series over `window`.
pub fn log_signature(ts: &TimeSeries, window: (f64, f64), degree: usize) -> Result<LieIncrement> {
    let sig = chen_signature(ts, window, degree)?;
    LieIncrement::new(sig.log()?, window)
}

/// Piecewise log-linear approximation of fixed Lie degree on a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseAbelianPath {
    dim: usize,
    degree: usize,
    partition: Vec<f64>,
    increments: Vec<LieIncrement>,
}

impl PiecewiseAbelianPath {
    pub fn new(partition: Vec<f64>, increments: Vec<LieIncrement>) -> Result<Self> {
        if increments.is_empty() || partition.len() != increments.len() + 1 {
            return Err(Error::InvalidPartition(format!(
                "{} partition points for {} increments",
                partition.len(),
                increments.len()
            )));
        }
        let dim = increments[0].tensor.dim();
        let degree = increments[0].tensor.degree();
        for (i, inc) in increments.iter().enumerate() {
            if inc.tensor.dim() != dim || inc.tensor.degree() != degree {
                return Err(Error::ShapeMismatch {
                    left_dim: dim,
                    left_degree: degree,
                    right_dim: inc.tensor.dim(),
                    right_degree: inc.tensor.degree(),
                });
            }
            if inc.span != (partition[i], partition[i + 1]) {
                return Err(Error::InvalidPartition(format!(
                    "increment {i} spans {:?}, partition gives ({}, {})",
                    inc.span,
                    partition[i],
                    partition[i + 1]
                )));
            }
        }
        Ok(Self {
            dim,
            degree,
            partition,
            increments,
        })
    }

    /// Path on `0, 1, .., N` from raw log-signatures.
    pub fn from_log_signatures(tensors: Vec<TruncTensor>) -> Result<Self> {
        let partition: Vec<f64> = (0..=tensors.len()).map(|i| i as f64).collect();
        let increments = tensors
            .into_iter()
            .enumerate()
            .map(|(i, t)| LieIncrement::new(t, (i as f64, (i + 1) as f64)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(partition, increments)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partition(&self) -> &[f64] {
        &self.partition
    }

    pub fn increments(&self) -> &[LieIncrement] {
        &self.increments
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.increments.len()
    }

    /// Level-1 parts of the increments.
    pub fn level1_increments(&self) -> Vec<Vec<f64>> {
        self.increments
            .iter()
            .map(|inc| inc.tensor.level(1).to_vec())
            .collect()
    }

    /// Group elements at the partition points:
    /// `G_0 = 1`, `G_{i+1} = G_i ⊗ exp(L_i)`.
    pub fn partial_signatures(&self) -> Result<Vec<TruncTensor>> {
        let mut out = Vec::with_capacity(self.increments.len() + 1);
        let mut g = TruncTensor::unit(self.dim, self.degree)?;
        out.push(g.clone());
        for inc in &self.increments {
            g = g.mul(&inc.tensor.exp()?)?;
            out.push(g.clone());
        }
        Ok(out)
    }

    /// Splits every interval into `k` equal pieces carrying `L_i / k`. The
    /// log-linear path itself is unchanged.
    pub fn refine(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPartition(
                "refinement factor must be ≥ 1".into(),
            ));
        }
        let mut partition = Vec::with_capacity(self.intervals() * k + 1);
        let mut increments = Vec::with_capacity(self.intervals() * k);
        partition.push(self.partition[0]);
        for inc in &self.increments {
            let (a, b) = inc.span;
            let piece = inc.tensor.scaled(1.0 / k as f64);
            for r in 0..k {
                let s = a + (b - a) * r as f64 / k as f64;
                let t = if r + 1 == k {
                    b
                } else {
                    a + (b - a) * (r + 1) as f64 / k as f64
                };
                partition.push(t);
                increments.push(LieIncrement::new(piece.clone(), (s, t))?);
            }
        }
        Self::new(partition, increments)
    }

    /// Zero-pads every increment to a higher degree.
    pub fn embed(&self, degree: usize) -> Result<Self> {
        let increments = self
            .increments
            .iter()
            .map(|inc| LieIncrement::new(inc.tensor.embed(degree)?, inc.span))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.partition.clone(), increments)
    }
}

/// Piecewise-abelian approximation of `ts` of the given degree. Every
/// partition point must be a sample time and the partition must run from the
/// first to the last sample.
pub fn build_pab(
    ts: &TimeSeries,
    partition: &[f64],
    degree: usize,
) -> Result<PiecewiseAbelianPath> {
    if partition.len() < 2 {
        return Err(Error::InvalidPartition(
            "need at least two partition points".into(),
        ));
    }
    if partition[0] != ts.first_time() || partition[partition.len() - 1] != ts.last_time() {
        return Err(Error::InvalidPartition(
            "partition must start and end at the series endpoints".into(),
        ));
    }
    let idx = partition
        .iter()
        .map(|&t| {
            ts.index_of(t)
                .ok_or_else(|| Error::InvalidPartition(format!("{t} is not a sample time")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = idx.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPartition(format!(
            "partition not strictly increasing at {}",
            ts.times()[w[1]]
        )));
    }
    let increments = idx
        .windows(2)
        .map(|w| {
            let sig = chen_signature_between(ts, w[0], w[1], degree)?;
            LieIncrement::new(sig.log()?, (ts.times()[w[0]], ts.times()[w[1]]))
        })
        .collect::<Result<Vec<_>>>()?;
    PiecewiseAbelianPath::new(partition.to_vec(), increments)
}
