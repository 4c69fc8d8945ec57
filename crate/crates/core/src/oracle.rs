//! Reference values for checking the PDE solver.
//!
//! These routines deliberately avoid the tensor product and the Goursat
//! machinery: signatures are accumulated segment by segment with an in-place
//! descending update, and the kernel is the plain inner product of the two
//! truncated signatures.

use crate::path::TimeSeries;
use crate::tensor::{level_len, level_offset, tensor_len};

/// Truncated signature of the linear interpolation of `ts`, flat layout.
pub fn direct_signature(ts: &TimeSeries, n: usize) -> Vec<f64> {
    let d = ts.dim();
    let len = tensor_len(d, n);
    let mut sig = vec![0.0; len];
    sig[0] = 1.0;
    let mut powers = vec![0.0; len];
    for seg in 0..ts.segments() {
        let dx = ts.increment(seg);
        // powers[level j] = dx^{⊗j} / j!
        powers[0] = 1.0;
        for j in 1..=n {
            let prev = level_offset(d, j - 1);
            let cur = level_offset(d, j);
            for i in 0..level_len(d, j - 1) {
                let p = powers[prev + i] / j as f64;
                for (l, x) in dx.iter().enumerate() {
                    powers[cur + i * d + l] = p * x;
                }
            }
        }
        // descending so lower levels still hold the old signature
        for k in (1..=n).rev() {
            let out = level_offset(d, k);
            for j in 1..=k {
                let head = level_offset(d, k - j);
                let tail = level_offset(d, j);
                let tail_len = level_len(d, j);
                for i in 0..level_len(d, k - j) {
                    let s = sig[head + i];
                    if s == 0.0 {
                        continue;
                    }
                    for l in 0..tail_len {
                        sig[out + i * tail_len + l] += s * powers[tail + l];
                    }
                }
            }
        }
    }
    sig
}

/// `Σ_{k ≤ n} ⟨S^k(x), S^k(y)⟩` from explicit truncated signatures.
pub fn direct_truncated_kernel(ts_x: &TimeSeries, ts_y: &TimeSeries, n: usize) -> f64 {
    assert_eq!(ts_x.dim(), ts_y.dim(), "series dimensions differ");
    let sx = direct_signature(ts_x, n);
    let sy = direct_signature(ts_y, n);
    sx.iter().zip(&sy).map(|(a, b)| a * b).sum()
}

/// Kernel of two straight segments with `⟨Δx, Δy⟩ = c`, truncated at level
/// `n`: `Σ_{k ≤ n} c^k / (k!)^2`.
pub fn linear_kernel_closed_form(c: f64, n: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        term *= c / (k * k) as f64;
        sum += term;
    }
    sum
}

/// Bound `2 e^c c^{n+1} / (n+1)!` on the truncation error of the kernel for
/// paths of 1-variation at most `c`.
pub fn tail_bound(c: f64, n: usize) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let mut ratio = 1.0;
    for k in 1..=n + 1 {
        ratio *= c / k as f64;
    }
    2.0 * c.exp() * ratio
}

/// Smallest truncation level `≥ min_n` whose tail bound is below `tol`.
pub fn truncation_for(c: f64, tol: f64, min_n: usize) -> usize {
    let mut n = min_n;
    while tail_bound(c, n) >= tol {
        n += 1;
    }
    n
}
