//! Browser bindings for the demo page in `www/`.
//!
//! Strokes arrive from JavaScript as flat `[x0, y0, x1, y1, ...]` arrays
//! sampled at unit time steps.

use sigkernel_core::harness::{coarse_value, reference_value, simulate_bm};
use sigkernel_core::tensor::words;
use sigkernel_core::{
    build_pab, every_kth_time, log_signature, solve, solve_order1, Error, Result, TimeSeries,
};
use wasm_bindgen::prelude::*;

fn stroke(points: &[f64]) -> Result<TimeSeries> {
    if !points.len().is_multiple_of(2) {
        return Err(Error::InvalidSeries("odd number of coordinates".into()));
    }
    TimeSeries::from_points(points.chunks(2).map(|p| p.to_vec()).collect())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Labels `w_1, w_2, w_11, ...` of the non-empty words up to `degree`.
#[wasm_bindgen]
pub fn word_labels(dim: usize, degree: usize) -> Vec<String> {
    words(dim, degree)
        .iter()
        .skip(1)
        .map(|w| w.label(dim))
        .collect()
}

fn stroke_logsig_inner(points: &[f64], degree: usize) -> Result<Vec<f64>> {
    let ts = stroke(points)?;
    let l = log_signature(&ts, (ts.first_time(), ts.last_time()), degree)?;
    Ok(l.tensor().coeffs()[1..].to_vec())
}

/// Log-signature of a whole stroke, scalar slot dropped.
#[wasm_bindgen]
pub fn stroke_logsig(points: &[f64], degree: usize) -> std::result::Result<Vec<f64>, JsError> {
    stroke_logsig_inner(points, degree).map_err(js)
}

/// Kernel solution on the product grid of two strokes.
#[wasm_bindgen]
pub struct Surface {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

#[wasm_bindgen]
impl Surface {
    #[wasm_bindgen(getter)]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[wasm_bindgen(getter)]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major `u` values; the last entry is the kernel.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn kernel(&self) -> f64 {
        *self.values.last().unwrap_or(&f64::NAN)
    }
}

fn kernel_surface_inner(a: &[f64], b: &[f64], degree: usize, every: usize) -> Result<Surface> {
    let (x, y) = (stroke(a)?, stroke(b)?);
    let px = build_pab(&x, &every_kth_time(&x, every)?, degree)?;
    let py = build_pab(&y, &every_kth_time(&y, every)?, degree)?;
    let sol = if degree == 1 {
        solve_order1(&px.level1_increments(), &py.level1_increments(), true)?
    } else {
        solve(&px, &py, true)?
    };
    let grid = sol.u_grid().expect("state was kept");
    Ok(Surface {
        rows: grid.rows(),
        cols: grid.cols(),
        values: grid.as_slice().to_vec(),
    })
}

#[wasm_bindgen]
pub fn kernel_surface(
    a: &[f64],
    b: &[f64],
    degree: usize,
    every: usize,
) -> std::result::Result<Surface, JsError> {
    kernel_surface_inner(a, b, degree, every).map_err(js)
}

fn convergence_curve_inner(
    seed: u32,
    n_fine: usize,
    factors: &[usize],
    max_degree: usize,
) -> Result<Vec<f64>> {
    let seed = seed as u64;
    let x = simulate_bm(2, n_fine, 1.0, 2 * seed)?;
    let y = simulate_bm(2, n_fine, 1.0, 2 * seed + 1)?;
    let reference = reference_value(&x, &y)?;
    let mut out = Vec::with_capacity(max_degree * factors.len());
    for m in 1..=max_degree {
        for &k in factors {
            out.push((coarse_value(&x, &y, m, k)? - reference).abs());
        }
    }
    Ok(out)
}

/// Errors of one Brownian pair against its fine-grid reference, ordered by
/// degree `1..=max_degree` then by factor.
#[wasm_bindgen]
pub fn convergence_curve(
    seed: u32,
    n_fine: usize,
    factors: &[usize],
    max_degree: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    convergence_curve_inner(seed, n_fine, factors, max_degree).map_err(js)
}
