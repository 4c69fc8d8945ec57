//! Coupled Goursat system for the signature kernel of two piecewise-abelian
//! paths.
//!
//! Alongside the kernel `u(s, t)` the solver carries two tensor-valued
//! adjoint states `φ(s, t)` and `ψ(s, t)` (scalar slot zero) whose low levels
//! force the kernel once the inputs carry information above level 1. On the
//! product partition every cell `[s_i, s_{i+1}] × [t_j, t_{j+1}]` has
//! constant coefficients given by the interval log-signatures `x̂_i`, `ŷ_j`,
//! and is advanced with one explicit step for the adjoints and a four-point
//! predictor-corrector step for the kernel:
//!
//! ```text
//! φ[i+1,j+1] = φ[i,j+1] + u[i,j] x̂ + φ[i,j+1] ⊗ x̂ + L*_{ψ[i,j+1]}(x̂) − ⟨ψ[i,j+1], x̂⟩ 1
//! ψ[i+1,j+1] = ψ[i+1,j] + u[i,j] ŷ + ψ[i+1,j] ⊗ ŷ + L*_{φ[i+1,j]}(ŷ) − ⟨φ[i+1,j], ŷ⟩ 1
//! f(u, φ, ψ) = u ⟨x̂, ŷ⟩ + ⟨φ, R*_{x̂}(ŷ)⟩ + ⟨ψ, R*_{ŷ}(x̂)⟩
//! u^p        = u[i+1,j] + u[i,j+1] − u[i,j] + f[i,j]
//! u[i+1,j+1] = u[i+1,j] + u[i,j+1] − u[i,j] + (f[i,j] + f[i,j+1] + f[i+1,j] + f(u^p, φ[i+1,j+1], ψ[i+1,j+1])) / 4
//! ```
//!
//! The log-signatures are used unscaled, so no step sizes appear: the cell
//! measure `Δs Δt` cancels against the `1/Δs`, `1/Δt` of the diagonal
//! derivatives.
//!
//! The sweep is row-major. Unless the full state is requested only two rows
//! are kept in memory.

use crate::error::{Error, Result};
use crate::path::{build_pab, PiecewiseAbelianPath, TimeSeries};
use crate::tensor::{self, dot, left_adjoint_acc, mul_acc, right_adjoint_acc, TruncTensor};

/// Dense row-major grid indexed by `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }
}

impl<T> Grid<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    fn from_rows(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }
}

/// Kernel and adjoint grids over the `(N_x + 1) × (N_y + 1)` partition nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GoursatState {
    dim: usize,
    degree: usize,
    pub u: Grid<f64>,
    pub phi: Grid<TruncTensor>,
    pub psi: Grid<TruncTensor>,
    filled: Grid<bool>,
}

impl GoursatState {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Advances cell `(i, j)`: fills node `(i+1, j+1)` from `(i, j)`,
    /// `(i, j+1)` and `(i+1, j)` using the interval log-signatures `lx`, `ly`.
    pub fn step(&mut self, i: usize, j: usize, lx: &TruncTensor, ly: &TruncTensor) -> Result<()> {
        if i + 1 >= self.u.rows() || j + 1 >= self.u.cols() {
            return Err(Error::InvalidPartition(format!(
                "cell ({i}, {j}) outside the grid"
            )));
        }
        for t in [lx, ly] {
            if t.dim() != self.dim || t.degree() != self.degree {
                return Err(Error::ShapeMismatch {
                    left_dim: self.dim,
                    left_degree: self.degree,
                    right_dim: t.dim(),
                    right_degree: t.degree(),
                });
            }
        }
        for (a, b) in [(i, j), (i, j + 1), (i + 1, j)] {
            if !*self.filled.get(a, b) {
                return Err(Error::InvalidPartition(format!(
                    "node ({a}, {b}) not yet computed"
                )));
            }
        }
        let mut cell = Cell::new(self.dim, self.degree);
        cell.prepare(lx.coeffs(), ly.coeffs());
        let mut phi_new = vec![0.0; cell.len];
        let mut psi_new = vec![0.0; cell.len];
        let u11 = cell.advance(
            Corners {
                u00: *self.u.get(i, j),
                u01: *self.u.get(i, j + 1),
                u10: *self.u.get(i + 1, j),
                phi00: self.phi.get(i, j).coeffs(),
                psi00: self.psi.get(i, j).coeffs(),
                phi01: self.phi.get(i, j + 1).coeffs(),
                psi01: self.psi.get(i, j + 1).coeffs(),
                phi10: self.phi.get(i + 1, j).coeffs(),
                psi10: self.psi.get(i + 1, j).coeffs(),
            },
            &mut phi_new,
            &mut psi_new,
        );
        *self.u.get_mut(i + 1, j + 1) = u11;
        *self.phi.get_mut(i + 1, j + 1) = TruncTensor::from_coeffs(self.dim, self.degree, phi_new)?;
        *self.psi.get_mut(i + 1, j + 1) = TruncTensor::from_coeffs(self.dim, self.degree, psi_new)?;
        *self.filled.get_mut(i + 1, j + 1) = true;
        Ok(())
    }
}

/// What a solve retained besides the terminal value.
#[derive(Clone, Debug, PartialEq)]
pub enum Retained {
    Full(GoursatState),
    Scalar(Grid<f64>),
}

/// Kernel value at the terminal corner, optionally with the solution grids.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSolution {
    pub value: f64,
    pub retained: Option<Retained>,
}

impl KernelSolution {
    pub fn u_grid(&self) -> Option<&Grid<f64>> {
        match &self.retained {
            Some(Retained::Full(s)) => Some(&s.u),
            Some(Retained::Scalar(g)) => Some(g),
            None => None,
        }
    }

    pub fn state(&self) -> Option<&GoursatState> {
        match &self.retained {
            Some(Retained::Full(s)) => Some(s),
            _ => None,
        }
    }
}

fn check_pair(px: &PiecewiseAbelianPath, py: &PiecewiseAbelianPath) -> Result<()> {
    if px.dim() != py.dim() || px.degree() != py.degree() {
        return Err(Error::ShapeMismatch {
            left_dim: px.dim(),
            left_degree: px.degree(),
            right_dim: py.dim(),
            right_degree: py.degree(),
        });
    }
    Ok(())
}

/// Boundary data: `u = 1` on both axes, `φ(s_i, 0) = G^x_i − 1`,
/// `ψ(0, t_j) = G^y_j − 1`, `φ(0, ·) = ψ(·, 0) = 0`.
pub fn init_boundaries(
    px: &PiecewiseAbelianPath,
    py: &PiecewiseAbelianPath,
) -> Result<GoursatState> {
    check_pair(px, py)?;
    let (dim, degree) = (px.dim(), px.degree());
    let rows = px.intervals() + 1;
    let cols = py.intervals() + 1;
    let zero = TruncTensor::zero(dim, degree)?;
    let mut u = Grid::filled(rows, cols, 0.0);
    let mut phi = Grid::filled(rows, cols, zero.clone());
    let mut psi = Grid::filled(rows, cols, zero);
    let mut filled = Grid::filled(rows, cols, false);
    for (i, g) in px.partial_signatures()?.into_iter().enumerate() {
        *u.get_mut(i, 0) = 1.0;
        *phi.get_mut(i, 0) = minus_unit(g);
        *filled.get_mut(i, 0) = true;
    }
    for (j, g) in py.partial_signatures()?.into_iter().enumerate() {
        *u.get_mut(0, j) = 1.0;
        *psi.get_mut(0, j) = minus_unit(g);
        *filled.get_mut(0, j) = true;
    }
    Ok(GoursatState {
        dim,
        degree,
        u,
        phi,
        psi,
        filled,
    })
}

fn minus_unit(g: TruncTensor) -> TruncTensor {
    let (dim, degree) = (g.dim(), g.degree());
    let mut coeffs = g.into_coeffs();
    coeffs[0] = 0.0;
    TruncTensor::from_coeffs(dim, degree, coeffs).expect("shape preserved")
}

/// Node values around one cell: `00 = (i, j)`, `01 = (i, j+1)`, `10 = (i+1, j)`.
struct Corners<'a> {
    u00: f64,
    u01: f64,
    u10: f64,
    phi00: &'a [f64],
    psi00: &'a [f64],
    phi01: &'a [f64],
    psi01: &'a [f64],
    phi10: &'a [f64],
    psi10: &'a [f64],
}

/// Per-cell coefficients derived from one pair of log-signatures.
struct Cell {
    dim: usize,
    degree: usize,
    len: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    xy: f64,
    r_xy: Vec<f64>,
    r_yx: Vec<f64>,
}

impl Cell {
    fn new(dim: usize, degree: usize) -> Self {
        let len = tensor::tensor_len(dim, degree);
        Self {
            dim,
            degree,
            len,
            x: vec![0.0; len],
            y: vec![0.0; len],
            xy: 0.0,
            r_xy: vec![0.0; len],
            r_yx: vec![0.0; len],
        }
    }

    fn prepare(&mut self, x: &[f64], y: &[f64]) {
        self.x.copy_from_slice(x);
        self.y.copy_from_slice(y);
        self.xy = dot(x, y);
        self.r_xy.iter_mut().for_each(|v| *v = 0.0);
        self.r_yx.iter_mut().for_each(|v| *v = 0.0);
        right_adjoint_acc(self.dim, self.degree, x, self.degree, y, &mut self.r_xy);
        right_adjoint_acc(self.dim, self.degree, y, self.degree, x, &mut self.r_yx);
    }

    #[inline]
    fn forcing(&self, u: f64, phi: &[f64], psi: &[f64]) -> f64 {
        u * self.xy + dot(phi, &self.r_xy) + dot(psi, &self.r_yx)
    }

    /// Writes the adjoints at `(i+1, j+1)` and returns the kernel there.
    fn advance(&self, k: Corners<'_>, phi_out: &mut [f64], psi_out: &mut [f64]) -> f64 {
        let (dim, m) = (self.dim, self.degree);

        phi_out.copy_from_slice(k.phi01);
        for (o, xv) in phi_out.iter_mut().zip(&self.x) {
            *o += k.u00 * xv;
        }
        mul_acc(dim, m, k.phi01, &self.x, phi_out);
        left_adjoint_acc(dim, m, k.psi01, m, &self.x, phi_out);
        // the scalar slot of L*_ψ(x̂) is ⟨ψ, x̂⟩, cancelled by the −⟨ψ, x̂⟩ 1 term
        phi_out[0] = 0.0;

        psi_out.copy_from_slice(k.psi10);
        for (o, yv) in psi_out.iter_mut().zip(&self.y) {
            *o += k.u00 * yv;
        }
        mul_acc(dim, m, k.psi10, &self.y, psi_out);
        left_adjoint_acc(dim, m, k.phi10, m, &self.y, psi_out);
        psi_out[0] = 0.0;

        let base = k.u10 + k.u01 - k.u00;
        let f1 = self.forcing(k.u00, k.phi00, k.psi00);
        let f2 = self.forcing(k.u01, k.phi01, k.psi01);
        let f3 = self.forcing(k.u10, k.phi10, k.psi10);
        let predictor = base + f1;
        let f4 = self.forcing(predictor, phi_out, psi_out);
        base + 0.25 * (f1 + f2 + f3 + f4)
    }
}

fn scalar_free(g: &TruncTensor) -> impl Iterator<Item = f64> + '_ {
    g.coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 { 0.0 } else { c })
}

/// Solves the coupled system over the product partition of `px` and `py`
/// and returns `u` at the terminal corner. With `keep_state` the full
/// `(u, φ, ψ)` grids are returned as well.
pub fn solve(
    px: &PiecewiseAbelianPath,
    py: &PiecewiseAbelianPath,
    keep_state: bool,
) -> Result<KernelSolution> {
    check_pair(px, py)?;
    let (nx, ny) = (px.intervals(), py.intervals());
    if keep_state {
        let mut state = init_boundaries(px, py)?;
        for i in 0..nx {
            let lx = px.increments()[i].tensor();
            for j in 0..ny {
                state.step(i, j, lx, py.increments()[j].tensor())?;
            }
            if !state.u.get(i + 1, ny).is_finite() {
                return Err(Error::NonFinite(format!("kernel in row {}", i + 1)));
            }
        }
        return Ok(KernelSolution {
            value: *state.u.get(nx, ny),
            retained: Some(Retained::Full(state)),
        });
    }

    let (dim, degree) = (px.dim(), px.degree());
    let n = tensor::tensor_len(dim, degree);
    let cols = ny + 1;
    let gx = px.partial_signatures()?;
    let gy = py.partial_signatures()?;

    let mut u_prev = vec![1.0; cols];
    let mut phi_prev = vec![0.0; cols * n];
    let mut psi_prev: Vec<f64> = gy.iter().flat_map(scalar_free).collect();
    let mut u_cur = vec![0.0; cols];
    let mut phi_cur = vec![0.0; cols * n];
    let mut psi_cur = vec![0.0; cols * n];
    let mut cell = Cell::new(dim, degree);

    for i in 0..nx {
        u_cur[0] = 1.0;
        for (dst, src) in phi_cur[..n].iter_mut().zip(scalar_free(&gx[i + 1])) {
            *dst = src;
        }
        psi_cur[..n].iter_mut().for_each(|v| *v = 0.0);
        let x = px.increments()[i].tensor().coeffs();
        for j in 0..ny {
            cell.prepare(x, py.increments()[j].tensor().coeffs());
            let (phi_done, phi_rest) = phi_cur.split_at_mut((j + 1) * n);
            let (psi_done, psi_rest) = psi_cur.split_at_mut((j + 1) * n);
            u_cur[j + 1] = cell.advance(
                Corners {
                    u00: u_prev[j],
                    u01: u_prev[j + 1],
                    u10: u_cur[j],
                    phi00: &phi_prev[j * n..(j + 1) * n],
                    psi00: &psi_prev[j * n..(j + 1) * n],
                    phi01: &phi_prev[(j + 1) * n..(j + 2) * n],
                    psi01: &psi_prev[(j + 1) * n..(j + 2) * n],
                    phi10: &phi_done[j * n..],
                    psi10: &psi_done[j * n..],
                },
                &mut phi_rest[..n],
                &mut psi_rest[..n],
            );
        }
        if !u_cur[ny].is_finite() {
            return Err(Error::NonFinite(format!("kernel in row {}", i + 1)));
        }
        std::mem::swap(&mut u_prev, &mut u_cur);
        std::mem::swap(&mut phi_prev, &mut phi_cur);
        std::mem::swap(&mut psi_prev, &mut psi_cur);
    }
    Ok(KernelSolution {
        value: u_prev[ny],
        retained: None,
    })
}

/// Scalar Goursat recursion for level-1 inputs, where the adjoints never
/// reach the kernel. Produces the same `u` as [`solve`] at degree 1.
pub fn solve_order1<X, Y>(
    increments_x: &[X],
    increments_y: &[Y],
    keep_state: bool,
) -> Result<KernelSolution>
where
    X: AsRef<[f64]>,
    Y: AsRef<[f64]>,
{
    if increments_x.is_empty() || increments_y.is_empty() {
        return Err(Error::InvalidPartition(
            "need at least one increment per path".into(),
        ));
    }
    let dim = increments_x[0].as_ref().len();
    for v in increments_x
        .iter()
        .map(AsRef::as_ref)
        .chain(increments_y.iter().map(AsRef::as_ref))
    {
        if v.len() != dim {
            return Err(Error::DimMismatch(dim, v.len()));
        }
    }
    let (nx, ny) = (increments_x.len(), increments_y.len());
    let cols = ny + 1;
    let mut grid = keep_state.then(|| Vec::with_capacity((nx + 1) * cols));
    let mut prev = vec![1.0; cols];
    let mut cur = vec![0.0; cols];
    if let Some(g) = grid.as_mut() {
        g.extend_from_slice(&prev);
    }
    for x in increments_x {
        let x = x.as_ref();
        cur[0] = 1.0;
        for (j, y) in increments_y.iter().enumerate() {
            let c = dot(x, y.as_ref());
            let (u00, u01, u10) = (prev[j], prev[j + 1], cur[j]);
            let base = u10 + u01 - u00;
            let f1 = u00 * c;
            let f2 = u01 * c;
            let f3 = u10 * c;
            let f4 = (base + f1) * c;
            cur[j + 1] = base + 0.25 * (f1 + f2 + f3 + f4);
        }
        if !cur[ny].is_finite() {
            return Err(Error::NonFinite("kernel".into()));
        }
        if let Some(g) = grid.as_mut() {
            g.extend_from_slice(&cur);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(KernelSolution {
        value: prev[ny],
        retained: grid.map(|g| Retained::Scalar(Grid::from_rows(nx + 1, cols, g))),
    })
}

/// Signature kernel of two time series through their degree-`degree`
/// piecewise-abelian approximations on the given partitions.
pub fn kernel(
    ts_x: &TimeSeries,
    ts_y: &TimeSeries,
    degree: usize,
    partition_x: &[f64],
    partition_y: &[f64],
) -> Result<f64> {
    let px = build_pab(ts_x, partition_x, degree)?;
    let py = build_pab(ts_y, partition_y, degree)?;
    Ok(solve(&px, &py, false)?.value)
}
