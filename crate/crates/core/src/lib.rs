//! Signature kernels of multivariate time series.
//!
//! Paths are lifted to piecewise-abelian (log-linear) rough paths of a chosen
//! Lie degree, and the kernel is obtained as the first component of a coupled
//! Goursat system whose extra unknowns live in the truncated tensor algebra.
//! Degree 1 reduces to the classical scalar Goursat problem for piecewise
//! linear paths.
//!
//! ```
//! use sigkernel_core::{kernel, TimeSeries};
//!
//! let x = TimeSeries::from_points(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
//! let y = TimeSeries::from_points(vec![vec![0.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]).unwrap();
//! let k = kernel(&x, &y, 2, x.times(), y.times()).unwrap();
//! assert!(k > 1.0);
//! ```

pub mod error;
pub mod goursat;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod path;
pub mod tensor;

pub use error::{Error, Result};
pub use goursat::{
    init_boundaries, kernel, solve, solve_order1, GoursatState, Grid, KernelSolution, Retained,
};
pub use path::{
    build_pab, chen_signature, every_kth_time, full_signature, log_signature, segment_signature,
    LieIncrement, PiecewiseAbelianPath, TimeSeries,
};
pub use tensor::{index_to_word, word_index, TruncTensor, Word};
