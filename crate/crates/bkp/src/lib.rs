//! Kernel-weighted conjugate posterior estimation of probability surfaces.
//!
//! Given binomial observations (successes out of trials at input locations)
//! the Beta kernel process places a Beta posterior at every query point,
//! with shape parameters accumulated from kernel-weighted successes and
//! failures; the Dirichlet kernel process is the multinomial extension.
//! Everything is closed form: no latent variables, no approximate
//! inference, O(n^2) fitting.
//!
//! Kernel length scales are tuned by minimizing a leave-one-out criterion
//! (Brier score or log-loss) over log10 scales: Latin hypercube starts,
//! bounded quasi-Newton local searches, lowest terminal loss wins.
//!
//! ```
//! use bkp::{fit_bkp, BkpDataset, InputBounds, KernelFamily, LossKind, Matrix, PriorSpec};
//!
//! let x = Matrix::from_rows(&[vec![-1.5], vec![-0.5], vec![0.5], vec![1.5]])?;
//! let bounds = InputBounds::new(vec![-2.0], vec![2.0])?;
//! let data = BkpDataset::new(x, bounds, vec![2, 5, 14, 19], vec![20, 20, 20, 20])?;
//! let model = fit_bkp(
//!     data,
//!     KernelFamily::Gaussian,
//!     PriorSpec::noninformative(),
//!     LossKind::Brier,
//!     None,  // multi-start count: default 10 per dimension
//!     None,  // no fixed length scale: optimize
//!     42,
//! )?;
//! let queries = Matrix::from_rows(&[vec![0.0]])?;
//! let posterior = &model.predict(&queries, 0.95, 0.5)?[0];
//! assert!(posterior.lower <= posterior.mean && posterior.mean <= posterior.upper);
//! # Ok::<(), bkp::Error>(())
//! ```

// Frozen numeric constants keep their full published digits, and negated
// comparisons like `!(x > 0.0)` are deliberate NaN guards.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

mod bkp;
mod dkp;
mod engine;
mod error;
mod matrix;

pub mod design;
pub mod io;
pub mod kernels;
pub mod numerics;
pub mod priors;
pub mod tuning;

pub use bkp::{fit_bkp, BkpDataset, FittedBkp, PosteriorSummary, SimulationResult};
pub use design::InputBounds;
pub use dkp::{fit_dkp, DirichletSummary, DkpDataset, DkpSimulationResult, FittedDkp};
pub use error::{Error, Result};
pub use kernels::{KernelFamily, KernelSpec};
pub use matrix::Matrix;
pub use numerics::RngStream;
pub use priors::{PriorSpec, PriorStrategy};
pub use tuning::LossKind;
