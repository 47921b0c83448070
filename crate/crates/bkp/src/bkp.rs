//! The binomial model: posterior field, prediction with credible
//! intervals, posterior simulation, and loss-tuned fitting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design::{normalize_inputs, InputBounds};
use crate::engine::TrainingBlock;
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::matrix::Matrix;
use crate::numerics::{beta_quantile, sample_beta, RngStream};
use crate::priors::PriorSpec;
use crate::tuning::{self, LossKind, MultistartOutcome, OptimizerConfig};

/// Binomial observations: `y[i]` successes out of `m[i]` trials at input
/// row `i`. Duplicate input rows are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BkpDataset {
    x: Matrix,
    bounds: InputBounds,
    y: Vec<u64>,
    m: Vec<u64>,
}

impl BkpDataset {
    pub fn new(x: Matrix, bounds: InputBounds, y: Vec<u64>, m: Vec<u64>) -> Result<Self> {
        if x.n_rows() == 0 {
            return Err(Error::Data("dataset must contain at least one observation".into()));
        }
        if x.n_cols() != bounds.dim() {
            return Err(Error::Dimension(format!(
                "inputs have {} columns, bounds have {}",
                x.n_cols(),
                bounds.dim()
            )));
        }
        if y.len() != x.n_rows() || m.len() != x.n_rows() {
            return Err(Error::Dimension(format!(
                "expected {} responses, got y: {}, m: {}",
                x.n_rows(),
                y.len(),
                m.len()
            )));
        }
        for (i, (&yi, &mi)) in y.iter().zip(&m).enumerate() {
            if mi == 0 {
                return Err(Error::Data(format!("row {}: trial count m must be >= 1", i + 1)));
            }
            if yi > mi {
                return Err(Error::Data(format!(
                    "row {}: successes y={yi} exceed trials m={mi}",
                    i + 1
                )));
            }
        }
        Ok(Self { x, bounds, y, m })
    }

    pub fn n(&self) -> usize {
        self.x.n_rows()
    }

    pub fn d(&self) -> usize {
        self.x.n_cols()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn bounds(&self) -> &InputBounds {
        &self.bounds
    }

    pub fn y(&self) -> &[u64] {
        &self.y
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    /// True when every observation is a single Bernoulli trial; labels are
    /// only emitted in that case.
    pub fn all_unit_trials(&self) -> bool {
        self.m.iter().all(|&m| m == 1)
    }

    /// Two-column success/failure counts; the engine representation.
    pub(crate) fn count_matrix(&self) -> Matrix {
        let rows: Vec<Vec<f64>> =
            self.y.iter().zip(&self.m).map(|(&y, &m)| vec![y as f64, (m - y) as f64]).collect();
        Matrix::from_rows(&rows).expect("count rows are rectangular")
    }
}

/// Posterior summary at one query point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub alpha_n: f64,
    pub beta_n: f64,
    pub mean: f64,
    pub variance: f64,
    pub lower: f64,
    pub upper: f64,
    /// Hard classification, present only when the training data are all
    /// unit trials: 1 iff mean strictly exceeds the threshold.
    pub label: Option<u8>,
}

/// Posterior draws for a batch of query points (one row per point), plus
/// thresholded labels when requested on unit-trial models.
#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub draws: Matrix,
    pub labels: Option<Vec<Vec<u8>>>,
}

/// A fitted binomial model. Immutable once constructed; the training inputs
/// are stored normalized to the unit hypercube with the original bounds
/// retained for raw-scale queries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedBkp {
    data: BkpDataset,
    kernel: KernelSpec,
    prior: PriorSpec,
    loss_kind: LossKind,
    loss_min: f64,
    theta_was_user_fixed: bool,
    seed: u64,
}

/// Fit a binomial model: normalize the inputs, then either evaluate the
/// loss at a user-fixed length scale or tune the log10 scales by LHD
/// multi-start bounded quasi-Newton search.
pub fn fit_bkp(
    data: BkpDataset,
    kernel_family: KernelFamily,
    prior: PriorSpec,
    loss_kind: LossKind,
    n_multi_start: Option<usize>,
    theta_fixed: Option<&[f64]>,
    seed: u64,
) -> Result<FittedBkp> {
    prior.validate_binomial()?;
    let d = data.d();
    let x_norm = normalize_inputs(data.x(), data.bounds())?;
    let normalized =
        BkpDataset { x: x_norm.clone(), bounds: data.bounds.clone(), y: data.y, m: data.m };
    let block = TrainingBlock::new(x_norm, normalized.count_matrix());

    let objective =
        |gamma: &[f64]| tuning::objective_on_block(&block, &prior, kernel_family, gamma, loss_kind);

    let (gamma, raw_loss, user_fixed) = match theta_fixed {
        Some(theta) => {
            let gamma = gamma_from_theta(theta, d)?;
            let loss = objective(&gamma);
            (gamma, loss, true)
        }
        None => {
            let outcome = optimize(&objective, d, n_multi_start, seed)?;
            (outcome.gamma, outcome.loss, false)
        }
    };

    // The engine's Brier objective sums both class deviations; the binomial
    // score counts each point once.
    let loss_min = match loss_kind {
        LossKind::Brier => raw_loss / 2.0,
        LossKind::LogLoss => raw_loss,
    };

    Ok(FittedBkp {
        data: normalized,
        kernel: KernelSpec::new(kernel_family, gamma)?,
        prior,
        loss_kind,
        loss_min,
        theta_was_user_fixed: user_fixed,
        seed,
    })
}

pub(crate) fn gamma_from_theta(theta: &[f64], d: usize) -> Result<Vec<f64>> {
    let expanded: Vec<f64> = match theta.len() {
        1 => vec![theta[0]; d],
        n if n == d => theta.to_vec(),
        n => return Err(Error::Dimension(format!("theta has {n} entries, expected 1 or {d}"))),
    };
    if expanded.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::Domain(format!("theta must be positive and finite, got {theta:?}")));
    }
    Ok(expanded.iter().map(|t| t.log10()).collect())
}

pub(crate) fn optimize<F>(
    objective: &F,
    d: usize,
    n_multi_start: Option<usize>,
    seed: u64,
) -> Result<MultistartOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut config = OptimizerConfig::for_dimension(d);
    if let Some(n) = n_multi_start {
        if n == 0 {
            return Err(Error::Domain("n_multi_start must be >= 1".into()));
        }
        config = config.with_n_starts(n);
    }
    let mut rng = RngStream::new(seed, 0);
    tuning::multistart_optimize(objective, d, &config, &mut rng)
}

impl FittedBkp {
    /// Posterior shape parameters at a raw-scale query point.
    pub fn posterior_at(&self, x: &[f64]) -> Result<(f64, f64)> {
        let xq = self.data.bounds.normalize_point(x, 0)?;
        let block = self.block();
        let alpha = block.posterior_alpha(&self.prior, &self.kernel, &xq);
        Ok((alpha[0], alpha[1]))
    }

    /// Posterior summaries over a batch of raw-scale query points.
    pub fn predict(
        &self,
        xnew: &Matrix,
        ci_level: f64,
        threshold: f64,
    ) -> Result<Vec<PosteriorSummary>> {
        if !(ci_level > 0.0 && ci_level < 1.0) {
            return Err(Error::Domain(format!("ci_level must lie in (0, 1), got {ci_level}")));
        }
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::Domain(format!("threshold must lie in (0, 1), got {threshold}")));
        }
        let queries = normalize_inputs(xnew, &self.data.bounds)?;
        let block = self.block();
        let emit_labels = self.data.all_unit_trials();
        let lo_p = (1.0 - ci_level) / 2.0;
        let hi_p = (1.0 + ci_level) / 2.0;
        (0..queries.n_rows())
            .into_par_iter()
            .map(|i| {
                let alpha = block.posterior_alpha(&self.prior, &self.kernel, queries.row(i));
                summarize(alpha[0], alpha[1], lo_p, hi_p, emit_labels.then_some(threshold))
            })
            .collect()
    }

    /// Independent Beta draws from the posterior at each query point; draws
    /// for point `j` come from substream `j` of `rng`, so batches are
    /// reproducible regardless of evaluation order.
    pub fn simulate(
        &self,
        xnew: &Matrix,
        n_sim: usize,
        threshold: Option<f64>,
        rng: &RngStream,
    ) -> Result<SimulationResult> {
        if n_sim == 0 {
            return Err(Error::Domain("n_sim must be >= 1".into()));
        }
        if let Some(t) = threshold {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Domain(format!("threshold must lie in (0, 1), got {t}")));
            }
        }
        let queries = normalize_inputs(xnew, &self.data.bounds)?;
        let block = self.block();
        let rows: Vec<Vec<f64>> = (0..queries.n_rows())
            .into_par_iter()
            .map(|j| {
                let alpha = block.posterior_alpha(&self.prior, &self.kernel, queries.row(j));
                let mut stream = rng.substream(j as u64);
                (0..n_sim)
                    .map(|_| sample_beta(alpha[0], alpha[1], &mut stream))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let draws = Matrix::from_rows(&rows)?;
        let labels = match threshold {
            Some(t) if self.data.all_unit_trials() => Some(
                rows.iter().map(|row| row.iter().map(|&v| u8::from(v > t)).collect()).collect(),
            ),
            _ => None,
        };
        Ok(SimulationResult { draws, labels })
    }

    /// Human-readable fit report.
    pub fn summary(&self) -> String {
        let theta: Vec<String> = self.kernel.theta().iter().map(|t| format!("{t:.4}")).collect();
        let line = "-".repeat(50);
        let how = if self.theta_was_user_fixed {
            "Kernel parameters were user-specified (no optimization)."
        } else {
            "Kernel parameters were obtained by optimization."
        };
        format!(
            "{line}\n           Beta Kernel Process (BKP) Model        \n{line}\n\
             Number of observations (n):  {}\n\
             Input dimensionality (d):    {}\n\
             Kernel type:                 {}\n\
             Loss function used:          {}\n\
             Optimized kernel parameters: {}\n\
             Minimum achieved loss:       {:.5}\n\
             {how}\n\nPrior specification:\n  {}\n{line}",
            self.data.n(),
            self.data.d(),
            self.kernel.family,
            self.loss_kind,
            theta.join(", "),
            self.loss_min,
            self.prior.describe(2),
        )
    }

    fn block(&self) -> TrainingBlock {
        TrainingBlock::new(self.data.x.clone(), self.data.count_matrix())
    }

    /// Structural checks for models deserialized from disk, where the
    /// constructor validation has been bypassed.
    pub(crate) fn validate(&self) -> Result<()> {
        BkpDataset::new(
            self.data.x.clone(),
            self.data.bounds.clone(),
            self.data.y.clone(),
            self.data.m.clone(),
        )?;
        if self.data.x.data().iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("model file contains non-finite training inputs".into()));
        }
        KernelSpec::new(self.kernel.family, self.kernel.gamma.clone())?;
        if self.kernel.dim() != self.data.d() {
            return Err(Error::Dimension(format!(
                "kernel has {} length scales for {} input dimensions",
                self.kernel.dim(),
                self.data.d()
            )));
        }
        self.prior.validate_binomial()?;
        Ok(())
    }

    pub fn data(&self) -> &BkpDataset {
        &self.data
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn prior(&self) -> &PriorSpec {
        &self.prior
    }

    pub fn gamma_opt(&self) -> &[f64] {
        &self.kernel.gamma
    }

    /// Length scales on the normalized unit-cube input scale.
    pub fn theta_opt(&self) -> Vec<f64> {
        self.kernel.theta()
    }

    pub fn loss_kind(&self) -> LossKind {
        self.loss_kind
    }

    pub fn loss_min(&self) -> f64 {
        self.loss_min
    }

    pub fn theta_was_user_fixed(&self) -> bool {
        self.theta_was_user_fixed
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Shared by BKP prediction and the per-class DKP summaries.
pub(crate) fn summarize(
    alpha: f64,
    beta: f64,
    lo_p: f64,
    hi_p: f64,
    threshold: Option<f64>,
) -> Result<PosteriorSummary> {
    let total = alpha + beta;
    let mean = alpha / total;
    let variance = mean * (1.0 - mean) / (total + 1.0);
    let lower = beta_quantile(lo_p, alpha, beta)?;
    let upper = beta_quantile(hi_p, alpha, beta)?;
    Ok(PosteriorSummary {
        alpha_n: alpha,
        beta_n: beta,
        mean,
        variance,
        lower,
        upper,
        label: threshold.map(|t| u8::from(mean > t)),
    })
}
