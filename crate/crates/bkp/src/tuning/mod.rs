//! Leave-one-out loss evaluation and multi-start bounded optimization of
//! the kernel log-scales.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bkp::BkpDataset;
use crate::design::{latin_hypercube, normalize_inputs};
use crate::dkp::DkpDataset;
use crate::engine::TrainingBlock;
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::numerics::RngStream;
use crate::priors::PriorSpec;

mod optimizer;

use optimizer::bounded_quasi_newton;

/// Predictions are clamped into [CLAMP, 1 - CLAMP] before taking logs.
const LOG_CLAMP: f64 = 1e-12;

/// Loss criterion for hyperparameter tuning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    Brier,
    LogLoss,
}

impl LossKind {
    pub fn name(&self) -> &'static str {
        match self {
            LossKind::Brier => "brier",
            LossKind::LogLoss => "log_loss",
        }
    }
}

impl std::fmt::Display for LossKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brier" => Ok(LossKind::Brier),
            "log_loss" => Ok(LossKind::LogLoss),
            other => {
                Err(Error::Parse(format!("unknown loss '{other}' (expected brier or log_loss)")))
            }
        }
    }
}

/// Initial-value search region for the log10 length scales: each dimension
/// gets [(log10 d - log10 500) / 2, (log10 d + 2) / 2].
pub fn search_region_omega0(d: usize) -> Vec<(f64, f64)> {
    let log_d = (d as f64).log10();
    let lo = (log_d - 500f64.log10()) / 2.0;
    let hi = (log_d + 2.0) / 2.0;
    vec![(lo, hi); d]
}

/// Settings for [`multistart_optimize`].
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Number of Latin hypercube starts (default 10 per dimension).
    pub n_starts: usize,
    /// Start region, one interval per dimension.
    pub omega0: Vec<(f64, f64)>,
    /// Search box constraining every local search; contains `omega0`.
    pub omega: Vec<(f64, f64)>,
    /// Local-search iteration cap.
    pub max_iter: usize,
    /// Relative tolerance on the loss decrease.
    pub rel_tol: f64,
    /// Central finite-difference step on the log10 scales.
    pub fd_step: f64,
}

impl OptimizerConfig {
    pub fn for_dimension(d: usize) -> Self {
        Self {
            n_starts: 10 * d,
            omega0: search_region_omega0(d),
            omega: vec![(-10.0, 10.0); d],
            max_iter: 200,
            rel_tol: 1e-8,
            fd_step: 1e-4,
        }
    }

    pub fn with_n_starts(mut self, n_starts: usize) -> Self {
        self.n_starts = n_starts;
        self
    }

    fn validate(&self, d: usize) -> Result<()> {
        if self.omega0.len() != d || self.omega.len() != d {
            return Err(Error::Dimension(format!(
                "optimizer regions have {} / {} dimensions, expected {d}",
                self.omega0.len(),
                self.omega.len()
            )));
        }
        if self.n_starts == 0 || self.max_iter == 0 {
            return Err(Error::Domain("n_starts and max_iter must be positive".into()));
        }
        if !(self.rel_tol > 0.0) || !(self.fd_step > 0.0) {
            return Err(Error::Domain("rel_tol and fd_step must be positive".into()));
        }
        for (j, (inner, outer)) in self.omega0.iter().zip(&self.omega).enumerate() {
            if inner.0 < outer.0 || inner.1 > outer.1 || inner.0 >= inner.1 {
                return Err(Error::Domain(format!(
                    "start region [{}, {}] must sit inside the search box [{}, {}] (dimension {})",
                    inner.0,
                    inner.1,
                    outer.0,
                    outer.1,
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// Log of one local search inside a multi-start run.
#[derive(Debug, Clone)]
pub struct StartRecord {
    pub start: Vec<f64>,
    pub terminal: Vec<f64>,
    pub loss: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Result of a multi-start optimization.
#[derive(Debug, Clone)]
pub struct MultistartOutcome {
    pub gamma: Vec<f64>,
    pub loss: f64,
    pub starts: Vec<StartRecord>,
}

/// Draw Latin hypercube starts in the start region, run a bounded local
/// search from each, and keep the lowest terminal loss (ties break toward
/// the lowest start index). Local searches run in parallel; the reduction
/// is a deterministic scan over the ordered records.
pub fn multistart_optimize<F>(
    loss: F,
    d: usize,
    config: &OptimizerConfig,
    rng: &mut RngStream,
) -> Result<MultistartOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate(d)?;
    let starts = latin_hypercube(config.n_starts, d, &config.omega0, rng)?;
    let lower: Vec<f64> = config.omega.iter().map(|b| b.0).collect();
    let upper: Vec<f64> = config.omega.iter().map(|b| b.1).collect();

    let records: Vec<StartRecord> = (0..config.n_starts)
        .into_par_iter()
        .map(|i| {
            let x0 = starts.row(i);
            let out = bounded_quasi_newton(
                &loss,
                x0,
                &lower,
                &upper,
                config.max_iter,
                config.rel_tol,
                config.fd_step,
            );
            StartRecord {
                start: x0.to_vec(),
                terminal: out.x,
                loss: out.f,
                iterations: out.iterations,
                converged: out.converged,
            }
        })
        .collect();

    let mut best: Option<usize> = None;
    for (i, record) in records.iter().enumerate() {
        if record.loss.is_finite() && best.is_none_or(|b| record.loss < records[b].loss) {
            best = Some(i);
        }
    }
    let Some(best) = best else {
        let sample: Vec<String> = records
            .iter()
            .take(3)
            .map(|r| format!("start {:?} -> loss {}", r.start, r.loss))
            .collect();
        return Err(Error::Numeric(format!(
            "all {} optimization starts produced non-finite losses ({})",
            records.len(),
            sample.join("; ")
        )));
    };
    Ok(MultistartOutcome {
        gamma: records[best].terminal.clone(),
        loss: records[best].loss,
        starts: records,
    })
}

/// Engine-facing loss evaluation shared by the binomial and multinomial
/// models (class-summed Brier score or negative log-likelihood).
pub(crate) fn objective_on_block(
    block: &TrainingBlock,
    prior: &PriorSpec,
    family: KernelFamily,
    gamma: &[f64],
    kind: LossKind,
) -> f64 {
    let kernel = KernelSpec { family, gamma: gamma.to_vec() };
    let means = block.loo_means(prior, &kernel);
    let n = block.n();
    let q = block.q();
    let mut total = 0.0;
    match kind {
        LossKind::Brier => {
            for i in 0..n {
                for s in 0..q {
                    let dev = means.get(i, s) - block.fractions.get(i, s);
                    total += dev * dev;
                }
            }
        }
        LossKind::LogLoss => {
            for i in 0..n {
                for s in 0..q {
                    let count = block.counts.get(i, s);
                    if count > 0.0 {
                        total -= count * means.get(i, s).clamp(LOG_CLAMP, 1.0 - LOG_CLAMP).ln();
                    }
                }
            }
        }
    }
    total / n as f64
}

fn binomial_block(data: &BkpDataset) -> Result<TrainingBlock> {
    let x_norm = normalize_inputs(data.x(), data.bounds())?;
    Ok(TrainingBlock::new(x_norm, data.count_matrix()))
}

fn multinomial_block(data: &DkpDataset) -> Result<TrainingBlock> {
    let x_norm = normalize_inputs(data.x(), data.bounds())?;
    Ok(TrainingBlock::new(x_norm, data.y().clone()))
}

/// Leave-one-out posterior means at every training point.
pub fn loo_posterior_means(
    gamma: &[f64],
    data: &BkpDataset,
    prior: &PriorSpec,
    family: KernelFamily,
) -> Result<Vec<f64>> {
    let block = binomial_block(data)?;
    let kernel = KernelSpec::new(family, gamma.to_vec())?;
    let means = block.loo_means(prior, &kernel);
    Ok((0..block.n()).map(|i| means.get(i, 0)).collect())
}

/// LOOCV Brier score: mean squared deviation between held-out posterior
/// means and empirical proportions.
pub fn brier_loss(
    gamma: &[f64],
    data: &BkpDataset,
    prior: &PriorSpec,
    family: KernelFamily,
) -> Result<f64> {
    let block = binomial_block(data)?;
    KernelSpec::new(family, gamma.to_vec())?;
    // The class-summed score counts both the success and failure deviations,
    // which are equal here, so the binomial score is exactly half of it.
    Ok(objective_on_block(&block, prior, family, gamma, LossKind::Brier) / 2.0)
}

/// LOOCV log-loss: binomial negative log-likelihood at the held-out means.
pub fn log_loss(
    gamma: &[f64],
    data: &BkpDataset,
    prior: &PriorSpec,
    family: KernelFamily,
) -> Result<f64> {
    let block = binomial_block(data)?;
    KernelSpec::new(family, gamma.to_vec())?;
    Ok(objective_on_block(&block, prior, family, gamma, LossKind::LogLoss))
}

/// Multiclass LOOCV Brier score (summed over classes).
pub fn brier_loss_multi(
    gamma: &[f64],
    data: &DkpDataset,
    prior: &PriorSpec,
    family: KernelFamily,
) -> Result<f64> {
    let block = multinomial_block(data)?;
    KernelSpec::new(family, gamma.to_vec())?;
    Ok(objective_on_block(&block, prior, family, gamma, LossKind::Brier))
}

/// Multiclass LOOCV log-loss.
pub fn log_loss_multi(
    gamma: &[f64],
    data: &DkpDataset,
    prior: &PriorSpec,
    family: KernelFamily,
) -> Result<f64> {
    let block = multinomial_block(data)?;
    KernelSpec::new(family, gamma.to_vec())?;
    Ok(objective_on_block(&block, prior, family, gamma, LossKind::LogLoss))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::InputBounds;
    use crate::matrix::Matrix;

    /// Two coincident unit-trial points with opposite outcomes; with a huge
    /// length scale the cross weight is exactly 1.
    fn toy_dataset() -> BkpDataset {
        let x = Matrix::from_rows(&[vec![0.0], vec![1e-9]]).unwrap();
        BkpDataset::new(x, InputBounds::unit(1), vec![1, 0], vec![1, 1]).unwrap()
    }

    #[test]
    fn omega0_hand_values() {
        let r1 = search_region_omega0(1);
        assert!((r1[0].0 + 1.349485).abs() < 1e-6, "{:?}", r1);
        assert!((r1[0].1 - 1.0).abs() < 1e-12, "{:?}", r1);
        let r2 = search_region_omega0(2);
        assert!((r2[0].0 + 1.198970).abs() < 1e-6, "{:?}", r2);
        assert!((r2[0].1 - 1.150515).abs() < 1e-6, "{:?}", r2);
        for d in 1..=20 {
            for (lo, hi) in search_region_omega0(d) {
                assert!(lo >= -10.0 && hi <= 10.0 && lo < hi);
            }
        }
    }

    #[test]
    fn toy_brier_and_log_loss_hand_values() {
        let data = toy_dataset();
        let prior = PriorSpec::noninformative();
        let brier = brier_loss(&[10.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        assert!((brier - 4.0 / 9.0).abs() < 1e-9, "brier {brier}");
        let ll = log_loss(&[10.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        assert!((ll - 3f64.ln()).abs() < 1e-9, "log loss {ll}");
    }

    #[test]
    fn toy_isolated_points_fall_back_to_prior() {
        let data = toy_dataset();
        let prior = PriorSpec::noninformative();
        let means = loo_posterior_means(&[-10.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        assert_eq!(means, vec![0.5, 0.5]);
        // Constant 1/2 predictions on unit trials give log loss ln 2.
        let ll = log_loss(&[-10.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        assert!((ll - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_loss_clamps_vanishing_predictions() {
        // A fixed prior with a vanishing mean plus isolated points drives the
        // held-out means toward zero; the clamp keeps the log finite.
        let data = toy_dataset();
        let prior = PriorSpec::fixed(1.0, 1e-14).unwrap();
        let ll = log_loss(&[-10.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        assert!(ll.is_finite(), "log loss {ll}");
        // Point 1 has y = 1 predicted at the clamp floor 1e-12.
        assert!(ll > 10.0, "clamped term should dominate, got {ll}");
    }

    #[test]
    fn losses_invariant_under_row_permutation() {
        let x = Matrix::from_rows(&[vec![0.1], vec![0.5], vec![0.9], vec![0.3]]).unwrap();
        let data =
            BkpDataset::new(x, InputBounds::unit(1), vec![1, 3, 0, 2], vec![2, 5, 1, 4]).unwrap();
        let xp = Matrix::from_rows(&[vec![0.9], vec![0.3], vec![0.1], vec![0.5]]).unwrap();
        let perm =
            BkpDataset::new(xp, InputBounds::unit(1), vec![0, 2, 1, 3], vec![1, 4, 2, 5]).unwrap();
        let prior = PriorSpec::adaptive(1.5).unwrap();
        for family in KernelFamily::ALL {
            let a = brier_loss(&[-0.3], &data, &prior, family).unwrap();
            let b = brier_loss(&[-0.3], &perm, &prior, family).unwrap();
            assert!((a - b).abs() < 1e-14, "{family}: {a} vs {b}");
            let a = log_loss(&[-0.3], &data, &prior, family).unwrap();
            let b = log_loss(&[-0.3], &perm, &prior, family).unwrap();
            assert!((a - b).abs() < 1e-13, "{family}: {a} vs {b}");
        }
    }

    #[test]
    fn two_class_brier_is_twice_binomial() {
        let x = Matrix::from_rows(&[vec![0.2], vec![0.7], vec![0.4]]).unwrap();
        let y = vec![2u64, 0, 3];
        let m = vec![4u64, 2, 3];
        let data = BkpDataset::new(x.clone(), InputBounds::unit(1), y.clone(), m.clone()).unwrap();
        let counts = Matrix::from_rows(
            &y.iter().zip(&m).map(|(&y, &m)| vec![y as f64, (m - y) as f64]).collect::<Vec<_>>(),
        )
        .unwrap();
        let dkp = DkpDataset::new(x, InputBounds::unit(1), counts).unwrap();
        let prior = PriorSpec::noninformative();
        let binary = brier_loss(&[0.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        let multi = brier_loss_multi(&[0.0], &dkp, &prior, KernelFamily::Gaussian).unwrap();
        assert!((multi - 2.0 * binary).abs() < 1e-15);
        // Log-loss carries no duplication factor.
        let bl = log_loss(&[0.0], &data, &prior, KernelFamily::Gaussian).unwrap();
        let ml = log_loss_multi(&[0.0], &dkp, &prior, KernelFamily::Gaussian).unwrap();
        assert!((ml - bl).abs() < 1e-13);
    }

    #[test]
    fn multistart_recovers_quadratic_optimum() {
        let target = [0.4, -0.9];
        let loss = |g: &[f64]| (g[0] - target[0]).powi(2) + (g[1] - target[1]).powi(2);
        let config = OptimizerConfig::for_dimension(2);
        let mut rng = RngStream::new(5, 0);
        let out = multistart_optimize(loss, 2, &config, &mut rng).unwrap();
        assert!((out.gamma[0] - target[0]).abs() < 1e-6, "{:?}", out.gamma);
        assert!((out.gamma[1] - target[1]).abs() < 1e-6, "{:?}", out.gamma);
        assert_eq!(out.starts.len(), 20);
        // The local search never ends worse than its own start.
        for record in &out.starts {
            assert!(record.loss <= loss(&record.start) + 1e-15);
        }
    }

    #[test]
    fn multistart_flat_loss() {
        let loss = |_: &[f64]| 1.5;
        let config = OptimizerConfig::for_dimension(1);
        let mut rng = RngStream::new(6, 0);
        let out = multistart_optimize(loss, 1, &config, &mut rng).unwrap();
        assert_eq!(out.loss, 1.5);
    }

    #[test]
    fn multistart_clamps_to_search_box() {
        let loss = |g: &[f64]| (g[0] - 12.0).powi(2);
        let config = OptimizerConfig::for_dimension(1);
        let mut rng = RngStream::new(7, 0);
        let out = multistart_optimize(loss, 1, &config, &mut rng).unwrap();
        assert!((out.gamma[0] - 10.0).abs() < 1e-8, "{:?}", out.gamma);
    }

    #[test]
    fn multistart_deterministic_per_seed() {
        let loss = |g: &[f64]| (g[0].sin() * 3.0).cos() + 0.1 * g[0].abs();
        let config = OptimizerConfig::for_dimension(1);
        let a = multistart_optimize(loss, 1, &config, &mut RngStream::new(8, 0)).unwrap();
        let b = multistart_optimize(loss, 1, &config, &mut RngStream::new(8, 0)).unwrap();
        assert_eq!(a.gamma[0].to_bits(), b.gamma[0].to_bits());
        assert_eq!(a.loss.to_bits(), b.loss.to_bits());
    }

    #[test]
    fn multistart_reports_all_non_finite() {
        let loss = |_: &[f64]| f64::NAN;
        let config = OptimizerConfig::for_dimension(1);
        let mut rng = RngStream::new(9, 0);
        let err = multistart_optimize(loss, 1, &config, &mut rng).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)), "{err}");
    }
}
