//! The multinomial model: Dirichlet posterior field, per-class summaries,
//! MAP classification, and simulation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bkp::summarize;
use crate::design::{normalize_inputs, InputBounds};
use crate::engine::TrainingBlock;
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::matrix::Matrix;
use crate::numerics::{sample_dirichlet, RngStream};
use crate::priors::PriorSpec;
use crate::tuning::{self, LossKind};

/// Multinomial observations: row `i` of `y` holds the per-class counts at
/// input row `i`; the trial total is the row sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DkpDataset {
    x: Matrix,
    bounds: InputBounds,
    y: Matrix,
}

impl DkpDataset {
    pub fn new(x: Matrix, bounds: InputBounds, y: Matrix) -> Result<Self> {
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
        if y.n_rows() != x.n_rows() {
            return Err(Error::Dimension(format!(
                "expected {} count rows, got {}",
                x.n_rows(),
                y.n_rows()
            )));
        }
        if y.n_cols() < 2 {
            return Err(Error::Data(format!(
                "count matrix needs at least 2 classes, got {}",
                y.n_cols()
            )));
        }
        for i in 0..y.n_rows() {
            let mut total = 0.0;
            for (s, &v) in y.row(i).iter().enumerate() {
                if !v.is_finite() || v < 0.0 || v.fract() != 0.0 {
                    return Err(Error::Data(format!(
                        "row {}, class {}: counts must be nonnegative integers, got {v}",
                        i + 1,
                        s + 1
                    )));
                }
                total += v;
            }
            if total < 1.0 {
                return Err(Error::Data(format!("row {}: total count must be >= 1", i + 1)));
            }
        }
        Ok(Self { x, bounds, y })
    }

    pub fn n(&self) -> usize {
        self.x.n_rows()
    }

    pub fn d(&self) -> usize {
        self.x.n_cols()
    }

    pub fn q(&self) -> usize {
        self.y.n_cols()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn bounds(&self) -> &InputBounds {
        &self.bounds
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    /// True when every row is a single categorical observation.
    pub fn all_unit_trials(&self) -> bool {
        (0..self.y.n_rows()).all(|i| self.y.row(i).iter().sum::<f64>() == 1.0)
    }
}

/// Per-class posterior summary at one query point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletSummary {
    pub alpha_n: Vec<f64>,
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// MAP class (argmax of the posterior means, ties to the lowest index),
    /// present only when the training rows are all single trials.
    pub label: Option<usize>,
}

/// Dirichlet draws per query point; `draws[j]` holds `n_sim` probability
/// vectors for point `j`.
#[derive(Debug, Clone)]
pub struct DkpSimulationResult {
    pub draws: Vec<Vec<Vec<f64>>>,
    /// Per-draw argmax labels when requested.
    pub labels: Option<Vec<Vec<usize>>>,
}

/// A fitted multinomial model; see [`FittedBkp`](crate::FittedBkp) for the
/// storage conventions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedDkp {
    data: DkpDataset,
    kernel: KernelSpec,
    prior: PriorSpec,
    loss_kind: LossKind,
    loss_min: f64,
    theta_was_user_fixed: bool,
    seed: u64,
}

/// Fit a multinomial model; mirrors [`fit_bkp`](crate::fit_bkp) with the
/// class-summed losses.
pub fn fit_dkp(
    data: DkpDataset,
    kernel_family: KernelFamily,
    prior: PriorSpec,
    loss_kind: LossKind,
    n_multi_start: Option<usize>,
    theta_fixed: Option<&[f64]>,
    seed: u64,
) -> Result<FittedDkp> {
    prior.validate_multiclass(data.q())?;
    prior.class_p0(data.q())?;
    let d = data.d();
    let x_norm = normalize_inputs(data.x(), data.bounds())?;
    let normalized = DkpDataset { x: x_norm.clone(), bounds: data.bounds.clone(), y: data.y };
    let block = TrainingBlock::new(x_norm, normalized.y.clone());

    let objective =
        |gamma: &[f64]| tuning::objective_on_block(&block, &prior, kernel_family, gamma, loss_kind);

    let (gamma, loss_min, user_fixed) = match theta_fixed {
        Some(theta) => {
            let gamma = crate::bkp::gamma_from_theta(theta, d)?;
            let loss = objective(&gamma);
            (gamma, loss, true)
        }
        None => {
            let outcome = crate::bkp::optimize(&objective, d, n_multi_start, seed)?;
            (outcome.gamma, outcome.loss, false)
        }
    };

    Ok(FittedDkp {
        data: normalized,
        kernel: KernelSpec::new(kernel_family, gamma)?,
        prior,
        loss_kind,
        loss_min,
        theta_was_user_fixed: user_fixed,
        seed,
    })
}

impl FittedDkp {
    /// Posterior concentration vector at a raw-scale query point.
    pub fn posterior_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        let xq = self.data.bounds.normalize_point(x, 0)?;
        Ok(self.block().posterior_alpha(&self.prior, &self.kernel, &xq))
    }

    /// Per-class posterior summaries; credible bounds come from the
    /// marginal Beta(alpha_s, total - alpha_s) of each class.
    pub fn predict(&self, xnew: &Matrix, ci_level: f64) -> Result<Vec<DirichletSummary>> {
        if !(ci_level > 0.0 && ci_level < 1.0) {
            return Err(Error::Domain(format!("ci_level must lie in (0, 1), got {ci_level}")));
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
                let total: f64 = alpha.iter().sum();
                let q = alpha.len();
                let mut mean = Vec::with_capacity(q);
                let mut variance = Vec::with_capacity(q);
                let mut lower = Vec::with_capacity(q);
                let mut upper = Vec::with_capacity(q);
                for &a in &alpha {
                    let marginal = summarize(a, total - a, lo_p, hi_p, None)?;
                    mean.push(marginal.mean);
                    variance.push(marginal.variance);
                    lower.push(marginal.lower);
                    upper.push(marginal.upper);
                }
                let label = emit_labels.then(|| argmax(&mean));
                Ok(DirichletSummary { alpha_n: alpha, mean, variance, lower, upper, label })
            })
            .collect()
    }

    /// Dirichlet draws from the posterior at each query point, optionally
    /// with per-draw argmax labels (Thompson-style sampled classes).
    pub fn simulate(
        &self,
        xnew: &Matrix,
        n_sim: usize,
        rng: &RngStream,
        map_labels: bool,
    ) -> Result<DkpSimulationResult> {
        if n_sim == 0 {
            return Err(Error::Domain("n_sim must be >= 1".into()));
        }
        let queries = normalize_inputs(xnew, &self.data.bounds)?;
        let block = self.block();
        let draws: Vec<Vec<Vec<f64>>> = (0..queries.n_rows())
            .into_par_iter()
            .map(|j| {
                let alpha = block.posterior_alpha(&self.prior, &self.kernel, queries.row(j));
                let mut stream = rng.substream(j as u64);
                (0..n_sim)
                    .map(|_| sample_dirichlet(&alpha, &mut stream))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = map_labels.then(|| {
            draws.iter().map(|point| point.iter().map(|draw| argmax(draw)).collect()).collect()
        });
        Ok(DkpSimulationResult { draws, labels })
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
            "{line}\n         Dirichlet Kernel Process (DKP) Model      \n{line}\n\
             Number of observations (n):  {}\n\
             Number of classes (q):       {}\n\
             Input dimensionality (d):    {}\n\
             Kernel type:                 {}\n\
             Loss function used:          {}\n\
             Optimized kernel parameters: {}\n\
             Minimum achieved loss:       {:.5}\n\
             {how}\n\nPrior specification:\n  {}\n{line}",
            self.data.n(),
            self.data.q(),
            self.data.d(),
            self.kernel.family,
            self.loss_kind,
            theta.join(", "),
            self.loss_min,
            self.prior.describe(self.data.q()),
        )
    }

    fn block(&self) -> TrainingBlock {
        TrainingBlock::new(self.data.x.clone(), self.data.y.clone())
    }

    /// Structural checks for models deserialized from disk.
    pub(crate) fn validate(&self) -> Result<()> {
        DkpDataset::new(self.data.x.clone(), self.data.bounds.clone(), self.data.y.clone())?;
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
        self.prior.validate_multiclass(self.data.q())?;
        self.prior.class_p0(self.data.q())?;
        Ok(())
    }

    pub fn data(&self) -> &DkpDataset {
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

/// First index attaining the maximum (deterministic tie-breaking).
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset_1d(x: &[f64], counts: &[[u64; 3]]) -> DkpDataset {
        let xm = Matrix::from_rows(&x.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
        let y = Matrix::from_rows(
            &counts.iter().map(|row| row.iter().map(|&c| c as f64).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        DkpDataset::new(xm, InputBounds::unit(1), y).unwrap()
    }

    fn fitted(data: DkpDataset, theta: f64) -> FittedDkp {
        fit_dkp(
            data,
            KernelFamily::Gaussian,
            PriorSpec::noninformative(),
            LossKind::Brier,
            None,
            Some(&[theta]),
            3,
        )
        .unwrap()
    }

    #[test]
    fn dataset_validation() {
        let x = Matrix::from_rows(&[vec![0.5]]).unwrap();
        let bad = Matrix::from_rows(&[vec![1.0, -1.0]]).unwrap();
        assert!(DkpDataset::new(x.clone(), InputBounds::unit(1), bad).is_err());
        let zero = Matrix::from_rows(&[vec![0.0, 0.0]]).unwrap();
        assert!(DkpDataset::new(x.clone(), InputBounds::unit(1), zero).is_err());
        let frac = Matrix::from_rows(&[vec![1.5, 0.5]]).unwrap();
        assert!(DkpDataset::new(x.clone(), InputBounds::unit(1), frac).is_err());
        let one_class = Matrix::from_rows(&[vec![3.0]]).unwrap();
        assert!(DkpDataset::new(x, InputBounds::unit(1), one_class).is_err());
    }

    #[test]
    fn posterior_hand_value() {
        // n = 1, weight 1, counts (2, 1, 0): alpha = (3, 2, 1).
        let model = fitted(dataset_1d(&[0.5], &[[2, 1, 0]]), 1.0);
        let alpha = model.posterior_at(&[0.5]).unwrap();
        assert_eq!(alpha, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn zero_mass_keeps_prior() {
        let model = fitted(dataset_1d(&[0.0], &[[2, 1, 0]]), 1e-10);
        let alpha = model.posterior_at(&[1.0]).unwrap();
        assert_eq!(alpha, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn predict_means_variances_and_map_label() {
        let model = fitted(dataset_1d(&[0.5], &[[2, 1, 0]]), 1.0);
        let out = model.predict(&Matrix::from_rows(&[vec![0.5]]).unwrap(), 0.95).unwrap();
        let s = &out[0];
        // alpha = (3, 2, 1): means (1/2, 1/3, 1/6), variances m(1-m)/7.
        for (got, want) in s.mean.iter().zip([0.5, 1.0 / 3.0, 1.0 / 6.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        for (s_idx, v) in s.variance.iter().enumerate() {
            let m = s.mean[s_idx];
            assert!((v - m * (1.0 - m) / 7.0).abs() < 1e-12);
        }
        let total: f64 = s.mean.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        // Aggregated counts: no MAP label.
        assert_eq!(s.label, None);
    }

    #[test]
    fn map_label_on_unit_trials_with_tie_breaking() {
        let data = dataset_1d(&[0.1, 0.9], &[[0, 1, 0], [0, 0, 1]]);
        let model = fitted(data, 1e-10);
        // Isolated query: uniform posterior, tie broken to class 0.
        let out = model.predict(&Matrix::from_rows(&[vec![0.5]]).unwrap(), 0.95).unwrap();
        assert_eq!(out[0].label, Some(0));
        // Next to the class-2 point the MAP label follows the data.
        let out = model.predict(&Matrix::from_rows(&[vec![0.9]]).unwrap(), 0.95).unwrap();
        assert_eq!(out[0].label, Some(2));
    }

    #[test]
    fn uniform_marginal_interval() {
        // alpha = (1, 1): the class-0 marginal is Beta(1, 1).
        let x = Matrix::from_rows(&[vec![0.5]]).unwrap();
        let y = Matrix::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let data = DkpDataset::new(x, InputBounds::unit(1), y).unwrap();
        let model = fitted(data, 1e-10);
        let out = model.predict(&Matrix::from_rows(&[vec![1.0]]).unwrap(), 0.95).unwrap();
        assert!((out[0].lower[0] - 0.025).abs() < 1e-9);
        assert!((out[0].upper[0] - 0.975).abs() < 1e-9);
    }

    #[test]
    fn simulate_deterministic_with_argmax_labels() {
        let model = fitted(dataset_1d(&[0.5], &[[2, 1, 0]]), 1.0);
        let q = Matrix::from_rows(&[vec![0.4], vec![0.6]]).unwrap();
        let rng = RngStream::new(21, 0);
        let a = model.simulate(&q, 4, &rng, true).unwrap();
        let b = model.simulate(&q, 4, &rng, true).unwrap();
        assert_eq!(a.draws, b.draws);
        let labels = a.labels.unwrap();
        for (point, point_labels) in a.draws.iter().zip(&labels) {
            for (draw, &label) in point.iter().zip(point_labels) {
                assert_eq!(label, argmax(draw));
                assert!((draw.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_label_frequencies_match_independent_sampler() {
        // Thompson-style label frequencies under alpha = (3, 2, 1), checked
        // against argmax frequencies from an independently seeded Dirichlet
        // sampler.
        let model = fitted(dataset_1d(&[0.5], &[[2, 1, 0]]), 1.0);
        let q = Matrix::from_rows(&[vec![0.5]]).unwrap();
        let n = 100_000;
        let sims = model.simulate(&q, n, &RngStream::new(77, 0), true).unwrap();
        let labels = sims.labels.unwrap();
        let mut freq = [0.0f64; 3];
        for &label in &labels[0] {
            freq[label] += 1.0;
        }

        let mut oracle_rng = RngStream::new(991, 13);
        let mut oracle = [0.0f64; 3];
        for _ in 0..n {
            let draw =
                crate::numerics::sample_dirichlet(&[3.0, 2.0, 1.0], &mut oracle_rng).unwrap();
            oracle[argmax(&draw)] += 1.0;
        }
        for s in 0..3 {
            let p_hat = oracle[s] / n as f64;
            // SE of the difference of two independent frequency estimates.
            let se = (2.0 * p_hat * (1.0 - p_hat) / n as f64).sqrt();
            let diff = (freq[s] / n as f64 - p_hat).abs();
            assert!(diff <= 3.0 * se, "class {s}: diff {diff}, 3*SE {}", 3.0 * se);
        }
    }

    #[test]
    fn argmax_ties_to_lowest_index() {
        assert_eq!(argmax(&[0.2, 0.5, 0.3]), 1);
        assert_eq!(argmax(&[0.4, 0.4, 0.2]), 0);
    }

    #[test]
    fn map_label_scale_invariant() {
        let means = [0.2, 0.5, 0.3];
        let scaled: Vec<f64> = means.iter().map(|m| m * 7.3).collect();
        assert_eq!(argmax(&means), argmax(&scaled));
    }

    #[test]
    fn summary_lists_class_count() {
        let model = fitted(dataset_1d(&[0.5], &[[2, 1, 0]]), 1.0);
        let s = model.summary();
        assert!(s.contains("Dirichlet Kernel Process"), "{s}");
        assert!(s.contains("Number of classes (q):       3"), "{s}");
    }
}
