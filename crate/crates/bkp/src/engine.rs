//! Shared posterior-field engine.
//!
//! Both the binomial and multinomial models are driven by the same count
//! representation: an n x q matrix of class counts (q = 2 for binomial data,
//! storing successes and failures). Posterior concentrations at a query
//! point are the prior concentrations plus kernel-weighted column sums, and
//! leave-one-out means drop the held-out row from every sum — including the
//! adaptive prior's weights and mass.
//!
//! Funneling the binomial case through the q = 2 path makes the documented
//! reduction exact: a two-class fit and a binomial fit run the identical
//! arithmetic.

use crate::kernels::{self, KernelSpec};
use crate::matrix::Matrix;
use crate::priors::{PriorSpec, PriorStrategy, ADAPTIVE_MASS_FLOOR};

/// Normalized training inputs plus count data, prepared once per fit or
/// prediction batch.
#[derive(Debug, Clone)]
pub(crate) struct TrainingBlock {
    /// n x d inputs in the unit hypercube.
    pub x: Matrix,
    /// n x q class counts.
    pub counts: Matrix,
    /// Empirical class proportions counts[i][s] / m_i.
    pub fractions: Matrix,
}

impl TrainingBlock {
    pub fn new(x: Matrix, counts: Matrix) -> Self {
        let n = counts.n_rows();
        let q = counts.n_cols();
        let mut fractions = Matrix::zeros(n, q);
        for i in 0..n {
            let m: f64 = counts.row(i).iter().sum();
            for s in 0..q {
                fractions.set(i, s, counts.get(i, s) / m);
            }
        }
        Self { x, counts, fractions }
    }

    pub fn n(&self) -> usize {
        self.counts.n_rows()
    }

    pub fn q(&self) -> usize {
        self.counts.n_cols()
    }

    /// Posterior concentration vector alpha_n(x) = alpha_0(x) + k(x)^T Y at
    /// one normalized query point.
    pub fn posterior_alpha(
        &self,
        prior: &PriorSpec,
        kernel: &KernelSpec,
        x_query: &[f64],
    ) -> Vec<f64> {
        let q = self.q();
        let theta = kernel.theta();
        let mut weighted_counts = vec![0.0; q];
        let mut mass = 0.0;
        let mut weighted_fracs = vec![0.0; q];
        for i in 0..self.n() {
            let w = kernels::weight(kernel, &theta, x_query, self.x.row(i));
            mass += w;
            let counts = self.counts.row(i);
            let fracs = self.fractions.row(i);
            for s in 0..q {
                weighted_counts[s] += w * counts[s];
                weighted_fracs[s] += w * fracs[s];
            }
        }
        combine_prior(prior, q, mass, &weighted_fracs, &weighted_counts)
    }

    /// Leave-one-out posterior means: row i holds the class means at x_i
    /// computed from the remaining n - 1 observations. O(n^2) total.
    pub fn loo_means(&self, prior: &PriorSpec, kernel: &KernelSpec) -> Matrix {
        let n = self.n();
        let q = self.q();
        let theta = kernel.theta();
        let mut out = Matrix::zeros(n, q);
        let mut weighted_counts = vec![0.0; q];
        let mut weighted_fracs = vec![0.0; q];
        for i in 0..n {
            weighted_counts.iter_mut().for_each(|v| *v = 0.0);
            weighted_fracs.iter_mut().for_each(|v| *v = 0.0);
            let mut mass = 0.0;
            let xi = self.x.row(i);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let w = kernels::weight(kernel, &theta, xi, self.x.row(j));
                mass += w;
                let counts = self.counts.row(j);
                let fracs = self.fractions.row(j);
                for s in 0..q {
                    weighted_counts[s] += w * counts[s];
                    weighted_fracs[s] += w * fracs[s];
                }
            }
            let alpha = combine_prior(prior, q, mass, &weighted_fracs, &weighted_counts);
            let total: f64 = alpha.iter().sum();
            for (s, &a) in alpha.iter().enumerate() {
                out.set(i, s, a / total);
            }
        }
        out
    }
}

/// alpha_0(x) + weighted counts for all three prior strategies.
fn combine_prior(
    prior: &PriorSpec,
    q: usize,
    mass: f64,
    weighted_fracs: &[f64],
    weighted_counts: &[f64],
) -> Vec<f64> {
    let mut alpha = vec![0.0; q];
    match prior.strategy {
        PriorStrategy::Noninformative => {
            for s in 0..q {
                alpha[s] = 1.0 + weighted_counts[s];
            }
        }
        PriorStrategy::Fixed => {
            // Validated at fit time, so expansion cannot fail here.
            let p0 = prior.class_p0(q).expect("fixed prior validated against q");
            for s in 0..q {
                alpha[s] = prior.r0 * p0[s] + weighted_counts[s];
            }
        }
        PriorStrategy::Adaptive => {
            if mass < ADAPTIVE_MASS_FLOOR {
                for s in 0..q {
                    alpha[s] = 1.0 + weighted_counts[s];
                }
            } else {
                let r = prior.r0 * mass;
                for s in 0..q {
                    alpha[s] = r * (weighted_fracs[s] / mass) + weighted_counts[s];
                }
            }
        }
    }
    alpha
}
