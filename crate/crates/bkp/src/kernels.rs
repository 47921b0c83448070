//! Scaled-distance kernels: Gaussian and the Matérn 3/2 and 5/2 families.
//!
//! Length scales are handled in log10 form (`gamma = log10 theta`) because
//! that is the parameterization the tuner optimizes over, and all kernel
//! arithmetic happens on inputs normalized to the unit hypercube.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    Gaussian,
    Matern32,
    Matern52,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 3] =
        [KernelFamily::Gaussian, KernelFamily::Matern32, KernelFamily::Matern52];

    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::Gaussian => "gaussian",
            KernelFamily::Matern32 => "matern32",
            KernelFamily::Matern52 => "matern52",
        }
    }
}

impl std::fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(KernelFamily::Gaussian),
            "matern32" => Ok(KernelFamily::Matern32),
            "matern52" => Ok(KernelFamily::Matern52),
            other => Err(Error::Parse(format!(
                "unknown kernel '{other}' (expected gaussian, matern32, or matern52)"
            ))),
        }
    }
}

/// A kernel family plus per-dimension log10 length scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub gamma: Vec<f64>,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || gamma.iter().any(|g| !g.is_finite()) {
            return Err(Error::Domain(format!(
                "kernel log-scales must be finite and nonempty, got {gamma:?}"
            )));
        }
        Ok(Self { family, gamma })
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// Length scales on the original (normalized-input) scale.
    pub fn theta(&self) -> Vec<f64> {
        self.gamma.iter().map(|g| 10f64.powf(*g)).collect()
    }
}

/// Scaled Euclidean distance h = sqrt(sum_j ((x_j - x2_j) / theta_j)^2).
pub fn scaled_distance(x: &[f64], x2: &[f64], theta: &[f64]) -> Result<f64> {
    if x.len() != x2.len() || x.len() != theta.len() {
        return Err(Error::Dimension(format!(
            "scaled_distance lengths disagree: {} vs {} vs {}",
            x.len(),
            x2.len(),
            theta.len()
        )));
    }
    if theta.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Domain(format!("length scales must be positive, got {theta:?}")));
    }
    Ok(scaled_sq_distance(x, x2, theta).sqrt())
}

fn scaled_sq_distance(x: &[f64], x2: &[f64], theta: &[f64]) -> f64 {
    let mut h2 = 0.0;
    for j in 0..x.len() {
        let z = (x[j] - x2[j]) / theta[j];
        h2 += z * z;
    }
    h2
}

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_5: f64 = 2.236_067_977_499_79;

/// Kernel weight k(h) in [0, 1]; equals 1 at h = 0 and decreases in h.
pub fn kernel_eval(family: KernelFamily, h: f64) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::Domain(format!("kernel_eval requires h >= 0, got {h}")));
    }
    Ok(match family {
        KernelFamily::Gaussian => (-h * h).exp(),
        KernelFamily::Matern32 => {
            let s = SQRT_3 * h;
            (1.0 + s) * (-s).exp()
        }
        KernelFamily::Matern52 => {
            let s = SQRT_5 * h;
            (1.0 + s + 5.0 / 3.0 * h * h) * (-s).exp()
        }
    })
}

/// Weight between two points under `spec`. The Gaussian path works on the
/// squared distance directly, skipping the square root.
pub(crate) fn weight(spec: &KernelSpec, theta: &[f64], x: &[f64], x2: &[f64]) -> f64 {
    match spec.family {
        KernelFamily::Gaussian => (-scaled_sq_distance(x, x2, theta)).exp(),
        family => {
            let h = scaled_sq_distance(x, x2, theta).sqrt();
            match family {
                KernelFamily::Matern32 => {
                    let s = SQRT_3 * h;
                    (1.0 + s) * (-s).exp()
                }
                KernelFamily::Matern52 => {
                    let s = SQRT_5 * h;
                    (1.0 + s + 5.0 / 3.0 * h * h) * (-s).exp()
                }
                KernelFamily::Gaussian => unreachable!(),
            }
        }
    }
}

/// Kernel weights from a query point to every training row.
pub fn kernel_vector(spec: &KernelSpec, x_train: &Matrix, x: &[f64]) -> Result<Vec<f64>> {
    if x_train.n_cols() != spec.dim() || x.len() != spec.dim() {
        return Err(Error::Dimension(format!(
            "kernel_vector dimensions disagree: train {}, query {}, spec {}",
            x_train.n_cols(),
            x.len(),
            spec.dim()
        )));
    }
    let theta = spec.theta();
    Ok(x_train.rows().map(|row| weight(spec, &theta, x, row)).collect())
}

/// Pairwise kernel weights between the rows of two matrices.
pub fn kernel_matrix(spec: &KernelSpec, x_a: &Matrix, x_b: &Matrix) -> Result<Matrix> {
    if x_a.n_cols() != spec.dim() || x_b.n_cols() != spec.dim() {
        return Err(Error::Dimension(format!(
            "kernel_matrix dimensions disagree: {} vs {} vs spec {}",
            x_a.n_cols(),
            x_b.n_cols(),
            spec.dim()
        )));
    }
    let theta = spec.theta();
    let mut out = Matrix::zeros(x_a.n_rows(), x_b.n_rows());
    for i in 0..x_a.n_rows() {
        for j in 0..x_b.n_rows() {
            out.set(i, j, weight(spec, &theta, x_a.row(i), x_b.row(j)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RngStream;

    #[test]
    fn scaled_distance_hand_values() {
        assert_eq!(scaled_distance(&[1.0, 2.0], &[1.0, 2.0], &[1.0, 1.0]).unwrap(), 0.0);
        let h = scaled_distance(&[0.0, 0.0], &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!((h - std::f64::consts::SQRT_2).abs() < 1e-12);
        let h = scaled_distance(&[0.0], &[1.0], &[2.0]).unwrap();
        assert!((h - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scaled_distance_dimension_mismatch() {
        assert!(scaled_distance(&[0.0], &[1.0, 2.0], &[1.0]).is_err());
        assert!(scaled_distance(&[0.0], &[1.0], &[0.0]).is_err());
    }

    #[test]
    fn kernel_eval_hand_values() {
        for family in KernelFamily::ALL {
            assert_eq!(kernel_eval(family, 0.0).unwrap(), 1.0);
        }
        assert!(
            (kernel_eval(KernelFamily::Gaussian, 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15
        );
        let m32 = (1.0 + SQRT_3) * (-SQRT_3).exp();
        assert!((kernel_eval(KernelFamily::Matern32, 1.0).unwrap() - m32).abs() < 1e-15);
        assert!((kernel_eval(KernelFamily::Matern32, 1.0).unwrap() - 0.4833578).abs() < 1e-7);
        let m52 = (1.0 + SQRT_5 + 5.0 / 3.0) * (-SQRT_5).exp();
        assert!((kernel_eval(KernelFamily::Matern52, 1.0).unwrap() - m52).abs() < 1e-15);
        assert!(
            (kernel_eval(KernelFamily::Matern52, 1.0).unwrap() - 0.52399410883182031).abs() < 1e-15
        );
        assert!(kernel_eval(KernelFamily::Gaussian, -0.1).is_err());
    }

    #[test]
    fn kernel_eval_bounded_and_nonincreasing() {
        for family in KernelFamily::ALL {
            let mut prev = 1.0;
            for i in 0..=500 {
                let h = i as f64 * 0.02;
                let k = kernel_eval(family, h).unwrap();
                assert!((0.0..=1.0).contains(&k));
                assert!(k <= prev + 1e-15, "{family} increased at h={h}");
                prev = k;
            }
        }
    }

    #[test]
    fn kernel_vector_self_weight_and_limits() {
        let x = Matrix::from_rows(&[vec![0.2, 0.4], vec![0.9, 0.1]]).unwrap();
        let spec = KernelSpec::new(KernelFamily::Gaussian, vec![0.0, 0.0]).unwrap();
        let k = kernel_vector(&spec, &x, &[0.2, 0.4]).unwrap();
        assert_eq!(k[0], 1.0);

        // Huge length scales: every weight tends to 1 on the unit cube.
        let wide = KernelSpec::new(KernelFamily::Gaussian, vec![10.0, 10.0]).unwrap();
        let k = kernel_vector(&wide, &x, &[0.5, 0.5]).unwrap();
        assert!(k.iter().all(|&w| (1.0 - w).abs() < 1e-6), "{k:?}");

        // Tiny length scales: off-point weights vanish.
        let narrow = KernelSpec::new(KernelFamily::Gaussian, vec![-10.0, -10.0]).unwrap();
        let k = kernel_vector(&narrow, &x, &[0.5, 0.5]).unwrap();
        assert!(k.iter().all(|&w| w < 1e-300));
    }

    #[test]
    fn kernel_matrix_symmetric_with_unit_diagonal() {
        let mut rng = RngStream::new(8, 0);
        let rows: Vec<Vec<f64>> = (0..3).map(|_| vec![rng.uniform(), rng.uniform()]).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let spec = KernelSpec::new(KernelFamily::Matern52, vec![-0.3, 0.2]).unwrap();
        let k = kernel_matrix(&spec, &x, &x).unwrap();
        for i in 0..3 {
            assert_eq!(k.get(i, i), 1.0);
            for j in 0..3 {
                assert_eq!(k.get(i, j), k.get(j, i));
            }
        }
    }

    #[test]
    fn kernel_matrix_matches_scalar_recomputation() {
        let mut rng = RngStream::new(9, 0);
        let rows_a: Vec<Vec<f64>> = (0..5).map(|_| vec![rng.uniform(); 3]).collect();
        let rows_b: Vec<Vec<f64>> = (0..5).map(|_| vec![rng.uniform(); 3]).collect();
        let xa = Matrix::from_rows(&rows_a).unwrap();
        let xb = Matrix::from_rows(&rows_b).unwrap();
        for family in KernelFamily::ALL {
            let spec = KernelSpec::new(family, vec![-0.5, 0.1, 0.4]).unwrap();
            let theta = spec.theta();
            let k = kernel_matrix(&spec, &xa, &xb).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    let h = scaled_distance(xa.row(i), xb.row(j), &theta).unwrap();
                    let want = kernel_eval(family, h).unwrap();
                    assert!((k.get(i, j) - want).abs() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn kernel_vector_single_pair_consistency() {
        let xa = Matrix::from_rows(&[vec![0.3]]).unwrap();
        let spec = KernelSpec::new(KernelFamily::Matern32, vec![-0.2]).unwrap();
        let m = kernel_matrix(&spec, &xa, &xa).unwrap();
        let v = kernel_vector(&spec, &xa, &[0.3]).unwrap();
        assert_eq!(m.get(0, 0), v[0]);
    }
}
