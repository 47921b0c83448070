//! Input normalization, Latin hypercube designs, and benchmark data
//! generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numerics::{std_normal_cdf, RngStream};

mod iris;

pub use iris::{iris_rows, IrisRow};

/// Per-dimension lower/upper input bounds. All kernel arithmetic happens on
/// inputs rescaled to the unit hypercube through these bounds.
/// Deserialization funnels through [`InputBounds::new`], so loaded files
/// cannot carry degenerate or reversed intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounds")]
pub struct InputBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Deserialize)]
struct RawBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBounds> for InputBounds {
    type Error = Error;

    fn try_from(raw: RawBounds) -> Result<Self> {
        InputBounds::new(raw.lower, raw.upper)
    }
}

/// Tolerance for points sitting on (or a rounding error beyond) an edge.
const EDGE_TOL: f64 = 1e-12;

impl InputBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::Dimension(format!(
                "bounds need matching nonempty lower/upper, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::Domain(format!(
                    "bounds for dimension {} must satisfy lower < upper, got [{lo}, {hi}]",
                    j + 1
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The unit hypercube `[0, 1]^d`.
    pub fn unit(d: usize) -> Self {
        Self { lower: vec![0.0; d], upper: vec![1.0; d] }
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn is_unit(&self) -> bool {
        self.lower.iter().all(|&v| v == 0.0) && self.upper.iter().all(|&v| v == 1.0)
    }

    /// Map one point into `[0, 1]^d`; errors name the offending coordinate.
    pub fn normalize_point(&self, x: &[f64], row_label: usize) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, bounds have {}",
                x.len(),
                self.dim()
            )));
        }
        let mut out = Vec::with_capacity(x.len());
        for (j, &v) in x.iter().enumerate() {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            let scale = (hi - lo).abs().max(1.0);
            if !v.is_finite() || v < lo - EDGE_TOL * scale || v > hi + EDGE_TOL * scale {
                return Err(Error::Data(format!(
                    "row {}, column x{}: value {v} outside bounds [{lo}, {hi}]",
                    row_label + 1,
                    j + 1
                )));
            }
            out.push(((v - lo) / (hi - lo)).clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// Inverse of [`normalize_point`](Self::normalize_point).
    pub fn denormalize_point(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&t, (&lo, &hi))| lo + t * (hi - lo))
            .collect()
    }
}

/// Rescale every row of `x` into the unit hypercube.
///
/// Identity when the bounds already are the unit cube.
pub fn normalize_inputs(x: &Matrix, bounds: &InputBounds) -> Result<Matrix> {
    if x.n_cols() != bounds.dim() {
        return Err(Error::Dimension(format!(
            "input matrix has {} columns, bounds have {}",
            x.n_cols(),
            bounds.dim()
        )));
    }
    let mut rows = Vec::with_capacity(x.n_rows());
    for i in 0..x.n_rows() {
        rows.push(bounds.normalize_point(x.row(i), i)?);
    }
    Matrix::from_rows(&rows)
}

/// Random-permutation Latin hypercube design: each column places exactly one
/// point in each of `n` equal-width strata, jittered uniformly within its
/// stratum.
pub fn latin_hypercube(
    n: usize,
    d: usize,
    bounds_per_dim: &[(f64, f64)],
    rng: &mut RngStream,
) -> Result<Matrix> {
    if n == 0 || d == 0 {
        return Err(Error::Domain(format!(
            "latin_hypercube requires n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    if bounds_per_dim.len() != d {
        return Err(Error::Dimension(format!(
            "expected {d} bound pairs, got {}",
            bounds_per_dim.len()
        )));
    }
    for (j, &(lo, hi)) in bounds_per_dim.iter().enumerate() {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::Domain(format!(
                "degenerate bounds [{lo}, {hi}] in dimension {}",
                j + 1
            )));
        }
    }
    let mut out = Matrix::zeros(n, d);
    let mut strata: Vec<usize> = (0..n).collect();
    for (j, &(lo, hi)) in bounds_per_dim.iter().enumerate() {
        rng.shuffle(&mut strata);
        for (i, &stratum) in strata.iter().enumerate() {
            let t = (stratum as f64 + rng.uniform()) / n as f64;
            out.set(i, j, lo + t * (hi - lo));
        }
    }
    Ok(out)
}

/// Regular mesh with `per_dim` points along each dimension, endpoints
/// included; the first coordinate varies fastest. Intended for plot-ready
/// prediction output.
pub fn grid(bounds: &InputBounds, per_dim: usize) -> Result<Matrix> {
    if per_dim == 0 {
        return Err(Error::Domain("grid needs at least one point per dimension".into()));
    }
    let d = bounds.dim();
    let total = per_dim
        .checked_pow(d as u32)
        .filter(|&t| t <= 10_000_000)
        .ok_or_else(|| Error::Domain(format!("grid of {per_dim}^{d} points is too large")))?;
    let axis = |j: usize, i: usize| -> f64 {
        let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
        if per_dim == 1 {
            (lo + hi) / 2.0
        } else {
            lo + (hi - lo) * i as f64 / (per_dim - 1) as f64
        }
    };
    let mut out = Matrix::zeros(total, d);
    for r in 0..total {
        let mut rem = r;
        for j in 0..d {
            out.set(r, j, axis(j, rem % per_dim));
            rem /= per_dim;
        }
    }
    Ok(out)
}

/// Smooth sigmoidal test probability: 1 / (1 + e^{-3x}).
pub fn true_pi1(x: f64) -> f64 {
    1.0 / (1.0 + (-3.0 * x).exp())
}

/// Oscillatory test probability:
/// (1 + e^{-x^2} cos(10 (1 - e^{-x}) / (1 + e^{-x}))) / 2.
pub fn true_pi2(x: f64) -> f64 {
    let damp = (-x * x).exp();
    let arg = 10.0 * (1.0 - (-x).exp()) / (1.0 + (-x).exp());
    0.5 * (1.0 + damp * arg.cos())
}

/// Rescaled Goldstein-Price surface pushed through the standard normal CDF.
/// Defined on the unit square.
///
/// The centered log argument `(1+a)(30+b) - 8.6928` touches zero near the
/// surface minimum; the score is floored at -37 there so the probability
/// stays strictly inside (0, 1).
pub fn true_pi3(x1: f64, x2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x1) || !(0.0..=1.0).contains(&x2) {
        return Err(Error::Domain(format!("true_pi3 is defined on [0,1]^2, got ({x1}, {x2})")));
    }
    let u = 4.0 * x1 - 2.0;
    let v = 4.0 * x2 - 2.0;
    let a = (4.0 * x1 + 4.0 * x2 - 3.0).powi(2)
        * (75.0 - 56.0 * (x1 + x2) + 3.0 * u * u + 6.0 * u * v + 3.0 * v * v);
    let b = (8.0 * x1 - 12.0 * x2 + 2.0).powi(2)
        * (-14.0 - 128.0 * x1 + 12.0 * u * u + 192.0 * x2 - 36.0 * u * v + 27.0 * v * v);
    let centered = (1.0 + a) * (30.0 + b) - 8.6928;
    let f = if centered > 0.0 { (centered.ln() / 2.4269).max(-37.0) } else { -37.0 };
    std_normal_cdf(f)
}

/// Separable trigonometric surface sin(pi x1) cos(pi (x2 - 1/2)),
/// nonnegative on the unit square and used there as a probability.
pub fn true_pi4(x1: f64, x2: f64) -> f64 {
    (std::f64::consts::PI * x1).sin() * (std::f64::consts::PI * (x2 - 0.5)).cos()
}

/// Spiral arm radius at curve parameter `t` in `[0, 1]`.
pub fn spiral_radius(t: f64) -> f64 {
    0.1 + 1.5 * t
}

/// Two interleaved spirals with `cycles` full rotations and isotropic
/// Gaussian coordinate noise of standard deviation `sd`, clipped to
/// `[-1.7, 1.7]^2`. Labels are balanced up to rounding and rows come out
/// in shuffled order, so prefix/suffix train-test splits stay balanced.
pub fn two_spirals(
    n: usize,
    cycles: f64,
    sd: f64,
    rng: &mut RngStream,
) -> Result<(Matrix, Vec<u8>)> {
    if n < 2 {
        return Err(Error::Domain(format!("two_spirals requires n >= 2, got {n}")));
    }
    let n0 = n / 2;
    let mut points = Vec::with_capacity(n);
    for class in 0..2u8 {
        let n_class = if class == 0 { n0 } else { n - n0 };
        for i in 0..n_class {
            // Stratified curve parameter so each arm is covered evenly.
            let t = (i as f64 + rng.uniform()) / n_class as f64;
            let r = spiral_radius(t);
            let angle = 2.0 * std::f64::consts::PI * cycles * t
                + if class == 1 { std::f64::consts::PI } else { 0.0 };
            let mut x1 = r * angle.cos();
            let mut x2 = r * angle.sin();
            if sd > 0.0 {
                x1 += sd * rng.standard_normal();
                x2 += sd * rng.standard_normal();
            }
            points.push((vec![x1.clamp(-1.7, 1.7), x2.clamp(-1.7, 1.7)], class));
        }
    }
    rng.shuffle(&mut points);
    let rows: Vec<Vec<f64>> = points.iter().map(|(row, _)| row.clone()).collect();
    let labels: Vec<u8> = points.iter().map(|&(_, class)| class).collect();
    Ok((Matrix::from_rows(&rows)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_midpoint_and_edges() {
        let b = InputBounds::new(vec![-2.0], vec![2.0]).unwrap();
        assert_eq!(b.normalize_point(&[0.0], 0).unwrap(), vec![0.5]);
        assert_eq!(b.normalize_point(&[-2.0], 0).unwrap(), vec![0.0]);
        assert_eq!(b.normalize_point(&[2.0], 0).unwrap(), vec![1.0]);
    }

    #[test]
    fn normalize_is_identity_on_unit_cube() {
        let b = InputBounds::unit(2);
        assert_eq!(b.normalize_point(&[0.3, 0.7], 0).unwrap(), vec![0.3, 0.7]);
    }

    #[test]
    fn out_of_bounds_names_row_and_column() {
        let b = InputBounds::new(vec![-2.0, 0.0], vec![2.0, 1.0]).unwrap();
        let x = Matrix::from_rows(&[vec![0.0, 0.5], vec![0.0, 1.5]]).unwrap();
        let err = normalize_inputs(&x, &b).unwrap_err().to_string();
        assert!(err.contains("row 2"), "{err}");
        assert!(err.contains("x2"), "{err}");
    }

    #[test]
    fn degenerate_bounds_rejected() {
        assert!(InputBounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(InputBounds::new(vec![2.0], vec![1.0]).is_err());
    }

    #[test]
    fn normalize_round_trip() {
        let b = InputBounds::new(vec![-3.0, 10.0], vec![5.5, 20.0]).unwrap();
        let x = vec![1.25, 17.0];
        let u = b.normalize_point(&x, 0).unwrap();
        let back = b.denormalize_point(&u);
        for (orig, recovered) in x.iter().zip(&back) {
            assert!((orig - recovered).abs() <= 1e-12);
        }
    }

    #[test]
    fn lhd_one_point_per_stratum() {
        let mut rng = RngStream::new(1, 0);
        let x = latin_hypercube(4, 1, &[(0.0, 1.0)], &mut rng).unwrap();
        let mut strata: Vec<usize> = (0..4).map(|i| (x.get(i, 0) * 4.0).floor() as usize).collect();
        strata.sort_unstable();
        assert_eq!(strata, vec![0, 1, 2, 3]);
    }

    #[test]
    fn lhd_columns_are_permutations() {
        let mut rng = RngStream::new(2, 0);
        let n = 10;
        let x = latin_hypercube(n, 2, &[(0.0, 1.0), (-5.0, 5.0)], &mut rng).unwrap();
        for j in 0..2 {
            let (lo, hi) = if j == 0 { (0.0, 1.0) } else { (-5.0, 5.0) };
            let mut occupancy = vec![0usize; n];
            for i in 0..n {
                let t = (x.get(i, j) - lo) / (hi - lo);
                occupancy[((t * n as f64).floor() as usize).min(n - 1)] += 1;
            }
            assert!(occupancy.iter().all(|&c| c == 1), "occupancy {occupancy:?}");
        }
    }

    #[test]
    fn lhd_single_point_inside_bounds() {
        let mut rng = RngStream::new(3, 0);
        let x = latin_hypercube(1, 3, &[(0.0, 1.0), (2.0, 3.0), (-1.0, 0.0)], &mut rng).unwrap();
        assert!(x.get(0, 0) >= 0.0 && x.get(0, 0) < 1.0);
        assert!(x.get(0, 1) >= 2.0 && x.get(0, 1) < 3.0);
        assert!(x.get(0, 2) >= -1.0 && x.get(0, 2) < 0.0);
    }

    #[test]
    fn lhd_rejects_degenerate_bounds() {
        let mut rng = RngStream::new(4, 0);
        assert!(latin_hypercube(3, 1, &[(1.0, 1.0)], &mut rng).is_err());
        assert!(latin_hypercube(0, 1, &[(0.0, 1.0)], &mut rng).is_err());
    }

    #[test]
    fn grid_covers_bounds() {
        let b = InputBounds::new(vec![-2.0, 0.0], vec![2.0, 1.0]).unwrap();
        let g = grid(&b, 3).unwrap();
        assert_eq!(g.n_rows(), 9);
        // First coordinate varies fastest.
        assert_eq!(g.row(0), &[-2.0, 0.0]);
        assert_eq!(g.row(1), &[0.0, 0.0]);
        assert_eq!(g.row(2), &[2.0, 0.0]);
        assert_eq!(g.row(3), &[-2.0, 0.5]);
        assert_eq!(g.row(8), &[2.0, 1.0]);
        let single = grid(&b, 1).unwrap();
        assert_eq!(single.row(0), &[0.0, 0.5]);
    }

    #[test]
    fn pi1_values() {
        assert!((true_pi1(0.0) - 0.5).abs() < 1e-15);
        assert!((true_pi1(1.0) - 0.9525741268224334).abs() < 1e-12);
        assert!(true_pi1(50.0) > 1.0 - 1e-12);
        assert!(true_pi1(-50.0) < 1e-12);
    }

    #[test]
    fn pi2_values() {
        assert!((true_pi2(0.0) - 1.0).abs() < 1e-15);
        // Independent high-precision evaluation of the same expression.
        assert!((true_pi2(2.0) - 0.502159399364370446245).abs() < 1e-12);
        for i in -40..=40 {
            let v = true_pi2(i as f64 / 10.0);
            assert!((0.0..=1.0).contains(&v), "pi2 out of range at {i}");
        }
    }

    #[test]
    fn pi3_center_value() {
        // At (0.5, 0.5): a = 19, b = 0, f = ln(591.3072) / 2.4269.
        let f = (591.3072f64).ln() / 2.4269;
        let want = std_normal_cdf(f).unwrap();
        let got = true_pi3(0.5, 0.5).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.99573).abs() < 1e-4);
    }

    #[test]
    fn pi3_in_open_unit_interval_and_domain_checked() {
        let mut rng = RngStream::new(5, 0);
        for _ in 0..200 {
            let v = true_pi3(rng.uniform(), rng.uniform()).unwrap();
            assert!(v > 0.0 && v < 1.0);
        }
        assert!(true_pi3(-0.1, 0.5).is_err());
        assert!(true_pi3(0.5, 1.2).is_err());
    }

    #[test]
    fn pi4_values() {
        assert!((true_pi4(0.5, 0.5) - 1.0).abs() < 1e-15);
        assert!(true_pi4(0.0, 0.5).abs() < 1e-15);
        assert!((true_pi4(0.25, 0.25) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spirals_zero_noise_lie_on_curve() {
        let mut rng = RngStream::new(6, 0);
        let (x, labels) = two_spirals(250, 2.0, 0.0, &mut rng).unwrap();
        for (i, &label) in labels.iter().enumerate() {
            let (x1, x2) = (x.get(i, 0), x.get(i, 1));
            let r = (x1 * x1 + x2 * x2).sqrt();
            // Invert the radius to the curve parameter and check the angle.
            let t = (r - 0.1) / 1.5;
            assert!((-1e-9..=1.0 + 1e-9).contains(&t), "r {r} off the arm");
            let base = 2.0 * std::f64::consts::PI * 2.0 * t
                + if label == 1 { std::f64::consts::PI } else { 0.0 };
            let dx = r * base.cos() - x1;
            let dy = r * base.sin() - x2;
            assert!(dx.abs() < 1e-9 && dy.abs() < 1e-9, "point {i} off curve");
        }
    }

    #[test]
    fn spirals_labels_balanced_and_clipped() {
        let mut rng = RngStream::new(7, 0);
        let (x, labels) = two_spirals(251, 2.0, 0.05, &mut rng).unwrap();
        let ones = labels.iter().filter(|&&c| c == 1).count() as i64;
        let zeros = labels.len() as i64 - ones;
        assert!((ones - zeros).abs() <= 1);
        for i in 0..x.n_rows() {
            assert!(x.get(i, 0).abs() <= 1.7 && x.get(i, 1).abs() <= 1.7);
        }
    }

    #[test]
    fn iris_table_shape() {
        let rows = iris_rows();
        assert_eq!(rows.len(), 150);
        for species in 0..3 {
            assert_eq!(rows.iter().filter(|r| r.species == species).count(), 50);
        }
        assert!((rows[0].sepal_length - 5.1).abs() < 1e-12);
        assert!((rows[149].petal_width - 1.8).abs() < 1e-12);
    }
}
