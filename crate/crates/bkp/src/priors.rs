//! Prior construction: noninformative, fixed informative, and data-adaptive
//! Beta/Dirichlet shape parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorStrategy {
    Noninformative,
    Fixed,
    Adaptive,
}

impl std::fmt::Display for PriorStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PriorStrategy::Noninformative => "noninformative",
            PriorStrategy::Fixed => "fixed",
            PriorStrategy::Adaptive => "adaptive",
        })
    }
}

impl std::str::FromStr for PriorStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noninformative" => Ok(PriorStrategy::Noninformative),
            "fixed" => Ok(PriorStrategy::Fixed),
            "adaptive" => Ok(PriorStrategy::Adaptive),
            other => Err(Error::Parse(format!(
                "unknown prior '{other}' (expected noninformative, fixed, or adaptive)"
            ))),
        }
    }
}

/// Total kernel mass below which the adaptive prior falls back to the
/// noninformative one (an isolated query point carries no local data).
pub const ADAPTIVE_MASS_FLOOR: f64 = 1e-10;

/// Prior specification.
///
/// `p0` holds a single success probability for binomial models and a full
/// probability vector (one entry per class) for multinomial ones; it is
/// only consulted by the fixed strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub strategy: PriorStrategy,
    pub r0: f64,
    pub p0: Vec<f64>,
}

impl PriorSpec {
    /// Beta(1, 1) / Dirichlet(1, ..., 1) everywhere.
    pub fn noninformative() -> Self {
        Self { strategy: PriorStrategy::Noninformative, r0: 2.0, p0: vec![0.5] }
    }

    /// Fixed binomial prior with mean `p0` and precision `r0`.
    pub fn fixed(r0: f64, p0: f64) -> Result<Self> {
        let spec = Self { strategy: PriorStrategy::Fixed, r0, p0: vec![p0] };
        spec.validate_binomial()?;
        Ok(spec)
    }

    /// Fixed multinomial prior with mean vector `p0` and precision `r0`.
    pub fn fixed_multiclass(r0: f64, p0: Vec<f64>) -> Result<Self> {
        let spec = Self { strategy: PriorStrategy::Fixed, r0, p0 };
        spec.validate_multiclass(spec.p0.len())?;
        Ok(spec)
    }

    /// Locally adaptive prior with global precision `r0`.
    pub fn adaptive(r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::Domain(format!("r0 must be positive, got {r0}")));
        }
        Ok(Self { strategy: PriorStrategy::Adaptive, r0, p0: vec![0.5] })
    }

    pub fn validate_binomial(&self) -> Result<()> {
        if !(self.r0 > 0.0) || !self.r0.is_finite() {
            return Err(Error::Domain(format!("r0 must be positive, got {}", self.r0)));
        }
        if self.strategy == PriorStrategy::Fixed {
            if self.p0.len() != 1 {
                return Err(Error::Dimension(format!(
                    "binomial prior expects a single p0, got {} values",
                    self.p0.len()
                )));
            }
            let p = self.p0[0];
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::Domain(format!("p0 must lie in (0, 1), got {p}")));
            }
        }
        Ok(())
    }

    pub fn validate_multiclass(&self, q: usize) -> Result<()> {
        if !(self.r0 > 0.0) || !self.r0.is_finite() {
            return Err(Error::Domain(format!("r0 must be positive, got {}", self.r0)));
        }
        if self.strategy == PriorStrategy::Fixed {
            let expanded = self.class_p0(q)?;
            if expanded.iter().any(|&p| !(p > 0.0)) {
                return Err(Error::Domain("prior mean components must be positive".into()));
            }
            let total: f64 = expanded.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "prior mean components must sum to 1 within 1e-12, got {total}"
                )));
            }
        }
        Ok(())
    }

    /// Per-class prior means for a `q`-class model. A scalar binomial `p0`
    /// expands to `[p0, 1 - p0]` when `q == 2`; other strategies default to
    /// the uniform vector (unused by their formulas).
    pub(crate) fn class_p0(&self, q: usize) -> Result<Vec<f64>> {
        if self.strategy != PriorStrategy::Fixed {
            return Ok(vec![1.0 / q as f64; q]);
        }
        if self.p0.len() == q {
            return Ok(self.p0.clone());
        }
        if self.p0.len() == 1 && q == 2 {
            return Ok(vec![self.p0[0], 1.0 - self.p0[0]]);
        }
        Err(Error::Dimension(format!(
            "prior mean vector has {} entries, expected {q}",
            self.p0.len()
        )))
    }

    /// One-line description used by the fit summaries.
    pub fn describe(&self, q: usize) -> String {
        match self.strategy {
            PriorStrategy::Noninformative => {
                if q <= 2 {
                    "Noninformative prior: Beta(1,1).".to_string()
                } else {
                    format!("Noninformative prior: Dirichlet(1,...,1) over {q} classes.")
                }
            }
            PriorStrategy::Fixed => {
                if q <= 2 && self.p0.len() == 1 {
                    format!(
                        "Fixed prior: Beta({:.4}, {:.4}) with r0 = {}, p0 = {}.",
                        self.r0 * self.p0[0],
                        self.r0 * (1.0 - self.p0[0]),
                        self.r0,
                        self.p0[0]
                    )
                } else {
                    let comps: Vec<String> =
                        self.p0.iter().map(|p| format!("{:.4}", self.r0 * p)).collect();
                    format!("Fixed prior: Dirichlet({}) with r0 = {}.", comps.join(", "), self.r0)
                }
            }
            PriorStrategy::Adaptive => {
                format!("Adaptive prior: kernel-weighted local mean with r0 = {}.", self.r0)
            }
        }
    }
}

/// Binomial prior shapes `(alpha0, beta0)` at a query point with kernel
/// weights `kvec` against observed successes `y` out of `m` trials.
pub fn prior_bkp(spec: &PriorSpec, kvec: &[f64], y: &[u64], m: &[u64]) -> Result<(f64, f64)> {
    if kvec.len() != y.len() || y.len() != m.len() {
        return Err(Error::Dimension(format!(
            "prior_bkp lengths disagree: k {}, y {}, m {}",
            kvec.len(),
            y.len(),
            m.len()
        )));
    }
    for (i, (&yi, &mi)) in y.iter().zip(m).enumerate() {
        if mi == 0 || yi > mi {
            return Err(Error::Data(format!(
                "row {}: need 0 <= y <= m with m >= 1, got y={yi}, m={mi}",
                i + 1
            )));
        }
    }
    spec.validate_binomial()?;
    match spec.strategy {
        PriorStrategy::Noninformative => Ok((1.0, 1.0)),
        PriorStrategy::Fixed => {
            let p = spec.p0[0];
            Ok((spec.r0 * p, spec.r0 * (1.0 - p)))
        }
        PriorStrategy::Adaptive => {
            let total: f64 = kvec.iter().sum();
            if total < ADAPTIVE_MASS_FLOOR {
                return Ok((1.0, 1.0));
            }
            let mut p = 0.0;
            for i in 0..kvec.len() {
                p += kvec[i] * (y[i] as f64 / m[i] as f64);
            }
            p /= total;
            let r = spec.r0 * total;
            Ok((r * p, r * (1.0 - p)))
        }
    }
}

/// Dirichlet prior concentration vector at a query point for a count matrix
/// `counts` (n rows, q classes).
pub fn prior_dkp(spec: &PriorSpec, kvec: &[f64], counts: &Matrix) -> Result<Vec<f64>> {
    let (n, q) = (counts.n_rows(), counts.n_cols());
    if kvec.len() != n {
        return Err(Error::Dimension(format!("prior_dkp got {} weights for {n} rows", kvec.len())));
    }
    if q < 2 {
        return Err(Error::Dimension(format!("prior_dkp needs q >= 2 classes, got {q}")));
    }
    let mut trials = Vec::with_capacity(n);
    for i in 0..n {
        let m: f64 = counts.row(i).iter().sum();
        if m < 1.0 {
            return Err(Error::Data(format!("row {}: total count must be >= 1", i + 1)));
        }
        trials.push(m);
    }
    spec.validate_multiclass(q)?;
    match spec.strategy {
        PriorStrategy::Noninformative => Ok(vec![1.0; q]),
        PriorStrategy::Fixed => {
            let p0 = spec.class_p0(q)?;
            Ok(p0.iter().map(|p| spec.r0 * p).collect())
        }
        PriorStrategy::Adaptive => {
            let total: f64 = kvec.iter().sum();
            if total < ADAPTIVE_MASS_FLOOR {
                return Ok(vec![1.0; q]);
            }
            let mut alpha = vec![0.0; q];
            for i in 0..n {
                let row = counts.row(i);
                for s in 0..q {
                    alpha[s] += kvec[i] * (row[s] / trials[i]);
                }
            }
            let r = spec.r0 * total;
            for a in &mut alpha {
                *a = r * (*a / total);
            }
            Ok(alpha)
        }
    }
}
