//! Random variate generation: gamma, beta, Dirichlet, binomial, multinomial.
//!
//! All samplers draw exclusively from the supplied [`RngStream`], so results
//! are reproducible per `(seed, stream_index)`.

use crate::error::{Error, Result};
use crate::numerics::rng::RngStream;

/// Gamma(shape, scale = 1) draw via the Marsaglia-Tsang squeeze-accept
/// method; shapes below one use the uniform power boost.
pub fn sample_gamma(shape: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::Domain(format!("sample_gamma requires shape > 0, got {shape}")));
    }
    if shape < 1.0 {
        let g = sample_gamma_ge1(shape + 1.0, rng);
        let u = rng.open01();
        // Underflow guard keeps downstream ratios strictly positive.
        return Ok((g * u.powf(1.0 / shape)).max(f64::MIN_POSITIVE));
    }
    Ok(sample_gamma_ge1(shape, rng))
}

fn sample_gamma_ge1(shape: f64, rng: &mut RngStream) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = rng.standard_normal();
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.open01();
        let x2 = x * x;
        // Cheap squeeze first, exact log test second.
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Beta(a, b) draw as the normalized ratio of two gamma draws.
pub fn sample_beta(a: f64, b: f64, rng: &mut RngStream) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "sample_beta requires positive shapes, got a={a}, b={b}"
        )));
    }
    let ga = sample_gamma(a, rng)?;
    let gb = sample_gamma(b, rng)?;
    let x = ga / (ga + gb);
    Ok(x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0))
}

/// Dirichlet(alpha) draw; components are normalized gamma draws.
pub fn sample_dirichlet(alpha: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
    if alpha.len() < 2 {
        return Err(Error::Domain(format!(
            "sample_dirichlet requires at least 2 components, got {}",
            alpha.len()
        )));
    }
    let mut draws = Vec::with_capacity(alpha.len());
    for &a in alpha {
        if !(a > 0.0) {
            return Err(Error::Domain(format!(
                "sample_dirichlet requires positive concentrations, got {a}"
            )));
        }
        draws.push(sample_gamma(a, rng)?);
    }
    let total: f64 = draws.iter().sum();
    for d in &mut draws {
        *d /= total;
    }
    Ok(draws)
}

/// Binomial(m, p) draw by CDF inversion, using the complement when p > 1/2
/// so the expected work is O(m * min(p, 1-p)).
pub fn sample_binomial(m: u64, p: f64, rng: &mut RngStream) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain("sample_binomial requires m >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::Domain(format!("sample_binomial requires 0 <= p <= 1, got {p}")));
    }
    if p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(m);
    }
    if p > 0.5 {
        return Ok(m - sample_binomial(m, 1.0 - p, rng)?);
    }
    let q = 1.0 - p;
    // The inversion start term q^m underflows for very large m; fall back
    // to summing Bernoulli trials there (exact, just slower).
    if (m as f64) * q.ln() < -700.0 {
        let mut count = 0;
        for _ in 0..m {
            if rng.uniform() < p {
                count += 1;
            }
        }
        return Ok(count);
    }
    let ratio = p / q;
    let mut pmf = q.powf(m as f64);
    let mut cdf = pmf;
    let u = rng.uniform();
    let mut k = 0u64;
    while u > cdf && k < m {
        k += 1;
        pmf *= ratio * ((m - k + 1) as f64) / (k as f64);
        cdf += pmf;
    }
    Ok(k)
}

/// Multinomial(m, probs) draw via conditional binomials.
pub fn sample_multinomial(m: u64, probs: &[f64], rng: &mut RngStream) -> Result<Vec<u64>> {
    if probs.len() < 2 {
        return Err(Error::Domain("sample_multinomial requires at least 2 classes".into()));
    }
    if probs.iter().any(|&p| !(0.0..=1.0).contains(&p) || p.is_nan()) {
        return Err(Error::Domain("sample_multinomial probabilities must lie in [0, 1]".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "sample_multinomial probabilities must sum to 1, got {total}"
        )));
    }
    let q = probs.len();
    let mut counts = vec![0u64; q];
    let mut remaining = m;
    let mut rest = 1.0;
    for s in 0..q - 1 {
        if remaining == 0 {
            break;
        }
        let cond = (probs[s] / rest).clamp(0.0, 1.0);
        let draw = sample_binomial(remaining, cond, rng)?;
        counts[s] = draw;
        remaining -= draw;
        rest -= probs[s];
        if rest <= 0.0 {
            break;
        }
    }
    counts[q - 1] += remaining;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 1_000_000;

    fn moments(draws: impl Iterator<Item = f64>, n: usize) -> (f64, f64) {
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for x in draws {
            sum += x;
            sum_sq += x * x;
        }
        let mean = sum / n as f64;
        (mean, sum_sq / n as f64 - mean * mean)
    }

    #[test]
    fn gamma_mean_matches_shape() {
        let mut rng = RngStream::new(11, 0);
        let (mean, _) = moments((0..N).map(|_| sample_gamma(3.0, &mut rng).unwrap()), N);
        // Gamma(3) has mean 3 and variance 3.
        let se = (3.0f64 / N as f64).sqrt();
        assert!((mean - 3.0).abs() <= 3.0 * se, "mean {mean}, 3*SE {}", 3.0 * se);
    }

    #[test]
    fn gamma_small_shape_variance() {
        let mut rng = RngStream::new(12, 0);
        let (_, var) = moments((0..N).map(|_| sample_gamma(0.5, &mut rng).unwrap()), N);
        // Var = shape = 0.5; SE of the sample variance from the fourth moment
        // of Gamma(0.5): mu4 = 3*shape*(shape+2)/... use a conservative 3*SE
        // bound computed from an upper estimate of Var(s^2) = (mu4 - var^2)/N.
        // mu4 for Gamma(k) is 3k(k+2) = 3.75 here.
        let se_var = ((3.75 - 0.25) / N as f64).sqrt();
        assert!((var - 0.5).abs() <= 3.0 * se_var, "var {var}");
    }

    #[test]
    fn gamma_shape_one_is_exponential() {
        // Kolmogorov-Smirnov distance against the Exp(1) CDF.
        let mut rng = RngStream::new(13, 0);
        let mut draws: Vec<f64> = (0..N).map(|_| sample_gamma(1.0, &mut rng).unwrap()).collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = draws.len() as f64;
        let mut ks = 0.0f64;
        for (i, x) in draws.iter().enumerate() {
            let cdf = 1.0 - (-x).exp();
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            ks = ks.max((cdf - lo).abs()).max((cdf - hi).abs());
        }
        assert!(ks < 0.002, "KS statistic {ks}");
    }

    #[test]
    fn beta_uniform_mean() {
        let mut rng = RngStream::new(14, 0);
        let (mean, _) = moments((0..N).map(|_| sample_beta(1.0, 1.0, &mut rng).unwrap()), N);
        let se = (1.0f64 / 12.0 / N as f64).sqrt();
        assert!((mean - 0.5).abs() <= 3.0 * se, "mean {mean}");
    }

    #[test]
    fn beta_4_8_moments() {
        let mut rng = RngStream::new(15, 0);
        let draws: Vec<f64> = (0..N).map(|_| sample_beta(4.0, 8.0, &mut rng).unwrap()).collect();
        let (mean, var) = moments(draws.iter().copied(), N);
        let true_mean = 1.0 / 3.0;
        let true_var = true_mean * (1.0 - true_mean) / 13.0;
        let se_mean = (true_var / N as f64).sqrt();
        assert!((mean - true_mean).abs() <= 3.0 * se_mean, "mean {mean}");
        // SE of the sample variance estimated from the sample fourth moment.
        let m4: f64 = draws.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / N as f64;
        let se_var = ((m4 - var * var) / N as f64).sqrt();
        assert!((var - true_var).abs() <= 3.0 * se_var, "var {var} vs {true_var}");
    }

    #[test]
    fn beta_stays_in_open_interval() {
        let mut rng = RngStream::new(16, 0);
        for _ in 0..10_000 {
            let x = sample_beta(0.1, 0.1, &mut rng).unwrap();
            assert!(x > 0.0 && x < 1.0);
        }
    }

    #[test]
    fn dirichlet_symmetric_means() {
        let mut rng = RngStream::new(17, 0);
        let n = 200_000;
        let mut sums = [0.0; 3];
        for _ in 0..n {
            let d = sample_dirichlet(&[1.0, 1.0, 1.0], &mut rng).unwrap();
            for (s, v) in sums.iter_mut().zip(&d) {
                *s += v;
            }
        }
        // Each marginal is Beta(1, 2) with variance 2/36.
        let se = (2.0 / 36.0f64 / n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64 - 1.0 / 3.0).abs() <= 3.0 * se);
        }
    }

    #[test]
    fn dirichlet_components_sum_to_one() {
        let mut rng = RngStream::new(18, 0);
        for _ in 0..1000 {
            let d = sample_dirichlet(&[3.0, 2.0, 1.0], &mut rng).unwrap();
            let total: f64 = d.iter().sum();
            assert!((total - 1.0).abs() <= 1e-15, "sum {total}");
            assert!(d.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn dirichlet_asymmetric_means() {
        let mut rng = RngStream::new(19, 0);
        let n = 500_000;
        let mut sums = [0.0; 3];
        for _ in 0..n {
            let d = sample_dirichlet(&[3.0, 2.0, 1.0], &mut rng).unwrap();
            for (s, v) in sums.iter_mut().zip(&d) {
                *s += v;
            }
        }
        for (s, want) in sums.iter().zip([0.5, 1.0 / 3.0, 1.0 / 6.0]) {
            let var = want * (1.0 - want) / 7.0;
            let se = (var / n as f64).sqrt();
            assert!((s / n as f64 - want).abs() <= 3.0 * se, "mean {}", s / n as f64);
        }
    }

    #[test]
    fn binomial_degenerate_cases() {
        let mut rng = RngStream::new(20, 0);
        assert_eq!(sample_binomial(10, 0.0, &mut rng).unwrap(), 0);
        assert_eq!(sample_binomial(10, 1.0, &mut rng).unwrap(), 10);
        assert!(sample_binomial(0, 0.5, &mut rng).is_err());
        assert!(sample_binomial(10, 1.5, &mut rng).is_err());
    }

    #[test]
    fn binomial_mean_and_range() {
        let mut rng = RngStream::new(21, 0);
        let mut sum = 0u64;
        for _ in 0..N {
            let k = sample_binomial(100, 0.3, &mut rng).unwrap();
            assert!(k <= 100);
            sum += k;
        }
        let mean = sum as f64 / N as f64;
        let se = (100.0 * 0.3 * 0.7 / N as f64).sqrt();
        assert!((mean - 30.0).abs() <= 3.0 * se, "mean {mean}");
    }

    #[test]
    fn binomial_large_m_bernoulli_fallback() {
        let mut rng = RngStream::new(22, 0);
        let n = 200;
        let mut sum = 0u64;
        for _ in 0..n {
            sum += sample_binomial(5000, 0.4, &mut rng).unwrap();
        }
        let mean = sum as f64 / n as f64;
        let se = (5000.0 * 0.4 * 0.6 / n as f64).sqrt();
        assert!((mean - 2000.0).abs() <= 4.0 * se, "mean {mean}");
    }

    #[test]
    fn multinomial_counts_sum_to_m() {
        let mut rng = RngStream::new(23, 0);
        for _ in 0..1000 {
            let c = sample_multinomial(37, &[0.2, 0.5, 0.3], &mut rng).unwrap();
            assert_eq!(c.iter().sum::<u64>(), 37);
        }
    }

    #[test]
    fn samplers_are_deterministic_per_stream() {
        let mut a = RngStream::new(99, 5);
        let mut b = RngStream::new(99, 5);
        for _ in 0..100 {
            assert_eq!(
                sample_gamma(2.5, &mut a).unwrap().to_bits(),
                sample_gamma(2.5, &mut b).unwrap().to_bits()
            );
        }
    }
}
