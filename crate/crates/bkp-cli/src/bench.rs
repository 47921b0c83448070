//! Benchmark dataset generation and the O(n^2) timing study.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use bkp::design::{self, iris_rows, latin_hypercube, two_spirals, InputBounds};
use bkp::numerics::{sample_binomial, sample_multinomial, RngStream};
use bkp::{fit_bkp, io, BkpDataset, Error, KernelFamily, LossKind, Matrix, PriorSpec};

/// Streams within the bench seed: design points, trial counts, responses.
const STREAM_DESIGN: u64 = 0;
const STREAM_TRIALS: u64 = 1;
const STREAM_RESPONSE: u64 = 2;

#[derive(Args)]
pub struct BenchArgs {
    /// Target: pi1, pi2, goldstein, multi1d, multi2d, spirals, iris, scaling.
    target: String,
    /// Number of observations (defaults per target).
    #[arg(long)]
    n: Option<usize>,
    /// Generation seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spiral rotations (spirals target).
    #[arg(long, default_value_t = 2.0)]
    cycles: f64,
    /// Coordinate noise standard deviation (spirals target).
    #[arg(long, default_value_t = 0.05)]
    sd: f64,
    /// Sample sizes for the scaling study.
    #[arg(long, default_value = "200,500,1000")]
    n_list: String,
    /// Timing repetitions per sample size (scaling target).
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Multi-start count for the optimized timing scenario.
    #[arg(long, default_value_t = 1)]
    optimize_starts: usize,
}

pub fn run(args: BenchArgs) -> bkp::Result<()> {
    let mut out = super::open_output(&args.out)?;
    match args.target.as_str() {
        "pi1" => {
            let n = args.n.unwrap_or(7);
            let (x, y, m) = binomial_1d(n, args.seed, design::true_pi1)?;
            io::write_bkp_csv(&mut out, &x, &y, &m)?;
        }
        "pi2" => {
            let n = args.n.unwrap_or(30);
            let (x, y, m) = binomial_1d(n, args.seed, design::true_pi2)?;
            io::write_bkp_csv(&mut out, &x, &y, &m)?;
        }
        "goldstein" => {
            let n = args.n.unwrap_or(100);
            let (x, y, m) = goldstein_data(n, args.seed)?;
            io::write_bkp_csv(&mut out, &x, &y, &m)?;
        }
        "multi1d" => {
            let n = args.n.unwrap_or(30);
            let (x, counts) = multinomial_1d(n, args.seed)?;
            io::write_dkp_csv(&mut out, &x, &counts)?;
        }
        "multi2d" => {
            let n = args.n.unwrap_or(100);
            let (x, counts) = multinomial_2d(n, args.seed)?;
            io::write_dkp_csv(&mut out, &x, &counts)?;
        }
        "spirals" => {
            let n = args.n.unwrap_or(250);
            let mut rng = RngStream::new(args.seed, STREAM_DESIGN);
            let (x, labels) = two_spirals(n, args.cycles, args.sd, &mut rng)?;
            let y: Vec<u64> = labels.iter().map(|&c| c as u64).collect();
            let m = vec![1u64; n];
            io::write_bkp_csv(&mut out, &x, &y, &m)?;
        }
        "iris" => {
            let rows = iris_rows();
            let x = Matrix::from_rows(
                &rows.iter().map(|r| vec![r.sepal_length, r.sepal_width]).collect::<Vec<_>>(),
            )?;
            let mut counts = Matrix::zeros(rows.len(), 3);
            for (i, row) in rows.iter().enumerate() {
                counts.set(i, row.species, 1.0);
            }
            io::write_dkp_csv(&mut out, &x, &counts)?;
        }
        "scaling" => {
            scaling_study(&args, &mut out)?;
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown bench target '{other}' (expected pi1, pi2, goldstein, multi1d, \
                 multi2d, spirals, iris, or scaling)"
            )))
        }
    }
    out.flush()?;
    Ok(())
}

/// 1-D binomial data on [-2, 2]: LHD inputs, trial counts uniform on
/// {1..100}, binomial responses from the given probability curve.
fn binomial_1d(
    n: usize,
    seed: u64,
    truth: fn(f64) -> f64,
) -> bkp::Result<(Matrix, Vec<u64>, Vec<u64>)> {
    let mut design_rng = RngStream::new(seed, STREAM_DESIGN);
    let x = latin_hypercube(n, 1, &[(-2.0, 2.0)], &mut design_rng)?;
    let mut trials_rng = RngStream::new(seed, STREAM_TRIALS);
    let mut response_rng = RngStream::new(seed, STREAM_RESPONSE);
    let mut y = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mi = 1 + trials_rng.below(100);
        let pi = truth(x.get(i, 0));
        y.push(sample_binomial(mi, pi, &mut response_rng)?);
        m.push(mi);
    }
    Ok((x, y, m))
}

/// 2-D binomial data on [0, 1]^2 over the rescaled Goldstein-Price surface.
pub fn goldstein_data(n: usize, seed: u64) -> bkp::Result<(Matrix, Vec<u64>, Vec<u64>)> {
    let mut design_rng = RngStream::new(seed, STREAM_DESIGN);
    let x = latin_hypercube(n, 2, &[(0.0, 1.0), (0.0, 1.0)], &mut design_rng)?;
    let mut trials_rng = RngStream::new(seed, STREAM_TRIALS);
    let mut response_rng = RngStream::new(seed, STREAM_RESPONSE);
    let mut y = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for i in 0..n {
        let mi = 1 + trials_rng.below(100);
        let pi = design::true_pi3(x.get(i, 0), x.get(i, 1))?;
        y.push(sample_binomial(mi, pi, &mut response_rng)?);
        m.push(mi);
    }
    Ok((x, y, m))
}

/// 1-D three-class data on [-2, 2]: class probabilities
/// (pi1/2, pi2/2, remainder), trials uniform on {1..150}.
fn multinomial_1d(n: usize, seed: u64) -> bkp::Result<(Matrix, Matrix)> {
    let mut design_rng = RngStream::new(seed, STREAM_DESIGN);
    let x = latin_hypercube(n, 1, &[(-2.0, 2.0)], &mut design_rng)?;
    let mut trials_rng = RngStream::new(seed, STREAM_TRIALS);
    let mut response_rng = RngStream::new(seed, STREAM_RESPONSE);
    let mut counts = Vec::with_capacity(n);
    for i in 0..n {
        let mi = 1 + trials_rng.below(150);
        let p1 = design::true_pi1(x.get(i, 0)) / 2.0;
        let p2 = design::true_pi2(x.get(i, 0)) / 2.0;
        let probs = [p1, p2, 1.0 - p1 - p2];
        let row = sample_multinomial(mi, &probs, &mut response_rng)?;
        counts.push(row.iter().map(|&c| c as f64).collect());
    }
    Ok((x, Matrix::from_rows(&counts)?))
}

/// 2-D three-class data on [0, 1]^2: class probabilities
/// (pi3/2, pi4/2, remainder), trials uniform on {1..150}.
fn multinomial_2d(n: usize, seed: u64) -> bkp::Result<(Matrix, Matrix)> {
    let mut design_rng = RngStream::new(seed, STREAM_DESIGN);
    let x = latin_hypercube(n, 2, &[(0.0, 1.0), (0.0, 1.0)], &mut design_rng)?;
    let mut trials_rng = RngStream::new(seed, STREAM_TRIALS);
    let mut response_rng = RngStream::new(seed, STREAM_RESPONSE);
    let mut counts = Vec::with_capacity(n);
    for i in 0..n {
        let mi = 1 + trials_rng.below(150);
        let p1 = design::true_pi3(x.get(i, 0), x.get(i, 1))? / 2.0;
        let p2 = design::true_pi4(x.get(i, 0), x.get(i, 1)) / 2.0;
        let probs = [p1, p2, 1.0 - p1 - p2];
        let row = sample_multinomial(mi, &probs, &mut response_rng)?;
        counts.push(row.iter().map(|&c| c as f64).collect());
    }
    Ok((x, Matrix::from_rows(&counts)?))
}

/// Time fitting at each sample size, once with theta fixed at 1 and once
/// with multi-start optimization; reports mean seconds per scenario.
fn scaling_study(args: &BenchArgs, out: &mut dyn std::io::Write) -> bkp::Result<()> {
    let sizes: Vec<usize> = args
        .n_list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad sample size '{s}' in --n-list")))
        })
        .collect::<bkp::Result<_>>()?;
    if args.repeats == 0 {
        return Err(Error::Parse("--repeats must be >= 1".into()));
    }
    writeln!(out, "n,seconds_fixed_theta,seconds_optimized")?;
    for &n in &sizes {
        let (x, y, m) = goldstein_data(n, args.seed)?;
        let bounds = InputBounds::unit(2);
        let data = BkpDataset::new(x, bounds, y, m)?;
        let mut fixed_total = 0.0;
        let mut optimized_total = 0.0;
        for _ in 0..args.repeats {
            let start = Instant::now();
            fit_bkp(
                data.clone(),
                KernelFamily::Gaussian,
                PriorSpec::noninformative(),
                LossKind::Brier,
                None,
                Some(&[1.0]),
                args.seed,
            )?;
            fixed_total += start.elapsed().as_secs_f64();

            let start = Instant::now();
            fit_bkp(
                data.clone(),
                KernelFamily::Gaussian,
                PriorSpec::noninformative(),
                LossKind::Brier,
                Some(args.optimize_starts),
                None,
                args.seed,
            )?;
            optimized_total += start.elapsed().as_secs_f64();
        }
        let r = args.repeats as f64;
        writeln!(out, "{n},{},{}", io::fmt_f64(fixed_total / r), io::fmt_f64(optimized_total / r))?;
    }
    Ok(())
}
