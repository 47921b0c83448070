//! Command-line front end: fit models from CSV, persist them as JSON,
//! predict and simulate over query files or grids, and generate the
//! benchmark datasets.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use bkp::io::{self, ModelFile, ModelKind};
use bkp::{
    fit_bkp, fit_dkp, BkpDataset, DkpDataset, Error, InputBounds, KernelFamily, LossKind, Matrix,
    PriorSpec, PriorStrategy, RngStream,
};

mod bench;

#[derive(Parser)]
#[command(
    name = "bkp",
    version,
    about = "Beta and Dirichlet kernel process models: closed-form kernel-weighted \
             conjugate posteriors for binomial and multinomial probability surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model from a dataset CSV and write the model JSON.
    Fit(FitArgs),
    /// Posterior summaries (mean, variance, credible bounds) at query points.
    Predict(PredictArgs),
    /// Draws from the posterior at query points.
    Simulate(SimulateArgs),
    /// Generate benchmark datasets or run the timing study.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Dataset CSV: x1..xd,y,m (bkp) or x1..xd,y1..yq (dkp).
    #[arg(long)]
    data: PathBuf,
    /// Output path for the fitted-model JSON.
    #[arg(long)]
    model_out: PathBuf,
    /// Model kind: bkp (binomial) or dkp (multinomial).
    #[arg(long)]
    kind: String,
    /// Kernel family: gaussian, matern32, or matern52.
    #[arg(long, default_value = "gaussian")]
    kernel: String,
    /// Tuning loss: brier or log_loss.
    #[arg(long, default_value = "brier")]
    loss: String,
    /// Prior strategy: noninformative, fixed, or adaptive.
    #[arg(long, default_value = "noninformative")]
    prior: String,
    /// Prior precision.
    #[arg(long, default_value_t = 2.0)]
    r0: f64,
    /// Prior mean: a probability (bkp) or comma list over classes (dkp).
    #[arg(long)]
    p0: Option<String>,
    /// Per-dimension input bounds lo:hi[,lo:hi...]; defaults to the unit cube.
    #[arg(long, allow_hyphen_values = true)]
    xbounds: Option<String>,
    /// Fixed kernel length scale(s): scalar or comma list. Skips tuning.
    #[arg(long)]
    theta: Option<String>,
    /// Number of multi-start initial values (default 10 per dimension).
    #[arg(long)]
    n_starts: Option<usize>,
    /// Seed for the multi-start design.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct PredictArgs {
    /// Fitted-model JSON.
    #[arg(long)]
    model: PathBuf,
    /// Query CSV with columns x1..xd.
    #[arg(long, conflicts_with = "grid")]
    query: Option<PathBuf>,
    /// Evaluate on an N-per-dimension mesh over the model bounds instead.
    #[arg(long)]
    grid: Option<usize>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Credible interval level.
    #[arg(long, default_value_t = 0.95)]
    ci_level: f64,
    /// Classification threshold (unit-trial binomial models).
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Fitted-model JSON.
    #[arg(long)]
    model: PathBuf,
    /// Query CSV with columns x1..xd.
    #[arg(long, conflicts_with = "grid")]
    query: Option<PathBuf>,
    /// Evaluate on an N-per-dimension mesh over the model bounds instead.
    #[arg(long)]
    grid: Option<usize>,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of posterior draws per query point.
    #[arg(long, default_value_t = 1)]
    n_sim: usize,
    /// Simulation seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Emit 0/1 labels by thresholding each draw (unit-trial bkp models).
    #[arg(long)]
    threshold: Option<f64>,
    /// Emit argmax class labels per draw (dkp models).
    #[arg(long)]
    map_labels: bool,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// Worker count comes from BKP_NUM_THREADS; default is all available cores.
fn configure_threads() {
    if let Ok(value) = std::env::var("BKP_NUM_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> bkp::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_bounds_flag(flag: &Option<String>, d: usize) -> bkp::Result<InputBounds> {
    match flag {
        None => Ok(InputBounds::unit(d)),
        Some(text) => {
            let pairs = io::parse_xbounds(text)?;
            if pairs.len() != d {
                return Err(Error::Dimension(format!(
                    "--xbounds has {} pairs, data has {d} input columns",
                    pairs.len()
                )));
            }
            InputBounds::from_pairs(&pairs)
        }
    }
}

fn cmd_fit(args: FitArgs) -> bkp::Result<()> {
    let kernel = KernelFamily::from_str(&args.kernel)?;
    let loss = LossKind::from_str(&args.loss)?;
    let strategy = PriorStrategy::from_str(&args.prior)?;
    let theta = args.theta.as_deref().map(io::parse_f64_list).transpose()?;
    let file = File::open(&args.data)?;

    let model_file = match args.kind.as_str() {
        "bkp" => {
            let (x, y, m) = io::read_bkp_csv(file)?;
            let bounds = parse_bounds_flag(&args.xbounds, x.n_cols())?;
            let prior = build_prior(strategy, args.r0, args.p0.as_deref(), 2)?;
            let data = BkpDataset::new(x, bounds, y, m)?;
            let model =
                fit_bkp(data, kernel, prior, loss, args.n_starts, theta.as_deref(), args.seed)?;
            println!("{}", model.summary());
            ModelFile::bkp(model)
        }
        "dkp" => {
            let (x, counts) = io::read_dkp_csv(file)?;
            let bounds = parse_bounds_flag(&args.xbounds, x.n_cols())?;
            let prior = build_prior(strategy, args.r0, args.p0.as_deref(), counts.n_cols())?;
            let data = DkpDataset::new(x, bounds, counts)?;
            let model =
                fit_dkp(data, kernel, prior, loss, args.n_starts, theta.as_deref(), args.seed)?;
            println!("{}", model.summary());
            ModelFile::dkp(model)
        }
        other => {
            return Err(Error::Parse(format!("unknown --kind '{other}' (expected bkp or dkp)")))
        }
    };
    io::save_model(&args.model_out, &model_file)?;
    println!("Model written to {}", args.model_out.display());
    Ok(())
}

fn build_prior(
    strategy: PriorStrategy,
    r0: f64,
    p0: Option<&str>,
    q: usize,
) -> bkp::Result<PriorSpec> {
    let p0_values = p0.map(io::parse_f64_list).transpose()?;
    match strategy {
        PriorStrategy::Noninformative => Ok(PriorSpec::noninformative()),
        PriorStrategy::Adaptive => PriorSpec::adaptive(r0),
        PriorStrategy::Fixed => match p0_values {
            None => {
                if q == 2 {
                    PriorSpec::fixed(r0, 0.5)
                } else {
                    PriorSpec::fixed_multiclass(r0, vec![1.0 / q as f64; q])
                }
            }
            Some(values) if values.len() == 1 && q == 2 => PriorSpec::fixed(r0, values[0]),
            Some(values) => PriorSpec::fixed_multiclass(r0, values),
        },
    }
}

fn query_points(
    query: &Option<PathBuf>,
    grid: Option<usize>,
    d: usize,
    bounds: &InputBounds,
) -> bkp::Result<Matrix> {
    match (query, grid) {
        (Some(path), None) => io::read_query_csv(File::open(path)?, d),
        (None, Some(per_dim)) => bkp::design::grid(bounds, per_dim),
        _ => Err(Error::Parse("provide exactly one of --query or --grid".into())),
    }
}

fn cmd_predict(args: PredictArgs) -> bkp::Result<()> {
    let model = io::load_model(&args.model)?;
    let mut out = open_output(&args.out)?;
    match &model.model {
        ModelKind::Bkp(m) => {
            let xnew = query_points(&args.query, args.grid, m.data().d(), m.data().bounds())?;
            let summaries = m.predict(&xnew, args.ci_level, args.threshold)?;
            io::write_bkp_predictions(&mut out, &xnew, &summaries)?;
        }
        ModelKind::Dkp(m) => {
            let xnew = query_points(&args.query, args.grid, m.data().d(), m.data().bounds())?;
            let summaries = m.predict(&xnew, args.ci_level)?;
            io::write_dkp_predictions(&mut out, &xnew, &summaries)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> bkp::Result<()> {
    let model = io::load_model(&args.model)?;
    let rng = RngStream::new(args.seed, 0);
    let mut out = open_output(&args.out)?;
    match &model.model {
        ModelKind::Bkp(m) => {
            if args.map_labels {
                return Err(Error::Parse(
                    "--map-labels applies to dkp models; use --threshold for bkp".into(),
                ));
            }
            let xnew = query_points(&args.query, args.grid, m.data().d(), m.data().bounds())?;
            let sims = m.simulate(&xnew, args.n_sim, args.threshold, &rng)?;
            io::write_bkp_draws(&mut out, &xnew, &sims)?;
        }
        ModelKind::Dkp(m) => {
            if args.threshold.is_some() {
                return Err(Error::Parse(
                    "--threshold applies to bkp models; use --map-labels for dkp".into(),
                ));
            }
            let xnew = query_points(&args.query, args.grid, m.data().d(), m.data().bounds())?;
            let sims = m.simulate(&xnew, args.n_sim, &rng, args.map_labels)?;
            io::write_dkp_draws(&mut out, &xnew, &sims)?;
        }
    }
    out.flush()?;
    Ok(())
}
