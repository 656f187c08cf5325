//! `mpsum`: sample mixed Poisson sums, compute ζ distances, evaluate bounds
//! and run experiments.
//!
//! Exit codes: 0 success, 1 bound violation, 2 usage or input error.

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpsum::bounds;
use mpsum::harness::{self, ExperimentConfig, ExperimentRow, OutputFormat, PresetScale};
use mpsum::random_sums::{MixingLaw, MixingModel, RandomSumModel, ScaleSequence, SummandLaw};
use mpsum::zeta::{lemma4_upper_bound_for, zeta1, zeta2, zeta_s_lower_bound_refined};
use mpsum::{BoundReport64, EmpiricalDistribution64, ExponentialLaw, GammaLaw, GeneralizedGammaLaw, ZetaOrder64};

const POWER_NOTE: &str = "The generalized gamma exponent is called `power` here; `alpha` is reserved for the fractional part of the metric order s = m + alpha.";

#[derive(Parser)]
#[command(name = "mpsum", version, about = "Mixed Poisson random sums and Zolotarev zeta-metric bounds", after_help = POWER_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw normalized sums S_n / (a m_n), one per line.
    Sample(SampleArgs),
    /// Distance between a sample and a limit law.
    Zeta(ZetaArgs),
    /// Evaluate a bound and print it as JSON.
    Bound(BoundArgs),
    /// Run an experiment from a TOML config.
    Experiment(ExperimentArgs),
    /// Run built-in experiments and check every bound.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplePreset {
    /// Geometric sums: exponential mixing, needs --p.
    Example1,
    /// Negative binomial sums: gamma mixing, needs --r --mu --n.
    Example2,
    /// Generalized gamma mixing, needs --shape --power --rate --n.
    Example3,
}

#[derive(Args)]
struct SampleArgs {
    /// Built-in model. Summands are standard exponential.
    #[arg(long, value_enum, required_unless_present = "config", conflicts_with = "config")]
    preset: Option<SamplePreset>,
    /// Experiment config whose model is used (with --n).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    shape: Option<f64>,
    /// Generalized gamma exponent (alpha in the usual GG notation).
    #[arg(long, allow_hyphen_values = true)]
    power: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long)]
    seed: u64,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LimitKind {
    Exponential,
    Gamma,
    GeneralizedGamma,
    PointMass,
}

#[derive(Args)]
struct ZetaArgs {
    /// Metric order in [1, 2].
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    /// File with one sample value per line, or `-` for stdin.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    limit: LimitKind,
    #[arg(long)]
    shape: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    /// Generalized gamma exponent.
    #[arg(long, allow_hyphen_values = true)]
    power: Option<f64>,
    #[arg(long)]
    value: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Selector {
    Lemma5,
    Theorem1,
    Corollary1,
    Remark1,
    Corollary2,
    Example1,
    Negbin,
    #[value(name = "example2_zeta2")]
    Example2Zeta2,
    Gg,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(value_enum)]
    selector: Selector,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long)]
    sigma2: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// E Lambda_n^{s/2} (theorem1), E Lambda_n (corollary1) or E Lambda^{s/2} (corollary2).
    #[arg(long)]
    moment: Option<f64>,
    #[arg(long)]
    m_n: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    mixing_zeta: f64,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    n: Option<f64>,
    #[arg(long)]
    shape: Option<f64>,
    /// Generalized gamma exponent.
    #[arg(long, allow_hyphen_values = true)]
    power: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides output.path from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyPreset {
    Example1,
    Example2,
    Example3,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Small,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    preset: VerifyPreset,
    #[arg(long, value_enum, default_value = "small")]
    scale: Scale,
    /// Directory for `<preset>.csv` and `<preset>.json`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Violation,
}

impl From<mpsum::Error> for Failure {
    fn from(e: mpsum::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Zeta(args) => cmd_zeta(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn sample_model(args: &SampleArgs) -> Result<RandomSumModel<f64>, Failure> {
    if let Some(path) = &args.config {
        let config = ExperimentConfig::from_file(path)?;
        let n = need(args.n, "n")?;
        return Ok(RandomSumModel::new(config.summand.build()?, config.mixing.build()?, n)?);
    }
    let summand = SummandLaw::exponential(1.0)?;
    match args.preset.expect("clap enforces preset or config") {
        SamplePreset::Example1 => {
            let p = need(args.p, "p")?;
            if !(p > 0.0 && p < 1.0) {
                return Err(Failure::Usage(format!("--p must lie in (0, 1), got {p}")));
            }
            let mixing = MixingModel::scale_family(MixingLaw::Exponential(ExponentialLaw::new(1.0)?), ScaleSequence::linear((1.0 - p) / p)?);
            Ok(RandomSumModel::new(summand, mixing, 1)?)
        }
        SamplePreset::Example2 => {
            let (r, mu, n) = (need(args.r, "r")?, need(args.mu, "mu")?, need(args.n, "n")?);
            if !(mu > 0.0) {
                return Err(Failure::Usage(format!("--mu must be positive, got {mu}")));
            }
            let mixing = MixingModel::scale_family(MixingLaw::Gamma(GammaLaw::new(r, r)?), ScaleSequence::linear(r / mu)?);
            Ok(RandomSumModel::new(summand, mixing, n)?)
        }
        SamplePreset::Example3 => {
            let gg = GeneralizedGammaLaw::new(need(args.shape, "shape")?, need(args.power, "power")?, need(args.rate, "rate")?)?;
            let mixing = MixingModel::scale_family(MixingLaw::GeneralizedGamma(gg), ScaleSequence::linear(1.0)?);
            Ok(RandomSumModel::new(summand, mixing, need(args.n, "n")?)?)
        }
    }
}

fn cmd_sample(args: SampleArgs) -> CmdResult {
    let model = sample_model(&args)?;
    let draws = model.sample_draws(args.count as usize, args.seed)?;
    let mut text = String::with_capacity(draws.len() * 24);
    for x in draws {
        text.push_str(&format!("{x:.16e}\n"));
    }
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn read_sample(path: &Path) -> Result<Vec<f64>, Failure> {
    let reader: Box<dyn BufRead> = if path == Path::new("-") {
        Box::new(io::stdin().lock())
    } else {
        Box::new(io::BufReader::new(std::fs::File::open(path).map_err(|e| io_failure(path, e))?))
    };
    let mut values = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| io_failure(path, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v = line
            .parse::<f64>()
            .map_err(|_| Failure::Usage(format!("{}:{}: not a number: {line}", path.display(), i + 1)))?;
        values.push(v);
    }
    Ok(values)
}

fn cmd_zeta(args: ZetaArgs) -> CmdResult {
    let order = ZetaOrder64::new(args.s).map_err(|e| Failure::Usage(format!("--s: {e}")))?;
    let sample = EmpiricalDistribution64::new(read_sample(&args.input)?)?;
    let limit = match args.limit {
        LimitKind::Exponential => MixingLaw::Exponential(ExponentialLaw::new(need(args.rate, "rate")?)?),
        LimitKind::Gamma => MixingLaw::Gamma(GammaLaw::new(need(args.shape, "shape")?, need(args.rate, "rate")?)?),
        LimitKind::GeneralizedGamma => MixingLaw::GeneralizedGamma(GeneralizedGammaLaw::new(
            need(args.shape, "shape")?,
            need(args.power, "power")?,
            need(args.rate, "rate")?,
        )?),
        LimitKind::PointMass => MixingLaw::point_mass(need(args.value, "value")?)?,
    };
    let lower = zeta_s_lower_bound_refined(order, &sample, &limit)?;
    let upper = lemma4_upper_bound_for(order, &sample, &limit)?;
    let exact = if args.s == 1.0 {
        Some(zeta1(&sample, &limit)?)
    } else if args.s == 2.0 {
        Some(zeta2(&sample, &limit)?)
    } else {
        None
    };
    let out = serde_json::json!({
        "s": args.s,
        "samples": sample.len(),
        "value": exact.as_ref().map(|z| z.value),
        "kind": exact.as_ref().map(|z| z.kind),
        "precision_warning": exact.as_ref().and_then(|z| z.precision_warning.clone()),
        "lower_bound": lower.value,
        "lemma4_upper": upper.value,
    });
    println!("{out}");
    Ok(())
}

fn bound_report(args: &BoundArgs) -> Result<BoundReport64, Failure> {
    let order = ZetaOrder64::new(args.s).map_err(|e| Failure::Usage(format!("--s: {e}")))?;
    let a = need(args.a, "a")?;
    let sigma2 = need(args.sigma2, "sigma2")?;
    let report = match args.selector {
        Selector::Lemma5 => bounds::lemma5(order, need(args.lambda, "lambda")?, a, sigma2)?,
        Selector::Theorem1 => bounds::theorem1(order, need(args.moment, "moment")?, need(args.m_n, "m-n")?, a, sigma2, args.mixing_zeta)?,
        Selector::Corollary1 => bounds::corollary1(need(args.moment, "moment")?, need(args.m_n, "m-n")?, a, sigma2, args.mixing_zeta)?,
        Selector::Remark1 => bounds::remark1(order, need(args.m_n, "m-n")?, a, sigma2, args.mixing_zeta)?,
        Selector::Corollary2 => bounds::corollary2(order, need(args.moment, "moment")?, need(args.m_n, "m-n")?, a, sigma2)?,
        Selector::Example1 => bounds::example1(order, need(args.p, "p")?, a, sigma2)?,
        Selector::Negbin => bounds::negative_binomial(order, need(args.r, "r")?, need(args.p, "p")?, a, sigma2)?,
        Selector::Example2Zeta2 => bounds::example2_zeta2(need(args.r, "r")?, need(args.mu, "mu")?, need(args.n, "n")?, a, sigma2)?,
        Selector::Gg => {
            let gg = GeneralizedGammaLaw::new(need(args.shape, "shape")?, need(args.power, "power")?, need(args.rate, "rate")?)?;
            bounds::generalized_gamma(order, &gg, need(args.n, "n")?, a, sigma2)?
        }
    };
    Ok(report)
}

fn cmd_bound(args: BoundArgs) -> CmdResult {
    let report = bound_report(&args)?;
    println!("{}", report.to_json());
    Ok(())
}

fn all_satisfied(rows: &[ExperimentRow]) -> bool {
    rows.iter().all(|r| r.bound_satisfied)
}

fn cmd_experiment(args: ExperimentArgs) -> CmdResult {
    let config = ExperimentConfig::from_file(&args.config)?;
    let rows = harness::run_experiment(&config)?;
    let configured = config.output.as_ref();
    let format = args.format.map(OutputFormat::from).or(configured.map(|o| o.format)).unwrap_or_default();
    let path = args.out.or_else(|| configured.map(|o| o.path.clone()));
    match path {
        Some(path) => harness::emit(&rows, format, &path)?,
        None => {
            let text = match format {
                OutputFormat::Csv => harness::to_csv(&rows),
                OutputFormat::Json => harness::to_json(&rows),
            };
            print!("{text}");
        }
    }
    let name = if config.name.is_empty() { "experiment" } else { config.name.as_str() };
    eprint!("{}", harness::summary_table(name, &rows));
    if all_satisfied(&rows) {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let names: Vec<&str> = match args.preset {
        VerifyPreset::Example1 => vec!["example1"],
        VerifyPreset::Example2 => vec!["example2"],
        VerifyPreset::Example3 => vec!["example3"],
        VerifyPreset::All => harness::PRESETS.to_vec(),
    };
    let scale = match args.scale {
        Scale::Small => PresetScale::Small,
        Scale::Full => PresetScale::Full,
    };
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    }
    let mut ok = true;
    for name in names {
        let config = harness::preset(name, scale)?;
        let rows = harness::run_experiment(&config)?;
        if let Some(dir) = &args.out_dir {
            harness::emit(&rows, OutputFormat::Csv, &dir.join(format!("{name}.csv")))?;
            harness::emit(&rows, OutputFormat::Json, &dir.join(format!("{name}.json")))?;
        }
        print!("{}", harness::summary_table(name, &rows));
        if rows.len() >= 3 {
            if let Ok(slope) = harness::fit_decay_slope(&rows) {
                println!("log-log slope {slope:.4}");
            }
        }
        println!();
        ok &= all_satisfied(&rows);
    }
    if ok {
        Ok(())
    } else {
        eprintln!("bound violated in at least one row");
        Err(Failure::Violation)
    }
}
