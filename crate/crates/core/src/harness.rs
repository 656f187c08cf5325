//! Config-driven experiments: sample normalized sums over a grid of `n`,
//! estimate ζ_s against the limit law, and compare with the matching bound.
//!
//! The harness works in `f64`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundReport, BoundSource};
use crate::distributions::{ExponentialLaw, GammaLaw, GeneralizedGammaLaw, Law};
use crate::error::{Error, Result};
use crate::random_sums::{MixingLaw, MixingMode, MixingModel, RandomSumModel, ScaleSequence, SummandLaw};
use crate::rng::derive_seed;
use crate::zeta::{lemma4_upper_bound, zeta1, zeta2, zeta_s_lower_bound_refined, EmpiricalDistribution, ZetaOrder};

/// Smallest sample size accepted for `s > 1`, below which Monte Carlo noise
/// swamps ζ₂.
pub const MIN_SAMPLES_ZETA2: usize = 1000;

/// Slack multiplier on the replication standard error in the bound check.
pub const STDERR_SLACK: f64 = 3.0;

pub const DEFAULT_REPLICATIONS: usize = 8;

/// Column order of the CSV output.
pub const CSV_COLUMNS: [&str; 11] = [
    "n",
    "m_n",
    "zeta_empirical",
    "zeta_stderr",
    "zeta_lower",
    "lemma4_upper",
    "bound_total",
    "bound_poissonization",
    "bound_mixing",
    "bound_source",
    "bound_satisfied",
];

const UNDEFINED: &str = "undefined";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    /// One of `exponential`, `uniform`, `shifted_bernoulli`, `lognormal`,
    /// `normal`, `constant`.
    pub kind: String,
    pub rate: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub p: Option<f64>,
    pub shift: Option<f64>,
    pub log_mean: Option<f64>,
    pub log_sd: Option<f64>,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub value: Option<f64>,
}

impl SummandSpec {
    pub fn exponential(rate: f64) -> Self {
        Self { rate: Some(rate), ..Self::empty("exponential") }
    }

    fn empty(kind: &str) -> Self {
        Self {
            kind: kind.to_string(),
            rate: None,
            lo: None,
            hi: None,
            p: None,
            shift: None,
            log_mean: None,
            log_sd: None,
            mean: None,
            sd: None,
            value: None,
        }
    }

    pub fn build(&self) -> Result<SummandLaw<f64>> {
        let req = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::Config(format!("summand.{name} is required for summand.kind = \"{}\"", self.kind)));
        match self.kind.as_str() {
            "exponential" => SummandLaw::exponential(req(self.rate, "rate")?),
            "uniform" => SummandLaw::uniform(req(self.lo, "lo")?, req(self.hi, "hi")?),
            "shifted_bernoulli" => SummandLaw::shifted_bernoulli(req(self.p, "p")?, req(self.shift, "shift")?),
            "lognormal" => SummandLaw::lognormal(req(self.log_mean, "log_mean")?, req(self.log_sd, "log_sd")?),
            "normal" => SummandLaw::normal(req(self.mean, "mean")?, req(self.sd, "sd")?),
            "constant" => SummandLaw::constant(req(self.value, "value")?),
            other => Err(Error::Config(format!("unknown summand.kind \"{other}\""))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    #[default]
    ScaleFamily,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixingSpec {
    /// One of `exponential`, `gamma`, `generalized_gamma`, `point_mass`.
    pub kind: String,
    pub shape: Option<f64>,
    pub rate: Option<f64>,
    /// GG exponent.
    pub power: Option<f64>,
    /// Location of a point mass.
    pub value: Option<f64>,
    #[serde(default)]
    pub mode: ModeSpec,
    /// Shape offset `d` in explicit mode: `Λ_n/m_n` has shape `shape + d/n`.
    pub shape_drift: Option<f64>,
    /// `m_n = scale_coef · n^scale_exponent`.
    #[serde(default = "one")]
    pub scale_coef: f64,
    #[serde(default = "one")]
    pub scale_exponent: f64,
}

fn one() -> f64 {
    1.0
}

impl MixingSpec {
    fn law(&self) -> Result<MixingLaw<f64>> {
        let req = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::Config(format!("mixing.{name} is required for mixing.kind = \"{}\"", self.kind)));
        Ok(match self.kind.as_str() {
            "exponential" => MixingLaw::Exponential(ExponentialLaw::new(req(self.rate, "rate")?)?),
            "gamma" => MixingLaw::Gamma(GammaLaw::new(req(self.shape, "shape")?, req(self.rate, "rate")?)?),
            "generalized_gamma" => MixingLaw::GeneralizedGamma(GeneralizedGammaLaw::new(
                req(self.shape, "shape")?,
                req(self.power, "power")?,
                req(self.rate, "rate")?,
            )?),
            "point_mass" => MixingLaw::point_mass(req(self.value, "value")?)?,
            other => return Err(Error::Config(format!("unknown mixing.kind \"{other}\""))),
        })
    }

    pub fn build(&self) -> Result<MixingModel<f64>> {
        let scale = if self.scale_exponent == 1.0 {
            ScaleSequence::linear(self.scale_coef)?
        } else {
            ScaleSequence::power(self.scale_coef, self.scale_exponent)?
        };
        let law = self.law()?;
        match self.mode {
            ModeSpec::ScaleFamily => {
                if self.shape_drift.is_some() {
                    return Err(Error::Config("mixing.shape_drift only applies to mixing.mode = \"explicit\"".into()));
                }
                Ok(MixingModel::scale_family(law, scale))
            }
            ModeSpec::Explicit => {
                let drift = self.shape_drift.ok_or_else(|| Error::Config("mixing.shape_drift is required in explicit mode".into()))?;
                MixingModel::explicit(law, scale, drift)
            }
        }
    }
}

/// Which bound a row is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundChoice {
    /// Point mass at 1 → `lemma5`, other scale families → `corollary2`,
    /// explicit mode → `theorem1`.
    #[default]
    Auto,
    Lemma5,
    Theorem1,
    Corollary1,
    Remark1,
    Corollary2,
    Example1,
    #[serde(rename = "negbin")]
    NegativeBinomial,
    Example2Zeta2,
    #[serde(rename = "gg")]
    GeneralizedGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub summand: SummandSpec,
    pub mixing: MixingSpec,
    #[serde(default)]
    pub bound: BoundChoice,
    pub s: f64,
    pub n_grid: Vec<u64>,
    pub samples_per_point: usize,
    #[serde(default = "default_replications")]
    pub replications: usize,
    pub seed: u64,
    pub output: Option<OutputSpec>,
}

fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn order(&self) -> Result<ZetaOrder<f64>> {
        ZetaOrder::new(self.s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let order = self.order()?;
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid must not be empty".into()));
        }
        if self.n_grid[0] == 0 || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_grid must be positive and strictly increasing".into()));
        }
        if self.samples_per_point == 0 {
            return Err(Error::Config("samples_per_point must be at least 1".into()));
        }
        if order.s() > 1.0 && self.samples_per_point < MIN_SAMPLES_ZETA2 {
            return Err(Error::Config(format!("samples_per_point must be at least {MIN_SAMPLES_ZETA2} for s > 1")));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        let summand = self.summand.build()?;
        let mixing = self.mixing.build()?;
        for &n in &self.n_grid {
            RandomSumModel::new(summand.clone(), mixing.clone(), n)?;
            row_bound(self.bound, order, &summand, &mixing, n)?;
        }
        Ok(())
    }
}

/// One point of an experiment. `None` marks a value that is undefined,
/// for instance ζ₂ when the sample mean is too far from the limit mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: u64,
    pub m_n: f64,
    /// Mean over replications; the test-function lower bound for fractional `s`.
    pub zeta_empirical: Option<f64>,
    pub zeta_stderr: Option<f64>,
    pub zeta_lower: Option<f64>,
    pub lemma4_upper: Option<f64>,
    pub bound_total: f64,
    pub bound_poissonization: f64,
    pub bound_mixing: f64,
    pub bound_source: BoundSource,
    /// `zeta_empirical ≤ bound_total + 3·zeta_stderr`; false when undefined.
    pub bound_satisfied: bool,
}

impl ExperimentRow {
    pub fn check(zeta: Option<f64>, stderr: Option<f64>, bound_total: f64) -> bool {
        match zeta {
            Some(z) => z <= bound_total + STDERR_SLACK * stderr.unwrap_or(0.0),
            None => false,
        }
    }
}

fn mixing_base_check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("bound choice needs {what}")))
    }
}

fn row_bound(
    choice: BoundChoice,
    order: ZetaOrder<f64>,
    summand: &SummandLaw<f64>,
    mixing: &MixingModel<f64>,
    n: u64,
) -> Result<BoundReport<f64>> {
    let (a, sigma2) = (summand.mean(), summand.variance());
    let m_n = mixing.m(n);
    let half_s = 0.5 * order.s();
    let scale_family = mixing.mode() == MixingMode::ScaleFamily;
    let choice = match choice {
        BoundChoice::Auto => match (mixing.limit(), scale_family) {
            (MixingLaw::PointMass(d), true) if d.atoms()[0] == 1.0 => BoundChoice::Lemma5,
            (_, true) => BoundChoice::Corollary2,
            (_, false) => BoundChoice::Theorem1,
        },
        other => other,
    };
    match choice {
        BoundChoice::Auto => unreachable!("resolved above"),
        BoundChoice::Lemma5 => {
            let unit = matches!(mixing.limit(), MixingLaw::PointMass(d) if d.atoms()[0] == 1.0);
            mixing_base_check(unit && scale_family, "a point mass at 1 in scale-family mode")?;
            bounds::lemma5(order, m_n, a, sigma2)
        }
        BoundChoice::Theorem1 => {
            let mixing_zeta = mixing.mixing_zeta(order, n)?.value;
            bounds::theorem1(order, mixing.moment(n, half_s)?, m_n, a, sigma2, mixing_zeta)
        }
        BoundChoice::Corollary1 => {
            mixing_base_check(order.s() == 2.0, "s = 2")?;
            let mixing_zeta = mixing.mixing_zeta(order, n)?.value;
            bounds::corollary1(mixing.moment(n, 1.0)?, m_n, a, sigma2, mixing_zeta)
        }
        BoundChoice::Remark1 => {
            let mean = mixing.moment(n, 1.0)?;
            mixing_base_check((mean - m_n).abs() <= 1e-9 * m_n, "m_n = E Lambda_n")?;
            let mixing_zeta = mixing.mixing_zeta(order, n)?.value;
            bounds::remark1(order, m_n, a, sigma2, mixing_zeta)
        }
        BoundChoice::Corollary2 => {
            mixing_base_check(scale_family, "scale-family mixing")?;
            bounds::corollary2(order, mixing.limit().moment(half_s)?, m_n, a, sigma2)
        }
        BoundChoice::Example1 => {
            let unit_exp = matches!(mixing.limit(), MixingLaw::Exponential(l) if l.rate() == 1.0);
            mixing_base_check(unit_exp && scale_family, "standard exponential scale-family mixing")?;
            bounds::example1(order, 1.0 / (1.0 + m_n), a, sigma2)
        }
        BoundChoice::NegativeBinomial | BoundChoice::Example2Zeta2 => {
            let r = match mixing.limit() {
                MixingLaw::Gamma(g) if g.shape() == g.rate() && scale_family => g.shape(),
                _ => return Err(Error::Config("bound choice needs scale-family gamma mixing with shape = rate".into())),
            };
            if choice == BoundChoice::NegativeBinomial {
                // p_n = μ/(n + μ) with m_n = n r/μ
                bounds::negative_binomial(order, r, r / (r + m_n), a, sigma2)
            } else {
                mixing_base_check(order.s() == 2.0, "s = 2")?;
                let nf = n as f64;
                bounds::example2_zeta2(r, r * nf / m_n, nf, a, sigma2)
            }
        }
        BoundChoice::GeneralizedGamma => {
            let gg = match mixing.limit() {
                MixingLaw::GeneralizedGamma(g) => *g,
                MixingLaw::Gamma(g) => g.as_generalized(),
                _ => return Err(Error::Config("bound choice needs gamma or generalized gamma mixing".into())),
            };
            let unit_scale = mixing.scale() == ScaleSequence::Linear { coef: 1.0 };
            mixing_base_check(scale_family && unit_scale, "scale-family mixing with m_n = n")?;
            bounds::generalized_gamma(order, &gg, n as f64, a, sigma2)
        }
    }
}

struct Replicate {
    zeta: Option<f64>,
    lower: Option<f64>,
    upper: Option<f64>,
}

fn replicate(order: ZetaOrder<f64>, sample: &EmpiricalDistribution<f64>, limit: &MixingLaw<f64>) -> Replicate {
    let lower = zeta_s_lower_bound_refined(order, sample, limit).ok().map(|z| z.value);
    let zeta = if order.s() == 1.0 {
        zeta1(sample, limit).ok().map(|z| z.value)
    } else if order.s() == 2.0 {
        zeta2(sample, limit).ok().map(|z| z.value)
    } else {
        lower
    };
    let upper = match (sample.abs_moment(order.s()), limit.abs_moment(order.s())) {
        (Some(mf), Some(mg)) => lemma4_upper_bound(order, mf, mg).ok().map(|z| z.value),
        _ => None,
    };
    Replicate { zeta, lower, upper }
}

fn mean_and_stderr(values: &[Option<f64>]) -> (Option<f64>, Option<f64>) {
    let Some(xs) = values.iter().copied().collect::<Option<Vec<f64>>>() else {
        return (None, None);
    };
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (Some(mean), Some(0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (Some(mean), Some((var / k).sqrt()))
}

/// Runs every `n` of the grid. Replications run in parallel; replication
/// `j` at index `n` samples with seed `derive_seed(derive_seed(seed, n), j)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    let order = config.order()?;
    let summand = config.summand.build()?;
    let mixing = config.mixing.build()?;
    let mut rows = Vec::with_capacity(config.n_grid.len());
    for &n in &config.n_grid {
        let model = RandomSumModel::new(summand.clone(), mixing.clone(), n)?;
        let bound = row_bound(config.bound, order, &summand, &mixing, n)?;
        let point_seed = derive_seed(config.seed, n);
        let reps: Vec<Replicate> = (0..config.replications)
            .into_par_iter()
            .map(|j| {
                let sample = model.sample_batch(config.samples_per_point, derive_seed(point_seed, j as u64))?;
                Ok(replicate(order, &sample, mixing.limit()))
            })
            .collect::<Result<_>>()?;
        let (zeta, stderr) = mean_and_stderr(&reps.iter().map(|r| r.zeta).collect::<Vec<_>>());
        let (lower, _) = mean_and_stderr(&reps.iter().map(|r| r.lower).collect::<Vec<_>>());
        let (upper, _) = mean_and_stderr(&reps.iter().map(|r| r.upper).collect::<Vec<_>>());
        rows.push(ExperimentRow {
            n,
            m_n: model.m_n(),
            zeta_empirical: zeta,
            zeta_stderr: stderr,
            zeta_lower: lower,
            lemma4_upper: upper,
            bound_total: bound.total,
            bound_poissonization: bound.poissonization_term,
            bound_mixing: bound.mixing_term,
            bound_source: bound.source,
            bound_satisfied: ExperimentRow::check(zeta, stderr, bound.total),
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log zeta_empirical` against `log n` over rows
/// with a positive estimate.
pub fn fit_decay_slope(rows: &[ExperimentRow]) -> Result<f64> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.zeta_empirical.filter(|&z| z > 0.0 && z.is_finite()).map(|z| ((r.n as f64).ln(), z.ln())))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!("slope fit needs 3 rows with positive estimates, got {}", points.len())));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_num(x: Option<f64>, undefined: &str) -> String {
    x.map(num).unwrap_or_else(|| undefined.to_string())
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let fields = [
            r.n.to_string(),
            num(r.m_n),
            opt_num(r.zeta_empirical, UNDEFINED),
            opt_num(r.zeta_stderr, UNDEFINED),
            opt_num(r.zeta_lower, UNDEFINED),
            opt_num(r.lemma4_upper, UNDEFINED),
            num(r.bound_total),
            num(r.bound_poissonization),
            num(r.bound_mixing),
            r.bound_source.to_string(),
            r.bound_satisfied.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// JSON array of row objects keyed by the CSV column names; undefined
/// values are `null`.
pub fn to_json(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in rows.iter().enumerate() {
        let values = [
            r.n.to_string(),
            num(r.m_n),
            opt_num(r.zeta_empirical, "null"),
            opt_num(r.zeta_stderr, "null"),
            opt_num(r.zeta_lower, "null"),
            opt_num(r.lemma4_upper, "null"),
            num(r.bound_total),
            num(r.bound_poissonization),
            num(r.bound_mixing),
            format!("\"{}\"", r.bound_source),
            r.bound_satisfied.to_string(),
        ];
        out.push_str("  {");
        for (j, (key, value)) in CSV_COLUMNS.iter().zip(values).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{key}\": {value}");
        }
        out.push('}');
        out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub fn rows_from_json(text: &str) -> Result<Vec<ExperimentRow>> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed row JSON: {e}")))
}

pub fn emit(rows: &[ExperimentRow], format: OutputFormat, path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InsufficientData("no rows to write".into()));
    }
    let text = match format {
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Json => to_json(rows),
    };
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Fixed-width table for terminal output.
pub fn summary_table(name: &str, rows: &[ExperimentRow]) -> String {
    let mut out = format!("{name}\n{:>6} {:>10} {:>12} {:>12} {:>12} {:>12}  {:<16} {}\n", "n", "m_n", "zeta", "stderr", "lower", "bound", "source", "ok");
    let show = |x: Option<f64>| x.map(|v| format!("{v:.5e}")).unwrap_or_else(|| UNDEFINED.to_string());
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6} {:>10.4} {:>12} {:>12} {:>12} {:>12.5e}  {:<16} {}",
            r.n,
            r.m_n,
            show(r.zeta_empirical),
            show(r.zeta_stderr),
            show(r.zeta_lower),
            r.bound_total,
            r.bound_source.as_str(),
            r.bound_satisfied
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetScale {
    /// 20 000 draws per replication.
    Small,
    /// 100 000 draws per replication.
    Full,
}

impl PresetScale {
    pub fn samples(self) -> usize {
        match self {
            Self::Small => 20_000,
            Self::Full => 100_000,
        }
    }
}

pub const PRESETS: [&str; 3] = ["example1", "example2", "example3"];

/// Built-in experiments, all with standard exponential summands and `s = 2`:
///
/// * `example1`: geometric sums, `Λ ~ Exp(1)`, `m_n = n` (so `p = 1/(1+n)`),
///   `n ∈ {9, 49, 199}`.
/// * `example2`: negative binomial sums with `r = 2, μ = 1`, `Λ ~ G_{2,2}`,
///   `m_n = n r/μ`, `n ∈ {10, 30, 100, 300}`.
/// * `example3`: generalized gamma mixing `GG(1, 2, 1)`, `m_n = n`,
///   `n ∈ {30, 100, 300}`.
pub fn preset(name: &str, scale: PresetScale) -> Result<ExperimentConfig> {
    let (mixing, bound, n_grid, seed) = match name {
        "example1" => (
            MixingSpec { rate: Some(1.0), ..mixing_spec("exponential") },
            BoundChoice::Example1,
            vec![9, 49, 199],
            101,
        ),
        "example2" => {
            let (r, mu) = (2.0, 1.0);
            (
                MixingSpec { shape: Some(r), rate: Some(r), scale_coef: r / mu, ..mixing_spec("gamma") },
                BoundChoice::NegativeBinomial,
                vec![10, 30, 100, 300],
                202,
            )
        }
        "example3" => (
            MixingSpec { shape: Some(1.0), power: Some(2.0), rate: Some(1.0), ..mixing_spec("generalized_gamma") },
            BoundChoice::GeneralizedGamma,
            vec![30, 100, 300],
            303,
        ),
        other => return Err(Error::Config(format!("unknown preset \"{other}\" (expected one of {})", PRESETS.join(", ")))),
    };
    let config = ExperimentConfig {
        name: name.to_string(),
        summand: SummandSpec::exponential(1.0),
        mixing,
        bound,
        s: 2.0,
        n_grid,
        samples_per_point: scale.samples(),
        replications: DEFAULT_REPLICATIONS,
        seed,
        output: None,
    };
    config.validate()?;
    Ok(config)
}

fn mixing_spec(kind: &str) -> MixingSpec {
    MixingSpec {
        kind: kind.to_string(),
        shape: None,
        rate: None,
        power: None,
        value: None,
        mode: ModeSpec::ScaleFamily,
        shape_drift: None,
        scale_coef: 1.0,
        scale_exponent: 1.0,
    }
}
