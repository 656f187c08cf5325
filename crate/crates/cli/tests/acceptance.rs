//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mpsum::bounds;
use mpsum::harness::{self, fit_decay_slope, preset, run_experiment, ExperimentConfig, PresetScale};
use mpsum::random_sums::{MixingLaw, MixingModel, RandomSumModel, ScaleSequence, SummandLaw};
use mpsum::rng::stream;
use mpsum::zeta::{zeta1, zeta2};
use mpsum::{DiscreteLaw64, EmpiricalDistribution64, ExponentialLaw, GammaLaw, GeneralizedGammaLaw, ZetaOrder64};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

// ---------------------------------------------------------------------------
// Independent oracle for finite discrete laws: both CDFs are step functions,
// so ∫|F − G| and ∫|D| are sums over the merged breakpoints.

struct Steps {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl Steps {
    fn cdf(&self, x: f64) -> f64 {
        self.atoms.iter().zip(&self.weights).filter(|(&a, _)| a <= x).map(|(_, &w)| w).sum()
    }

    fn mean(&self) -> f64 {
        self.atoms.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }
}

fn breakpoints(f: &Steps, g: &Steps) -> Vec<f64> {
    let mut xs: Vec<f64> = f.atoms.iter().chain(&g.atoms).copied().collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn oracle_zeta1(f: &Steps, g: &Steps) -> f64 {
    let xs = breakpoints(f, g);
    xs.windows(2).map(|w| (f.cdf(w[0]) - g.cdf(w[0])).abs() * (w[1] - w[0])).sum()
}

fn oracle_zeta2(f: &Steps, g: &Steps) -> f64 {
    // D is linear between breakpoints; integrate |D| piece by piece
    let xs = breakpoints(f, g);
    let mut d = 0.0;
    let mut total = 0.0;
    for w in xs.windows(2) {
        let h = w[1] - w[0];
        let d_next = d + (f.cdf(w[0]) - g.cdf(w[0])) * h;
        total += if d * d_next >= 0.0 {
            0.5 * h * (d.abs() + d_next.abs())
        } else {
            0.5 * h * (d * d + d_next * d_next) / (d.abs() + d_next.abs())
        };
        d = d_next;
    }
    total
}

fn random_steps<R: Rng>(rng: &mut R, max_atoms: usize) -> Steps {
    let k = rng.random_range(1..=max_atoms);
    let atoms: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..3.0)).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    Steps { atoms, weights: raw.iter().map(|w| w / total).collect() }
}

fn law_of(s: &Steps) -> DiscreteLaw64 {
    DiscreteLaw64::new(&s.atoms, &s.weights).expect("valid discrete law")
}

/// Shift `g` so its mean equals that of `f`.
fn match_mean(f: &Steps, g: Steps) -> Steps {
    let delta = f.mean() - g.mean();
    Steps { atoms: g.atoms.iter().map(|a| a + delta).collect(), weights: g.weights }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut rng = stream(1, 0);
    let mut worst: f64 = 0.0;
    let trials = 200;
    for _ in 0..trials {
        let f = random_steps(&mut rng, 16);
        let g = random_steps(&mut rng, 16);
        let e1 = (zeta1(&law_of(&f), &law_of(&g)).map_err(|e| e.to_string())?.value - oracle_zeta1(&f, &g)).abs();
        let g = match_mean(&f, g);
        let e2 = (zeta2(&law_of(&f), &law_of(&g)).map_err(|e| e.to_string())?.value - oracle_zeta2(&f, &g)).abs();
        worst = worst.max(e1).max(e2);
    }
    ensure(worst <= 1e-9, || format!("max deviation from oracle {worst:e}"))?;
    within_time(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{trials} pairs, max |library − oracle| = {worst:.1e}"))
}

// ---------------------------------------------------------------------------

fn exponential_sample(n: usize, seed: u64) -> EmpiricalDistribution64 {
    let law = ExponentialLaw::new(1.0).unwrap();
    let mut rng = stream(seed, 0);
    EmpiricalDistribution64::new((0..n).map(|_| law.sample(&mut rng)).collect()).unwrap()
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn criterion2() -> Outcome {
    let mut rng = stream(2, 0);
    let f = random_steps(&mut rng, 12);
    let g = match_mean(&f, random_steps(&mut rng, 12));
    let (fd, gd) = (law_of(&f), law_of(&g));
    let sample = exponential_sample(2000, 21);
    let exp = ExponentialLaw::new(1.0).unwrap();
    let gamma_sample = {
        let law = GammaLaw::new(2.5, 2.5).unwrap();
        let mut rng = stream(22, 0);
        EmpiricalDistribution64::new((0..2000).map(|_| law.sample(&mut rng)).collect()).unwrap()
    };
    let gamma = GammaLaw::new(2.5, 2.5).unwrap();
    let mut worst: f64 = 0.0;
    for c in [0.5, 2.0, 10.0] {
        let pairs: [(f64, f64, f64, f64); 3] = [
            {
                let (fc, gc) = (fd.scaled(c).unwrap(), gd.scaled(c).unwrap());
                (
                    zeta1(&fc, &gc).unwrap().value,
                    zeta1(&fd, &gd).unwrap().value,
                    zeta2(&fc, &gc).unwrap().value,
                    zeta2(&fd, &gd).unwrap().value,
                )
            },
            {
                let (fc, gc) = (sample.scaled(c).unwrap(), exp.scaled(c).unwrap());
                (
                    zeta1(&fc, &gc).unwrap().value,
                    zeta1(&sample, &exp).unwrap().value,
                    zeta2(&fc, &gc).unwrap().value,
                    zeta2(&sample, &exp).unwrap().value,
                )
            },
            {
                let (fc, gc) = (gamma_sample.scaled(c).unwrap(), gamma.scaled(c).unwrap());
                (
                    zeta1(&fc, &gc).unwrap().value,
                    zeta1(&gamma_sample, &gamma).unwrap().value,
                    zeta2(&fc, &gc).unwrap().value,
                    zeta2(&gamma_sample, &gamma).unwrap().value,
                )
            },
        ];
        for (z1c, z1, z2c, z2) in pairs {
            worst = worst.max(relative(z1c, c * z1)).max(relative(z2c, c * c * z2));
        }
    }
    ensure(worst <= 1e-12, || format!("max relative deviation {worst:e}"))?;
    Ok(format!("3 pairs × c ∈ {{0.5, 2, 10}}, max relative deviation {worst:.1e}"))
}

// ---------------------------------------------------------------------------

fn criterion3() -> Outcome {
    let mut rng = stream(3, 0);
    let slack = 1e-9;
    let mut worst_gap = f64::NEG_INFINITY;
    for _ in 0..100 {
        let f = random_steps(&mut rng, 12);
        let g = match_mean(&f, random_steps(&mut rng, 12));
        let z = random_steps(&mut rng, 8);
        let (fd, gd, zd) = (law_of(&f), law_of(&g), law_of(&z));
        let (fz, gz) = (fd.convolve(&zd), gd.convolve(&zd));
        let e = |r: mpsum::Result<mpsum::ZetaEstimate64>| r.map(|z| z.value).map_err(|e| e.to_string());
        // regularity
        for (after, before) in [(e(zeta1(&fz, &gz))?, e(zeta1(&fd, &gd))?), (e(zeta2(&fz, &gz))?, e(zeta2(&fd, &gd))?)] {
            worst_gap = worst_gap.max(after - before);
            ensure(after <= before + slack, || format!("regularity: {after} > {before}"))?;
        }
        // mixture
        let f2 = random_steps(&mut rng, 12);
        let g2 = match_mean(&f2, random_steps(&mut rng, 12));
        let (f2d, g2d) = (law_of(&f2), law_of(&g2));
        let w: f64 = rng.random_range(0.05..0.95);
        let (fm, gm) = (fd.mixture(&f2d, w).unwrap(), gd.mixture(&g2d, w).unwrap());
        let pairs = [
            (e(zeta1(&fm, &gm))?, w * e(zeta1(&fd, &gd))? + (1.0 - w) * e(zeta1(&f2d, &g2d))?),
            (e(zeta2(&fm, &gm))?, w * e(zeta2(&fd, &gd))? + (1.0 - w) * e(zeta2(&f2d, &g2d))?),
        ];
        for (mixed, combined) in pairs {
            worst_gap = worst_gap.max(mixed - combined);
            ensure(mixed <= combined + slack, || format!("mixture: {mixed} > {combined}"))?;
        }
    }
    Ok(format!("100 trials, ζ₁ and ζ₂, largest (lhs − rhs) = {worst_gap:.2e}"))
}

// ---------------------------------------------------------------------------

fn criterion4() -> Outcome {
    let start = Instant::now();
    let config = ExperimentConfig::from_toml_str(
        r#"
        name = "lemma5"
        s = 2.0
        n_grid = [10, 50, 200]
        samples_per_point = 100000
        replications = 8
        seed = 404
        summand.kind = "exponential"
        summand.rate = 1.0
        mixing.kind = "point_mass"
        mixing.value = 1.0
        "#,
    )
    .map_err(|e| e.to_string())?;
    let rows = run_experiment(&config).map_err(|e| e.to_string())?;
    let mut details = Vec::new();
    for row in &rows {
        let lambda = row.m_n;
        let bound = 2.0 / (2.0 * lambda);
        ensure(relative(row.bound_total, bound) < 1e-14, || format!("bound {} ≠ {bound}", row.bound_total))?;
        let z = row.zeta_empirical.ok_or("ζ₂ undefined")?;
        let se = row.zeta_stderr.ok_or("stderr undefined")?;
        ensure(z <= bound + 3.0 * se, || format!("λ = {lambda}: ζ₂ = {z:.4e} > {bound:.4e} + 3·{se:.2e}"))?;
        details.push(format!("λ={lambda}: {z:.3e} ± {se:.1e} vs {bound:.3e}"));
    }
    within_time(start.elapsed(), Duration::from_secs(60))?;
    Ok(details.join("; "))
}

fn check_rows(rows: &[harness::ExperimentRow]) -> Result<Vec<String>, String> {
    rows.iter()
        .map(|row| {
            let z = row.zeta_empirical.ok_or_else(|| format!("n = {}: ζ₂ undefined", row.n))?;
            let se = row.zeta_stderr.unwrap_or(0.0);
            ensure(z <= row.bound_total + 3.0 * se, || {
                format!("n = {}: ζ₂ = {z:.4e} > {:.4e} + 3·{se:.2e}", row.n, row.bound_total)
            })?;
            ensure(row.bound_satisfied, || format!("n = {}: row flag false", row.n))?;
            Ok(format!("n={}: {z:.3e} ± {se:.1e} vs {:.3e}", row.n, row.bound_total))
        })
        .collect()
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let config = preset("example1", PresetScale::Full).map_err(|e| e.to_string())?;
    let rows = run_experiment(&config).map_err(|e| e.to_string())?;
    let mut details = check_rows(&rows)?;
    for (row, p) in rows.iter().zip([0.1, 0.02, 0.005]) {
        ensure((1.0 / (1.0 + row.m_n) - p).abs() < 1e-15, || format!("m_n = {} does not give p = {p}", row.m_n))?;
        let want = p / (2.0 * (1.0 - p)) * 2.0;
        ensure(relative(row.bound_total, want) < 1e-13, || format!("p = {p}: bound {} ≠ {want}", row.bound_total))?;
        let lower = row.zeta_lower.ok_or("lower bound undefined")?;
        let z = row.zeta_empirical.ok_or("ζ₂ undefined")?;
        ensure(lower <= z + 1e-12, || format!("p = {p}: lower bound {lower} above ζ₂ {z}"))?;
    }
    within_time(start.elapsed(), Duration::from_secs(120))?;
    details.push("sandwich holds".into());
    Ok(details.join("; "))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let config = preset("example2", PresetScale::Full).map_err(|e| e.to_string())?;
    let rows = run_experiment(&config).map_err(|e| e.to_string())?;
    let (r, mu) = (2.0, 1.0);
    for row in &rows {
        let want = mu / (2.0 * row.n as f64 * r) * 2.0;
        ensure(relative(row.bound_total, want) < 1e-13, || format!("n = {}: bound {} ≠ {want}", row.n, row.bound_total))?;
    }
    let mut details = check_rows(&rows)?;
    let slope = fit_decay_slope(&rows).map_err(|e| e.to_string())?;
    ensure((-1.3..=-0.7).contains(&slope), || format!("slope {slope:.3} outside [−1.3, −0.7]"))?;
    within_time(start.elapsed(), Duration::from_secs(180))?;
    details.push(format!("slope {slope:.3}"));
    Ok(details.join("; "))
}

fn criterion7() -> Outcome {
    let config = preset("example3", PresetScale::Full).map_err(|e| e.to_string())?;
    let rows = run_experiment(&config).map_err(|e| e.to_string())?;
    let mut details = check_rows(&rows)?;
    // GG(0.5, −1, 1) has no moment of order s/2 = 1: the bound must refuse it
    let heavy = GeneralizedGammaLaw::new(0.5, -1.0, 1.0).unwrap();
    ensure(bounds::generalized_gamma(ZetaOrder64::two(), &heavy, 100.0, 1.0, 1.0).is_err(), || {
        "bound accepted GG(0.5, −1, 1)".into()
    })?;
    let mut heavy_config = config.clone();
    heavy_config.mixing.shape = Some(0.5);
    heavy_config.mixing.power = Some(-1.0);
    ensure(heavy_config.validate().is_err(), || "experiment accepted GG(0.5, −1, 1)".into())?;
    // moment formula against Monte Carlo
    let gg = GeneralizedGammaLaw::new(1.0, 2.0, 1.0).unwrap();
    let mut rng = stream(77, 0);
    let draws: Vec<f64> = (0..1_000_000).map(|_| gg.sample(&mut rng)).collect();
    for delta in [0.5, 1.0, 2.0] {
        let mc = draws.iter().map(|x| x.powf(delta)).sum::<f64>() / draws.len() as f64;
        let exact = gg.moment(delta).unwrap();
        let err = relative(mc, exact);
        ensure(err < 0.02, || format!("moment {delta}: MC {mc} vs {exact}"))?;
        details.push(format!("E G^{delta}: rel err {err:.1e}"));
    }
    Ok(details.join("; "))
}

fn criterion8() -> Outcome {
    let summands = [
        ("exponential", SummandLaw::exponential(1.0).unwrap()),
        ("uniform", SummandLaw::uniform(0.0, 2.0).unwrap()),
        ("shifted_bernoulli", SummandLaw::shifted_bernoulli(0.3, -1.0).unwrap()),
        ("lognormal", SummandLaw::lognormal(0.0, 0.5).unwrap()),
        ("normal", SummandLaw::normal(1.0, 2.0).unwrap()),
    ];
    let lambda = 100.0;
    let mut details = Vec::new();
    for (i, (name, law)) in summands.into_iter().enumerate() {
        let mixing = MixingModel::scale_family(MixingLaw::point_mass(1.0).unwrap(), ScaleSequence::linear(lambda).unwrap());
        let model = RandomSumModel::new(law.clone(), mixing, 1).unwrap();
        let scale = law.mean() * lambda;
        let sums: Vec<f64> = model.sample_draws(1_000_000, 800 + i as u64).unwrap().iter().map(|x| x * scale).collect();
        let n = sums.len() as f64;
        let mean = sums.iter().sum::<f64>() / n;
        let var = sums.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let want = lambda * law.second_moment();
        let err = relative(var, want);
        ensure(err < 0.02, || format!("{name}: variance {var:.4} vs {want:.4}"))?;
        details.push(format!("{name} {err:.1e}"));
    }
    Ok(format!("relative errors: {}", details.join(", ")))
}

fn criterion9() -> Outcome {
    let mut rng = stream(9, 0);
    let tol = 1e-12;
    let mut worst: f64 = 0.0;
    let mut check = |a: f64, b: f64, what: &str| -> Result<(), String> {
        let d = relative(a, b);
        worst = worst.max(d);
        ensure(d <= tol, || format!("{what}: {a} vs {b}"))
    };
    for _ in 0..50 {
        let s: f64 = rng.random_range(1.0..=2.0);
        let order = ZetaOrder64::new(s).unwrap();
        let two = ZetaOrder64::two();
        let a: f64 = rng.random_range(0.2..3.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let sigma2: f64 = rng.random_range(0.0..4.0);
        let m: f64 = rng.random_range(1.0..500.0);
        let r: f64 = rng.random_range(0.3..5.0);
        let p: f64 = rng.random_range(0.001..0.9);
        let mix: f64 = rng.random_range(0.0..0.1);
        let e = |x: mpsum::Result<mpsum::BoundReport64>| x.map_err(|e| e.to_string());

        // lemma5 = theorem1 with point-mass mixing Λ_n ≡ m
        check(e(bounds::lemma5(order, m, a, sigma2))?.total, e(bounds::theorem1(order, m.powf(s / 2.0), m, a, sigma2, 0.0))?.total, "lemma5/theorem1")?;
        // corollary1 = theorem1 at s = 2
        let mean_lambda: f64 = m * rng.random_range(0.5..2.0);
        check(
            e(bounds::corollary1(mean_lambda, m, a, sigma2, mix))?.total,
            e(bounds::theorem1(two, mean_lambda, m, a, sigma2, mix))?.total,
            "corollary1/theorem1",
        )?;
        // remark1 = theorem1 at s = 2 when m_n = E Λ_n
        check(e(bounds::remark1(two, m, a, sigma2, mix))?.total, e(bounds::theorem1(two, m, m, a, sigma2, mix))?.total, "remark1/theorem1")?;
        // corollary2 = theorem1 with E Λ_n^{s/2} = m^{s/2} E Λ^{s/2}
        let limit_moment: f64 = rng.random_range(0.1..3.0);
        check(
            e(bounds::corollary2(order, limit_moment, m, a, sigma2))?.total,
            e(bounds::theorem1(order, m.powf(s / 2.0) * limit_moment, m, a, sigma2, 0.0))?.total,
            "corollary2/theorem1",
        )?;
        // negbin = remark1 with m_n = r(1 − p)/p, for every s
        let m_nb = r * (1.0 - p) / p;
        let nb = e(bounds::negative_binomial(order, r, p, a, sigma2))?.total;
        check(nb, e(bounds::remark1(order, m_nb, a, sigma2, 0.0))?.total, "negbin/remark1")?;
        // negbin with r = 1 is the geometric bound
        check(e(bounds::negative_binomial(order, 1.0, p, a, sigma2))?.total, e(bounds::example1(order, p, a, sigma2))?.total, "negbin/example1")?;
        // at s = 2, negbin = corollary2 with E G_{r,r} = 1 = example2_zeta2
        let nb2 = e(bounds::negative_binomial(two, r, p, a, sigma2))?.total;
        check(nb2, e(bounds::corollary2(two, 1.0, m_nb, a, sigma2))?.total, "negbin/corollary2")?;
        let mu: f64 = rng.random_range(0.2..4.0);
        let n = m_nb * mu / r;
        check(nb2, e(bounds::example2_zeta2(r, mu, n, a, sigma2))?.total, "negbin/example2_zeta2")?;
        // gg = corollary2 with the GG moment and m_n = n, for every s
        let gg = GeneralizedGammaLaw::new(r, rng.random_range(0.5..3.0), rng.random_range(0.2..3.0)).unwrap();
        let moment = gg.moment(s / 2.0).unwrap();
        check(
            e(bounds::generalized_gamma(order, &gg, m, a, sigma2))?.total,
            e(bounds::corollary2(order, moment, m, a, sigma2))?.total,
            "gg/corollary2",
        )?;
        // gg with power 1, Λ = G_{r,r}, n = m_n matches negbin at s = 2
        let gamma_rr = GeneralizedGammaLaw::new(r, 1.0, r).unwrap();
        check(e(bounds::generalized_gamma(two, &gamma_rr, m_nb, a, sigma2))?.total, nb2, "gg/negbin")?;
    }
    Ok(format!("50 parameter draws, 10 identities each, max relative deviation {worst:.1e}"))
}

fn run_verify(dir: &Path) -> Result<Duration, String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_mpsum"))
        .args(["verify", "--preset", "all", "--scale", "small", "--out-dir"])
        .arg(dir)
        .output()
        .map_err(|e| format!("cannot run mpsum: {e}"))?;
    ensure(status.status.code() == Some(0), || {
        format!("exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr))
    })?;
    Ok(start.elapsed())
}

fn criterion10() -> Outcome {
    let base = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-verify");
    let (first, second) = (base.join("first"), base.join("second"));
    let _ = std::fs::remove_dir_all(&base);
    let t1 = run_verify(&first)?;
    let t2 = run_verify(&second)?;
    within_time(t1.max(t2), Duration::from_secs(300))?;
    let mut files = 0;
    for name in harness::PRESETS {
        for ext in ["csv", "json"] {
            let file = format!("{name}.{ext}");
            let a = std::fs::read(first.join(&file)).map_err(|e| format!("{file}: {e}"))?;
            let b = std::fs::read(second.join(&file)).map_err(|e| format!("{file}: {e}"))?;
            ensure(a == b, || format!("{file} differs between runs"))?;
            files += 1;
        }
    }
    Ok(format!("exit 0 in {t1:.1?} and {t2:.1?}; {files} files byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("metric-oracle equivalence", criterion1),
        ("homogeneity", criterion2),
        ("regularity and mixture", criterion3),
        ("Poisson index bound", criterion4),
        ("geometric sums", criterion5),
        ("negative binomial sums", criterion6),
        ("generalized gamma mixing", criterion7),
        ("Poisson-sum variance", criterion8),
        ("bound consistency lattice", criterion9),
        ("end-to-end verify", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
