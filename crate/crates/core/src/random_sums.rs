//! Mixed Poisson random sums `S_n = X_1 + … + X_{N(Λ_n)}` and their
//! normalization `S_n / (a·m_n)`.

use rand::Rng;
use rayon::prelude::*;

use crate::distributions::sampling::{standard_gamma, standard_normal, uniform};
use crate::distributions::{
    mixed_poisson_sample, DiscreteLaw, ExponentialLaw, GammaLaw, GeneralizedGammaLaw, Law, Partials,
};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_lower, integrate_upper, DEFAULT_MAX_SUBDIVISIONS};
use crate::rng::{derive_seed, stream};
use crate::scalar::{lit, Scalar};
use crate::special::gamma;
use crate::zeta::{zeta1, zeta2, lemma4_upper_bound_for, EmpiricalDistribution, EstimateKind, ZetaEstimate, ZetaOrder};

/// Draws per parallel sub-batch. Fixed, so results do not depend on the
/// number of worker threads.
pub const BATCH_CHUNK: usize = 4096;

/// Law of a single summand `X_1`. The mean must be nonzero.
#[derive(Debug, Clone, PartialEq)]
pub enum SummandLaw<T> {
    Exponential { rate: T },
    Uniform { lo: T, hi: T },
    /// `shift + B` with `B ~ Bernoulli(p)`.
    ShiftedBernoulli { p: T, shift: T },
    LogNormal { log_mean: T, log_sd: T },
    Normal { mean: T, sd: T },
    /// Degenerate summands `X ≡ value`.
    Constant { value: T },
}

impl<T: Scalar> SummandLaw<T> {
    pub fn exponential(rate: T) -> Result<Self> {
        positive("rate", rate)?;
        Self::Exponential { rate }.validated()
    }

    pub fn uniform(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(domain(format!("uniform summand needs lo < hi, got [{lo}, {hi}]")));
        }
        Self::Uniform { lo, hi }.validated()
    }

    pub fn shifted_bernoulli(p: T, shift: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) || !shift.is_finite() {
            return Err(domain(format!("shifted Bernoulli needs p in [0, 1] and finite shift, got p = {p}, shift = {shift}")));
        }
        Self::ShiftedBernoulli { p, shift }.validated()
    }

    pub fn lognormal(log_mean: T, log_sd: T) -> Result<Self> {
        if !log_mean.is_finite() || !(log_sd >= T::zero() && log_sd.is_finite()) {
            return Err(domain(format!("lognormal needs finite log_mean and log_sd >= 0, got {log_mean}, {log_sd}")));
        }
        Self::LogNormal { log_mean, log_sd }.validated()
    }

    pub fn normal(mean: T, sd: T) -> Result<Self> {
        if !mean.is_finite() || !(sd >= T::zero() && sd.is_finite()) {
            return Err(domain(format!("normal summand needs finite mean and sd >= 0, got {mean}, {sd}")));
        }
        Self::Normal { mean, sd }.validated()
    }

    pub fn constant(value: T) -> Result<Self> {
        if !value.is_finite() {
            return Err(domain(format!("constant summand must be finite, got {value}")));
        }
        Self::Constant { value }.validated()
    }

    fn validated(self) -> Result<Self> {
        let a = self.mean();
        if a == T::zero() || !a.is_finite() {
            return Err(domain(format!("summand mean must be finite and nonzero, got {a}")));
        }
        if !self.variance().is_finite() {
            return Err(domain("summand variance must be finite"));
        }
        Ok(self)
    }

    /// `a = E X_1`.
    pub fn mean(&self) -> T {
        let half = lit::<T>(0.5);
        match *self {
            Self::Exponential { rate } => rate.recip(),
            Self::Uniform { lo, hi } => half * (lo + hi),
            Self::ShiftedBernoulli { p, shift } => shift + p,
            Self::LogNormal { log_mean, log_sd } => (log_mean + half * log_sd * log_sd).exp(),
            Self::Normal { mean, .. } => mean,
            Self::Constant { value } => value,
        }
    }

    /// `σ² = D X_1`.
    pub fn variance(&self) -> T {
        match *self {
            Self::Exponential { rate } => (rate * rate).recip(),
            Self::Uniform { lo, hi } => (hi - lo) * (hi - lo) / lit(12.0),
            Self::ShiftedBernoulli { p, .. } => p * (T::one() - p),
            Self::LogNormal { log_mean, log_sd } => {
                let v = log_sd * log_sd;
                v.exp_m1() * (lit::<T>(2.0) * log_mean + v).exp()
            }
            Self::Normal { sd, .. } => sd * sd,
            Self::Constant { .. } => T::zero(),
        }
    }

    /// `E X_1² = a² + σ²`.
    pub fn second_moment(&self) -> T {
        let a = self.mean();
        a * a + self.variance()
    }

    /// `E X_1² / (E X_1)² = 1 + σ²/a²`.
    pub fn moment_ratio(&self) -> T {
        let a = self.mean();
        self.second_moment() / (a * a)
    }

    /// `E|X_1|^s` for `s ≥ 0`.
    pub fn abs_moment(&self, s: T) -> Result<T> {
        if !(s >= T::zero() && s.is_finite()) {
            return Err(domain(format!("moment order must be finite and nonnegative, got {s}")));
        }
        let one = T::one();
        let value = match *self {
            Self::Exponential { rate } => gamma(one + s) / rate.powf(s),
            Self::Uniform { lo, hi } => {
                let h = |x: T| x.signum() * x.abs().powf(s + one);
                (h(hi) - h(lo)) / ((s + one) * (hi - lo))
            }
            Self::ShiftedBernoulli { p, shift } => p * (shift + one).abs().powf(s) + (one - p) * shift.abs().powf(s),
            Self::LogNormal { log_mean, log_sd } => (s * log_mean + lit::<T>(0.5) * s * s * log_sd * log_sd).exp(),
            Self::Normal { mean, sd } => normal_abs_moment(mean, sd, s),
            Self::Constant { value } => value.abs().powf(s),
        };
        Ok(value)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match *self {
            Self::Exponential { rate } => rate.recip() * crate::distributions::sampling::standard_exponential::<T, _>(rng),
            Self::Uniform { lo, hi } => lo + (hi - lo) * uniform::<T, _>(rng),
            Self::ShiftedBernoulli { p, shift } => {
                if uniform::<T, _>(rng) < p {
                    shift + T::one()
                } else {
                    shift
                }
            }
            Self::LogNormal { log_mean, log_sd } => (log_mean + log_sd * standard_normal::<T, _>(rng)).exp(),
            Self::Normal { mean, sd } => mean + sd * standard_normal::<T, _>(rng),
            Self::Constant { value } => value,
        }
    }

    /// `X_1 + … + X_k`. Exponential, normal and constant summands use the
    /// exact law of the sum instead of `k` draws.
    pub fn sample_sum<R: Rng + ?Sized>(&self, k: u64, rng: &mut R) -> T {
        if k == 0 {
            return T::zero();
        }
        let kf = T::from_u64(k).expect("count fits the scalar type");
        match *self {
            Self::Exponential { rate } => standard_gamma(kf, rng) / rate,
            Self::Normal { mean, sd } => kf * mean + sd * kf.sqrt() * standard_normal::<T, _>(rng),
            Self::Constant { value } => kf * value,
            _ => (0..k).map(|_| self.sample(rng)).fold(T::zero(), |acc, x| acc + x),
        }
    }
}

fn normal_abs_moment<T: Scalar>(mean: T, sd: T, s: T) -> T {
    if sd == T::zero() {
        return mean.abs().powf(s);
    }
    let norm = (lit::<T>(2.0) * T::PI()).sqrt().recip();
    let f = |z: T| (mean + sd * z).abs().powf(s) * norm * (-lit::<T>(0.5) * z * z).exp();
    let kink = -mean / sd;
    let tol = lit::<T>(1e-13);
    integrate_lower(f, kink, tol, DEFAULT_MAX_SUBDIVISIONS).value + integrate_upper(f, kink, tol, DEFAULT_MAX_SUBDIVISIONS).value
}

fn positive<T: Scalar>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// The mixing law: either the limit `Λ`, or `Λ_n / m_n` at a given `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum MixingLaw<T> {
    Exponential(ExponentialLaw<T>),
    Gamma(GammaLaw<T>),
    GeneralizedGamma(GeneralizedGammaLaw<T>),
    PointMass(DiscreteLaw<T>),
}

impl<T: Scalar> MixingLaw<T> {
    pub fn point_mass(value: T) -> Result<Self> {
        if !(value >= T::zero() && value.is_finite()) {
            return Err(domain(format!("mixing point mass must be finite and nonnegative, got {value}")));
        }
        Ok(Self::PointMass(DiscreteLaw::point_mass(value)?))
    }

    pub fn as_law(&self) -> &dyn Law<T> {
        match self {
            Self::Exponential(l) => l,
            Self::Gamma(l) => l,
            Self::GeneralizedGamma(l) => l,
            Self::PointMass(l) => l,
        }
    }

    /// `E Λ^δ`.
    pub fn moment(&self, delta: T) -> Result<T> {
        match self {
            Self::Exponential(l) => Ok(gamma(T::one() + delta) / l.rate().powf(delta)),
            Self::Gamma(l) => l.as_generalized().moment(delta),
            Self::GeneralizedGamma(l) => l.moment(delta),
            Self::PointMass(l) => Ok(l.atoms()[0].powf(delta)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match self {
            Self::Exponential(l) => l.sample(rng),
            Self::Gamma(l) => l.sample(rng),
            Self::GeneralizedGamma(l) => l.sample(rng),
            Self::PointMass(l) => l.atoms()[0],
        }
    }

    /// The same family with shape `shape + delta` and the mean held fixed.
    /// A point mass is returned unchanged.
    fn with_shape_shift(&self, delta: T) -> Result<Self> {
        let gamma_law = |shape: T, rate: T| -> Result<Self> {
            let shifted = shape + delta;
            positive("shifted mixing shape", shifted)?;
            Ok(Self::Gamma(GammaLaw::new(shifted, rate * shifted / shape)?))
        };
        match self {
            Self::PointMass(_) => Ok(self.clone()),
            Self::Exponential(l) => gamma_law(T::one(), l.rate()),
            Self::Gamma(l) => gamma_law(l.shape(), l.rate()),
            Self::GeneralizedGamma(l) => {
                let mean = l.moment(T::one())?;
                let shape = l.shape() + delta;
                positive("shifted mixing shape", shape)?;
                let (r, p) = (shape, l.power());
                if r + p.recip() <= T::zero() {
                    return Err(Error::MomentUndefined(format!("GG({r}, {p}) has no mean")));
                }
                // Γ(r + 1/p) / (μ^{1/p} Γ(r)) = mean
                let ratio = (crate::special::ln_gamma(r + p.recip()) - crate::special::ln_gamma(r)).exp() / mean;
                Ok(Self::GeneralizedGamma(GeneralizedGammaLaw::new(r, p, ratio.powf(p))?))
            }
        }
    }
}

impl<T: Scalar> Law<T> for MixingLaw<T> {
    fn cdf(&self, x: T) -> T {
        self.as_law().cdf(x)
    }
    fn quantile(&self, q: T) -> Result<T> {
        self.as_law().quantile(q)
    }
    fn mean(&self) -> Option<T> {
        self.as_law().mean()
    }
    fn second_moment(&self) -> Option<T> {
        self.as_law().second_moment()
    }
    fn abs_moment(&self, s: T) -> Option<T> {
        self.as_law().abs_moment(s)
    }
    fn upper_partial_moment(&self, t: T) -> T {
        self.as_law().upper_partial_moment(t)
    }
    fn upper_partial_second(&self, t: T) -> T {
        self.as_law().upper_partial_second(t)
    }
    fn lower_partial_moment(&self, t: T) -> T {
        self.as_law().lower_partial_moment(t)
    }
    fn cdf_and_partials(&self, t: T) -> Partials<T> {
        self.as_law().cdf_and_partials(t)
    }
    fn lower_partial_second(&self, t: T) -> T {
        self.as_law().lower_partial_second(t)
    }
    fn upper_power_moment(&self, t: T, p: T) -> T {
        self.as_law().upper_power_moment(t, p)
    }
    fn lower_power_moment(&self, t: T, p: T) -> T {
        self.as_law().lower_power_moment(t, p)
    }
    fn support_min(&self) -> T {
        self.as_law().support_min()
    }
    fn as_discrete(&self) -> Option<&DiscreteLaw<T>> {
        self.as_law().as_discrete()
    }
}

/// Normalizing sequence `m_n`, positive and strictly increasing in `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleSequence<T> {
    /// `m_n = coef·n`
    Linear { coef: T },
    /// `m_n = coef·n^exponent`
    Power { coef: T, exponent: T },
}

impl<T: Scalar> ScaleSequence<T> {
    pub fn linear(coef: T) -> Result<Self> {
        positive("scale coefficient", coef)?;
        Ok(Self::Linear { coef })
    }

    pub fn power(coef: T, exponent: T) -> Result<Self> {
        positive("scale coefficient", coef)?;
        positive("scale exponent", exponent)?;
        Ok(Self::Power { coef, exponent })
    }

    pub fn at(&self, n: u64) -> T {
        let nf = T::from_u64(n).expect("index fits the scalar type");
        match *self {
            Self::Linear { coef } => coef * nf,
            Self::Power { coef, exponent } => coef * nf.powf(exponent),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixingMode<T> {
    /// `Λ_n = m_n·Λ`: the normalized mixing law is the limit at every `n`.
    ScaleFamily,
    /// `Λ_n / m_n` is the base family with shape `shape + shape_drift/n` and
    /// the limit's mean. It converges to the base law as `n → ∞`.
    Explicit { shape_drift: T },
}

/// The law of `Λ_n` for every `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingModel<T> {
    base: MixingLaw<T>,
    scale: ScaleSequence<T>,
    mode: MixingMode<T>,
}

impl<T: Scalar> MixingModel<T> {
    pub fn scale_family(base: MixingLaw<T>, scale: ScaleSequence<T>) -> Self {
        Self { base, scale, mode: MixingMode::ScaleFamily }
    }

    pub fn explicit(base: MixingLaw<T>, scale: ScaleSequence<T>, shape_drift: T) -> Result<Self> {
        if !shape_drift.is_finite() {
            return Err(domain("shape drift must be finite"));
        }
        Ok(Self { base, scale, mode: MixingMode::Explicit { shape_drift } })
    }

    /// The limit law `Λ`.
    pub fn limit(&self) -> &MixingLaw<T> {
        &self.base
    }

    pub fn scale(&self) -> ScaleSequence<T> {
        self.scale
    }

    pub fn mode(&self) -> MixingMode<T> {
        self.mode
    }

    pub fn m(&self, n: u64) -> T {
        self.scale.at(n)
    }

    /// Law of `Λ_n / m_n`.
    pub fn normalized_law(&self, n: u64) -> Result<MixingLaw<T>> {
        match self.mode {
            MixingMode::ScaleFamily => Ok(self.base.clone()),
            MixingMode::Explicit { shape_drift } => {
                let nf = T::from_u64(n).expect("index fits the scalar type");
                self.base.with_shape_shift(shape_drift / nf)
            }
        }
    }

    /// `E Λ_n^δ`.
    pub fn moment(&self, n: u64, delta: T) -> Result<T> {
        Ok(self.m(n).powf(delta) * self.normalized_law(n)?.moment(delta)?)
    }

    /// `ζ_s(Λ_n / m_n, Λ)`: zero for a scale family, exact for `s ∈ {1, 2}`,
    /// and the moment upper bound for fractional `s`.
    pub fn mixing_zeta(&self, order: ZetaOrder<T>, n: u64) -> Result<ZetaEstimate<T>> {
        if self.mode == MixingMode::ScaleFamily {
            return Ok(ZetaEstimate::new(T::zero(), EstimateKind::Exact));
        }
        let at_n = self.normalized_law(n)?;
        if order.s() == T::one() {
            zeta1(&at_n, &self.base)
        } else if order.s() == lit(2.0) {
            zeta2(&at_n, &self.base)
        } else {
            lemma4_upper_bound_for(order, &at_n, &self.base)
        }
    }
}

/// `S_n` with summand law, mixing model and index `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSumModel<T> {
    summand: SummandLaw<T>,
    mixing: MixingModel<T>,
    n: u64,
    m_n: T,
    lambda_law: MixingLaw<T>,
}

impl<T: Scalar> RandomSumModel<T> {
    pub fn new(summand: SummandLaw<T>, mixing: MixingModel<T>, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("index n must be at least 1"));
        }
        if summand.mean() == T::zero() {
            return Err(domain("summand mean must be nonzero"));
        }
        let m_n = mixing.m(n);
        positive("m_n", m_n)?;
        let lambda_law = mixing.normalized_law(n)?;
        Ok(Self { summand, mixing, n, m_n, lambda_law })
    }

    pub fn summand(&self) -> &SummandLaw<T> {
        &self.summand
    }

    pub fn mixing(&self) -> &MixingModel<T> {
        &self.mixing
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m_n(&self) -> T {
        self.m_n
    }

    /// One draw of `S_n`. The index and the summands come from separate
    /// generators.
    pub fn sample_sum<R: Rng + ?Sized, S: Rng + ?Sized>(&self, index_rng: &mut R, summand_rng: &mut S) -> T {
        let lambda = self.m_n * self.lambda_law.sample(index_rng);
        let count = mixed_poisson_sample(lambda, index_rng);
        self.summand.sample_sum(count, summand_rng)
    }

    /// One draw of `S_n / (a·m_n)`.
    pub fn sample_normalized<R: Rng + ?Sized, S: Rng + ?Sized>(&self, index_rng: &mut R, summand_rng: &mut S) -> T {
        self.sample_sum(index_rng, summand_rng) / (self.summand.mean() * self.m_n)
    }

    fn sample_chunk(&self, seed: u64, chunk: usize, len: usize) -> Vec<T> {
        let child = derive_seed(seed, chunk as u64);
        let mut index_rng = stream(child, 0);
        let mut summand_rng = stream(child, 1);
        (0..len).map(|_| self.sample_normalized(&mut index_rng, &mut summand_rng)).collect()
    }

    /// `count` normalized draws in generation order, using rayon's global
    /// pool. Sub-batch `k` draws from streams derived from `(seed, k)`.
    pub fn sample_draws(&self, count: usize, seed: u64) -> Result<Vec<T>> {
        if count == 0 {
            return Err(domain("sample count must be at least 1"));
        }
        let chunks = count.div_ceil(BATCH_CHUNK);
        let parts: Vec<Vec<T>> = (0..chunks)
            .into_par_iter()
            .map(|k| self.sample_chunk(seed, k, BATCH_CHUNK.min(count - k * BATCH_CHUNK)))
            .collect();
        Ok(parts.concat())
    }

    /// [`Self::sample_draws`] as a sorted sample.
    pub fn sample_batch(&self, count: usize, seed: u64) -> Result<EmpiricalDistribution<T>> {
        EmpiricalDistribution::new(self.sample_draws(count, seed)?)
    }

    /// [`Self::sample_batch`] on a dedicated pool of `threads` workers. The
    /// result does not depend on `threads`.
    pub fn sample_batch_with_threads(&self, count: usize, seed: u64, threads: usize) -> Result<EmpiricalDistribution<T>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        pool.install(|| self.sample_batch(count, seed))
    }
}
