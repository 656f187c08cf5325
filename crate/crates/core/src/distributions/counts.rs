use rand::Rng;

use super::sampling::{standard_gamma, uniform, uniform_open0};
use super::check_positive;
use crate::error::{domain, Result};
use crate::scalar::{lit, Scalar};
use crate::special::ln_gamma;

/// Below this intensity Poisson variates come from sequential inversion.
const INVERSION_LIMIT: f64 = 30.0;

/// Count laws on {0, 1, 2, ...}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteCountLaw<T> {
    Poisson { lambda: T },
    /// `P(k) = p (1 − p)^k`.
    Geometric { p: T },
    /// `P(k) = Γ(k + r) / (k! Γ(r)) · p^r (1 − p)^k`.
    NegativeBinomial { r: T, p: T },
}

fn check_open_probability<T: Scalar>(p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(domain(format!("success probability must lie in (0, 1), got {p}")))
    }
}

/// Negative binomial probability of `k`.
pub fn negative_binomial_pmf<T: Scalar>(r: T, p: T, k: u64) -> Result<T> {
    check_positive("r", r)?;
    check_open_probability(p)?;
    let kf = T::from_u64(k).expect("count representable");
    let ln = ln_gamma(kf + r) - ln_gamma(kf + T::one()) - ln_gamma(r) + r * p.ln() + kf * (-p).ln_1p();
    Ok(ln.exp())
}

impl<T: Scalar> DiscreteCountLaw<T> {
    pub fn poisson(lambda: T) -> Result<Self> {
        check_positive("lambda", lambda)?;
        Ok(Self::Poisson { lambda })
    }

    pub fn geometric(p: T) -> Result<Self> {
        check_open_probability(p)?;
        Ok(Self::Geometric { p })
    }

    pub fn negative_binomial(r: T, p: T) -> Result<Self> {
        check_positive("r", r)?;
        check_open_probability(p)?;
        Ok(Self::NegativeBinomial { r, p })
    }

    pub fn pmf(&self, k: u64) -> T {
        match *self {
            Self::Poisson { lambda } => {
                let kf = T::from_u64(k).expect("count representable");
                (kf * lambda.ln() - lambda - ln_gamma(kf + T::one())).exp()
            }
            Self::Geometric { p } => p * (T::from_u64(k).expect("count representable") * (-p).ln_1p()).exp(),
            Self::NegativeBinomial { r, p } => negative_binomial_pmf(r, p, k).expect("validated at construction"),
        }
    }

    pub fn mean(&self) -> T {
        match *self {
            Self::Poisson { lambda } => lambda,
            Self::Geometric { p } => (T::one() - p) / p,
            Self::NegativeBinomial { r, p } => r * (T::one() - p) / p,
        }
    }

    /// Probabilities `P(0), P(1), ...` up to the first `K` at which the
    /// accumulated mass reaches `1 − 1e-12`.
    pub fn truncated_pmf(&self) -> Vec<T> {
        let target = T::one() - lit::<T>(1e-12).max(T::epsilon() * lit::<T>(8.0));
        let mut out = Vec::new();
        let mut acc = T::zero();
        let mut k = 0u64;
        // the mode is at or below the mean, so mass keeps arriving until the tail
        let floor = self.mean();
        loop {
            let v = self.pmf(k);
            out.push(v);
            acc = acc + v;
            if acc >= target && T::from_u64(k).unwrap() >= floor {
                break;
            }
            if k > 10_000_000 {
                break;
            }
            k += 1;
        }
        out
    }

    /// Poisson by inversion/PTRS; geometric and negative binomial through
    /// the gamma–Poisson mixture.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match *self {
            Self::Poisson { lambda } => poisson_sample(lambda, rng),
            Self::Geometric { p } => {
                let rate = p / (T::one() - p);
                poisson_sample(standard_gamma(T::one(), rng) / rate, rng)
            }
            Self::NegativeBinomial { r, p } => {
                let rate = p / (T::one() - p);
                poisson_sample(standard_gamma(r, rng) / rate, rng)
            }
        }
    }
}

/// Count of a unit-rate Poisson process on `[0, mixing_draw]`, i.e. a
/// Poisson variate with intensity equal to one draw of the mixing law.
pub fn mixed_poisson_sample<T: Scalar, R: Rng + ?Sized>(mixing_draw: T, rng: &mut R) -> u64 {
    poisson_sample(mixing_draw, rng)
}

/// Poisson(λ) variate; 0 for λ ≤ 0.
pub fn poisson_sample<T: Scalar, R: Rng + ?Sized>(lambda: T, rng: &mut R) -> u64 {
    if !(lambda > T::zero()) {
        return 0;
    }
    if lambda < lit::<T>(INVERSION_LIMIT) {
        poisson_inversion(lambda, rng)
    } else {
        poisson_ptrs(lambda, rng)
    }
}

fn poisson_inversion<T: Scalar, R: Rng + ?Sized>(lambda: T, rng: &mut R) -> u64 {
    let u: T = uniform(rng);
    let mut p = (-lambda).exp();
    let mut cdf = p;
    let mut k = 0u64;
    // guards against u landing above the rounded total mass
    let cap = (lambda + lit::<T>(40.0) * lambda.sqrt() + lit::<T>(100.0)).to_u64().unwrap_or(u64::MAX);
    while u > cdf && k < cap {
        k += 1;
        p = p * lambda / T::from_u64(k).unwrap();
        cdf = cdf + p;
    }
    k
}

/// Hörmann's transformed rejection with squeeze (PTRS), for λ ≥ 10.
fn poisson_ptrs<T: Scalar, R: Rng + ?Sized>(lambda: T, rng: &mut R) -> u64 {
    let half = lit::<T>(0.5);
    let slam = lambda.sqrt();
    let loglam = lambda.ln();
    let b = lit::<T>(0.931) + lit::<T>(2.53) * slam;
    let a = lit::<T>(-0.059) + lit::<T>(0.02483) * b;
    let inv_alpha = lit::<T>(1.1239) + lit::<T>(1.1328) / (b - lit::<T>(3.4));
    let vr = lit::<T>(0.9277) - lit::<T>(3.6224) / (b - lit::<T>(2.0));
    loop {
        let u = uniform::<T, R>(rng) - half;
        let v: T = uniform_open0(rng);
        let us = half - u.abs();
        let k = ((lit::<T>(2.0) * a / us + b) * u + lambda + lit::<T>(0.43)).floor();
        if us >= lit::<T>(0.07) && v <= vr {
            return k.to_u64().unwrap_or(0);
        }
        if k < T::zero() || (us < lit::<T>(0.013) && v > us) {
            continue;
        }
        let lhs = v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln();
        let rhs = -lambda + k * loglam - ln_gamma(k + T::one());
        if lhs <= rhs {
            return k.to_u64().unwrap_or(0);
        }
    }
}
