//! Analytic laws: exponential, gamma, generalized gamma, finite discrete,
//! and the Poisson / geometric / negative binomial count laws.
//!
//! Continuous and finite discrete laws share the [`Law`] interface used by
//! the ζ-metric code: CDF, quantile, and the partial moments `E(X − t)₊`,
//! `E(X − t)₊²/2` from which integrated CDFs follow in closed form.

mod counts;
mod discrete;
mod gamma;
mod gg;
pub(crate) mod sampling;

pub use counts::{mixed_poisson_sample, negative_binomial_pmf, poisson_sample, DiscreteCountLaw};
pub use discrete::DiscreteLaw;
pub use gamma::{ExponentialLaw, GammaLaw};
pub use gg::GeneralizedGammaLaw;

use crate::error::{domain, Result};
use crate::quadrature::{integrate_lower, integrate_upper, DEFAULT_MAX_SUBDIVISIONS};
use crate::scalar::{lit, Scalar};

/// A univariate law on ℝ.
///
/// Partial moments return `+∞` when the corresponding moment is infinite.
pub trait Law<T: Scalar>: Sync {
    fn cdf(&self, x: T) -> T;

    /// Left-continuous inverse `inf{x : F(x) ≥ q}` for `q ∈ (0, 1)`.
    fn quantile(&self, q: T) -> Result<T>;

    /// `E X`, or `None` when the first moment is infinite.
    fn mean(&self) -> Option<T>;

    /// `E X²`, or `None` when infinite.
    fn second_moment(&self) -> Option<T>;

    /// `E|X|^s`, or `None` when infinite.
    fn abs_moment(&self, s: T) -> Option<T>;

    /// `E(X − t)₊`. Convex, nonincreasing, tends to 0 at +∞.
    fn upper_partial_moment(&self, t: T) -> T;

    /// `E(X − t)₊² / 2`, which equals `∫_t^∞ E(X − u)₊ du`.
    fn upper_partial_second(&self, t: T) -> T;

    /// `E(t − X)₊`, which equals `∫_{−∞}^t F(u) du`.
    fn lower_partial_moment(&self, t: T) -> T {
        match self.mean() {
            Some(mean) => (t - mean + self.upper_partial_moment(t)).max(T::zero()),
            None => T::infinity(),
        }
    }

    /// `(F(t), E(X − t)₊, E(X − t)₊²/2)` in one call; laws whose partial
    /// moments share special-function evaluations override this.
    fn cdf_and_partials(&self, t: T) -> Partials<T> {
        Partials {
            cdf: self.cdf(t),
            upper1: self.upper_partial_moment(t),
            upper2: self.upper_partial_second(t),
        }
    }

    /// Standard error attached to `mean()`: zero for exact laws, the Monte
    /// Carlo error for sample-based ones.
    fn mean_standard_error(&self) -> T {
        T::zero()
    }

    /// `E(t − X)₊² / 2`.
    fn lower_partial_second(&self, t: T) -> T {
        let (Some(mean), Some(m2)) = (self.mean(), self.second_moment()) else {
            return T::infinity();
        };
        // (X − t)² splits into its positive and negative parts
        let half = lit::<T>(0.5);
        let central = m2 - lit::<T>(2.0) * t * mean + t * t;
        (half * central - self.upper_partial_second(t)).max(T::zero())
    }

    /// `E(X − t)₊^p` for `p ≥ 1`.
    fn upper_power_moment(&self, t: T, p: T) -> T {
        if p == T::one() {
            return self.upper_partial_moment(t);
        }
        if p == lit::<T>(2.0) {
            return lit::<T>(2.0) * self.upper_partial_second(t);
        }
        // p ∫_t^∞ (u − t)^{p−1} (1 − F(u)) du
        let q = integrate_upper(
            |u: T| (u - t).powf(p - T::one()) * (T::one() - self.cdf(u)),
            t,
            lit::<T>(1e-12),
            DEFAULT_MAX_SUBDIVISIONS,
        );
        p * q.value
    }

    /// `E(t − X)₊^p` for `p ≥ 1`.
    fn lower_power_moment(&self, t: T, p: T) -> T {
        if p == lit::<T>(2.0) {
            return lit::<T>(2.0) * self.lower_partial_second(t);
        }
        let lo = self.support_min();
        let integrand = |u: T| (t - u).powf(p - T::one()) * self.cdf(u);
        let q = if lo.is_finite() {
            if t <= lo {
                return T::zero();
            }
            crate::quadrature::integrate(integrand, lo, t, lit::<T>(1e-12), DEFAULT_MAX_SUBDIVISIONS)
        } else {
            integrate_lower(integrand, t, lit::<T>(1e-12), DEFAULT_MAX_SUBDIVISIONS)
        };
        p * q.value
    }

    /// Infimum of the support (`−∞` if unbounded below).
    fn support_min(&self) -> T {
        T::neg_infinity()
    }

    /// The law as a finite discrete law, when it is one.
    fn as_discrete(&self) -> Option<&DiscreteLaw<T>> {
        None
    }
}

/// CDF and the first two upper partial moments at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials<T> {
    pub cdf: T,
    /// `E(X − t)₊`
    pub upper1: T,
    /// `E(X − t)₊² / 2`
    pub upper2: T,
}

pub(crate) fn check_probability<T: Scalar>(q: T) -> Result<()> {
    if q > T::zero() && q < T::one() {
        Ok(())
    } else {
        Err(domain(format!("probability must lie in (0, 1), got {q}")))
    }
}

pub(crate) fn check_positive<T: Scalar>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}
