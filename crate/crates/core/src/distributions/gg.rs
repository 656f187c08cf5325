use rand::Rng;

use super::{check_positive, check_probability, GammaLaw, Law, Partials};
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Scalar};
use crate::special::{incomplete_gamma_pair, ln_gamma};

/// Generalized gamma law with density
/// `|power| rate^shape / Γ(shape) · x^{power·shape − 1} · exp(−rate · x^power)`
/// on `x > 0`.
///
/// `X^power` is `Gamma(shape, rate)`. `power = 1` is the gamma law, negative
/// powers give inverse-gamma type laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedGammaLaw<T> {
    shape: T,
    power: T,
    rate: T,
}

impl<T: Scalar> GeneralizedGammaLaw<T> {
    pub fn new(shape: T, power: T, rate: T) -> Result<Self> {
        check_positive("shape", shape)?;
        check_positive("rate", rate)?;
        if power == T::zero() || !power.is_finite() {
            return Err(domain(format!("power must be nonzero and finite, got {power}")));
        }
        Ok(Self { shape, power, rate })
    }

    pub fn shape(&self) -> T {
        self.shape
    }
    pub fn power(&self) -> T {
        self.power
    }
    pub fn rate(&self) -> T {
        self.rate
    }

    /// The gamma law of `X^power`.
    pub fn base(&self) -> GammaLaw<T> {
        GammaLaw::new(self.shape, self.rate).expect("validated at construction")
    }

    /// Law of `c·X` for `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        check_positive("scale factor", c)?;
        Self::new(self.shape, self.power, self.rate * c.powf(-self.power))
    }

    /// `E X^δ = Γ(shape + δ/power) / (rate^{δ/power} Γ(shape))`.
    ///
    /// Fails when `shape + δ/power ≤ 0`, where the moment is infinite.
    pub fn moment(&self, delta: T) -> Result<T> {
        if !(delta > T::zero()) {
            return Err(domain(format!("moment order must be positive, got {delta}")));
        }
        let k = delta / self.power;
        let arg = self.shape + k;
        if !(arg > T::zero()) {
            return Err(Error::MomentUndefined(format!(
                "E X^{delta} needs shape + delta/power > 0, got {arg}"
            )));
        }
        Ok((ln_gamma(arg) - ln_gamma(self.shape) - k * self.rate.ln()).exp())
    }

    /// `E[X^k; X > t]` (or `X ≤ t` when `upper` is false) for integer `k ≥ 0`.
    fn truncated_moment(&self, k: i32, t: T, upper: bool) -> T {
        let total = if k == 0 {
            T::one()
        } else {
            match self.moment(T::from_i32(k).unwrap()) {
                Ok(m) => m,
                Err(_) => return T::infinity(),
            }
        };
        if t <= T::zero() {
            return if upper { total } else { T::zero() };
        }
        let a = self.shape + T::from_i32(k).unwrap() / self.power;
        let z = self.rate * t.powf(self.power);
        let (p, q) = incomplete_gamma_pair(a, z).expect("positive shape");
        // X > t  ⇔  X^power > z/rate  when power > 0, reversed otherwise
        let frac = if (self.power > T::zero()) == upper { q } else { p };
        total * frac
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.base().sample(rng).powf(self.power.recip())
    }
}

impl<T: Scalar> Law<T> for GeneralizedGammaLaw<T> {
    fn cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        if x == T::infinity() {
            return T::one();
        }
        let z = self.rate * x.powf(self.power);
        let (p, q) = incomplete_gamma_pair(self.shape, z).expect("positive shape");
        if self.power > T::zero() { p } else { q }
    }

    fn quantile(&self, q: T) -> Result<T> {
        check_probability(q)?;
        let base = self.base();
        let t = if self.power > T::zero() { base.quantile(q)? } else { base.quantile(T::one() - q)? };
        Ok(t.powf(self.power.recip()))
    }

    fn mean(&self) -> Option<T> {
        self.moment(T::one()).ok()
    }

    fn second_moment(&self) -> Option<T> {
        self.moment(lit(2.0)).ok()
    }

    fn abs_moment(&self, s: T) -> Option<T> {
        self.moment(s).ok()
    }

    fn upper_partial_moment(&self, t: T) -> T {
        let Some(mean) = self.mean() else {
            return T::infinity();
        };
        if t <= T::zero() {
            return mean - t;
        }
        let v = self.truncated_moment(1, t, true) - t * self.truncated_moment(0, t, true);
        v.max(T::zero())
    }

    fn upper_partial_second(&self, t: T) -> T {
        if self.second_moment().is_none() {
            return T::infinity();
        }
        let half = lit::<T>(0.5);
        let two = lit::<T>(2.0);
        let v = self.truncated_moment(2, t, true) - two * t * self.truncated_moment(1, t, true)
            + t * t * self.truncated_moment(0, t, true);
        (half * v).max(T::zero())
    }

    fn lower_partial_moment(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        let v = t * self.truncated_moment(0, t, false) - self.truncated_moment(1, t, false);
        v.max(T::zero())
    }

    fn cdf_and_partials(&self, t: T) -> Partials<T> {
        let (Some(m1), Some(m2)) = (self.mean(), self.second_moment()) else {
            return Partials { cdf: self.cdf(t), upper1: self.upper_partial_moment(t), upper2: self.upper_partial_second(t) };
        };
        if t <= T::zero() {
            let half = lit::<T>(0.5);
            return Partials { cdf: T::zero(), upper1: m1 - t, upper2: half * (m2 - lit::<T>(2.0) * t * m1 + t * t) };
        }
        let z = self.rate * t.powf(self.power);
        let upper_frac = |a: T| {
            let (p, q) = incomplete_gamma_pair(a, z).expect("positive shape");
            if self.power > T::zero() { q } else { p }
        };
        let s0 = upper_frac(self.shape);
        let s1 = m1 * upper_frac(self.shape + self.power.recip());
        let s2 = m2 * upper_frac(self.shape + lit::<T>(2.0) / self.power);
        Partials {
            cdf: T::one() - s0,
            upper1: (s1 - t * s0).max(T::zero()),
            upper2: (lit::<T>(0.5) * (s2 - lit::<T>(2.0) * t * s1 + t * t * s0)).max(T::zero()),
        }
    }

    fn lower_partial_second(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        let half = lit::<T>(0.5);
        let two = lit::<T>(2.0);
        let v = t * t * self.truncated_moment(0, t, false) - two * t * self.truncated_moment(1, t, false)
            + self.truncated_moment(2, t, false);
        (half * v).max(T::zero())
    }

    fn support_min(&self) -> T {
        T::zero()
    }
}
