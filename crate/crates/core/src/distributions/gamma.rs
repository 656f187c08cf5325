use rand::Rng;

use super::sampling::{standard_exponential, standard_gamma};
use super::{check_positive, check_probability, GeneralizedGammaLaw, Law, Partials};
use crate::error::Result;
use crate::roots::newton_bracketed;
use crate::scalar::{lit, Scalar};
use crate::special::{gamma as gamma_fn, incomplete_gamma_pair, ln_gamma};

/// Gamma law with density `rate^shape / Γ(shape) · x^{shape−1} e^{−rate·x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaLaw<T> {
    shape: T,
    rate: T,
}

impl<T: Scalar> GammaLaw<T> {
    pub fn new(shape: T, rate: T) -> Result<Self> {
        check_positive("shape", shape)?;
        check_positive("rate", rate)?;
        Ok(Self { shape, rate })
    }

    pub fn shape(&self) -> T {
        self.shape
    }
    pub fn rate(&self) -> T {
        self.rate
    }

    pub fn as_generalized(&self) -> GeneralizedGammaLaw<T> {
        GeneralizedGammaLaw::new(self.shape, T::one(), self.rate).expect("validated at construction")
    }

    /// Law of `c·X` for `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        check_positive("scale factor", c)?;
        Self::new(self.shape, self.rate / c)
    }

    pub fn pdf(&self, x: T) -> T {
        if x < T::zero() {
            return T::zero();
        }
        if x == T::zero() {
            return match self.shape.partial_cmp(&T::one()) {
                Some(std::cmp::Ordering::Less) => T::infinity(),
                Some(std::cmp::Ordering::Equal) => self.rate,
                _ => T::zero(),
            };
        }
        let a = self.shape;
        (a * self.rate.ln() + (a - T::one()) * x.ln() - self.rate * x - ln_gamma(a)).exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        standard_gamma(self.shape, rng) / self.rate
    }
}

impl<T: Scalar> Law<T> for GammaLaw<T> {
    fn cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        incomplete_gamma_pair(self.shape, self.rate * x).expect("positive shape").0
    }

    /// Bracketed Newton on `F(x) − q`; converged when `|F(x) − q| ≤ 1e-13·q`
    /// (or a few ulps for single precision).
    fn quantile(&self, q: T) -> Result<T> {
        check_probability(q)?;
        let (a, b) = (self.shape, self.rate);
        let mean = a / b;
        let sd = a.sqrt() / b;
        let mut hi = mean + lit::<T>(10.0) * sd;
        while self.cdf(hi) < q {
            hi = hi + hi;
        }
        // leading term of the lower tail, P(a, x) ≈ x^a / Γ(a + 1)
        let tail_guess = (q * gamma_fn(a + T::one())).powf(a.recip()) / b;
        let start = if tail_guess.is_finite() && tail_guess < mean { tail_guess } else { mean };
        let f_tol = q * lit::<T>(1e-13).max(T::epsilon() * lit::<T>(16.0));
        Ok(newton_bracketed(
            |x| (self.cdf(x) - q, self.pdf(x)),
            T::zero(),
            hi,
            start,
            T::epsilon(),
            f_tol,
        ))
    }

    fn mean(&self) -> Option<T> {
        Some(self.shape / self.rate)
    }

    fn second_moment(&self) -> Option<T> {
        Some(self.shape * (self.shape + T::one()) / (self.rate * self.rate))
    }

    fn abs_moment(&self, s: T) -> Option<T> {
        self.as_generalized().abs_moment(s)
    }

    fn upper_partial_moment(&self, t: T) -> T {
        self.as_generalized().upper_partial_moment(t)
    }

    fn upper_partial_second(&self, t: T) -> T {
        self.as_generalized().upper_partial_second(t)
    }

    fn lower_partial_second(&self, t: T) -> T {
        self.as_generalized().lower_partial_second(t)
    }

    fn lower_partial_moment(&self, t: T) -> T {
        self.as_generalized().lower_partial_moment(t)
    }

    fn cdf_and_partials(&self, t: T) -> Partials<T> {
        self.as_generalized().cdf_and_partials(t)
    }

    fn support_min(&self) -> T {
        T::zero()
    }
}

/// Exponential law with the given rate; closed forms throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialLaw<T> {
    rate: T,
}

impl<T: Scalar> ExponentialLaw<T> {
    pub fn new(rate: T) -> Result<Self> {
        check_positive("rate", rate)?;
        Ok(Self { rate })
    }

    pub fn rate(&self) -> T {
        self.rate
    }

    pub fn as_gamma(&self) -> GammaLaw<T> {
        GammaLaw::new(T::one(), self.rate).expect("validated at construction")
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        check_positive("scale factor", c)?;
        Self::new(self.rate / c)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        standard_exponential::<T, R>(rng) / self.rate
    }
}

impl<T: Scalar> Law<T> for ExponentialLaw<T> {
    fn cdf(&self, x: T) -> T {
        if x <= T::zero() { T::zero() } else { -(-self.rate * x).exp_m1() }
    }

    fn quantile(&self, q: T) -> Result<T> {
        check_probability(q)?;
        Ok(-(-q).ln_1p() / self.rate)
    }

    fn mean(&self) -> Option<T> {
        Some(self.rate.recip())
    }

    fn second_moment(&self) -> Option<T> {
        Some(lit::<T>(2.0) / (self.rate * self.rate))
    }

    fn abs_moment(&self, s: T) -> Option<T> {
        Some(gamma_fn(T::one() + s) / self.rate.powf(s))
    }

    fn upper_partial_moment(&self, t: T) -> T {
        let inv = self.rate.recip();
        if t <= T::zero() { inv - t } else { (-self.rate * t).exp() * inv }
    }

    fn upper_partial_second(&self, t: T) -> T {
        let inv = self.rate.recip();
        if t <= T::zero() {
            lit::<T>(0.5) * t * t - t * inv + inv * inv
        } else {
            (-self.rate * t).exp() * inv * inv
        }
    }

    fn lower_partial_moment(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        (t + (-self.rate * t).exp_m1() / self.rate).max(T::zero())
    }

    fn lower_partial_second(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        let inv = self.rate.recip();
        let v = lit::<T>(0.5) * t * t - t * inv - (-self.rate * t).exp_m1() * inv * inv;
        v.max(T::zero())
    }

    fn support_min(&self) -> T {
        T::zero()
    }
}
