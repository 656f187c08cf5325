use crate::distributions::{DiscreteLaw, Law, Partials};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Sorted Monte Carlo sample; each point carries weight `1/len`.
///
/// Acts as a [`Law`] through its stepwise, right-continuous CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution<T> {
    points: Vec<T>,
    law: DiscreteLaw<T>,
    mean_stderr: T,
}

impl<T: Scalar> EmpiricalDistribution<T> {
    pub fn new(mut points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("empirical distribution needs at least one point"));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(domain("empirical distribution points must be finite"));
        }
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let law = DiscreteLaw::from_sample(&points)?;
        let n = points.len();
        let mean_stderr = if n > 1 {
            let mean = law.mean().expect("finite");
            let ss: T = points.iter().map(|&x| (x - mean) * (x - mean)).sum();
            (ss / T::from_usize_lossy(n - 1) / T::from_usize_lossy(n)).sqrt()
        } else {
            T::zero()
        };
        Ok(Self { points, law, mean_stderr })
    }

    /// Sorted sample values.
    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn law(&self) -> &DiscreteLaw<T> {
        &self.law
    }

    pub fn sample_variance(&self) -> T {
        let n = self.len();
        if n < 2 {
            return T::zero();
        }
        self.mean_stderr * self.mean_stderr * T::from_usize_lossy(n)
    }

    /// Every point multiplied by `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        if !(c > T::zero()) {
            return Err(domain(format!("scale factor must be positive, got {c}")));
        }
        Self::new(self.points.iter().map(|&x| c * x).collect())
    }

    pub fn shifted(&self, delta: T) -> Result<Self> {
        Self::new(self.points.iter().map(|&x| x + delta).collect())
    }
}

impl<T: Scalar> Law<T> for EmpiricalDistribution<T> {
    fn cdf(&self, x: T) -> T {
        self.law.cdf(x)
    }
    fn quantile(&self, q: T) -> Result<T> {
        self.law.quantile(q)
    }
    fn mean(&self) -> Option<T> {
        self.law.mean()
    }
    fn second_moment(&self) -> Option<T> {
        self.law.second_moment()
    }
    fn abs_moment(&self, s: T) -> Option<T> {
        self.law.abs_moment(s)
    }
    fn upper_partial_moment(&self, t: T) -> T {
        self.law.upper_partial_moment(t)
    }
    fn upper_partial_second(&self, t: T) -> T {
        self.law.upper_partial_second(t)
    }
    fn lower_partial_moment(&self, t: T) -> T {
        self.law.lower_partial_moment(t)
    }
    fn lower_partial_second(&self, t: T) -> T {
        self.law.lower_partial_second(t)
    }
    fn cdf_and_partials(&self, t: T) -> Partials<T> {
        self.law.cdf_and_partials(t)
    }
    fn upper_power_moment(&self, t: T, p: T) -> T {
        self.law.upper_power_moment(t, p)
    }
    fn lower_power_moment(&self, t: T, p: T) -> T {
        self.law.lower_power_moment(t, p)
    }
    fn support_min(&self) -> T {
        self.points[0]
    }
    fn mean_standard_error(&self) -> T {
        self.mean_stderr
    }
    fn as_discrete(&self) -> Option<&DiscreteLaw<T>> {
        Some(&self.law)
    }
}
