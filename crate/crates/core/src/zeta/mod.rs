//! Zolotarev ζ_s distances for `1 ≤ s ≤ 2`.
//!
//! * ζ₁ is `∫|F − G|`.
//! * ζ₂, for laws with equal means, is `∫|D(t)| dt` where
//!   `D(t) = ∫_{−∞}^t (F − G) = E(X − t)₊ − E(Y − t)₊`.
//!
//! Whenever one side is a finite discrete law (samples included), both are
//! computed exactly, interval by interval, from the other side's CDF,
//! quantile and partial moments. Pairs of continuous laws fall back to
//! adaptive quadrature. For fractional `s` no exact value is attempted: the
//! test-function lower bound and the moment upper bound bracket it.

mod analytic;
mod empirical;
mod exact;
mod lower;
mod order;

pub use empirical::EmpiricalDistribution;
pub use lower::{default_t_grid, zeta_s_lower_bound, zeta_s_lower_bound_refined};
pub use order::ZetaOrder;

use crate::distributions::{DiscreteLaw, Law};
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Scalar};

/// Absolute tolerance for quadrature-based distances.
pub const QUADRATURE_TOLERANCE: f64 = 1e-9;

/// Multiple of the Monte Carlo standard error of the mean inside which a
/// sample's mean counts as equal to the reference mean.
pub const MEAN_TOLERANCE_STDERRS: f64 = 10.0;

/// Mean tolerance for exact laws, relative to `1 + |E X| + |E Y|`.
pub const ANALYTIC_MEAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaEstimate<T> {
    pub value: T,
    pub kind: EstimateKind,
    /// Monte Carlo standard error. Zero for a single evaluation; filled in
    /// when estimates are aggregated over replications.
    pub mc_stderr: T,
    /// Set when a quadrature hit its subdivision cap.
    pub precision_warning: Option<String>,
}

impl<T: Scalar> ZetaEstimate<T> {
    pub(crate) fn new(value: T, kind: EstimateKind) -> Self {
        Self { value: value.max(T::zero()), kind, mc_stderr: T::zero(), precision_warning: None }
    }
}

/// ζ₁(F, G) = ∫|F(x) − G(x)| dx.
pub fn zeta1<T, F, G>(f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    if f.mean().is_none() || g.mean().is_none() {
        return Err(Error::Divergent("zeta1 needs finite first moments".into()));
    }
    if let Some(d) = f.as_discrete() {
        return Ok(ZetaEstimate::new(exact::zeta1_discrete(d, g)?, EstimateKind::Exact));
    }
    if let Some(d) = g.as_discrete() {
        return Ok(ZetaEstimate::new(exact::zeta1_discrete(d, f)?, EstimateKind::Exact));
    }
    analytic::zeta1_quadrature(f, g)
}

/// ζ₂(F, G) = ∫|D(t)| dt for laws with matched means.
///
/// Means may differ by at most [`mean_tolerance`]; a discrete side is then
/// shifted onto the other's mean before integrating, since ζ₂ between laws
/// with different means is infinite. Beyond the tolerance the result is
/// [`Error::MeanMismatch`].
pub fn zeta2<T, F, G>(f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let (mf, mg) = matched_means(f, g)?;
    if let Some(d) = f.as_discrete() {
        let d = recentered(d, mg - mf);
        return Ok(ZetaEstimate::new(exact::zeta2_discrete(&d, g)?, EstimateKind::Exact));
    }
    if let Some(d) = g.as_discrete() {
        let d = recentered(d, mf - mg);
        return Ok(ZetaEstimate::new(exact::zeta2_discrete(&d, f)?, EstimateKind::Exact));
    }
    analytic::zeta2_quadrature(f, g)
}

/// Largest admissible `|E X − E Y|` for ζ_s with `s > 1`.
pub fn mean_tolerance<T, F, G>(f: &F, g: &G) -> T
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let mc = lit::<T>(MEAN_TOLERANCE_STDERRS) * (f.mean_standard_error() + g.mean_standard_error());
    let scale = T::one() + f.mean().unwrap_or(T::zero()).abs() + g.mean().unwrap_or(T::zero()).abs();
    mc.max(lit::<T>(ANALYTIC_MEAN_TOLERANCE).max(T::epsilon() * lit::<T>(64.0)) * scale)
}

pub(crate) fn matched_means<T, F, G>(f: &F, g: &G) -> Result<(T, T)>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let (Some(mf), Some(mg)) = (f.mean(), g.mean()) else {
        return Err(Error::Divergent("zeta_s with s > 1 needs finite first moments".into()));
    };
    if f.second_moment().is_none() && g.as_discrete().is_none() && f.as_discrete().is_none() {
        return Err(Error::Divergent("zeta2 between continuous laws needs finite second moments".into()));
    }
    let tol = mean_tolerance(f, g);
    let diff = (mf - mg).abs();
    if diff > tol {
        return Err(Error::MeanMismatch { diff: diff.to_f64_lossy(), tolerance: tol.to_f64_lossy() });
    }
    Ok((mf, mg))
}

pub(crate) fn recentered<T: Scalar>(d: &DiscreteLaw<T>, delta: T) -> std::borrow::Cow<'_, DiscreteLaw<T>> {
    if delta == T::zero() {
        std::borrow::Cow::Borrowed(d)
    } else {
        std::borrow::Cow::Owned(d.shifted(delta))
    }
}

/// Moment upper bound `Γ(1+α)/Γ(1+s) · (E|X|^s + E|Y|^s)`, valid when the
/// first `m` moments of the two laws agree.
pub fn lemma4_upper_bound<T: Scalar>(order: ZetaOrder<T>, abs_moment_f: T, abs_moment_g: T) -> Result<ZetaEstimate<T>> {
    for (name, v) in [("first", abs_moment_f), ("second", abs_moment_g)] {
        if !(v >= T::zero()) || !v.is_finite() {
            return Err(domain(format!("{name} absolute moment must be finite and nonnegative, got {v}")));
        }
    }
    Ok(ZetaEstimate::new(order.moment_bound_constant() * (abs_moment_f + abs_moment_g), EstimateKind::UpperBound))
}

/// [`lemma4_upper_bound`] with the absolute moments taken from the laws.
pub fn lemma4_upper_bound_for<T, F, G>(order: ZetaOrder<T>, f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let mf = f.abs_moment(order.s()).ok_or_else(|| Error::Divergent("E|X|^s is infinite".into()))?;
    let mg = g.abs_moment(order.s()).ok_or_else(|| Error::Divergent("E|Y|^s is infinite".into()))?;
    lemma4_upper_bound(order, mf, mg)
}

#[cfg(test)]
mod tests;
