//! Closed-form convergence-rate bounds for normalized mixed Poisson sums.
//!
//! Every bound has the shape `poissonization + mixing`, where the mixing
//! term is `ζ_s(Λ_n/m_n, Λ)` and vanishes for scale families. Throughout,
//! `C_s = Γ(1+α)/Γ(1+s)` and `K = 1 + σ²/a² = E X²/(E X)²`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distributions::GeneralizedGammaLaw;
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Scalar};
use crate::zeta::ZetaOrder;

/// Which formula produced a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Poisson index with fixed intensity λ.
    Lemma5,
    /// General mixing: `E Λ_n^{s/2} / m_n^s · C_s · K^{s/2} + ζ_s(Λ_n/m_n, Λ)`.
    Theorem1,
    /// `s = 2` form of [`BoundSource::Theorem1`].
    Corollary1,
    /// [`BoundSource::Theorem1`] with `m_n = E Λ_n` and Jensen's inequality.
    Remark1,
    /// Scale family `Λ_n = m_n Λ`.
    Corollary2,
    /// Geometric sums (exponential mixing).
    Example1,
    /// Negative binomial sums in terms of `(r, p_n)`.
    Example2,
    /// Negative binomial sums, `s = 2`, in terms of `(r, μ, n)`.
    Example2Zeta2,
    /// Generalized gamma mixing.
    Example3,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lemma5 => "lemma5",
            Self::Theorem1 => "theorem1",
            Self::Corollary1 => "corollary1",
            Self::Remark1 => "remark1",
            Self::Corollary2 => "corollary2",
            Self::Example1 => "example1",
            Self::Example2 => "example2",
            Self::Example2Zeta2 => "example2_zeta2",
            Self::Example3 => "example3",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An evaluated bound, split into its two terms.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub total: T,
    pub poissonization_term: T,
    pub mixing_term: T,
    pub source: BoundSource,
    /// Parameters the bound was evaluated at, in argument order.
    pub inputs: Vec<(&'static str, T)>,
}

impl<T: Scalar> BoundReport<T> {
    fn new(source: BoundSource, poissonization_term: T, mixing_term: T, inputs: Vec<(&'static str, T)>) -> Self {
        Self { total: poissonization_term + mixing_term, poissonization_term, mixing_term, source, inputs }
    }

    pub fn input(&self, name: &str) -> Option<T> {
        self.inputs.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let inputs: serde_json::Map<String, serde_json::Value> =
            self.inputs.iter().map(|&(k, v)| (k.to_string(), serde_json::json!(v.to_f64_lossy()))).collect();
        serde_json::json!({
            "total": self.total.to_f64_lossy(),
            "poissonization_term": self.poissonization_term.to_f64_lossy(),
            "mixing_term": self.mixing_term.to_f64_lossy(),
            "source": self.source.as_str(),
            "inputs": inputs,
        })
    }
}

fn moment_ratio<T: Scalar>(a: T, sigma2: T) -> Result<T> {
    if a == T::zero() || !a.is_finite() {
        return Err(domain(format!("summand mean a must be finite and nonzero, got {a}")));
    }
    if !(sigma2 >= T::zero() && sigma2.is_finite()) {
        return Err(domain(format!("summand variance must be finite and nonnegative, got {sigma2}")));
    }
    Ok(T::one() + sigma2 / (a * a))
}

fn require_positive<T: Scalar>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn require_probability<T: Scalar>(p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(domain(format!("p must lie in (0, 1), got {p}")))
    }
}

/// `C_s · ((a² + σ²)/(λ a²))^{s/2}`.
pub fn lemma5<T: Scalar>(order: ZetaOrder<T>, lambda: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_positive("lambda", lambda)?;
    let k = moment_ratio(a, sigma2)?;
    let total = order.moment_bound_constant() * (k / lambda).powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Lemma5,
        total,
        T::zero(),
        vec![("s", order.s()), ("lambda", lambda), ("a", a), ("sigma2", sigma2)],
    ))
}

/// `E Λ_n^{s/2} / m_n^s · C_s · K^{s/2} + mixing_zeta`.
pub fn theorem1<T: Scalar>(
    order: ZetaOrder<T>,
    moment_half_s: T,
    m_n: T,
    a: T,
    sigma2: T,
    mixing_zeta: T,
) -> Result<BoundReport<T>> {
    require_positive("E Lambda_n^(s/2)", moment_half_s)?;
    require_positive("m_n", m_n)?;
    require_mixing(mixing_zeta)?;
    let k = moment_ratio(a, sigma2)?;
    let s = order.s();
    let poisson = moment_half_s / m_n.powf(s) * order.moment_bound_constant() * k.powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Theorem1,
        poisson,
        mixing_zeta,
        vec![("s", s), ("moment_half_s", moment_half_s), ("m_n", m_n), ("a", a), ("sigma2", sigma2), ("mixing_zeta", mixing_zeta)],
    ))
}

/// `E Λ_n / (2 m_n²) · K + mixing_zeta` (the `s = 2` case of [`theorem1`]).
pub fn corollary1<T: Scalar>(mean_lambda_n: T, m_n: T, a: T, sigma2: T, mixing_zeta: T) -> Result<BoundReport<T>> {
    let mut report = theorem1(ZetaOrder::two(), mean_lambda_n, m_n, a, sigma2, mixing_zeta)?;
    report.source = BoundSource::Corollary1;
    report.inputs[1].0 = "mean_lambda_n";
    report.inputs.remove(0);
    Ok(report)
}

/// `C_s · K^{s/2} / m_n^{s/2} + mixing_zeta`, valid when `m_n = E Λ_n`.
pub fn remark1<T: Scalar>(order: ZetaOrder<T>, m_n: T, a: T, sigma2: T, mixing_zeta: T) -> Result<BoundReport<T>> {
    require_positive("m_n", m_n)?;
    require_mixing(mixing_zeta)?;
    let k = moment_ratio(a, sigma2)?;
    let poisson = order.moment_bound_constant() * (k / m_n).powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Remark1,
        poisson,
        mixing_zeta,
        vec![("s", order.s()), ("m_n", m_n), ("a", a), ("sigma2", sigma2), ("mixing_zeta", mixing_zeta)],
    ))
}

/// `E Λ^{s/2} / m_n^{s/2} · C_s · K^{s/2}` for `Λ_n = m_n Λ`.
pub fn corollary2<T: Scalar>(order: ZetaOrder<T>, limit_moment_half_s: T, m_n: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_positive("E Lambda^(s/2)", limit_moment_half_s)?;
    require_positive("m_n", m_n)?;
    let k = moment_ratio(a, sigma2)?;
    let poisson = limit_moment_half_s * order.moment_bound_constant() * (k / m_n).powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Corollary2,
        poisson,
        T::zero(),
        vec![("s", order.s()), ("limit_moment_half_s", limit_moment_half_s), ("m_n", m_n), ("a", a), ("sigma2", sigma2)],
    ))
}

/// Geometric sums with parameter `p`: `C_s · [p/(1−p) · K]^{s/2}`.
pub fn example1<T: Scalar>(order: ZetaOrder<T>, p: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_probability(p)?;
    let k = moment_ratio(a, sigma2)?;
    let total = order.moment_bound_constant() * (p / (T::one() - p) * k).powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Example1,
        total,
        T::zero(),
        vec![("s", order.s()), ("p", p), ("a", a), ("sigma2", sigma2)],
    ))
}

/// Negative binomial sums `NB(r, p)`: `C_s · [p/((1−p) r) · K]^{s/2}`.
pub fn negative_binomial<T: Scalar>(order: ZetaOrder<T>, r: T, p: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_positive("r", r)?;
    require_probability(p)?;
    let k = moment_ratio(a, sigma2)?;
    let total = order.moment_bound_constant() * (p / ((T::one() - p) * r) * k).powf(half_s(order));
    Ok(BoundReport::new(
        BoundSource::Example2,
        total,
        T::zero(),
        vec![("s", order.s()), ("r", r), ("p", p), ("a", a), ("sigma2", sigma2)],
    ))
}

/// `ζ₂` bound for gamma mixing `Λ_n = n G_{r,μ}`: `μ/(2 n r) · K`.
pub fn example2_zeta2<T: Scalar>(r: T, mu: T, n: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_positive("r", r)?;
    require_positive("mu", mu)?;
    require_positive("n", n)?;
    let k = moment_ratio(a, sigma2)?;
    let total = mu / (lit::<T>(2.0) * n * r) * k;
    Ok(BoundReport::new(
        BoundSource::Example2Zeta2,
        total,
        T::zero(),
        vec![("r", r), ("mu", mu), ("n", n), ("a", a), ("sigma2", sigma2)],
    ))
}

/// Generalized gamma mixing `Λ_n = n G*` with `m_n = n`:
/// `K^{s/2} n^{−s/2} · C_s · E (G*)^{s/2}`.
pub fn generalized_gamma<T: Scalar>(order: ZetaOrder<T>, gg: &GeneralizedGammaLaw<T>, n: T, a: T, sigma2: T) -> Result<BoundReport<T>> {
    require_positive("n", n)?;
    let k = moment_ratio(a, sigma2)?;
    let moment = gg.moment(half_s(order)).map_err(|e| match e {
        Error::MomentUndefined(msg) => domain(msg),
        other => other,
    })?;
    let total = (k / n).powf(half_s(order)) * order.moment_bound_constant() * moment;
    Ok(BoundReport::new(
        BoundSource::Example3,
        total,
        T::zero(),
        vec![
            ("s", order.s()),
            ("shape", gg.shape()),
            ("power", gg.power()),
            ("rate", gg.rate()),
            ("n", n),
            ("a", a),
            ("sigma2", sigma2),
        ],
    ))
}

fn half_s<T: Scalar>(order: ZetaOrder<T>) -> T {
    lit::<T>(0.5) * order.s()
}

fn require_mixing<T: Scalar>(z: T) -> Result<()> {
    if z >= T::zero() && z.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("mixing term must be finite and nonnegative, got {z}")))
    }
}
