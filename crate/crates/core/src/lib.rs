//! Mixed Poisson random sums and their laws of large numbers.
//!
//! The crate simulates sums `S_n = X_1 + ... + X_{N(Λ_n)}` whose index is
//! Poisson with a random intensity `Λ_n`, measures how far `S_n / (a·m_n)` is
//! from its limit law in the Zolotarev ζ₁/ζ₂ metrics, and evaluates the
//! closed-form convergence-rate bounds for these sums.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the bottom of this file fix it to `f64`, which is what the experiment
//! harness and the CLI use.
//!
//! A naming note: the order of the metric is written `s = m + α`, and `α`
//! here always means the Hölder exponent of that decomposition. The exponent
//! of the generalized gamma law, written with the same letter in much of the
//! literature, is called `power` throughout this crate.

pub mod bounds;
pub mod distributions;
mod error;
pub mod harness;
pub mod quadrature;
pub mod random_sums;
pub mod rng;
pub mod roots;
mod scalar;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use bounds::{BoundReport, BoundSource};
pub use distributions::{
    DiscreteCountLaw, DiscreteLaw, ExponentialLaw, GammaLaw, GeneralizedGammaLaw, Law,
};
pub use random_sums::{MixingLaw, MixingMode, MixingModel, RandomSumModel, ScaleSequence, SummandLaw};
pub use zeta::{EmpiricalDistribution, EstimateKind, ZetaEstimate, ZetaOrder};

pub type GammaLaw64 = GammaLaw<f64>;
pub type GeneralizedGammaLaw64 = GeneralizedGammaLaw<f64>;
pub type ExponentialLaw64 = ExponentialLaw<f64>;
pub type DiscreteLaw64 = DiscreteLaw<f64>;
pub type DiscreteCountLaw64 = DiscreteCountLaw<f64>;
pub type EmpiricalDistribution64 = EmpiricalDistribution<f64>;
pub type ZetaOrder64 = ZetaOrder<f64>;
pub type ZetaEstimate64 = ZetaEstimate<f64>;
pub type SummandLaw64 = SummandLaw<f64>;
pub type MixingModel64 = MixingModel<f64>;
pub type RandomSumModel64 = RandomSumModel<f64>;
pub type BoundReport64 = BoundReport<f64>;
