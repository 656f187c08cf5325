use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::special::gamma;

/// Metric order `s ∈ [1, 2]`, decomposed as `s = m + α` with integer `m`
/// and `0 < α ≤ 1`: `s = 1` gives `(0, 1)`, `s ∈ (1, 2]` gives `(1, s − 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaOrder<T> {
    s: T,
    m: u32,
    alpha: T,
}

impl<T: Scalar> ZetaOrder<T> {
    pub fn new(s: T) -> Result<Self> {
        if !(s >= T::one() && s <= T::lit(2.0)) {
            return Err(domain(format!("order s must lie in [1, 2], got {s}")));
        }
        if s == T::one() {
            Ok(Self { s, m: 0, alpha: T::one() })
        } else {
            Ok(Self { s, m: 1, alpha: s - T::one() })
        }
    }

    pub fn one() -> Self {
        Self::new(T::one()).expect("valid order")
    }

    pub fn two() -> Self {
        Self::new(T::lit(2.0)).expect("valid order")
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn is_integer(&self) -> bool {
        self.alpha == T::one()
    }

    /// `Γ(1 + α) / Γ(1 + s)`.
    pub fn moment_bound_constant(&self) -> T {
        gamma(T::one() + self.alpha) / gamma(T::one() + self.s)
    }
}
