//! Variate generators shared by the laws.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::scalar::{lit, Scalar};

#[inline]
pub(crate) fn uniform<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.random::<f64>())
}

/// Uniform on (0, 1].
#[inline]
pub(crate) fn uniform_open0<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(1.0 - rng.random::<f64>())
}

#[inline]
pub(crate) fn standard_normal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let z: f64 = StandardNormal.sample(rng);
    T::lit(z)
}

#[inline]
pub(crate) fn standard_exponential<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let e: f64 = Exp1.sample(rng);
    T::lit(e)
}

/// Gamma(shape, 1) by Marsaglia–Tsang for `shape ≥ 1`; smaller shapes are
/// boosted through `G(shape + 1) · U^{1/shape}`.
pub(crate) fn standard_gamma<T: Scalar, R: Rng + ?Sized>(shape: T, rng: &mut R) -> T {
    let one = T::one();
    if shape == one {
        return standard_exponential(rng);
    }
    if shape < one {
        let g = standard_gamma(shape + one, rng);
        let u: T = uniform_open0(rng);
        return g * u.powf(shape.recip());
    }
    let d = shape - lit::<T>(1.0 / 3.0);
    let c = (lit::<T>(9.0) * d).sqrt().recip();
    let half = lit::<T>(0.5);
    let squeeze = lit::<T>(0.0331);
    loop {
        let x: T = standard_normal(rng);
        let v = one + c * x;
        if v <= T::zero() {
            continue;
        }
        let v = v * v * v;
        let u: T = uniform_open0(rng);
        let x2 = x * x;
        if u < one - squeeze * x2 * x2 {
            return d * v;
        }
        if u.ln() < half * x2 + d * (one - v + v.ln()) {
            return d * v;
        }
    }
}
