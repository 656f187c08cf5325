//! ζ₁ and ζ₂ between two continuous laws by adaptive quadrature.
//!
//! The real line is cut at quantiles of both laws; each cell is scanned for
//! sign changes of the integrand, the roots are bracketed, and `|h|` is
//! integrated piecewise so that the kinks of the absolute value fall on
//! interval ends.

use super::{EstimateKind, ZetaEstimate, QUADRATURE_TOLERANCE};
use crate::distributions::Law;
use crate::error::Result;
use crate::quadrature::{integrate, integrate_lower, integrate_upper, Quadrature, DEFAULT_MAX_SUBDIVISIONS};
use crate::roots::brent;
use crate::scalar::{lit, Scalar};

const SCAN_STEPS: usize = 4;

fn probability_levels() -> Vec<f64> {
    let mut levels = vec![1e-10, 1e-8, 1e-6, 1e-4, 1e-3, 5e-3];
    levels.extend((1..100).map(|i| i as f64 / 100.0));
    levels.extend([0.995, 0.999, 1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-8, 1.0 - 1e-10]);
    levels
}

fn breakpoints<T, F, G>(f: &F, g: &G) -> Vec<T>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let mut pts = Vec::new();
    for q in probability_levels() {
        let q = lit::<T>(q);
        for x in [f.quantile(q), g.quantile(q)].into_iter().flatten() {
            if x.is_finite() {
                pts.push(x);
            }
        }
    }
    for x in [f.support_min(), g.support_min()] {
        if x.is_finite() {
            pts.push(x);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    pts
}

/// Cell boundaries refined with every sign change of `h` found on a scan.
fn split_at_roots<T: Scalar, H: Fn(T) -> T>(h: &H, pts: &[T]) -> Vec<T> {
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let step = (b - a) / T::from_usize_lossy(SCAN_STEPS);
        let mut prev_x = a;
        let mut prev_h = h(a);
        for k in 1..=SCAN_STEPS {
            let x = if k == SCAN_STEPS { b } else { a + step * T::from_usize_lossy(k) };
            let hx = h(x);
            if prev_h * hx < T::zero() {
                if let Some(r) = brent(h, prev_x, x, T::epsilon() * (T::one() + x.abs())) {
                    out.push(r);
                }
            }
            prev_x = x;
            prev_h = hx;
        }
        out.push(b);
    }
    out.dedup();
    out
}

fn integrate_abs<T: Scalar, H: Fn(T) -> T>(h: H, pts: &[T], lower_support: T) -> ZetaEstimate<T> {
    let cells = pts.len() + 1;
    let tol = lit::<T>(QUADRATURE_TOLERANCE) / T::from_usize_lossy(cells + 1);
    let abs_h = |x: T| h(x).abs();
    let lo = pts[0];
    let hi = *pts.last().expect("nonempty");
    let mut acc = if lower_support.is_finite() && lower_support < lo {
        integrate(abs_h, lower_support, lo, tol, DEFAULT_MAX_SUBDIVISIONS)
    } else if lower_support.is_finite() {
        Quadrature { value: T::zero(), abs_error: T::zero(), converged: true }
    } else {
        integrate_lower(abs_h, lo, tol, DEFAULT_MAX_SUBDIVISIONS)
    };
    for w in pts.windows(2) {
        acc = acc.combine(integrate(abs_h, w[0], w[1], tol, DEFAULT_MAX_SUBDIVISIONS));
    }
    acc = acc.combine(integrate_upper(abs_h, hi, tol, DEFAULT_MAX_SUBDIVISIONS));
    let mut est = ZetaEstimate::new(acc.value, EstimateKind::Exact);
    if !acc.converged {
        est.precision_warning = Some(format!(
            "quadrature subdivision cap reached; estimated error {:e}",
            acc.abs_error.to_f64_lossy()
        ));
    }
    est
}

fn common_support_min<T: Scalar, F: Law<T> + ?Sized, G: Law<T> + ?Sized>(f: &F, g: &G) -> T {
    f.support_min().min(g.support_min())
}

pub(crate) fn zeta1_quadrature<T, F, G>(f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let h = |x: T| f.cdf(x) - g.cdf(x);
    let pts = split_at_roots(&h, &breakpoints(f, g));
    Ok(integrate_abs(h, &pts, common_support_min(f, g)))
}

/// Means are assumed matched; below both supports `D` vanishes.
pub(crate) fn zeta2_quadrature<T, F, G>(f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    // D(t) = E(t − X)₊ − E(t − Y)₊ when the means agree; this form has no
    // cancellation on the left
    let h = |t: T| {
        let left = f.lower_partial_moment(t) - g.lower_partial_moment(t);
        let right = f.upper_partial_moment(t) - g.upper_partial_moment(t);
        if f.cdf(t) + g.cdf(t) < T::one() { left } else { right }
    };
    let pts = split_at_roots(&h, &breakpoints(f, g));
    Ok(integrate_abs(h, &pts, common_support_min(f, g)))
}
