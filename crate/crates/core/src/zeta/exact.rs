//! Exact ζ₁ and ζ₂ between a finite discrete law and an arbitrary law.
//!
//! Between consecutive atoms `a < b` of the discrete law `F` its CDF is a
//! constant `c`, and `x* = G⁻¹(c)` (clamped to `[a, b]`) is where `F − G`
//! changes sign. For ζ₂, `D = π_F − π_G` is concave on `[a, b]` with its
//! maximum at the same `x*`, so each half is monotone and holds at most
//! one root.

use crate::distributions::{DiscreteLaw, Law, Partials};
use crate::error::{Error, Result};
use crate::roots::brent;
use crate::scalar::{lit, Scalar};

/// `G⁻¹(c)` clamped to `[a, b]`, given `G(a) < c < G(b)`.
fn crossing<T: Scalar, G: Law<T> + ?Sized>(g: &G, c: T, a: T, b: T) -> T {
    let x = match g.quantile(c) {
        Ok(x) if x.is_finite() => x,
        // bisection on the CDF when the quantile is unavailable
        _ => {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let mid = lit::<T>(0.5) * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if g.cdf(mid) < c {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };
    x.max(a).min(b)
}

fn split_point<T: Scalar, G: Law<T> + ?Sized>(g: &G, c: T, a: T, b: T, ga: T, gb: T) -> T {
    if ga >= c {
        a
    } else if gb <= c {
        b
    } else {
        crossing(g, c, a, b)
    }
}

pub(crate) fn zeta1_discrete<T: Scalar, G: Law<T> + ?Sized>(f: &DiscreteLaw<T>, g: &G) -> Result<T> {
    if g.mean().is_none() {
        return Err(Error::Divergent("zeta1 needs a finite first moment".into()));
    }
    let xs = f.atoms();
    let cum = f.cumulative();
    let n = xs.len();

    // left of the first atom F = 0: ∫ G = E(x₀ − Y)₊
    let mut total = g.lower_partial_moment(xs[0]);
    let mut ga = g.cdf(xs[0]);
    let mut pa = g.upper_partial_moment(xs[0]);
    for i in 0..n - 1 {
        let (a, b, c) = (xs[i], xs[i + 1], cum[i]);
        let gb = g.cdf(b);
        let pb = g.upper_partial_moment(b);
        let xstar = split_point(g, c, a, b, ga, gb);
        // ∫_u^v G = (v − u) − (π(u) − π(v))
        let pstar = if xstar == a {
            pa
        } else if xstar == b {
            pb
        } else {
            g.upper_partial_moment(xstar)
        };
        let below = c * (xstar - a) - ((xstar - a) - (pa - pstar));
        let above = ((b - xstar) - (pstar - pb)) - c * (b - xstar);
        total = total + below.max(T::zero()) + above.max(T::zero());
        ga = gb;
        pa = pb;
    }
    // right of the last atom F = 1: ∫ (1 − G) = π(x_max)
    Ok(total + pa)
}

/// `F` must already have the same mean as `G`.
pub(crate) fn zeta2_discrete<T: Scalar, G: Law<T> + ?Sized>(f: &DiscreteLaw<T>, g: &G) -> Result<T> {
    let xs = f.atoms();
    let cum = f.cumulative();
    let n = xs.len();
    let half = lit::<T>(0.5);

    // left tail: D = −E(t − Y)₊, so ∫|D| = E(x₀ − Y)₊² / 2
    let mut total = g.lower_partial_second(xs[0]);
    if !total.is_finite() {
        return Err(Error::Divergent("zeta2 needs a finite second moment".into()));
    }
    let mut at_a: Partials<T> = g.cdf_and_partials(xs[0]);
    let mut pf_a = f.upper_partial_moment(xs[0]);
    for i in 0..n - 1 {
        let (a, b, c) = (xs[i], xs[i + 1], cum[i]);
        let slope = T::one() - c;
        let at_b = g.cdf_and_partials(b);
        let pf_b = f.upper_partial_moment(b);
        let pf = |t: T| pf_a - slope * (t - a);
        let xstar = split_point(g, c, a, b, at_a.cdf, at_b.cdf);
        let at_star = if xstar == a {
            at_a
        } else if xstar == b {
            at_b
        } else {
            g.cdf_and_partials(xstar)
        };

        let d = |t: T| pf(t) - g.upper_partial_moment(t);
        // ∫_u^v D given π_G and ψ_G at both ends
        let integral = |u: T, v: T, psi_u: T, psi_v: T| {
            let w = v - u;
            pf(u) * w - half * slope * w * w - (psi_u - psi_v)
        };
        let pieces = [
            (a, xstar, pf_a - at_a.upper1, pf(xstar) - at_star.upper1, at_a.upper2, at_star.upper2),
            (xstar, b, pf(xstar) - at_star.upper1, pf_b - at_b.upper1, at_star.upper2, at_b.upper2),
        ];
        for (u, v, du, dv, psi_u, psi_v) in pieces {
            if v <= u {
                continue;
            }
            if (du >= T::zero()) == (dv >= T::zero()) || du == T::zero() || dv == T::zero() {
                total = total + integral(u, v, psi_u, psi_v).abs();
            } else {
                let root = brent(d, u, v, T::epsilon() * (T::one() + u.abs().max(v.abs()))).unwrap_or(u);
                let psi_r = g.upper_partial_second(root);
                total = total + integral(u, root, psi_u, psi_r).abs() + integral(root, v, psi_r, psi_v).abs();
            }
        }
        at_a = at_b;
        pf_a = pf_b;
    }
    // right tail: D = −π_G, ∫|D| = ψ_G(x_max)
    Ok(total + at_a.upper2)
}
