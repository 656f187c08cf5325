//! Bracketed root finding.

use crate::scalar::{lit, Scalar};

const MAX_ITER: usize = 200;

/// Brent's method on a bracket `[a, b]` with `f(a)·f(b) ≤ 0`.
///
/// Returns `None` when the endpoints do not bracket a sign change.
pub fn brent<T: Scalar, F: FnMut(T) -> T>(mut f: F, a: T, b: T, x_tol: T) -> Option<T> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Some(a);
    }
    if fb == T::zero() {
        return Some(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return None;
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * x_tol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (lit::<T>(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else if m > T::zero() { b + tol } else { b - tol };
        fb = f(b);
    }
    Some(b)
}

/// Newton iteration kept inside a shrinking bracket, falling back to
/// bisection whenever a step would leave it. `f` must be nondecreasing on
/// `[lo, hi]` with `f(lo) ≤ 0 ≤ f(hi)`; `f_and_slope` returns `(f, f')`.
pub fn newton_bracketed<T: Scalar, F: FnMut(T) -> (T, T)>(
    mut f_and_slope: F,
    mut lo: T,
    mut hi: T,
    start: T,
    x_tol: T,
    f_tol: T,
) -> T {
    let half = lit::<T>(0.5);
    let mut x = if start > lo && start < hi { start } else { half * (lo + hi) };
    for _ in 0..MAX_ITER {
        let (fx, slope) = f_and_slope(x);
        if fx.abs() <= f_tol {
            return x;
        }
        if fx < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = half * (lo + hi);
        }
        if (next - x).abs() <= x_tol * (T::one() + x.abs()) || hi - lo <= x_tol * (T::one() + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x: f64| x * x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        assert!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn newton_with_flat_start() {
        // slope is tiny at the start; bisection must take over
        let r = newton_bracketed(|x: f64| (x.powi(3) - 8.0, 3.0 * x * x), 0.0, 10.0, 1e-9, 1e-15, 1e-15);
        assert!((r - 2.0).abs() < 1e-12);
    }
}
