//! Test-function lower bound for ζ_s.
//!
//! `f_t(x) = (x − t)₊^s / s` has derivative `(x − t)₊^{s−1}`, which is
//! `(s − 1)`-Hölder with constant 1, so `|E f_t(X) − E f_t(Y)| ≤ ζ_s(X, Y)`
//! for every `t` (the family is the limit of bounded truncations, which is
//! how it enters the bounded function class). The bound is the maximum
//! over a grid of `t`.

use super::{matched_means, recentered, EstimateKind, ZetaEstimate, ZetaOrder};
use crate::distributions::{DiscreteLaw, Law};
use crate::error::Result;
use crate::scalar::{lit, Scalar};

const GOLDEN_ROUNDS: usize = 3;
const GOLDEN_STEPS: usize = 24;

/// Two laws as seen by the lower bound, after mean matching for `s > 1`.
struct Pair<'a, T: Scalar, F: Law<T> + ?Sized, G: Law<T> + ?Sized> {
    f: &'a F,
    g: &'a G,
    f_shifted: Option<DiscreteLaw<T>>,
    g_shifted: Option<DiscreteLaw<T>>,
    s: T,
}

impl<'a, T: Scalar, F: Law<T> + ?Sized, G: Law<T> + ?Sized> Pair<'a, T, F, G> {
    fn new(order: ZetaOrder<T>, f: &'a F, g: &'a G) -> Result<Self> {
        let mut pair = Self { f, g, f_shifted: None, g_shifted: None, s: order.s() };
        if order.s() > T::one() {
            let (mf, mg) = matched_means(f, g)?;
            if let Some(d) = f.as_discrete() {
                pair.f_shifted = Some(recentered(d, mg - mf).into_owned());
            } else if let Some(d) = g.as_discrete() {
                pair.g_shifted = Some(recentered(d, mf - mg).into_owned());
            }
        }
        Ok(pair)
    }

    fn moment_f(&self, t: T) -> T {
        match &self.f_shifted {
            Some(d) => d.upper_power_moment(t, self.s),
            None => self.f.upper_power_moment(t, self.s),
        }
    }

    fn moment_g(&self, t: T) -> T {
        match &self.g_shifted {
            Some(d) => d.upper_power_moment(t, self.s),
            None => self.g.upper_power_moment(t, self.s),
        }
    }

    fn gap(&self, t: T) -> T {
        ((self.moment_f(t) - self.moment_g(t)) / self.s).abs()
    }
}

/// `max_t |E f_t(X) − E f_t(Y)|` over `t_grid`, with `s ∈ [1, 2]`.
///
/// For `s > 1` the means must agree within [`super::mean_tolerance`]; a
/// discrete side is shifted onto the other's mean, as in [`super::zeta2`].
pub fn zeta_s_lower_bound<T, F, G>(order: ZetaOrder<T>, f: &F, g: &G, t_grid: &[T]) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let pair = Pair::new(order, f, g)?;
    let best = t_grid.iter().map(|&t| pair.gap(t)).fold(T::zero(), |a, b| if b > a { b } else { a });
    Ok(ZetaEstimate::new(best, EstimateKind::LowerBound))
}

/// Quantiles `{0.001, 0.005, 0.01, ..., 0.99, 0.995, 0.999}` of the equal
/// mixture of the two laws, plus the lowest finite support point.
pub fn default_t_grid<T, F, G>(f: &F, g: &G) -> Vec<T>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let mut levels = vec![0.001, 0.005];
    levels.extend((1..100).map(|i| i as f64 / 100.0));
    levels.extend([0.995, 0.999]);
    let mut grid: Vec<T> = levels.into_iter().filter_map(|q| pooled_quantile(f, g, lit(q))).collect();
    let lowest = f.support_min().min(g.support_min());
    if lowest.is_finite() {
        grid.push(lowest);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid.dedup();
    grid
}

fn pooled_quantile<T, F, G>(f: &F, g: &G, q: T) -> Option<T>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let a = f.quantile(q).ok()?;
    let b = g.quantile(q).ok()?;
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    if lo == hi {
        return Some(lo);
    }
    let half = lit::<T>(0.5);
    // pooled CDF is below q at lo⁻ and reaches q by hi
    for _ in 0..200 {
        let mid = half * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if half * (f.cdf(mid) + g.cdf(mid)) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// Lower bound on the default grid, followed by golden-section refinement
/// around the best grid point. The result is never below the plain grid
/// value.
pub fn zeta_s_lower_bound_refined<T, F, G>(order: ZetaOrder<T>, f: &F, g: &G) -> Result<ZetaEstimate<T>>
where
    T: Scalar,
    F: Law<T> + ?Sized,
    G: Law<T> + ?Sized,
{
    let pair = Pair::new(order, f, g)?;
    let mut grid = default_t_grid(f, g);
    if grid.is_empty() {
        return Ok(ZetaEstimate::new(T::zero(), EstimateKind::LowerBound));
    }
    let mut values: Vec<T> = grid.iter().map(|&t| pair.gap(t)).collect();
    let inv_phi = lit::<T>((5f64.sqrt() - 1.0) / 2.0);
    for _ in 0..GOLDEN_ROUNDS {
        let k = argmax(&values);
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(grid.len() - 1)];
        if hi <= lo {
            break;
        }
        let (mut a, mut b) = (lo, hi);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = pair.gap(c);
        let mut fd = pair.gap(d);
        let mut found = vec![(c, fc), (d, fd)];
        for _ in 0..GOLDEN_STEPS {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = pair.gap(c);
                found.push((c, fc));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = pair.gap(d);
                found.push((d, fd));
            }
        }
        for (t, v) in found {
            let pos = grid.partition_point(|&x| x < t);
            if grid.get(pos) != Some(&t) {
                grid.insert(pos, t);
                values.insert(pos, v);
            }
        }
    }
    let best = values[argmax(&values)];
    Ok(ZetaEstimate::new(best, EstimateKind::LowerBound))
}

fn argmax<T: Scalar>(values: &[T]) -> usize {
    let mut k = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[k] {
            k = i;
        }
    }
    k
}
