use super::{check_probability, Law};
use crate::error::{domain, Result};
use crate::scalar::{lit, Scalar};

/// Above this many atoms, partial moments use centered prefix sums instead
/// of a direct loop.
const DIRECT_SUM_LIMIT: usize = 256;

/// Finite discrete law: sorted distinct atoms with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw<T> {
    atoms: Vec<T>,
    weights: Vec<T>,
    /// `cum[i] = weights[0] + ... + weights[i]`
    cum: Vec<T>,
    center: T,
    /// Suffix sums of `w·(x − center)` and `w·(x − center)²`; length `n + 1`.
    tail1: Vec<T>,
    tail2: Vec<T>,
}

impl<T: Scalar> DiscreteLaw<T> {
    /// Builds a law from atoms and nonnegative weights (normalized here).
    /// Repeated atoms are merged.
    pub fn new(atoms: &[T], weights: &[T]) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(domain("discrete law needs equally many atoms and weights, at least one"));
        }
        if atoms.iter().any(|x| !x.is_finite()) {
            return Err(domain("atoms must be finite"));
        }
        if weights.iter().any(|w| !(*w >= T::zero()) || !w.is_finite()) {
            return Err(domain("weights must be finite and nonnegative"));
        }
        let total: T = weights.iter().copied().sum();
        if !(total > T::zero()) {
            return Err(domain("weights must not all be zero"));
        }
        let mut pairs: Vec<(T, T)> = atoms.iter().copied().zip(weights.iter().map(|&w| w / total)).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite atoms"));
        let mut xs: Vec<T> = Vec::with_capacity(pairs.len());
        let mut ws: Vec<T> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            if w == T::zero() {
                continue;
            }
            match xs.last() {
                Some(&last) if last == x => {
                    let lw = ws.last_mut().expect("paired with atoms");
                    *lw = *lw + w;
                }
                _ => {
                    xs.push(x);
                    ws.push(w);
                }
            }
        }
        Ok(Self::from_sorted_unchecked(xs, ws))
    }

    /// Equal-weight law of a sample.
    pub fn from_sample(points: &[T]) -> Result<Self> {
        let w = vec![T::one(); points.len()];
        Self::new(points, &w)
    }

    pub fn point_mass(x: T) -> Result<Self> {
        Self::new(&[x], &[T::one()])
    }

    fn from_sorted_unchecked(atoms: Vec<T>, weights: Vec<T>) -> Self {
        let mut cum = Vec::with_capacity(atoms.len());
        let mut acc = T::zero();
        for &w in &weights {
            acc = acc + w;
            cum.push(acc);
        }
        // pin the last cumulative weight so F(max) is exactly 1
        if let Some(last) = cum.last_mut() {
            *last = T::one();
        }
        let center: T = atoms.iter().zip(&weights).map(|(&x, &w)| x * w).sum();
        let n = atoms.len();
        let mut tail1 = vec![T::zero(); n + 1];
        let mut tail2 = vec![T::zero(); n + 1];
        for i in (0..n).rev() {
            let d = atoms[i] - center;
            tail1[i] = tail1[i + 1] + weights[i] * d;
            tail2[i] = tail2[i + 1] + weights[i] * d * d;
        }
        Self { atoms, weights, cum, center, tail1, tail2 }
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `cumulative()[i] = P(X ≤ atoms()[i])`.
    pub fn cumulative(&self) -> &[T] {
        &self.cum
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Law of `c·X`, `c > 0`.
    pub fn scaled(&self, c: T) -> Result<Self> {
        if !(c > T::zero()) {
            return Err(domain(format!("scale factor must be positive, got {c}")));
        }
        let xs = self.atoms.iter().map(|&x| c * x).collect();
        Ok(Self::from_sorted_unchecked(xs, self.weights.clone()))
    }

    /// Law of `X + delta`.
    pub fn shifted(&self, delta: T) -> Self {
        let xs = self.atoms.iter().map(|&x| x + delta).collect();
        Self::from_sorted_unchecked(xs, self.weights.clone())
    }

    /// Law of `X + Z` for independent `X ~ self`, `Z ~ other`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut xs = Vec::with_capacity(self.len() * other.len());
        let mut ws = Vec::with_capacity(self.len() * other.len());
        for (&x, &w) in self.atoms.iter().zip(&self.weights) {
            for (&z, &v) in other.atoms.iter().zip(&other.weights) {
                xs.push(x + z);
                ws.push(w * v);
            }
        }
        Self::new(&xs, &ws).expect("convolution of valid laws")
    }

    /// Mixture `w·self + (1 − w)·other`.
    pub fn mixture(&self, other: &Self, w: T) -> Result<Self> {
        if !(w >= T::zero() && w <= T::one()) {
            return Err(domain(format!("mixture weight must lie in [0, 1], got {w}")));
        }
        let mut xs = self.atoms.clone();
        xs.extend_from_slice(&other.atoms);
        let mut ws: Vec<T> = self.weights.iter().map(|&v| v * w).collect();
        ws.extend(other.weights.iter().map(|&v| v * (T::one() - w)));
        Self::new(&xs, &ws)
    }

    /// Number of atoms `≤ x`.
    fn count_le(&self, x: T) -> usize {
        self.atoms.partition_point(|&a| a <= x)
    }

    /// `E X^k` for `k ∈ {1, 2}`, centered about the stored mean.
    fn raw_moment(&self, k: i32) -> T {
        match k {
            1 => self.center,
            _ => self.tail2[0] + self.center * self.center + lit::<T>(2.0) * self.center * self.tail1[0],
        }
    }
}

impl<T: Scalar> Law<T> for DiscreteLaw<T> {
    fn cdf(&self, x: T) -> T {
        match self.count_le(x) {
            0 => T::zero(),
            k => self.cum[k - 1],
        }
    }

    fn quantile(&self, q: T) -> Result<T> {
        check_probability(q)?;
        let i = self.cum.partition_point(|&c| c < q).min(self.len() - 1);
        Ok(self.atoms[i])
    }

    fn mean(&self) -> Option<T> {
        Some(self.center)
    }

    fn second_moment(&self) -> Option<T> {
        Some(self.raw_moment(2))
    }

    fn abs_moment(&self, s: T) -> Option<T> {
        Some(self.atoms.iter().zip(&self.weights).map(|(&x, &w)| w * x.abs().powf(s)).sum())
    }

    fn upper_partial_moment(&self, t: T) -> T {
        let k = self.count_le(t);
        if self.len() <= DIRECT_SUM_LIMIT {
            return self.atoms[k..].iter().zip(&self.weights[k..]).map(|(&x, &w)| w * (x - t)).sum();
        }
        let mass = if k == 0 { T::one() } else { T::one() - self.cum[k - 1] };
        (self.tail1[k] - mass * (t - self.center)).max(T::zero())
    }

    fn upper_partial_second(&self, t: T) -> T {
        let k = self.count_le(t);
        let half = lit::<T>(0.5);
        if self.len() <= DIRECT_SUM_LIMIT {
            return half
                * self.atoms[k..].iter().zip(&self.weights[k..]).map(|(&x, &w)| w * (x - t) * (x - t)).sum::<T>();
        }
        let mass = if k == 0 { T::one() } else { T::one() - self.cum[k - 1] };
        let d = t - self.center;
        let v = self.tail2[k] - lit::<T>(2.0) * d * self.tail1[k] + d * d * mass;
        (half * v).max(T::zero())
    }

    fn lower_partial_moment(&self, t: T) -> T {
        let k = self.count_le(t);
        if self.len() <= DIRECT_SUM_LIMIT {
            return self.atoms[..k].iter().zip(&self.weights[..k]).map(|(&x, &w)| w * (t - x)).sum();
        }
        let mass = if k == 0 { T::zero() } else { self.cum[k - 1] };
        let s1 = self.tail1[0] - self.tail1[k];
        (mass * (t - self.center) - s1).max(T::zero())
    }

    fn lower_partial_second(&self, t: T) -> T {
        let k = self.count_le(t);
        let half = lit::<T>(0.5);
        if self.len() <= DIRECT_SUM_LIMIT {
            return half * self.atoms[..k].iter().zip(&self.weights[..k]).map(|(&x, &w)| w * (t - x) * (t - x)).sum::<T>();
        }
        let mass = if k == 0 { T::zero() } else { self.cum[k - 1] };
        let d = t - self.center;
        let s1 = self.tail1[0] - self.tail1[k];
        let s2 = self.tail2[0] - self.tail2[k];
        let v = s2 - lit::<T>(2.0) * d * s1 + d * d * mass;
        (half * v).max(T::zero())
    }

    fn upper_power_moment(&self, t: T, p: T) -> T {
        if p == T::one() {
            return self.upper_partial_moment(t);
        }
        if p == lit::<T>(2.0) {
            return lit::<T>(2.0) * self.upper_partial_second(t);
        }
        let k = self.count_le(t);
        self.atoms[k..].iter().zip(&self.weights[k..]).map(|(&x, &w)| w * (x - t).powf(p)).sum()
    }

    fn lower_power_moment(&self, t: T, p: T) -> T {
        let k = self.count_le(t);
        self.atoms[..k].iter().zip(&self.weights[..k]).map(|(&x, &w)| w * (t - x).powf(p)).sum()
    }

    fn support_min(&self) -> T {
        self.atoms[0]
    }

    fn as_discrete(&self) -> Option<&DiscreteLaw<T>> {
        Some(self)
    }
}
