//! Adaptive Gauss–Kronrod (7/15) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::scalar::{lit, Scalar};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Default cap on the number of interval bisections.
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub abs_error: T,
    /// False when the subdivision cap was hit before reaching the tolerance.
    pub converged: bool,
}

impl<T: Scalar> Quadrature<T> {
    fn zero() -> Self {
        Self { value: T::zero(), abs_error: T::zero(), converged: true }
    }

    /// Sum of two independent pieces.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            converged: self.converged && other.converged,
        }
    }
}

fn gk15<T: Scalar, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * lit::<T>(WGK[7]);
    let mut gauss = fc * lit::<T>(WG[3]);
    for j in 0..7 {
        let dx = radius * lit::<T>(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * lit::<T>(WG[j / 2]);
        }
    }
    let value = kronrod * radius;
    let err = ((kronrod - gauss) * radius).abs();
    (value, err)
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

impl<T: Scalar> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T: Scalar> Eq for Segment<T> {}
impl<T: Scalar> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`.
///
/// The segment with the largest error estimate is bisected until the total
/// estimated error drops below `abs_tol` or `max_subdivisions` is reached.
pub fn integrate<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Quadrature<T> {
    if a == b {
        return Quadrature::zero();
    }
    let (value, err) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    let mut splits = 0;
    let floor = T::epsilon() * lit::<T>(50.0);
    while total_err > abs_tol && splits < max_subdivisions {
        let seg = match heap.pop() {
            Some(seg) => seg,
            None => break,
        };
        let mid = lit::<T>(0.5) * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // interval exhausted at working precision
            heap.push(Segment { err: T::zero(), ..seg });
            total_err = heap.iter().map(|s| s.err).sum();
            if total_err <= abs_tol {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(&mut f, seg.a, mid);
        let (v2, e2) = gk15(&mut f, mid, seg.b);
        total = total - seg.value + v1 + v2;
        total_err = total_err - seg.err + e1 + e2;
        heap.push(Segment { a: seg.a, b: mid, value: v1, err: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, err: e2 });
        splits += 1;
        if splits % 64 == 0 {
            // resum to shed accumulated rounding in the running totals
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
        }
        if total_err <= floor * total.abs() {
            break;
        }
    }
    let value: T = heap.iter().map(|s| s.value).sum();
    let abs_error: T = heap.iter().map(|s| s.err).sum();
    Quadrature {
        value,
        abs_error,
        converged: abs_error <= abs_tol || abs_error <= floor * value.abs(),
    }
}

/// Integral of `f` over `[a, ∞)` through the map `x = a + u / (1 − u)`.
pub fn integrate_upper<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Quadrature<T> {
    let one = T::one();
    integrate(
        |u: T| {
            let w = one - u;
            if w <= T::zero() {
                return T::zero();
            }
            let y = f(a + u / w);
            if y == T::zero() { T::zero() } else { y / (w * w) }
        },
        T::zero(),
        one,
        abs_tol,
        max_subdivisions,
    )
}

/// Integral of `f` over `(−∞, b]` through the map `x = b − u / (1 − u)`.
pub fn integrate_lower<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    b: T,
    abs_tol: T,
    max_subdivisions: usize,
) -> Quadrature<T> {
    integrate_upper(|x: T| f(b + b - x), b, abs_tol, max_subdivisions)
}
