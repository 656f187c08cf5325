use super::*;
use crate::distributions::{ExponentialLaw, GammaLaw, GeneralizedGammaLaw};

fn disc(xs: &[f64]) -> DiscreteLaw<f64> {
    DiscreteLaw::from_sample(xs).unwrap()
}

#[test]
fn zeta1_examples() {
    let g = GammaLaw::new(2.0f64, 1.5).unwrap();
    assert!(zeta1(&g, &g).unwrap().value.abs() < 1e-9);
    let p0 = DiscreteLaw::point_mass(0.0f64).unwrap();
    let p1 = DiscreteLaw::point_mass(1.0f64).unwrap();
    assert!((zeta1(&p0, &p1).unwrap().value - 1.0).abs() < 1e-15);
    let f = disc(&[0.0, 2.0]);
    let h = disc(&[1.0, 3.0]);
    assert!((zeta1(&f, &h).unwrap().value - 1.0).abs() < 1e-15);
    assert_eq!(zeta1(&f, &h).unwrap().kind, EstimateKind::Exact);
}

#[test]
fn zeta2_examples() {
    let two_point = disc(&[-1.0, 1.0]);
    let origin = DiscreteLaw::point_mass(0.0f64).unwrap();
    assert!((zeta2(&two_point, &origin).unwrap().value - 0.5).abs() < 1e-15);
    let scaled = two_point.scaled(2.0).unwrap();
    assert!((zeta2(&scaled, &origin).unwrap().value - 2.0).abs() < 1e-15);
    let g = GammaLaw::new(2.0f64, 1.5).unwrap();
    assert!(zeta2(&g, &g).unwrap().value.abs() < 1e-9);
}

#[test]
fn zeta2_rejects_mismatched_means() {
    let a = disc(&[0.0, 1.0]);
    let b = disc(&[0.0, 2.0]);
    assert!(matches!(zeta2(&a, &b), Err(Error::MeanMismatch { .. })));
}

#[test]
fn zeta1_diverges_without_mean() {
    // inverse gamma with shape 1/2 has no mean
    let heavy = GeneralizedGammaLaw::new(0.5, -1.0, 1.0).unwrap();
    let p = DiscreteLaw::point_mass(1.0f64).unwrap();
    assert!(matches!(zeta1(&p, &heavy), Err(Error::Divergent(_))));
}

#[test]
fn exponential_sample_against_closed_form() {
    // mixture of an atom at 0 (weight p) and Exp with mean 1/(1 − p) against
    // Exp(1): D = e^{−(1−p)t} − e^{−t} ≥ 0, so ζ₂ = p/(1 − p)
    let p: f64 = 0.1;
    let n = 4000;
    let mut xs = Vec::with_capacity(n);
    let slow = ExponentialLaw::<f64>::new(1.0 - p).unwrap();
    for i in 0..n {
        let u = (i as f64 + 0.5) / n as f64;
        xs.push(if u < p { 0.0 } else { slow.quantile((u - p) / (1.0 - p)).unwrap() });
    }
    let e = EmpiricalDistribution::new(xs).unwrap();
    let z = zeta2(&e, &ExponentialLaw::new(1.0).unwrap()).unwrap().value;
    assert!((z - p / (1.0 - p)).abs() < 5e-3, "{z}");
}

#[test]
fn analytic_pair_matches_discrete_route() {
    // ζ₂ between two gamma laws with equal means by quadrature, against the
    // exact route on a fine quantile discretization of one side
    let f = GammaLaw::new(2.0f64, 2.0).unwrap();
    let g = GammaLaw::new(3.0, 3.0).unwrap();
    let quad = zeta2(&f, &g).unwrap();
    assert!(quad.precision_warning.is_none());
    let quad1 = zeta1(&f, &g).unwrap().value;
    // both laws are convex-ordered: ζ₂ = (E X² − E Y²)/2
    let want = 0.5 * (f.second_moment().unwrap() - g.second_moment().unwrap());
    assert!((quad.value - want).abs() < 1e-9, "{} vs {want}", quad.value);
    assert!(quad1 > 0.0);
}

#[test]
fn lemma4_examples() {
    let two = ZetaOrder::<f64>::two();
    assert!((lemma4_upper_bound(two, 1.0, 3.0).unwrap().value - 2.0).abs() < 1e-15);
    let one = ZetaOrder::<f64>::one();
    assert!((lemma4_upper_bound(one, 1.0, 3.0).unwrap().value - 4.0).abs() < 1e-15);
    let mid = ZetaOrder::new(1.5f64).unwrap();
    assert!((lemma4_upper_bound(mid, 1.0, 1.0).unwrap().value - 4.0 / 3.0).abs() < 1e-14);
    assert!(lemma4_upper_bound(two, -1.0, 1.0).is_err());
    assert_eq!(lemma4_upper_bound(two, 1.0, 1.0).unwrap().kind, EstimateKind::UpperBound);
}

#[test]
fn lower_bound_examples() {
    let two = ZetaOrder::<f64>::two();
    let f = disc(&[-1.0, 1.0]);
    let g = DiscreteLaw::point_mass(0.0f64).unwrap();
    assert_eq!(zeta_s_lower_bound(two, &f, &f, &[-1.0, 0.0, 1.0]).unwrap().value, 0.0);
    let coarse: Vec<f64> = (0..5).map(|i| -0.5 + 0.25 * i as f64).collect();
    let fine: Vec<f64> = (0..=400).map(|i| -2.0 + 0.01 * i as f64).collect();
    let lo_coarse = zeta_s_lower_bound(two, &f, &g, &coarse).unwrap().value;
    let lo_fine = zeta_s_lower_bound(two, &f, &g, &fine).unwrap().value;
    assert!(lo_coarse <= lo_fine);
    assert!(lo_fine <= 0.5 + 1e-15);
    assert!((lo_fine - 0.5).abs() < 1e-12);
    assert_eq!(zeta_s_lower_bound(two, &f, &g, &fine).unwrap().kind, EstimateKind::LowerBound);
}

#[test]
fn refined_lower_bound_dominates_grid() {
    let order = ZetaOrder::new(1.5f64).unwrap();
    let f = disc(&[-1.0, 0.2, 0.8]);
    let g = GammaLaw::new(2.0f64, 2.0).unwrap().scaled(1.0).unwrap();
    // shift onto g's mean happens inside
    let grid = default_t_grid(&f, &g);
    let plain = zeta_s_lower_bound(order, &f, &g, &grid);
    // means differ (0 vs 1), so both fail the mean check
    assert!(plain.is_err());
    let f = disc(&[0.1, 1.2, 1.7]);
    let plain = zeta_s_lower_bound(order, &f, &g, &default_t_grid(&f, &g)).unwrap().value;
    let refined = zeta_s_lower_bound_refined(order, &f, &g).unwrap().value;
    assert!(refined >= plain);
    let upper = lemma4_upper_bound_for(order, &f, &g).unwrap().value;
    assert!(refined <= upper);
}

#[test]
fn single_precision_route() {
    let f = DiscreteLaw::from_sample(&[-1.0f32, 1.0]).unwrap();
    let g = DiscreteLaw::point_mass(0.0f32).unwrap();
    assert!((zeta2(&f, &g).unwrap().value - 0.5).abs() < 1e-6);
    assert!((zeta1(&f, &g).unwrap().value - 1.0).abs() < 1e-6);
}
