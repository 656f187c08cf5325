//! Property tests for the metrics, laws and bounds.

use mpsum::bounds;
use mpsum::distributions::{GammaLaw, GeneralizedGammaLaw, Law};
use mpsum::zeta::{default_t_grid, lemma4_upper_bound_for, zeta1, zeta2, zeta_s_lower_bound, ZetaOrder};
use mpsum::DiscreteLaw64;
use proptest::prelude::*;

fn discrete() -> impl Strategy<Value = DiscreteLaw64> {
    prop::collection::vec((-5.0f64..5.0, 0.05f64..1.0), 1..12).prop_map(|pairs| {
        let (xs, ws): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        DiscreteLaw64::new(&xs, &ws).unwrap()
    })
}

fn mean_matched() -> impl Strategy<Value = (DiscreteLaw64, DiscreteLaw64)> {
    (discrete(), discrete()).prop_map(|(f, g)| {
        let shift = f.mean().unwrap() - g.mean().unwrap();
        (f, g.shifted(shift))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn zeta1_is_a_symmetric_nonnegative_distance(f in discrete(), g in discrete()) {
        let a = zeta1(&f, &g).unwrap().value;
        let b = zeta1(&g, &f).unwrap().value;
        prop_assert!(a >= 0.0);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
        prop_assert!(zeta1(&f, &f).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn zeta2_sandwich((f, g) in mean_matched(), s in 1.0f64..=2.0) {
        let two = ZetaOrder::two();
        let exact = zeta2(&f, &g).unwrap().value;
        let lower = zeta_s_lower_bound(two, &f, &g, &default_t_grid(&f, &g)).unwrap().value;
        let upper = lemma4_upper_bound_for(two, &f, &g).unwrap().value;
        prop_assert!(lower <= exact + 1e-9 && exact <= upper + 1e-9, "{} {} {}", lower, exact, upper);
        let order = ZetaOrder::new(s).unwrap();
        let lower_s = zeta_s_lower_bound(order, &f, &g, &default_t_grid(&f, &g)).unwrap().value;
        prop_assert!(lower_s <= lemma4_upper_bound_for(order, &f, &g).unwrap().value + 1e-9);
    }

    #[test]
    fn grid_refinement_never_lowers_the_bound((f, g) in mean_matched(), s in 1.0f64..=2.0) {
        let order = ZetaOrder::new(s).unwrap();
        let coarse: Vec<f64> = (0..=10).map(|i| -6.0 + 1.2 * i as f64).collect();
        let mut fine = coarse.clone();
        fine.extend((0..=120).map(|i| -6.0 + 0.1 * i as f64));
        let a = zeta_s_lower_bound(order, &f, &g, &coarse).unwrap().value;
        let b = zeta_s_lower_bound(order, &f, &g, &fine).unwrap().value;
        prop_assert!(a <= b);
    }

    #[test]
    fn gamma_quantile_inverts_cdf(shape in 0.2f64..20.0, rate in 0.1f64..10.0, q in 0.01f64..0.99) {
        let law = GammaLaw::new(shape, rate).unwrap();
        let x = law.quantile(q).unwrap();
        prop_assert!((law.cdf(x) - q).abs() <= 1e-10);
        prop_assert!(law.cdf(x * 0.9) <= law.cdf(x) && law.cdf(x) <= law.cdf(x * 1.1));
    }

    #[test]
    fn unit_power_gg_is_gamma(shape in 0.2f64..10.0, rate in 0.1f64..5.0, x in 0.0f64..20.0) {
        let g = GammaLaw::new(shape, rate).unwrap();
        let gg = GeneralizedGammaLaw::new(shape, 1.0, rate).unwrap();
        prop_assert!((g.cdf(x) - gg.cdf(x)).abs() <= 1e-12);
    }

    #[test]
    fn bounds_decrease_in_m_and_increase_in_variance(
        s in 1.0f64..=2.0,
        m in 1.0f64..1000.0,
        grow in 1.0f64..10.0,
        a in 0.1f64..5.0,
        sigma2 in 0.0f64..10.0,
        extra in 0.0f64..5.0,
    ) {
        let order = ZetaOrder::new(s).unwrap();
        let pairs = [
            (bounds::lemma5(order, m, a, sigma2), bounds::lemma5(order, m * grow, a, sigma2), bounds::lemma5(order, m, a, sigma2 + extra)),
            (bounds::remark1(order, m, a, sigma2, 0.0), bounds::remark1(order, m * grow, a, sigma2, 0.0), bounds::remark1(order, m, a, sigma2 + extra, 0.0)),
            (bounds::corollary2(order, 0.8, m, a, sigma2), bounds::corollary2(order, 0.8, m * grow, a, sigma2), bounds::corollary2(order, 0.8, m, a, sigma2 + extra)),
        ];
        for (base, larger_m, noisier) in pairs {
            let (base, larger_m, noisier) = (base.unwrap(), larger_m.unwrap(), noisier.unwrap());
            prop_assert!(larger_m.total <= base.total);
            prop_assert!(noisier.total >= base.total);
            prop_assert!(base.total == base.poissonization_term + base.mixing_term);
        }
    }
}
