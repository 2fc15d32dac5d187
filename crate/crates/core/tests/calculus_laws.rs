mod common;

use alpha_calculus::alpha_calc::{
    alpha_deriv, alpha_deriv_iter, alpha_integral, chain_rule_apply, coefficient_rule_check,
    fundamental_check, leibnitz_residual, MultiPoly,
};
use alpha_calculus::numeric::{int, rat};
use alpha_calculus::{ExactComplex, ExactSeries, Rational};
use common::*;
use num_complex::Complex;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = MultiPoly<Rational>> {
    (1usize..=2).prop_flat_map(|vars| {
        let exps = if vars == 1 {
            (0u32..=3).prop_map(|a| vec![a]).boxed()
        } else {
            (0u32..=3)
                .prop_flat_map(|a| (Just(a), 0..=3 - a))
                .prop_map(|(a, b)| vec![a, b])
                .boxed()
        };
        prop::collection::vec((exps, coefficient()), 1..=4)
            .prop_map(move |terms| MultiPoly::from_terms(vars, terms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn leibnitz(f in windowed_series(), g in windowed_series(), a in alpha()) {
        prop_assert!(leibnitz_residual(&f, &g, &a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linearity(f in windowed_series(), g in windowed_series(), c in coefficient(), d in coefficient(), a in alpha()) {
        let combo = f.scale(&c).add(&g.scale(&d));
        let lhs = alpha_deriv(&combo, &a);
        let rhs = alpha_deriv(&f, &a).scale(&c).add(&alpha_deriv(&g, &a).scale(&d));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn orders_commute(f in windowed_series(), a in alpha(), m in 0u32..=4, l in 0u32..=4) {
        let ml = alpha_deriv_iter(&alpha_deriv_iter(&f, &a, m), &a, l);
        let lm = alpha_deriv_iter(&alpha_deriv_iter(&f, &a, l), &a, m);
        prop_assert_eq!(ml, lm);
    }

    #[test]
    fn chain_rule(p in poly(), g1 in windowed_series(), g2 in windowed_series(), a in alpha()) {
        let g: Vec<ExactSeries> = [g1, g2].into_iter().take(p.vars()).collect();
        let composed = p.compose(&g).unwrap();
        let applied = chain_rule_apply(&p, &g, &a).unwrap();
        prop_assert!(applied.sub(&alpha_deriv(&composed, &a)).is_zero());
    }

    #[test]
    fn fundamental_theorem(f in windowed_series(), a in alpha()) {
        let pole = -a.value().clone();
        let f = f.sub(&ExactSeries::monomial(f.coeff(&pole), pole));
        let (first, second) = fundamental_check(&f, &a).unwrap();
        prop_assert!(first.is_zero());
        prop_assert!(second.add(&ExactSeries::constant(f.coeff(&int(0)))).is_zero());
    }

    #[test]
    fn order_shifts_by_alpha(f in nonzero_series(), a in alpha()) {
        let v = f.order().unwrap();
        prop_assume!(v != int(0));
        prop_assert_eq!(alpha_deriv(&f, &a).order().unwrap(), v - a.value());
    }

    #[test]
    fn integral_shifts_window(f in windowed_series(), a in alpha()) {
        let pole = -a.value().clone();
        let f = f.sub(&ExactSeries::monomial(f.coeff(&pole), pole));
        let i = alpha_integral(&f, &a).unwrap();
        prop_assert_eq!(i.trunc().clone(), f.trunc().shift(a.value()));
    }

    #[test]
    fn coefficient_is_additive(b in exponent(), e in exponent(), a in alpha()) {
        let (sum, whole) = coefficient_rule_check(&b, &e, &a);
        prop_assert_eq!(sum, whole);
    }
}

#[test]
fn monomial_rules_for_listed_orders() {
    for (p, q) in [(1, 4), (1, 3), (1, 2), (2, 3), (1, 1)] {
        let a = alpha_calculus::AlphaOrder::new(rat(p, q)).unwrap();
        let x_alpha = ExactSeries::real_monomial(&int(1), rat(p, q));
        let want: ExactComplex = Complex::new(rat(p, q), int(0));
        assert_eq!(alpha_deriv(&x_alpha, &a), ExactSeries::constant(want));
        assert!(alpha_deriv(&ExactSeries::one(), &a).is_exact_zero());
    }
}
