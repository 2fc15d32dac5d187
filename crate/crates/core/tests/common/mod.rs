#![allow(dead_code)]

use alpha_calculus::numeric::{int, rat};
use alpha_calculus::{AlphaOrder, ExactComplex, ExactSeries, Rational};
use num_complex::Complex;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| rat(a, b))
}

pub fn coefficient() -> impl Strategy<Value = ExactComplex> {
    (rational(), prop::option::weighted(0.25, rational()))
        .prop_map(|(re, im)| Complex::new(re, im.unwrap_or_else(|| int(0))))
}

pub fn exponent() -> impl Strategy<Value = Rational> {
    (-6i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// Up to eight terms, infinite window.
pub fn exact_series() -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec((exponent(), coefficient()), 0..=8).prop_map(ExactSeries::from_terms)
}

pub fn nonzero_series() -> impl Strategy<Value = ExactSeries> {
    exact_series().prop_filter("nonzero", |f| !f.is_zero())
}

/// Like [`exact_series`], sometimes cut to a finite window above its order.
pub fn windowed_series() -> impl Strategy<Value = ExactSeries> {
    (exact_series(), prop::option::weighted(0.3, (1i64..=12, 1i64..=6))).prop_map(|(f, w)| {
        match (w, f.order()) {
            (Some((p, q)), Ok(v)) => f.truncate(&(v + rat(p, q))),
            _ => f,
        }
    })
}

pub fn alpha() -> impl Strategy<Value = AlphaOrder> {
    (1i64..=6)
        .prop_flat_map(|q| (1..=q, Just(q)))
        .prop_map(|(p, q)| AlphaOrder::new(rat(p, q)).unwrap())
}
