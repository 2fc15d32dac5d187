//! Seeded generators for the law-check suites.
//!
//! Series have at most 8 terms, exponents `p/q` with `p ∈ [-6, 12]` and
//! `q ∈ 1..=6`, coefficients `a/b` with `0 < |a| ≤ 20` and `1 ≤ b ≤ 20`.
//! About one coefficient in four carries an imaginary part and about one
//! series in five has a finite window.

use num_complex::Complex;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alpha_calc::{AlphaOrder, MultiPoly};
use crate::numeric::{rat, ExactComplex, Rational};
use crate::puiseux::PuiseuxSeries;
use crate::ExactSeries;

pub const MAX_TERMS: usize = 8;
pub const EXP_NUMER: (i64, i64) = (-6, 12);
pub const EXP_DENOM: i64 = 6;
pub const COEFF_BOUND: i64 = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let mut a = 0;
    while a == 0 {
        a = rng.gen_range(-COEFF_BOUND..=COEFF_BOUND);
    }
    rat(a, rng.gen_range(1..=COEFF_BOUND))
}

pub fn coefficient<R: Rng>(rng: &mut R, real: bool) -> ExactComplex {
    let re = rational(rng);
    let im = if !real && rng.gen_bool(0.25) {
        rational(rng)
    } else {
        Rational::zero()
    };
    Complex::new(re, im)
}

pub fn exponent<R: Rng>(rng: &mut R) -> Rational {
    rat(
        rng.gen_range(EXP_NUMER.0..=EXP_NUMER.1),
        rng.gen_range(1..=EXP_DENOM),
    )
}

/// Options narrowing the generated family.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeriesShape {
    /// Real coefficients only.
    pub real: bool,
    /// Exponents at least zero.
    pub nonnegative: bool,
    /// Always an infinite window.
    pub exact_window: bool,
    /// At least one term.
    pub nonzero: bool,
}

pub fn series<R: Rng>(rng: &mut R, shape: SeriesShape) -> ExactSeries {
    let lo = if shape.nonzero { 1 } else { 0 };
    let count = rng.gen_range(lo..=MAX_TERMS);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let mut q = exponent(rng);
        if shape.nonnegative && q < Rational::zero() {
            q = -q;
        }
        terms.push((q, coefficient(rng, shape.real)));
    }
    let mut f = PuiseuxSeries::from_terms(terms);
    if shape.nonzero && f.is_zero() {
        f = ExactSeries::real_monomial(&rational(rng), exponent(rng).abs());
    }
    if !shape.exact_window && rng.gen_bool(0.2) {
        if let Ok(v) = f.order() {
            let width = rat(rng.gen_range(1..=12), rng.gen_range(1..=EXP_DENOM));
            f = f.truncate(&(v + width));
        }
    }
    f
}

pub fn any_series<R: Rng>(rng: &mut R) -> ExactSeries {
    series(rng, SeriesShape::default())
}

/// An order from `{1/6, 1/5, …, 1}` with denominators up to 6.
pub fn alpha<R: Rng>(rng: &mut R) -> AlphaOrder {
    let q = rng.gen_range(1..=EXP_DENOM);
    let p = rng.gen_range(1..=q);
    AlphaOrder::new(rat(p, q)).expect("0 < p/q <= 1")
}

/// Polynomial in one or two variables of total degree at most 3.
pub fn poly<R: Rng>(rng: &mut R) -> MultiPoly<Rational> {
    let vars = rng.gen_range(1..=2);
    let mut p = MultiPoly::new(vars);
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let exps: Vec<u32> = if vars == 1 {
            vec![rng.gen_range(0..=3)]
        } else {
            let a = rng.gen_range(0..=3);
            vec![a, rng.gen_range(0..=3 - a)]
        };
        p.add_term(exps, coefficient(rng, false))
            .expect("arity matches");
    }
    p
}
