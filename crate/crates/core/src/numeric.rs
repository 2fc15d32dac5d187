//! Scalar domains: exact rationals, the real scalar trait the series are
//! generic over, complex coefficients and a real gamma evaluator.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigUint;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Tag for the two coefficient domains a series may live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Exact,
    Approx,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Exact => "exact",
            Domain::Approx => "approx",
        })
    }
}

/// Real scalar underlying a complex series coefficient.
///
/// Implemented for [`Rational`] (the exact domain) and for `f64`/`f32`
/// (approximate domains).
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const DOMAIN: Domain;

    fn from_rational(q: &Rational) -> Self;

    fn as_f64(&self) -> f64;

    fn is_finite(&self) -> bool;
}

impl Scalar for Rational {
    const DOMAIN: Domain = Domain::Exact;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const DOMAIN: Domain = Domain::Approx;

            fn from_rational(q: &Rational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

/// Scalars usable by the Riemann–Liouville operators, which need gamma values.
pub trait FloatScalar: Scalar + Float {}

impl<T: Scalar + Float> FloatScalar for T {}

pub type ExactComplex = Complex<Rational>;
pub type ApproxComplex = Complex<f64>;

/// A coefficient carrying its domain tag at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Exact(ExactComplex),
    Approx(ApproxComplex),
}

impl Coefficient {
    pub fn domain(&self) -> Domain {
        match self {
            Coefficient::Exact(_) => Domain::Exact,
            Coefficient::Approx(_) => Domain::Approx,
        }
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn exact_complex(re: Rational, im: Rational) -> ExactComplex {
    Complex::new(re, im)
}

/// Rounds each part of an exact complex number to the nearest double.
pub fn exact_to_approx(c: &ExactComplex) -> Result<ApproxComplex> {
    Ok(Complex::new(rational_to_f64(&c.re)?, rational_to_f64(&c.im)?))
}

pub fn rational_to_f64(q: &Rational) -> Result<f64> {
    match ToPrimitive::to_f64(q) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Overflow(q.to_string())),
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Positive integer arguments up to this bound are served from exact factorials.
const MAX_FACTORIAL_ARG: f64 = 171.0;

/// Raw real inputs closer than this to a nonpositive integer count as poles.
const POLE_EPS: f64 = 1e-15;

/// Gamma function on the real line.
///
/// Lanczos approximation for `x >= 1/2`, reflection below. Relative error is
/// below `1e-13` on `[-20, 30]`. Positive integers return the correctly
/// rounded factorial.
pub fn gamma_eval(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite value {x}")));
    }
    let nearest = x.round();
    if nearest <= 0.0 && (x - nearest).abs() < POLE_EPS {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

/// Gamma of an exact rational, with exact pole detection.
pub fn gamma_rational(q: &Rational) -> Result<f64> {
    if q.is_integer() && *q <= Rational::zero() {
        return Err(Error::Pole(Scalar::as_f64(q)));
    }
    Ok(gamma_unchecked(rational_to_f64(q)?))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x >= 1.0 && x == x.trunc() && x <= MAX_FACTORIAL_ARG {
        return factorial_f64(x as u64 - 1);
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * series
}

/// `ln |Γ(x)|` for `x > 0`, used when Γ itself overflows.
pub(crate) fn ln_gamma_positive(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - ln_gamma_positive(1.0 - x);
    }
    let x = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

/// `sin(πx)` with exact argument reduction, so poles of the reflection
/// formula do not lose relative accuracy.
fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

fn factorial_f64(n: u64) -> f64 {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::as_f64(&Rational::from_integer(acc.into()))
}
