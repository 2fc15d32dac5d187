//! The α-exponent `E_α(z) = exp(z^α/α) = Σ_k (z^α/α)^k / k!`, the eigenfunction
//! of `d_α` with eigenvalue 1.

use num_complex::Complex;
use num_traits::{One, ToPrimitive};

use crate::alpha_calc::{alpha_deriv, AlphaOrder};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::puiseux::PuiseuxSeries;
use crate::ExactSeries;

/// `Σ_{k=0}^{N} x^(kα) / (α^k k!)`, known below `(N+1)α`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaExpSeries {
    pub alpha: AlphaOrder,
    pub terms: u32,
    pub series: ExactSeries,
}

impl AlphaExpSeries {
    /// Coefficient of `x^(kα)`, i.e. `1/(α^k k!)`.
    pub fn coefficient(&self, k: u32) -> Rational {
        let q = self.alpha.value() * Rational::from_integer(k.into());
        self.series.coeff(&q).re
    }
}

pub fn alpha_exp_series(alpha: &AlphaOrder, terms: u32) -> Result<AlphaExpSeries> {
    if terms < 1 {
        return Err(Error::domain("the alpha-exponent needs at least one retained term"));
    }
    let a = alpha.value();
    let mut coeff = Rational::one();
    let mut out = Vec::with_capacity(terms as usize + 1);
    for k in 0..=terms {
        if k > 0 {
            coeff /= a * Rational::from_integer(k.into());
        }
        let exp = a * Rational::from_integer(k.into());
        out.push((exp, Complex::new(coeff.clone(), Rational::from_integer(0.into()))));
    }
    let window = a * Rational::from_integer((terms + 1).into());
    let series = PuiseuxSeries::from_terms(out)
        .with_ramification(alpha.value().denom().to_u64().unwrap_or(1))
        .truncate(&window);
    Ok(AlphaExpSeries {
        alpha: alpha.clone(),
        terms,
        series,
    })
}

/// `exp(z^α/α)` on the principal branch. `E_α(0) = 1`.
pub fn alpha_exp_eval(z: f64, alpha: &AlphaOrder) -> Result<f64> {
    if z == 0.0 {
        return Ok(1.0);
    }
    if z.is_nan() || z <= 0.0 || z.is_infinite() {
        return Err(Error::domain(format!("alpha-exponent needs z >= 0, got {z}")));
    }
    let a = alpha.value().to_f64().unwrap_or(f64::NAN);
    Ok((z.powf(a) / a).exp())
}

/// `d_α E - E` on the window `[0, Nα)`, where it vanishes by telescoping.
pub fn ode_residual(alpha: &AlphaOrder, terms: u32) -> Result<ExactSeries> {
    if terms < 2 {
        return Err(Error::domain("ODE residual needs at least two retained terms"));
    }
    let e = alpha_exp_series(alpha, terms)?.series;
    let window = alpha.value() * Rational::from_integer(terms.into());
    Ok(alpha_deriv(&e, alpha).sub(&e).truncate(&window))
}

/// `E_α(z1+z2) - E_α(z1) E_α(z2)`; zero for every positive pair only when α = 1.
pub fn semigroup_gap(z1: f64, z2: f64, alpha: &AlphaOrder) -> Result<f64> {
    if !(z1 > 0.0 && z2 > 0.0) {
        return Err(Error::domain(format!(
            "semigroup gap needs positive arguments, got ({z1}, {z2})"
        )));
    }
    Ok(alpha_exp_eval(z1 + z2, alpha)? - alpha_exp_eval(z1, alpha)? * alpha_exp_eval(z2, alpha)?)
}
