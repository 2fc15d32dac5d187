//! The α-derivative `d_α x^β = β x^(β-α)`, its integral, and the
//! Riemann–Liouville monomial operator it is tested against.
//!
//! `d_α` is the unique monomial rule (up to a constant factor, fixed to 1 here)
//! that satisfies the two-term product rule. The RL operator, with coefficient
//! `Γ(β+1)/Γ(β-α+1)`, does not; the `rl_*` functions exist to demonstrate that
//! numerically and to cross-check the infinite binomial expansion that the RL
//! operator obeys instead.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{NumCast, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{gamma_rational, ln_gamma_positive, FloatScalar, Rational, Scalar};
use crate::parser::parse_rational;
use crate::puiseux::{denom_u64, PuiseuxSeries};

/// Order α of the derivative, `0 < α <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaOrder(Rational);

impl AlphaOrder {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= Rational::zero() || value > Rational::one() {
            return Err(Error::InvalidAlpha(value));
        }
        Ok(Self(value))
    }

    /// α = 1, the ordinary derivative.
    pub fn classical() -> Self {
        Self(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_classical(&self) -> bool {
        self.0.is_one()
    }

    fn lattice(&self) -> u64 {
        denom_u64(&self.0)
    }
}

impl fmt::Display for AlphaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for AlphaOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

/// Termwise `c x^β ↦ c β x^(β-α)`. The constant term is annihilated and the
/// window moves down by α.
pub fn alpha_deriv<T: Scalar>(f: &PuiseuxSeries<T>, alpha: &AlphaOrder) -> PuiseuxSeries<T> {
    f.map_terms(&-alpha.value(), alpha.lattice(), |beta, c| {
        c.clone() * T::from_rational(beta)
    })
}

pub fn alpha_deriv_iter<T: Scalar>(
    f: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
    m: u32,
) -> PuiseuxSeries<T> {
    (0..m).fold(f.clone(), |acc, _| alpha_deriv(&acc, alpha))
}

/// Ordinary derivative.
pub fn deriv<T: Scalar>(f: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
    alpha_deriv(f, &AlphaOrder::classical())
}

/// Termwise `c x^β ↦ c x^(β+α) / (β+α)`.
pub fn alpha_integral<T: Scalar>(
    f: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
) -> Result<PuiseuxSeries<T>> {
    f.try_map_terms(alpha.value(), alpha.lattice(), |beta, c| {
        let shifted = beta + alpha.value();
        if shifted.is_zero() {
            return Err(Error::IntegralPole {
                exponent: beta.clone(),
            });
        }
        Ok(c.clone() * T::from_rational(&shifted.recip()))
    })
}

/// Both compositions of `d_α` with its integral, minus `f`.
///
/// The first component is always zero. The second equals minus the constant
/// term of `f`: `d_α` kills `x^0`, and the integral does not bring it back.
pub fn fundamental_check<T: Scalar>(
    f: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
) -> Result<(PuiseuxSeries<T>, PuiseuxSeries<T>)> {
    let deriv_of_integral = alpha_deriv(&alpha_integral(f, alpha)?, alpha).sub(f);
    let integral_of_deriv = alpha_integral(&alpha_deriv(f, alpha), alpha)?.sub(f);
    Ok((deriv_of_integral, integral_of_deriv))
}

/// `d_α(fg) - g d_α f - f d_α g`.
pub fn leibnitz_residual<T: Scalar>(
    f: &PuiseuxSeries<T>,
    g: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
) -> PuiseuxSeries<T> {
    let whole = alpha_deriv(&f.mul(g), alpha);
    let left = g.mul(&alpha_deriv(f, alpha));
    let right = f.mul(&alpha_deriv(g, alpha));
    whole.sub(&left).sub(&right)
}

/// Monomial coefficient `C(β,α) = A(α)β` of the α-derivative, `A(α) = 1`.
pub fn monomial_coefficient(beta: &Rational, _alpha: &AlphaOrder) -> Rational {
    beta.clone()
}

/// Returns `(C(β-ε,α) + C(ε,α), C(β,α))`.
///
/// The additive functional equation is what forces the coefficient of the
/// α-derivative to be linear in β.
pub fn coefficient_rule_check(
    beta: &Rational,
    epsilon: &Rational,
    alpha: &AlphaOrder,
) -> (Rational, Rational) {
    let split = monomial_coefficient(&(beta - epsilon), alpha) + monomial_coefficient(epsilon, alpha);
    (split, monomial_coefficient(beta, alpha))
}

/// Polynomial in `k` variables with nonnegative integer exponent tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<T: Scalar> {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Complex<T>>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex<T>)>,
    {
        let mut p = Self::new(vars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex<T>) -> Result<()> {
        if exponents.len() != self.vars {
            return Err(Error::domain(format!(
                "monomial has {} exponents, polynomial has {} variables",
                exponents.len(),
                self.vars
            )));
        }
        let slot = self.terms.entry(exponents).or_insert_with(Complex::zero);
        *slot = slot.clone() + c;
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex<T>)> + '_ {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Formal partial derivative in variable `k`.
    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::new(self.vars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut lowered = e.clone();
            lowered[k] -= 1;
            let factor = T::from_rational(&Rational::from_integer(e[k].into()));
            out.terms.insert(lowered, c.clone() * factor);
        }
        out
    }

    /// Substitutes one series per variable.
    pub fn compose(&self, g: &[PuiseuxSeries<T>]) -> Result<PuiseuxSeries<T>> {
        if g.len() != self.vars {
            return Err(Error::domain(format!(
                "{} series supplied for a polynomial in {} variables",
                g.len(),
                self.vars
            )));
        }
        let mut acc = PuiseuxSeries::zero();
        for (e, c) in &self.terms {
            let mut term = PuiseuxSeries::constant(c.clone());
            for (gi, &k) in g.iter().zip(e) {
                term = term.mul(&gi.pow(k));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// `Σ_k (∂F/∂u_k)(g) · d_α g_k`.
pub fn chain_rule_apply<T: Scalar>(
    poly: &MultiPoly<T>,
    g: &[PuiseuxSeries<T>],
    alpha: &AlphaOrder,
) -> Result<PuiseuxSeries<T>> {
    if g.len() != poly.vars() {
        return Err(Error::domain(format!(
            "{} series supplied for a polynomial in {} variables",
            g.len(),
            poly.vars()
        )));
    }
    let mut acc = PuiseuxSeries::zero();
    for (k, gk) in g.iter().enumerate() {
        let outer = poly.partial(k).compose(g)?;
        acc = acc.add(&outer.mul(&alpha_deriv(gk, alpha)));
    }
    Ok(acc)
}

/// `D^α x^β = C*(β,α) x^(β-α)` with `C*(β,α) = Γ(β+1)/Γ(β-α+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RLCoefficient {
    pub beta: Rational,
    pub alpha: AlphaOrder,
    pub value: f64,
}

pub fn rl_deriv_monomial(beta: &Rational, alpha: &AlphaOrder) -> Result<RLCoefficient> {
    Ok(RLCoefficient {
        beta: beta.clone(),
        alpha: alpha.clone(),
        value: rl_coefficient(beta, alpha.value())?,
    })
}

/// `Γ(β+1)/Γ(β-ν+1)` for any real order ν (negative ν is a fractional
/// integral). A pole in the denominator gamma gives 0.
pub fn rl_coefficient(beta: &Rational, order: &Rational) -> Result<f64> {
    if *beta <= -Rational::one() {
        return Err(Error::domain(format!(
            "Riemann-Liouville monomial rule needs beta > -1, got {beta}"
        )));
    }
    let top = beta + Rational::one();
    let bottom = beta - order + Rational::one();
    if bottom.is_integer() && !bottom.is_positive() {
        return Ok(0.0);
    }
    let top_f = top.to_f64().unwrap_or(f64::INFINITY);
    let bottom_f = bottom.to_f64().unwrap_or(f64::INFINITY);
    const DIRECT_LIMIT: f64 = 170.0;
    if top_f <= DIRECT_LIMIT && bottom_f <= DIRECT_LIMIT {
        return Ok(gamma_rational(&top)? / gamma_rational(&bottom)?);
    }
    let (ln_bottom, sign) = if bottom_f > 0.0 {
        (ln_gamma_positive(bottom_f), 1.0)
    } else {
        let g = gamma_rational(&bottom)?;
        (g.abs().ln(), g.signum())
    };
    Ok(sign * (ln_gamma_positive(top_f) - ln_bottom).exp())
}

fn check_rl_support<T: Scalar>(f: &PuiseuxSeries<T>) -> Result<()> {
    match f.terms().find(|(q, _)| **q <= -Rational::one()) {
        Some((q, _)) => Err(Error::domain(format!(
            "Riemann-Liouville rule needs exponents > -1; offending exponent {q}"
        ))),
        None => Ok(()),
    }
}

fn cast<T: FloatScalar>(v: f64) -> T {
    <T as NumCast>::from(v).expect("f64 casts into a float scalar")
}

/// Termwise RL operator of arbitrary rational order.
pub fn rl_series<T: FloatScalar>(f: &PuiseuxSeries<T>, order: &Rational) -> Result<PuiseuxSeries<T>> {
    check_rl_support(f)?;
    f.try_map_terms(&-order, denom_u64(order), |beta, c| {
        Ok(*c * cast::<T>(rl_coefficient(beta, order)?))
    })
}

pub fn rl_deriv_series<T: FloatScalar>(
    f: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
) -> Result<PuiseuxSeries<T>> {
    rl_series(f, alpha.value())
}

/// Generalised binomial coefficient `α(α-1)…(α-n+1)/n!`, exact.
pub fn binomial(alpha: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..n {
        acc = acc * (alpha - Rational::from_integer(j.into())) / Rational::from_integer((j + 1).into());
    }
    acc
}

/// Partial sum `Σ_{n=0}^{N} binom(α,n) D^(α-n) f · g^(n)` of the RL product
/// expansion. `g` must be a polynomial in nonnegative integer powers, so the
/// sum terminates once `N` reaches its degree.
pub fn rl_leibnitz_partial_sum<T: FloatScalar>(
    f: &PuiseuxSeries<T>,
    g: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
    terms: u32,
) -> Result<PuiseuxSeries<T>> {
    if let Some((q, _)) = g
        .terms()
        .find(|(q, _)| !q.is_integer() || q.is_negative())
    {
        return Err(Error::domain(format!(
            "second factor must be a polynomial in nonnegative integer powers; found exponent {q}"
        )));
    }
    check_rl_support(f)?;
    let mut acc = PuiseuxSeries::zero();
    let mut g_derivative = g.clone();
    for n in 0..=terms {
        let order = alpha.value() - Rational::from_integer(n.into());
        let weight = binomial(alpha.value(), n).to_f64().unwrap_or(f64::NAN);
        let term = rl_series(f, &order)?
            .mul(&g_derivative)
            .scale(&Complex::new(cast::<T>(weight), T::zero()));
        acc = acc.add(&term);
        g_derivative = deriv(&g_derivative);
    }
    Ok(acc)
}

/// `D^α(fg) - g D^α f - f D^α g`, generically nonzero for α < 1.
pub fn rl_two_term_gap<T: FloatScalar>(
    f: &PuiseuxSeries<T>,
    g: &PuiseuxSeries<T>,
    alpha: &AlphaOrder,
) -> Result<PuiseuxSeries<T>> {
    let whole = rl_deriv_series(&f.mul(g), alpha)?;
    let left = g.mul(&rl_deriv_series(f, alpha)?);
    let right = f.mul(&rl_deriv_series(g, alpha)?);
    Ok(whole.sub(&left).sub(&right))
}
