//! Truncated Puiseux series about the origin.
//!
//! A series is a finite set of known terms `c_q x^q` with rational exponents on
//! a common lattice `(1/n)ℤ`, plus a truncation bound: every coefficient at an
//! exponent below `trunc` is known exactly, nothing is claimed at or above it.
//! Arithmetic propagates the bound so that results are sound on their window.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    ApproxComplex, Coefficient, Domain, ExactComplex, Rational, Scalar,
};

pub type Exponent = Rational;

/// Upper end of the window on which a series is known.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trunc {
    Finite(Rational),
    Infinite,
}

impl Trunc {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Trunc::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Trunc::Finite(t) => Some(t),
            Trunc::Infinite => None,
        }
    }

    /// True when exponent `q` lies inside the window.
    pub fn admits(&self, q: &Rational) -> bool {
        match self {
            Trunc::Finite(t) => q < t,
            Trunc::Infinite => true,
        }
    }

    pub fn shift(&self, by: &Rational) -> Trunc {
        match self {
            Trunc::Finite(t) => Trunc::Finite(t + by),
            Trunc::Infinite => Trunc::Infinite,
        }
    }

    pub fn plus(&self, other: &Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Finite(a), Trunc::Finite(b)) => Trunc::Finite(a + b),
            _ => Trunc::Infinite,
        }
    }
}

impl From<Rational> for Trunc {
    fn from(t: Rational) -> Self {
        Trunc::Finite(t)
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trunc::Finite(t) => write!(f, "{t}"),
            Trunc::Infinite => f.write_str("inf"),
        }
    }
}

/// Truncated Puiseux series `Σ c_q x^q + O(x^trunc)`.
///
/// Equality compares terms and window; the ramification is a lattice
/// annotation and two series differing only there are equal.
#[derive(Debug, Clone)]
pub struct PuiseuxSeries<T: Scalar> {
    ramification: u64,
    terms: BTreeMap<Exponent, Complex<T>>,
    trunc: Trunc,
}

impl<T: Scalar> PartialEq for PuiseuxSeries<T> {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.terms == other.terms
    }
}

pub(crate) fn denom_u64(q: &Rational) -> u64 {
    q.denom().to_u64().expect("exponent denominator fits in u64")
}

impl<T: Scalar> PuiseuxSeries<T> {
    pub fn zero() -> Self {
        Self {
            ramification: 1,
            terms: BTreeMap::new(),
            trunc: Trunc::Infinite,
        }
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn monomial(c: Complex<T>, exp: Exponent) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// Real monomial `c x^exp` with an exact coefficient.
    pub fn real_monomial(c: &Rational, exp: Exponent) -> Self {
        Self::monomial(Complex::new(T::from_rational(c), T::zero()), exp)
    }

    /// Builds an exact finite sum. Like terms combine; the lattice is the lcm
    /// of every exponent denominator supplied.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Complex<T>)>,
    {
        let mut ramification = 1u64;
        let mut map: BTreeMap<Exponent, Complex<T>> = BTreeMap::new();
        for (q, c) in terms {
            ramification = ramification.lcm(&denom_u64(&q));
            accumulate(&mut map, q, c);
        }
        Self::build(ramification, map, Trunc::Infinite)
    }

    /// Validating constructor used by decoders.
    pub fn from_parts(
        ramification: u64,
        terms: Vec<(Exponent, Complex<T>)>,
        trunc: Trunc,
    ) -> Result<Self> {
        if ramification == 0 {
            return Err(Error::domain("ramification must be positive"));
        }
        let mut map = BTreeMap::new();
        for (q, c) in terms {
            if !(&q * Rational::from_integer(ramification.into())).is_integer() {
                return Err(Error::domain(format!(
                    "exponent {q} is off the lattice (1/{ramification})Z"
                )));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite(q));
            }
            if !trunc.admits(&q) {
                return Err(Error::domain(format!(
                    "exponent {q} is not below the truncation {trunc}"
                )));
            }
            if map.insert(q.clone(), c).is_some() {
                return Err(Error::domain(format!("duplicate exponent {q}")));
            }
        }
        Ok(Self::build(ramification, map, trunc))
    }

    fn build(ramification: u64, mut terms: BTreeMap<Exponent, Complex<T>>, trunc: Trunc) -> Self {
        terms.retain(|q, c| !c.is_zero() && trunc.admits(q));
        Self {
            ramification,
            terms,
            trunc,
        }
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn domain(&self) -> Domain {
        T::DOMAIN
    }

    /// Known terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Complex<T>)> + '_ {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No known nonzero term. The series may still carry a finite window.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact zero series (no terms, nothing unknown).
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_infinite()
    }

    pub fn coeff(&self, q: &Rational) -> Complex<T> {
        self.terms.get(q).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn leading(&self) -> Option<(&Exponent, &Complex<T>)> {
        self.terms.iter().next()
    }

    /// Minimal exponent of the series.
    pub fn order(&self) -> Result<Rational> {
        self.leading().map(|(q, _)| q.clone()).ok_or(Error::EmptySeries)
    }

    /// Lower bound on the true valuation: the order when a term is known,
    /// otherwise the truncation bound.
    pub fn valuation_bound(&self) -> Trunc {
        match self.leading() {
            Some((q, _)) => Trunc::Finite(q.clone()),
            None => self.trunc.clone(),
        }
    }

    /// Re-expresses the series on the lattice lcm(n, m).
    pub fn with_ramification(mut self, m: u64) -> Self {
        self.ramification = self.ramification.lcm(&m);
        self
    }

    pub fn truncate(&self, t: &Rational) -> Self {
        let trunc = self.trunc.clone().min(Trunc::Finite(t.clone()));
        Self::build(self.ramification, self.terms.clone(), trunc)
    }

    pub fn truncate_to(&self, t: &Trunc) -> Self {
        match t {
            Trunc::Finite(t) => self.truncate(t),
            Trunc::Infinite => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (q, c) in &other.terms {
            accumulate(&mut terms, q.clone(), c.clone());
        }
        Self::build(
            self.ramification.lcm(&other.ramification),
            terms,
            self.trunc.clone().min(other.trunc.clone()),
        )
    }

    pub fn negate(&self) -> Self {
        Self {
            ramification: self.ramification,
            terms: self.terms.iter().map(|(q, c)| (q.clone(), -c.clone())).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    /// Multiplies every coefficient by `c`. Scaling by zero yields the exact
    /// zero series.
    pub fn scale(&self, c: &Complex<T>) -> Self {
        if c.is_zero() {
            return Self {
                ramification: self.ramification,
                terms: BTreeMap::new(),
                trunc: Trunc::Infinite,
            };
        }
        let terms = self
            .terms
            .iter()
            .map(|(q, a)| (q.clone(), a.clone() * c.clone()))
            .collect();
        Self::build(self.ramification, terms, self.trunc.clone())
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&Complex::new(T::from_rational(c), T::zero()))
    }

    /// Cauchy product. The result is known below
    /// `min(v(f) + trunc(g), v(g) + trunc(f))`, `v` being the valuation bound.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self
            .valuation_bound()
            .plus(&other.trunc)
            .min(other.valuation_bound().plus(&self.trunc));
        let mut terms = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let e = p + q;
                if trunc.admits(&e) {
                    accumulate(&mut terms, e, a.clone() * b.clone());
                }
            }
        }
        Self::build(self.ramification.lcm(&other.ramification), terms, trunc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one().with_ramification(self.ramification);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse up to `x^t`: `mul(f, g) = 1 + O(x^T')` with
    /// `T' >= t` (less only if `f` itself is truncated too early).
    ///
    /// Factors out the leading term `c0 x^q0`, writes the rest as `1 + h` and
    /// solves `(1 + h) u = 1` term by term: `u_e = -Σ_q h_q u_(e-q)` over the
    /// exponents reachable from 0 by steps in the support of `h`.
    pub fn reciprocal(&self, t: &Rational) -> Result<Self> {
        let (q0, c0) = self.leading().ok_or(Error::EmptySeries)?;
        let unit = Self::monomial(Complex::<T>::one() / c0.clone(), -q0.clone())
            .with_ramification(self.ramification);
        let h = self.mul(&unit).sub(&Self::one());
        if h.is_exact_zero() {
            return Ok(unit);
        }

        let window = Trunc::Finite(t.clone()).min(h.trunc.clone());
        let mut u: BTreeMap<Exponent, Complex<T>> = BTreeMap::new();
        let mut pending = BTreeSet::from([Rational::zero()]);
        while let Some(e) = pending.pop_first() {
            if !window.admits(&e) {
                break;
            }
            let c = if e.is_zero() {
                Complex::one()
            } else {
                let mut acc = Complex::<T>::zero();
                for (q, hq) in &h.terms {
                    if let Some(prev) = u.get(&(&e - q)) {
                        acc = acc + hq.clone() * prev.clone();
                    }
                }
                -acc
            };
            for q in h.terms.keys() {
                pending.insert(&e + q);
            }
            u.insert(e, c);
        }
        Ok(unit.mul(&Self::build(h.ramification, u, window)))
    }

    /// Sum of the known terms at `x0 > 0` on the principal real branch.
    /// The truncation remainder is not estimated.
    pub fn eval(&self, x0: f64) -> Result<ApproxComplex> {
        if x0.is_nan() || x0 <= 0.0 || x0.is_infinite() {
            return Err(Error::domain(format!(
                "evaluation point {x0} must be a positive real"
            )));
        }
        let mut acc = Complex::new(0.0, 0.0);
        for (q, c) in &self.terms {
            let power = if q.is_integer() {
                match q.to_integer().to_i32() {
                    Some(k) => x0.powi(k),
                    None => x0.powf(q.to_f64().unwrap_or(f64::NAN)),
                }
            } else {
                x0.powf(q.to_f64().unwrap_or(f64::NAN))
            };
            acc += Complex::new(c.re.as_f64(), c.im.as_f64()) * power;
        }
        Ok(acc)
    }

    /// Termwise map `c x^q ↦ f(q, c) x^(q + shift)`, the window moving by
    /// `shift` and the lattice extended by `extra_ramification`.
    pub(crate) fn map_terms<F>(&self, shift: &Rational, extra_ramification: u64, f: F) -> Self
    where
        F: Fn(&Rational, &Complex<T>) -> Complex<T>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(q, c)| (q + shift, f(q, c)))
            .collect();
        Self::build(
            self.ramification.lcm(&extra_ramification),
            terms,
            self.trunc.shift(shift),
        )
    }

    pub(crate) fn try_map_terms<F>(
        &self,
        shift: &Rational,
        extra_ramification: u64,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&Rational, &Complex<T>) -> Result<Complex<T>>,
    {
        let mut terms = BTreeMap::new();
        for (q, c) in &self.terms {
            terms.insert(q + shift, f(q, c)?);
        }
        Ok(Self::build(
            self.ramification.lcm(&extra_ramification),
            terms,
            self.trunc.shift(shift),
        ))
    }

    pub fn conj(&self) -> Self {
        self.map_terms(&Rational::zero(), 1, |_, c| c.conj())
    }

    /// Series of the real parts of the coefficients.
    pub fn real_part(&self) -> Self {
        self.map_terms(&Rational::zero(), 1, |_, c| Complex::new(c.re.clone(), T::zero()))
    }

    /// Series of the imaginary parts of the coefficients, as real coefficients.
    pub fn imag_part(&self) -> Self {
        self.map_terms(&Rational::zero(), 1, |_, c| Complex::new(c.im.clone(), T::zero()))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }
}

fn accumulate<T: Scalar>(map: &mut BTreeMap<Exponent, Complex<T>>, q: Exponent, c: Complex<T>) {
    match map.get_mut(&q) {
        Some(slot) => *slot = slot.clone() + c,
        None => {
            map.insert(q, c);
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<T: Scalar> $tr<&PuiseuxSeries<T>> for &PuiseuxSeries<T> {
            type Output = PuiseuxSeries<T>;
            fn $method(self, rhs: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
                PuiseuxSeries::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl<T: Scalar> Neg for &PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;
    fn neg(self) -> PuiseuxSeries<T> {
        self.negate()
    }
}

impl<T: Scalar> Neg for PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;
    fn neg(self) -> PuiseuxSeries<T> {
        self.negate()
    }
}

/// A series whose coefficient domain is only known at run time, as read from
/// the command line or from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Exact(PuiseuxSeries<Rational>),
    Approx(PuiseuxSeries<f64>),
}

impl AnySeries {
    pub fn domain(&self) -> Domain {
        match self {
            AnySeries::Exact(_) => Domain::Exact,
            AnySeries::Approx(_) => Domain::Approx,
        }
    }

    pub fn order(&self) -> Result<Rational> {
        match self {
            AnySeries::Exact(f) => f.order(),
            AnySeries::Approx(f) => f.order(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnySeries::Exact(f), AnySeries::Exact(g)) => Ok(AnySeries::Exact(f.add(g))),
            (AnySeries::Approx(f), AnySeries::Approx(g)) => Ok(AnySeries::Approx(f.add(g))),
            _ => Err(Error::DomainMismatch),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnySeries::Exact(f), AnySeries::Exact(g)) => Ok(AnySeries::Exact(f.mul(g))),
            (AnySeries::Approx(f), AnySeries::Approx(g)) => Ok(AnySeries::Approx(f.mul(g))),
            _ => Err(Error::DomainMismatch),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            AnySeries::Exact(f) => AnySeries::Exact(f.negate()),
            AnySeries::Approx(f) => AnySeries::Approx(f.negate()),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self> {
        match (self, c) {
            (AnySeries::Exact(f), Coefficient::Exact(c)) => Ok(AnySeries::Exact(f.scale(c))),
            (AnySeries::Approx(f), Coefficient::Approx(c)) => Ok(AnySeries::Approx(f.scale(c))),
            _ => Err(Error::DomainMismatch),
        }
    }

    /// Converts to the approximate domain, rounding exact coefficients.
    pub fn to_approx(&self) -> Result<PuiseuxSeries<f64>> {
        match self {
            AnySeries::Exact(f) => exact_to_approx_series(f),
            AnySeries::Approx(f) => Ok(f.clone()),
        }
    }
}

impl From<PuiseuxSeries<Rational>> for AnySeries {
    fn from(f: PuiseuxSeries<Rational>) -> Self {
        AnySeries::Exact(f)
    }
}

impl From<PuiseuxSeries<f64>> for AnySeries {
    fn from(f: PuiseuxSeries<f64>) -> Self {
        AnySeries::Approx(f)
    }
}

/// Rounds every coefficient of an exact series to double precision.
pub fn exact_to_approx_series(f: &PuiseuxSeries<Rational>) -> Result<PuiseuxSeries<f64>> {
    let mut terms = BTreeMap::new();
    for (q, c) in f.terms() {
        let c: ExactComplex = c.clone();
        terms.insert(q.clone(), crate::numeric::exact_to_approx(&c)?);
    }
    Ok(PuiseuxSeries::build(f.ramification, terms, f.trunc.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::ExactSeries;

    fn mono(c: i64, p: i64, q: i64) -> ExactSeries {
        ExactSeries::real_monomial(&int(c), rat(p, q))
    }

    fn sum(parts: &[ExactSeries]) -> ExactSeries {
        parts.iter().fold(ExactSeries::zero(), |acc, p| &acc + p)
    }

    fn re(c: &Complex<Rational>) -> Rational {
        c.re.clone()
    }

    #[test]
    fn order_examples() {
        assert_eq!((&mono(1, 1, 2) + &mono(1, 1, 1)).order().unwrap(), rat(1, 2));
        assert_eq!(mono(3, 0, 1).order().unwrap(), int(0));
        assert_eq!(ExactSeries::zero().order(), Err(Error::EmptySeries));
    }

    #[test]
    fn add_lands_on_common_lattice() {
        let s = &mono(1, 1, 2) + &mono(1, 1, 3);
        assert_eq!(s.ramification(), 6);
        let exps: Vec<_> = s.terms().map(|(q, _)| q.clone()).collect();
        assert_eq!(exps, vec![rat(1, 3), rat(1, 2)]);
    }

    #[test]
    fn cancellation_gives_exact_zero() {
        let s = &mono(1, 1, 1) + &mono(-1, 1, 1);
        assert!(s.is_exact_zero());
        let f = mono(1, 1, 1).truncate(&int(3));
        assert!(f.scale(&Complex::zero()).is_exact_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&mono(1, 1, 2) * &mono(1, 1, 2), mono(1, 1, 1).with_ramification(2));
        let a = &mono(1, 0, 1) + &mono(1, 1, 1);
        let b = &mono(1, 0, 1) + &mono(-1, 1, 1);
        assert_eq!(&a * &b, &mono(1, 0, 1) + &mono(-1, 2, 1));
        let c = &(&mono(1, -1, 2) + &mono(1, 0, 1)) * &mono(1, 1, 2);
        assert_eq!(c, &mono(1, 0, 1) + &mono(1, 1, 2));
    }

    #[test]
    fn mul_window() {
        // (1 + x + O(x^3)) * (x + O(x^2)) is known below min(0 + 2, 1 + 3) = 2
        let f = (&mono(1, 0, 1) + &mono(1, 1, 1)).truncate(&int(3));
        let g = mono(1, 1, 1).truncate(&int(2));
        let p = f.mul(&g);
        assert_eq!(p.trunc(), &Trunc::Finite(int(2)));
        assert_eq!(p, mono(1, 1, 1).truncate(&int(2)));
    }

    #[test]
    fn reciprocal_examples() {
        let f = &mono(1, 0, 1) + &mono(1, 1, 1);
        let g = f.reciprocal(&int(4)).unwrap();
        let want = sum(&[mono(1, 0, 1), mono(-1, 1, 1), mono(1, 2, 1), mono(-1, 3, 1)]).truncate(&int(4));
        assert_eq!(g, want);

        assert_eq!(mono(1, 1, 1).reciprocal(&int(4)).unwrap(), mono(1, -1, 1));
        let half = mono(2, 0, 1).reciprocal(&int(4)).unwrap();
        assert_eq!(re(&half.coeff(&int(0))), rat(1, 2));
        assert!(half.trunc().is_infinite());
        assert_eq!(ExactSeries::zero().reciprocal(&int(1)), Err(Error::EmptySeries));
    }

    #[test]
    fn reciprocal_of_ramified_series() {
        let f = sum(&[mono(2, 1, 3), mono(1, 1, 2), mono(-3, 2, 1)]);
        let g = f.reciprocal(&int(3)).unwrap();
        let r = f.mul(&g).sub(&ExactSeries::one());
        assert!(r.is_zero());
        assert!(r.trunc() >= &Trunc::Finite(int(3)));
    }

    #[test]
    fn eval_examples() {
        assert!((mono(1, 1, 2).eval(4.0).unwrap().re - 2.0).abs() < 1e-15);
        assert_eq!((&mono(1, 0, 1) + &mono(1, 1, 1)).eval(1.0).unwrap().re, 2.0);
        assert!(matches!(mono(1, -1, 1).eval(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn truncate_examples() {
        let f = sum(&[mono(1, 0, 1), mono(1, 1, 1), mono(1, 2, 1)]);
        let t = f.truncate(&int(2));
        assert_eq!(t.len(), 2);
        assert_eq!(t.trunc(), &Trunc::Finite(int(2)));
        assert!(ExactSeries::zero().truncate(&int(1)).is_zero());
        let g = (&mono(1, -1, 1) + &mono(1, 0, 1)).truncate(&int(0));
        assert_eq!(g.len(), 1);
        assert_eq!(g.order().unwrap(), int(-1));
    }

    #[test]
    fn from_parts_rejects_off_lattice_exponent() {
        let err = ExactSeries::from_parts(2, vec![(rat(1, 3), Complex::one())], Trunc::Infinite);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn any_series_domain_mismatch() {
        let a = AnySeries::Exact(ExactSeries::one());
        let b = AnySeries::Approx(PuiseuxSeries::<f64>::one());
        assert_eq!(a.add(&b), Err(Error::DomainMismatch));
        assert_eq!(a.mul(&b), Err(Error::DomainMismatch));
        assert!(a.add(&a).is_ok());
    }
}
