//! Madelung split of the α-derivative Schrödinger-type equation
//! `iħ ∂_t ψ = D_α ħ² d_α² ψ + V ψ` under the ansatz `ψ = R E_α(iS/ħ)`.
//!
//! `E_α` is never evaluated. It is carried as a formal unit obeying
//!
//! * `d_α E_α(iS/ħ) = E_α · (i/ħ) d_α S`
//! * `∂_t E_α(z) = (z_t/α) E_α`
//!
//! so every expression `c · E_α` is represented by its coefficient series `c`
//! and all checks stay exact.
//!
//! The residual operators [`continuity_residual`] and [`hj_residual`] follow
//! the split equations exactly as they are usually printed. The split that
//! actually results from the ansatz differs from that printing by a sign in the
//! transport equation and by a factor `D_α` on the `(d_α S)²` term;
//! [`derived_split`] computes it and [`printed_split_gap`] reports the
//! difference.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::alpha_calc::{alpha_deriv, alpha_deriv_iter, deriv, AlphaOrder};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::puiseux::Trunc;
use crate::ExactSeries;

/// Inputs of the split equations. Time derivatives are supplied, not computed.
#[derive(Debug, Clone, PartialEq)]
pub struct MadelungState {
    pub r: ExactSeries,
    pub s: ExactSeries,
    pub r_t: ExactSeries,
    pub s_t: ExactSeries,
    pub v: ExactSeries,
    pub hbar: Rational,
    pub dalpha: Rational,
    pub alpha: AlphaOrder,
}

impl MadelungState {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        r: ExactSeries,
        s: ExactSeries,
        r_t: ExactSeries,
        s_t: ExactSeries,
        v: ExactSeries,
        hbar: Rational,
        dalpha: Rational,
        alpha: AlphaOrder,
    ) -> Result<Self> {
        if hbar <= Rational::zero() {
            return Err(Error::domain(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self {
            r,
            s,
            r_t,
            s_t,
            v,
            hbar,
            dalpha,
            alpha,
        })
    }
}

/// Residuals of the two split equations.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResiduals {
    pub continuity: ExactSeries,
    pub hamilton_jacobi: ExactSeries,
}

impl SplitResiduals {
    pub fn is_zero(&self) -> bool {
        self.continuity.is_zero() && self.hamilton_jacobi.is_zero()
    }
}

fn real(q: &Rational) -> Complex<Rational> {
    Complex::new(q.clone(), Rational::zero())
}

fn imag(q: &Rational) -> Complex<Rational> {
    Complex::new(Rational::zero(), q.clone())
}

/// `num · den⁻¹` known below `t`.
fn quotient(num: &ExactSeries, den: &ExactSeries, t: &Rational) -> Result<ExactSeries> {
    let lead = den.order()?;
    let v = match num.valuation_bound() {
        Trunc::Finite(v) => v,
        Trunc::Infinite => return Ok(ExactSeries::zero().truncate(t)),
    };
    let inverse = den.reciprocal(&(t - &v + &lead))?;
    Ok(num.mul(&inverse).truncate(t))
}

/// `Q_α = -D_α ħ² (d_α² R) / R`, known below `t`.
pub fn quantum_potential(
    r: &ExactSeries,
    alpha: &AlphaOrder,
    dalpha: &Rational,
    hbar: &Rational,
    t: &Rational,
) -> Result<ExactSeries> {
    if r.is_zero() {
        return Err(Error::EmptySeries);
    }
    let curvature = alpha_deriv_iter(r, alpha, 2);
    let factor = -(dalpha * hbar * hbar);
    Ok(quotient(&curvature, r, t)?.scale(&real(&factor)))
}

/// `R_t + 2 D_α (d_α R)(d_α S) + D_α R d_α² S`.
pub fn continuity_residual(state: &MadelungState) -> ExactSeries {
    let a = &state.alpha;
    let d = &state.dalpha;
    let dr = alpha_deriv(&state.r, a);
    let ds = alpha_deriv(&state.s, a);
    let d2s = alpha_deriv(&ds, a);
    state
        .r_t
        .add(&dr.mul(&ds).scale(&real(&(d * Rational::from_integer(2.into())))))
        .add(&state.r.mul(&d2s).scale(&real(d)))
}

/// `(1/α) S_t R + V R + D_α ħ² d_α² R - R (d_α S)²`.
pub fn hj_residual(state: &MadelungState) -> ExactSeries {
    let a = &state.alpha;
    let r = &state.r;
    let ds = alpha_deriv(&state.s, a);
    let d2r = alpha_deriv_iter(r, a, 2);
    state
        .s_t
        .mul(r)
        .scale(&real(&a.value().recip()))
        .add(&state.v.mul(r))
        .add(&d2r.scale(&real(&(&state.dalpha * &state.hbar * &state.hbar))))
        .sub(&r.mul(&ds.mul(&ds)))
}

/// Coefficients of `E_α` in `∂_t ψ` and `d_α² ψ`, obtained by applying the
/// formal rules step by step to the product `R · E_α`.
fn mechanical_coefficients(
    r: &ExactSeries,
    s: &ExactSeries,
    r_t: &ExactSeries,
    s_t: &ExactSeries,
    alpha: &AlphaOrder,
    hbar: &Rational,
) -> (ExactSeries, ExactSeries) {
    let i_over_hbar = imag(&hbar.recip());
    let phase_rate = alpha_deriv(s, alpha).scale(&i_over_hbar);
    // d_α(c E) = (d_α c) E + c (d_α E), d_α E = E (i/ħ) d_α S
    let step = |c: &ExactSeries| alpha_deriv(c, alpha).add(&c.mul(&phase_rate));
    let space = step(&step(r));
    // ∂_t(R E) = R_t E + R (z_t/α) E, z = iS/ħ
    let z_t = s_t.scale(&i_over_hbar);
    let time = r_t.add(&r.mul(&z_t).scale(&real(&alpha.value().recip())));
    (time, space)
}

/// Audits the derivation of the split from the ansatz.
///
/// The coefficient of `E_α` on each side of the equation is computed twice:
/// once by applying the product rule and the two `E_α` rules mechanically to
/// `R·E_α`, once from the expanded closed forms
///
/// ```text
/// ∂_t ψ / E_α  = R_t + (i S_t/(αħ)) R
/// d_α² ψ / E_α = d_α²R + 2 (d_α R)(i/ħ) d_α S - R (d_α S)²/ħ² + (iR/ħ) d_α² S
/// ```
///
/// The returned pair is the imaginary and real part of
/// `iħ Δ_t - ħ² Δ_x`, the Δ's being mechanical minus expanded. Both vanish
/// for every input.
pub fn derivation_audit(
    r: &ExactSeries,
    s: &ExactSeries,
    s_t: &ExactSeries,
    r_t: &ExactSeries,
    alpha: &AlphaOrder,
    hbar: &Rational,
) -> (ExactSeries, ExactSeries) {
    let (time_mech, space_mech) = mechanical_coefficients(r, s, r_t, s_t, alpha, hbar);

    let inv_hbar = hbar.recip();
    let dr = alpha_deriv(r, alpha);
    let d2r = alpha_deriv(&dr, alpha);
    let ds = alpha_deriv(s, alpha);
    let d2s = alpha_deriv(&ds, alpha);

    let time_expanded = r_t.add(&s_t.mul(r).scale(&imag(&(alpha.value().recip() * &inv_hbar))));
    let two = Rational::from_integer(2.into());
    let space_expanded = d2r
        .add(&dr.mul(&ds).scale(&imag(&(&two * &inv_hbar))))
        .sub(&r.mul(&ds.mul(&ds)).scale(&real(&(&inv_hbar * &inv_hbar))))
        .add(&r.mul(&d2s).scale(&imag(&inv_hbar)));

    let residual = time_mech
        .sub(&time_expanded)
        .scale(&imag(hbar))
        .sub(&space_mech.sub(&space_expanded).scale(&real(&(hbar * hbar))));
    (residual.imag_part(), residual.real_part())
}

/// The split that follows from the ansatz: with
/// `Φ = iħ ∂_tψ/E_α - D_α ħ² d_α²ψ/E_α - V R`,
/// the continuity residual is `Im Φ / ħ` and the Hamilton–Jacobi residual is
/// `-Re Φ`. Needs real `R, S, R_t, S_t, V`.
pub fn derived_split(state: &MadelungState) -> Result<SplitResiduals> {
    let all_real = [&state.r, &state.s, &state.r_t, &state.s_t, &state.v]
        .iter()
        .all(|f| f.is_real());
    if !all_real {
        return Err(Error::domain("the real/imaginary split needs real R, S, R_t, S_t and V"));
    }
    let (time, space) = mechanical_coefficients(
        &state.r,
        &state.s,
        &state.r_t,
        &state.s_t,
        &state.alpha,
        &state.hbar,
    );
    let hbar = &state.hbar;
    let phi = time
        .scale(&imag(hbar))
        .sub(&space.scale(&real(&(&state.dalpha * hbar * hbar))))
        .sub(&state.v.mul(&state.r));
    Ok(SplitResiduals {
        continuity: phi.imag_part().scale(&real(&hbar.recip())),
        hamilton_jacobi: phi.real_part().negate(),
    })
}

/// Derived split minus the printed residual operators. Equals
/// `(-4D_α (d_α R)(d_α S) - 2D_α R d_α² S, (1 - D_α) R (d_α S)²)`.
pub fn printed_split_gap(state: &MadelungState) -> Result<SplitResiduals> {
    let derived = derived_split(state)?;
    Ok(SplitResiduals {
        continuity: derived.continuity.sub(&continuity_residual(state)),
        hamilton_jacobi: derived.hamilton_jacobi.sub(&hj_residual(state)),
    })
}

/// Classical (α = 1) residuals
/// `(S_t + S'²/2m + V - ħ² R''/(2mR),  ∂_t(R²) + (R² S')'/m)`,
/// with `∂_t(R²) = 2 R R_t` and the quotient known below `t`.
#[allow(clippy::too_many_arguments)]
pub fn classical_consistency(
    r: &ExactSeries,
    s: &ExactSeries,
    r_t: &ExactSeries,
    s_t: &ExactSeries,
    v: &ExactSeries,
    mass: &Rational,
    hbar: &Rational,
    t: &Rational,
) -> Result<(ExactSeries, ExactSeries)> {
    if r.is_zero() {
        return Err(Error::EmptySeries);
    }
    let two_m = mass * Rational::from_integer(2.into());
    let ds = deriv(s);
    let d2r = deriv(&deriv(r));
    let quantum = quotient(&d2r, r, t)?.scale(&real(&(hbar * hbar / &two_m)));
    let hj = s_t
        .add(&ds.mul(&ds).scale(&real(&two_m.recip())))
        .add(v)
        .sub(&quantum);
    let r_sq = r.mul(r);
    let transport = r
        .mul(r_t)
        .scale(&real(&Rational::from_integer(2.into())))
        .add(&deriv(&r_sq.mul(&ds)).scale(&real(&mass.recip())));
    Ok((hj, transport))
}

/// Inclusive sampling grid `start:stop:step`. The stop point is included when
/// it lies within half a step of the last sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.step.is_nan() || self.step <= 0.0 || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::domain(format!("invalid grid {self:?}")));
        }
        if self.stop < self.start {
            return Err(Error::domain("grid stop lies before start"));
        }
        let count = ((self.stop - self.start) / self.step + 0.5).floor() as usize + 1;
        let points: Vec<f64> = (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect();
        if let Some(bad) = points.iter().find(|&&x| x <= 0.0) {
            return Err(Error::domain(format!(
                "grid point {bad} is not positive; series are sampled on x > 0"
            )));
        }
        Ok(points)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::domain(format!("grid must be start:stop:step, got `{s}`")));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("bad grid number `{p}`")))
        };
        Ok(Grid {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            step: num(parts[2])?,
        })
    }
}

/// Samples the truncated `Q_α` on a grid. Trust the values only where the
/// series converges, i.e. below the distance to the nearest zero of `R`.
pub fn sample_qpotential(
    r: &ExactSeries,
    alpha: &AlphaOrder,
    dalpha: &Rational,
    hbar: &Rational,
    t: &Rational,
    grid: &Grid,
) -> Result<Vec<(f64, f64)>> {
    let points = grid.points()?;
    let q = quantum_potential(r, alpha, dalpha, hbar, t)?;
    points
        .into_iter()
        .map(|x| Ok((x, q.eval(x)?.re)))
        .collect()
}

/// `x,Q_alpha` CSV with 17 significant digits and LF line endings.
pub fn samples_to_csv(samples: &[(f64, f64)]) -> String {
    let mut out = String::from("x,Q_alpha\n");
    for (x, q) in samples {
        writeln!(out, "{x:.16e},{q:.16e}").expect("writing to a String");
    }
    out
}

/// Builds the state used by the α-exponent consistency check: `R = 1`,
/// `S = c x^α`, `S_t = -E`, `V = E/α + c²α²`, which satisfies both printed
/// equations.
pub fn plane_wave_state(
    c: &Rational,
    energy: &Rational,
    alpha: &AlphaOrder,
    hbar: &Rational,
    dalpha: &Rational,
) -> Result<MadelungState> {
    let a = alpha.value();
    MadelungState::new(
        ExactSeries::one(),
        ExactSeries::real_monomial(c, a.clone()),
        ExactSeries::zero(),
        ExactSeries::constant(real(&-energy.clone())),
        ExactSeries::constant(real(&(energy / a + c * c * a * a))),
        hbar.clone(),
        dalpha.clone(),
        alpha.clone(),
    )
}
