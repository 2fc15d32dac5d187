//! Seeded law-check suites behind `alphacalc check`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::alpha_calc::{
    alpha_deriv, alpha_deriv_iter, chain_rule_apply, fundamental_check, leibnitz_residual,
    rl_two_term_gap, AlphaOrder,
};
use crate::alpha_exp::ode_residual;
use crate::error::{Error, Result};
use crate::madelung::derivation_audit;
use crate::numeric::{int, rat, Rational};
use crate::parser::format_series;
use crate::random;
use crate::{ApproxSeries, ExactSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Leibnitz,
    Chain,
    Commute,
    Fundamental,
    RlGap,
    ExpOde,
    MadelungAudit,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Leibnitz,
        Suite::Chain,
        Suite::Commute,
        Suite::Fundamental,
        Suite::RlGap,
        Suite::ExpOde,
        Suite::MadelungAudit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Leibnitz => "leibnitz",
            Suite::Chain => "chain",
            Suite::Commute => "commute",
            Suite::Fundamental => "fundamental",
            Suite::RlGap => "rl-gap",
            Suite::ExpOde => "exp-ode",
            Suite::MadelungAudit => "madelung-audit",
        }
    }

    fn verdict(self) -> &'static str {
        match self {
            Suite::RlGap => "two-term gaps nonzero",
            Suite::Commute => "orders commute exactly",
            Suite::Fundamental => "cases match exactly",
            _ => "residuals exactly zero",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub passed: usize,
    pub counterexample: Option<String>,
    pub detail: Option<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}/{} {}",
            self.suite,
            self.passed,
            self.cases,
            self.suite.verdict()
        )?;
        if let Some(d) = &self.detail {
            writeln!(f, "{d}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "first counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Outcome of one case: `Ok(())` on success, `Err(description)` otherwise.
type Case = std::result::Result<(), String>;

pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> Result<SuiteReport> {
    if cases == 0 {
        return Err(Error::domain("a check suite needs at least one case"));
    }
    let mut rng = random::rng(seed);
    let mut passed = 0;
    let mut counterexample = None;
    let mut detail = None;
    for index in 0..cases {
        let outcome = match suite {
            Suite::Leibnitz => leibnitz_case(&mut rng),
            Suite::Chain => chain_case(&mut rng),
            Suite::Commute => commute_case(&mut rng),
            Suite::Fundamental => fundamental_case(&mut rng),
            Suite::RlGap => {
                let (outcome, gap) = rl_gap_case(&mut rng, index);
                if index == 0 {
                    detail = Some(format!(
                        "case 0: f = g = x, alpha = 1/2, gap coefficient {gap:.17e}"
                    ));
                }
                outcome
            }
            Suite::ExpOde => exp_ode_case(&mut rng),
            Suite::MadelungAudit => audit_case(&mut rng),
        };
        match outcome {
            Ok(()) => passed += 1,
            Err(msg) => {
                if counterexample.is_none() {
                    counterexample = Some(format!("case {index}: {msg}"));
                }
            }
        }
    }
    Ok(SuiteReport {
        suite,
        cases,
        passed,
        counterexample,
        detail,
    })
}

fn zero_or(residual: &ExactSeries, context: impl FnOnce() -> String) -> Case {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(format!("{}; residual {}", context(), format_series(residual)))
    }
}

fn leibnitz_case<R: Rng>(rng: &mut R) -> Case {
    let f = random::any_series(rng);
    let g = random::any_series(rng);
    let a = random::alpha(rng);
    zero_or(&leibnitz_residual(&f, &g, &a), || {
        format!("f = {}, g = {}, alpha = {a}", format_series(&f), format_series(&g))
    })
}

fn chain_case<R: Rng>(rng: &mut R) -> Case {
    let poly = random::poly(rng);
    let g: Vec<ExactSeries> = (0..poly.vars()).map(|_| random::any_series(rng)).collect();
    let a = random::alpha(rng);
    let describe = || {
        let gs: Vec<String> = g.iter().map(format_series).collect();
        format!("F = {poly:?}, g = [{}], alpha = {a}", gs.join("; "))
    };
    let composed = poly.compose(&g).map_err(|e| format!("{}: {e}", describe()))?;
    let applied = chain_rule_apply(&poly, &g, &a).map_err(|e| format!("{}: {e}", describe()))?;
    zero_or(&applied.sub(&alpha_deriv(&composed, &a)), describe)
}

fn commute_case<R: Rng>(rng: &mut R) -> Case {
    let f = random::any_series(rng);
    let a = random::alpha(rng);
    let m = rng.gen_range(0..=4);
    let l = rng.gen_range(0..=4);
    let ml = alpha_deriv_iter(&alpha_deriv_iter(&f, &a, m), &a, l);
    let lm = alpha_deriv_iter(&alpha_deriv_iter(&f, &a, l), &a, m);
    if ml == lm {
        Ok(())
    } else {
        Err(format!("f = {}, alpha = {a}, m = {m}, l = {l}", format_series(&f)))
    }
}

fn fundamental_case<R: Rng>(rng: &mut R) -> Case {
    let a = random::alpha(rng);
    let raw = random::any_series(rng);
    let pole = -a.value();
    let f = raw.sub(&ExactSeries::monomial(raw.coeff(&pole), pole));
    let (first, second) = fundamental_check(&f, &a)
        .map_err(|e| format!("f = {}, alpha = {a}: {e}", format_series(&f)))?;
    let constant = ExactSeries::constant(f.coeff(&Rational::zero()));
    if first.is_zero() && second.add(&constant).is_zero() {
        Ok(())
    } else {
        Err(format!(
            "f = {}, alpha = {a}: d(int f) - f = {}, int(d f) - f = {}",
            format_series(&f),
            format_series(&first),
            format_series(&second)
        ))
    }
}

/// Passes when the RL two-term gap has a coefficient above `1e-9`. Also
/// returns the leading gap coefficient.
fn rl_gap_case<R: Rng>(rng: &mut R, index: usize) -> (Case, f64) {
    let (f, g, a) = if index == 0 {
        let x = ApproxSeries::real_monomial(&int(1), int(1));
        (x.clone(), x, AlphaOrder::new(rat(1, 2)).expect("valid order"))
    } else {
        let mono = |rng: &mut R| {
            let q = rat(rng.gen_range(0..=12), rng.gen_range(1..=6));
            ApproxSeries::real_monomial(&random::rational(rng), q)
        };
        let f = mono(rng);
        let g = mono(rng);
        let den = rng.gen_range(2..=6);
        let a = AlphaOrder::new(rat(rng.gen_range(1..den), den)).expect("valid order");
        (f, g, a)
    };
    let describe = || format!("f = {}, g = {}, alpha = {a}", format_series(&f), format_series(&g));
    let gap = match rl_two_term_gap(&f, &g, &a) {
        Ok(gap) => gap,
        Err(e) => return (Err(format!("{}: {e}", describe())), f64::NAN),
    };
    let size = gap.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let signed = gap.leading().map(|(_, c)| c.re).unwrap_or(0.0);
    let outcome = if size > 1e-9 {
        Ok(())
    } else {
        Err(format!("{}: gap {size:e} is not distinguishable from zero", describe()))
    };
    (outcome, signed)
}

fn exp_ode_case<R: Rng>(rng: &mut R) -> Case {
    let a = random::alpha(rng);
    let n = rng.gen_range(2..=25);
    let residual = ode_residual(&a, n).map_err(|e| e.to_string())?;
    zero_or(&residual, || format!("alpha = {a}, N = {n}"))
}

fn audit_case<R: Rng>(rng: &mut R) -> Case {
    let r = random::any_series(rng);
    let s = random::any_series(rng);
    let s_t = random::any_series(rng);
    let r_t = random::any_series(rng);
    let a = random::alpha(rng);
    let hbar = random::rational(rng).abs();
    let (im, re) = derivation_audit(&r, &s, &s_t, &r_t, &a, &hbar);
    if im.is_zero() && re.is_zero() {
        Ok(())
    } else {
        Err(format!(
            "R = {}, S = {}, alpha = {a}, hbar = {hbar}: imaginary {}, real {}",
            format_series(&r),
            format_series(&s),
            format_series(&im),
            format_series(&re)
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("unknown".parse::<Suite>(), Err(Error::UnknownSuite("unknown".into())));
    }

    #[test]
    fn leibnitz_report() {
        let r = run_suite(Suite::Leibnitz, 50, 42).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.to_string(), "leibnitz: 50/50 residuals exactly zero\n");
    }

    #[test]
    fn rl_gap_single_case() {
        let r = run_suite(Suite::RlGap, 1, 7).unwrap();
        assert!(r.all_passed());
        assert!(r.detail.unwrap().contains("-7.5225277806367"));
    }

    #[test]
    fn every_suite_passes_a_few_cases() {
        for s in Suite::ALL {
            let r = run_suite(s, 20, 5).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn zero_cases_rejected() {
        assert!(run_suite(Suite::Chain, 0, 1).is_err());
    }
}
