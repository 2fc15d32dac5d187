//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console.

use std::f64::consts::FRAC_2_SQRT_PI;
use std::time::{Duration, Instant};

use alpha_calculus::alpha_calc::{
    alpha_deriv, deriv, rl_coefficient, rl_deriv_series, rl_leibnitz_partial_sum,
    rl_two_term_gap,
};
use alpha_calculus::alpha_exp::{alpha_exp_eval, alpha_exp_series, ode_residual, semigroup_gap};
use alpha_calculus::checks::{run_suite, Suite};
use alpha_calculus::cli::run;
use alpha_calculus::madelung::{
    classical_consistency, continuity_residual, printed_split_gap, quantum_potential,
    MadelungState,
};
use alpha_calculus::numeric::{int, rat};
use alpha_calculus::puiseux::exact_to_approx_series;
use alpha_calculus::random::{self, SeriesShape};
use alpha_calculus::{AlphaOrder, ApproxSeries, ExactComplex, ExactSeries};
use num_complex::Complex;
use num_traits::Signed;
use rand::Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn suite(s: Suite, cases: usize, seed: u64, budget: Duration) -> Verdict {
    let start = Instant::now();
    let report = run_suite(s, cases, seed).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let line = report.to_string().lines().next().unwrap_or_default().to_string();
    if !report.all_passed() {
        return Err(report.to_string().trim_end().to_string());
    }
    if took > budget {
        return Err(format!("{line} but took {took:.2?} (budget {budget:?})"));
    }
    Ok(format!("{line} in {took:.2?}"))
}

fn c1_leibnitz() -> Verdict {
    suite(Suite::Leibnitz, 500, 42, Duration::from_secs(5))
}

fn c2_chain() -> Verdict {
    suite(Suite::Chain, 200, 42, Duration::from_secs(5))
}

fn c3_commute() -> Verdict {
    suite(Suite::Commute, 200, 42, Duration::from_secs(5))
}

fn c4_fundamental() -> Verdict {
    suite(Suite::Fundamental, 200, 42, Duration::from_secs(5))
}

fn c5_monomial_rules() -> Verdict {
    for (p, q) in [(1, 4), (1, 3), (1, 2), (2, 3), (1, 1)] {
        let a = AlphaOrder::new(rat(p, q)).unwrap();
        let d = alpha_deriv(&ExactSeries::real_monomial(&int(1), rat(p, q)), &a);
        let want: ExactComplex = Complex::new(rat(p, q), int(0));
        if d != ExactSeries::constant(want) {
            return Err(format!("d x^alpha at alpha = {a} gave {d:?}"));
        }
        if !alpha_deriv(&ExactSeries::one(), &a).is_exact_zero() {
            return Err(format!("d x^0 nonzero at alpha = {a}"));
        }
    }
    Ok("d x^a = a and d 1 = 0 for a in {1/4, 1/3, 1/2, 2/3, 1}".into())
}

fn c6_rl_classical() -> Verdict {
    let mut worst: f64 = 0.0;
    for k in 1..=100 {
        let b = k as f64 / 10.0;
        let c = rl_coefficient(&rat(k, 10), &int(1)).map_err(|e| e.to_string())?;
        let rel = (c - b).abs() / b;
        if rel > 1e-10 {
            return Err(format!("beta = {b}: {c}"));
        }
        worst = worst.max(rel);
    }
    Ok(format!("max |G(b+1)/G(b) - b|/b = {worst:.1e} on b = 0.1..10"))
}

fn c7_rl_gap() -> Verdict {
    let half = AlphaOrder::new(rat(1, 2)).unwrap();
    let x = ApproxSeries::real_monomial(&int(1), int(1));
    let gap = rl_two_term_gap(&x, &x, &half).map_err(|e| e.to_string())?;
    let got = gap.coeff(&rat(3, 2)).re;
    let want = (4.0 / 3.0) * FRAC_2_SQRT_PI - 2.0 * FRAC_2_SQRT_PI;
    if (got - want).abs() > 1e-12 {
        return Err(format!("gap {got} vs {want}"));
    }
    let direct = rl_deriv_series(&x.mul(&x), &half).map_err(|e| e.to_string())?;
    let partial = rl_leibnitz_partial_sum(&x, &x, &half, 2).map_err(|e| e.to_string())?;
    let diff = partial.sub(&direct);
    let worst = diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(format!("partial sum differs from direct RL by {worst:e}"));
    }
    Ok(format!("gap {got:.17} (|err| {:.1e}); partial sum N=2 matches direct to {worst:.1e}", (got - want).abs()))
}

fn c8_alpha_exp() -> Verdict {
    let orders: Vec<AlphaOrder> = [(1, 3), (1, 2), (2, 3), (1, 1)]
        .into_iter()
        .map(|(p, q)| AlphaOrder::new(rat(p, q)).unwrap())
        .collect();
    let mut worst: f64 = 0.0;
    for a in &orders {
        if !ode_residual(a, 25).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("ODE residual nonzero at alpha = {a}"));
        }
        let e = exact_to_approx_series(&alpha_exp_series(a, 40).unwrap().series).unwrap();
        for i in 1..=200 {
            let z = i as f64 / 100.0;
            let want = alpha_exp_eval(z, a).unwrap();
            let rel = ((e.eval(z).unwrap().re - want) / want).abs();
            if rel > 1e-10 {
                return Err(format!("series vs closed form at alpha = {a}, z = {z}: {rel:e}"));
            }
            worst = worst.max(rel);
        }
    }
    let gap = semigroup_gap(1.0, 1.0, &orders[1]).unwrap();
    let want = (2.0 * 2f64.sqrt()).exp() - 4f64.exp();
    if (gap - want).abs() > 1e-8 {
        return Err(format!("semigroup gap {gap} vs {want}"));
    }
    let mut rng = random::rng(8);
    for _ in 0..100 {
        let z1: f64 = rng.gen_range(0.01..5.0);
        let z2: f64 = rng.gen_range(0.01..5.0);
        let g = semigroup_gap(z1, z2, &orders[3]).unwrap();
        if (g / alpha_exp_eval(z1 + z2, &orders[3]).unwrap()).abs() > 1e-12 {
            return Err(format!("classical semigroup gap {g} at ({z1}, {z2})"));
        }
    }
    Ok(format!("ODE exact at N=25; series rel err {worst:.1e}; gap(1,1,1/2) = {gap:.6}"))
}

fn c9_audit() -> Verdict {
    suite(Suite::MadelungAudit, 100, 42, Duration::from_secs(10))
}

/// Not a criterion: how the split as usually printed compares with the one
/// the ansatz produces.
fn printed_split_note() -> String {
    let a = AlphaOrder::new(rat(1, 2)).unwrap();
    let parse = |s: &str| alpha_calculus::parser::parse_series::<alpha_calculus::Rational>(s).unwrap();
    let state = MadelungState::new(
        parse("1 + x"),
        parse("x^(3/2)"),
        parse("0"),
        parse("0"),
        parse("0"),
        int(1),
        rat(2, 5),
        a,
    )
    .unwrap();
    let gap = printed_split_gap(&state).unwrap();
    format!(
        "note: printed split differs from the derived one for R = 1 + x, S = x^(3/2), alpha = 1/2, D = 2/5: continuity gap {}, HJ gap {}",
        alpha_calculus::parser::format_series(&gap.continuity),
        alpha_calculus::parser::format_series(&gap.hamilton_jacobi)
    )
}

fn c10_classical_limit() -> Verdict {
    let mut rng = random::rng(10);
    let shape = SeriesShape { nonzero: true, exact_window: true, ..Default::default() };
    for i in 0..100 {
        let r = random::series(&mut rng, shape);
        let m = random::rational(&mut rng).abs();
        let hbar = random::rational(&mut rng).abs();
        let t = r.order().unwrap() + int(3);
        let q = quantum_potential(&r, &AlphaOrder::classical(), &(int(2) * &m).recip(), &hbar, &t)
            .map_err(|e| e.to_string())?;
        let check = q.mul(&r).add(&deriv(&deriv(&r)).scale_rational(&(&hbar * &hbar / (int(2) * &m))));
        if !check.is_zero() {
            return Err(format!("case {i}: Q R + hbar^2 R''/2m nonzero"));
        }
        // continuity identity
        let s = random::any_series(&mut rng);
        let r_t = random::any_series(&mut rng);
        let state = MadelungState::new(
            r.clone(),
            s.clone(),
            r_t.clone(),
            ExactSeries::zero(),
            ExactSeries::zero(),
            hbar.clone(),
            (int(2) * &m).recip(),
            AlphaOrder::classical(),
        )
        .unwrap();
        let (_, transport) = classical_consistency(
            &r, &s, &r_t, &ExactSeries::zero(), &ExactSeries::zero(), &m, &hbar, &t,
        )
        .map_err(|e| e.to_string())?;
        let lhs = r.mul(&continuity_residual(&state)).scale_rational(&int(2));
        if !lhs.sub(&transport).is_zero() {
            return Err(format!("case {i}: 2R * residual differs from classical transport"));
        }
    }
    Ok("Q_1 = -hbar^2 R''/(2mR) and 2R * continuity = d_t(R^2) + (R^2 S')'/m on 100 cases".into())
}

fn c11_cli() -> Verdict {
    let invocations: [&[&str]; 3] = [
        &["deriv", "--alpha", "1/2", "--expr", "x^(3/2)+2*x"],
        &["check", "leibnitz", "--cases", "500", "--seed", "42"],
        &["qpot", "--alpha", "1", "--R", "1+x^2", "--Dalpha", "1/2", "--hbar", "1", "--trunc", "12", "--grid", "0.1:0.9:0.1"],
    ];
    let goldens = [
        include_str!("golden/deriv.json"),
        include_str!("golden/check_leibnitz.txt"),
        include_str!("golden/qpot.csv"),
    ];
    for (args, golden) in invocations.iter().zip(goldens) {
        let call = || run(std::iter::once("alphacalc").chain(args.iter().copied()));
        let (a, b) = (call(), call());
        if a.code != 0 || a.stdout != b.stdout || a.stdout != golden {
            return Err(format!("{args:?} not byte-identical to its golden output"));
        }
    }
    // at trunc 12 the tail x^12/(1+x^2) still contributes ~2e-4 at x = 1/2
    let out = run([
        "alphacalc", "qpot", "--alpha", "1", "--R", "1+x^2", "--Dalpha", "1/2", "--hbar", "1",
        "--trunc", "24", "--grid", "0.5:0.5:0.1",
    ]);
    let q: f64 = out
        .stdout
        .lines()
        .nth(1)
        .and_then(|row| row.split(',').nth(1))
        .and_then(|v| v.parse().ok())
        .ok_or("no qpot sample")?;
    if (q + 0.8).abs() > 1e-6 {
        return Err(format!("Q(1/2) = {q}"));
    }
    Ok(format!("3 goldens byte-identical; Q(1/2) = {q:.10} at trunc 24"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 leibnitz law", c1_leibnitz),
        ("2 chain rule", c2_chain),
        ("3 mixed-order commutativity", c3_commute),
        ("4 fundamental theorem", c4_fundamental),
        ("5 monomial rules", c5_monomial_rules),
        ("6 RL agreement at alpha = 1", c6_rl_classical),
        ("7 RL two-term failure", c7_rl_gap),
        ("8 alpha-exponent", c8_alpha_exp),
        ("9 derivation audit", c9_audit),
        ("10 classical limit", c10_classical_limit),
        ("11 CLI golden files", c11_cli),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    println!("{}", printed_split_note());
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
