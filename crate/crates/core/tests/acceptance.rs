//! Acceptance run: one pass/fail line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tancat::report::{Fault, Params, Report, Status};
use tancat::suites::{numeric, run_suite};
use tancat::Mode;

const MODES: [Mode; 2] = [Mode::Rational, Mode::Natural];

fn defaults(mode: Mode) -> Params {
    Params { mode, max_dim: 3, max_degree: 3, instances: 50, seed: 7, ..Params::default() }
}

/// Outcome of one criterion: `Err` carries the first problem found.
type Verdict = Result<String, String>;

fn run(suite: &str, params: &Params) -> Result<Report, String> {
    run_suite(suite, params).map_err(|e| format!("{suite}: {e}"))
}

fn all_pass(r: &Report) -> Result<(), String> {
    match r.failing().next() {
        None => Ok(()),
        Some(c) => Err(format!("{} ({}): `{}` did not pass", r.suite, r.params.mode, c.name)),
    }
}

fn require(r: &Report, name: &str, min_instances: usize) -> Result<(), String> {
    match r.check(name) {
        None => Err(format!("{}: no check `{name}`", r.suite)),
        Some(c) if c.instances < min_instances => {
            Err(format!("{}: `{name}` ran {} instances, need {min_instances}", r.suite, c.instances))
        }
        Some(_) => Ok(()),
    }
}

fn require_prefix(r: &Report, prefix: &str) -> Result<(), String> {
    if r.checks.iter().any(|c| c.name.starts_with(prefix)) {
        Ok(())
    } else {
        Err(format!("{}: no checks under `{prefix}`", r.suite))
    }
}

/// Run `suite` in both modes, require a clean pass and the named checks.
fn both_modes(suite: &str, params: impl Fn(Mode) -> Params, needed: &[(&str, usize)]) -> Result<(usize, Duration), String> {
    let started = Instant::now();
    let mut total = 0;
    for mode in MODES {
        let r = run(suite, &params(mode))?;
        all_pass(&r)?;
        for &(name, n) in needed {
            require(&r, name, n)?;
        }
        total += r.checks.len();
    }
    Ok((total, started.elapsed()))
}

fn tangent_axioms() -> Verdict {
    let needed = [
        ("coherence/flip-involution", 3),
        ("coherence/lift-flip", 3),
        ("coherence/lift-coassociative", 3),
        ("coherence/flip-braid", 3),
        ("coherence/lift-flip-square", 3),
        ("additive-bundle/associativity", 3),
        ("universality/witness-then-comparison-under-T2", 3),
        ("naturality/p", 50),
        ("naturality/zero", 50),
        ("naturality/plus", 50),
        ("naturality/lift", 50),
        ("naturality/flip", 50),
    ];
    let (n, took) = both_modes("tangent-axioms", defaults, &needed)?;
    if took > Duration::from_secs(30) {
        return Err(format!("took {took:?}, budget 30 s"));
    }
    Ok(format!("{n} checks, both modes, {} ms", took.as_millis()))
}

fn cdc_axioms() -> Verdict {
    let needed = [
        ("chain-rule", 50),
        ("zero-direction", 50),
        ("additive-in-direction", 50),
        ("differential-of-first-projection", 50),
        ("differential-of-second-projection", 50),
        ("differential-of-pairing", 50),
        ("differential-of-sum", 50),
        ("differential-of-zero", 50),
        ("second-order-linear-direction", 50),
        ("symmetric-second-differential", 50),
    ];
    let (n, _) = both_modes("cdc-axioms", defaults, &needed)?;
    Ok(format!("{n} checks, both modes"))
}

fn derived_differential() -> Verdict {
    // 9 (dom, cod) pairs up to (3, 3), 50 maps each.
    let needed = [("derived/matches-symbolic", 9 * 50), ("derived-axioms/chain-rule", 50), ("derived-axioms/symmetric-second-differential", 50)];
    let (n, _) = both_modes("derived-differential", defaults, &needed)?;
    Ok(format!("{n} checks, both modes"))
}

fn bundle() -> Verdict {
    let families = ["trivial", "standard", "tangent", "tangent-of-trivial", "tangent-of-standard", "tangent-of-tangent", "whitney"];
    let mut needed: Vec<(String, usize)> = families.iter().map(|f| (format!("{f}/within-time-budget"), 1)).collect();
    needed.push(("pullback/within-time-budget".into(), 20));
    let needed: Vec<(&str, usize)> = needed.iter().map(|(s, n)| (s.as_str(), *n)).collect();
    let (n, _) = both_modes("bundle", defaults, &needed)?;
    Ok(format!("{n} checks, both modes, every family within 5 s"))
}

fn bracket_laws() -> Verdict {
    let needed = [
        ("bracket/recovers-factor", 25),
        ("bracket/natural-in-domain", 25),
        ("bracket/natural-in-linear-maps", 25),
        ("bracket/over-base", 25),
        ("bracket/of-zero", 25),
        ("bracket/additive-through-tangent-sum", 25),
        ("bracket/additive-through-tangent-addition", 25),
        ("bracket/of-mu", 25),
        ("bracket/of-lift", 25),
        ("bracket/commutes-with-tangent", 25),
    ];
    let (n, _) = both_modes("bracket-laws", defaults, &needed)?;
    Ok(format!("{n} checks, both modes"))
}

fn linearity() -> Verdict {
    let needed = [
        ("tangent-map/linear", 1),
        ("tangent-map/additive", 1),
        ("pullback-map/linear", 1),
        ("whitney-projection/linear", 1),
        ("family/linear-iff-mu-and-zero", 1),
        ("differential-linearity/equivalent", 1),
        ("fibrewise-squaring/not-linear", 1),
    ];
    let (n, _) = both_modes("linearity", defaults, &needed)?;
    Ok(format!("{n} checks, both modes"))
}

fn cds() -> Verdict {
    let needed = [
        ("product/lift", 1),
        ("product/second-projection", 1),
        ("tangent/lift", 1),
        ("tangent/second-projection", 1),
        ("flip-identity", 1),
        ("exchange", 1),
    ];
    let (n, _) = both_modes("cds", |m| Params { max_dim: 2, ..defaults(m) }, &needed)?;
    Ok(format!("{n} checks, both modes, dims <= 2"))
}

fn fibration() -> Verdict {
    let started = Instant::now();
    let mut total = 0;
    for mode in MODES {
        let r = run("fibration", &defaults(mode))?;
        all_pass(&r)?;
        for prefix in ["composition", "simple-differential", "fibre-context-0", "fibre-context-1", "fibre-context-2", "vertical"] {
            require_prefix(&r, prefix)?;
        }
        total += r.checks.len();
    }
    Ok(format!("{total} checks, both modes, contexts 0..=2, {} ms", started.elapsed().as_millis()))
}

fn monad_laws() -> Verdict {
    let needed = [("monad/left-unit", 3), ("monad/right-unit", 3), ("monad/associativity", 3)];
    let (n, _) = both_modes("monad-laws", defaults, &needed)?;
    Ok(format!("{n} checks, both modes"))
}

fn numeric_consistency() -> Verdict {
    assert_eq!(numeric::POINTS_PER_MAP, 100);
    assert_eq!((numeric::SYMBOLIC_TOL, numeric::FD_STEP, numeric::FD_TOL), (1e-9, 1e-6, 1e-5));
    let needed = [("dual-tangent-vs-symbolic", 50), ("dual-tangent-vs-central-difference", 50), ("central-difference/square", 1)];
    let (n, _) = both_modes("numeric-consistency", defaults, &needed)?;
    Ok(format!("{n} checks, 100 points x 50 maps, tol 1e-9 / 1e-5"))
}

fn fault_injection() -> Verdict {
    let mut failing = Vec::new();
    for (fault, suite) in [
        (Fault::IdentityFlip, "tangent-axioms"),
        (Fault::DroppedZeroBlock, "tangent-axioms"),
        (Fault::IdentityFlip, "fibration"),
        (Fault::DroppedZeroBlock, "fibration"),
        (Fault::CorruptedLambda, "bundle"),
    ] {
        let params = Params { fault: Some(fault), ..defaults(Mode::Rational) };
        let r = run(suite, &params)?;
        let with_maps = r
            .failing()
            .filter(|c| c.status == Status::Fail)
            .filter(|c| c.counterexample.as_ref().is_some_and(|cx| cx.lhs.is_some() && cx.rhs.is_some()))
            .count();
        if with_maps == 0 {
            return Err(format!("{fault} on {suite}: no failing check with printed lhs/rhs"));
        }
        let again = run(suite, &params)?;
        if again.to_json_without_time() != r.to_json_without_time() {
            return Err(format!("{fault} on {suite}: reports differ between identical runs"));
        }
        failing.push(format!("{fault}@{suite}={with_maps}"));
    }
    // An identity flip is still involutive and still fixes the lift
    // (`ℓ;1 = ℓ`), so the failure has to surface in the lift-flip square.
    let r = run("tangent-axioms", &Params { fault: Some(Fault::IdentityFlip), ..defaults(Mode::Rational) })?;
    let status = |name: &str| r.check(name).map(|c| c.status);
    let expected = [
        ("coherence/flip-involution", Status::Pass),
        ("coherence/lift-flip", Status::Pass),
        ("coherence/lift-flip-square", Status::Fail),
    ];
    for (name, want) in expected {
        if status(name) != Some(want) {
            return Err(format!("identity-flip: `{name}` is {:?}, expected {want:?}", status(name)));
        }
    }
    Ok(format!("failing checks: {}", failing.join(", ")))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("tangent axioms, both modes, under 30 s", tangent_axioms),
        ("cartesian differential axioms, both modes", cdc_axioms),
        ("derived differential matches and satisfies the axioms", derived_differential),
        ("bundle constructions verify, each within 5 s", bundle),
        ("bracket laws", bracket_laws),
        ("linearity of bundle morphisms", linearity),
        ("coherent differential structure", cds),
        ("simple fibration and its fibres", fibration),
        ("tangent monad laws", monad_laws),
        ("numeric consistency of dual numbers", numeric_consistency),
        ("fault injection is detected deterministically", fault_injection),
    ];
    let mut failures = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
