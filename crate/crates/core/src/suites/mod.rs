//! Named verification suites and the registry that runs them.

pub mod bundle;
pub mod cdc;
pub mod fibration;
pub mod numeric;
pub mod objects;
pub mod tangent;

use std::time::Instant;

use crate::cartesian::PolyCartesian;
use crate::error::{Error, Result};
use crate::fibration::FibreModel;
use crate::model::PolyTangentModel;
use crate::random::{sampler, Sampler, Shape};
use crate::report::{Checks, Fault, Params, Report};
use crate::scalar::{Mode, Natural, Rational, Semiring};

/// Every registered suite, in the order the CLI lists them.
pub const SUITES: [&str; 12] = [
    "tangent-axioms",
    "cdc-axioms",
    "bundle",
    "bracket-laws",
    "interchange",
    "linearity",
    "diffobj",
    "cds",
    "derived-differential",
    "fibration",
    "monad-laws",
    "numeric-consistency",
];

/// Suites each fault can be injected into.
pub fn fault_targets(fault: Fault) -> &'static [&'static str] {
    match fault {
        Fault::IdentityFlip | Fault::DroppedZeroBlock => &["tangent-axioms", "fibration"],
        Fault::CorruptedLambda => &["bundle"],
    }
}

fn check_params(name: &str, params: &Params) -> Result<()> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    params.validate()?;
    if let Some(fault) = params.fault {
        if !fault_targets(fault).contains(&name) {
            return Err(Error::InvalidParams(format!("fault `{fault}` does not apply to suite `{name}`")));
        }
    }
    if params.context_dim.is_some() && name != "fibration" {
        return Err(Error::InvalidParams(format!("context-dim only applies to the fibration suite, not `{name}`")));
    }
    Ok(())
}

fn run_checks<C: Semiring>(name: &str, params: &Params, rng: &mut Sampler) -> Checks {
    let shape = Shape { max_degree: params.max_degree, coeff_bound: params.coeff_bound(), ..Shape::default() };
    let (dim, n) = (params.max_dim, params.instances);
    match name {
        "tangent-axioms" => tangent::tangent_axioms(&PolyTangentModel::<C>::with_fault(params.fault), rng, &shape, dim, n),
        "cdc-axioms" => cdc::cd_axioms(&PolyCartesian::<C>::symbolic(), rng, &shape, dim, n),
        "bundle" => bundle::bundle_suite::<C>(rng, &shape, dim, n, params.fault == Some(Fault::CorruptedLambda)),
        "bracket-laws" => bundle::bracket_laws::<C>(rng, &shape, dim, n.min(bundle::BRACKET_INSTANCES)),
        "interchange" => bundle::interchange::<C>(rng, &shape, dim, n),
        "linearity" => bundle::linearity::<C>(rng, &shape, dim, n),
        "diffobj" => objects::diffobj::<C>(rng, &shape, dim, n),
        "cds" => objects::cds::<C>(dim),
        "derived-differential" => objects::derived_differential::<C>(rng, &shape, dim, n),
        "fibration" => fibration::fibration_suite::<C>(
            rng,
            &shape,
            &fibration::FibrationParams { max_dim: dim, instances: n, context: params.context_dim, fault: params.fault },
        ),
        "monad-laws" => tangent::monad_laws(&PolyTangentModel::<C>::new(), rng, &shape, dim, n),
        "numeric-consistency" => numeric::numeric_consistency::<C>(rng, &shape, dim, n),
        other => unreachable!("suite `{other}` passed validation but is not dispatched"),
    }
}

/// Run a registered suite. Deterministic for fixed parameters apart from
/// the wall-time field.
pub fn run_suite(name: &str, params: &Params) -> Result<Report> {
    check_params(name, params)?;
    let started = Instant::now();
    let mut rng = sampler(params.seed);
    let checks = match params.mode {
        Mode::Rational => run_checks::<Rational>(name, params, &mut rng),
        Mode::Natural => run_checks::<Natural>(name, params, &mut rng),
    };
    Ok(checks.finish(name, params, started))
}

/// Suites that can run on a single fibre of the simple fibration.
pub const FIBRE_SUITES: [&str; 2] = ["tangent-axioms", "monad-laws"];

/// Run `tangent-axioms` or `monad-laws` on the fibre over context `context`.
/// Dimensions are capped at 2, as in the fibration suite.
pub fn run_fibre_suite(name: &str, context: usize, params: &Params) -> Result<Report> {
    if !FIBRE_SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    params.validate()?;
    if context > fibration::MAX_CONTEXT {
        return Err(Error::InvalidParams(format!("context-dim must be at most {}", fibration::MAX_CONTEXT)));
    }
    if let Some(fault) = params.fault {
        if name != "tangent-axioms" || !fault_targets(fault).contains(&name) {
            return Err(Error::InvalidParams(format!("fault `{fault}` does not apply to fibre suite `{name}`")));
        }
    }
    let started = Instant::now();
    let mut rng = sampler(params.seed);
    let shape = Shape { max_degree: params.max_degree, coeff_bound: params.coeff_bound(), ..Shape::default() };
    let (dim, n) = (params.max_dim.min(2), params.instances);
    fn go<C: Semiring>(name: &str, context: usize, fault: Option<Fault>, rng: &mut Sampler, shape: &Shape, dim: usize, n: usize) -> Checks {
        let model = FibreModel::<C>::with_fault(context, fault);
        match name {
            "tangent-axioms" => tangent::tangent_axioms(&model, rng, shape, dim, n),
            _ => tangent::monad_laws(&model, rng, shape, dim, n),
        }
    }
    let checks = match params.mode {
        Mode::Rational => go::<Rational>(name, context, params.fault, &mut rng, &shape, dim, n),
        Mode::Natural => go::<Natural>(name, context, params.fault, &mut rng, &shape, dim, n),
    };
    let recorded = Params { context_dim: Some(context), ..params.clone() };
    Ok(checks.finish(&format!("fibre/{name}"), &recorded, started))
}
