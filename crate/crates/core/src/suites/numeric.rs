//! Dual-number evaluation against the symbolic differential and against
//! central differences.

use rand::Rng;

use crate::cdc::cdc_d;
use crate::dual::{dual_eval, fd_check, relative_error, NumericProgram};
use crate::error::Result;
use crate::polymap::PolyMap;
use crate::random::{random_map, Sampler, Shape};
use crate::report::{Checks, Comparable};
use crate::scalar::Semiring;

pub const POINTS_PER_MAP: usize = 100;
pub const SYMBOLIC_TOL: f64 = 1e-9;
pub const FD_STEP: f64 = 1e-6;
pub const FD_TOL: f64 = 1e-5;

fn sample_vec(rng: &mut Sampler, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect()
}

/// Worst errors over the sample points: (tangent vs symbolic, value vs
/// symbolic, central difference).
fn worst_errors<C: Semiring>(f: &PolyMap<C>, rng: &mut Sampler) -> Result<(f64, f64, f64)> {
    let prog = NumericProgram::from_polymap(f)?;
    let df = cdc_d(f);
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..POINTS_PER_MAP {
        let x = sample_vec(rng, f.dom());
        let v = sample_vec(rng, f.dom());
        let (value, tangent) = dual_eval(&prog, &x, &v)?;
        let ux: Vec<f64> = v.iter().chain(&x).copied().collect();
        worst.0 = worst.0.max(relative_error(&tangent, &df.eval_f64(&ux)));
        worst.1 = worst.1.max(relative_error(&value, &f.eval_f64(&x)));
        worst.2 = worst.2.max(fd_check(&prog, &x, &v, FD_STEP)?);
    }
    Ok(worst)
}

pub fn numeric_consistency<C: Semiring>(rng: &mut Sampler, shape: &Shape, max_dim: usize, instances: usize) -> Checks {
    let mut checks = Checks::new();
    for i in 0..instances {
        let dom = rng.random_range(1..=max_dim);
        let cod = rng.random_range(1..=max_dim);
        let f: PolyMap<C> = random_map(rng, dom, cod, shape);
        let inst = || format!("instance={i}, f={}", f.render());
        let worst = worst_errors(&f, rng);
        let pick = |k: usize| worst.as_ref().map(|w| [w.0, w.1, w.2][k]).map_err(Clone::clone);
        checks.within("dual-tangent-vs-symbolic", inst, pick(0), SYMBOLIC_TOL);
        checks.within("dual-value-vs-symbolic", inst, pick(1), SYMBOLIC_TOL);
        checks.within("dual-tangent-vs-central-difference", inst, pick(2), FD_TOL);
    }

    // Fixed programs with known behaviour.
    let fixed = |text: &str| NumericProgram::parse(text, Some(2));
    let square = fixed("x0^2").and_then(|p| fd_check(&p, &[3.0, 0.0], &[1.0, 0.0], FD_STEP));
    checks.within("central-difference/square", || "x0^2 at 3 along 1".into(), square, FD_TOL);
    let affine = fixed("3*x0 - 2*x1 + 1").and_then(|p| fd_check(&p, &[0.5, -1.0], &[1.0, 1.0], FD_STEP));
    checks.within("central-difference/affine", || "3*x0 - 2*x1 + 1".into(), affine, 1e-9);
    let constant = fixed("5").and_then(|p| fd_check(&p, &[0.5, -1.0], &[1.0, 1.0], FD_STEP));
    checks.within("central-difference/constant", || "5".into(), constant, 1e-15);
    checks
}
