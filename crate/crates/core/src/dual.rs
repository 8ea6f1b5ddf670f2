//! Forward-mode differentiation of floating-point expression programs with
//! dual numbers, and a central-difference oracle.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::parse::{inferred_dom, parse_exprs, Expr};
use crate::polymap::PolyMap;
use crate::scalar::{Mode, Rational, Semiring};

/// `(a, a′)` with `a′` the coefficient of the infinitesimal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualNumber {
    pub primal: f64,
    pub tangent: f64,
}

impl DualNumber {
    pub fn new(primal: f64, tangent: f64) -> Self {
        DualNumber { primal, tangent }
    }

    pub fn constant(primal: f64) -> Self {
        DualNumber { primal, tangent: 0.0 }
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.primal + o.primal, self.tangent + o.tangent)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.primal - o.primal, self.tangent - o.tangent)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.primal * o.primal, self.tangent * o.primal + self.primal * o.tangent)
    }
}

impl Neg for DualNumber {
    type Output = DualNumber;
    fn neg(self) -> DualNumber {
        DualNumber::new(-self.primal, -self.tangent)
    }
}

fn rational_to_f64(c: &Rational) -> f64 {
    ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

/// One expression tree per output, over `dom` inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericProgram {
    dom: usize,
    exprs: Vec<Expr>,
}

impl NumericProgram {
    /// Parse the polynomial-map grammar; `dom = None` infers the domain.
    pub fn parse(text: &str, dom: Option<usize>) -> Result<Self> {
        let exprs = parse_exprs(text, Mode::Rational)?;
        let needed = inferred_dom(&exprs);
        let dom = match dom {
            Some(d) if d < needed => return Err(Error::IndexOutOfRange { index: needed - 1, nvars: d }),
            Some(d) => d,
            None => needed,
        };
        Ok(NumericProgram { dom, exprs })
    }

    /// The program that evaluates `f` through its canonical printed form.
    pub fn from_polymap<C: Semiring>(f: &PolyMap<C>) -> Result<Self> {
        Self::parse(&f.to_string(), Some(f.dom()))
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.exprs.len()
    }

    fn check_len(&self, v: &[f64], what: &str) -> Result<()> {
        if v.len() != self.dom {
            return Err(crate::error::dim_mismatch(format!("{what} has length {}, program expects {}", v.len(), self.dom)));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check_len(point, "point")?;
        let out: Vec<f64> = self.exprs.iter().map(|e| e.eval(point, &rational_to_f64)).collect();
        finite(&out, "value")?;
        Ok(out)
    }
}

fn finite(v: &[f64], what: &str) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("{what} component {i} is {}", v[i]))),
        None => Ok(()),
    }
}

/// `(f(x), J_f(x)·v)` by forward-mode evaluation.
pub fn dual_eval(prog: &NumericProgram, point: &[f64], direction: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    prog.check_len(point, "point")?;
    prog.check_len(direction, "direction")?;
    let x: Vec<DualNumber> = point.iter().zip(direction).map(|(&p, &d)| DualNumber::new(p, d)).collect();
    let konst = |c: &Rational| DualNumber::constant(rational_to_f64(c));
    let (values, tangents): (Vec<f64>, Vec<f64>) = prog
        .exprs
        .iter()
        .map(|e| {
            let d = e.eval(&x, &konst);
            (d.primal, d.tangent)
        })
        .unzip();
    finite(&values, "value")?;
    finite(&tangents, "tangent")?;
    Ok((values, tangents))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖a − b‖ / max(1, ‖b‖)`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&diff) / norm(b).max(1.0)
}

/// Distance between the dual tangent and the central difference
/// `(f(x + h v) − f(x − h v)) / 2h`, relative to `max(1, ‖dual tangent‖)`.
pub fn fd_check(prog: &NumericProgram, point: &[f64], direction: &[f64], h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidParams(format!("step must be positive, got {h}")));
    }
    let (_, tangent) = dual_eval(prog, point, direction)?;
    let shifted = |s: f64| -> Vec<f64> { point.iter().zip(direction).map(|(p, d)| p + s * h * d).collect() };
    let plus = prog.eval(&shifted(1.0))?;
    let minus = prog.eval(&shifted(-1.0))?;
    let central: Vec<f64> = plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect();
    finite(&central, "central difference")?;
    Ok(relative_error(&central, &tangent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::cdc_d;
    use crate::parse::parse_polymap;

    #[test]
    fn square_at_three() {
        let p = NumericProgram::parse("x0^2", None).unwrap();
        assert_eq!(dual_eval(&p, &[3.0], &[1.0]).unwrap(), (vec![9.0], vec![6.0]));
        assert_eq!(dual_eval(&p, &[3.0], &[0.0]).unwrap().1, vec![0.0]);
        assert!(fd_check(&p, &[3.0], &[1.0], 1e-6).unwrap() <= 1e-5);
    }

    #[test]
    fn constants_and_affine_maps() {
        let c = NumericProgram::parse("7/2", Some(2)).unwrap();
        assert_eq!(dual_eval(&c, &[1.0, 2.0], &[5.0, -1.0]).unwrap().1, vec![0.0]);
        assert!(fd_check(&c, &[1.0, 2.0], &[5.0, -1.0], 1e-6).unwrap() <= 1e-15);
        let a = NumericProgram::parse("3*x0 - x1 + 2; x1", None).unwrap();
        assert!(fd_check(&a, &[0.5, -1.5], &[1.0, 2.0], 1e-6).unwrap() <= 1e-9);
    }

    #[test]
    fn agrees_with_symbolic_differential() {
        let text = "x0^2*x1 - 3*x1^3 + 1; x0*x1";
        let f = parse_polymap::<Rational>(text, None).unwrap();
        let prog = NumericProgram::parse(text, None).unwrap();
        let (pt, dir) = ([1.25, -0.5], [0.3, 2.0]);
        let (_, tangent) = dual_eval(&prog, &pt, &dir).unwrap();
        let mut ux = dir.to_vec();
        ux.extend(pt);
        let symbolic = cdc_d(&f).eval_f64(&ux);
        assert!(relative_error(&tangent, &symbolic) <= 1e-12);
    }

    #[test]
    fn overflow_is_reported() {
        let p = NumericProgram::parse("x0^6*x0^6", None).unwrap();
        assert!(matches!(dual_eval(&p, &[1e200], &[1.0]), Err(Error::NonFinite(_))));
        assert!(matches!(fd_check(&p, &[1.0], &[1.0], 0.0), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let p = NumericProgram::parse("x0 + x1", None).unwrap();
        assert!(dual_eval(&p, &[1.0], &[1.0]).is_err());
    }
}
