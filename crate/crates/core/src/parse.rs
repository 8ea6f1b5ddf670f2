//! Text grammar for polynomial maps.
//!
//! ```text
//! map    := "" | expr (";" expr)*
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := "x" integer | integer ("/" integer)? | "(" expr ")"
//! ```
//!
//! In natural mode `-` and `/` are semiring violations.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::scalar::{Mode, Rational, Semiring};

/// Parsed expression tree, shared by the exact and the floating-point evaluators.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    Const(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
        }
    }

    pub fn to_poly<C: Semiring>(&self, nvars: usize) -> Result<Poly<C>> {
        let no_negatives = || Error::SemiringViolation {
            position: 0,
            message: "subtraction in a semiring without negatives".into(),
        };
        Ok(match self {
            Expr::Var(i) => Poly::var(nvars, *i)?,
            Expr::Const(c) => Poly::constant(
                nvars,
                C::from_rational(c).ok_or_else(|| Error::SemiringViolation {
                    position: 0,
                    message: format!("literal {c} is not in the scalar semiring"),
                })?,
            ),
            Expr::Add(a, b) => a.to_poly::<C>(nvars)?.add(&b.to_poly(nvars)?)?,
            Expr::Sub(a, b) => {
                let nb = b.to_poly::<C>(nvars)?.neg().ok_or_else(no_negatives)?;
                a.to_poly::<C>(nvars)?.add(&nb)?
            }
            Expr::Mul(a, b) => a.to_poly::<C>(nvars)?.mul(&b.to_poly(nvars)?)?,
            Expr::Neg(a) => a.to_poly::<C>(nvars)?.neg().ok_or_else(no_negatives)?,
            Expr::Pow(a, k) => a.to_poly::<C>(nvars)?.pow(*k),
        })
    }

    pub fn eval<T>(&self, x: &[T], konst: &dyn Fn(&Rational) -> T) -> T
    where
        T: Clone
            + std::ops::Add<Output = T>
            + std::ops::Sub<Output = T>
            + std::ops::Mul<Output = T>
            + std::ops::Neg<Output = T>,
    {
        match self {
            Expr::Var(i) => x[*i].clone(),
            Expr::Const(c) => konst(c),
            Expr::Add(a, b) => a.eval(x, konst) + b.eval(x, konst),
            Expr::Sub(a, b) => a.eval(x, konst) - b.eval(x, konst),
            Expr::Mul(a, b) => a.eval(x, konst) * b.eval(x, konst),
            Expr::Neg(a) => -a.eval(x, konst),
            Expr::Pow(a, k) => {
                let base = a.eval(x, konst);
                let mut acc = konst(&Rational::from_integer(1.into()));
                for _ in 0..*k {
                    acc = acc * base.clone();
                }
                acc
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(usize),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Semi,
}

fn tokenize(text: &str, mode: Mode) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let ch = bytes[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => {
                if mode == Mode::Natural {
                    return Err(Error::SemiringViolation {
                        position: i,
                        message: "`-` is not available over the naturals".into(),
                    });
                }
                Tok::Minus
            }
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => {
                if mode == Mode::Natural {
                    return Err(Error::SemiringViolation {
                        position: i,
                        message: "fractions are not available over the naturals".into(),
                    });
                }
                Tok::Slash
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b';' => Tok::Semi,
            b'x' => {
                let end = digits(i + 1);
                if end == i + 1 {
                    return Err(Error::Syntax { position: i, message: "expected a variable index after `x`".into() });
                }
                let idx = text[i + 1..end].parse::<usize>().map_err(|_| Error::Syntax {
                    position: i,
                    message: "variable index too large".into(),
                })?;
                out.push((i, Tok::Var(idx)));
                i = end;
                continue;
            }
            b'0'..=b'9' => {
                let end = digits(i);
                let n: BigInt = text[i..end].parse().expect("digits parse");
                out.push((i, Tok::Int(n)));
                i = end;
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.here(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let k: u32 = n.try_into().map_err(|_| Error::Syntax {
                        position: self.here(),
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Expr::Var(i))
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Expr::Const(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected a denominator"),
                    }
                } else {
                    Ok(Expr::Const(Rational::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a variable, literal or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `;`-separated component expressions. Empty text yields no components.
pub fn parse_exprs(text: &str, mode: Mode) -> Result<Vec<Expr>> {
    let toks = tokenize(text, mode)?;
    if toks.is_empty() {
        return Ok(Vec::new());
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let mut out = vec![p.expr()?];
    while p.pos < p.toks.len() {
        if p.peek() != Some(&Tok::Semi) {
            return p.err("expected `;`, an operator, or end of input");
        }
        p.pos += 1;
        out.push(p.expr()?);
    }
    Ok(out)
}

/// Smallest domain that covers every variable in `exprs`.
pub fn inferred_dom(exprs: &[Expr]) -> usize {
    exprs.iter().filter_map(Expr::max_var).max().map_or(0, |m| m + 1)
}

/// Parse a polynomial map. With `dom = None` the domain is the smallest one
/// covering all variables mentioned.
pub fn parse_polymap<C: Semiring>(text: &str, dom: Option<usize>) -> Result<PolyMap<C>> {
    let exprs = parse_exprs(text, C::MODE)?;
    let needed = inferred_dom(&exprs);
    let dom = match dom {
        Some(d) if d < needed => return Err(Error::IndexOutOfRange { index: needed - 1, nvars: d }),
        Some(d) => d,
        None => needed,
    };
    let comps = exprs.iter().map(|e| e.to_poly::<C>(dom)).collect::<Result<Vec<_>>>()?;
    PolyMap::new(dom, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Natural;

    #[test]
    fn reads_polynomial() {
        let f = parse_polymap::<Rational>("x0^2*x1 + 3", Some(2)).unwrap();
        assert_eq!(f.cod(), 1);
        assert_eq!(f.to_string(), "x0^2*x1 + 3");
    }

    #[test]
    fn reads_components() {
        let f = parse_polymap::<Rational>("x0; x0+x1", Some(2)).unwrap();
        assert_eq!(f.cod(), 2);
        assert_eq!(f.to_string(), "x0; x0 + x1");
    }

    #[test]
    fn natural_mode_rejects_minus() {
        assert!(matches!(
            parse_polymap::<Natural>("-x0", Some(1)),
            Err(Error::SemiringViolation { position: 0, .. })
        ));
        assert!(matches!(
            parse_polymap::<Natural>("x0 - 1", None),
            Err(Error::SemiringViolation { position: 3, .. })
        ));
        assert!(matches!(parse_polymap::<Natural>("1/2", None), Err(Error::SemiringViolation { .. })));
    }

    #[test]
    fn rational_literals_and_minus() {
        let f = parse_polymap::<Rational>("-x0 + 3/6 - (x1 - x1)", None).unwrap();
        assert_eq!(f.to_string(), "-x0 + 1/2");
        assert_eq!(f.dom(), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_polymap::<Rational>("x0 +", None), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_polymap::<Rational>("x0 ^ x1", None), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse_polymap::<Rational>("x0 $", None), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_polymap::<Rational>("x0;", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polymap::<Rational>("1/0", None), Err(Error::Syntax { .. })));
    }

    #[test]
    fn empty_text_is_map_to_terminal() {
        let f = parse_polymap::<Rational>("  ", Some(3)).unwrap();
        assert_eq!((f.dom(), f.cod()), (3, 0));
    }

    #[test]
    fn declared_dom_must_cover_variables() {
        assert!(matches!(
            parse_polymap::<Rational>("x2", Some(2)),
            Err(Error::IndexOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn zero_prints_and_parses() {
        let f = parse_polymap::<Rational>("x0 - x0", None).unwrap();
        assert_eq!(f.to_string(), "0");
        assert_eq!(parse_polymap::<Rational>("0", Some(1)).unwrap(), f);
    }
}
