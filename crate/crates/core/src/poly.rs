//! Exact sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Semiring;

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared lexicographically. Larger monomials print first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with coefficients in `C`.
///
/// Terms are kept canonical (no zero coefficients, one entry per exponent
/// vector), so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Semiring> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), C::one());
        Ok(p)
    }

    /// Build from arbitrary (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    e.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, e: &[u32]) -> C {
        self.terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// If this polynomial is a single variable with coefficient one, its index.
    pub fn as_variable(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !c.is_one() || m.degree() != 1 {
            return None;
        }
        m.0.iter().position(|&e| e == 1)
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_same(&self, other: &Poly<C>, op: &str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly<C>) -> Result<Self> {
        self.check_same(other, "poly_add")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly<C>) -> Result<Self> {
        self.check_same(other, "poly_mul")?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly<C>) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }

    /// Additive inverse; `None` in a semiring without negatives (unless zero).
    pub fn neg(&self) -> Option<Self> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.negate()?);
        }
        Some(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.mul(&C::from_u64(e as u64)));
        }
        Ok(out)
    }

    /// Rename variables: variable `i` becomes variable `map[i]` of a
    /// `new_nvars`-variable ring.
    pub fn reindex(&self, new_nvars: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "reindex map of length {} for {} variables",
                map.len(),
                self.nvars
            )));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= new_nvars) {
            return Err(Error::IndexOutOfRange { index: bad, nvars: new_nvars });
        }
        let mut out = Poly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitute `args[i]` for variable `i`. All arguments share one ring.
    pub fn substitute(&self, args: &[Poly<C>], target_nvars: usize) -> Result<Self> {
        if args.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "substitution of {} arguments into {} variables",
                args.len(),
                self.nvars
            )));
        }
        if let Some(a) = args.iter().find(|a| a.nvars != target_nvars) {
            return Err(Error::DimensionMismatch(format!(
                "substitution argument in {} variables, expected {target_nvars}",
                a.nvars
            )));
        }
        Ok(self.substitute_unchecked(args, target_nvars))
    }

    pub(crate) fn substitute_unchecked(&self, args: &[Poly<C>], target_nvars: usize) -> Self {
        // Fast path: every argument is a single term.
        if args.iter().all(|a| a.terms.len() <= 1) {
            let mut out = Poly::zero(target_nvars);
            let singles: Vec<Option<(&Monomial, &C)>> =
                args.iter().map(|a| a.terms.iter().next()).collect();
            'terms: for (m, c) in &self.terms {
                let mut mono = Monomial::one(target_nvars);
                let mut coeff = c.clone();
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    match singles[i] {
                        None => continue 'terms,
                        Some((am, ac)) => {
                            for _ in 0..e {
                                mono = mono.mul(am);
                                coeff = coeff.mul(ac);
                            }
                        }
                    }
                }
                out.add_term(mono, coeff);
            }
            return out;
        }

        let mut powers: Vec<Vec<Poly<C>>> = args.iter().map(|_| Vec::new()).collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Poly::one(target_nvars));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(&args[i]);
                    cache.push(next);
                }
                acc = acc.mul_unchecked(&cache[e as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Evaluate at a real point.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(x)
                    .fold(c.to_f64(), |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Render with custom variable names and factor order. `factor_order`
    /// lists variable indices in the order their factors are printed.
    pub fn render_named(&self, name: &dyn Fn(usize) -> String, factor_order: &[usize]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.negate().expect("negative scalar has a negation") } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            for &v in factor_order {
                match m.0[v] {
                    0 => {}
                    1 => factors.push(name(v)),
                    e => factors.push(format!("{}^{e}", name(v))),
                }
            }
            let body = if factors.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{abs}*{}", factors.join("*"))
            };
            match (idx, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl<C: Semiring> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<usize> = (0..self.nvars).collect();
        f.write_str(&self.render_named(&|i| format!("x{i}"), &order))
    }
}
