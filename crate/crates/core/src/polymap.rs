//! Polynomial maps between finite powers of the line.

use std::fmt;

use crate::error::{dim_mismatch, Error, Result};
use crate::poly::Poly;
use crate::scalar::Semiring;

/// A morphism `dom -> cod`: one polynomial in `dom` variables per output.
///
/// Composition is written in diagrammatic order: `f.compose(&g)` is "f then g".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMap<C> {
    dom: usize,
    comps: Vec<Poly<C>>,
}

impl<C: Semiring> PolyMap<C> {
    pub fn new(dom: usize, comps: Vec<Poly<C>>) -> Result<Self> {
        if let Some(c) = comps.iter().find(|c| c.nvars() != dom) {
            return Err(dim_mismatch(format!(
                "component in {} variables for a map with domain {dom}",
                c.nvars()
            )));
        }
        Ok(PolyMap { dom, comps })
    }

    pub(crate) fn from_parts(dom: usize, comps: Vec<Poly<C>>) -> Self {
        debug_assert!(comps.iter().all(|c| c.nvars() == dom));
        PolyMap { dom, comps }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly<C>] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly<C>> {
        self.comps
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn identity(n: usize) -> Self {
        Self::select_unchecked(n, &(0..n).collect::<Vec<_>>())
    }

    /// The map picking coordinates `idx` (in order, repeats allowed).
    pub fn select(dom: usize, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= dom) {
            return Err(Error::IndexOutOfRange { index: bad, nvars: dom });
        }
        Ok(Self::select_unchecked(dom, idx))
    }

    pub(crate) fn select_unchecked(dom: usize, idx: &[usize]) -> Self {
        let comps = idx.iter().map(|&i| Poly::var(dom, i).expect("index checked")).collect();
        PolyMap { dom, comps }
    }

    /// Projection onto the coordinate slice `[lo, hi)`.
    pub fn proj(dom: usize, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || hi > dom {
            return Err(dim_mismatch(format!("slice [{lo},{hi}) of a {dom}-dimensional object")));
        }
        Ok(Self::select_unchecked(dom, &(lo..hi).collect::<Vec<_>>()))
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        PolyMap { dom, comps: vec![Poly::zero(dom); cod] }
    }

    pub fn constant(dom: usize, values: &[C]) -> Self {
        PolyMap { dom, comps: values.iter().map(|v| Poly::constant(dom, v.clone())).collect() }
    }

    /// `self` then `g`.
    pub fn compose(&self, g: &PolyMap<C>) -> Result<Self> {
        if self.cod() != g.dom {
            return Err(dim_mismatch(format!(
                "compose: codomain {} does not match domain {}",
                self.cod(),
                g.dom
            )));
        }
        if let Some(idx) = g.as_selection() {
            return Ok(PolyMap { dom: self.dom, comps: idx.iter().map(|&i| self.comps[i].clone()).collect() });
        }
        if let Some(idx) = self.as_selection() {
            let comps = g
                .comps
                .iter()
                .map(|c| c.reindex(self.dom, &idx))
                .collect::<Result<Vec<_>>>()?;
            return Ok(PolyMap { dom: self.dom, comps });
        }
        let comps = g
            .comps
            .iter()
            .map(|c| c.substitute_unchecked(&self.comps, self.dom))
            .collect();
        Ok(PolyMap { dom: self.dom, comps })
    }

    /// `⟨self, g⟩`: concatenate outputs.
    pub fn pair(&self, g: &PolyMap<C>) -> Result<Self> {
        Self::concat(&[self, g])
    }

    pub fn concat(parts: &[&PolyMap<C>]) -> Result<Self> {
        let dom = match parts.first() {
            Some(p) => p.dom,
            None => return Err(dim_mismatch("pairing of an empty family has no domain")),
        };
        let mut comps = Vec::new();
        for p in parts {
            if p.dom != dom {
                return Err(dim_mismatch(format!("pair: domains {} and {}", dom, p.dom)));
            }
            comps.extend(p.comps.iter().cloned());
        }
        Ok(PolyMap { dom, comps })
    }

    /// `self × g` acting on the concatenated domain.
    pub fn product(&self, g: &PolyMap<C>) -> Self {
        let dom = self.dom + g.dom;
        let left: Vec<usize> = (0..self.dom).collect();
        let right: Vec<usize> = (self.dom..dom).collect();
        let mut comps: Vec<Poly<C>> = self
            .comps
            .iter()
            .map(|c| c.reindex(dom, &left).expect("in range"))
            .collect();
        comps.extend(g.comps.iter().map(|c| c.reindex(dom, &right).expect("in range")));
        PolyMap { dom, comps }
    }

    /// Pointwise sum (the left-additive structure).
    pub fn add(&self, g: &PolyMap<C>) -> Result<Self> {
        if self.dom != g.dom || self.cod() != g.cod() {
            return Err(dim_mismatch(format!(
                "add: {}->{} vs {}->{}",
                self.dom,
                self.cod(),
                g.dom,
                g.cod()
            )));
        }
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(PolyMap { dom: self.dom, comps })
    }

    /// `self - g`, when the scalars have negatives.
    pub fn sub(&self, g: &PolyMap<C>) -> Option<Self> {
        if self.dom != g.dom || self.cod() != g.cod() {
            return None;
        }
        let comps = self
            .comps
            .iter()
            .zip(&g.comps)
            .map(|(a, b)| b.neg().and_then(|nb| a.add(&nb).ok()))
            .collect::<Option<_>>()?;
        Some(PolyMap { dom: self.dom, comps })
    }

    /// The index list if every component is a bare variable.
    pub fn as_selection(&self) -> Option<Vec<usize>> {
        self.comps.iter().map(Poly::as_variable).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod() && self.as_selection().is_some_and(|s| s.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// Rename input variables: variable `i` becomes `map[i]` of `new_dom`.
    pub fn reindex(&self, new_dom: usize, map: &[usize]) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.reindex(new_dom, map)).collect::<Result<_>>()?;
        Ok(PolyMap { dom: new_dom, comps })
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|c| c.eval_f64(x)).collect()
    }

    /// Coefficient matrix when every component is a homogeneous linear form
    /// in the variables `vars`; `None` otherwise.
    pub fn linear_matrix(&self, vars: &[usize]) -> Option<Vec<Vec<C>>> {
        let mut rows = Vec::with_capacity(self.cod());
        for c in &self.comps {
            let mut row = vec![C::zero(); vars.len()];
            for (m, coeff) in c.terms() {
                if m.degree() != 1 {
                    return None;
                }
                let v = m.0.iter().position(|&e| e == 1)?;
                let col = vars.iter().position(|&w| w == v)?;
                row[col] = coeff.clone();
            }
            rows.push(row);
        }
        Some(rows)
    }

    /// Build the linear map `dom -> rows.len()` reading variables `vars`.
    pub fn from_matrix(dom: usize, vars: &[usize], rows: &[Vec<C>]) -> Result<Self> {
        let mut comps = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != vars.len() {
                return Err(dim_mismatch("matrix row length does not match variable list"));
            }
            let mut acc = Poly::zero(dom);
            for (coeff, &v) in row.iter().zip(vars) {
                acc = acc.add(&Poly::var(dom, v)?.scale(coeff))?;
            }
            comps.push(acc);
        }
        Ok(PolyMap { dom, comps })
    }

    pub fn render_named(&self, name: &dyn Fn(usize) -> String, factor_order: &[usize]) -> String {
        self.comps
            .iter()
            .map(|c| c.render_named(name, factor_order))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl<C: Semiring> fmt::Display for PolyMap<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<usize> = (0..self.dom).collect();
        f.write_str(&self.render_named(&|i| format!("x{i}"), &order))
    }
}
