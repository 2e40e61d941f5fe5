//! Graded free modules `S(-a_1) + ... + S(-a_r)`, their elements, and
//! homogeneous maps between them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{default_var_names, Monomial};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A graded free module over `K[x_1..x_l]`. `degrees[i]` is the internal
/// degree of the basis vector `e_i`, so `S(-a)` has a single generator of
/// degree `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeModule {
    nvars: usize,
    degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(nvars: usize, degrees: Vec<i64>) -> Arc<FreeModule> {
        Arc::new(FreeModule { nvars, degrees })
    }

    /// The ring itself, `S = S(0)`.
    pub fn ring(nvars: usize) -> Arc<FreeModule> {
        FreeModule::new(nvars, vec![0])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Graded order on terms: internal degree first, then component index
    /// (higher index is larger), then degrevlex.
    #[inline]
    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let da = a.1.degree() as i64 + self.degrees[a.0];
        let db = b.1.degree() as i64 + self.degrees[b.0];
        da.cmp(&db)
            .then(a.0.cmp(&b.0))
            .then_with(|| a.1.cmp_degrevlex(b.1))
    }

    /// Notation such as `S(-5)+S(-6)^3`.
    pub fn notation(&self) -> String {
        if self.degrees.is_empty() {
            return "0".to_string();
        }
        let mut counts: Vec<(i64, usize)> = Vec::new();
        let mut sorted = self.degrees.clone();
        sorted.sort_unstable();
        for d in sorted {
            match counts.last_mut() {
                Some((e, c)) if *e == d => *c += 1,
                _ => counts.push((d, 1)),
            }
        }
        counts
            .iter()
            .map(|&(d, c)| {
                let base = if d == 0 {
                    "S".to_string()
                } else {
                    format!("S({})", -d)
                };
                if c == 1 {
                    base
                } else {
                    format!("{base}^{c}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Element of a graded free module: a sorted list of
/// `(component, monomial, coefficient)` terms.
#[derive(Clone, PartialEq)]
pub struct ModuleElement<F> {
    terms: Vec<(usize, Monomial, F)>,
    module: Arc<FreeModule>,
}

impl<F: Field> ModuleElement<F> {
    pub fn zero(module: Arc<FreeModule>) -> Self {
        ModuleElement {
            terms: Vec::new(),
            module,
        }
    }

    /// Basis vector `e_i`.
    pub fn basis(module: Arc<FreeModule>, i: usize) -> Self {
        assert!(i < module.rank(), "component out of range");
        ModuleElement {
            terms: vec![(i, Monomial::one(), F::one())],
            module,
        }
    }

    pub fn from_terms(module: Arc<FreeModule>, mut terms: Vec<(usize, Monomial, F)>) -> Self {
        debug_assert!(terms.iter().all(|t| t.0 < module.rank()));
        terms.sort_by(|a, b| module.cmp_terms((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<(usize, Monomial, F)> = Vec::with_capacity(terms.len());
        for (k, m, c) in terms {
            match out.last_mut() {
                Some((lk, lm, lc)) if *lk == k && *lm == m => {
                    let prev = std::mem::replace(lc, F::zero());
                    *lc = prev + c;
                }
                _ => out.push((k, m, c)),
            }
        }
        out.retain(|t| !t.2.is_zero());
        ModuleElement { terms: out, module }
    }

    /// Builds an element from one polynomial per component.
    pub fn from_polys(module: Arc<FreeModule>, entries: &[Polynomial<F>]) -> Self {
        assert_eq!(entries.len(), module.rank(), "entry count must match rank");
        let terms = entries
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().iter().map(move |(m, c)| (k, *m, c.clone())))
            .collect();
        Self::from_terms(module, terms)
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn terms(&self) -> &[(usize, Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(usize, Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, F)> {
        self.terms.first()
    }

    /// Internal degree of a term: monomial degree plus the generator degree
    /// of its component.
    pub fn term_degree(&self, t: &(usize, Monomial, F)) -> i64 {
        t.1.degree() as i64 + self.module.degree(t.0)
    }

    /// Internal degree if homogeneous (`None` for zero or inhomogeneous).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let first = self.terms.first()?;
        let d = self.term_degree(first);
        self.terms
            .iter()
            .all(|t| self.term_degree(t) == d)
            .then_some(d)
    }

    /// Polynomial in component `k`.
    pub fn component(&self, k: usize) -> Polynomial<F> {
        Polynomial::from_terms(
            self.module.nvars(),
            self.terms
                .iter()
                .filter(|t| t.0 == k)
                .map(|t| (t.1, t.2.clone()))
                .collect(),
        )
    }

    pub fn components(&self) -> Vec<Polynomial<F>> {
        let mut parts: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); self.rank()];
        for (k, m, c) in &self.terms {
            parts[*k].push((*m, c.clone()));
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(self.module.nvars(), ts))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.module != other.module {
            return Err(Error::AmbientMismatch("module elements over different free modules".into()));
        }
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(self.module.clone(), t))
    }

    pub fn scale_poly(&self, p: &Polynomial<F>) -> Self {
        let mut t = Vec::with_capacity(self.terms.len() * p.len());
        for (m, c) in p.terms() {
            for (k, n, d) in &self.terms {
                t.push((*k, n.mul(m), d.mul_ref(c)));
            }
        }
        Self::from_terms(self.module.clone(), t)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .components()
            .iter()
            .map(|p| p.render(names))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<F: Field> fmt::Debug for ModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_names(self.module.nvars())))
    }
}

/// A degree-zero homogeneous map `source -> target`, stored by columns: column
/// `j` is the image of the `j`-th generator of `source`.
#[derive(Clone, PartialEq)]
pub struct HomMatrix<F> {
    source: Arc<FreeModule>,
    target: Arc<FreeModule>,
    columns: Vec<ModuleElement<F>>,
}

impl<F: Field> HomMatrix<F> {
    pub fn new(
        source: Arc<FreeModule>,
        target: Arc<FreeModule>,
        columns: Vec<ModuleElement<F>>,
    ) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        if columns.iter().any(|c| c.module() != &target) {
            return Err(Error::AmbientMismatch("column outside the target module".into()));
        }
        Ok(HomMatrix {
            source,
            target,
            columns,
        })
    }

    /// Builds a map from a dense `rows x cols` table of entries.
    pub fn from_entries(
        source: Arc<FreeModule>,
        target: Arc<FreeModule>,
        entries: &[Vec<Polynomial<F>>],
    ) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::DimensionMismatch("row count must equal target rank".into()));
        }
        let cols = source.rank();
        let columns = (0..cols)
            .map(|j| {
                let col: Vec<Polynomial<F>> = entries.iter().map(|row| row[j].clone()).collect();
                ModuleElement::from_polys(target.clone(), &col)
            })
            .collect();
        HomMatrix::new(source, target, columns)
    }

    /// The `1 x r` row map `S(-d_1)+...+S(-d_r) -> S` of homogeneous
    /// generators of an ideal. Zero polynomials get degree 0.
    pub fn row(nvars: usize, gens: &[Polynomial<F>]) -> Self {
        let target = FreeModule::ring(nvars);
        let source = FreeModule::new(
            nvars,
            gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect(),
        );
        let columns = gens
            .iter()
            .map(|g| ModuleElement::from_polys(target.clone(), std::slice::from_ref(g)))
            .collect();
        HomMatrix {
            source,
            target,
            columns,
        }
    }

    pub fn source(&self) -> &Arc<FreeModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeModule> {
        &self.target
    }

    pub fn columns(&self) -> &[ModuleElement<F>] {
        &self.columns
    }

    pub fn nvars(&self) -> usize {
        self.target.nvars()
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial<F> {
        self.columns[c].component(r)
    }

    /// Dense `rows x cols` table of entries.
    pub fn entries(&self) -> Vec<Vec<Polynomial<F>>> {
        let mut out = vec![vec![Polynomial::zero(self.nvars()); self.cols()]; self.rows()];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, p) in col.components().into_iter().enumerate() {
                out[r][c] = p;
            }
        }
        out
    }

    /// Every column is zero or homogeneous of internal degree equal to the
    /// degree of its source generator.
    pub fn is_homogeneous(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, c)| c.is_zero() || c.homogeneous_degree() == Some(self.source.degree(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &HomMatrix<F>) -> Result<HomMatrix<F>> {
        if other.target.rank() != self.source.rank() || other.target.degrees() != self.source.degrees() {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| self.apply(col))
            .collect();
        HomMatrix::new(other.source.clone(), self.target.clone(), columns)
    }

    /// Image of an element of the source.
    pub fn apply(&self, v: &ModuleElement<F>) -> ModuleElement<F> {
        let mut acc: HashMap<(usize, Monomial), F> = HashMap::new();
        for (k, m, c) in v.terms() {
            for (r, n, d) in self.columns[*k].terms() {
                let key = (*r, n.mul(m));
                let p = c.mul_ref(d);
                match acc.get_mut(&key) {
                    Some(x) => {
                        let prev = std::mem::replace(x, F::zero());
                        *x = prev + p;
                    }
                    None => {
                        acc.insert(key, p);
                    }
                }
            }
        }
        ModuleElement::from_terms(
            self.target.clone(),
            acc.into_iter().map(|((r, m), c)| (r, m, c)).collect(),
        )
    }

    /// Restricts to a subset of source generators (columns), in order.
    pub fn select_columns(&self, keep: &[usize]) -> HomMatrix<F> {
        let source = FreeModule::new(
            self.nvars(),
            keep.iter().map(|&j| self.source.degree(j)).collect(),
        );
        HomMatrix {
            source,
            target: self.target.clone(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> HomMatrix<G> {
        HomMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| {
                    ModuleElement::from_terms(
                        self.target.clone(),
                        c.terms().iter().map(|(k, m, x)| (*k, *m, f(x))).collect(),
                    )
                })
                .collect(),
        }
    }
}

impl<F: Field> fmt::Debug for HomMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars());
        writeln!(f, "{} <- {}", self.target.notation(), self.source.notation())?;
        for row in self.entries() {
            let cells: Vec<String> = row.iter().map(|p| p.render(&names)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::scalar::Rat;

    fn p(s: &str) -> Polynomial<Rat> {
        parse_poly(s, &default_var_names(2)).unwrap()
    }

    #[test]
    fn module_order_refines_internal_degree() {
        let m = FreeModule::new(2, vec![1, 3]);
        let x = Monomial::var(0);
        // x*e_0 has internal degree 2 and e_1 has degree 3
        assert_eq!(m.cmp_terms((1, &Monomial::one()), (0, &x)), Ordering::Greater);
        // same degree: component index breaks the tie
        let x2 = Monomial::new(&[2, 0]);
        let y2 = Monomial::new(&[0, 2]);
        assert_eq!(m.cmp_terms((0, &x2), (1, &Monomial::one())), Ordering::Less);
        assert_eq!(m.cmp_terms((0, &x2), (0, &y2)), Ordering::Greater);
    }

    #[test]
    fn koszul_composition_vanishes() {
        let d1 = HomMatrix::row(2, &[p("x"), p("y")]);
        let f1 = d1.source().clone();
        let f2 = FreeModule::new(2, vec![2]);
        let d2 = HomMatrix::from_entries(f2, f1, &[vec![p("-y")], vec![p("x")]]).unwrap();
        assert!(d1.is_homogeneous() && d2.is_homogeneous());
        assert!(d1.compose(&d2).unwrap().is_zero());
        assert_eq!(d1.source().notation(), "S(-1)^2");
    }
}
