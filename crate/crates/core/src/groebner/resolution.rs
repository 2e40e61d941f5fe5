//! Graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::order::TermOrder;
use super::syzygy::minimal_kernel;
use crate::algebra::{default_var_names, FreeModule, HomMatrix, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A complex `F_0 <- F_1 <- ... <- F_k` with `maps[i]: F_{i+1} -> F_i`.
#[derive(Debug, Clone)]
pub struct GradedResolution<F: Field> {
    modules: Vec<Arc<FreeModule>>,
    maps: Vec<HomMatrix<F>>,
    minimal: bool,
}

/// Resolves the cokernel of `first` by iterated minimal kernels, using
/// Schreyer orders throughout. The maps after the first are minimal
/// generators of the respective kernels.
pub fn resolve_map<F: Field>(first: HomMatrix<F>) -> Result<GradedResolution<F>> {
    if !first.is_homogeneous() {
        return Err(Error::NotHomogeneous("resolutions need a graded map".into()));
    }
    let nvars = first.nvars();
    let mut modules = vec![first.target().clone(), first.source().clone()];
    let mut order = TermOrder::graded(first.target());
    let mut maps = vec![first];
    // Hilbert's syzygy theorem bounds the length; the margin covers a
    // non-minimal first map.
    for _ in 0..=nvars + 1 {
        let last = maps.last().unwrap();
        if last.cols() == 0 {
            break;
        }
        let (k, next_order) = minimal_kernel(last, &order);
        if k.cols() == 0 {
            break;
        }
        order = next_order;
        modules.push(k.source().clone());
        maps.push(k);
    }
    Ok(GradedResolution {
        modules,
        maps,
        minimal: false,
    })
}

/// Resolution of `S/I` for homogeneous generators of `I`, not necessarily
/// minimal; see [`GradedResolution::minimalize`].
pub fn free_resolution<F: Field>(nvars: usize, gens: &[Polynomial<F>]) -> Result<GradedResolution<F>> {
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::VariableCountMismatch {
            left: nvars,
            right: g.nvars(),
        });
    }
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let gens: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    resolve_map(HomMatrix::row(nvars, &gens))
}

impl<F: Field> GradedResolution<F> {
    pub(crate) fn from_parts(modules: Vec<Arc<FreeModule>>, maps: Vec<HomMatrix<F>>, minimal: bool) -> Self {
        debug_assert_eq!(modules.len(), maps.len() + 1);
        GradedResolution {
            modules,
            maps,
            minimal,
        }
    }

    pub fn modules(&self) -> &[Arc<FreeModule>] {
        &self.modules
    }

    pub fn maps(&self) -> &[HomMatrix<F>] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.modules
            .iter()
            .rposition(|m| m.rank() > 0)
            .unwrap_or(0)
    }

    /// `∂_i ∘ ∂_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&w[1]).map_or(false, |c| c.is_zero()))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.maps.iter().all(|m| m.is_homogeneous())
    }

    /// True when no map has a nonzero constant entry.
    pub fn has_no_units(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.columns().iter().all(|c| c.terms().iter().all(|t| !t.1.is_one())))
    }

    /// Cancels unit entries until none remain; the result is a minimal
    /// resolution of the same module.
    pub fn minimalize(&self) -> (GradedResolution<F>, BettiTable) {
        let nvars = self.modules[0].nvars();
        let mut degs: Vec<Vec<i64>> = self.modules.iter().map(|m| m.degrees().to_vec()).collect();
        let mut mats: Vec<Vec<Vec<Polynomial<F>>>> = self.maps.iter().map(|m| m.entries()).collect();
        while let Some((i, r, c)) = find_unit(&mats) {
            cancel(&mut mats, &mut degs, i, r, c);
        }
        // drop trailing zero modules
        while degs.len() > 1 && degs.last().unwrap().is_empty() {
            degs.pop();
            mats.pop();
        }
        let modules: Vec<Arc<FreeModule>> = degs.into_iter().map(|d| FreeModule::new(nvars, d)).collect();
        let maps = mats
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let rows = if e.is_empty() {
                    vec![Vec::new(); modules[i].rank()]
                } else {
                    e.clone()
                };
                HomMatrix::from_entries(modules[i + 1].clone(), modules[i].clone(), &rows)
                    .expect("dimensions are tracked")
            })
            .collect();
        let res = GradedResolution {
            modules,
            maps,
            minimal: true,
        };
        let betti = BettiTable::from_modules(&res.modules);
        (res, betti)
    }

    /// Betti table; meaningful only for a minimal resolution.
    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    /// Notation `0 -> F_k -> ... -> F_0`.
    pub fn notation(&self) -> String {
        let mut parts = vec!["0".to_string()];
        for m in self.modules[..=self.length()].iter().rev() {
            parts.push(m.notation());
        }
        parts.join(" -> ")
    }

    /// JSON with explicit shift lists and matrices in canonical text.
    pub fn to_json(&self, names: Option<&[String]>) -> serde_json::Value {
        let nvars = self.modules[0].nvars();
        let default = default_var_names(nvars);
        let names = names.unwrap_or(&default);
        serde_json::json!({
            "minimal": self.minimal,
            "shifts": self.modules.iter().map(|m| m.degrees().to_vec()).collect::<Vec<_>>(),
            "maps": self.maps.iter().map(|m| {
                m.entries().iter().map(|row| row.iter().map(|p| p.render(names)).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

fn find_unit<F: Field>(mats: &[Vec<Vec<Polynomial<F>>>]) -> Option<(usize, usize, usize)> {
    for (i, m) in mats.iter().enumerate() {
        for (r, row) in m.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_constant() && !e.is_zero() {
                    return Some((i, r, c));
                }
            }
        }
    }
    None
}

/// Splits off the trivial summand `S(-a) -> S(-a)` at the unit entry
/// `(r, c)` of `mats[i]`.
fn cancel<F: Field>(
    mats: &mut [Vec<Vec<Polynomial<F>>>],
    degs: &mut [Vec<i64>],
    i: usize,
    r: usize,
    c: usize,
) {
    let a = &mats[i];
    let u_inv = a[r][c].lead_coeff().unwrap().inv();
    let pivot_row: Vec<Polynomial<F>> = a[r].iter().map(|p| p.scale(&u_inv)).collect();
    let mut next: Vec<Vec<Polynomial<F>>> = Vec::with_capacity(a.len() - 1);
    for (r2, row) in a.iter().enumerate() {
        if r2 == r {
            continue;
        }
        let f = &row[c];
        let new_row = row
            .iter()
            .enumerate()
            .filter(|(c2, _)| *c2 != c)
            .map(|(c2, e)| if f.is_zero() { e.clone() } else { e - &(f * &pivot_row[c2]) })
            .collect();
        next.push(new_row);
    }
    mats[i] = next;
    degs[i].remove(r);
    degs[i + 1].remove(c);
    if let Some(up) = mats.get_mut(i + 1) {
        if !up.is_empty() {
            up.remove(c);
        }
    }
    if i > 0 {
        for row in mats[i - 1].iter_mut() {
            row.remove(r);
        }
    }
}

/// One graded Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub multiplicity: usize,
}

/// Graded Betti numbers `b_{i,j}` of a minimal resolution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_modules(modules: &[Arc<FreeModule>]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, m) in modules.iter().enumerate() {
            for &d in m.degrees() {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn from_entries(list: &[BettiEntry]) -> Self {
        let mut entries = BTreeMap::new();
        for e in list.iter().filter(|e| e.multiplicity > 0) {
            *entries.entry((e.i, e.j)).or_insert(0) += e.multiplicity;
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, &m)| m).sum()
    }

    /// Total Betti numbers `b_0, ..., b_p`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.projdim()).map(|i| self.total(i)).collect()
    }

    /// Shifts of `F_i` with multiplicity, ascending.
    pub fn shifts(&self, i: usize) -> Vec<i64> {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .flat_map(|(&(_, j), &m)| std::iter::repeat(j).take(m))
            .collect()
    }

    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(&(i, j), &multiplicity)| BettiEntry { i, j, multiplicity })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.entries()).expect("plain data")
    }

    /// `0 -> S(-7) -> S(-5)+S(-6)^3 -> S(-4)^4 -> S`.
    pub fn notation(&self) -> String {
        let mut parts = vec!["0".to_string()];
        for i in (0..=self.projdim()).rev() {
            parts.push(FreeModule::new(0, self.shifts(i)).notation());
        }
        parts.join(" -> ")
    }

    /// Table with column `i` and row `j - i`, as printed by Macaulay2.
    pub fn grid(&self) -> String {
        let p = self.projdim();
        let rows: std::collections::BTreeSet<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = self.totals().iter().map(|t| t.to_string().len()).max().unwrap_or(1) + 1;
        let mut out = format!("{:>7}", "");
        for i in 0..=p {
            out.push_str(&format!("{i:>width$}"));
        }
        out.push_str(&format!("\n{:>7}", "total:"));
        for i in 0..=p {
            out.push_str(&format!("{:>width$}", self.total(i)));
        }
        for r in rows {
            out.push_str(&format!("\n{:>7}", format!("{r}:")));
            for i in 0..=p {
                out.push_str(&format!("{:>width$}", cell(self.get(i, r + i as i64))));
            }
        }
        out
    }
}

/// `(projdim, depth)` via Auslander–Buchsbaum, `l` the number of variables.
pub fn projdim_and_depth(b: &BettiTable, l: usize) -> (usize, i64) {
    let p = b.projdim();
    (p, l as i64 - p as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::scalar::Rat;

    fn gens(l: usize, s: &[&str]) -> Vec<Polynomial<Rat>> {
        let names = default_var_names(l);
        s.iter().map(|x| parse_poly(x, &names).unwrap()).collect()
    }

    #[test]
    fn koszul_resolution() {
        let r = free_resolution(2, &gens(2, &["x", "y"])).unwrap();
        assert!(r.is_complex());
        let (m, b) = r.minimalize();
        assert_eq!(b.notation(), "0 -> S(-2) -> S(-1)^2 -> S");
        assert_eq!(projdim_and_depth(&b, 2), (2, 0));
        assert!(m.has_no_units());
        // already minimal: unchanged
        let (_, b2) = m.minimalize();
        assert_eq!(b, b2);
    }

    #[test]
    fn cancels_padded_identity() {
        // S/<x, y> presented with a redundant generator x + y
        let r = free_resolution(2, &gens(2, &["x", "y", "x + y"])).unwrap();
        assert!(r.is_complex());
        let (m, b) = r.minimalize();
        assert!(m.is_complex());
        assert_eq!(b.totals(), vec![1, 2, 1]);
    }

    #[test]
    fn boolean_jacobian() {
        let q = gens(4, &["x*y*z*t"])[0].clone();
        let r = free_resolution(4, &q.gradient()).unwrap();
        let (m, b) = r.minimalize();
        assert!(m.is_complex());
        assert_eq!(b.totals(), vec![1, 4, 3]);
        assert_eq!(projdim_and_depth(&b, 4), (2, 2));
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(free_resolution(2, &gens(2, &["x + y^2"])).is_err());
    }

    #[test]
    fn betti_json_roundtrip() {
        let r = free_resolution(2, &gens(2, &["x", "y"])).unwrap();
        let b = r.minimalize().1;
        let back: Vec<BettiEntry> = serde_json::from_value(b.to_json()).unwrap();
        assert!(b.grid().contains("total:"));
        assert_eq!(BettiTable::from_entries(&back), b);
    }
}
