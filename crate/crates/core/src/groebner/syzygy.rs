//! Syzygies by Schreyer's construction and minimal generators of graded
//! submodules.

use std::sync::Arc;

use super::basis::{normalize, s_vector, sub_scaled, two_way_membership, Engine, Term};
use super::order::TermOrder;
use crate::algebra::{FreeModule, HomMatrix, ModuleElement, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Terms of a module element sorted for `order`.
pub(crate) fn sorted_terms<F: Field>(v: &ModuleElement<F>, order: &TermOrder) -> Vec<Term<F>> {
    normalize(order, v.terms().to_vec())
}

/// Leading terms of the columns of `m` for the order `order` on its target.
pub(crate) fn column_leads<F: Field>(
    m: &HomMatrix<F>,
    order: &TermOrder,
) -> Vec<Option<(usize, Monomial)>> {
    m.columns()
        .iter()
        .map(|c| sorted_terms(c, order).first().map(|t| (t.0, t.1)))
        .collect()
}

/// `p * v` for a polynomial given as `(monomial, coefficient)` terms.
fn poly_times<F: Field>(order: &TermOrder, p: &[(Monomial, F)], v: &[Term<F>]) -> Vec<Term<F>> {
    let mut acc: Vec<Term<F>> = Vec::new();
    for (m, c) in p {
        acc = sub_scaled(order, &acc, &-c.clone(), m, v);
    }
    acc
}

/// Generators of the kernel of `m`, as vectors in its source sorted for
/// `source_order`. `target_order` must be the order used on the target and
/// `source_order` the Schreyer order it induces.
pub(crate) fn kernel_vectors<F: Field>(
    m: &HomMatrix<F>,
    target_order: &Arc<TermOrder>,
    source_order: &Arc<TermOrder>,
) -> Vec<Vec<Term<F>>> {
    let one = F::one();
    let unit = |j: usize| vec![(j, Monomial::one(), one.clone())];
    let mut out: Vec<Vec<Term<F>>> = Vec::new();
    let mut engine = Engine::new(target_order.clone(), Some(source_order.clone()));
    let mut columns: Vec<(usize, Vec<Term<F>>)> = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if c.is_zero() {
            out.push(unit(j));
        } else {
            let v = sorted_terms(c, target_order);
            engine.add_generator(v.clone(), Some(unit(j)));
            columns.push((j, v));
        }
    }
    let basis = engine.into_reduced();
    debug_assert!(
        {
            let gens: Vec<Vec<Term<F>>> = m.columns().iter().map(|c| sorted_terms(c, target_order)).collect();
            two_way_membership(target_order, &gens, &basis)
        },
        "Gröbner basis fails two-way membership"
    );
    let mut reducer = Engine::new(target_order.clone(), Some(source_order.clone()));
    for (v, t) in &basis {
        reducer.insert_reduced(v.clone(), t.clone());
    }
    let ring_case = target_order.rank() == 1;
    // Schreyer syzygies of the basis, one per minimal pair
    for j in 0..basis.len() {
        let (cj, lj) = (basis[j].0[0].0, basis[j].0[0].1);
        let cands: Vec<(usize, Monomial)> = (0..j)
            .filter(|&i| basis[i].0[0].0 == cj)
            .map(|i| (i, basis[i].0[0].1.lcm(&lj)))
            .collect();
        for (pos, (i, l)) in cands.iter().enumerate() {
            let q = lj.quotient_of(l);
            let redundant = cands.iter().enumerate().any(|(p2, (_, l2))| {
                let q2 = lj.quotient_of(l2);
                q2.divides(&q) && (q2 != q || p2 < pos)
            });
            if redundant {
                continue;
            }
            let (gi, ti) = (&basis[*i].0, basis[*i].1.as_ref().unwrap());
            let (gj, tj) = (&basis[j].0, basis[j].1.as_ref().unwrap());
            let li = basis[*i].0[0].1;
            let syz = if ring_case && li.is_coprime(&lj) {
                let pj: Vec<(Monomial, F)> = gj.iter().map(|(_, m, c)| (*m, c.clone())).collect();
                let pi: Vec<(Monomial, F)> = gi.iter().map(|(_, m, c)| (*m, c.clone())).collect();
                let a = poly_times(source_order, &pj, ti);
                let b = poly_times(source_order, &pi, tj);
                sub_scaled(source_order, &a, &one, &Monomial::one(), &b)
            } else {
                let mi = li.quotient_of(l);
                let mj = lj.quotient_of(l);
                let (ci, cj) = (&gi[0].2, &gj[0].2);
                let s = s_vector(target_order, gi, ci, &mi, gj, cj, &mj);
                let st = s_vector(source_order, ti, ci, &mi, tj, cj, &mj);
                let (r, t) = reducer.reduce(s, Some(st));
                debug_assert!(r.is_empty(), "S-vector of a Gröbner basis must reduce to zero");
                t.unwrap()
            };
            if !syz.is_empty() {
                out.push(syz);
            }
        }
    }
    // each generator minus its expression through the basis
    for (j, v) in columns {
        let (r, t) = reducer.reduce(v, Some(unit(j)));
        debug_assert!(r.is_empty());
        let t = t.unwrap();
        if !t.is_empty() {
            out.push(t);
        }
    }
    out
}

/// Minimal homogeneous generators of the submodule spanned by `cands`,
/// picked from `cands` in order of degree.
pub(crate) fn minimal_generators<F: Field>(
    cands: Vec<Vec<Term<F>>>,
    order: &Arc<TermOrder>,
) -> Vec<Vec<Term<F>>> {
    let mut cands: Vec<(i64, Vec<Term<F>>)> = cands
        .into_iter()
        .filter(|v| !v.is_empty())
        .map(|v| (order.term_degree(v[0].0, &v[0].1), v))
        .collect();
    cands.sort_by_key(|c| c.0);
    let mut engine: Engine<F> = Engine::new(order.clone(), None);
    let mut out = Vec::new();
    for (d, v) in cands {
        engine.complete(Some(d));
        let (r, _) = engine.reduce(v.clone(), None);
        if !r.is_empty() {
            engine.insert_reduced(r, None);
            out.push(v);
        }
    }
    out
}

fn degree_of<F: Field>(order: &TermOrder, v: &[Term<F>]) -> i64 {
    order.term_degree(v[0].0, &v[0].1)
}

/// Builds the map whose columns are `gens` (sorted by degree) into `target`.
pub(crate) fn map_from_vectors<F: Field>(
    target: &Arc<FreeModule>,
    order: &TermOrder,
    gens: Vec<Vec<Term<F>>>,
) -> HomMatrix<F> {
    let degrees: Vec<i64> = gens.iter().map(|v| degree_of(order, v)).collect();
    let source = FreeModule::new(target.nvars(), degrees);
    let columns = gens
        .into_iter()
        .map(|v| ModuleElement::from_terms(target.clone(), v))
        .collect();
    HomMatrix::new(source, target.clone(), columns).expect("columns live in the target")
}

/// Minimal generators of the kernel of `m` for the order `target_order` on
/// its target, together with the induced order on the source of `m`.
pub(crate) fn minimal_kernel<F: Field>(
    m: &HomMatrix<F>,
    target_order: &Arc<TermOrder>,
) -> (HomMatrix<F>, Arc<TermOrder>) {
    let source_order = target_order.schreyer(m.source().degrees(), &column_leads(m, target_order));
    let cands = kernel_vectors(m, target_order, &source_order);
    let gens = minimal_generators(cands, &source_order);
    (map_from_vectors(m.source(), &source_order, gens), source_order)
}

/// Generators of `ker M` as the columns of a map into the source of `M`.
/// The generators are minimal; the shifts are their degrees.
pub fn syzygy_module<F: Field>(m: &HomMatrix<F>) -> Result<HomMatrix<F>> {
    if !m.is_homogeneous() {
        return Err(Error::NotHomogeneous("syzygies need a graded map".into()));
    }
    Ok(minimal_kernel(m, &TermOrder::graded(m.target())).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{default_var_names, parse_poly, Polynomial};
    use crate::scalar::Rat;

    fn row(gens: &[&str], l: usize) -> HomMatrix<Rat> {
        let names = default_var_names(l);
        let g: Vec<Polynomial<Rat>> = gens.iter().map(|s| parse_poly(s, &names).unwrap()).collect();
        HomMatrix::row(l, &g)
    }

    #[test]
    fn koszul_relation() {
        let m = row(&["x", "y"], 2);
        let k = syzygy_module(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.source().degrees(), &[2]);
        assert!(m.compose(&k).unwrap().is_zero());
        let (x, y) = (Polynomial::<Rat>::var(2, 0), Polynomial::var(2, 1));
        let (e0, e1) = (k.entry(0, 0), k.entry(1, 0));
        assert!((e0 == y && e1 == -x.clone()) || (e0 == -y && e1 == x));
    }

    #[test]
    fn single_polynomial_has_no_syzygies() {
        let k = syzygy_module(&row(&["x^2 + y*z"], 3)).unwrap();
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn boolean_partials() {
        let m = row(&["y*z*t", "x*z*t", "x*y*t", "x*y*z"], 4);
        let k = syzygy_module(&m).unwrap();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.source().degrees(), &[4, 4, 4]);
        assert!(m.compose(&k).unwrap().is_zero());
    }

    #[test]
    fn zero_columns_are_syzygies() {
        let m = row(&["x", "0"], 2);
        let k = syzygy_module(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(m.compose(&k).unwrap().is_zero());
    }
}
