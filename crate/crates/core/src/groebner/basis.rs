//! Buchberger's algorithm on submodules of free modules.
//!
//! Vectors are lists of `(component, monomial, coefficient)` terms sorted in
//! descending order for the engine's [`TermOrder`]. The pair queue is driven
//! by sugar degree, which equals the actual degree for homogeneous input, so
//! a computation can be completed one degree at a time. Pairs are pruned with
//! the Gebauer–Möller update; the coprime-leads criterion is only used on the
//! ring itself, where it is valid.
//!
//! Each element can carry a trace: its expression as a combination of the
//! input generators, kept in a second free module. Zero reductions then
//! yield syzygies directly.
//!
//! Over fields with [`Field::FRACTION_FREE`] set, basis elements are kept
//! primitive rather than monic and reduction steps cross-multiply, so the
//! results of [`Engine::reduce`] are only defined up to a nonzero scalar.

use std::cmp::Ordering;
use std::sync::Arc;

use super::order::TermOrder;
use crate::algebra::Monomial;
use crate::scalar::Field;

pub(crate) type Term<F> = (usize, Monomial, F);

/// `a - c * m * b`, both inputs sorted for `order`. The result is sorted.
pub(crate) fn sub_scaled<F: Field>(
    order: &TermOrder,
    a: &[Term<F>],
    c: &F,
    m: &Monomial,
    b: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut scaled: Option<Term<F>> = None;
    loop {
        if scaled.is_none() && j < b.len() {
            let (k, n, d) = &b[j];
            scaled = Some((*k, n.mul(m), -c.mul_ref(d)));
            j += 1;
        }
        match (a.get(i), scaled.as_ref()) {
            (None, None) => break,
            (Some(t), None) => {
                out.push(t.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(scaled.take().unwrap()),
            (Some(t), Some(s)) => match order.cmp((t.0, &t.1), (s.0, &s.1)) {
                Ordering::Greater => {
                    out.push(t.clone());
                    i += 1;
                }
                Ordering::Less => out.push(scaled.take().unwrap()),
                Ordering::Equal => {
                    let s = scaled.take().unwrap();
                    let sum = t.2.add_ref(&s.2);
                    if !sum.is_zero() {
                        out.push((s.0, s.1, sum));
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

/// Sorts and merges an arbitrary list of terms for `order`.
pub(crate) fn normalize<F: Field>(order: &TermOrder, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    terms.sort_by(|a, b| order.cmp((b.0, &b.1), (a.0, &a.1)));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
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
    out
}

fn scale<F: Field>(v: &mut [Term<F>], c: &F) {
    if c.is_one() {
        return;
    }
    for t in v.iter_mut() {
        t.2 = t.2.mul_ref(c);
    }
}

/// `cb * mb * a - ca * ma * b`: the S-vector of `a` and `b` with leading
/// coefficients `ca`, `cb` and cofactors `ma`, `mb`.
pub(crate) fn s_vector<F: Field>(
    order: &TermOrder,
    a: &[Term<F>],
    ca: &F,
    ma: &Monomial,
    b: &[Term<F>],
    cb: &F,
    mb: &Monomial,
) -> Vec<Term<F>> {
    let left: Vec<Term<F>> = a.iter().map(|(k, m, c)| (*k, m.mul(ma), c.mul_ref(cb))).collect();
    sub_scaled(order, &left, ca, mb, b)
}

/// Brings `v` (and its trace) to the canonical scale of [`Field::normalizer`].
fn normalize_scale<F: Field>(v: &mut [Term<F>], trace: Option<&mut Vec<Term<F>>>) {
    let Some(lead) = v.first() else {
        return;
    };
    let rest = v[1..].iter().chain(trace.iter().flat_map(|t| t.iter())).map(|t| &t.2);
    let c = F::normalizer(&lead.2, rest);
    scale(v, &c);
    if let Some(t) = trace {
        scale(t, &c);
    }
}

/// `Σ c * m * gens[k]` over the terms `(k, m, c)` of `trace`.
pub(crate) fn recombine<F: Field>(order: &TermOrder, gens: &[Vec<Term<F>>], trace: &[Term<F>]) -> Vec<Term<F>> {
    trace.iter().fold(Vec::new(), |acc, (k, m, c)| sub_scaled(order, &acc, &-c.clone(), m, &gens[*k]))
}

/// Two-way membership between `gens` and a traced `basis`: every generator
/// reduces to zero modulo the basis, and every basis element is the
/// combination of generators recorded in its trace.
pub(crate) fn two_way_membership<F: Field>(
    order: &Arc<TermOrder>,
    gens: &[Vec<Term<F>>],
    basis: &[(Vec<Term<F>>, Option<Vec<Term<F>>>)],
) -> bool {
    let mut reducer = Engine::new(order.clone(), None);
    for (v, _) in basis {
        reducer.insert_reduced(v.clone(), None);
    }
    let forward = gens.iter().all(|g| reducer.reduce(g.clone(), None).0.is_empty());
    forward
        && basis
            .iter()
            .all(|(v, t)| t.as_ref().is_some_and(|t| recombine(order, gens, t) == *v))
}

/// Divides `a`, `b` and `trace` by their common content.
fn remove_content<F: Field>(a: &mut [Term<F>], b: &mut [Term<F>], trace: Option<&mut Vec<Term<F>>>) {
    let mut all = a.iter().chain(b.iter()).chain(trace.iter().flat_map(|t| t.iter())).map(|t| &t.2);
    let Some(first) = all.next() else {
        return;
    };
    let mut c = F::normalizer(first, all);
    if c.is_negative() {
        c = -c;
    }
    scale(a, &c);
    scale(b, &c);
    if let Some(t) = trace {
        scale(t, &c);
    }
}

/// Reduction steps between content removals in fraction-free mode.
const CONTENT_PERIOD: usize = 4;

fn sugar_of<F>(order: &TermOrder, v: &[Term<F>]) -> i64 {
    v.iter()
        .map(|(k, m, _)| order.term_degree(*k, m))
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone)]
pub(crate) struct Elem<F> {
    pub vec: Vec<Term<F>>,
    pub trace: Option<Vec<Term<F>>>,
    comp: usize,
    lead: Monomial,
    mask: u32,
    sugar: i64,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: i64,
}

/// A pending input generator.
#[derive(Debug, Clone)]
struct Input<F> {
    sugar: i64,
    vec: Vec<Term<F>>,
    trace: Option<Vec<Term<F>>>,
}

#[derive(Debug, Clone)]
pub(crate) struct Engine<F> {
    order: Arc<TermOrder>,
    trace_order: Option<Arc<TermOrder>>,
    elems: Vec<Elem<F>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    inputs: Vec<Input<F>>,
    product_criterion: bool,
}

impl<F: Field> Engine<F> {
    pub fn new(order: Arc<TermOrder>, trace_order: Option<Arc<TermOrder>>) -> Self {
        let product_criterion = order.rank() == 1;
        Engine {
            order,
            trace_order,
            elems: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            inputs: Vec::new(),
            product_criterion,
        }
    }

    /// Queues a generator. `vec` must be sorted for the engine order; the
    /// trace, if tracking, for the trace order.
    pub fn add_generator(&mut self, vec: Vec<Term<F>>, trace: Option<Vec<Term<F>>>) {
        debug_assert_eq!(trace.is_some(), self.trace_order.is_some());
        if vec.is_empty() {
            return;
        }
        let sugar = sugar_of(&self.order, &vec);
        self.inputs.push(Input { sugar, vec, trace });
    }

    fn next_sugar(&self) -> Option<i64> {
        let p = self.pairs.iter().map(|p| p.sugar).min();
        let q = self.inputs.iter().map(|x| x.sugar).min();
        match (p, q) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Runs Buchberger until every pending pair and input of sugar at most
    /// `limit` has been processed (all of them when `limit` is `None`).
    pub fn complete(&mut self, limit: Option<i64>) {
        while let Some(s) = self.next_sugar() {
            if limit.is_some_and(|l| s > l) {
                break;
            }
            if let Some(pos) = self.inputs.iter().position(|x| x.sugar == s) {
                let inp = self.inputs.swap_remove(pos);
                let (v, t) = self.reduce(inp.vec, inp.trace);
                self.insert(v, t, s);
                continue;
            }
            // smallest lcm first among pairs of this sugar
            let pos = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| p.sugar == s)
                .min_by(|(_, a), (_, b)| {
                    let ka = self.elems[a.i].comp;
                    let kb = self.elems[b.i].comp;
                    self.order.cmp((ka, &a.lcm), (kb, &b.lcm))
                })
                .map(|(k, _)| k)
                .expect("pair of minimal sugar");
            let pair = self.pairs.swap_remove(pos);
            let (v, t) = self.spair(pair.i, pair.j, &pair.lcm);
            let (v, t) = self.reduce(v, t);
            self.insert(v, t, s);
        }
    }

    /// S-vector of two elements with the same leading component.
    fn spair(&self, i: usize, j: usize, lcm: &Monomial) -> (Vec<Term<F>>, Option<Vec<Term<F>>>) {
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let mi = gi.lead.quotient_of(lcm);
        let mj = gj.lead.quotient_of(lcm);
        let (ci, cj) = (&gi.vec[0].2, &gj.vec[0].2);
        let v = s_vector(&self.order, &gi.vec[1..], ci, &mi, &gj.vec[1..], cj, &mj);
        let t = self.trace_order.as_ref().map(|to| {
            let ti = gi.trace.as_ref().expect("trace");
            let tj = gj.trace.as_ref().expect("trace");
            s_vector(to, ti, ci, &mi, tj, cj, &mj)
        });
        (v, t)
    }

    /// Index of an active element whose lead divides `m*e_k`.
    #[inline]
    fn find_reducer(&self, k: usize, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.active.iter().copied().find(|&g| {
            let e = &self.elems[g];
            e.comp == k && e.mask & !mask == 0 && e.lead.divides(m)
        })
    }

    /// Full reduction of `v` by the active elements. Quotient steps are
    /// applied to `trace` as well.
    pub fn reduce(&self, v: Vec<Term<F>>, trace: Option<Vec<Term<F>>>) -> (Vec<Term<F>>, Option<Vec<Term<F>>>) {
        self.reduce_from(v, trace, 0)
    }

    /// Like [`Engine::reduce`], leaving the first `skip` terms alone.
    fn reduce_from(
        &self,
        v: Vec<Term<F>>,
        mut trace: Option<Vec<Term<F>>>,
        skip: usize,
    ) -> (Vec<Term<F>>, Option<Vec<Term<F>>>) {
        let mut done: Vec<Term<F>> = Vec::new();
        let mut p = v;
        let mut pos = skip.min(p.len());
        let mut steps = 0;
        while pos < p.len() {
            let (k, m) = (p[pos].0, &p[pos].1);
            let Some(g) = self.find_reducer(k, m) else {
                pos += 1;
                continue;
            };
            let e = &self.elems[g];
            let q = e.lead.quotient_of(m);
            done.extend(p.drain(..pos));
            let mut c = p[0].2.clone();
            let a = &e.vec[0].2;
            if F::FRACTION_FREE {
                scale(&mut done, a);
                scale(&mut p[1..], a);
                if let Some(t) = trace.as_mut() {
                    scale(t, a);
                }
            } else {
                c = c.mul_ref(&a.inv());
            }
            p = sub_scaled(&self.order, &p[1..], &c, &q, &e.vec[1..]);
            if let (Some(t), Some(to)) = (trace.as_mut(), self.trace_order.as_ref()) {
                *t = sub_scaled(to, t, &c, &q, e.trace.as_ref().expect("trace"));
            }
            pos = 0;
            steps += 1;
            if F::FRACTION_FREE && steps % CONTENT_PERIOD == 0 {
                remove_content(&mut done, &mut p, trace.as_mut());
            }
        }
        done.extend(p);
        if F::FRACTION_FREE && steps > 0 {
            remove_content(&mut done, &mut [], trace.as_mut());
        }
        (done, trace)
    }

    /// Adds a reduced nonzero vector to the basis, updating the pair set.
    fn insert(&mut self, mut v: Vec<Term<F>>, mut trace: Option<Vec<Term<F>>>, sugar: i64) {
        if v.is_empty() {
            return;
        }
        normalize_scale(&mut v, trace.as_mut());
        let (comp, lead) = (v[0].0, v[0].1);
        let t = self.elems.len();
        self.elems.push(Elem {
            mask: lead.support_mask(),
            vec: v,
            trace,
            comp,
            lead,
            sugar,
        });
        self.update(t);
    }

    /// Adds an element known to be in normal form with respect to the
    /// current basis, skipping the reduction.
    pub fn insert_reduced(&mut self, v: Vec<Term<F>>, trace: Option<Vec<Term<F>>>) {
        let sugar = sugar_of(&self.order, &v);
        self.insert(v, trace, sugar);
    }

    /// Gebauer–Möller update for the new element `t`.
    fn update(&mut self, t: usize) {
        let (comp, lead, sugar_t) = {
            let e = &self.elems[t];
            (e.comp, e.lead, e.sugar)
        };
        let lead_deg = lead.degree() as i64;
        // candidate pairs (g, t), with coprime flag
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .filter(|&&g| self.elems[g].comp == comp)
            .map(|&g| {
                let gl = &self.elems[g].lead;
                (g, gl.lcm(&lead), self.product_criterion && gl.is_coprime(&lead))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::with_capacity(cands.len());
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = !coprime
                && cands
                    .iter()
                    .chain(kept.iter())
                    .any(|(_, l2, _)| l2.divides(&l));
            if !dominated {
                kept.push((g, l, coprime));
            }
        }
        // old pairs made redundant by t
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if elems[p.i].comp != comp || !lead.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lead.lcm(&lead);
            let lj = elems[p.j].lead.lcm(&lead);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let eg = &self.elems[g];
            let ld = l.degree() as i64;
            let sugar = (eg.sugar + ld - eg.lead.degree() as i64).max(sugar_t + ld - lead_deg);
            self.pairs.push(Pair {
                i: g,
                j: t,
                lcm: l,
                sugar,
            });
        }
        let elems = &self.elems;
        self.active
            .retain(|&g| !(elems[g].comp == comp && lead.divides(&elems[g].lead)));
        self.active.push(t);
    }

    /// Interreduces the active elements and returns them as a reduced basis
    /// in ascending order of leading terms, with traces. Elements are in the
    /// canonical scale of [`Field::normalizer`].
    pub fn into_reduced(mut self) -> Vec<(Vec<Term<F>>, Option<Vec<Term<F>>>)> {
        self.complete(None);
        let mut act = self.active.clone();
        act.sort_by(|&a, &b| {
            let (ea, eb) = (&self.elems[a], &self.elems[b]);
            self.order.cmp((ea.comp, &ea.lead), (eb.comp, &eb.lead))
        });
        let mut out = Vec::with_capacity(act.len());
        for &g in &act {
            let e = &self.elems[g];
            let (mut v, mut trace) = self.reduce_from(e.vec.clone(), e.trace.clone(), 1);
            normalize_scale(&mut v, trace.as_mut());
            out.push((v, trace));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::scalar::Rat;

    fn vec_of(p: &Polynomial<Rat>) -> Vec<Term<Rat>> {
        p.terms().iter().map(|(m, c)| (0, *m, c.clone())).collect()
    }

    fn p(s: &str) -> Polynomial<Rat> {
        crate::algebra::parse_poly(s, &crate::algebra::default_var_names(3)).unwrap()
    }

    #[test]
    fn reduces_s_pairs_to_zero() {
        let order = TermOrder::degrevlex();
        let mut e = Engine::<Rat>::new(order, None);
        for s in ["x^2 - y^2", "x^2 + y^2"] {
            e.add_generator(vec_of(&p(s)), None);
        }
        let gb = e.into_reduced();
        let leads: Vec<String> = gb
            .iter()
            .map(|(v, _)| Polynomial::from_terms(3, v.iter().map(|t| (t.1, t.2.clone())).collect()).to_string())
            .collect();
        assert_eq!(leads, vec!["y^2", "x^2"]);
    }

    #[test]
    fn traces_express_elements_in_generators() {
        let order = TermOrder::degrevlex();
        let gens = [p("x*y - z^2"), p("y^2 - x*z")];
        let src = crate::algebra::FreeModule::new(3, vec![2, 2]);
        let to = TermOrder::graded(&src);
        let mut e = Engine::<Rat>::new(order, Some(to));
        for (i, g) in gens.iter().enumerate() {
            e.add_generator(vec_of(g), Some(vec![(i, Monomial::one(), Rat::one())]));
        }
        for (v, t) in e.into_reduced() {
            let g = Polynomial::from_terms(3, v.iter().map(|t| (t.1, t.2.clone())).collect());
            let mut acc = Polynomial::zero(3);
            for (k, m, c) in t.unwrap() {
                acc = &acc + &gens[k].mul_term(&m, &c);
            }
            assert_eq!(acc, g);
        }
    }

    use num_traits::One;
}
