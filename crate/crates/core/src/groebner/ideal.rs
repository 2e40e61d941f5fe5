//! Ideals of the polynomial ring and the operations built on their Gröbner
//! bases.

use std::sync::OnceLock;

use super::basis::{normalize, sub_scaled, two_way_membership, Engine, Term};
use super::order::TermOrder;
use crate::algebra::{FreeModule, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

fn to_vec<F: Field>(p: &Polynomial<F>) -> Vec<Term<F>> {
    p.terms().iter().map(|(m, c)| (0, *m, c.clone())).collect()
}

fn from_vec<F: Field>(nvars: usize, v: Vec<Term<F>>) -> Polynomial<F> {
    Polynomial::from_terms(nvars, v.into_iter().map(|(_, m, c)| (m, c)).collect())
}

fn check_ambient<F: Field>(nvars: usize, ps: &[Polynomial<F>]) -> Result<()> {
    match ps.iter().find(|p| p.nvars() != nvars) {
        Some(p) => Err(Error::VariableCountMismatch {
            left: nvars,
            right: p.nvars(),
        }),
        None => Ok(()),
    }
}

/// Reduced Gröbner basis in degrevlex, sorted by ascending leading monomial.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let Some(nvars) = gens.first().map(|g| g.nvars()) else {
        return Vec::new();
    };
    let mut e = Engine::new(TermOrder::degrevlex(), None);
    for g in gens {
        e.add_generator(to_vec(g), None);
    }
    let gb: Vec<Polynomial<F>> = e
        .into_reduced()
        .into_iter()
        .map(|(v, _)| {
            let p = from_vec(nvars, v);
            let inv = p.lead_coeff().unwrap().inv();
            p.scale(&inv)
        })
        .collect();
    debug_assert!(
        gens.iter().all(|g| normal_form(g, &gb).is_ok_and(|r| r.is_zero())),
        "a generator is not in the span of its Gröbner basis"
    );
    gb
}

/// Reduced Gröbner basis in degrevlex as in [`buchberger`], each element
/// paired with cofactors `c_i` such that it equals `Σ c_i gens[i]`.
pub fn groebner_with_cofactors<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<(Polynomial<F>, Vec<Polynomial<F>>)>> {
    let Some(nvars) = gens.first().map(|g| g.nvars()) else {
        return Ok(Vec::new());
    };
    check_ambient(nvars, gens)?;
    let trace_order = TermOrder::graded(&FreeModule::new(nvars, vec![0; gens.len()]));
    let mut e = Engine::new(TermOrder::degrevlex(), Some(trace_order));
    for (i, g) in gens.iter().enumerate() {
        e.add_generator(to_vec(g), Some(vec![(i, Monomial::one(), F::one())]));
    }
    Ok(e.into_reduced()
        .into_iter()
        .map(|(v, t)| {
            let p = from_vec(nvars, v);
            let inv = p.lead_coeff().unwrap().inv();
            let mut cof = vec![Vec::new(); gens.len()];
            for (k, m, c) in t.unwrap() {
                cof[k].push((m, c.mul_ref(&inv)));
            }
            let cof = cof.into_iter().map(|ts| Polynomial::from_terms(nvars, ts)).collect();
            (p.scale(&inv), cof)
        })
        .collect())
}

/// Two-way membership check of a Gröbner basis with cofactors against its
/// generators: every generator has normal form zero, and every basis
/// element equals its cofactor combination.
pub fn verify_groebner<F: Field>(gens: &[Polynomial<F>], basis: &[(Polynomial<F>, Vec<Polynomial<F>>)]) -> bool {
    let order = TermOrder::degrevlex();
    let gv: Vec<Vec<Term<F>>> = gens.iter().map(to_vec).collect();
    let traced: Vec<(Vec<Term<F>>, Option<Vec<Term<F>>>)> = basis
        .iter()
        .map(|(p, cof)| {
            let t: Vec<Term<F>> = cof
                .iter()
                .enumerate()
                .flat_map(|(k, c)| c.terms().iter().map(move |(m, x)| (k, *m, x.clone())))
                .collect();
            (to_vec(p), Some(t))
        })
        .collect();
    cof_lengths_match(gens, basis) && two_way_membership(&order, &gv, &traced)
}

fn cof_lengths_match<F: Field>(gens: &[Polynomial<F>], basis: &[(Polynomial<F>, Vec<Polynomial<F>>)]) -> bool {
    basis.iter().all(|(_, c)| c.len() == gens.len())
}

/// Multivariate division in degrevlex: returns quotients `q_i` and the
/// remainder `r` with `f = Σ q_i g_i + r`, no term of `r` divisible by a
/// leading monomial of `g`.
pub fn divide<F: Field>(
    f: &Polynomial<F>,
    g: &[Polynomial<F>],
) -> Result<(Vec<Polynomial<F>>, Polynomial<F>)> {
    let nvars = f.nvars();
    check_ambient(nvars, g)?;
    let order = TermOrder::degrevlex();
    let divisors: Vec<(usize, Vec<Term<F>>, F)> = g
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| (i, to_vec(p), p.lead_coeff().unwrap().inv()))
        .collect();
    let mut quot: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); g.len()];
    let mut rem: Vec<Term<F>> = Vec::new();
    let mut p = to_vec(f);
    let mut pos = 0;
    while pos < p.len() {
        let m = p[pos].1;
        let hit = divisors.iter().find(|(_, d, _)| d[0].1.divides(&m));
        let Some((i, d, inv)) = hit else {
            pos += 1;
            continue;
        };
        let q = d[0].1.quotient_of(&m);
        let c = p[pos].2.mul_ref(inv);
        rem.extend(p.drain(..pos));
        p = sub_scaled(&order, &p[1..], &c, &q, &d[1..]);
        pos = 0;
        quot[*i].push((q, c));
    }
    rem.extend(p);
    Ok((
        quot.into_iter().map(|q| Polynomial::from_terms(nvars, q)).collect(),
        from_vec(nvars, rem),
    ))
}

/// Remainder of `f` on division by `g`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    Ok(divide(f, g)?.1)
}

/// Exact quotient `f / d`, `None` when `d` does not divide `f`.
pub fn exact_div<F: Field>(f: &Polynomial<F>, d: &Polynomial<F>) -> Option<Polynomial<F>> {
    let (mut q, r) = divide(f, std::slice::from_ref(d)).ok()?;
    r.is_zero().then(|| q.pop().unwrap())
}

/// A homogeneous or inhomogeneous ideal given by generators, with a lazily
/// computed reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    gb: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> PartialEq for Ideal<F> {
    /// Equality as ideals, not as generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.contains_ideal(other) && other.contains_ideal(self)
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Result<Self> {
        check_ambient(nvars, &generators)?;
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Polynomial::one(nvars)]).unwrap()
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal::new(nvars, Vec::new()).unwrap()
    }

    fn from_gb(nvars: usize, gb: Vec<Polynomial<F>>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal {
            nvars,
            generators: gb,
            gb: cell,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn groebner(&self) -> &[Polynomial<F>] {
        self.gb.get_or_init(|| buchberger(&self.generators))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, self.groebner())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.contains(g).unwrap_or(false))
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    /// `I ∩ J` by eliminating `t` from `tI + (1-t)J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.nvars));
        }
        let n = self.nvars;
        let big = n + 1;
        let order = TermOrder::eliminate(n);
        let t = Polynomial::var(big, n);
        let one_minus_t = &Polynomial::one(big) - &t;
        let mut e = Engine::new(order.clone(), None);
        for g in &self.generators {
            let lifted = &g.with_nvars(big)? * &t;
            e.add_generator(normalize(&order, to_vec(&lifted)), None);
        }
        for g in &other.generators {
            let lifted = &g.with_nvars(big)? * &one_minus_t;
            e.add_generator(normalize(&order, to_vec(&lifted)), None);
        }
        let gens = e
            .into_reduced()
            .into_iter()
            .filter(|(v, _)| v.iter().all(|(_, m, _)| m.exp(n) == 0))
            .map(|(v, _)| from_vec(big, v).with_nvars(n))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(n, gens)
    }

    /// `(I : f) = {g : gf ∈ I}`.
    pub fn quotient(&self, f: &Polynomial<F>) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(self.nvars, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .generators
            .iter()
            .map(|h| exact_div(h, f).expect("intersection with <f> is divisible by f"))
            .collect();
        Ideal::new(self.nvars, gens)
    }

    /// `(I : P)`, the intersection of `(I : p)` over the generators of `P`.
    pub fn quotient_ideal(&self, p: &Ideal<F>) -> Result<Ideal<F>> {
        if p.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &p.generators {
            let q = self.quotient(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        let acc = acc.unwrap();
        Ok(Ideal::from_gb(self.nvars, acc.groebner().to_vec()))
    }

    /// `I : P^∞`, iterating quotients until the ideal stops growing.
    pub fn saturation(&self, p: &Ideal<F>) -> Result<Ideal<F>> {
        let mut cur = Ideal::from_gb(self.nvars, self.groebner().to_vec());
        loop {
            let next = cur.quotient_ideal(p)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn initial_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .filter_map(|g| g.lead_monomial().copied())
            .collect()
    }

    /// Krull dimension of `S/I`: the size of a largest set of variables
    /// containing the support of no initial monomial. The unit ideal has
    /// dimension -1.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let masks: Vec<u32> = self
            .initial_monomials()
            .iter()
            .map(|m| m.support_mask())
            .collect();
        let full = (1u32 << self.nvars) - 1;
        (0..=full)
            .filter(|u| masks.iter().all(|m| m & !u != 0))
            .map(|u| u.count_ones() as i64)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{default_var_names, parse_poly};
    use crate::scalar::Rat;

    fn p(s: &str, l: usize) -> Polynomial<Rat> {
        parse_poly(s, &default_var_names(l)).unwrap()
    }

    fn ideal(gens: &[&str], l: usize) -> Ideal<Rat> {
        Ideal::new(l, gens.iter().map(|s| p(s, l)).collect()).unwrap()
    }

    #[test]
    fn division_examples() {
        assert!(normal_form(&p("x^2", 2), &[p("x", 2)]).unwrap().is_zero());
        assert_eq!(normal_form(&p("x^2 + y", 2), &[p("x^2 - y", 2)]).unwrap(), p("2y", 2));
        assert!(normal_form(&p("x", 2), &[p("x", 3)]).is_err());
    }

    #[test]
    fn small_bases() {
        assert_eq!(buchberger(&[p("x", 2), p("y", 2)]), vec![p("y", 2), p("x", 2)]);
        assert_eq!(
            buchberger(&[p("x^2 - y^2", 2), p("x^2 + y^2", 2)]),
            vec![p("y^2", 2), p("x^2", 2)]
        );
        assert!(buchberger::<Rat>(&[]).is_empty());
    }

    #[test]
    fn boolean_jacobian_basis() {
        let q = p("x*y*z*t", 4);
        let i = Ideal::new(4, q.gradient()).unwrap();
        let gb = i.groebner();
        for g in q.gradient() {
            assert!(gb.contains(&g));
            assert!(i.contains(&g).unwrap());
        }
    }

    #[test]
    fn quotients_and_saturation() {
        assert_eq!(ideal(&["x^2"], 2).quotient(&p("x", 2)).unwrap(), ideal(&["x"], 2));
        let j = ideal(&["x^2", "x*y"], 2);
        let m = ideal(&["x", "y"], 2);
        assert_eq!(j.quotient_ideal(&m).unwrap(), ideal(&["x"], 2));
        assert_eq!(j.quotient(&p("1", 2)).unwrap(), j);
        assert_eq!(ideal(&["x*y"], 2).quotient_ideal(&m).unwrap(), ideal(&["x*y"], 2));
        assert_eq!(j.saturation(&m).unwrap(), ideal(&["x"], 2));
        assert!(m.saturation(&m).unwrap().is_unit());
        assert!(j.quotient(&Polynomial::zero(2)).is_err());
    }

    #[test]
    fn intersection() {
        let a = ideal(&["x"], 2);
        let b = ideal(&["y"], 2);
        assert_eq!(a.intersect(&b).unwrap(), ideal(&["x*y"], 2));
        let c = ideal(&["x - 1"], 2);
        assert_eq!(a.intersect(&c).unwrap(), ideal(&["x^2 - x"], 2));
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal(&["x", "y"], 3).krull_dim(), 1);
        assert_eq!(ideal(&["1"], 3).krull_dim(), -1);
        assert_eq!(Ideal::<Rat>::zero(3).krull_dim(), 3);
        assert_eq!(ideal(&["x*y", "x*z"], 3).krull_dim(), 2);
    }

    #[test]
    fn cofactors_certify_membership() {
        let gens: Vec<Polynomial<Rat>> = ["x*y - z^2", "y^2 - x*z", "x^2*y - 2*z^3"].iter().map(|s| p(s, 3)).collect();
        let gb = groebner_with_cofactors(&gens).unwrap();
        assert_eq!(gb.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(), buchberger(&gens));
        assert!(verify_groebner(&gens, &gb));
        let mut broken = gb.clone();
        broken[0].1[0] = &broken[0].1[0] + &Polynomial::one(3);
        assert!(!verify_groebner(&gens, &broken));
    }
}
