//! Multivariate polynomials with terms kept in descending degrevlex order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::monomial::{default_var_names, Monomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Element of `K[x_1, ..., x_l]`.
///
/// Canonical form: no zero coefficients, monomials strictly descending in
/// degrevlex. The zero polynomial has no terms.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F> {
    terms: Vec<(Monomial, F)>,
    nvars: usize,
}

/// Arithmetic operation selector for [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Polynomial {
            terms: Vec::new(),
            nvars,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(nvars, Monomial::var(i), F::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: F) -> Self {
        debug_assert!(m.support_len() <= nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let nvars = coeffs.len();
        Self::from_terms(
            nvars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i), c.clone()))
                .collect(),
        )
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    let prev = std::mem::replace(lc, F::zero());
                    *lc = prev + c;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn lead(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<&F> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|(t, _)| m.cmp_degrevlex(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // the leading degrevlex term has maximal total degree
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.mul_ref(c)))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.mul_ref(c)))
                .collect(),
            nvars: self.nvars,
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Checked arithmetic; errors on mismatched variable counts.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check_vars(other)?;
        Ok(match op {
            ArithOp::Add => self.merge(other, false),
            ArithOp::Sub => self.merge(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_degrevlex(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.clone() - b[j].1.clone()
                    } else {
                        a[i].1.add_ref(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c.clone() } else { c.clone() }));
        }
        Polynomial {
            terms: out,
            nvars: self.nvars,
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => {
                        let prev = std::mem::replace(v, F::zero());
                        *v = prev + p;
                    }
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        Polynomial {
            terms,
            nvars: self.nvars,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        result
    }

    pub fn product<'a>(nvars: usize, factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors
            .into_iter()
            .fold(Self::one(nvars), |acc, f| acc.mul_impl(f))
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        // the map m -> m / x_i is injective and order preserving on terms
        // containing x_i, so the result stays sorted
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(i);
                m.lower(i).map(|q| (q, c.mul_ref(&F::from_i64(e as i64))))
            })
            .collect();
        Ok(Polynomial {
            terms,
            nvars: self.nvars,
        })
    }

    /// Gradient `(df/dx_0, ..., df/dx_{l-1})`.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// `f(Mx)`: every `x_i` is replaced by `sum_j m[i][j] x_j`. Requires `m`
    /// to be square of size `l` and invertible.
    pub fn linear_substitution(&self, m: &[Vec<F>]) -> Result<Self> {
        let l = self.nvars;
        if m.len() != l || m.iter().any(|row| row.len() != l) {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix must be {l}x{l}"
            )));
        }
        if crate::algebra::linalg::rank(m) < l {
            return Err(Error::SingularMatrix);
        }
        Ok(self.substitute_linear_unchecked(m))
    }

    /// `f(Mx)` for an arbitrary (possibly rectangular, possibly singular)
    /// `l x k` matrix; the result lives in `k` variables.
    pub fn substitute_linear_unchecked(&self, m: &[Vec<F>]) -> Self {
        let k = m.first().map_or(0, |r| r.len());
        let images: Vec<Self> = m.iter().map(|row| Self::linear(row)).collect();
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(k), p.clone()]).collect();
        let mut acc = Self::zero(k);
        for (mono, c) in &self.terms {
            let mut term = Self::constant(k, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = mono.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().expect("nonempty").mul_impl(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    term = term.mul_impl(&pw[e]);
                }
            }
            acc = acc.merge(&term, false);
        }
        acc
    }

    /// Re-embeds the polynomial into a ring with `nvars` variables. Fails if
    /// a variable past the new count occurs.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| m.support_len() > nvars) {
            return Err(Error::VariableOutOfRange {
                index: m.support_len() - 1,
                nvars,
            });
        }
        Ok(Polynomial {
            terms: self.terms.clone(),
            nvars,
        })
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            nvars: self.nvars,
        }
    }

    /// Canonical text rendering, e.g. `2*x^2*y - 1/3*z`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&m.render(names));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_names(self.nvars)))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator sugar. These panic on mismatched variable counts; use
// `Polynomial::arith` for the checked form.
macro_rules! poly_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<'a, 'b, F: Field> $trait<&'b Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'b Polynomial<F>) -> Polynomial<F> {
                self.arith(rhs, $op).expect("mismatched variable counts")
            }
        }
        impl<F: Field> $trait for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, ArithOp::Add);
poly_binop!(Sub, sub, ArithOp::Sub);
poly_binop!(Mul, mul, ArithOp::Mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            nvars: self.nvars,
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::scalar::Rat;

    type P = Polynomial<Rat>;

    fn p(s: &str, l: usize) -> P {
        crate::algebra::parse::parse_poly(s, &default_var_names(l)).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&p("x+y", 2) + &p("x-y", 2), p("2*x", 2));
        assert!((&p("x", 2) * &P::zero(2)).is_zero());
        assert_eq!(&p("x-y", 2) * &p("x+y", 2), p("x^2-y^2", 2));
        assert_eq!(
            p("x", 2).arith(&p("x", 3), ArithOp::Add),
            Err(Error::VariableCountMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2*y", 2).partial_derivative(0).unwrap(), p("2*x*y", 2));
        assert_eq!(p("x*y", 2).partial_derivative(1).unwrap(), p("x", 2));
        assert!(p("x*y", 3).partial_derivative(2).unwrap().is_zero());
        assert!(p("x*y", 2).partial_derivative(2).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = p("x^2*y - 3*x*y + y^3", 2);
        let id = vec![vec![Rat::one(), Rat::zero()], vec![Rat::zero(), Rat::one()]];
        assert_eq!(f.linear_substitution(&id).unwrap(), f);
        let swap = vec![vec![Rat::zero(), Rat::one()], vec![Rat::one(), Rat::zero()]];
        assert_eq!(p("x-y", 2).linear_substitution(&swap).unwrap(), p("y-x", 2));
        let sing = vec![vec![Rat::one(), Rat::one()], vec![Rat::one(), Rat::one()]];
        assert_eq!(f.linear_substitution(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("2*x^2*y - 1/3*z", 3).to_string(), "2*x^2*y - 1/3*z");
        assert_eq!(p("-x + 1", 1).to_string(), "-x + 1");
        assert_eq!(P::zero(2).to_string(), "0");
    }

    #[test]
    fn pow_and_homogeneity() {
        let f = p("x+y", 2).pow(3);
        assert_eq!(f, p("x^3+3*x^2*y+3*x*y^2+y^3", 2));
        assert!(f.is_homogeneous());
        assert!(!p("x+1", 2).is_homogeneous());
        assert_eq!(f.degree(), Some(3));
    }
}
