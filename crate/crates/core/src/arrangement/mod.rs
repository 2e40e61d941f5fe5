//! Central hyperplane arrangements and their intersection lattices.

mod form;
pub mod io;
mod lattice;
pub mod random;

use num_traits::{One, Zero};

pub use form::LinearForm;
pub use lattice::{Flat, IntersectionLattice};
pub(crate) use lattice::Span;

use crate::algebra::{default_var_names, linalg, Polynomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::scalar::{Field, Rat};

/// A central arrangement: distinct hyperplanes through the origin, each
/// given by its canonical [`LinearForm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    names: Vec<String>,
    forms: Vec<LinearForm>,
}

/// Result of moving a localization into its own coordinates.
#[derive(Debug, Clone)]
pub struct Essentialized {
    /// `A_X` written in the first `rank(X)` of the new coordinates.
    pub arrangement: Arrangement,
    /// Invertible `l x l` matrix `M` of the change `y = M x`; its first
    /// `rank(X)` rows are independent forms of `A_X`.
    pub transform: Vec<Vec<Rat>>,
}

impl Arrangement {
    pub fn new(names: Vec<String>, forms: Vec<LinearForm>) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != names.len() {
                return Err(Error::VariableCountMismatch {
                    left: names.len(),
                    right: f.nvars(),
                });
            }
            if let Some(j) = forms[..i].iter().position(|g| g == f) {
                return Err(Error::DuplicateHyperplane { first: j, second: i });
            }
        }
        Ok(Arrangement { names, forms })
    }

    /// Arrangement from integer coefficient rows, with default variable
    /// names. Rows need not be canonical.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let l = rows.first().map_or(0, |r| r.len());
        Self::from_rows_in(default_var_names(l), rows)
    }

    pub fn from_rows_in(names: Vec<String>, rows: Vec<Vec<i64>>) -> Result<Self> {
        let forms = rows
            .iter()
            .enumerate()
            .map(|(i, r)| LinearForm::new(r).map_err(|e| relabel_zero(e, i)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, forms)
    }

    /// The empty arrangement in `l` variables.
    pub fn empty(l: usize) -> Self {
        Arrangement {
            names: default_var_names(l),
            forms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    fn check_index(&self, h: usize) -> Result<()> {
        if h < self.len() {
            Ok(())
        } else {
            Err(Error::HyperplaneOutOfRange {
                index: h,
                n: self.len(),
            })
        }
    }

    /// `Q(A)`, the product of the forms.
    pub fn defining_polynomial<F: Field>(&self) -> Polynomial<F> {
        let l = self.nvars();
        self.forms
            .iter()
            .fold(Polynomial::one(l), |acc, f| &acc * &f.to_poly::<F>())
    }

    /// `J(A)`. The partial derivatives generate it whenever `Q` has
    /// positive degree, by the Euler relation; for the empty arrangement it
    /// is the unit ideal.
    pub fn jacobian_ideal<F: Field>(&self) -> Ideal<F> {
        let q = self.defining_polynomial::<F>();
        let gens = if self.is_empty() { vec![q] } else { q.gradient() };
        Ideal::new(self.nvars(), gens).expect("same ring")
    }

    pub(crate) fn span_of(&self, indices: &[usize]) -> Span {
        let mut s = Span::default();
        for &i in indices {
            s.insert(&self.forms[i].to_vector::<Rat>());
        }
        s
    }

    pub(crate) fn closed_indices(&self, span: &Span) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| span.contains(&self.forms[i].to_vector::<Rat>()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.span_of(&(0..self.len()).collect::<Vec<_>>()).dim()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.nvars()
    }

    /// Smallest flat containing the hyperplanes `indices`: the
    /// intersection of those hyperplanes.
    pub fn closure(&self, indices: &[usize]) -> Result<Flat> {
        for &i in indices {
            self.check_index(i)?;
        }
        let s = self.span_of(indices);
        Ok(Flat::new(self.closed_indices(&s), s.dim()))
    }

    /// The flat whose closed hyperplane set is `indices`. Fails if the set
    /// is not closed.
    pub fn flat(&self, indices: &[usize]) -> Result<Flat> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let f = self.closure(&sorted)?;
        if f.indices() != sorted.as_slice() {
            return Err(Error::NotAFlat(sorted));
        }
        Ok(f)
    }

    /// Intersection of all hyperplanes.
    pub fn center(&self) -> Flat {
        self.closure(&(0..self.len()).collect::<Vec<_>>()).unwrap()
    }

    pub fn lattice(&self) -> IntersectionLattice {
        IntersectionLattice::build(self)
    }

    fn check_flat(&self, x: &Flat) -> Result<()> {
        if self.flat(x.indices())? != *x {
            return Err(Error::NotAFlat(x.indices().to_vec()));
        }
        Ok(())
    }

    /// `A_X`, the hyperplanes containing `X`, in the same ring.
    pub fn localization(&self, x: &Flat) -> Result<Arrangement> {
        self.check_flat(x)?;
        self.subarrangement(x.indices())
    }

    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        for &i in indices {
            self.check_index(i)?;
        }
        Arrangement::new(
            self.names.clone(),
            indices.iter().map(|&i| self.forms[i].clone()).collect(),
        )
    }

    /// `A \ {H}`.
    pub fn deletion(&self, h: usize) -> Result<Arrangement> {
        self.check_index(h)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != h).collect();
        self.subarrangement(&keep)
    }

    /// `A ∪ {H}`, with `H` appended last.
    pub fn addition(&self, form: LinearForm) -> Result<Arrangement> {
        let mut forms = self.forms.clone();
        forms.push(form);
        Arrangement::new(self.names.clone(), forms)
    }

    /// `A^H` in `l - 1` variables. `H` is parametrized by the variables
    /// other than the first one occurring in its equation, which keep
    /// their names.
    pub fn restriction(&self, h: usize) -> Result<Arrangement> {
        self.check_index(h)?;
        let l = self.nvars();
        let alpha = self.forms[h].to_vector::<Rat>();
        let basis = linalg::kernel(&[alpha.clone()], l);
        let pivot = alpha.iter().position(|c| !c.is_zero()).unwrap();
        let names: Vec<String> = (0..l)
            .filter(|&i| i != pivot)
            .map(|i| self.names[i].clone())
            .collect();
        let mut forms: Vec<LinearForm> = Vec::new();
        for (i, f) in self.forms.iter().enumerate() {
            if i == h {
                continue;
            }
            let v = f.to_vector::<Rat>();
            let pulled: Vec<Rat> = basis
                .iter()
                .map(|b| v.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
                .collect();
            if pulled.iter().all(|c| c.is_zero()) {
                continue;
            }
            let g = LinearForm::from_rationals(&pulled)?;
            if !forms.contains(&g) {
                forms.push(g);
            }
        }
        Arrangement::new(names, forms)
    }

    /// Independent forms of `A_X` spanning `I(X)`, chosen greedily.
    pub fn flat_basis(&self, x: &Flat) -> Result<Vec<usize>> {
        self.check_flat(x)?;
        let mut s = Span::default();
        Ok(x.indices()
            .iter()
            .copied()
            .filter(|&i| s.insert(&self.forms[i].to_vector::<Rat>()))
            .collect())
    }

    /// `I(X)`, the vanishing ideal of the flat.
    pub fn flat_prime_ideal<F: Field>(&self, x: &Flat) -> Result<Ideal<F>> {
        let gens = self
            .flat_basis(x)?
            .iter()
            .map(|&i| self.forms[i].to_poly::<F>())
            .collect();
        Ideal::new(self.nvars(), gens)
    }

    /// Moves `A_X` into coordinates where `I(X) = <y_1, ..., y_s>` and
    /// returns it as an arrangement in those `s` variables.
    pub fn essentialize(&self, x: &Flat) -> Result<Essentialized> {
        let l = self.nvars();
        let chosen = self.flat_basis(x)?;
        let s = chosen.len();
        let mut rows: Vec<Vec<Rat>> = chosen.iter().map(|&i| self.forms[i].to_vector()).collect();
        let mut span = self.span_of(&chosen);
        for j in 0..l {
            let mut e = vec![Rat::zero(); l];
            e[j] = Rat::one();
            if span.insert(&e) {
                rows.push(e);
            }
        }
        let inv = linalg::inverse(&rows).expect("completed to a basis");
        let forms = x
            .indices()
            .iter()
            .map(|&i| {
                let v = self.forms[i].to_vector::<Rat>();
                let c: Vec<Rat> = (0..s)
                    .map(|k| v.iter().zip(&inv).fold(Rat::zero(), |acc, (a, row)| acc + a.clone() * row[k].clone()))
                    .collect();
                LinearForm::from_rationals(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Essentialized {
            arrangement: Arrangement::new(default_var_names(s), forms)?,
            transform: rows,
        })
    }

    /// The arrangement with every form composed with the invertible linear
    /// map `x -> M x`.
    pub fn transform(&self, m: &[Vec<Rat>]) -> Result<Arrangement> {
        let l = self.nvars();
        if m.len() != l || m.iter().any(|r| r.len() != l) {
            return Err(Error::DimensionMismatch(format!("need a {l}x{l} matrix")));
        }
        if linalg::rank(m) < l {
            return Err(Error::SingularMatrix);
        }
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let v = f.to_vector::<Rat>();
                let w: Vec<Rat> = (0..l)
                    .map(|j| v.iter().zip(m).fold(Rat::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone()))
                    .collect();
                LinearForm::from_rationals(&w)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.names.clone(), forms)
    }

    /// The same hyperplanes in the order `perm` (a permutation of indices).
    pub fn permuted(&self, perm: &[usize]) -> Result<Arrangement> {
        let mut seen = perm.to_vec();
        seen.sort_unstable();
        if seen != (0..self.len()).collect::<Vec<_>>() {
            return Err(Error::Precondition("not a permutation".into()));
        }
        self.subarrangement(perm)
    }

    /// Cone over affine hyperplanes `Σ c_i x_i + c_0 = 0` in the given
    /// variables: each becomes `Σ c_i x_i + c_0 z` and `z = 0` is appended.
    pub fn cone(names: Vec<String>, affine: &[(Vec<Rat>, Rat)]) -> Result<Arrangement> {
        let l = names.len();
        let extra = ["z", "t", "w", "u", "v", "h"]
            .iter()
            .map(|s| s.to_string())
            .find(|s| !names.contains(s))
            .unwrap_or_else(|| format!("x{}", l + 1));
        let mut forms = Vec::with_capacity(affine.len() + 1);
        for (i, (lin, c)) in affine.iter().enumerate() {
            if lin.len() != l {
                return Err(Error::VariableCountMismatch {
                    left: l,
                    right: lin.len(),
                });
            }
            if lin.iter().all(|x| x.is_zero()) {
                return Err(Error::ZeroForm(i));
            }
            let mut v = lin.clone();
            v.push(c.clone());
            forms.push(LinearForm::from_rationals(&v)?);
        }
        let mut z = vec![0; l + 1];
        z[l] = 1;
        forms.push(LinearForm::new(&z)?);
        let mut names = names;
        names.push(extra);
        Arrangement::new(names, forms)
    }

    /// The forms rendered with this arrangement's variable names.
    pub fn rendered_forms(&self) -> Vec<String> {
        self.forms.iter().map(|f| f.render(&self.names)).collect()
    }
}

fn relabel_zero(e: Error, i: usize) -> Error {
    match e {
        Error::ZeroForm(_) => Error::ZeroForm(i),
        e => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: &[&[i64]]) -> Arrangement {
        Arrangement::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ex34() -> Arrangement {
        // x, x-y, x-t, y-z, z-t
        arr(&[&[1, 0, 0, 0], &[1, -1, 0, 0], &[1, 0, 0, -1], &[0, 1, -1, 0], &[0, 0, 1, -1]])
    }

    #[test]
    fn defining_polynomial_and_jacobian() {
        let a = arr(&[&[1, 0], &[0, 1]]);
        assert_eq!(a.defining_polynomial::<Rat>().to_string(), "x*y");
        assert_eq!(Arrangement::empty(3).defining_polynomial::<Rat>(), Polynomial::one(3));
        assert!(Arrangement::empty(2).jacobian_ideal::<Rat>().is_unit());
        assert!(arr(&[&[1, 0]]).jacobian_ideal::<Rat>().is_unit());
        let q = ex34().defining_polynomial::<Rat>();
        assert_eq!(q.degree(), Some(5));
        let names = default_var_names(4);
        let expected: Polynomial<Rat> = crate::algebra::parse_poly("x(x-y)(x-t)(y-z)(z-t)", &names).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn duplicates_rejected() {
        let e = Arrangement::from_rows(vec![vec![1, 0], vec![2, 0]]).unwrap_err();
        assert_eq!(e, Error::DuplicateHyperplane { first: 0, second: 1 });
        assert_eq!(Arrangement::from_rows(vec![vec![1, 0], vec![0, 0]]).unwrap_err(), Error::ZeroForm(1));
    }

    #[test]
    fn rank_and_essential() {
        assert!(arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).is_essential());
        let braid = arr(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(braid.rank(), 2);
        assert!(!braid.is_essential());
    }

    #[test]
    fn localization_at_diagonal() {
        let a = ex34();
        let x = a.closure(&[3, 2, 4]).unwrap();
        assert_eq!(x.rank(), 3);
        assert_eq!(x.indices(), &[1, 2, 3, 4]);
        let ax = a.localization(&x).unwrap();
        assert_eq!(ax.len(), 4);
        assert_eq!(a.localization(&a.center()).unwrap(), a);
        assert!(a.localization(&Flat::new(vec![1, 3, 4], 3)).is_err());
        let i = a.flat_prime_ideal::<Rat>(&x).unwrap();
        let names = default_var_names(4);
        let expected = Ideal::new(
            4,
            ["y-z", "x-t", "z-t"].iter().map(|s| crate::algebra::parse_poly(s, &names).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(i, expected);
    }

    #[test]
    fn restrictions() {
        let b = arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = b.restriction(0).unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.len(), 2);
        assert_eq!(r.names(), &["y".to_string(), "z".to_string()]);
        let braid = arr(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(braid.restriction(0).unwrap().len(), 1);
    }

    #[test]
    fn deletion_and_addition() {
        let a = arr(&[&[1, 0], &[0, 1]]);
        let d = a.deletion(1).unwrap();
        assert_eq!(d, arr(&[&[1, 0]]));
        assert_eq!(d.addition(LinearForm::new(&[0, 1]).unwrap()).unwrap(), a);
        assert!(a.deletion(2).is_err());
    }

    #[test]
    fn cone_appends_infinity() {
        let c = Arrangement::cone(
            vec!["x".into()],
            &[(vec![Rat::one()], Rat::zero()), (vec![Rat::one()], Rat::integer(-1))],
        )
        .unwrap();
        assert_eq!(c.rendered_forms(), vec!["x", "x - z", "z"]);
    }

    #[test]
    fn essentialize_diagonal_flat() {
        let a = ex34();
        let x = a.closure(&[1, 2, 3]).unwrap();
        let e = a.essentialize(&x).unwrap();
        assert_eq!(e.arrangement.nvars(), 3);
        assert_eq!(e.arrangement.len(), 4);
        assert!(e.arrangement.is_essential());
        // pulling the new forms back through the transform recovers A_X
        let s = 3;
        for (k, &i) in x.indices().iter().enumerate() {
            let c = e.arrangement.form(k).to_vector::<Rat>();
            let back: Vec<Rat> = (0..4)
                .map(|j| (0..s).fold(Rat::zero(), |acc, r| acc + c[r].clone() * e.transform[r][j].clone()))
                .collect();
            assert_eq!(LinearForm::from_rationals(&back).unwrap(), *a.form(i));
        }
    }
}
