use std::collections::HashMap;
use std::fmt;

use crate::algebra::{default_var_names, Polynomial};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::groebner::exact_div;
use crate::scalar::Field;

/// A polynomial vector field `Σ f_i ∂/∂x_i`.
#[derive(Clone, PartialEq)]
pub struct Derivation<F: Field> {
    coeffs: Vec<Polynomial<F>>,
}

impl<F: Field> Derivation<F> {
    pub fn new(coeffs: Vec<Polynomial<F>>) -> Result<Self> {
        let l = coeffs.len();
        if let Some(c) = coeffs.iter().find(|c| c.nvars() != l) {
            return Err(Error::VariableCountMismatch {
                left: l,
                right: c.nvars(),
            });
        }
        Ok(Derivation { coeffs })
    }

    /// `∂/∂x_i`.
    pub fn partial(l: usize, i: usize) -> Self {
        let coeffs = (0..l)
            .map(|j| if i == j { Polynomial::one(l) } else { Polynomial::zero(l) })
            .collect();
        Derivation { coeffs }
    }

    pub fn coeffs(&self) -> &[Polynomial<F>] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Common degree of the nonzero homogeneous coefficients, if any.
    pub fn pdeg(&self) -> Option<i64> {
        let mut d = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            let e = c.degree().unwrap() as i64;
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        d
    }

    /// `δ(p) = Σ f_i ∂p/∂x_i`.
    pub fn apply(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let l = self.nvars();
        let grad = p.gradient();
        self.coeffs
            .iter()
            .zip(&grad)
            .fold(Polynomial::zero(l), |acc, (f, g)| &acc + &(f * g))
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| {
                if c.is_one() {
                    format!("d{n}")
                } else if c.len() == 1 {
                    format!("{}*d{n}", c.render(names))
                } else {
                    format!("({})*d{n}", c.render(names))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<F: Field> fmt::Debug for Derivation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_names(self.nvars())))
    }
}

/// `δ_E = Σ x_i ∂/∂x_i`.
pub fn euler_field<F: Field>(l: usize) -> Derivation<F> {
    Derivation {
        coeffs: (0..l).map(|i| Polynomial::var(l, i)).collect(),
    }
}

/// Whether `α_i` divides `δ(α_i)` for every hyperplane.
pub fn is_logarithmic<F: Field>(d: &Derivation<F>, a: &Arrangement) -> bool {
    d.nvars() == a.nvars()
        && a.forms().iter().all(|f| {
            let alpha = f.to_poly::<F>();
            let image = d.apply(&alpha);
            image.is_zero() || exact_div(&image, &alpha).is_some()
        })
}

/// Determinant of a square polynomial matrix by Laplace expansion along
/// rows, memoized on the set of columns used.
pub fn determinant<F: Field>(m: &[Vec<Polynomial<F>>], nvars: usize) -> Polynomial<F> {
    fn go<F: Field>(
        m: &[Vec<Polynomial<F>>],
        used: u32,
        nvars: usize,
        memo: &mut HashMap<u32, Polynomial<F>>,
    ) -> Polynomial<F> {
        let row = used.count_ones() as usize;
        if row == m.len() {
            return Polynomial::one(nvars);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(nvars);
        let mut sign_neg = false;
        for c in 0..m.len() {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = go(m, used | (1 << c), nvars, memo);
                let term = e * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(m.iter().all(|r| r.len() == m.len()), "square matrix");
    go(m, 0, nvars, &mut HashMap::new())
}

/// Saito's criterion: `l` logarithmic derivations form a basis of `D(A)`
/// iff their coefficient determinant is a nonzero multiple of `Q(A)`.
pub fn saito_check<F: Field>(cands: &[Derivation<F>], a: &Arrangement) -> Result<bool> {
    let l = a.nvars();
    if cands.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "{} candidates for {l} variables",
            cands.len()
        )));
    }
    if let Some(i) = cands.iter().position(|d| !is_logarithmic(d, a)) {
        return Err(Error::NotLogarithmic(i));
    }
    let rows: Vec<Vec<Polynomial<F>>> = cands.iter().map(|d| d.coeffs.clone()).collect();
    let det = determinant(&rows, l);
    let q = a.defining_polynomial::<F>();
    let Some(c) = det.lead_coeff() else {
        return Ok(false);
    };
    let scale = c.clone() / q.lead_coeff().unwrap().clone();
    Ok(det == q.scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::scalar::Rat;

    fn der(s: &[&str]) -> Derivation<Rat> {
        let names = default_var_names(s.len());
        Derivation::new(s.iter().map(|x| parse_poly(x, &names).unwrap()).collect()).unwrap()
    }

    fn arr(rows: &[&[i64]]) -> Arrangement {
        Arrangement::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn euler() {
        let e = euler_field::<Rat>(2);
        assert_eq!(e, der(&["x", "y"]));
        assert_eq!(e.pdeg(), Some(1));
        let b = arr(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let q = b.defining_polynomial::<Rat>();
        assert_eq!(euler_field::<Rat>(4).apply(&q), q.scale(&Rat::integer(4)));
        assert!(is_logarithmic(&euler_field::<Rat>(4), &b));
    }

    #[test]
    fn logarithmic_membership() {
        let a = arr(&[&[1, 0], &[0, 1]]);
        assert!(is_logarithmic(&der(&["x", "0"]), &a));
        assert!(!is_logarithmic(&der(&["y", "0"]), &a));
    }

    #[test]
    fn saito() {
        let b = arr(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let basis = [der(&["x", "0", "0", "0"]), der(&["0", "y", "0", "0"]), der(&["0", "0", "z", "0"]), der(&["0", "0", "0", "t"])];
        assert!(saito_check(&basis, &b).unwrap());
        let dependent = [basis[0].clone(), basis[0].clone(), basis[2].clone(), basis[3].clone()];
        assert!(!saito_check(&dependent, &b).unwrap());
        let braid = arr(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        let cands = [der(&["1", "1", "1"]), der(&["x", "y", "z"]), der(&["x^2", "y^2", "z^2"])];
        assert!(saito_check(&cands, &braid).unwrap());
        let bad = [der(&["1", "0", "0"]), der(&["x", "y", "z"]), der(&["x^2", "y^2", "z^2"])];
        assert_eq!(saito_check(&bad, &braid), Err(Error::NotLogarithmic(0)));
    }

    #[test]
    fn determinant_small() {
        let names = default_var_names(2);
        let p = |s: &str| parse_poly::<Rat>(s, &names).unwrap();
        let m = vec![vec![p("x"), p("y")], vec![p("1"), p("x")]];
        assert_eq!(determinant(&m, 2), p("x^2 - y"));
    }
}
