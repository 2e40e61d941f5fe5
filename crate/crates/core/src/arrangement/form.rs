use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

/// A homogeneous linear form with coprime integer coefficients whose first
/// nonzero coefficient is positive: the canonical equation of a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    /// Canonical representative of the hyperplane `Σ c_i x_i = 0`.
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_bigints(big)
    }

    pub fn from_rationals<F: Field>(coeffs: &[F]) -> Result<Self> {
        let ratios: Vec<_> = coeffs.iter().map(|c| c.to_ratio()).collect();
        let den = ratios
            .iter()
            .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let ints = ratios
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        Self::from_bigints(ints)
    }

    fn from_bigints(mut c: Vec<BigInt>) -> Result<Self> {
        let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::ZeroForm(0));
        }
        let lead_negative = c.iter().find(|x| !x.is_zero()).unwrap().is_negative();
        for x in c.iter_mut() {
            *x = &*x / &g;
            if lead_negative {
                *x = -&*x;
            }
        }
        let coeffs = c
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::Precondition(format!("coefficient {x} exceeds 64 bits")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearForm { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_vector<F: Field>(&self) -> Vec<F> {
        self.coeffs.iter().map(|&c| F::from_i64(c)).collect()
    }

    pub fn to_poly<F: Field>(&self) -> Polynomial<F> {
        Polynomial::linear(&self.to_vector::<F>())
    }

    /// Value of the form at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .fold(Rat::zero(), |acc, (&c, x)| acc + Rat::integer(c) * x.clone())
    }

    pub fn render(&self, names: &[String]) -> String {
        self.to_poly::<Rat>().render(names)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::algebra::default_var_names(self.nvars());
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representative() {
        let a = LinearForm::new(&[0, -2, 4]).unwrap();
        assert_eq!(a.coeffs(), &[0, 1, -2]);
        assert_eq!(a, LinearForm::new(&[0, 3, -6]).unwrap());
        let b = LinearForm::from_rationals(&[Rat::new(1, 2), Rat::new(-1, 3)]).unwrap();
        assert_eq!(b.coeffs(), &[3, -2]);
        assert!(LinearForm::new(&[0, 0]).is_err());
        assert_eq!(a.to_string(), "y - 2*z");
    }
}
