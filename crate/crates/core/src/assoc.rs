//! Associated primes of `S/J(A)`.
//!
//! Every associated prime is `I(X)` for a flat `X`, all rank-2 flats occur,
//! and `I(X)` is associated to `S/J(A)` exactly when the maximal graded
//! ideal is associated to `S/J(A_X)`, with `A_X` written in its own `rank(X)`
//! coordinates. That last test is a saturation: the maximal ideal is
//! associated iff `J` differs from its saturation. Beyond rank 3 this
//! criterion is used as the standard graded fact it is.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Flat};
use crate::classification::classify;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::scalar::Rat;
use crate::algebra::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Free arrangement: exactly the rank-2 flats.
    FreeShortcut,
    /// Projective dimension 3: rank-2 flats and the rank-3 flats with a
    /// non-free localization.
    Combinatorial,
    /// Saturation test on every candidate flat of rank at least 3.
    OracleSaturation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPrimes {
    /// Sorted by rank, then by hyperplane indices.
    pub flats: Vec<Flat>,
    pub method: Method,
}

impl AssociatedPrimes {
    /// Flats above rank 2, the embedded primes.
    pub fn embedded(&self) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(|f| f.rank() > 2)
    }

    pub fn to_json(&self, a: &Arrangement) -> serde_json::Value {
        self.flats
            .iter()
            .map(|f| {
                let gens: Vec<String> = a
                    .flat_basis(f)
                    .expect("flat of this arrangement")
                    .iter()
                    .map(|&i| a.form(i).render(a.names()))
                    .collect();
                serde_json::json!({
                    "flat": f.indices(),
                    "rank": f.rank(),
                    "generators": gens,
                    "method": self.method,
                })
            })
            .collect::<Vec<_>>()
            .into()
    }
}

fn sorted(mut flats: Vec<Flat>) -> Vec<Flat> {
    flats.sort_by(|x, y| (x.rank(), x.indices()).cmp(&(y.rank(), y.indices())));
    flats
}

/// Flats of rank `2..=min(rank A, pd)`, where `pd` is the projective
/// dimension of `S/J(A)`; no flat of larger codimension can be associated.
pub fn candidate_flats(a: &Arrangement) -> Vec<Flat> {
    let pd = classify(a).projdim();
    candidates_up_to(a, pd)
}

fn candidates_up_to(a: &Arrangement, pd: usize) -> Vec<Flat> {
    let lattice = a.lattice();
    let top = a.rank().min(pd);
    (2..=top)
        .flat_map(|p| lattice.rank_level(p).iter().cloned())
        .collect()
}

/// Whether `I(X)` is associated to `S/J(A)`, by the saturation test on the
/// essentialized localization.
pub fn is_associated_oracle(a: &Arrangement, x: &Flat) -> Result<bool> {
    if x.rank() < 2 {
        return Err(Error::Precondition(format!("flat of rank {} (need at least 2)", x.rank())));
    }
    let local = a.essentialize(x)?.arrangement;
    let s = local.nvars();
    let j = local.jacobian_ideal::<Rat>();
    let m = Ideal::new(s, (0..s).map(|i| Polynomial::var(s, i)).collect())?;
    Ok(j != j.saturation(&m)?)
}

/// Whether the localization at `X` is free, computed in `rank(X)`
/// variables.
fn localization_is_free(a: &Arrangement, x: &Flat) -> Result<bool> {
    let local = a.essentialize(x)?.arrangement;
    Ok(classify(&local).kind.is_free())
}

fn by_combinatorics(a: &Arrangement) -> Result<Vec<Flat>> {
    let lattice = a.lattice();
    let mut flats = lattice.rank_level(2).to_vec();
    let rank3 = lattice.rank_level(3);
    let keep = rank3
        .par_iter()
        .map(|x| localization_is_free(a, x).map(|free| !free))
        .collect::<Result<Vec<bool>>>()?;
    flats.extend(rank3.iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x.clone()));
    Ok(sorted(flats))
}

fn by_oracle(a: &Arrangement, pd: usize) -> Result<Vec<Flat>> {
    let cands = candidates_up_to(a, pd);
    let keep = cands
        .par_iter()
        .map(|x| if x.rank() == 2 { Ok(true) } else { is_associated_oracle(a, x) })
        .collect::<Result<Vec<bool>>>()?;
    Ok(sorted(cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect()))
}

/// `Ass(S/J(A))`, by the cheapest method that applies. Per-flat tests run
/// on the current rayon pool.
pub fn associated_primes(a: &Arrangement) -> Result<AssociatedPrimes> {
    let c = classify(a);
    if c.kind.is_free() {
        return Ok(AssociatedPrimes {
            flats: sorted(a.lattice().rank_level(2).to_vec()),
            method: Method::FreeShortcut,
        });
    }
    let pd = c.projdim();
    if pd == 3 {
        Ok(AssociatedPrimes {
            flats: by_combinatorics(a)?,
            method: Method::Combinatorial,
        })
    } else {
        Ok(AssociatedPrimes {
            flats: by_oracle(a, pd)?,
            method: Method::OracleSaturation,
        })
    }
}

/// Both methods on an arrangement with `pd(S/J) = 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub agree: bool,
    pub combinatorial: Vec<Vec<usize>>,
    pub oracle: Vec<Vec<usize>>,
    pub only_combinatorial: Vec<Vec<usize>>,
    pub only_oracle: Vec<Vec<usize>>,
    pub combinatorial_us: u64,
    pub oracle_us: u64,
}

pub fn cross_validate_ass(a: &Arrangement) -> Result<CrossValidation> {
    let pd = classify(a).projdim();
    if pd != 3 {
        return Err(Error::Precondition(format!("projective dimension is {pd}, not 3")));
    }
    let t = Instant::now();
    let comb = by_combinatorics(a)?;
    let combinatorial_us = t.elapsed().as_micros() as u64;
    let t = Instant::now();
    let orac = by_oracle(a, pd)?;
    let oracle_us = t.elapsed().as_micros() as u64;
    let idx = |v: &[Flat]| v.iter().map(|f| f.indices().to_vec()).collect::<Vec<_>>();
    let only_combinatorial = comb.iter().filter(|f| !orac.contains(f)).map(|f| f.indices().to_vec()).collect();
    let only_oracle = orac.iter().filter(|f| !comb.contains(f)).map(|f| f.indices().to_vec()).collect();
    Ok(CrossValidation {
        agree: comb == orac,
        combinatorial: idx(&comb),
        oracle: idx(&orac),
        only_combinatorial,
        only_oracle,
        combinatorial_us,
        oracle_us,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::io::from_text;

    #[test]
    fn example_34() {
        let a = from_text("x, x - y, x - t, y - z, z - t").unwrap();
        let ass = associated_primes(&a).unwrap();
        assert_eq!(ass.method, Method::Combinatorial);
        let embedded: Vec<&[usize]> = ass.embedded().map(|f| f.indices()).collect();
        assert_eq!(embedded, vec![&[1, 2, 3, 4][..]]);
        assert_eq!(ass.flats.iter().filter(|f| f.rank() == 2).count(), a.lattice().rank_level(2).len());
        assert!(cross_validate_ass(&a).unwrap().agree);
    }

    #[test]
    fn free_has_only_rank_two() {
        let a = from_text("x, y, z, x - y, x - z, y - z").unwrap();
        let ass = associated_primes(&a).unwrap();
        assert_eq!(ass.method, Method::FreeShortcut);
        assert!(ass.flats.iter().all(|f| f.rank() == 2));
        assert_eq!(candidate_flats(&a).iter().map(|f| f.rank()).max(), Some(2));
        let center = a.center();
        assert!(!is_associated_oracle(&a, &center).unwrap());
    }

    #[test]
    fn oracle_on_rank_two_and_errors() {
        let a = from_text("x, y, z, x + y + z").unwrap();
        let x = a.flat(&[0, 1]).unwrap();
        assert!(is_associated_oracle(&a, &x).unwrap());
        let h = a.flat(&[0]).unwrap();
        assert!(matches!(is_associated_oracle(&a, &h), Err(Error::Precondition(_))));
        assert!(cross_validate_ass(&a).unwrap().agree);
        let free = from_text("x, y, z").unwrap();
        assert!(matches!(cross_validate_ass(&free), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_cases_are_empty() {
        let a = from_text("variables: x, y\nx").unwrap();
        assert!(associated_primes(&a).unwrap().flats.is_empty());
    }
}
