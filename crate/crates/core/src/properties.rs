//! Structural invariants checked on a single arrangement: freeness and
//! plus-one generation under localization, Betti monotonicity, Saito bases,
//! associated primes, the deletion and addition theorems and coordinate
//! invariance. Used by the CLI and the test suites.

use serde::Serialize;

use crate::arrangement::{Arrangement, Flat};
use crate::assoc::{associated_primes, cross_validate_ass, is_associated_oracle};
use crate::classification::{
    classify, euler_field, is_logarithmic, saito_check, verify_addition_theorem, verify_deletion_theorem,
    Classification, Kind,
};
use crate::error::{Error, Result};
use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub kind: Kind,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub localization: bool,
    pub associated_primes: bool,
    pub theorems: bool,
    pub invariance: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            localization: true,
            associated_primes: true,
            theorems: true,
            invariance: true,
        }
    }
}

struct Recorder {
    checks: usize,
    violations: Vec<Violation>,
}

impl Recorder {
    fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                property: property.into(),
                detail: detail(),
            });
        }
    }
}

fn totals_of_d(c: &Classification) -> Vec<usize> {
    c.derivations.resolution.modules().iter().map(|m| m.rank()).collect()
}

fn le_all(small: &[usize], big: &[usize]) -> bool {
    small
        .iter()
        .enumerate()
        .all(|(i, &b)| b <= big.get(i).copied().unwrap_or(0))
}

/// Kind with exponents sorted, for comparisons across coordinate changes.
fn normalized(k: &Kind) -> Kind {
    match k.clone() {
        Kind::Free { mut exponents } => {
            exponents.sort_unstable();
            Kind::Free { exponents }
        }
        Kind::PlusOneGenerated { mut poexp, level } => {
            poexp.sort_unstable();
            Kind::PlusOneGenerated { poexp, level }
        }
        Kind::Other => Kind::Other,
    }
}

/// Every check that applies to `a`.
pub fn check_arrangement(a: &Arrangement, which: Checks) -> Result<PropertyReport> {
    let l = a.nvars();
    let n = a.len() as i64;
    let c = classify(a);
    let mut r = Recorder {
        checks: 0,
        violations: Vec::new(),
    };

    r.check("euler_logarithmic", is_logarithmic(&euler_field::<Rat>(l), a), || {
        "the Euler field is not logarithmic".into()
    });
    for (i, d) in c.derivations.generators.iter().enumerate() {
        r.check("generators_logarithmic", is_logarithmic(d, a), || format!("generator {i} is not logarithmic"));
    }
    let totals = c.betti.totals();
    match &c.kind {
        Kind::Free { exponents } => {
            r.check("free_exponent_sum", exponents.iter().sum::<i64>() == n, || {
                format!("exponents {exponents:?} do not sum to {n}")
            });
            if c.betti.total(0) > 0 {
                let ok = totals.len() == 3 && totals[2] + 1 == totals[1] || totals.len() == 2;
                r.check("free_betti_shape", ok, || format!("Betti totals {totals:?}"));
            }
            let gens = &c.derivations.generators;
            let ok = gens.len() == l && saito_check(gens, a).unwrap_or(false);
            r.check("saito_basis", ok, || format!("{} generators fail Saito's criterion", gens.len()));
        }
        Kind::PlusOneGenerated { .. } => {
            let rk = a.rank();
            r.check("pog_betti_shape", totals == vec![1, rk, rk, 1], || {
                format!("Betti totals {totals:?} for rank {rk}")
            });
        }
        Kind::Other => {}
    }

    let lattice = a.lattice();
    if which.localization {
        let d_totals = totals_of_d(&c);
        for x in lattice.flats().filter(|x| x.rank() >= 1) {
            let ax = a.localization(x)?;
            let cx = classify(&ax);
            let name = || format!("flat {:?}", x.indices());
            r.check("betti_monotonicity", le_all(&cx.betti.totals(), &totals), || {
                format!("{}: {:?} vs {:?}", name(), cx.betti.totals(), totals)
            });
            r.check("derivation_betti_monotonicity", le_all(&totals_of_d(&cx), &d_totals), || {
                format!("{}: {:?} vs {:?}", name(), totals_of_d(&cx), d_totals)
            });
            r.check("projdim_monotonicity", cx.projdim() <= c.projdim(), || {
                format!("{}: {} vs {}", name(), cx.projdim(), c.projdim())
            });
            match &c.kind {
                Kind::Free { .. } => {
                    r.check("localization_of_free", cx.kind.is_free(), || format!("{} is {}", name(), cx.kind.name()))
                }
                Kind::PlusOneGenerated { .. } => {
                    r.check("localization_of_pog", cx.kind.is_free() || cx.kind.is_pog(), || {
                        format!("{} is {}", name(), cx.kind.name())
                    });
                    if !cx.kind.is_free() {
                        let g = cx.derivations.generators.len();
                        r.check("pog_local_generators", g == l + 1, || format!("{}: {g} generators", name()));
                    }
                }
                Kind::Other => {}
            }
        }
    }

    if which.associated_primes && a.len() >= 2 {
        let ass = associated_primes(a)?;
        let rank2 = lattice.rank_level(2);
        r.check("ass_contains_rank2", rank2.iter().all(|x| ass.flats.contains(x)), || {
            "a rank-2 flat is missing".into()
        });
        let pd = c.projdim();
        r.check("ass_rank_bound", ass.flats.iter().all(|x| x.rank() <= pd), || {
            format!("a flat above projective dimension {pd}")
        });
        for x in ass.embedded() {
            let free = classify(&a.localization(x)?).kind.is_free();
            r.check("ass_non_free_localization", !free, || format!("flat {:?} has a free localization", x.indices()));
        }
        if c.kind.is_free() {
            r.check("ass_free_rank2", ass.flats.len() == rank2.len(), || "embedded prime of a free arrangement".into());
        }
        if pd == 3 {
            let cv = cross_validate_ass(a)?;
            r.check("ass_cross_validation", cv.agree, || {
                format!("only combinatorial {:?}, only oracle {:?}", cv.only_combinatorial, cv.only_oracle)
            });
        }
        check_ass_localization(a, &ass.flats, &mut r)?;
    }

    if which.theorems && a.is_essential() {
        for h in 0..a.len() {
            if c.kind.is_free() {
                let rep = verify_deletion_theorem(a, h)?;
                r.check("deletion_theorem", rep.holds, || serde_json::to_string(&rep).unwrap());
            }
            match verify_addition_theorem(a, h) {
                Ok(rep) => r.check("addition_theorem", rep.holds != Some(false), || serde_json::to_string(&rep).unwrap()),
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }

    if which.invariance && l >= 1 {
        let base = normalized(&c.kind);
        let perm: Vec<usize> = (0..a.len()).rev().collect();
        let p = classify(&a.permuted(&perm)?);
        r.check("permutation_invariance", normalized(&p.kind) == base, || format!("{:?} vs {:?}", p.kind, c.kind));
        // x_i -> x_i + x_{i+1} + 2 x_{i+2}, unitriangular
        let m: Vec<Vec<Rat>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| match j.wrapping_sub(i) {
                        0 | 1 => Rat::integer(1),
                        2 => Rat::integer(2),
                        _ => Rat::integer(0),
                    })
                    .collect()
            })
            .collect();
        let t = classify(&a.transform(&m)?);
        r.check("coordinate_invariance", normalized(&t.kind) == base, || format!("{:?} vs {:?}", t.kind, c.kind));
        r.check("betti_invariance", t.betti == c.betti, || "Betti tables differ".into());
    }

    Ok(PropertyReport {
        kind: c.kind,
        checks: r.checks,
        violations: r.violations,
    })
}

/// For flats `X ⊆ Y`, `I(Y)` is associated for `A` iff it is for `A_X`.
/// Checked for every `X` of rank 3 (or the center, when lower) and every
/// `Y` above it of rank at least 2, with the saturation oracle on `A_X`.
fn check_ass_localization(a: &Arrangement, ass: &[Flat], r: &mut Recorder) -> Result<()> {
    let lattice = a.lattice();
    let top = lattice.levels().len() - 1;
    for x in lattice.rank_level(top.min(3).max(2)) {
        let ax = a.localization(x)?;
        for y in lattice.flats().filter(|y| y.rank() >= 2 && y.is_below(x)) {
            let pos: Vec<usize> = y
                .indices()
                .iter()
                .map(|i| x.indices().binary_search(i).unwrap())
                .collect();
            let yx = ax.flat(&pos)?;
            let in_a = ass.contains(y);
            let in_ax = is_associated_oracle(&ax, &yx)?;
            r.check("ass_localization", in_a == in_ax, || {
                format!("flat {:?} inside {:?}: {in_a} vs {in_ax}", y.indices(), x.indices())
            });
        }
    }
    Ok(())
}

/// Drops hyperplanes one at a time while `property` is still violated.
pub fn minimize_violation(a: &Arrangement, property: &str, which: Checks) -> Arrangement {
    let fails = |b: &Arrangement| {
        check_arrangement(b, which).map_or(false, |rep| rep.violations.iter().any(|v| v.property == property))
    };
    let mut cur = a.clone();
    let mut h = 0;
    while h < cur.len() {
        match cur.deletion(h) {
            Ok(d) if fails(&d) => cur = d,
            _ => h += 1,
        }
    }
    cur
}
