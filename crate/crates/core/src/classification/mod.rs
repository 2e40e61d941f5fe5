//! Logarithmic derivations and the free / plus-one generated classification.
//!
//! Everything is read off one computation: the kernel resolution of the row
//! `(∂_1 Q, ..., ∂_l Q, Q)`. Its first kernel is `D(A)` (the first `l`
//! coordinates of each syzygy are a derivation), the later kernels resolve
//! `D(A)`, and minimalizing the whole chain gives the minimal resolution of
//! `S/J(A)`.

mod derivation;
pub mod theorems;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use derivation::{determinant, euler_field, is_logarithmic, saito_check, Derivation};
pub use theorems::{verify_addition_theorem, verify_deletion_theorem, AdditionReport, DeletionReport};

use crate::algebra::{FreeModule, HomMatrix, Polynomial};
use crate::arrangement::Arrangement;
use crate::groebner::resolution::resolve_map;
use crate::groebner::{free_resolution, BettiTable, GradedResolution};
use crate::scalar::{Field, Rat};

/// Outcome of the classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Kind {
    Free { exponents: Vec<i64> },
    PlusOneGenerated { poexp: Vec<i64>, level: i64 },
    Other,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Free { .. } => "Free",
            Kind::PlusOneGenerated { .. } => "PlusOneGenerated",
            Kind::Other => "Other",
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Kind::Free { .. })
    }

    pub fn is_pog(&self) -> bool {
        matches!(self, Kind::PlusOneGenerated { .. })
    }
}

/// Minimal generators of `D(A)` and a minimal resolution of `D(A)` whose
/// shifts are polynomial degrees.
#[derive(Debug, Clone)]
pub struct DerivationModule<F: Field = Rat> {
    pub generators: Vec<Derivation<F>>,
    pub resolution: GradedResolution<F>,
}

impl<F: Field> DerivationModule<F> {
    /// Polynomial degrees of the minimal generators.
    pub fn pdegs(&self) -> Vec<i64> {
        self.resolution.modules()[0].degrees().to_vec()
    }

    /// `0 -> S(-3) -> S(-1)^2+S(-2)^3 -> D(A)`.
    pub fn notation(&self) -> String {
        let r = &self.resolution;
        let mut parts = vec!["0".to_string()];
        for m in r.modules()[..=r.length()].iter().rev() {
            parts.push(m.notation());
        }
        parts.push("D(A)".into());
        parts.join(" -> ")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub resolution_us: u64,
    pub minimalize_us: u64,
}

#[derive(Debug, Clone)]
pub struct Classification<F: Field = Rat> {
    pub kind: Kind,
    /// Betti table of `S/J(A)`.
    pub betti: BettiTable,
    /// Minimal resolution of `S/J(A)`.
    pub resolution: GradedResolution<F>,
    pub derivations: DerivationModule<F>,
    /// The resolution has the plus-one generated shape but the linear entry
    /// of the last map vanishes.
    pub manual_review: bool,
    pub timings: Timings,
}

impl<F: Field> Classification<F> {
    pub fn projdim(&self) -> usize {
        self.betti.projdim()
    }

    /// `{kind, exponents | poexp, level, manual_review, betti, resolution,
    /// derivations}`, plus `timings` on request. Without timings the output
    /// depends only on the input.
    pub fn to_json(&self, names: &[String], timings: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(&self.kind).expect("plain data");
        let obj = v.as_object_mut().unwrap();
        obj.insert("manual_review".into(), self.manual_review.into());
        obj.insert("betti".into(), self.betti.to_json());
        obj.insert("resolution".into(), self.betti.notation().into());
        obj.insert("derivation_resolution".into(), self.derivations.notation().into());
        obj.insert(
            "derivations".into(),
            self.derivations
                .generators
                .iter()
                .map(|d| {
                    serde_json::json!({
                        "pdeg": d.pdeg(),
                        "coefficients": d.coeffs().iter().map(|c| c.render(names)).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>()
                .into(),
        );
        if timings {
            obj.insert("timings".into(), serde_json::to_value(self.timings).unwrap());
        }
        v
    }
}

/// Shifts a resolution so that its generators sit in degree `shift` lower.
fn shifted<F: Field>(modules: &[std::sync::Arc<FreeModule>], maps: &[HomMatrix<F>], by: i64) -> GradedResolution<F> {
    let nvars = modules[0].nvars();
    let modules: Vec<_> = modules
        .iter()
        .map(|m| FreeModule::new(nvars, m.degrees().iter().map(|d| d - by).collect()))
        .collect();
    let maps = maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let entries = m.entries();
            let rows = if entries.is_empty() {
                vec![Vec::new(); modules[i].rank()]
            } else {
                entries
            };
            HomMatrix::from_entries(modules[i + 1].clone(), modules[i].clone(), &rows).expect("same shape")
        })
        .collect();
    GradedResolution::from_parts(modules, maps, true)
}

struct Analysis<F: Field> {
    derivations: DerivationModule<F>,
    resolution: GradedResolution<F>,
    betti: BettiTable,
    timings: Timings,
}

fn analyze<F: Field>(a: &Arrangement) -> Analysis<F> {
    let l = a.nvars();
    let n = a.len() as i64;
    if n == 0 {
        let (resolution, betti) = free_resolution(l, &[Polynomial::<F>::one(l)])
            .expect("graded")
            .minimalize();
        let gens = (0..l).map(|i| Derivation::partial(l, i)).collect();
        let m = FreeModule::new(l, vec![0; l]);
        return Analysis {
            derivations: DerivationModule {
                generators: gens,
                resolution: GradedResolution::from_parts(vec![m], Vec::new(), true),
            },
            resolution,
            betti,
            timings: Timings::default(),
        };
    }
    let q = a.defining_polynomial::<F>();
    let mut row = q.gradient();
    row.push(q);
    let mut degrees = vec![n - 1; l];
    degrees.push(n);
    let source = FreeModule::new(l, degrees);
    let phi = HomMatrix::from_entries(source, FreeModule::ring(l), &[row]).expect("one row");

    let start = Instant::now();
    let full = resolve_map(phi).expect("graded");
    let resolution_us = start.elapsed().as_micros() as u64;

    let k1 = &full.maps()[1];
    let generators = k1
        .columns()
        .iter()
        .map(|c| {
            let comps = c.components();
            Derivation::new(comps[..l].to_vec()).expect("same ring")
        })
        .collect();
    let d_res = shifted(&full.modules()[2..], &full.maps()[2..], n - 1);

    let start = Instant::now();
    let (resolution, betti) = full.minimalize();
    let minimalize_us = start.elapsed().as_micros() as u64;
    Analysis {
        derivations: DerivationModule {
            generators,
            resolution: d_res,
        },
        resolution,
        betti,
        timings: Timings {
            resolution_us,
            minimalize_us,
        },
    }
}

/// Minimal generators of `D(A)` with the minimal resolution of `D(A)`.
pub fn derivation_module(a: &Arrangement) -> DerivationModule<Rat> {
    derivation_module_over::<Rat>(a)
}

pub fn derivation_module_over<F: Field>(a: &Arrangement) -> DerivationModule<F> {
    analyze::<F>(a).derivations
}

pub fn classify(a: &Arrangement) -> Classification<Rat> {
    classify_over::<Rat>(a)
}

/// Free when `S/J` is zero or has projective dimension at most 2;
/// plus-one generated when the minimal resolution of `S/J` has the shape
/// `0 -> S(-n-d) -> S(-n-d+1)+... -> S(-n+1)^r -> S` with a nonzero
/// linear entry in the last map; otherwise other.
pub fn classify_over<F: Field>(a: &Arrangement) -> Classification<F> {
    let an = analyze::<F>(a);
    let n = a.len() as i64;
    let mut pdegs = an.derivations.pdegs();
    pdegs.sort_unstable();
    let mut manual_review = false;
    let kind = if n == 0 || an.betti.total(0) == 0 || an.betti.projdim() <= 2 {
        Kind::Free { exponents: pdegs }
    } else {
        match pog_level(&an.resolution, &an.betti) {
            Shape::Pog(d) => {
                let mut poexp = pdegs.clone();
                match poexp.iter().position(|&e| e == d) {
                    Some(i) if poexp.len() == a.nvars() + 1 && an.derivations.resolution.modules()[1].rank() == 1 => {
                        poexp.remove(i);
                        Kind::PlusOneGenerated { poexp, level: d }
                    }
                    _ => {
                        manual_review = true;
                        Kind::Other
                    }
                }
            }
            Shape::VanishingAlpha => {
                manual_review = true;
                Kind::Other
            }
            Shape::No => Kind::Other,
        }
    };
    Classification {
        kind,
        betti: an.betti,
        resolution: an.resolution,
        derivations: an.derivations,
        manual_review,
        timings: an.timings,
    }
}

enum Shape {
    /// Plus-one generated of the given level.
    Pog(i64),
    /// Right shifts, but every candidate linear entry is zero.
    VanishingAlpha,
    No,
}

fn pog_level<F: Field>(res: &GradedResolution<F>, betti: &BettiTable) -> Shape {
    if betti.projdim() != 3 || betti.total(3) != 1 || betti.total(1) != betti.total(2) {
        return Shape::No;
    }
    let f1 = betti.shifts(1);
    if f1.windows(2).any(|w| w[0] != w[1]) {
        return Shape::No;
    }
    let top = betti.shifts(3)[0];
    let f2 = res.modules()[2].degrees();
    let rows: Vec<usize> = (0..f2.len()).filter(|&r| f2[r] == top - 1).collect();
    if rows.is_empty() {
        return Shape::No;
    }
    let d3 = &res.maps()[2];
    if rows.iter().any(|&r| !d3.entry(r, 0).is_zero()) {
        // F_1 = S(-n+1)^r, so n = shift + 1 and the level is top - n.
        Shape::Pog(top - f1[0] - 1)
    } else {
        Shape::VanishingAlpha
    }
}
