//! Term orders on free modules.
//!
//! Every order the engine uses is described by one key per component:
//! `(degree, base, lead, rank)`. A term `m*e_k` compares by internal degree
//! `deg(m) + degree_k`, then by `base_k`, then by degrevlex on `m * lead_k`,
//! then by `rank_k`. The plain graded order is `base_k = rank_k = k`,
//! `lead_k = 1`; a Schreyer order induced by a map takes `lead_k` and `base_k`
//! from the leading term of column `k` and ranks components by the chain of
//! component indices, larger index winning ties. Elimination orders are only
//! used on the ring itself.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{FreeModule, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Graded,
    /// Block order on `K[x, t]` with the single variable `aux` dominant.
    Eliminate { aux: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CompKey {
    degree: i64,
    base: u32,
    lead: Monomial,
    rank: u32,
}

/// A monomial order on the terms of a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    kind: Kind,
    comps: Vec<CompKey>,
}

impl TermOrder {
    /// Internal degree, then component index, then degrevlex. Coincides with
    /// [`FreeModule::cmp_terms`].
    pub fn graded(module: &FreeModule) -> Arc<TermOrder> {
        Arc::new(TermOrder {
            kind: Kind::Graded,
            comps: module
                .degrees()
                .iter()
                .enumerate()
                .map(|(k, &d)| CompKey {
                    degree: d,
                    base: k as u32,
                    lead: Monomial::one(),
                    rank: k as u32,
                })
                .collect(),
        })
    }

    /// Degrevlex on the ring.
    pub fn degrevlex() -> Arc<TermOrder> {
        TermOrder::graded(&FreeModule::ring(0))
    }

    /// Elimination order for the auxiliary variable `aux` on the ring.
    pub fn eliminate(aux: usize) -> Arc<TermOrder> {
        Arc::new(TermOrder {
            kind: Kind::Eliminate { aux },
            comps: vec![CompKey {
                degree: 0,
                base: 0,
                lead: Monomial::one(),
                rank: 0,
            }],
        })
    }

    /// Schreyer order on the source of a map whose columns have leading terms
    /// `leads` (component, monomial) in `self`. Zero columns are `None`.
    pub fn schreyer(&self, degrees: &[i64], leads: &[Option<(usize, Monomial)>]) -> Arc<TermOrder> {
        assert_eq!(degrees.len(), leads.len());
        assert_eq!(self.kind, Kind::Graded, "Schreyer orders need a graded base");
        let mut keys: Vec<CompKey> = Vec::with_capacity(leads.len());
        let mut chains: Vec<(u32, u32, usize)> = Vec::with_capacity(leads.len());
        for (k, lead) in leads.iter().enumerate() {
            match lead {
                Some((j, m)) => {
                    let prev = &self.comps[*j];
                    keys.push(CompKey {
                        degree: degrees[k],
                        base: prev.base,
                        lead: m.mul(&prev.lead),
                        rank: 0,
                    });
                    chains.push((0, prev.rank, k));
                }
                None => {
                    keys.push(CompKey {
                        degree: degrees[k],
                        base: u32::MAX,
                        lead: Monomial::one(),
                        rank: 0,
                    });
                    chains.push((1, 0, k));
                }
            }
        }
        chains.sort_unstable();
        for (r, &(_, _, k)) in chains.iter().enumerate() {
            keys[k].rank = r as u32;
        }
        Arc::new(TermOrder {
            kind: Kind::Graded,
            comps: keys,
        })
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_graded(&self) -> bool {
        self.kind == Kind::Graded
    }

    /// Generator degree of component `k` (0 for elimination orders).
    #[inline]
    pub fn degree(&self, k: usize) -> i64 {
        self.comps[k].degree
    }

    /// Sugar-style degree of a term: internal degree for graded orders,
    /// total degree otherwise.
    #[inline]
    pub fn term_degree(&self, k: usize, m: &Monomial) -> i64 {
        m.degree() as i64 + self.comps[k].degree
    }

    #[inline]
    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.kind {
            Kind::Eliminate { aux } => a.1.cmp_eliminate(b.1, aux),
            Kind::Graded => {
                let ka = &self.comps[a.0];
                let kb = &self.comps[b.0];
                let da = a.1.degree() as i64 + ka.degree;
                let db = b.1.degree() as i64 + kb.degree;
                da.cmp(&db)
                    .then(ka.base.cmp(&kb.base))
                    .then_with(|| a.1.cmp_degrevlex_scaled(&ka.lead, b.1, &kb.lead))
                    .then(ka.rank.cmp(&kb.rank))
            }
        }
    }
}
