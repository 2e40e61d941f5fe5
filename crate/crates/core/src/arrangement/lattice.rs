use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Arrangement;
use crate::scalar::{Field, Rat};

/// Row space kept in reduced echelon form, grown one vector at a time.
#[derive(Debug, Clone, Default)]
pub(crate) struct Span {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Span {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &(f.clone() * y.clone());
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &(f.clone() * y.clone());
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// A flat, identified by the closed set of hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    indices: Vec<usize>,
    rank: usize,
}

impl Flat {
    pub(crate) fn new(indices: Vec<usize>, rank: usize) -> Flat {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Flat { indices, rank }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Codimension of the flat.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.indices.binary_search(&h).is_ok()
    }

    /// `self ≤ other` in the lattice (reverse inclusion of subspaces).
    pub fn is_below(&self, other: &Flat) -> bool {
        self.indices.iter().all(|i| other.contains_hyperplane(*i))
    }
}

/// The intersection lattice, flats grouped by rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionLattice {
    levels: Vec<Vec<Flat>>,
    /// `(p, a, b)`: flat `a` of rank `p` is covered by flat `b` of rank `p+1`.
    covers: Vec<(usize, usize, usize)>,
}

impl IntersectionLattice {
    /// Level-by-level construction: every flat of rank `p+1` is the closure
    /// of a flat of rank `p` and one more hyperplane.
    pub fn build(a: &Arrangement) -> Self {
        let mut levels: Vec<Vec<Flat>> = vec![vec![Flat::new(Vec::new(), 0)]];
        loop {
            let cur = levels.last().unwrap();
            let mut next: BTreeSet<Flat> = BTreeSet::new();
            for x in cur {
                let span = a.span_of(x.indices());
                let mut covered: Vec<bool> = vec![false; a.len()];
                for &i in x.indices() {
                    covered[i] = true;
                }
                for h in 0..a.len() {
                    if covered[h] {
                        continue;
                    }
                    let mut s = span.clone();
                    s.insert(&a.form(h).to_vector::<Rat>());
                    let closed = a.closed_indices(&s);
                    for &i in &closed {
                        covered[i] = true;
                    }
                    next.insert(Flat::new(closed, s.dim()));
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        let mut covers = Vec::new();
        for p in 0..levels.len().saturating_sub(1) {
            for (ia, x) in levels[p].iter().enumerate() {
                for (ib, y) in levels[p + 1].iter().enumerate() {
                    if x.is_below(y) {
                        covers.push((p, ia, ib));
                    }
                }
            }
        }
        IntersectionLattice { levels, covers }
    }

    /// Closure of every subset of hyperplanes, deduplicated. Exponential;
    /// an oracle for small arrangements.
    pub fn brute_force(a: &Arrangement) -> Self {
        assert!(a.len() <= 20, "brute force is exponential");
        let mut by_rank: HashMap<usize, BTreeSet<Flat>> = HashMap::new();
        for mask in 0u32..(1u32 << a.len()) {
            let subset: Vec<usize> = (0..a.len()).filter(|i| mask & (1 << i) != 0).collect();
            let f = a.closure(&subset).expect("indices in range");
            by_rank.entry(f.rank()).or_default().insert(f);
        }
        let top = by_rank.keys().max().copied().unwrap_or(0);
        let levels: Vec<Vec<Flat>> = (0..=top)
            .map(|p| by_rank.remove(&p).unwrap_or_default().into_iter().collect())
            .collect();
        let mut covers = Vec::new();
        for p in 0..levels.len().saturating_sub(1) {
            for (ia, x) in levels[p].iter().enumerate() {
                for (ib, y) in levels[p + 1].iter().enumerate() {
                    if x.is_below(y) {
                        covers.push((p, ia, ib));
                    }
                }
            }
        }
        IntersectionLattice { levels, covers }
    }

    pub fn levels(&self) -> &[Vec<Flat>] {
        &self.levels
    }

    /// Flats of rank `p`; empty past the rank of the arrangement.
    pub fn rank_level(&self, p: usize) -> &[Flat] {
        self.levels.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn covers(&self) -> &[(usize, usize, usize)] {
        &self.covers
    }

    pub fn flats(&self) -> impl Iterator<Item = &Flat> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of flats of each rank.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// The unique maximal flat.
    pub fn center(&self) -> &Flat {
        &self.levels.last().unwrap()[0]
    }
}
