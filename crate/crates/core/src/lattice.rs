//! The geometric lattice of flats.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::budget::Budget;
use crate::error::{budget_exceeded, Result};
use crate::matroid::Matroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub members: ElementSet,
    pub rank: usize,
}

/// Index of a flat inside a [`FlatLattice`]: flats are numbered by rank,
/// then lexicographically within a rank.
pub type FlatId = usize;

/// All flats of a simple matroid, ranked, with joins resolved through a
/// precomputed single-element step table.
#[derive(Debug, Clone)]
pub struct FlatLattice {
    matroid: Arc<Matroid>,
    flats: Vec<Flat>,
    /// `offsets[p]..offsets[p + 1]` are the ids of rank-`p` flats.
    offsets: Vec<usize>,
    index: HashMap<ElementSet, FlatId>,
    /// `step[id * n + (e - 1)]` is the id of `cl(F ∪ {e})`.
    step: Vec<u32>,
}

impl FlatLattice {
    /// Breadth-first closure saturation: the covers of `F` are the closures
    /// of `F ∪ {e}` for `e ∉ F`.
    pub fn enumerate(matroid: &Matroid, budget: &Budget) -> Result<Self> {
        let n = matroid.size();
        let r = matroid.rank_total();
        let bottom = matroid.closure(ElementSet::EMPTY);
        let mut levels: Vec<Vec<ElementSet>> = vec![vec![bottom]];
        // cover map per flat, keyed by members; resolved to ids afterwards
        let mut covers: HashMap<ElementSet, Vec<ElementSet>> = HashMap::new();
        let mut total = 1usize;
        for p in 0..r {
            let mut next: HashMap<ElementSet, ()> = HashMap::new();
            for &f in &levels[p] {
                let mut row = vec![ElementSet::EMPTY; n];
                let mut outside = matroid.ground().difference(f);
                for e in f {
                    row[e - 1] = f;
                }
                while let Some(e) = outside.first() {
                    let g = matroid.closure(f.with(e));
                    for x in g.difference(f) {
                        row[x - 1] = g;
                    }
                    outside = outside.difference(g);
                    if next.insert(g, ()).is_none() {
                        total += 1;
                        if total > budget.flats {
                            return Err(budget_exceeded("flat enumeration", budget.flats));
                        }
                    }
                }
                covers.insert(f, row);
            }
            let mut level: Vec<ElementSet> = next.into_keys().collect();
            level.sort();
            levels.push(level);
        }
        let top = matroid.ground();
        covers.insert(top, vec![top; n]);

        let mut flats = Vec::with_capacity(total);
        let mut offsets = vec![0];
        for (p, level) in levels.iter().enumerate() {
            flats.extend(level.iter().map(|&m| Flat { members: m, rank: p }));
            offsets.push(flats.len());
        }
        let index: HashMap<ElementSet, FlatId> =
            flats.iter().enumerate().map(|(i, f)| (f.members, i)).collect();
        let mut step = Vec::with_capacity(flats.len() * n);
        for f in &flats {
            step.extend(covers[&f.members].iter().map(|g| index[g] as u32));
        }
        Ok(FlatLattice {
            matroid: Arc::new(matroid.clone()),
            flats,
            offsets,
            index,
            step,
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn rank(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn size(&self) -> usize {
        self.matroid.size()
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, id: FlatId) -> Flat {
        self.flats[id]
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Flats of rank `p`, lexicographically ordered.
    pub fn level(&self, p: usize) -> &[Flat] {
        &self.flats[self.offsets[p]..self.offsets[p + 1]]
    }

    /// Id range of the flats of rank `p`.
    pub fn level_ids(&self, p: usize) -> std::ops::Range<FlatId> {
        self.offsets[p]..self.offsets[p + 1]
    }

    /// Position of a flat inside its rank level.
    pub fn position(&self, id: FlatId) -> usize {
        id - self.offsets[self.flats[id].rank]
    }

    pub fn id_of(&self, members: ElementSet) -> Option<FlatId> {
        self.index.get(&members).copied()
    }

    pub fn bottom(&self) -> FlatId {
        0
    }

    pub fn top(&self) -> FlatId {
        self.flats.len() - 1
    }

    /// Id of the rank-one flat `{e}`.
    pub fn atom(&self, e: usize) -> FlatId {
        self.step_to(self.bottom(), e)
    }

    /// `cl(F ∪ {e})`.
    pub fn step_to(&self, id: FlatId, e: usize) -> FlatId {
        self.step[id * self.size() + e - 1] as FlatId
    }

    pub fn join(&self, a: FlatId, b: FlatId) -> FlatId {
        let mut cur = a;
        let mut rest = self.flats[b].members.difference(self.flats[a].members);
        while let Some(e) = rest.first() {
            cur = self.step_to(cur, e);
            rest = rest.difference(self.flats[cur].members);
        }
        cur
    }

    /// Meet of two flats: their intersection, which is again a flat.
    pub fn meet(&self, a: FlatId, b: FlatId) -> FlatId {
        let m = self.flats[a].members.intersection(self.flats[b].members);
        self.index[&m]
    }

    pub fn leq(&self, a: FlatId, b: FlatId) -> bool {
        self.flats[a].members.is_subset(self.flats[b].members)
    }

    /// `(|L^0|, ..., |L^r|)`.
    pub fn whitney_numbers(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }
}
