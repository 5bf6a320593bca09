//! Combinatorial models of the simplex, cube and permutohedron fans.
//!
//! Rays live in `R^E` through the identification `N_Ē ≅ R^E` induced by
//! `Z^E ⊆ Z^Ē`: the ray `e_Ī` of a subset `Ī ⊆ Ē` maps to
//! `e_{Ī∩E} − [0 ∈ Ī]·(1,…,1)`.

use std::fmt;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::budget::Budget;
use crate::error::{budget_exceeded, Error, Result};

/// A subset of `Ē = {0, 1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarSet {
    pub zero: bool,
    pub base: ElementSet,
}

impl BarSet {
    pub fn new(zero: bool, base: ElementSet) -> Self {
        BarSet { zero, base }
    }

    pub fn contains(&self, label: usize) -> bool {
        if label == 0 {
            self.zero
        } else {
            self.base.contains(label)
        }
    }

    pub fn with(self, label: usize) -> Self {
        if label == 0 {
            BarSet { zero: true, ..self }
        } else {
            BarSet {
                base: self.base.with(label),
                ..self
            }
        }
    }

    pub fn len(&self) -> usize {
        self.base.len() + usize::from(self.zero)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &BarSet) -> bool {
        self.base.is_subset(other.base) && (!self.zero || other.zero)
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut v = Vec::new();
        if self.zero {
            v.push(0);
        }
        v.extend(self.base.iter());
        v
    }
}

impl fmt::Display for BarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

impl Serialize for BarSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.labels())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FanKind {
    Simplex,
    Cube,
    Permutohedron,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    /// `Ī` for rays `e_Ī`; `None` for the cube rays `±e_i`.
    pub subset: Option<BarSet>,
    pub vector: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConeIndex {
    /// `σ_Ī` for a maximal proper `Ī ⊂ Ē`.
    Simplex(BarSet),
    /// `σ_I` for `I ⊆ E`.
    Cube(ElementSet),
    /// `σ_𝒤` for a maximal chain of nonempty proper subsets of `Ē`.
    Chain(Vec<BarSet>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub index: ConeIndex,
    pub rays: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanModel {
    pub kind: FanKind,
    pub n: usize,
    pub rays: Vec<Ray>,
    pub cones: Vec<Cone>,
}

/// `ψ(e_Ī)` in `R^E`.
pub fn psi_vector(s: BarSet, n: usize) -> Vec<i64> {
    let shift = i64::from(s.zero);
    (1..=n).map(|i| i64::from(s.base.contains(i)) - shift).collect()
}

/// The `i`-th coordinate of `ψ(e_Ī)` by the three-way case split.
pub fn psi_i(s: BarSet, i: usize) -> i64 {
    match (s.contains(i), s.contains(0)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Maximal chains of `2^Ē`, one per ordering of `Ē`, in lexicographic
/// order of the ordering. Each chain lists its `n` nonempty proper sets.
pub fn maximal_chains(n: usize) -> Vec<Vec<BarSet>> {
    let mut out = Vec::new();
    let mut order: Vec<usize> = Vec::with_capacity(n + 1);
    fn walk(n: usize, order: &mut Vec<usize>, out: &mut Vec<Vec<BarSet>>) {
        if order.len() == n + 1 {
            let mut acc = BarSet::new(false, ElementSet::EMPTY);
            let mut chain = Vec::with_capacity(n);
            for &l in &order[..n] {
                acc = acc.with(l);
                chain.push(acc);
            }
            out.push(chain);
            return;
        }
        for l in 0..=n {
            if !order.contains(&l) {
                order.push(l);
                walk(n, order, out);
                order.pop();
            }
        }
    }
    walk(n, &mut order, &mut out);
    out
}

pub fn build_fan(kind: FanKind, n: usize, budget: &Budget) -> Result<FanModel> {
    if n == 0 {
        return Err(Error::InvalidInput("fan dimension must be at least 1".into()));
    }
    match kind {
        FanKind::Simplex => {
            if n >= crate::bitset::MAX_ELEMENTS {
                return Err(budget_exceeded("simplex fan", crate::bitset::MAX_ELEMENTS - 1));
            }
            let rays: Vec<Ray> = (0..=n)
                .map(|i| {
                    let s = BarSet::new(false, ElementSet::EMPTY).with(i);
                    Ray {
                        subset: Some(s),
                        vector: psi_vector(s, n),
                    }
                })
                .collect();
            let full = BarSet::new(true, ElementSet::full(n));
            let cones = (0..=n)
                .map(|missing| {
                    let idx = match missing {
                        0 => BarSet::new(false, full.base),
                        m => BarSet::new(true, full.base.without(m)),
                    };
                    Cone {
                        index: ConeIndex::Simplex(idx),
                        rays: (0..=n).filter(|&i| i != missing).collect(),
                    }
                })
                .collect();
            Ok(FanModel {
                kind,
                n,
                rays,
                cones,
            })
        }
        FanKind::Cube => {
            if n >= 31 || (1usize << n) > budget.subsets {
                return Err(budget_exceeded("cube fan", budget.subsets));
            }
            // ray 2(i-1) is e_i, ray 2(i-1)+1 is -e_i
            let mut rays = Vec::with_capacity(2 * n);
            for i in 1..=n {
                for sign in [1i64, -1] {
                    let mut v = vec![0; n];
                    v[i - 1] = sign;
                    rays.push(Ray {
                        subset: None,
                        vector: v,
                    });
                }
            }
            let cones = ElementSet::full(n)
                .subsets()
                .map(|set| Cone {
                    index: ConeIndex::Cube(set),
                    rays: (1..=n)
                        .map(|i| 2 * (i - 1) + usize::from(!set.contains(i)))
                        .collect(),
                })
                .collect();
            Ok(FanModel {
                kind,
                n,
                rays,
                cones,
            })
        }
        FanKind::Permutohedron => {
            if n > budget.fan_dimension {
                return Err(budget_exceeded("permutohedral fan dimension", budget.fan_dimension));
            }
            let mut subsets: Vec<BarSet> = ElementSet::full(n)
                .subsets()
                .flat_map(|b| [BarSet::new(false, b), BarSet::new(true, b)])
                .filter(|s| !s.is_empty() && s.len() != n + 1)
                .collect();
            subsets.sort();
            let rays: Vec<Ray> = subsets
                .iter()
                .map(|&s| Ray {
                    subset: Some(s),
                    vector: psi_vector(s, n),
                })
                .collect();
            let cones = maximal_chains(n)
                .into_iter()
                .map(|chain| {
                    let ids = chain
                        .iter()
                        .map(|s| subsets.binary_search(s).expect("proper subset"))
                        .collect();
                    Cone {
                        index: ConeIndex::Chain(chain),
                        rays: ids,
                    }
                })
                .collect();
            Ok(FanModel {
                kind,
                n,
                rays,
                cones,
            })
        }
    }
}

/// The cube cone `σ_I` containing `ψ(σ_𝒤)`: `I` collects the elements
/// that enter the chain before `0`.
pub fn containing_cube_cone(chain: &[BarSet]) -> ElementSet {
    let first_with_zero = chain.iter().find(|s| s.zero);
    match first_with_zero {
        Some(s) => s.base,
        None => chain.last().map_or(ElementSet::EMPTY, |s| s.base),
    }
}

/// The simplex cone selected by a chain: its largest member, which misses
/// exactly one element of `Ē`.
pub fn containing_simplex_cone(chain: &[BarSet]) -> BarSet {
    *chain.last().expect("nonempty chain")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub n: usize,
    pub chains: usize,
    pub holds: bool,
}

/// Checks that `ψ` maps every permutohedral cone into a cube cone, and that
/// every permutohedral cone sits inside its simplex cone.
pub fn verify_subdivision(n: usize, budget: &Budget) -> Result<SubdivisionReport> {
    let fan = build_fan(FanKind::Permutohedron, n, budget)?;
    for cone in &fan.cones {
        let ConeIndex::Chain(chain) = &cone.index else {
            unreachable!("permutohedral cones are indexed by chains");
        };
        let label = || {
            chain
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" < ")
        };
        let cube = containing_cube_cone(chain);
        for i in 1..=n {
            let signs: Vec<i64> = chain.iter().map(|&s| psi_i(s, i)).collect();
            let one_side = signs.iter().all(|&v| v >= 0) || signs.iter().all(|&v| v <= 0);
            let matches_cube = if cube.contains(i) {
                signs.iter().all(|&v| v >= 0)
            } else {
                signs.iter().all(|&v| v <= 0)
            };
            if !one_side || !matches_cube {
                return Err(Error::SubdivisionViolated(label()));
            }
        }
        let simplex = containing_simplex_cone(chain);
        if simplex.len() != n || !chain.iter().all(|s| s.is_subset(&simplex)) {
            return Err(Error::SubdivisionViolated(label()));
        }
    }
    Ok(SubdivisionReport {
        n,
        chains: fan.cones.len(),
        holds: true,
    })
}

/// A piecewise linear function on the permutohedral fan, given by its
/// values on rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlFunction {
    pub n: usize,
    pub values: Vec<(BarSet, i64)>,
}

/// `ψ_i^*(α)` from the closed formula: `1` on `e_Ī` with `i ∈ Ī`, `0 ∉ Ī`,
/// and `0` elsewhere.
pub fn pullback_pl(i: usize, n: usize, budget: &Budget) -> Result<PlFunction> {
    let fan = build_fan(FanKind::Permutohedron, n, budget)?;
    let values = fan
        .rays
        .iter()
        .map(|r| {
            let s = r.subset.expect("permutohedral rays are subsets");
            (s, i64::from(s.contains(i) && !s.contains(0)))
        })
        .collect();
    Ok(PlFunction { n, values })
}

/// `α ∘ ψ_i` on rays, where `α(e_i) = 1` and `α(−e_i) = 0` on `Σ(C_1)`.
pub fn compose_alpha(i: usize, n: usize, budget: &Budget) -> Result<PlFunction> {
    let alpha = |v: i64| -> i64 {
        match v {
            1 => 1,
            -1 => 0,
            _ => 0,
        }
    };
    let fan = build_fan(FanKind::Permutohedron, n, budget)?;
    let values = fan
        .rays
        .iter()
        .map(|r| {
            let s = r.subset.expect("permutohedral rays are subsets");
            (s, alpha(psi_i(s, i)))
        })
        .collect();
    Ok(PlFunction { n, values })
}

/// Rays of the divisor `Σ x_Ī` over `Ī` containing `i` and not `0`.
pub fn pullback_divisor(i: usize, n: usize) -> Vec<BarSet> {
    let mut out: Vec<BarSet> = ElementSet::full(n)
        .subsets()
        .filter(|b| b.contains(i))
        .map(|b| BarSet::new(false, b))
        .collect();
    out.sort();
    out
}
