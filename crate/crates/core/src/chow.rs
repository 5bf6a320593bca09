//! The Chow ring `A*(M̄)` of the augmented matroid `M̄ = M ⊕ {0}`.
//!
//! Generators `x_F̄` run over the nonempty proper flats of `M̄`. Modulo the
//! incomparability quadrics every monomial is either zero or supported on a
//! chain, so each degree is spanned by chain monomials. The degree-`d` part
//! of the linear ideal is spanned by `ℓ_i · m` for the element-balancing
//! forms `ℓ_i = Σ_{0∈F̄} x_F̄ − Σ_{i∈F̄} x_F̄` and degree-`d−1` chain
//! monomials `m`; exact row reduction of these relations picks out a
//! reduced basis among the chain monomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::budget::Budget;
use crate::error::{budget_exceeded, Error, Result};
use crate::lattice::FlatLattice;
use crate::linalg::{rank_of, RationalMatrix};
use crate::matroid::k_subsets;
use crate::mobius::MobiusAlgebra;

/// A flat of `M̄`: either `F` or `F ∪ {0}` for a flat `F` of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AugFlat {
    pub base: ElementSet,
    pub zero: bool,
    pub rank: usize,
}

impl AugFlat {
    pub fn contains(&self, label: usize) -> bool {
        if label == 0 {
            self.zero
        } else {
            self.base.contains(label)
        }
    }

    pub fn is_subset(&self, other: &AugFlat) -> bool {
        self.base.is_subset(other.base) && (!self.zero || other.zero)
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.base.len() + 1);
        if self.zero {
            v.push(0);
        }
        v.extend(self.base.iter());
        v
    }
}

impl Ord for AugFlat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl PartialOrd for AugFlat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AugFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

impl Serialize for AugFlat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.labels())
    }
}

/// `M̄` with its nonempty proper flats, ordered by rank then lexicographically.
#[derive(Debug, Clone)]
pub struct AugmentedMatroid {
    lattice: FlatLattice,
    flats: Vec<AugFlat>,
    index: HashMap<(ElementSet, bool), usize>,
    /// `comparable[a][b]`: one of the two flats contains the other.
    comparable: Vec<Vec<bool>>,
    /// Flats strictly containing each flat.
    above: Vec<Vec<usize>>,
}

impl AugmentedMatroid {
    pub fn new(lattice: &FlatLattice) -> Self {
        let ground = lattice.matroid().ground();
        let mut flats = Vec::new();
        for f in lattice.flats() {
            if !f.members.is_empty() {
                flats.push(AugFlat {
                    base: f.members,
                    zero: false,
                    rank: f.rank,
                });
            }
            if f.members != ground {
                flats.push(AugFlat {
                    base: f.members,
                    zero: true,
                    rank: f.rank + 1,
                });
            }
        }
        flats.sort();
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, f)| ((f.base, f.zero), i))
            .collect();
        let k = flats.len();
        let mut comparable = vec![vec![false; k]; k];
        let mut above = vec![Vec::new(); k];
        for a in 0..k {
            for b in 0..k {
                let sub = flats[a].is_subset(&flats[b]);
                if sub || flats[b].is_subset(&flats[a]) {
                    comparable[a][b] = true;
                }
                if sub && a != b {
                    above[a].push(b);
                }
            }
        }
        AugmentedMatroid {
            lattice: lattice.clone(),
            flats,
            index,
            comparable,
            above,
        }
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    /// Rank of `M`; the top degree of `A*(M̄)`.
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn proper_flats(&self) -> &[AugFlat] {
        &self.flats
    }

    pub fn flat_index(&self, base: ElementSet, zero: bool) -> Option<usize> {
        self.index.get(&(base, zero)).copied()
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.comparable[a][b]
    }

    /// Maximal chains of nonempty proper flats, in depth-first order,
    /// stopping after `limit` chains. The flag reports truncation.
    pub fn maximal_chains(&self, limit: usize) -> (Vec<Vec<usize>>, bool) {
        let r = self.rank();
        let mut out = Vec::new();
        let mut truncated = false;
        let mut stack: Vec<usize> = Vec::new();
        fn walk(
            am: &AugmentedMatroid,
            r: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            limit: usize,
            truncated: &mut bool,
        ) {
            if *truncated {
                return;
            }
            if stack.len() == r {
                if out.len() == limit {
                    *truncated = true;
                } else {
                    out.push(stack.clone());
                }
                return;
            }
            let want = stack.len() + 1;
            let candidates: Vec<usize> = match stack.last() {
                None => (0..am.flats.len()).filter(|&i| am.flats[i].rank == 1).collect(),
                Some(&top) => am.above[top]
                    .iter()
                    .copied()
                    .filter(|&i| am.flats[i].rank == want)
                    .collect(),
            };
            for c in candidates {
                stack.push(c);
                walk(am, r, stack, out, limit, truncated);
                stack.pop();
            }
        }
        walk(self, r, &mut stack, &mut out, limit, &mut truncated);
        (out, truncated)
    }
}

/// A monomial `∏ x_{F̄_k}^{a_k}` as sorted `(flat index, exponent)` pairs.
pub type Monomial = Vec<(u32, u32)>;

#[derive(Debug, Clone)]
struct DegreeComponent {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Fully reduced relation rows keyed by pivot column; entries exclude
    /// the leading 1 and lie on free columns only.
    pivots: HashMap<usize, Vec<(usize, BigRational)>>,
    /// Free columns, ascending: the reduced basis.
    basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
}

/// An element of `A^d(M̄)` in the reduced basis of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    pub degree: usize,
    pub coords: Vec<BigRational>,
}

impl ChowElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ChowElement) -> ChowElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        ChowElement {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ChowElement) -> ChowElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        ChowElement {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    /// Pairs `(i, F̄)` checked for `β_i · x_F̄ = 0`.
    pub r1_checked: usize,
    pub r2_checked: usize,
    pub r3_chains: usize,
    pub r3_sampled: bool,
    /// Common top-degree coordinate of every maximal-chain monomial.
    pub top_value: String,
    pub beta_definitions_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub p: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiHomomorphismReport {
    pub basis_choices_checked: usize,
    pub products_checked: usize,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct ChowRing {
    am: AugmentedMatroid,
    degrees: Vec<DegreeComponent>,
}

impl ChowRing {
    /// Builds every degree `0..=r`.
    pub fn new(am: AugmentedMatroid, budget: &Budget) -> Result<Self> {
        let r = am.rank();
        let mut degrees: Vec<DegreeComponent> = Vec::with_capacity(r + 1);
        for d in 0..=r {
            let monomials = chain_monomials(&am, d, budget.chow_monomials)?;
            let index: HashMap<Monomial, usize> = monomials
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            let pivots = if d == 0 {
                HashMap::new()
            } else {
                reduce_relations(&am, &degrees[d - 1].monomials, &index)
            };
            let basis: Vec<usize> = (0..monomials.len())
                .filter(|c| !pivots.contains_key(c))
                .collect();
            let basis_pos = basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            degrees.push(DegreeComponent {
                monomials,
                index,
                pivots,
                basis,
                basis_pos,
            });
        }
        Ok(ChowRing { am, degrees })
    }

    pub fn augmented(&self) -> &AugmentedMatroid {
        &self.am
    }

    pub fn rank(&self) -> usize {
        self.am.rank()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees[d].basis.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.rank()).map(|d| self.dim(d)).collect()
    }

    /// Number of chain monomials spanning degree `d`.
    pub fn spanning_size(&self, d: usize) -> usize {
        self.degrees[d].monomials.len()
    }

    /// Reduced-basis monomials of degree `d`, as flats with exponents.
    pub fn basis_monomials(&self, d: usize) -> Vec<Vec<(AugFlat, u32)>> {
        let comp = &self.degrees[d];
        comp.basis
            .iter()
            .map(|&c| {
                comp.monomials[c]
                    .iter()
                    .map(|&(f, e)| (self.am.flats[f as usize], e))
                    .collect()
            })
            .collect()
    }

    pub fn zero(&self, d: usize) -> ChowElement {
        ChowElement {
            degree: d,
            coords: vec![BigRational::zero(); self.dim(d)],
        }
    }

    pub fn unit(&self) -> ChowElement {
        self.monomial(&[]).expect("the empty monomial is a chain")
    }

    fn reduce_sparse(&self, d: usize, v: BTreeMap<usize, BigRational>) -> ChowElement {
        let comp = &self.degrees[d];
        let mut out = self.zero(d);
        for (c, val) in v {
            if val.is_zero() {
                continue;
            }
            match comp.pivots.get(&c) {
                Some(row) => {
                    for (free, a) in row {
                        out.coords[comp.basis_pos[free]] -= &val * a;
                    }
                }
                None => out.coords[comp.basis_pos[&c]] += val,
            }
        }
        out
    }

    /// Class of a monomial given as flat indices with exponents; `None`
    /// when the support is not a chain (the class is then zero).
    pub fn monomial(&self, factors: &[(usize, u32)]) -> Option<ChowElement> {
        let mut m: Monomial = Vec::new();
        for &(f, e) in factors {
            if e > 0 {
                m = multiply_monomials(&self.am, &m, &[(f as u32, e)])?;
            }
        }
        let d: usize = m.iter().map(|&(_, e)| e as usize).sum();
        if d > self.rank() {
            return Some(self.zero(self.rank()));
        }
        let col = self.degrees[d].index[&m];
        Some(self.reduce_sparse(d, BTreeMap::from([(col, BigRational::one())])))
    }

    /// Like [`ChowRing::monomial`] but returns the zero element of the
    /// right degree for non-chain supports.
    pub fn monomial_or_zero(&self, factors: &[(usize, u32)]) -> ChowElement {
        let d: usize = factors.iter().map(|&(_, e)| e as usize).sum();
        self.monomial(factors).unwrap_or_else(|| self.zero(d))
    }

    /// The generator `x_F̄`.
    pub fn generator(&self, flat: usize) -> ChowElement {
        self.monomial_or_zero(&[(flat, 1)])
    }

    pub fn multiply(&self, a: &ChowElement, b: &ChowElement) -> Result<ChowElement> {
        let d = a.degree + b.degree;
        if d > self.rank() {
            return Err(Error::DegreeOverflow(d, self.rank()));
        }
        let (ca, cb) = (&self.degrees[a.degree], &self.degrees[b.degree]);
        let target = &self.degrees[d];
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (x, va) in a.coords.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            let ma = &ca.monomials[ca.basis[x]];
            for (y, vb) in b.coords.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let mb = &cb.monomials[cb.basis[y]];
                if let Some(m) = multiply_monomials(&self.am, ma, mb) {
                    *acc.entry(target.index[&m]).or_insert_with(BigRational::zero) += va * vb;
                }
            }
        }
        Ok(self.reduce_sparse(d, acc))
    }

    fn sum_of_flats(&self, pred: impl Fn(&AugFlat) -> bool) -> ChowElement {
        let d1 = &self.degrees[1];
        let mut acc = BTreeMap::new();
        for (i, f) in self.am.flats.iter().enumerate() {
            if pred(f) {
                acc.insert(d1.index[&vec![(i as u32, 1)]], BigRational::one());
            }
        }
        self.reduce_sparse(1, acc)
    }

    /// `β_i = Σ x_F̄` over flats containing `0` but not `i`.
    pub fn beta(&self, i: usize) -> ChowElement {
        self.sum_of_flats(|f| f.zero && !f.base.contains(i))
    }

    /// `Σ x_F̄` over flats containing `i` but not `0`; equal to `β_i`.
    pub fn beta_alternative(&self, i: usize) -> ChowElement {
        self.sum_of_flats(|f| !f.zero && f.base.contains(i))
    }

    /// `∏_{i ∈ I} β_i`.
    pub fn beta_product(&self, elements: ElementSet) -> ChowElement {
        elements.iter().fold(self.unit(), |acc, i| {
            self.multiply(&acc, &self.beta(i))
                .expect("independent sets have size at most r")
        })
    }

    /// `φ(y_F)` using the lexicographically first basis of `F`.
    pub fn phi(&self, flat: ElementSet) -> ChowElement {
        let basis = self.am.lattice.matroid().basis_of(flat);
        self.beta_product(basis)
    }

    /// Image of the formal sum `Σ x_Ī` over subsets of `Ē` under the
    /// restriction from the Boolean Chow ring: `x_Ī ↦ x_Ī` when `Ī` is a
    /// nonempty proper flat of `M̄`, and `0` otherwise.
    pub fn restrict_from_boolean(&self, subsets: &[(ElementSet, bool)]) -> ChowElement {
        let d1 = &self.degrees[1];
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for &(base, zero) in subsets {
            if let Some(f) = self.am.flat_index(base, zero) {
                *acc.entry(d1.index[&vec![(f as u32, 1)]])
                    .or_insert_with(BigRational::zero) += BigRational::one();
            }
        }
        self.reduce_sparse(1, acc)
    }

    /// Exhaustive checks of R1 and R2, R3 over maximal chains (first
    /// `budget.max_chains` of them), and agreement of the two `β_i` sums.
    pub fn verify_relations(&self, budget: &Budget) -> Result<RelationsReport> {
        let n = self.am.lattice.size();
        let r = self.rank();
        for i in 1..=n {
            if self.beta(i) != self.beta_alternative(i) {
                return Err(Error::RelationViolated {
                    relation: "beta".into(),
                    witness: format!("two definitions of beta_{i} differ"),
                });
            }
        }
        let mut r1 = 0;
        let mut r2 = 0;
        if r >= 2 {
            for i in 1..=n {
                let b = self.beta(i);
                for (k, f) in self.am.flats.iter().enumerate() {
                    if f.zero != f.base.contains(i) {
                        r1 += 1;
                        if !self.multiply(&b, &self.generator(k))?.is_zero() {
                            return Err(Error::RelationViolated {
                                relation: "R1".into(),
                                witness: format!("beta_{i} * x_{f} != 0"),
                            });
                        }
                    }
                }
                r2 += 1;
                if !self.multiply(&b, &b)?.is_zero() {
                    return Err(Error::RelationViolated {
                        relation: "R2".into(),
                        witness: format!("beta_{i}^2 != 0"),
                    });
                }
            }
        }
        let (chains, truncated) = self.am.maximal_chains(budget.max_chains);
        let mut top: Option<ChowElement> = None;
        for chain in &chains {
            let factors: Vec<(usize, u32)> = chain.iter().map(|&f| (f, 1)).collect();
            let v = self.monomial_or_zero(&factors);
            if v.is_zero() {
                return Err(Error::RelationViolated {
                    relation: "R3".into(),
                    witness: format!("maximal chain {} has zero product", self.chain_label(chain)),
                });
            }
            match &top {
                None => top = Some(v),
                Some(t) if *t != v => {
                    return Err(Error::RelationViolated {
                        relation: "R3".into(),
                        witness: format!(
                            "maximal chain {} differs from the first chain",
                            self.chain_label(chain)
                        ),
                    })
                }
                _ => {}
            }
        }
        let top_value = top
            .map(|t| {
                t.coords
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_default();
        Ok(RelationsReport {
            r1_checked: r1,
            r2_checked: r2,
            r3_chains: chains.len(),
            r3_sampled: truncated,
            top_value,
            beta_definitions_agree: true,
        })
    }

    fn chain_label(&self, chain: &[usize]) -> String {
        chain
            .iter()
            .map(|&f| self.am.flats[f].to_string())
            .collect::<Vec<_>>()
            .join(" < ")
    }

    /// Rank of `{φ(y_F) : F ∈ L^p}` inside `A^p(M̄)`.
    pub fn verify_phi_injective(&self, p: usize) -> PhiReport {
        let level = self.am.lattice.level(p);
        let rows: Vec<Vec<BigRational>> = level.iter().map(|f| self.phi(f.members).coords).collect();
        let rank = if rows.is_empty() || self.dim(p) == 0 {
            0
        } else {
            rank_of(&RationalMatrix::from_rows(rows))
        };
        PhiReport {
            p,
            source_dim: level.len(),
            target_dim: self.dim(p),
            rank,
            injective: rank == level.len(),
        }
    }

    /// Basis independence of `φ` over every basis of every flat, and
    /// `φ(y_F · y_G) = φ(y_F) · φ(y_G)` over all pairs of flats.
    pub fn verify_phi_homomorphism(&self, alg: &MobiusAlgebra) -> Result<PhiHomomorphismReport> {
        let lat = self.am.lattice();
        let m = lat.matroid();
        let mut images = Vec::with_capacity(lat.len());
        let mut choices = 0;
        for f in lat.flats() {
            let canonical = self.phi(f.members);
            for b in k_subsets(f.members, f.rank) {
                if !m.is_independent(b) {
                    continue;
                }
                choices += 1;
                if self.beta_product(b) != canonical {
                    return Err(Error::RelationViolated {
                        relation: "phi basis independence".into(),
                        witness: format!("bases {} and {b} of {} differ", m.basis_of(f.members), f.members),
                    });
                }
            }
            images.push(canonical);
        }
        let mut products = 0;
        for a in 0..lat.len() {
            for b in a..lat.len() {
                let (fa, fb) = (lat.flat(a), lat.flat(b));
                if fa.rank + fb.rank > self.rank() {
                    continue;
                }
                products += 1;
                let lhs = match alg.basis_product(a, b) {
                    Some(j) => images[j].clone(),
                    None => self.zero(fa.rank + fb.rank),
                };
                let rhs = self.multiply(&images[a], &images[b])?;
                if lhs != rhs {
                    return Err(Error::RelationViolated {
                        relation: "phi multiplicativity".into(),
                        witness: format!("phi(y_{} y_{})", fa.members, fb.members),
                    });
                }
            }
        }
        Ok(PhiHomomorphismReport {
            basis_choices_checked: choices,
            products_checked: products,
            holds: true,
        })
    }
}

/// Product of two chain monomials, or `None` when the support leaves the
/// chain family.
fn multiply_monomials(am: &AugmentedMatroid, a: &[(u32, u32)], b: &[(u32, u32)]) -> Option<Monomial> {
    let mut out: Monomial = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, x.1 + y.1)
            }
            (Some(&x), Some(&y)) if x.0 < y.0 => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if let Some(&(last, _)) = out.last() {
            if !am.comparable(last as usize, next.0 as usize) {
                return None;
            }
        }
        out.push(next);
    }
    Some(out)
}

/// All chain monomials of degree `d`, sorted.
fn chain_monomials(am: &AugmentedMatroid, d: usize, cap: usize) -> Result<Vec<Monomial>> {
    fn walk(
        am: &AugmentedMatroid,
        left: usize,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
        cap: usize,
    ) -> Result<()> {
        if left == 0 {
            if out.len() == cap {
                return Err(budget_exceeded("chow ring degree", cap));
            }
            out.push(cur.clone());
            return Ok(());
        }
        let candidates: Vec<usize> = match cur.last() {
            None => (0..am.flats.len()).collect(),
            Some(&(f, _)) => am.above[f as usize].clone(),
        };
        for c in candidates {
            for e in 1..=left {
                cur.push((c as u32, e as u32));
                walk(am, left - e, cur, out, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(am, d, &mut Vec::new(), &mut out, cap)?;
    out.sort();
    Ok(out)
}

type SparseRow = Vec<(usize, BigRational)>;

/// `row -= factor * pivot`, both sorted by column.
fn axpy(row: &SparseRow, factor: &BigRational, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        match (row.get(i), pivot.get(j)) {
            (Some((c, v)), Some((pc, pv))) if c == pc => {
                let x = v - factor * pv;
                if !x.is_zero() {
                    out.push((*c, x));
                }
                i += 1;
                j += 1;
            }
            (Some((c, v)), Some((pc, _))) if c < pc => {
                out.push((*c, v.clone()));
                i += 1;
            }
            (Some(_), Some((pc, pv))) | (None, Some((pc, pv))) => {
                out.push((*pc, -(factor * pv)));
                j += 1;
            }
            (Some((c, v)), None) => {
                out.push((*c, v.clone()));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Row-reduces the degree-`d` relations `ℓ_i · m` and returns fully reduced
/// pivot rows (leading coefficient 1 implied, omitted).
fn reduce_relations(
    am: &AugmentedMatroid,
    lower: &[Monomial],
    index: &HashMap<Monomial, usize>,
) -> HashMap<usize, SparseRow> {
    let n = am.lattice.size();
    let forms: Vec<Vec<(usize, i64)>> = (1..=n)
        .map(|i| {
            am.flats
                .iter()
                .enumerate()
                .filter_map(|(k, f)| {
                    let c = i64::from(f.zero) - i64::from(f.base.contains(i));
                    (c != 0).then_some((k, c))
                })
                .collect()
        })
        .collect();
    // echelon rows: leading column -> row with leading entry 1 (kept in row)
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for m in lower {
        for form in &forms {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for &(k, c) in form {
                if let Some(prod) = multiply_monomials(am, m, &[(k as u32, 1)]) {
                    *acc.entry(index[&prod]).or_insert_with(BigRational::zero) +=
                        BigRational::from_integer(c.into());
                }
            }
            let mut row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let mut k = 0;
            while k < row.len() {
                let col = row[k].0;
                if let Some(p) = pivots.get(&col) {
                    let f = row[k].1.clone();
                    row = axpy(&row, &f, p);
                } else {
                    k += 1;
                }
            }
            if let Some((lead, v)) = row.first().cloned() {
                let inv = v.recip();
                for e in row.iter_mut() {
                    e.1 = &e.1 * &inv;
                }
                pivots.insert(lead, row);
            }
        }
    }
    // back-substitution, largest pivot first
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    let mut reduced: HashMap<usize, SparseRow> = HashMap::new();
    for c in cols {
        let mut row = pivots.remove(&c).expect("pivot row");
        let mut k = 1;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = reduced.get(&col) {
                let f = row[k].1.clone();
                let mut full = Vec::with_capacity(p.len() + 1);
                full.push((col, BigRational::one()));
                full.extend(p.iter().cloned());
                row = axpy(&row, &f, &full);
            } else {
                k += 1;
            }
        }
        row.remove(0);
        reduced.insert(c, row);
    }
    reduced
}
