//! The graded Möbius algebra `B*(M)` of a simple matroid.
//!
//! `B^p` has basis `y_F` for flats of rank `p`, and
//! `y_F · y_G = y_{F∨G}` when `rank F + rank G = rank(F∨G)`, else `0`.
//! Products are resolved on demand through the lattice's join table.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{FlatId, FlatLattice};
use crate::linalg::{echelon, inertia_of, rank_of, Inertia, RationalMatrix};
use crate::macaulay::{check_h_vector, HVectorReport};
use crate::matching::hopcroft_karp;

/// An element of `B^p`, with coordinates over the rank-`p` flats in
/// lattice order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: usize,
    pub coords: Vec<BigRational>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone)]
pub struct MobiusAlgebra {
    lattice: FlatLattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardLefschetzReport {
    pub p: usize,
    pub power: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopHeavyReport {
    pub p: usize,
    pub q: usize,
    pub lower: usize,
    pub upper: usize,
    pub holds: bool,
}

/// An injection `ι: L^p -> L^{r-q}` with `F ⊆ ι(F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub source_rank: usize,
    pub target_rank: usize,
    pub pairs: Vec<(ElementSet, ElementSet)>,
}

impl Matching {
    pub fn is_injective(&self) -> bool {
        let mut targets: Vec<_> = self.pairs.iter().map(|p| p.1).collect();
        targets.sort();
        targets.windows(2).all(|w| w[0] != w[1])
    }

    pub fn respects_containment(&self) -> bool {
        self.pairs.iter().all(|(f, g)| f.is_subset(*g))
    }
}

/// Basis counts behind the Hodge–Riemann matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HrMatrix {
    pub n: usize,
    /// Total number of bases, `b(M)`.
    pub bases: u64,
    /// `b_i(M)`: bases containing element `i` (index `i - 1`).
    pub through: Vec<u64>,
    /// `b_ij(M)` off the diagonal, zero on it.
    pub entries: Vec<Vec<u64>>,
}

impl HrMatrix {
    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_rows(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i - 1][j - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HrFormReport {
    /// `(r - 2)!`.
    pub factor: u64,
    pub holds: bool,
    /// `(i, j, deg(L^{r-2} y_i y_j), b_ij)` for every failing pair.
    pub mismatches: Vec<(usize, usize, String, u64)>,
}

impl MobiusAlgebra {
    pub fn new(lattice: FlatLattice) -> Self {
        MobiusAlgebra { lattice }
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.lattice.level(p).len()
    }

    /// The basis element `y_F`.
    pub fn basis(&self, id: FlatId) -> GradedElement {
        let p = self.lattice.flat(id).rank;
        let mut coords = vec![BigRational::zero(); self.dim(p)];
        coords[self.lattice.position(id)] = BigRational::one();
        GradedElement { degree: p, coords }
    }

    pub fn unit(&self) -> GradedElement {
        self.basis(self.lattice.bottom())
    }

    /// `L = Σ_i y_i`.
    pub fn lefschetz(&self) -> GradedElement {
        GradedElement {
            degree: 1,
            coords: vec![BigRational::one(); self.dim(1)],
        }
    }

    /// Product of two basis elements: `Some(F∨G)` when ranks add.
    pub fn basis_product(&self, a: FlatId, b: FlatId) -> Option<FlatId> {
        let j = self.lattice.join(a, b);
        let (ra, rb, rj) = (
            self.lattice.flat(a).rank,
            self.lattice.flat(b).rank,
            self.lattice.flat(j).rank,
        );
        (ra + rb == rj).then_some(j)
    }

    pub fn multiply(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let d = a.degree + b.degree;
        if d > self.rank() {
            return Err(Error::DegreeOverflow(d, self.rank()));
        }
        let mut coords = vec![BigRational::zero(); self.dim(d)];
        let (ra, rb) = (self.lattice.level_ids(a.degree), self.lattice.level_ids(b.degree));
        for (x, fa) in ra.zip(&a.coords) {
            if fa.is_zero() {
                continue;
            }
            for (y, fb) in rb.clone().zip(&b.coords) {
                if fb.is_zero() {
                    continue;
                }
                if let Some(j) = self.basis_product(x, y) {
                    coords[self.lattice.position(j)] += fa * fb;
                }
            }
        }
        Ok(GradedElement { degree: d, coords })
    }

    /// One application of `L` to an integer vector over `L^p`.
    fn lefschetz_step(&self, p: usize, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim(p + 1)];
        let ground = self.lattice.matroid().ground();
        for (id, c) in self.lattice.level_ids(p).zip(v) {
            if c.is_zero() {
                continue;
            }
            let f = self.lattice.flat(id).members;
            for e in ground.difference(f) {
                let g = self.lattice.step_to(id, e);
                out[self.lattice.position(g)] += c;
            }
        }
        out
    }

    /// Integer matrix of `ξ ↦ L^k ξ` from `B^p` to `B^{p+k}`; rows index
    /// the target flats, columns the source flats.
    pub fn lefschetz_power_counts(&self, p: usize, k: usize) -> Vec<Vec<BigInt>> {
        assert!(p + k <= self.rank(), "degree out of range");
        let cols = self.dim(p);
        let rows = self.dim(p + k);
        let mut out = vec![vec![BigInt::zero(); cols]; rows];
        for c in 0..cols {
            let mut v = vec![BigInt::zero(); cols];
            v[c] = BigInt::one();
            for d in p..p + k {
                v = self.lefschetz_step(d, &v);
            }
            for (r, x) in v.into_iter().enumerate() {
                out[r][c] = x;
            }
        }
        out
    }

    pub fn lefschetz_power_matrix(&self, p: usize, k: usize) -> RationalMatrix {
        RationalMatrix::from_rows(
            self.lefschetz_power_counts(p, k)
                .into_iter()
                .map(|row| row.into_iter().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    /// Rank of `L^{r-2p}: B^p -> B^{r-p}`.
    pub fn verify_hard_lefschetz(&self, p: usize) -> HardLefschetzReport {
        let r = self.rank();
        assert!(2 * p <= r, "p must satisfy 2p <= r");
        let power = r - 2 * p;
        let m = self.lefschetz_power_matrix(p, power);
        let rank = rank_of(&m);
        HardLefschetzReport {
            p,
            power,
            rows: m.rows(),
            cols: m.cols(),
            rank,
            injective: rank == m.cols(),
        }
    }

    pub fn top_heavy_check(&self, p: usize, q: usize) -> Result<TopHeavyReport> {
        self.check_pq(p, q)?;
        let lower = self.dim(p);
        let upper = self.dim(self.rank() - q);
        Ok(TopHeavyReport {
            p,
            q,
            lower,
            upper,
            holds: lower <= upper,
        })
    }

    fn check_pq(&self, p: usize, q: usize) -> Result<()> {
        if p > q || p + q > self.rank() {
            return Err(Error::InvalidInput(format!(
                "need p <= q and p + q <= {} (got p={p}, q={q})",
                self.rank()
            )));
        }
        Ok(())
    }

    /// Extracts `ι: L^p -> L^{r-q}` from an invertible maximal minor of the
    /// `L^{r-p-q}` matrix: the nonzero Leibniz term of its determinant is a
    /// perfect matching on the minor's support, and the support is the
    /// containment relation.
    pub fn extract_matching(&self, p: usize, q: usize) -> Result<Matching> {
        self.check_pq(p, q)?;
        let target = self.rank() - q;
        let m = self.lefschetz_power_matrix(p, target - p);
        let ech = echelon(&m);
        if ech.rank() < m.cols() {
            return Err(Error::RankDeficient {
                p,
                target,
                rank: ech.rank(),
                needed: m.cols(),
            });
        }
        let mut rows = ech.pivot_rows();
        rows.sort_unstable();
        let adj: Vec<Vec<usize>> = (0..m.cols())
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, &r)| !m.get(r, c).is_zero())
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let mate = hopcroft_karp(&adj, rows.len());
        let matched = mate.iter().flatten().count();
        if matched < m.cols() {
            return Err(Error::MatchingIncomplete {
                matched,
                needed: m.cols(),
            });
        }
        let src = self.lattice.level(p);
        let dst = self.lattice.level(target);
        let pairs = mate
            .into_iter()
            .enumerate()
            .map(|(c, k)| (src[c].members, dst[rows[k.expect("saturated")]].members))
            .collect();
        Ok(Matching {
            source_rank: p,
            target_rank: target,
            pairs,
        })
    }

    /// The coefficient of `y_E` in a top-degree element.
    pub fn degree_map(&self, top: &GradedElement) -> Result<BigRational> {
        if top.degree != self.rank() {
            return Err(Error::DegreeMismatch {
                expected: self.rank(),
                found: top.degree,
            });
        }
        Ok(top.coords[0].clone())
    }

    fn require_rank_two(&self) -> Result<()> {
        if self.rank() < 2 {
            return Err(Error::RankTooSmall(self.rank()));
        }
        Ok(())
    }

    /// Counts bases through each element and each pair of elements.
    pub fn hr_matrix(&self, budget: &Budget) -> Result<HrMatrix> {
        self.require_rank_two()?;
        let m = self.lattice.matroid();
        let n = m.size();
        let bases = m.bases(budget)?;
        let mut through = vec![0u64; n];
        let mut entries = vec![vec![0u64; n]; n];
        for b in &bases {
            let labels = b.to_vec();
            for (x, &i) in labels.iter().enumerate() {
                through[i - 1] += 1;
                for &j in &labels[x + 1..] {
                    entries[i - 1][j - 1] += 1;
                    entries[j - 1][i - 1] += 1;
                }
            }
        }
        Ok(HrMatrix {
            n,
            bases: bases.len() as u64,
            through,
            entries,
        })
    }

    /// `deg(L^{r-2} y_i y_j)` for all `i, j`, compared with `(r-2)! b_ij`.
    pub fn hr_form_check(&self, budget: &Budget) -> Result<HrFormReport> {
        let hr = self.hr_matrix(budget)?;
        let r = self.rank();
        let factor: u64 = (1..=(r as u64 - 2)).product();
        let n = hr.n;
        let top = self.lattice.top();
        let mut mismatches = Vec::new();
        // deg(L^{r-2} y_G) for each rank-2 flat G
        let counts = self.lefschetz_power_counts(2, r - 2);
        for i in 1..=n {
            for j in 1..=n {
                let product = self.basis_product(self.lattice.atom(i), self.lattice.atom(j));
                let deg = match product {
                    Some(g) => counts[self.lattice.position(top)][self.lattice.position(g)].clone(),
                    None => BigInt::zero(),
                };
                let expected = BigInt::from(factor) * BigInt::from(hr.get(i, j));
                if deg != expected {
                    mismatches.push((i, j, deg.to_string(), hr.get(i, j)));
                }
            }
        }
        Ok(HrFormReport {
            factor,
            holds: mismatches.is_empty(),
            mismatches,
        })
    }

    pub fn hr_signature(&self, budget: &Budget) -> Result<Inertia> {
        let hr = self.hr_matrix(budget)?;
        inertia_of(&hr.to_rational())
    }

    /// `b(M) b_ij(M) / (b_i(M) b_j(M))`.
    pub fn correlation_ratio(&self, i: usize, j: usize, budget: &Budget) -> Result<BigRational> {
        if i == j {
            return Err(Error::SameElement(i));
        }
        let hr = self.hr_matrix(budget)?;
        Ok(correlation_from(&hr, i, j))
    }

    pub fn check_h_vector(&self, p: usize) -> HVectorReport {
        check_h_vector(&self.lattice.whitney_numbers(), p)
    }
}

pub fn correlation_from(hr: &HrMatrix, i: usize, j: usize) -> BigRational {
    let num = BigInt::from(hr.bases) * BigInt::from(hr.get(i, j));
    let den = BigInt::from(hr.through[i - 1]) * BigInt::from(hr.through[j - 1]);
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matroid::Matroid;

    fn algebra(m: &Matroid) -> MobiusAlgebra {
        MobiusAlgebra::new(FlatLattice::enumerate(m, &Budget::default()).unwrap())
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn fano() -> Matroid {
        Matroid::from_integer_matrix(
            Field::Prime(2),
            &[
                [1, 0, 0, 1, 1, 0, 1],
                [0, 1, 0, 1, 0, 1, 1],
                [0, 0, 1, 0, 1, 1, 1],
            ],
        )
        .unwrap()
    }

    fn k4() -> Matroid {
        Matroid::from_graph(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn product_rule() {
        let b2 = algebra(&Matroid::boolean(2).unwrap());
        let l = b2.lattice();
        assert_eq!(b2.basis_product(l.atom(1), l.atom(2)), Some(l.top()));
        let u23 = algebra(&Matroid::uniform(3, 2).unwrap());
        let l = u23.lattice();
        assert_eq!(u23.basis_product(l.atom(1), l.atom(2)), Some(l.top()));
        assert_eq!(u23.basis_product(l.atom(1), l.atom(1)), None);
        for id in 0..l.len() {
            assert_eq!(u23.basis_product(l.bottom(), id), Some(id));
        }
    }

    #[test]
    fn multiply_examples() {
        let u23 = algebra(&Matroid::uniform(3, 2).unwrap());
        let l = u23.lattice();
        let y1 = u23.basis(l.atom(1));
        let y2 = u23.basis(l.atom(2));
        let y3 = u23.basis(l.atom(3));
        let sum = GradedElement {
            degree: 1,
            coords: y1.coords.iter().zip(&y2.coords).map(|(a, b)| a + b).collect(),
        };
        let prod = u23.multiply(&sum, &y3).unwrap();
        assert_eq!(prod.coords, vec![q(2)]);
        assert_eq!(u23.multiply(&u23.unit(), &y2).unwrap(), y2);
        let top = u23.basis(l.top());
        assert_eq!(u23.multiply(&y1, &top).unwrap_err(), Error::DegreeOverflow(3, 2));

        let f = algebra(&fano());
        let l = f.lattice();
        let p = f.multiply(&f.basis(l.atom(1)), &f.basis(l.atom(2))).unwrap();
        let line = l.id_of(ElementSet::from_labels([1, 2, 4])).unwrap();
        assert_eq!(p, f.basis(line));
    }

    #[test]
    fn lefschetz_examples() {
        let u23 = algebra(&Matroid::uniform(3, 2).unwrap());
        assert_eq!(u23.lefschetz_power_matrix(1, 0), RationalMatrix::identity(3));
        assert_eq!(
            u23.lefschetz_power_matrix(0, 1),
            RationalMatrix::from_integers(&[[1], [1], [1]])
        );
        assert_eq!(
            u23.lefschetz_power_matrix(0, 2),
            RationalMatrix::from_integers(&[[6]])
        );
        let l = u23.lefschetz();
        let l2 = u23.multiply(&l, &l).unwrap();
        assert_eq!(u23.degree_map(&l2).unwrap(), q(6));
        assert_eq!(
            u23.degree_map(&l).unwrap_err(),
            Error::DegreeMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn hard_lefschetz_examples() {
        let f = algebra(&fano());
        let hl = f.verify_hard_lefschetz(1);
        assert_eq!((hl.rows, hl.cols, hl.rank, hl.injective), (7, 7, 7, true));
        assert!(f.verify_hard_lefschetz(0).injective);
        let u34 = algebra(&Matroid::uniform(4, 3).unwrap());
        let hl = u34.verify_hard_lefschetz(1);
        assert_eq!((hl.rows, hl.cols, hl.rank), (6, 4, 4));
    }

    #[test]
    fn top_heavy_examples() {
        assert!(algebra(&fano()).top_heavy_check(1, 1).unwrap().holds);
        let k = algebra(&k4()).top_heavy_check(1, 1).unwrap();
        assert_eq!((k.lower, k.upper, k.holds), (6, 7, true));
        assert!(algebra(&k4()).top_heavy_check(0, 0).unwrap().holds);
        assert!(algebra(&k4()).top_heavy_check(2, 1).is_err());
    }

    #[test]
    fn matching_examples() {
        let b3 = algebra(&Matroid::boolean(3).unwrap());
        let m = b3.extract_matching(1, 1).unwrap();
        assert_eq!(m.pairs.len(), 3);
        assert!(m.is_injective() && m.respects_containment());
        let m = b3.extract_matching(0, 1).unwrap();
        assert_eq!(m.pairs.len(), 1);
        assert_eq!(m.pairs[0].1.len(), 2);
        let f = algebra(&fano());
        let m = f.extract_matching(1, 1).unwrap();
        assert_eq!(m.pairs.len(), 7);
        assert!(m.is_injective() && m.respects_containment());
    }

    #[test]
    fn hr_examples() {
        let b = Budget::default();
        let u23 = algebra(&Matroid::uniform(3, 2).unwrap());
        let hr = u23.hr_matrix(&b).unwrap();
        assert_eq!(hr.bases, 3);
        assert_eq!(hr.through, vec![2, 2, 2]);
        assert_eq!(hr.entries, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(u23.correlation_ratio(1, 2, &b).unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(u23.correlation_ratio(2, 2, &b).unwrap_err(), Error::SameElement(2));
        let sig = u23.hr_signature(&b).unwrap();
        assert_eq!((sig.positive, sig.negative, sig.zero), (1, 2, 0));
        assert!(u23.hr_form_check(&b).unwrap().holds);

        let k = algebra(&k4());
        let hr = k.hr_matrix(&b).unwrap();
        assert_eq!(hr.bases, 16);
        assert!(hr.through.iter().all(|&v| v == 8));
        // edges 1=(1,2) and 6=(3,4) are disjoint, 1 and 2=(1,3) share a vertex;
        // 3 disjoint pairs and 12 adjacent pairs: 3*4 + 12*3 = 16 * C(3,2)
        assert_eq!(hr.get(1, 6), 4);
        assert_eq!(hr.get(1, 2), 3);
        assert_eq!(k.correlation_ratio(1, 6, &b).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(k.correlation_ratio(1, 2, &b).unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(k.hr_signature(&b).unwrap().positive, 1);
        let form = k.hr_form_check(&b).unwrap();
        assert_eq!(form.factor, 1);
        assert!(form.holds);

        let b1 = algebra(&Matroid::boolean(1).unwrap());
        assert_eq!(b1.hr_matrix(&b).unwrap_err(), Error::RankTooSmall(1));
    }
}
