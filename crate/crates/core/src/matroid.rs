//! Simple matroids given by a realization and the rank oracle it induces.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_rational::BigRational;

use crate::bitset::{ElementSet, MAX_ELEMENTS};
use crate::budget::Budget;
use crate::error::{budget_exceeded, Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{rank_of, RationalMatrix};

/// Columns of a matrix over `Q` or `GF(p)`; column `i - 1` realizes element `i`.
#[derive(Debug, Clone)]
pub enum LinearColumns {
    Rational(Vec<Vec<BigRational>>),
    Prime(PrimeField, Vec<Vec<u64>>),
}

#[derive(Debug, Clone)]
pub struct LinearRealization {
    pub(crate) field: Field,
    pub(crate) rows: usize,
    pub(crate) columns: LinearColumns,
}

impl LinearRealization {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn columns(&self) -> &LinearColumns {
        &self.columns
    }

    fn rank(&self, s: ElementSet) -> usize {
        if s.is_empty() || self.rows == 0 {
            return 0;
        }
        match &self.columns {
            LinearColumns::Rational(cols) => {
                let rows: Vec<Vec<BigRational>> = (0..self.rows)
                    .map(|r| s.iter().map(|e| cols[e - 1][r].clone()).collect())
                    .collect();
                rank_of(&RationalMatrix::from_rows(rows))
            }
            LinearColumns::Prime(f, cols) => {
                let rows: Vec<Vec<u64>> = (0..self.rows)
                    .map(|r| s.iter().map(|e| cols[e - 1][r]).collect())
                    .collect();
                f.rank(rows)
            }
        }
    }
}

/// The edge list of a graph; edge `i` is element `i`.
#[derive(Debug, Clone)]
pub struct GraphicRealization {
    pub(crate) edges: Vec<(u64, u64)>,
}

impl GraphicRealization {
    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    /// Forest size of the edge subset: vertices touched minus components.
    fn rank(&self, s: ElementSet) -> usize {
        let mut parent: BTreeMap<u64, u64> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<u64, u64>, v: u64) -> u64 {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
        let mut rank = 0;
        for e in s {
            let (u, v) = self.edges[e - 1];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent.insert(a, b);
                rank += 1;
            }
        }
        rank
    }
}

#[derive(Debug, Clone)]
pub struct BasisList {
    pub(crate) bases: Vec<ElementSet>,
}

impl BasisList {
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    fn rank(&self, s: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub enum Realization {
    Linear(LinearRealization),
    Graphic(GraphicRealization),
    Bases(BasisList),
    Uniform { n: usize, r: usize },
}

/// A simple matroid on `{1, ..., n}`. Immutable once constructed.
#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    realization: Realization,
}

impl Matroid {
    fn new(n: usize, realization: Realization) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ground set must be nonempty".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "ground set of {n} elements exceeds the supported {MAX_ELEMENTS}"
            )));
        }
        let mut m = Matroid {
            n,
            rank: 0,
            realization,
        };
        m.rank = m.rank(m.ground());
        m.check_simple()?;
        Ok(m)
    }

    fn check_simple(&self) -> Result<()> {
        for i in 1..=self.n {
            if self.rank(ElementSet::singleton(i)) == 0 {
                return Err(Error::LoopDetected(i));
            }
        }
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.rank(ElementSet::from_labels([i, j])) < 2 {
                    return Err(Error::ParallelDetected(i, j));
                }
            }
        }
        Ok(())
    }

    /// Matroid of the columns of `matrix` (given row-major) over `field`.
    pub fn from_matrix(field: Field, matrix: Vec<Vec<BigRational>>) -> Result<Self> {
        let rows = matrix.len();
        let n = matrix.first().map_or(0, Vec::len);
        if rows == 0 || n == 0 {
            return Err(Error::InvalidInput("matrix must be nonempty".into()));
        }
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix rows have unequal lengths".into()));
        }
        let columns = match field {
            Field::Rational => LinearColumns::Rational(
                (0..n)
                    .map(|c| matrix.iter().map(|r| r[c].clone()).collect())
                    .collect(),
            ),
            Field::Prime(p) => {
                let pf = PrimeField::new(p);
                let mut cols = vec![vec![0u64; rows]; n];
                for (r, row) in matrix.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        cols[c][r] = crate::field::rational_to_residue(&pf, v).ok_or_else(|| {
                            Error::BadScalar {
                                value: v.to_string(),
                                field: field.to_string(),
                            }
                        })?;
                    }
                }
                LinearColumns::Prime(pf, cols)
            }
        };
        Matroid::new(
            n,
            Realization::Linear(LinearRealization {
                field,
                rows,
                columns,
            }),
        )
    }

    /// Integer-matrix convenience wrapper around [`Matroid::from_matrix`].
    pub fn from_integer_matrix<R: AsRef<[i64]>>(field: Field, matrix: &[R]) -> Result<Self> {
        let rows = matrix
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Matroid::from_matrix(field, rows)
    }

    /// Cycle matroid of a simple graph; edge `k` (1-based) is element `k`.
    pub fn from_graph(edges: &[(u64, u64)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidInput("graph must have at least one edge".into()));
        }
        let mut seen: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::SelfLoop(k + 1, u));
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(Error::ParallelEdge(first, k + 1));
            }
            seen.insert(key, k + 1);
        }
        Matroid::new(
            edges.len(),
            Realization::Graphic(GraphicRealization {
                edges: edges.to_vec(),
            }),
        )
    }

    /// Matroid from an explicit list of bases, validated exhaustively.
    pub fn from_bases(n: usize, bases: &[ElementSet]) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!("unsupported ground set size {n}")));
        }
        let ground = ElementSet::full(n);
        let mut list: Vec<ElementSet> = bases.to_vec();
        list.sort();
        list.dedup();
        let Some(first) = list.first() else {
            return Err(Error::InvalidInput("basis list is empty".into()));
        };
        let r = first.len();
        for b in &list {
            if !b.is_subset(ground) {
                return Err(Error::InvalidInput(format!("basis {b} is not inside 1..={n}")));
            }
            if b.len() != r {
                return Err(Error::InvalidInput(format!(
                    "bases {first} and {b} have different sizes"
                )));
            }
        }
        let set: HashSet<ElementSet> = list.iter().copied().collect();
        for &b1 in &list {
            for &b2 in &list {
                for x in b1.difference(b2) {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|y| set.contains(&b1.without(x).with(y)));
                    if !ok {
                        return Err(Error::ExchangeAxiomViolated {
                            from: b1,
                            other: b2,
                            removed: x,
                        });
                    }
                }
            }
        }
        Matroid::new(n, Realization::Bases(BasisList { bases: list })).map_err(|e| match e {
            Error::LoopDetected(i) => Error::NotSimple(format!("element {i} is a loop")),
            Error::ParallelDetected(i, j) => {
                Error::NotSimple(format!("elements {i} and {j} are parallel"))
            }
            other => other,
        })
    }

    /// Uniform matroid `U_{r,n}`; simple iff `r >= 2` or `n == r == 1`.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidInput(format!("U_{{{r},{n}}}: rank exceeds size")));
        }
        Matroid::new(n, Realization::Uniform { n, r })
    }

    /// `U_{r,n}` realized over ℚ by the Vandermonde columns `(1, t, ..., t^{r-1})`, `t = 1..n`.
    pub fn vandermonde(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidInput(format!("U_{{{r},{n}}}: rank exceeds size")));
        }
        let rows = (0..r as u32)
            .map(|k| {
                (1..=n as u64)
                    .map(|t| BigRational::from_integer(num_bigint::BigInt::from(t).pow(k)))
                    .collect()
            })
            .collect();
        Matroid::from_matrix(Field::Rational, rows)
    }

    /// Boolean matroid: every subset independent.
    pub fn boolean(n: usize) -> Result<Self> {
        Matroid::uniform(n, n)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Rank of the whole matroid.
    pub fn rank_total(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn linear(&self) -> Option<&LinearRealization> {
        match &self.realization {
            Realization::Linear(l) => Some(l),
            _ => None,
        }
    }

    pub fn rank(&self, s: ElementSet) -> usize {
        debug_assert!(s.is_subset(self.ground()));
        match &self.realization {
            Realization::Linear(l) => l.rank(s),
            Realization::Graphic(g) => g.rank(s),
            Realization::Bases(b) => b.rank(s),
            Realization::Uniform { r, .. } => s.len().min(*r),
        }
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank(s) == s.len()
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank(s);
        if r == self.rank {
            return self.ground();
        }
        self.ground()
            .difference(s)
            .iter()
            .filter(|&e| self.rank(s.with(e)) == r)
            .fold(s, ElementSet::with)
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        self.closure(s) == s
    }

    /// Lexicographically first basis of `s`, built greedily.
    pub fn basis_of(&self, s: ElementSet) -> ElementSet {
        let mut b = ElementSet::EMPTY;
        for e in s {
            if self.rank(b.with(e)) > b.len() {
                b = b.with(e);
            }
        }
        b
    }

    /// All bases, in lexicographic order.
    pub fn bases(&self, budget: &Budget) -> Result<Vec<ElementSet>> {
        if let Realization::Bases(list) = &self.realization {
            return Ok(list.bases.clone());
        }
        let count = binomial(self.n, self.rank);
        if count > budget.subsets as u128 {
            return Err(budget_exceeded("basis enumeration", budget.subsets));
        }
        let mut out: Vec<ElementSet> = k_subsets(self.ground(), self.rank)
            .filter(|&s| self.rank(s) == self.rank)
            .collect();
        out.sort();
        Ok(out)
    }

    /// All circuits, ordered by size then lexicographically.
    pub fn circuits(&self, budget: &Budget) -> Result<Vec<ElementSet>> {
        let max_size = (self.rank + 1).min(self.n);
        let candidates: u128 = (0..=max_size).map(|k| binomial(self.n, k)).sum();
        if candidates > budget.subsets as u128 {
            return Err(budget_exceeded("circuit enumeration", budget.subsets));
        }
        let mut out = Vec::new();
        for k in 3..=max_size {
            let mut level: Vec<ElementSet> = k_subsets(self.ground(), k)
                .filter(|&s| {
                    self.rank(s) == k - 1 && s.iter().all(|e| self.rank(s.without(e)) == k - 1)
                })
                .collect();
            level.sort();
            out.extend(level);
        }
        Ok(out)
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.realization {
            Realization::Linear(l) => format!("linear over {}", l.field),
            Realization::Graphic(_) => "graphic".to_string(),
            Realization::Bases(_) => "basis list".to_string(),
            Realization::Uniform { .. } => "uniform".to_string(),
        };
        write!(f, "{kind} matroid, n={}, r={}", self.n, self.rank)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-element subsets of `ground`.
pub fn k_subsets(ground: ElementSet, k: usize) -> impl Iterator<Item = ElementSet> {
    let labels = ground.to_vec();
    let n = labels.len();
    let mut idx: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = cur.iter().map(|&i| labels[i]).collect::<ElementSet>();
        // advance to the next combination
        let mut pos = k;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if cur[pos] < n - k + pos {
                cur[pos] += 1;
                for j in pos + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn matrix_examples() {
        let b3 = Matroid::from_integer_matrix(Field::Rational, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
            .unwrap();
        assert_eq!(b3.rank_total(), 3);
        assert!(b3.is_independent(b3.ground()));
        assert_eq!(fano().rank_total(), 3);
        let u23 = Matroid::from_integer_matrix(Field::Rational, &[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(u23.rank_total(), 2);
        assert_eq!(u23.rank(u23.ground()), 2);
    }

    #[test]
    fn matrix_simplicity_errors() {
        let e = Matroid::from_integer_matrix(Field::Rational, &[[1, 0], [0, 0]]).unwrap_err();
        assert_eq!(e, Error::LoopDetected(2));
        let e = Matroid::from_integer_matrix(Field::Rational, &[[1, 2], [1, 2]]).unwrap_err();
        assert_eq!(e, Error::ParallelDetected(1, 2));
        // parallel only in characteristic 3: (1,1) and (1,4) = (1,1) mod 3
        let e = Matroid::from_integer_matrix(Field::Prime(3), &[[1, 1], [1, 4]]).unwrap_err();
        assert_eq!(e, Error::ParallelDetected(1, 2));
        let half = BigRational::new(1.into(), 2.into());
        let e = Matroid::from_matrix(Field::Prime(2), vec![vec![half]]).unwrap_err();
        assert!(matches!(e, Error::BadScalar { .. }));
    }

    #[test]
    fn graph_examples() {
        assert_eq!(k4().rank_total(), 3);
        let one = Matroid::from_graph(&[(5, 9)]).unwrap();
        assert_eq!((one.size(), one.rank_total()), (1, 1));
        let tri = Matroid::from_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(tri.rank_total(), 2);
        assert_eq!(tri.rank(ElementSet::from_labels([1, 2])), 2);
        assert_eq!(Matroid::from_graph(&[(1, 1)]).unwrap_err(), Error::SelfLoop(1, 1));
        assert_eq!(
            Matroid::from_graph(&[(1, 2), (2, 1)]).unwrap_err(),
            Error::ParallelEdge(1, 2)
        );
    }

    #[test]
    fn bases_examples() {
        let all3: Vec<ElementSet> = k_subsets(ElementSet::full(4), 3).collect();
        let u34 = Matroid::from_bases(4, &all3).unwrap();
        assert_eq!(u34.rank_total(), 3);
        assert_eq!(u34.rank(ElementSet::full(4)), 3);
        let u23 = Matroid::from_bases(
            3,
            &[
                ElementSet::from_labels([1, 2]),
                ElementSet::from_labels([1, 3]),
                ElementSet::from_labels([2, 3]),
            ],
        )
        .unwrap();
        assert_eq!(u23.rank_total(), 2);
        // {1,2} and {3,4}: dropping 1 from {1,2} needs {2,3} or {2,4}
        let bad = Matroid::from_bases(
            4,
            &[ElementSet::from_labels([1, 2]), ElementSet::from_labels([3, 4])],
        );
        assert!(matches!(bad, Err(Error::ExchangeAxiomViolated { .. })));
        let loopy = Matroid::from_bases(3, &[ElementSet::from_labels([1, 2])]);
        assert!(matches!(loopy, Err(Error::NotSimple(_))));
    }

    #[test]
    fn rank_and_closure_examples() {
        let u23 = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u23.rank(ElementSet::full(3)), 2);
        assert_eq!(u23.rank(ElementSet::EMPTY), 0);
        assert_eq!(u23.closure(ElementSet::singleton(1)), ElementSet::singleton(1));
        let f = fano();
        // columns 1,2,4 are e1, e2, e1+e2: a line
        assert_eq!(f.rank(ElementSet::from_labels([1, 2, 4])), 2);
        assert_eq!(f.closure(ElementSet::from_labels([1, 2])), ElementSet::from_labels([1, 2, 4]));
        let b = f.basis_of(f.ground());
        assert_eq!(f.closure(b), f.ground());
        // edges 12 and 13 span the triangle {12,13,23} = elements {1,2,4}
        let g = k4();
        assert_eq!(g.closure(ElementSet::from_labels([1, 2])), ElementSet::from_labels([1, 2, 4]));
    }

    #[test]
    fn uniform_simplicity() {
        assert!(Matroid::uniform(1, 1).is_ok());
        assert!(matches!(Matroid::uniform(3, 1), Err(Error::ParallelDetected(1, 2))));
        assert!(matches!(Matroid::uniform(2, 0), Err(Error::LoopDetected(1))));
    }

    #[test]
    fn circuits_examples() {
        let b = Budget::default();
        let u23 = Matroid::uniform(3, 2).unwrap();
        assert_eq!(u23.circuits(&b).unwrap(), vec![ElementSet::full(3)]);
        let u34 = Matroid::uniform(4, 3).unwrap();
        assert_eq!(u34.circuits(&b).unwrap(), vec![ElementSet::full(4)]);
        let c = k4().circuits(&b).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c.iter().filter(|s| s.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|s| s.len() == 4).count(), 3);
        assert!(Matroid::boolean(4).unwrap().circuits(&b).unwrap().is_empty());
        let tiny = Budget { subsets: 3, ..Budget::default() };
        assert!(matches!(k4().circuits(&tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..7 {
            for k in 0..=n + 1 {
                let v: Vec<_> = k_subsets(ElementSet::full(n), k).collect();
                assert_eq!(v.len() as u128, binomial(n, k));
                assert!(v.iter().all(|s| s.len() == k));
            }
        }
    }
}
