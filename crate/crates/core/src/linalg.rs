//! Exact dense linear algebra over the rationals.
//!
//! Rank and echelon forms use fraction-free (Bareiss) elimination on an
//! integer copy of the matrix, with a single normalization back to
//! rationals at the end. Inertia uses symmetric congruence elimination
//! with 1x1 and 2x2 pivots, which is exact by Sylvester's law.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| {
                    row.as_ref()
                        .iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Integer row echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Echelon rows; only the first `pivots.len()` rows are nonzero.
    pub rows: Vec<Vec<BigInt>>,
    /// `(original row index, column)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }

    /// Original indices of the rows that carried a pivot.
    pub fn pivot_rows(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(r, _)| r).collect()
    }
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination. The pivot in each column is the
/// entry of largest magnitude among the remaining rows; ties go to the
/// smallest original row index.
pub fn echelon(m: &RationalMatrix) -> Echelon {
    let mut a = integer_rows(m);
    let mut origin: Vec<usize> = (0..m.rows).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..m.rows {
            if a[i][c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let (ai, ab) = (a[i][c].abs(), a[b][c].abs());
                    if ai > ab || (ai == ab && origin[i] < origin[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(piv) = best else { continue };
        a.swap(r, piv);
        origin.swap(r, piv);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for v in row[c + 1..].iter_mut() {
                    *v = &*v * &prow[c] / &prev;
                }
            } else {
                let f = row[c].clone();
                for j in c + 1..m.cols {
                    row[j] = (&prow[c] * &row[j] - &f * &prow[j]) / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = a[r][c].clone();
        pivots.push((origin[r], c));
        r += 1;
    }
    Echelon { rows: a, pivots }
}

pub fn rank_of(m: &RationalMatrix) -> usize {
    echelon(m).rank()
}

/// Reduced row echelon form over the rationals, with its pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let ech = echelon(m);
    let rank = ech.rank();
    let pcols = ech.pivot_columns();
    let mut rows: Vec<Vec<BigRational>> = ech.rows[..rank]
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for k in (0..rank).rev() {
        let c = pcols[k];
        let inv = rows[k][c].recip();
        for v in rows[k].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..k {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..m.cols {
                let t = &f * &rows[k][j];
                rows[i][j] -= t;
            }
        }
    }
    let mut out = RationalMatrix::zeros(rank, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    (out, pcols)
}

/// Basis of the right null space; one vector per free column, with a 1 in
/// that column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let (r, pcols) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pcols {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[free] = BigRational::one();
            for (k, &pc) in pcols.iter().enumerate() {
                v[pc] = -r.get(k, free).clone();
            }
            v
        })
        .collect()
}

/// Inertia of a symmetric matrix via exact congruence diagonalization.
pub fn inertia_of(m: &RationalMatrix) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let count = |out: &mut Inertia, v: &BigRational| {
        if v.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
    };
    while !active.is_empty() {
        let diag = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].is_zero())
            .fold(None::<usize>, |best, i| match best {
                Some(b) if a[b][b].abs() >= a[i][i].abs() => Some(b),
                _ => Some(i),
            });
        if let Some(i) = diag {
            let d = a[i][i].clone();
            count(&mut out, &d);
            active.retain(|&x| x != i);
            for &j in &active {
                if a[j][i].is_zero() {
                    continue;
                }
                let f = &a[j][i] / &d;
                for &l in &active {
                    let t = &f * &a[i][l];
                    a[j][l] -= t;
                }
            }
            continue;
        }
        let mut off: Option<(usize, usize)> = None;
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if a[i][j].is_zero() {
                    continue;
                }
                off = match off {
                    Some((p, q)) if a[p][q].abs() >= a[i][j].abs() => Some((p, q)),
                    _ => Some((i, j)),
                };
            }
        }
        let Some((i, k)) = off else {
            out.zero += active.len();
            break;
        };
        // Block [[0, b], [b, 0]] has eigenvalues +b and -b.
        out.positive += 1;
        out.negative += 1;
        let b = a[i][k].clone();
        active.retain(|&x| x != i && x != k);
        let ci: Vec<BigRational> = active.iter().map(|&j| a[j][i].clone()).collect();
        let ck: Vec<BigRational> = active.iter().map(|&j| a[j][k].clone()).collect();
        for (x, &j) in active.iter().enumerate() {
            for (y, &l) in active.iter().enumerate() {
                let t = (&ci[x] * &ck[y] + &ck[x] * &ci[y]) / &b;
                if !t.is_zero() {
                    a[j][l] -= t;
                }
            }
        }
    }
    Ok(out)
}
