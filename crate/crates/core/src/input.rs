//! JSON ingestion of matroids.
//!
//! ```json
//! {"type":"linear","field":"GF(2)","matrix":[[1,0,1],[0,1,1]]}
//! {"type":"graphic","edges":[[1,2],[2,3],[1,3]]}
//! {"type":"bases","n":3,"bases":[[1,2],[1,3],[2,3]]}
//! {"type":"uniform","n":4,"r":3}
//! ```

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::field::{parse_rational, rational_to_residue, Field, PrimeField};
use crate::linalg::rank_of;
use crate::linalg::RationalMatrix;
use crate::matroid::Matroid;

/// A matrix entry as written in JSON: an integer, or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarInput {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ScalarInput {
    fn to_rational(&self, field: Field) -> Result<BigRational> {
        let bad = || Error::BadScalar {
            value: match self {
                ScalarInput::Int(v) => v.to_string(),
                ScalarInput::Float(v) => v.to_string(),
                ScalarInput::Text(t) => t.clone(),
            },
            field: field.to_string(),
        };
        match self {
            ScalarInput::Int(v) => Ok(BigRational::from_integer((*v).into())),
            ScalarInput::Float(_) => Err(bad()),
            ScalarInput::Text(t) => parse_rational(t).ok_or_else(bad),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    Linear {
        field: String,
        matrix: Vec<Vec<ScalarInput>>,
    },
    Graphic {
        edges: Vec<[u64; 2]>,
    },
    Bases {
        n: usize,
        bases: Vec<Vec<usize>>,
    },
    Uniform {
        n: usize,
        r: usize,
    },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Linear { field, matrix } => {
                let field: Field = field.parse()?;
                Matroid::from_matrix(field, rational_matrix(field, matrix)?)
            }
            MatroidSpec::Graphic { edges } => {
                let edges: Vec<(u64, u64)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Matroid::from_graph(&edges)
            }
            MatroidSpec::Bases { n, bases } => {
                let sets = basis_sets(*n, bases)?;
                Matroid::from_bases(*n, &sets)
            }
            MatroidSpec::Uniform { n, r } => Matroid::uniform(*n, *r),
        }
    }

    /// Removes loops and all but the first element of each parallel class,
    /// relabelling the survivors consecutively.
    pub fn simplify(&self) -> Result<MatroidSpec> {
        match self {
            MatroidSpec::Linear { field, matrix } => {
                let f: Field = field.parse()?;
                let rows = rational_matrix(f, matrix)?;
                let ncols = rows.first().map_or(0, Vec::len);
                let column = |c: usize| -> Vec<BigRational> {
                    rows.iter().map(|r| r[c].clone()).collect()
                };
                let col_rank = |cs: &[usize]| -> usize {
                    match f {
                        Field::Rational => rank_of(&RationalMatrix::from_rows(
                            (0..rows.len())
                                .map(|r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                                .collect(),
                        )),
                        Field::Prime(p) => {
                            let pf = PrimeField::new(p);
                            pf.rank(
                                (0..rows.len())
                                    .map(|r| {
                                        cs.iter()
                                            .map(|&c| {
                                                rational_to_residue(&pf, &rows[r][c]).unwrap_or(0)
                                            })
                                            .collect()
                                    })
                                    .collect(),
                            )
                        }
                    }
                };
                let mut kept: Vec<usize> = Vec::new();
                for c in 0..ncols {
                    if col_rank(&[c]) == 0 {
                        continue;
                    }
                    if kept.iter().any(|&k| col_rank(&[k, c]) < 2) {
                        continue;
                    }
                    kept.push(c);
                }
                let cols: Vec<Vec<BigRational>> = kept.iter().map(|&c| column(c)).collect();
                let matrix = (0..rows.len())
                    .map(|r| {
                        cols.iter()
                            .map(|col| ScalarInput::Text(col[r].to_string()))
                            .collect()
                    })
                    .collect();
                Ok(MatroidSpec::Linear {
                    field: field.clone(),
                    matrix,
                })
            }
            MatroidSpec::Graphic { edges } => {
                let mut seen = BTreeSet::new();
                let edges = edges
                    .iter()
                    .filter(|e| e[0] != e[1] && seen.insert((e[0].min(e[1]), e[0].max(e[1]))))
                    .copied()
                    .collect();
                Ok(MatroidSpec::Graphic { edges })
            }
            MatroidSpec::Bases { n, bases } => {
                let sets = basis_sets(*n, bases)?;
                let rank = |s: ElementSet| sets.iter().map(|b| b.intersection(s).len()).max();
                let mut kept: Vec<usize> = Vec::new();
                for e in 1..=*n {
                    if rank(ElementSet::singleton(e)) == Some(0) {
                        continue;
                    }
                    if kept
                        .iter()
                        .any(|&k| rank(ElementSet::from_labels([k, e])) == Some(1))
                    {
                        continue;
                    }
                    kept.push(e);
                }
                let relabel: BTreeMap<usize, usize> =
                    kept.iter().enumerate().map(|(i, &e)| (e, i + 1)).collect();
                let kept_set: ElementSet = kept.iter().copied().collect();
                let mut new_bases: BTreeSet<Vec<usize>> = BTreeSet::new();
                for b in &sets {
                    if b.is_subset(kept_set) {
                        new_bases.insert(b.iter().map(|e| relabel[&e]).collect());
                    }
                }
                Ok(MatroidSpec::Bases {
                    n: kept.len(),
                    bases: new_bases.into_iter().collect(),
                })
            }
            MatroidSpec::Uniform { n, r } => Ok(match (*n, *r) {
                (_, 0) => MatroidSpec::Uniform { n: 0, r: 0 },
                (n, 1) if n >= 1 => MatroidSpec::Uniform { n: 1, r: 1 },
                (n, r) => MatroidSpec::Uniform { n, r },
            }),
        }
    }
}

fn rational_matrix(field: Field, matrix: &[Vec<ScalarInput>]) -> Result<Vec<Vec<BigRational>>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|v| v.to_rational(field)).collect())
        .collect()
}

fn basis_sets(n: usize, bases: &[Vec<usize>]) -> Result<Vec<ElementSet>> {
    if n == 0 || n > crate::bitset::MAX_ELEMENTS {
        return Err(Error::InvalidInput(format!("unsupported ground set size {n}")));
    }
    bases
        .iter()
        .map(|b| {
            if let Some(&bad) = b.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::InvalidInput(format!("element {bad} is outside 1..={n}")));
            }
            let set: ElementSet = b.iter().copied().collect();
            if set.len() != b.len() {
                return Err(Error::InvalidInput(format!("basis {b:?} repeats an element")));
            }
            Ok(set)
        })
        .collect()
}
