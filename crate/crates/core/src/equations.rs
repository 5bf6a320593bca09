//! Circuit dependencies of a linear realization and the multi-homogeneous
//! equations they define in `z`/`w` coordinates.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, RationalMatrix};
use crate::matroid::{LinearColumns, Matroid, Realization};

/// A scalar of the realization's field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    Rational(BigRational),
    /// Residue in `0..p`.
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    fn is_negative(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if q.is_negative())
    }

    fn abs(&self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.abs()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Nonzero coefficients `a_c` with `Σ a_c · column_c = 0`, keyed by element
/// in increasing order, normalized so the smallest element has coefficient 1.
pub fn circuit_coefficients(
    m: &Matroid,
    circuit: ElementSet,
) -> Result<Vec<(usize, FieldElement)>> {
    let lin = m.linear().ok_or(Error::NotLinear)?;
    let labels = circuit.to_vec();
    if m.rank(circuit) + 1 != circuit.len()
        || circuit.iter().any(|e| m.rank(circuit.without(e)) + 1 != circuit.len())
    {
        return Err(Error::InvalidInput(format!("{circuit} is not a circuit")));
    }
    match lin.columns() {
        LinearColumns::Rational(cols) => {
            let rows: Vec<Vec<BigRational>> = (0..cols[0].len())
                .map(|r| labels.iter().map(|&e| cols[e - 1][r].clone()).collect())
                .collect();
            let kernel = kernel_basis(&RationalMatrix::from_rows(rows));
            debug_assert_eq!(kernel.len(), 1);
            let v = &kernel[0];
            let lead = v[0].clone();
            Ok(labels
                .iter()
                .zip(v)
                .map(|(&e, x)| (e, FieldElement::Rational(x / &lead)))
                .collect())
        }
        LinearColumns::Prime(f, cols) => {
            let mut rows: Vec<Vec<u64>> = (0..cols[0].len())
                .map(|r| labels.iter().map(|&e| cols[e - 1][r]).collect())
                .collect();
            let pivots = f.row_reduce(&mut rows);
            let free = (0..labels.len())
                .find(|c| !pivots.contains(c))
                .expect("circuit has a one-dimensional kernel");
            let mut v = vec![0u64; labels.len()];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[k][free]);
            }
            let inv = f.inv(v[0]);
            Ok(labels
                .iter()
                .zip(v)
                .map(|(&e, x)| {
                    (
                        e,
                        FieldElement::Residue {
                            value: f.mul(x, inv),
                            modulus: f.modulus(),
                        },
                    )
                })
                .collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationTerm {
    pub coefficient: FieldElement,
    pub z: usize,
    pub w: ElementSet,
}

/// `Σ_{c ∈ C} a_c z_c ∏_{d ∈ C∖c} w_d = 0` for one circuit `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyEquation {
    pub circuit: ElementSet,
    pub terms: Vec<EquationTerm>,
}

impl fmt::Display for VarietyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coefficient.is_negative() { "−" } else { "+" };
            match (k, t.coefficient.is_negative()) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = t.coefficient.abs();
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "z{}", t.z)?;
            for d in t.w {
                write!(f, "·w{d}")?;
            }
        }
        f.write_str(" = 0")
    }
}

pub fn emit_variety_equations(m: &Matroid, budget: &Budget) -> Result<Vec<VarietyEquation>> {
    if let Realization::Uniform { n, r } = *m.realization() {
        return emit_variety_equations(&Matroid::vandermonde(n, r)?, budget);
    }
    if m.linear().is_none() {
        return Err(Error::NotLinear);
    }
    m.circuits(budget)?
        .into_iter()
        .map(|c| {
            let terms = circuit_coefficients(m, c)?
                .into_iter()
                .filter(|(_, a)| !matches!(a, FieldElement::Rational(q) if q.is_zero()))
                .map(|(e, a)| EquationTerm {
                    coefficient: a,
                    z: e,
                    w: c.without(e),
                })
                .collect();
            Ok(VarietyEquation { circuit: c, terms })
        })
        .collect()
}
