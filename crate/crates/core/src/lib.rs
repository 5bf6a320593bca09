//! Exact computations on lattices of flats of simple matroids: the graded
//! Möbius algebra and its Lefschetz maps, top-heavy matchings, the Chow
//! ring of the augmented matroid with the embedding `φ`, permutohedral fan
//! combinatorics, and basis-count correlation data.

pub mod bitset;
pub mod budget;
pub mod catalog;
pub mod chow;
pub mod equations;
pub mod error;
pub mod fan;
pub mod field;
pub mod input;
pub mod lattice;
pub mod linalg;
pub mod macaulay;
pub mod matching;
pub mod matroid;
pub mod mobius;

pub use bitset::ElementSet;
pub use budget::Budget;
pub use catalog::{catalog, CatalogEntry};
pub use chow::{AugFlat, AugmentedMatroid, ChowElement, ChowRing};
pub use equations::{circuit_coefficients, emit_variety_equations, FieldElement, VarietyEquation};
pub use error::{Error, Result};
pub use fan::{build_fan, BarSet, FanKind, FanModel};
pub use field::Field;
pub use input::MatroidSpec;
pub use lattice::{Flat, FlatId, FlatLattice};
pub use linalg::{Inertia, RationalMatrix};
pub use macaulay::macaulay_pseudopower;
pub use matroid::Matroid;
pub use mobius::{GradedElement, Matching, MobiusAlgebra};

/// Convenience: enumerate the flats of `m` and wrap them in `B*(M)`.
pub fn build_algebra(m: &Matroid, budget: &Budget) -> Result<MobiusAlgebra> {
    Ok(MobiusAlgebra::new(FlatLattice::enumerate(m, budget)?))
}
