use thiserror::Error;

use crate::bitset::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is a loop (rank 0)")]
    LoopDetected(usize),
    #[error("elements {0} and {1} are parallel")]
    ParallelDetected(usize, usize),
    #[error("invalid scalar {value:?} for field {field}")]
    BadScalar { value: String, field: String },
    #[error("edge {0} is a self-loop at vertex {1}")]
    SelfLoop(usize, u64),
    #[error("edges {0} and {1} join the same pair of vertices")]
    ParallelEdge(usize, usize),
    #[error("basis exchange fails: removing {removed} from {from} admits no replacement from {other}")]
    ExchangeAxiomViolated {
        from: ElementSet,
        other: ElementSet,
        removed: usize,
    },
    #[error("matroid is not simple: {0}")]
    NotSimple(String),
    #[error("{stage}: budget of {limit} exceeded")]
    BudgetExceeded { stage: String, limit: usize },
    #[error("operation requires a linear realization")]
    NotLinear,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("degree {0} exceeds the top degree {1}")]
    DegreeOverflow(usize, usize),
    #[error("degree {found} does not match expected degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("multiplication map B^{p} -> B^{target} has rank {rank} < {needed}")]
    RankDeficient {
        p: usize,
        target: usize,
        rank: usize,
        needed: usize,
    },
    #[error("bipartite matching saturated {matched} of {needed} source flats")]
    MatchingIncomplete { matched: usize, needed: usize },
    #[error("rank {0} is below the minimum of 2")]
    RankTooSmall(usize),
    #[error("elements must be distinct (got {0} twice)")]
    SameElement(usize),
    #[error("relation {relation} violated: {witness}")]
    RelationViolated { relation: String, witness: String },
    #[error("subdivision violated on chain {0}")]
    SubdivisionViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget_exceeded(stage: &str, limit: usize) -> Error {
    Error::BudgetExceeded {
        stage: stage.to_string(),
        limit,
    }
}
