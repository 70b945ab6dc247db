use thiserror::Error;

use crate::basic::Node;
use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which clause of a basic relation's definition was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicViolation {
    NotReflexive,
    NotQuasiTransitive,
    Inconsistent,
    NonTrivialityViolated,
}

impl std::fmt::Display for BasicViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BasicViolation::NotReflexive => "NOT_REFLEXIVE",
            BasicViolation::NotQuasiTransitive => "QUASI_TRANSITIVITY_VIOLATED",
            BasicViolation::Inconsistent => "CONSISTENCY_VIOLATED",
            BasicViolation::NonTrivialityViolated => "NON_TRIVIALITY_VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a state space needs between 1 and {max} states, got {got}")]
    StateCount { got: usize, max: usize },
    #[error("state labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate state label `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("events over {left} and {right} states cannot be combined")]
    WidthMismatch { left: usize, right: usize },
    #[error("bits {bits:#b} do not form an event over {width} states")]
    EventOutOfRange { bits: u64, width: usize },
    #[error("expected {expected} per-state values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("possibility distribution has no state above level 0")]
    AllImpossible,
    #[error("negative weight {weight} for state {state}")]
    NegativeWeight { state: usize, weight: Box<Rational> },
    #[error("weights sum to {sum}, deficit {deficit}")]
    NotNormalized {
        sum: Box<Rational>,
        deficit: Box<Rational>,
    },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{what} is limited to n <= {max}, got n = {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("state {0} appears in more than one partition block")]
    OverlappingBlocks(usize),
    #[error("state {0} is not covered by the partition")]
    UncoveredState(usize),
    #[error("{violation}: {witness:?}")]
    Basic {
        violation: BasicViolation,
        witness: Vec<Node>,
    },
    #[error("RANK_UNDEFINED: the empty event has no rank")]
    RankUndefined,
    #[error("non-positive in-block weight for state {0}")]
    NonPositiveWeight(usize),
    #[error("relation matrix for {n} states needs {expected} rows of {expected} bits")]
    MalformedMatrix { n: usize, expected: usize },
    #[error("levels must occupy 1..k contiguously")]
    NonContiguousLevels,
    #[error("construction check failed: {0}")]
    Construction(String),
}
