//! Ordinal confidence relations over finite state spaces.
//!
//! The crate builds explicit "at least as confident as" relations on the
//! powerset of a small state space from possibility levels, exact
//! probabilities, basic relations on states and ordered partitions. Every
//! axiom of the order-of-magnitude framework (confidence relations,
//! preadditivity, negligibility, closeness, COM/CPOM and friends) can be
//! decided on such a relation, with a minimal replayable witness whenever it
//! fails. On top of that sit constructions of big-stepped and lexicographic
//! probabilities and an exhaustive/sampled harness that re-checks the
//! representation theorems at small sizes.
//!
//! ```
//! use omconf::{induce, axioms, PossibilityDistribution, StateSpace};
//!
//! let space = StateSpace::new(["a", "b", "c"]).unwrap();
//! let pi = PossibilityDistribution::new(space.clone(), vec![3, 2, 1]).unwrap();
//! let rel = induce::possibility(&pi).unwrap();
//!
//! // Possibility orderings drown {a,b} and {a,c} into the same level.
//! let ab = space.event(["a", "b"]).unwrap();
//! let ac = space.event(["a", "c"]).unwrap();
//! assert!(rel.equiv(ab, ac));
//! assert!(!axioms::check_preadditivity(&rel).unwrap().pass);
//! ```

pub mod axioms;
pub mod basic;
pub mod cli;
pub mod construct;
pub mod distribution;
pub mod error;
pub mod event;
pub mod induce;
pub mod limits;
pub mod partition;
pub mod rational;
pub mod relation;
pub mod verify;

pub use basic::{BasicRelation, Node};
pub use distribution::{PossibilityDistribution, ProbabilityDistribution};
pub use error::{Error, Result};
pub use event::{Event, StateSpace};
pub use partition::Partition;
pub use rational::Rational;
pub use relation::{Comparison, EventRelation};
