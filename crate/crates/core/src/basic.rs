//! Basic confidence relations: reflexive, quasi-transitive relations on the
//! states plus a bottom element ⊥ standing for the empty event.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BasicViolation, Error, Result};
use crate::event::StateSpace;

/// An element of S ∪ {⊥}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    State(usize),
    Bottom,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::State(s) => write!(f, "s{s}"),
            Node::Bottom => f.write_str("⊥"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasicRelation {
    space: StateSpace,
    // (n+1)² entries; index n is ⊥.
    geq: Vec<bool>,
}

impl BasicRelation {
    /// Builds and validates. `geq(x, y)` reads "x is at least as plausible
    /// as y".
    pub fn new(space: StateSpace, mut geq: impl FnMut(Node, Node) -> bool) -> Result<Self> {
        let k = space.len() + 1;
        let mut matrix = vec![false; k * k];
        for x in 0..k {
            for y in 0..k {
                matrix[x * k + y] = geq(node(x, k), node(y, k));
            }
        }
        let rel = BasicRelation { space, geq: matrix };
        rel.validate()?;
        Ok(rel)
    }

    /// The weak order given by `levels`, with ⊥ at level 0 (so level-0 states
    /// tie with ⊥).
    pub fn from_levels(space: StateSpace, levels: &[u32]) -> Result<Self> {
        if levels.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: levels.len(),
            });
        }
        let level = |x: Node| match x {
            Node::State(s) => levels[s],
            Node::Bottom => 0,
        };
        BasicRelation::new(space, |x, y| level(x) >= level(y))
    }

    fn validate(&self) -> Result<()> {
        let k = self.space.len() + 1;
        let bottom = k - 1;
        let fail = |violation, witness: Vec<usize>| Error::Basic {
            violation,
            witness: witness.into_iter().map(|i| node(i, k)).collect(),
        };
        for x in 0..k {
            if !self.at(x, x) {
                return Err(fail(BasicViolation::NotReflexive, vec![x]));
            }
        }
        for s in 0..bottom {
            if self.strict_at(bottom, s) {
                return Err(fail(BasicViolation::NonTrivialityViolated, vec![bottom, s]));
            }
        }
        for s in 0..bottom {
            if !self.at(s, bottom) {
                return Err(fail(BasicViolation::Inconsistent, vec![s, bottom]));
            }
        }
        for x in 0..k {
            for y in 0..k {
                if !self.strict_at(x, y) {
                    continue;
                }
                for z in 0..k {
                    if self.strict_at(y, z) && !self.strict_at(x, z) {
                        return Err(fail(BasicViolation::NotQuasiTransitive, vec![x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn at(&self, x: usize, y: usize) -> bool {
        self.geq[x * (self.space.len() + 1) + y]
    }

    #[inline]
    fn strict_at(&self, x: usize, y: usize) -> bool {
        self.at(x, y) && !self.at(y, x)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn geq(&self, x: Node, y: Node) -> bool {
        let k = self.space.len() + 1;
        self.at(slot(x, k), slot(y, k))
    }

    pub fn strict(&self, x: Node, y: Node) -> bool {
        self.geq(x, y) && !self.geq(y, x)
    }

    pub fn equiv(&self, x: Node, y: Node) -> bool {
        self.geq(x, y) && self.geq(y, x)
    }

    pub fn is_complete(&self) -> bool {
        let k = self.space.len() + 1;
        (0..k).all(|x| (0..k).all(|y| self.at(x, y) || self.at(y, x)))
    }

    /// True iff the full relation (not just its strict part) is transitive.
    pub fn is_transitive(&self) -> bool {
        let k = self.space.len() + 1;
        (0..k).all(|x| {
            (0..k).all(|y| !self.at(x, y) || (0..k).all(|z| !self.at(y, z) || self.at(x, z)))
        })
    }

    /// For a complete transitive relation, the level of every state with ⊥'s
    /// class at level 0.
    pub fn levels(&self) -> Option<Vec<u32>> {
        if !(self.is_complete() && self.is_transitive()) {
            return None;
        }
        let k = self.space.len() + 1;
        let n = k - 1;
        // Level = number of distinct classes strictly below, minus those below ⊥ (none).
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..k {
            if !reps.iter().any(|&r| self.at(x, r) && self.at(r, x)) {
                reps.push(x);
            }
        }
        let below = |x: usize| reps.iter().filter(|&&r| self.strict_at(x, r)).count() as u32;
        Some((0..n).map(below).collect())
    }
}

fn node(i: usize, k: usize) -> Node {
    if i + 1 == k {
        Node::Bottom
    } else {
        Node::State(i)
    }
}

fn slot(x: Node, k: usize) -> usize {
    match x {
        Node::State(s) => {
            assert!(s + 1 < k, "state {s} out of range");
            s
        }
        Node::Bottom => k - 1,
    }
}

impl fmt::Debug for BasicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.space.len() + 1;
        let rows: Vec<String> = (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| if self.at(x, y) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        f.debug_struct("BasicRelation")
            .field("space", &self.space)
            .field("rows", &rows)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> StateSpace {
        StateSpace::alphabetic(n).unwrap()
    }

    #[test]
    fn levels_build_weak_orders() {
        let b = BasicRelation::from_levels(space(3), &[3, 2, 0]).unwrap();
        assert!(b.strict(Node::State(0), Node::State(1)));
        assert!(b.equiv(Node::State(2), Node::Bottom));
        assert!(b.is_complete() && b.is_transitive());
        assert_eq!(b.levels().unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn semiorders_are_quasi_transitive() {
        // a > c, a ~ b, b ~ c: indifference is intransitive.
        let u = [4i32, 2, 0];
        let b = BasicRelation::new(space(3), |x, y| {
            let v = |n: Node| match n {
                Node::State(s) => u[s] + 1,
                Node::Bottom => -10,
            };
            v(y) - v(x) <= 3
        })
        .unwrap();
        assert!(b.is_complete());
        assert!(!b.is_transitive());
        assert!(b.levels().is_none());
    }

    #[test]
    fn violations_are_reported() {
        let err = BasicRelation::new(space(2), |x, y| x == y).unwrap_err();
        assert!(matches!(
            err,
            Error::Basic {
                violation: BasicViolation::Inconsistent,
                ..
            }
        ));
        // Strict cycle a > b > ⊥ but not a > ⊥ is impossible with consistency,
        // so break quasi-transitivity among states: a > b, b > c, c ~ a.
        let order = [(0, 1), (1, 2)];
        let err = BasicRelation::new(space(3), |x, y| match (x, y) {
            (Node::State(i), Node::State(j)) => {
                i == j || order.contains(&(i, j)) || (i, j) == (2, 0) || (i, j) == (0, 2)
            }
            (_, Node::Bottom) => true,
            (Node::Bottom, _) => false,
        })
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Basic {
                violation: BasicViolation::NotQuasiTransitive,
                ..
            }
        ));
    }
}
