//! Explicit "at least as confident as" relations on the full powerset.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{Event, StateSpace};
use crate::limits;

/// The four mutually exclusive verdicts on an ordered pair of events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Comparison {
    StrictGreater,
    Equivalent,
    StrictLess,
    Incomparable,
}

impl Comparison {
    pub fn from_geq(ab: bool, ba: bool) -> Self {
        match (ab, ba) {
            (true, false) => Comparison::StrictGreater,
            (true, true) => Comparison::Equivalent,
            (false, true) => Comparison::StrictLess,
            (false, false) => Comparison::Incomparable,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Comparison::StrictGreater => Comparison::StrictLess,
            Comparison::StrictLess => Comparison::StrictGreater,
            c => c,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::StrictGreater => "STRICT_GREATER",
            Comparison::Equivalent => "EQUIVALENT",
            Comparison::StrictLess => "STRICT_LESS",
            Comparison::Incomparable => "INCOMPARABLE",
        })
    }
}

/// A relation ⪰ on 2^S stored as a 2ⁿ × 2ⁿ bit matrix; entry (A, B) is set
/// iff A ⪰ B. Nothing about the relation is assumed: axioms are checked by
/// [`crate::axioms`], never presumed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventRelation {
    space: StateSpace,
    side: usize,
    bits: Vec<u64>,
}

impl EventRelation {
    /// Builds the relation whose entry (A, B) is `geq(A, B)`.
    pub fn from_fn(space: &StateSpace, mut geq: impl FnMut(Event, Event) -> bool) -> Result<Self> {
        let mut rel = EventRelation::empty(space)?;
        for a in space.events() {
            for b in space.events() {
                if geq(a, b) {
                    rel.set_index(a.index(), b.index(), true);
                }
            }
        }
        Ok(rel)
    }

    /// Same as [`EventRelation::from_fn`] on canonical indices.
    pub fn from_index_fn(
        space: &StateSpace,
        mut geq: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut rel = EventRelation::empty(space)?;
        let m = rel.side;
        for a in 0..m {
            for b in 0..m {
                if geq(a, b) {
                    rel.set_index(a, b, true);
                }
            }
        }
        Ok(rel)
    }

    /// The relation in which nothing is related (not even reflexively).
    pub fn empty(space: &StateSpace) -> Result<Self> {
        limits::ensure("relation matrix", space.len(), limits::MAX_MATRIX_STATES)?;
        let side = space.event_count();
        let words = (side * side).div_ceil(64);
        Ok(EventRelation {
            space: space.clone(),
            side,
            bits: vec![0; words],
        })
    }

    /// Rebuilds a relation from rows of booleans (row A, column B).
    pub fn from_rows(space: &StateSpace, rows: &[Vec<bool>]) -> Result<Self> {
        let side = space.event_count();
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(Error::MalformedMatrix {
                n: space.len(),
                expected: side,
            });
        }
        EventRelation::from_index_fn(space, |a, b| rows[a][b])
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.len()
    }

    /// Number of events (matrix side).
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub(crate) fn set_index(&mut self, a: usize, b: usize, value: bool) {
        let k = a * self.side + b;
        if value {
            self.bits[k / 64] |= 1 << (k % 64);
        } else {
            self.bits[k / 64] &= !(1 << (k % 64));
        }
    }

    /// Entry (A, B) on canonical indices.
    #[inline]
    pub fn geq_index(&self, a: usize, b: usize) -> bool {
        let k = a * self.side + b;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    pub fn strict_index(&self, a: usize, b: usize) -> bool {
        self.geq_index(a, b) && !self.geq_index(b, a)
    }

    #[inline]
    pub fn equiv_index(&self, a: usize, b: usize) -> bool {
        self.geq_index(a, b) && self.geq_index(b, a)
    }

    pub fn geq(&self, a: Event, b: Event) -> bool {
        self.geq_index(a.index(), b.index())
    }

    pub fn strict(&self, a: Event, b: Event) -> bool {
        self.strict_index(a.index(), b.index())
    }

    pub fn equiv(&self, a: Event, b: Event) -> bool {
        self.equiv_index(a.index(), b.index())
    }

    pub fn incomparable(&self, a: Event, b: Event) -> bool {
        !self.geq(a, b) && !self.geq(b, a)
    }

    pub fn query(&self, a: Event, b: Event) -> Comparison {
        self.query_index(a.index(), b.index())
    }

    pub fn query_index(&self, a: usize, b: usize) -> Comparison {
        Comparison::from_geq(self.geq_index(a, b), self.geq_index(b, a))
    }

    /// Events named by canonical index over this relation's space.
    pub fn event(&self, index: usize) -> Event {
        Event::from_bits(self.n(), index as u32).expect("index within the matrix")
    }

    /// The relation A ⪰' B ⇔ B ⪰ A.
    pub fn converse(&self) -> EventRelation {
        EventRelation::from_index_fn(&self.space, |a, b| self.geq_index(b, a))
            .expect("same size as self")
    }

    /// Smallest ordered pair (by canonical indices) on which the two
    /// relations give different verdicts.
    pub fn first_disagreement(&self, other: &EventRelation) -> Option<(Event, Event)> {
        if self.side != other.side {
            return Some((self.space.empty(), self.space.empty()));
        }
        (0..self.side)
            .flat_map(|a| (0..self.side).map(move |b| (a, b)))
            .find(|&(a, b)| self.geq_index(a, b) != other.geq_index(a, b))
            .map(|(a, b)| (self.event(a), self.event(b)))
    }

    /// Number of ordered pairs (A, B) on which the verdicts differ.
    pub fn count_disagreements(&self, other: &EventRelation) -> usize {
        let mut count = 0;
        for a in 0..self.side {
            for b in 0..self.side {
                if self.query_index(a, b) != other.query_index(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff the strict parts coincide on every pair.
    pub fn same_strict_part(&self, other: &EventRelation) -> bool {
        self.side == other.side
            && (0..self.side).all(|a| {
                (0..self.side).all(|b| self.strict_index(a, b) == other.strict_index(a, b))
            })
    }

    /// Rows as `'0'`/`'1'` strings, row = A, column = B.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.side)
            .map(|a| {
                (0..self.side)
                    .map(|b| if self.geq_index(a, b) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for EventRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EventRelation")
            .field("space", &self.space)
            .field("rows", &self.to_rows())
            .finish()
    }
}
