//! Well-ordered partitions of the state space, most plausible block first.

use crate::error::{Error, Result};
use crate::event::{Event, StateSpace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    space: StateSpace,
    blocks: Vec<Event>,
}

impl Partition {
    pub fn new(space: StateSpace, blocks: Vec<Event>) -> Result<Self> {
        let n = space.len();
        let mut seen = space.empty();
        for (i, &block) in blocks.iter().enumerate() {
            if block.width() != n {
                return Err(Error::WidthMismatch {
                    left: n,
                    right: block.width(),
                });
            }
            if block.is_empty() {
                return Err(Error::EmptyBlock(i));
            }
            let overlap = seen.intersection(block)?;
            if let Some(state) = overlap.states().next() {
                return Err(Error::OverlappingBlocks(state));
            }
            seen = seen.union(block)?;
        }
        if let Some(state) = seen.complement().states().next() {
            return Err(Error::UncoveredState(state));
        }
        Ok(Partition { space, blocks })
    }

    /// The one-block partition [S].
    pub fn trivial(space: StateSpace) -> Self {
        let full = space.full();
        Partition {
            space,
            blocks: vec![full],
        }
    }

    /// One block per distinct level, highest level first.
    pub fn from_levels(space: StateSpace, levels: &[u32]) -> Result<Self> {
        if levels.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: levels.len(),
            });
        }
        let mut distinct: Vec<u32> = levels.to_vec();
        distinct.sort_unstable_by(|a, b| b.cmp(a));
        distinct.dedup();
        let n = space.len();
        let blocks = distinct
            .into_iter()
            .map(|l| Event::from_states(n, (0..n).filter(|&s| levels[s] == l)).expect("in range"))
            .collect();
        Partition::new(space, blocks)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// 1-based index of the first block meeting `event`.
    pub fn rank(&self, event: Event) -> Result<usize> {
        self.blocks
            .iter()
            .position(|b| !b.is_disjoint(event))
            .map(|i| i + 1)
            .ok_or(Error::RankUndefined)
    }

    /// Union of every block meeting `event`; the empty event maps to itself.
    pub fn upper_approx(&self, event: Event) -> Event {
        self.blocks
            .iter()
            .filter(|b| !b.is_disjoint(event))
            .fold(self.space.empty(), |acc, &b| {
                acc.union(b).expect("same width")
            })
    }

    /// 0-based block index of every state.
    pub fn block_of_states(&self) -> Vec<usize> {
        let mut out = vec![0; self.space.len()];
        for (i, block) in self.blocks.iter().enumerate() {
            for s in block.states() {
                out[s] = i;
            }
        }
        out
    }
}
