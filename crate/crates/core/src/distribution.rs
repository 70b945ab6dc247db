//! Per-state confidence degrees: ordinal possibility levels and exact
//! probability weights.

use crate::error::{Error, Result};
use crate::event::{Event, StateSpace};
use crate::rational::Rational;

/// Ordinal possibility level per state. Level 0 marks an impossible state;
/// only the relative order of levels carries meaning.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PossibilityDistribution {
    space: StateSpace,
    levels: Vec<u32>,
}

impl PossibilityDistribution {
    pub fn new(space: StateSpace, levels: Vec<u32>) -> Result<Self> {
        if levels.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: levels.len(),
            });
        }
        if levels.iter().all(|&l| l == 0) {
            return Err(Error::AllImpossible);
        }
        Ok(PossibilityDistribution { space, levels })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn level(&self, state: usize) -> u32 {
        self.levels[state]
    }

    pub fn top(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// Π(A): the highest level among the members of `event`, 0 for ∅.
    pub fn possibility_of(&self, event: Event) -> u32 {
        event.states().map(|s| self.levels[s]).max().unwrap_or(0)
    }
}

/// Exact probability weight per state, summing to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbabilityDistribution {
    space: StateSpace,
    weights: Vec<Rational>,
}

impl ProbabilityDistribution {
    pub fn new(space: StateSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: weights.len(),
            });
        }
        if let Some((state, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::NegativeWeight {
                state,
                weight: Box::new(w.clone()),
            });
        }
        let sum: Rational = weights.iter().sum();
        if sum != Rational::one() {
            let deficit = Rational::one() - &sum;
            return Err(Error::NotNormalized {
                sum: Box::new(sum),
                deficit: Box::new(deficit),
            });
        }
        Ok(ProbabilityDistribution { space, weights })
    }

    /// Normalizes non-negative weights by their total.
    pub fn from_unnormalized(space: StateSpace, weights: Vec<Rational>) -> Result<Self> {
        let total: Rational = weights.iter().sum();
        if !total.is_positive() {
            return Err(Error::NotNormalized {
                deficit: Box::new(Rational::one() - &total),
                sum: Box::new(total),
            });
        }
        let weights = weights.into_iter().map(|w| w / &total).collect();
        ProbabilityDistribution::new(space, weights)
    }

    pub fn uniform(space: StateSpace) -> Self {
        let w = Rational::new(1, space.len() as i64).expect("non-empty space");
        let weights = vec![w; space.len()];
        ProbabilityDistribution { space, weights }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, state: usize) -> &Rational {
        &self.weights[state]
    }

    /// P(A): exact sum of member weights.
    pub fn probability_of(&self, event: Event) -> Rational {
        event.states().map(|s| &self.weights[s]).sum()
    }

    /// P(A) for every event, indexed canonically. Built incrementally from
    /// the lowest set bit, so each entry costs one addition.
    pub fn event_probabilities(&self) -> Vec<Rational> {
        let m = self.space.event_count();
        let mut table = vec![Rational::zero(); m];
        for bits in 1..m {
            let low = bits.trailing_zeros() as usize;
            table[bits] = &table[bits & (bits - 1)] + &self.weights[low];
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(n: usize) -> StateSpace {
        StateSpace::alphabetic(n).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn possibility_examples() {
        let s = space(3);
        let pi = PossibilityDistribution::new(s.clone(), vec![3, 2, 1]).unwrap();
        assert_eq!(pi.possibility_of(s.event(["b", "c"]).unwrap()), 2);
        assert_eq!(pi.possibility_of(s.empty()), 0);
        assert_eq!(pi.possibility_of(s.full()), 3);
    }

    #[test]
    fn probability_examples() {
        let s = space(4);
        let p =
            ProbabilityDistribution::new(s.clone(), vec![r(6, 11), r(2, 11), r(2, 11), r(1, 11)])
                .unwrap();
        assert_eq!(p.probability_of(s.event(["b", "c"]).unwrap()), r(4, 11));
        assert_eq!(p.probability_of(s.empty()), Rational::zero());
        assert_eq!(p.probability_of(s.full()), Rational::one());
    }

    #[test]
    fn rejects_bad_weights() {
        let s = space(2);
        match ProbabilityDistribution::new(s.clone(), vec![r(1, 2), r(1, 3)]) {
            Err(Error::NotNormalized { sum, deficit }) => {
                assert_eq!(*sum, r(5, 6));
                assert_eq!(*deficit, r(1, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            ProbabilityDistribution::new(s.clone(), vec![r(3, 2), r(-1, 2)]),
            Err(Error::NegativeWeight { state: 1, .. })
        ));
        assert!(PossibilityDistribution::new(s, vec![0, 0]).is_err());
    }

    proptest! {
        #[test]
        fn possibility_is_monotone(levels in proptest::collection::vec(1u32..5, 4), a in 0u32..16, b in 0u32..16) {
            let s = space(4);
            let pi = PossibilityDistribution::new(s, levels).unwrap();
            let small = Event::from_bits(4, a & b).unwrap();
            let big = Event::from_bits(4, a).unwrap();
            prop_assert!(pi.possibility_of(small) <= pi.possibility_of(big));
        }

        #[test]
        fn probability_is_additive(ws in proptest::collection::vec(0i64..7, 4), a in 0u32..16, b in 0u32..16) {
            prop_assume!(ws.iter().sum::<i64>() > 0);
            let s = space(4);
            let p = ProbabilityDistribution::from_unnormalized(s, ws.into_iter().map(Rational::from).collect()).unwrap();
            let a = Event::from_bits(4, a & !b).unwrap();
            let b = Event::from_bits(4, b).unwrap();
            let table = p.event_probabilities();
            prop_assert_eq!(p.probability_of(a.union(b).unwrap()), p.probability_of(a) + p.probability_of(b));
            prop_assert_eq!(&table[a.index()], &p.probability_of(a));
        }
    }
}
