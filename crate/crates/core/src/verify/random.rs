//! Seeded generators. Same seed, same stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basic::{BasicRelation, Node};
use crate::construct::{self, StateWeakOrder};
use crate::distribution::ProbabilityDistribution;
use crate::event::{Event, StateSpace};
use crate::partition::Partition;
use crate::rational::Rational;

pub struct Generators {
    rng: ChaCha8Rng,
    /// Big-stepped candidates discarded by the post-construction check.
    pub rejected: u64,
}

impl Generators {
    pub fn new(seed: u64) -> Self {
        Generators {
            rng: ChaCha8Rng::seed_from_u64(seed),
            rejected: 0,
        }
    }

    /// Random weak order on n states.
    pub fn state_order(&mut self, n: usize) -> StateWeakOrder {
        let raw: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..n as u32)).collect();
        StateWeakOrder::from_ordinal(&raw).expect("non-empty")
    }

    /// Small integer weights (ties are common), normalized.
    pub fn probability(&mut self, space: &StateSpace, max_weight: i64) -> ProbabilityDistribution {
        loop {
            let weights: Vec<i64> = (0..space.len())
                .map(|_| self.rng.gen_range(0..=max_weight))
                .collect();
            if weights.iter().sum::<i64>() > 0 {
                let weights = weights.into_iter().map(Rational::from).collect();
                return ProbabilityDistribution::from_unnormalized(space.clone(), weights)
                    .expect("positive total");
            }
        }
    }

    /// Random big-stepped probability: a random order (some states possibly
    /// null), class values at least 1 + the mass below plus a random slack,
    /// then checked; failures are counted in `rejected` and redrawn.
    pub fn big_stepped(&mut self, space: &StateSpace) -> ProbabilityDistribution {
        let n = space.len();
        loop {
            let order = self.state_order(n);
            let mut levels = order.levels().to_vec();
            for l in levels.iter_mut() {
                if self.rng.gen_ratio(1, 6) {
                    *l = 0;
                }
            }
            if levels.iter().all(|&l| l == 0) {
                continue;
            }
            let mut distinct: Vec<u32> = levels.iter().copied().filter(|&l| l > 0).collect();
            distinct.sort_unstable();
            distinct.dedup();
            let mut below: i64 = 0;
            let mut value = vec![0i64; n];
            for &level in &distinct {
                let v = 1 + below + self.rng.gen_range(0..=below.max(1));
                let members: Vec<usize> = (0..n).filter(|&s| levels[s] == level).collect();
                for &s in &members {
                    value[s] = v;
                }
                below += v * members.len() as i64;
            }
            let weights = value.into_iter().map(Rational::from).collect();
            let p = ProbabilityDistribution::from_unnormalized(space.clone(), weights)
                .expect("positive total");
            if construct::check_big_stepped(&p).pass {
                return p;
            }
            self.rejected += 1;
        }
    }

    /// Random complete basic relation: a semiorder s ≻ t ⇔ u(s) > u(t) + δ,
    /// with ⊥ at utility 0, every state at utility ≥ 0 and at least one state
    /// strictly above ⊥.
    pub fn basic(&mut self, space: &StateSpace) -> BasicRelation {
        let n = space.len();
        loop {
            let u: Vec<i32> = (0..n).map(|_| self.rng.gen_range(0..=12)).collect();
            let threshold = self.rng.gen_range(0..=4);
            let utility = |x: Node| match x {
                Node::State(s) => u[s],
                Node::Bottom => 0,
            };
            let strict = |x: Node, y: Node| utility(x) > utility(y) + threshold;
            if !(0..n).any(|s| strict(Node::State(s), Node::Bottom)) {
                continue;
            }
            return BasicRelation::new(space.clone(), |x, y| !strict(y, x))
                .expect("semiorders are basic relations");
        }
    }

    /// Random ordered partition of the space.
    pub fn partition(&mut self, space: &StateSpace) -> Partition {
        let order = self.state_order(space.len());
        Partition::from_levels(space.clone(), order.levels()).expect("covers the space")
    }

    /// Positive integer in-block weights.
    pub fn block_weights(&mut self, n: usize, max_weight: i64) -> Vec<Rational> {
        (0..n)
            .map(|_| Rational::from(self.rng.gen_range(1..=max_weight)))
            .collect()
    }

    pub fn event(&mut self, space: &StateSpace) -> Event {
        let bits = self.rng.gen_range(0..space.event_count() as u32);
        Event::from_bits(space.len(), bits).expect("in range")
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let s = StateSpace::alphabetic(5).unwrap();
        let mut g1 = Generators::new(7);
        let mut g2 = Generators::new(7);
        for _ in 0..20 {
            assert_eq!(g1.big_stepped(&s), g2.big_stepped(&s));
            assert_eq!(g1.probability(&s, 4), g2.probability(&s, 4));
            assert_eq!(g1.basic(&s), g2.basic(&s));
        }
    }

    #[test]
    fn big_stepped_stream_passes_the_check() {
        let s = StateSpace::alphabetic(5).unwrap();
        let mut g = Generators::new(1);
        let passed = (0..1000)
            .filter(|_| construct::check_big_stepped(&g.big_stepped(&s)).pass)
            .count();
        assert_eq!(passed, 1000);
    }

    #[test]
    fn sampled_basics_are_valid_and_complete() {
        let s = StateSpace::alphabetic(4).unwrap();
        let mut g = Generators::new(3);
        for _ in 0..200 {
            let b = g.basic(&s);
            assert!(b.is_complete());
        }
    }
}
