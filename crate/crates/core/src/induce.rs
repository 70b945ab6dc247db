//! Explicit event relations induced by each formalism.

use crate::axioms;
use crate::basic::{BasicRelation, Node};
use crate::construct;
use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::event::{Event, StateSpace};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::relation::EventRelation;

/// Π(A) for every event, canonically indexed.
fn possibility_table(pi: &PossibilityDistribution) -> Vec<u32> {
    let m = pi.space().event_count();
    let mut table = vec![0u32; m];
    for bits in 1..m {
        let low = bits.trailing_zeros() as usize;
        table[bits] = table[bits & (bits - 1)].max(pi.level(low));
    }
    table
}

/// A ⪰ B ⇔ Π(A) ≥ Π(B).
pub fn possibility(pi: &PossibilityDistribution) -> Result<EventRelation> {
    let table = possibility_table(pi);
    EventRelation::from_index_fn(pi.space(), |a, b| table[a] >= table[b])
}

/// A ⪰ B ⇔ N(A) ≥ N(B), evaluated as Π(B̄) ≥ Π(Ā) so levels stay ordinal.
pub fn necessity(pi: &PossibilityDistribution) -> Result<EventRelation> {
    let table = possibility_table(pi);
    let full = pi.space().event_count() - 1;
    EventRelation::from_index_fn(pi.space(), |a, b| table[full & !b] >= table[full & !a])
}

/// A ⪰ B ⇔ P(A) ≥ P(B), exactly.
pub fn probability(p: &ProbabilityDistribution) -> Result<EventRelation> {
    let space = p.space();
    crate::limits::ensure(
        "relation matrix",
        space.len(),
        crate::limits::MAX_MATRIX_STATES,
    )?;
    let table = p.event_probabilities();
    // Compare dense ranks instead of big rationals inside the quadratic loop.
    let ranks = dense_ranks(&table);
    EventRelation::from_index_fn(space, |a, b| ranks[a] >= ranks[b])
}

/// Discrimax: A ⪰ B ⇔ Π(A∖B) ≥ Π(B∖A).
pub fn discrimax(pi: &PossibilityDistribution) -> Result<EventRelation> {
    let table = possibility_table(pi);
    EventRelation::from_index_fn(pi.space(), |a, b| table[a & !b] >= table[b & !a])
}

/// Per-state values that can feed a leximax comparison.
pub trait StateScale {
    type Value: Ord + Clone;

    fn space(&self) -> &StateSpace;
    fn value(&self, state: usize) -> Self::Value;
    /// Value given to positions outside the event.
    fn bottom(&self) -> Self::Value;
}

impl StateScale for PossibilityDistribution {
    type Value = u32;

    fn space(&self) -> &StateSpace {
        PossibilityDistribution::space(self)
    }
    fn value(&self, state: usize) -> u32 {
        self.level(state)
    }
    fn bottom(&self) -> u32 {
        0
    }
}

impl StateScale for ProbabilityDistribution {
    type Value = Rational;

    fn space(&self) -> &StateSpace {
        ProbabilityDistribution::space(self)
    }
    fn value(&self, state: usize) -> Rational {
        self.weight(state).clone()
    }
    fn bottom(&self) -> Rational {
        Rational::zero()
    }
}

/// The confidence vector of `event`: the scale value at member positions and
/// the bottom value elsewhere.
pub fn confidence_vector<D: StateScale>(dist: &D, event: Event) -> Vec<D::Value> {
    (0..dist.space().len())
        .map(|s| {
            if event.contains(s) {
                dist.value(s)
            } else {
                dist.bottom()
            }
        })
        .collect()
}

/// Leximax: compare the descending-sorted confidence vectors
/// lexicographically; identical sorted vectors are equivalent.
pub fn leximax<D: StateScale>(dist: &D) -> Result<EventRelation> {
    let space = dist.space().clone();
    crate::limits::ensure(
        "relation matrix",
        space.len(),
        crate::limits::MAX_MATRIX_STATES,
    )?;
    let values: Vec<D::Value> = (0..space.len()).map(|s| dist.value(s)).collect();
    let mut scale = values.clone();
    scale.push(dist.bottom());
    let ranks = dense_ranks(&scale);
    let bottom = ranks[space.len()];
    let keys: Vec<Vec<usize>> = space
        .events()
        .map(|e| {
            let mut v: Vec<usize> = (0..space.len())
                .map(|s| if e.contains(s) { ranks[s] } else { bottom })
                .collect();
            v.sort_unstable_by(|x, y| y.cmp(x));
            v
        })
        .collect();
    EventRelation::from_index_fn(&space, |a, b| keys[a] >= keys[b])
}

/// Dense order-preserving ranks (equal values share a rank).
fn dense_ranks<T: Ord>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].cmp(&values[j]));
    let mut ranks = vec![0; values.len()];
    let mut rank = 0;
    for w in 0..order.len() {
        if w > 0 && values[order[w]] != values[order[w - 1]] {
            rank += 1;
        }
        ranks[order[w]] = rank;
    }
    ranks
}

/// Restriction of `rel` to singletons and ∅, validated as a basic relation.
pub fn basic_from_relation(rel: &EventRelation) -> Result<BasicRelation> {
    let space = rel.space();
    let event = |x: Node| match x {
        Node::State(s) => space.singleton(s),
        Node::Bottom => space.empty(),
    };
    BasicRelation::new(space.clone(), |x, y| rel.geq(event(x), event(y)))
}

/// Strict lifting of a basic relation: A ▷ B iff every member of B (⊥ when B
/// is empty) is strictly dominated by some member of A. ∅ never dominates.
pub fn lifted_strict(basic: &BasicRelation) -> Vec<Vec<bool>> {
    let space = basic.space();
    let n = space.len();
    let m = space.event_count();
    // dominated[A]: states strictly below some member of A; bottom[A]: some
    // member of A strictly above ⊥.
    let mut dominated = vec![0u32; m];
    let mut above_bottom = vec![false; m];
    let per_state: Vec<u32> = (0..n)
        .map(|s| {
            (0..n)
                .filter(|&t| basic.strict(Node::State(s), Node::State(t)))
                .fold(0, |acc, t| acc | 1 << t)
        })
        .collect();
    for bits in 1..m {
        let low = bits.trailing_zeros() as usize;
        let rest = bits & (bits - 1);
        dominated[bits] = dominated[rest] | per_state[low];
        above_bottom[bits] = above_bottom[rest] || basic.strict(Node::State(low), Node::Bottom);
    }
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    a != 0
                        && if b == 0 {
                            above_bottom[a]
                        } else {
                            b as u32 & !dominated[a] == 0
                        }
                })
                .collect()
        })
        .collect()
}

/// The relation simply generated by `basic`: strict part from
/// [`lifted_strict`], completed by A ≐ B ⇔ neither side strictly dominates.
pub fn simply_generate(basic: &BasicRelation) -> Result<EventRelation> {
    crate::limits::ensure(
        "relation matrix",
        basic.space().len(),
        crate::limits::MAX_MATRIX_STATES,
    )?;
    let strict = lifted_strict(basic);
    EventRelation::from_index_fn(basic.space(), |a, b| !strict[b][a])
}

/// Order-of-magnitude relation of a partition: A ▷ B iff A is non-empty and
/// either B is empty or rank(A) < rank(B); completed as in
/// [`simply_generate`].
pub fn om_partition(partition: &Partition) -> Result<EventRelation> {
    let space = partition.space();
    let strict = partition_strict(partition);
    EventRelation::from_index_fn(space, |a, b| !strict(b, a))
}

pub(crate) fn partition_strict(partition: &Partition) -> impl Fn(usize, usize) -> bool {
    let block_of = partition.block_of_states();
    let m = partition.space().event_count();
    let ranks: Vec<usize> = (0..m)
        .map(|bits| {
            (0..block_of.len())
                .filter(|s| bits >> s & 1 == 1)
                .map(|s| block_of[s])
                .min()
                .unwrap_or(usize::MAX)
        })
        .collect();
    move |a, b| a != 0 && (b == 0 || ranks[a] < ranks[b])
}

/// Scales in-block weights into a lexicographic probability (see
/// [`construct::lexico_scale`]) and returns it with its induced relation,
/// after checking that relation against the partition's order of magnitude.
pub fn lexicographic(
    partition: &Partition,
    weights: &[Rational],
) -> Result<(ProbabilityDistribution, EventRelation)> {
    let p = construct::lexico_scale(partition, weights)?;
    let rel = probability(&p)?;
    let verdict = axioms::check_com_p(&rel, partition)?;
    if !verdict.pass {
        return Err(Error::Construction(format!(
            "scaled probability violates COM_P at {:?}",
            verdict.witness
        )));
    }
    Ok((p, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Comparison::*;

    fn space(n: usize) -> StateSpace {
        StateSpace::alphabetic(n).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ev(s: &StateSpace, names: &[&str]) -> Event {
        s.event(names.iter().copied()).unwrap()
    }

    fn pi(levels: &[u32]) -> PossibilityDistribution {
        PossibilityDistribution::new(space(levels.len()), levels.to_vec()).unwrap()
    }

    fn p11() -> ProbabilityDistribution {
        ProbabilityDistribution::new(space(4), vec![r(6, 11), r(2, 11), r(2, 11), r(1, 11)])
            .unwrap()
    }

    #[test]
    fn possibility_examples() {
        let d = pi(&[3, 2, 1]);
        let s = d.space().clone();
        let rel = possibility(&d).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a", "b"]), ev(&s, &["a", "c"])),
            Equivalent
        );
        assert_eq!(rel.query(ev(&s, &["a"]), ev(&s, &["b"])), StrictGreater);
        for a in s.events() {
            assert!(rel.geq(s.full(), a));
        }
    }

    #[test]
    fn necessity_examples() {
        let d = pi(&[3, 2, 1]);
        let s = d.space().clone();
        let rel = necessity(&d).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a", "b"]), ev(&s, &["a"])),
            StrictGreater
        );
        for a in s.events() {
            assert!(rel.geq(s.full(), a));
        }
        assert_eq!(rel.query(ev(&s, &["b"]), ev(&s, &["c"])), Equivalent);
    }

    #[test]
    fn probability_examples() {
        let u = ProbabilityDistribution::uniform(space(3));
        let s = u.space().clone();
        let rel = probability(&u).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a", "b"]), ev(&s, &["c"])),
            StrictGreater
        );

        let p = p11();
        let s = p.space().clone();
        let rel = probability(&p).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a"]), ev(&s, &["b", "c", "d"])),
            StrictGreater
        );
        for a in s.events() {
            for b in s.events() {
                if a.is_subset(b) {
                    assert!(rel.geq(b, a));
                }
            }
        }
    }

    #[test]
    fn discrimax_examples() {
        let d = pi(&[3, 2, 1]);
        let s = d.space().clone();
        let dm = discrimax(&d).unwrap();
        let ps = possibility(&d).unwrap();
        let (ab, ac) = (ev(&s, &["a", "b"]), ev(&s, &["a", "c"]));
        assert_eq!(dm.query(ab, ac), StrictGreater);
        assert_eq!(ps.query(ab, ac), Equivalent);
        for a in s.events() {
            assert_eq!(dm.query(a, a), Equivalent);
        }

        // Intransitive indifference.
        let d = pi(&[2, 2, 1]);
        let dm = discrimax(&d).unwrap();
        let (acx, b, a) = (ev(&s, &["a", "c"]), ev(&s, &["b"]), ev(&s, &["a"]));
        assert_eq!(dm.query(acx, b), Equivalent);
        assert_eq!(dm.query(b, a), Equivalent);
        assert_eq!(dm.query(acx, a), StrictGreater);
    }

    #[test]
    fn leximax_examples() {
        let p = p11();
        let s = p.space().clone();
        let rel = leximax(&p).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a"]), ev(&s, &["b", "c", "d"])),
            StrictGreater
        );
        assert_eq!(rel.query(ev(&s, &["b"]), ev(&s, &["b"])), Equivalent);
        assert_eq!(
            confidence_vector(&p, ev(&s, &["b", "d"])),
            vec![r(0, 1), r(2, 11), r(0, 1), r(1, 11)]
        );

        let d = pi(&[2, 2, 1]);
        let s = d.space().clone();
        let rel = leximax(&d).unwrap();
        assert_eq!(
            rel.query(ev(&s, &["a", "b"]), ev(&s, &["a", "c"])),
            StrictGreater
        );
    }

    #[test]
    fn basic_from_relation_examples() {
        let u = probability(&ProbabilityDistribution::uniform(space(3))).unwrap();
        let b = basic_from_relation(&u).unwrap();
        for x in 0..3 {
            assert!(b.strict(Node::State(x), Node::Bottom));
            for y in 0..3 {
                assert!(b.equiv(Node::State(x), Node::State(y)));
            }
        }

        let b = basic_from_relation(&possibility(&pi(&[3, 2, 1])).unwrap()).unwrap();
        assert!(b.strict(Node::State(0), Node::State(1)));
        assert!(b.strict(Node::State(1), Node::State(2)));
        assert!(b.strict(Node::State(2), Node::Bottom));

        // ∅ strictly above {a}.
        let s = space(2);
        let bad = EventRelation::from_fn(&s, |x, y| !(x.bits() == 1 && y.is_empty())).unwrap();
        match basic_from_relation(&bad) {
            Err(Error::Basic { violation, .. }) => {
                assert_eq!(
                    violation,
                    crate::error::BasicViolation::NonTrivialityViolated
                )
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simply_generate_examples() {
        let s = space(2);
        let basic = BasicRelation::from_levels(s.clone(), &[2, 1]).unwrap();
        let rel = simply_generate(&basic).unwrap();
        let (a, b, ab) = (ev(&s, &["a"]), ev(&s, &["b"]), ev(&s, &["a", "b"]));
        assert_eq!(rel.query(ab, b), StrictGreater);
        assert_eq!(rel.query(a, ab), Equivalent);
        for x in s.events() {
            assert!(!rel.strict(s.empty(), x));
            assert_eq!(rel.strict(x, s.empty()), !x.is_empty());
        }

        // A null state never lifts above ∅.
        let basic = BasicRelation::from_levels(s.clone(), &[1, 0]).unwrap();
        let rel = simply_generate(&basic).unwrap();
        assert_eq!(rel.query(b, s.empty()), Equivalent);
        assert_eq!(rel.query(a, b), StrictGreater);
    }

    #[test]
    fn om_partition_examples() {
        let s = space(4);
        let part = Partition::new(
            s.clone(),
            vec![ev(&s, &["a"]), ev(&s, &["b", "c"]), ev(&s, &["d"])],
        )
        .unwrap();
        let rel = om_partition(&part).unwrap();
        assert_eq!(rel.query(ev(&s, &["b"]), ev(&s, &["d"])), StrictGreater);
        assert_eq!(rel.query(ev(&s, &["b"]), ev(&s, &["c"])), Equivalent);
        assert_eq!(rel.query(ev(&s, &["c", "d"]), ev(&s, &["b"])), Equivalent);
    }

    #[test]
    fn lexicographic_examples() {
        let s = space(3);
        let part = Partition::new(s.clone(), vec![ev(&s, &["a"]), ev(&s, &["b", "c"])]).unwrap();
        let (p, rel) = lexicographic(&part, &[r(1, 1), r(2, 1), r(1, 1)]).unwrap();
        assert_eq!(p.weights(), &[r(4, 7), r(2, 7), r(1, 7)]);
        assert_eq!(
            rel.query(ev(&s, &["a"]), ev(&s, &["b", "c"])),
            StrictGreater
        );

        let one = Partition::trivial(s.clone());
        let (p, _) = lexicographic(&one, &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
        assert_eq!(p, ProbabilityDistribution::uniform(s.clone()));

        let singles = Partition::from_levels(s, &[3, 2, 1]).unwrap();
        let (p, _) = lexicographic(&singles, &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
        assert!(construct::check_big_stepped(&p).pass);
        assert_eq!(p.weights(), &[r(4, 7), r(2, 7), r(1, 7)]);
    }
}
