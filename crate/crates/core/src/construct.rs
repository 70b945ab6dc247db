//! Distributions that realize the representation results: big-stepped
//! probabilities from state orders, ordinally equivalent possibility levels,
//! lexicographic scaling over a partition, and extraction of a big-stepped
//! representative from a qualifying relation.

use crate::axioms::{self, Axiom, AxiomVerdict, CpomReading};
use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::event::{Event, StateSpace};
use crate::induce;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::relation::EventRelation;

/// A weak order on states as levels occupying 1..=k (higher = more
/// plausible).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateWeakOrder {
    levels: Vec<u32>,
}

impl StateWeakOrder {
    pub fn new(levels: Vec<u32>) -> Result<Self> {
        let k = levels.iter().copied().max().unwrap_or(0);
        if levels.is_empty() || (1..=k).any(|l| !levels.contains(&l)) || levels.contains(&0) {
            return Err(Error::NonContiguousLevels);
        }
        Ok(StateWeakOrder { levels })
    }

    /// Same order, levels compressed onto 1..=k.
    pub fn from_ordinal<T: Ord>(values: &[T]) -> Result<Self> {
        let mut distinct: Vec<&T> = values.iter().collect();
        distinct.sort();
        distinct.dedup();
        let levels = values
            .iter()
            .map(|v| distinct.binary_search(&v).expect("present") as u32 + 1)
            .collect();
        StateWeakOrder::new(levels)
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Number of equivalence classes.
    pub fn class_count(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// Equivalence classes, most plausible first; members in index order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        (1..=self.class_count())
            .rev()
            .map(|l| (0..self.len()).filter(|&s| self.levels[s] == l).collect())
            .collect()
    }

    /// The levels as a possibility distribution over `space`.
    pub fn to_possibility(&self, space: &StateSpace) -> Result<PossibilityDistribution> {
        PossibilityDistribution::new(space.clone(), self.levels.clone())
    }

    /// Renders with state names, e.g. `a > b = c > d`.
    pub fn render(&self, space: &StateSpace) -> String {
        self.classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&s| space.name(s))
                    .collect::<Vec<_>>()
                    .join(" = ")
            })
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderParseError {
    #[error("order string is empty")]
    Empty,
    #[error("empty group in order string at position {0}")]
    EmptyGroup(usize),
    #[error("state `{0}` appears twice in the order")]
    Repeated(String),
    #[error(transparent)]
    Space(#[from] Error),
}

/// Parses `a > b = c > d` (whitespace-insensitive) into the space it names
/// and the order on it.
pub fn parse_order(
    text: &str,
) -> std::result::Result<(StateSpace, StateWeakOrder), OrderParseError> {
    if text.trim().is_empty() {
        return Err(OrderParseError::Empty);
    }
    let groups: Vec<Vec<String>> = text
        .split('>')
        .map(|g| g.split('=').map(|s| s.trim().to_string()).collect())
        .collect();
    let mut names: Vec<String> = Vec::new();
    let mut ranks: Vec<u32> = Vec::new();
    let k = groups.len() as u32;
    for (i, group) in groups.iter().enumerate() {
        for name in group {
            if name.is_empty() {
                return Err(OrderParseError::EmptyGroup(i));
            }
            if names.contains(name) {
                return Err(OrderParseError::Repeated(name.clone()));
            }
            names.push(name.clone());
            ranks.push(k - i as u32);
        }
    }
    let space = StateSpace::new(names)?;
    let order = StateWeakOrder::new(ranks)?;
    Ok((space, order))
}

/// Big-stepped probability with the given order: class values from the
/// bottom up, v_k = 1 and v_i = 1 + Σ_{j>i} |C_j|·v_j, then normalized.
pub fn big_stepped_from_order(
    space: &StateSpace,
    order: &StateWeakOrder,
) -> Result<ProbabilityDistribution> {
    big_stepped_from_levels(space, order.levels())
}

/// As [`big_stepped_from_order`], except that level-0 states get weight 0.
/// Positive levels need not be contiguous.
pub fn big_stepped_from_levels(
    space: &StateSpace,
    levels: &[u32],
) -> Result<ProbabilityDistribution> {
    if levels.len() != space.len() {
        return Err(Error::LengthMismatch {
            expected: space.len(),
            got: levels.len(),
        });
    }
    let mut distinct: Vec<u32> = levels.iter().copied().filter(|&l| l > 0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.is_empty() {
        return Err(Error::AllImpossible);
    }
    // Bottom-up over positive classes.
    let mut value_of_level = std::collections::HashMap::new();
    let mut below: i64 = 0;
    for &level in &distinct {
        let v = 1 + below;
        value_of_level.insert(level, v);
        let size = levels.iter().filter(|&&l| l == level).count() as i64;
        below += size * v;
    }
    let weights = levels
        .iter()
        .map(|l| Rational::from_integer(value_of_level.get(l).copied().unwrap_or(0)))
        .collect();
    ProbabilityDistribution::from_unnormalized(space.clone(), weights)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigSteppedVerdict {
    pub pass: bool,
    /// First state (by index) whose weight does not exceed the total weight
    /// of strictly less probable states.
    pub witness: Option<usize>,
}

/// Every positive-weight state must outweigh the sum of all strictly smaller
/// weights. Zero-weight states are skipped.
pub fn check_big_stepped(p: &ProbabilityDistribution) -> BigSteppedVerdict {
    let w = p.weights();
    let witness = (0..w.len()).find(|&s| {
        if w[s].is_zero() {
            return false;
        }
        let smaller: Rational = w.iter().filter(|x| *x < &w[s]).sum();
        w[s] <= smaller
    });
    BigSteppedVerdict {
        pass: witness.is_none(),
        witness,
    }
}

/// Possibility levels ordinally equivalent to `p`: zero weight → level 0,
/// distinct positive weights → 1, 2, ... in increasing order.
pub fn possibility_from_prob(p: &ProbabilityDistribution) -> PossibilityDistribution {
    let mut distinct: Vec<&Rational> = p.weights().iter().filter(|w| w.is_positive()).collect();
    distinct.sort();
    distinct.dedup();
    let levels = p
        .weights()
        .iter()
        .map(|w| {
            if w.is_positive() {
                distinct.binary_search(&w).expect("present") as u32 + 1
            } else {
                0
            }
        })
        .collect();
    PossibilityDistribution::new(p.space().clone(), levels).expect("weights sum to one")
}

/// Lexicographic probability over `partition` keeping in-block proportions of
/// `weights`. Blocks are scaled bottom-up so that the lightest state of each
/// block weighs exactly one more unit than all later blocks together.
pub fn lexico_scale(
    partition: &Partition,
    weights: &[Rational],
) -> Result<ProbabilityDistribution> {
    let space = partition.space();
    if weights.len() != space.len() {
        return Err(Error::LengthMismatch {
            expected: space.len(),
            got: weights.len(),
        });
    }
    if let Some(s) = (0..weights.len()).find(|&s| !weights[s].is_positive()) {
        return Err(Error::NonPositiveWeight(s));
    }
    let mut scaled = vec![Rational::zero(); space.len()];
    let mut later_mass = Rational::zero();
    for block in partition.blocks().iter().rev() {
        let lightest = block
            .states()
            .map(|s| &weights[s])
            .min()
            .expect("blocks are non-empty");
        let factor = (&later_mass + &Rational::one()) / lightest;
        for s in block.states() {
            scaled[s] = &weights[s] * &factor;
            later_mass = &later_mass + &scaled[s];
        }
    }
    let p = ProbabilityDistribution::from_unnormalized(space.clone(), scaled)?;
    if !satisfies_lexicographic_condition(&p, partition) {
        return Err(Error::Construction(
            "scaled weights miss the block dominance condition".into(),
        ));
    }
    Ok(p)
}

/// Each state of block i outweighs the whole mass of blocks i+1, i+2, ...
pub fn satisfies_lexicographic_condition(
    p: &ProbabilityDistribution,
    partition: &Partition,
) -> bool {
    let blocks = partition.blocks();
    (0..blocks.len()).all(|i| {
        let later: Rational = blocks[i + 1..].iter().map(|&b| p.probability_of(b)).sum();
        blocks[i].states().all(|s| p.weight(s) > &later)
    })
}

/// Outcome of [`represent_big_stepped`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    /// A big-stepped probability inducing exactly the input relation.
    BigStepped(ProbabilityDistribution),
    /// The relation is not a preadditive confidence weak order satisfying COM;
    /// carries the first failing verdict.
    NotRepresentable(AxiomVerdict),
    /// The axioms hold but the constructed probability disagrees with the
    /// relation on the given pair. Never expected; always surfaced.
    TheoremCounterexample {
        candidate: ProbabilityDistribution,
        pair: (Event, Event),
    },
}

/// Checks the representability axioms, then builds the big-stepped candidate
/// from the singleton order (states tied with ∅ get weight 0) and verifies it
/// reproduces `rel` on every pair.
pub fn represent_big_stepped(rel: &EventRelation) -> Result<Representation> {
    let checks = [
        Axiom::Def1,
        Axiom::Complete,
        Axiom::Transitive,
        Axiom::Add,
        Axiom::Com,
    ];
    for axiom in checks {
        let verdict = axioms::check(rel, axiom, None)?;
        if !verdict.pass {
            return Ok(Representation::NotRepresentable(verdict));
        }
    }
    let basic = induce::basic_from_relation(rel)?;
    let levels = basic
        .levels()
        .expect("singleton restriction of a weak order is a weak order");
    let candidate = big_stepped_from_levels(rel.space(), &levels)?;
    let induced = induce::probability(&candidate)?;
    Ok(match induced.first_disagreement(rel) {
        None => Representation::BigStepped(candidate),
        Some(pair) => Representation::TheoremCounterexample { candidate, pair },
    })
}

/// Classification shortcut used by callers that only need the yes/no answer.
pub fn is_big_stepped_representable(rel: &EventRelation) -> Result<bool> {
    Ok(axioms::classify(rel, None, CpomReading::Verdict)?.big_stepped_representable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn order_strings() {
        let (space, order) = parse_order("a > b = c > d").unwrap();
        assert_eq!(space.names(), &["a", "b", "c", "d"]);
        assert_eq!(order.levels(), &[3, 2, 2, 1]);
        assert_eq!(order.render(&space), "a > b = c > d");
        let (_, again) = parse_order("  a>b=c  >d ").unwrap();
        assert_eq!(again, order);
        assert_eq!(parse_order("a > > b"), Err(OrderParseError::EmptyGroup(1)));
        assert!(matches!(
            parse_order("a > a"),
            Err(OrderParseError::Repeated(_))
        ));
        assert_eq!(parse_order("  "), Err(OrderParseError::Empty));
    }

    #[test]
    fn big_stepped_examples() {
        let (space, order) = parse_order("a > b = c > d").unwrap();
        let p = big_stepped_from_order(&space, &order).unwrap();
        assert_eq!(p.weights(), &[r(6, 11), r(2, 11), r(2, 11), r(1, 11)]);
        assert!(check_big_stepped(&p).pass);

        let (space, order) = parse_order("a = b = c").unwrap();
        let p = big_stepped_from_order(&space, &order).unwrap();
        assert_eq!(p, ProbabilityDistribution::uniform(space));
        assert!(check_big_stepped(&p).pass);

        let (space, order) = parse_order("a > b > c").unwrap();
        let p = big_stepped_from_order(&space, &order).unwrap();
        assert_eq!(p.weights(), &[r(4, 7), r(2, 7), r(1, 7)]);
        let w = p.weights();
        for i in 0..3 {
            let tail: Rational = w[i + 1..].iter().sum();
            assert!(w[i] > tail);
        }
    }

    #[test]
    fn check_big_stepped_examples() {
        let space = StateSpace::alphabetic(3).unwrap();
        let p =
            ProbabilityDistribution::new(space.clone(), vec![r(1, 2), r(3, 10), r(1, 5)]).unwrap();
        assert_eq!(
            check_big_stepped(&p),
            BigSteppedVerdict {
                pass: false,
                witness: Some(0)
            }
        );
        assert!(check_big_stepped(&ProbabilityDistribution::uniform(space.clone())).pass);
        let with_null =
            ProbabilityDistribution::new(space, vec![r(2, 3), r(1, 3), r(0, 1)]).unwrap();
        assert!(check_big_stepped(&with_null).pass);
    }

    #[test]
    fn possibility_from_prob_examples() {
        let space = StateSpace::alphabetic(4).unwrap();
        let p = ProbabilityDistribution::new(
            space.clone(),
            vec![r(6, 11), r(2, 11), r(2, 11), r(1, 11)],
        )
        .unwrap();
        assert_eq!(possibility_from_prob(&p).levels(), &[3, 2, 2, 1]);
        let u = ProbabilityDistribution::uniform(space.clone());
        assert_eq!(possibility_from_prob(&u).levels(), &[1, 1, 1, 1]);
        let z =
            ProbabilityDistribution::new(space, vec![r(1, 2), r(1, 4), r(1, 4), r(0, 1)]).unwrap();
        assert_eq!(possibility_from_prob(&z).levels(), &[2, 1, 1, 0]);
    }

    #[test]
    fn lexico_scale_examples() {
        let space = StateSpace::alphabetic(3).unwrap();
        let part = Partition::new(
            space.clone(),
            vec![
                space.event(["a"]).unwrap(),
                space.event(["b", "c"]).unwrap(),
            ],
        )
        .unwrap();
        let p = lexico_scale(&part, &[r(1, 1), r(2, 1), r(1, 1)]).unwrap();
        assert_eq!(p.weights(), &[r(4, 7), r(2, 7), r(1, 7)]);
        assert!(p.weight(0) > &(p.weight(1) + p.weight(2)));

        let w = [r(1, 2), r(1, 3), r(1, 6)];
        let p = lexico_scale(&Partition::trivial(space.clone()), &w).unwrap();
        assert_eq!(p.weights(), &w);

        let singles = Partition::from_levels(space.clone(), &[3, 2, 1]).unwrap();
        let p = lexico_scale(&singles, &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
        assert!(check_big_stepped(&p).pass);

        assert_eq!(
            lexico_scale(&singles, &[r(1, 1), r(0, 1), r(1, 1)]),
            Err(Error::NonPositiveWeight(1))
        );
    }

    #[test]
    fn represent_examples() {
        let space = StateSpace::alphabetic(4).unwrap();
        let p = ProbabilityDistribution::new(
            space.clone(),
            vec![r(6, 11), r(2, 11), r(2, 11), r(1, 11)],
        )
        .unwrap();
        let rel = induce::probability(&p).unwrap();
        match represent_big_stepped(&rel).unwrap() {
            Representation::BigStepped(q) => assert_eq!(induce::probability(&q).unwrap(), rel),
            other => panic!("unexpected {other:?}"),
        }

        let pi = PossibilityDistribution::new(StateSpace::alphabetic(3).unwrap(), vec![2, 2, 1])
            .unwrap();
        let rel = induce::possibility(&pi).unwrap();
        match represent_big_stepped(&rel).unwrap() {
            Representation::NotRepresentable(v) => assert_eq!(v.axiom, Axiom::Add),
            other => panic!("unexpected {other:?}"),
        }

        let one = StateSpace::alphabetic(1).unwrap();
        let rel = induce::probability(&ProbabilityDistribution::uniform(one)).unwrap();
        match represent_big_stepped(&rel).unwrap() {
            Representation::BigStepped(q) => assert_eq!(q.weights(), &[Rational::one()]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn null_states_get_zero_weight() {
        let space = StateSpace::alphabetic(3).unwrap();
        let p = ProbabilityDistribution::new(space, vec![r(2, 3), r(1, 3), r(0, 1)]).unwrap();
        let rel = induce::probability(&p).unwrap();
        match represent_big_stepped(&rel).unwrap() {
            Representation::BigStepped(q) => {
                assert_eq!(q.weights(), &[r(2, 3), r(1, 3), r(0, 1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
