//! Every claim the harness tests, as a named check over a serializable
//! instance. Evaluating a check twice on the same instance gives the same
//! outcome, which is what makes counterexamples replayable.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::search;
use crate::axioms::{self, Axiom, CpomReading};
use crate::basic::{BasicRelation, Node};
use crate::construct::{self, Representation};
use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
use crate::error::Result;
use crate::event::{Event, StateSpace};
use crate::induce;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::relation::EventRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKey {
    Theorem1CloShape,
    Theorem1NegShape,
    Theorem1CloShapeOnly,
    Theorem2Forward,
    Theorem2Converse,
    Theorem2Agreement,
    Theorem3Generates,
    Theorem3Unique,
    Theorem3Equals,
    Theorem4Forward,
    Theorem4Converse,
    Theorem4Represented,
    Theorem5Forward,
    Theorem5ForwardStrict,
    Theorem5Pinned,
    Theorem5PinnedStrict,
    Theorem5Conditions,
    Theorem6Forward,
    Theorem6Converse,
    Theorem6Conditions,
    Theorem6SameOrder,
    Prop1,
    Prop1Conclusion,
    Prop2,
    Prop2Conclusion,
    Prop3,
    Prop3Converse,
    Prop4,
    Prop4Implication,
    Prop5,
    Prop5Implication,
    Prop6,
    Prop6Conclusion,
    ComP,
    ComPConclusion,
    FamilyRefinement,
}

impl fmt::Display for CheckKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(self).expect("unit variants serialize");
        f.write_str(json.trim_matches('"'))
    }
}

/// Inputs stored in reports. State names are always a, b, c, ...
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Relation {
        n: usize,
        rows: Vec<String>,
    },
    /// Possibility levels; 0 is impossible.
    Levels {
        levels: Vec<u32>,
    },
    Probability {
        weights: Vec<Rational>,
    },
    LevelsAndProbability {
        levels: Vec<u32>,
        weights: Vec<Rational>,
    },
    /// (n+1)×(n+1) matrix over states then ⊥.
    Basic {
        n: usize,
        rows: Vec<String>,
    },
    /// Partition by levels (highest first) and positive in-block weights.
    Lexicographic {
        levels: Vec<u32>,
        weights: Vec<Rational>,
    },
}

impl Instance {
    pub fn relation(rel: &EventRelation) -> Self {
        Instance::Relation {
            n: rel.n(),
            rows: rel.to_rows(),
        }
    }

    pub fn probability(p: &ProbabilityDistribution) -> Self {
        Instance::Probability {
            weights: p.weights().to_vec(),
        }
    }

    pub fn basic(b: &BasicRelation) -> Self {
        let n = b.space().len();
        let node = |i: usize| if i == n { Node::Bottom } else { Node::State(i) };
        let rows = (0..=n)
            .map(|x| {
                (0..=n)
                    .map(|y| if b.geq(node(x), node(y)) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        Instance::Basic { n, rows }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The premise does not hold; nothing asserted.
    Excluded,
    Holds,
    Violated(String),
}

impl Outcome {
    pub fn is_violated(&self) -> bool {
        matches!(self, Outcome::Violated(_))
    }
}

pub fn space(n: usize) -> StateSpace {
    StateSpace::alphabetic(n).expect("n within the alphabet")
}

fn bits_rows(rows: &[String]) -> Vec<Vec<bool>> {
    rows.iter()
        .map(|r| r.chars().map(|c| c == '1').collect())
        .collect()
}

fn decode_relation(n: usize, rows: &[String]) -> Result<EventRelation> {
    EventRelation::from_rows(&space(n), &bits_rows(rows))
}

fn decode_basic(n: usize, rows: &[String]) -> Result<BasicRelation> {
    let rows = bits_rows(rows);
    let slot = |x: Node| match x {
        Node::State(s) => s,
        Node::Bottom => n,
    };
    BasicRelation::new(space(n), |x, y| rows[slot(x)][slot(y)])
}

fn possibility_of(levels: &[u32]) -> Result<PossibilityDistribution> {
    PossibilityDistribution::new(space(levels.len()), levels.to_vec())
}

fn probability_of(weights: &[Rational]) -> Result<ProbabilityDistribution> {
    ProbabilityDistribution::new(space(weights.len()), weights.to_vec())
}

fn show_pair(space: &StateSpace, a: Event, b: Event) -> String {
    format!("{} vs {}", space.format_event(a), space.format_event(b))
}

/// First pair on which the two relations give different verdicts.
fn disagreement(
    left_name: &str,
    left: &EventRelation,
    right_name: &str,
    right: &EventRelation,
) -> Option<String> {
    left.first_disagreement(right).map(|(a, b)| {
        format!(
            "{}: {left_name} {}, {right_name} {}",
            show_pair(left.space(), a, b),
            left.query(a, b),
            right.query(a, b)
        )
    })
}

/// First pair strict in `premise` but not in `conclusion`.
fn strict_gap(
    premise_name: &str,
    premise: &EventRelation,
    conclusion_name: &str,
    conclusion: &EventRelation,
) -> Option<String> {
    let m = premise.side();
    (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .find(|&(a, b)| premise.strict_index(a, b) && !conclusion.strict_index(a, b))
        .map(|(a, b)| {
            let (ea, eb) = (premise.event(a), premise.event(b));
            format!(
                "{}: {premise_name} {}, {conclusion_name} {}",
                show_pair(premise.space(), ea, eb),
                premise.query(ea, eb),
                conclusion.query(ea, eb)
            )
        })
}

fn from_option(found: Option<String>) -> Outcome {
    match found {
        Some(detail) => Outcome::Violated(detail),
        None => Outcome::Holds,
    }
}

/// The first failing axiom of `list`, as a violation message.
fn first_failure(rel: &EventRelation, list: &[Axiom]) -> Result<Option<String>> {
    for &axiom in list {
        let verdict = axioms::check(rel, axiom, None)?;
        if !verdict.pass {
            let at = verdict
                .witness
                .map(|w| {
                    let events: Vec<String> = w
                        .events
                        .iter()
                        .map(|&e| rel.space().format_event(e))
                        .collect();
                    format!(" at {} ({})", w.axiom, events.join(", "))
                })
                .unwrap_or_default();
            return Ok(Some(format!("{axiom} fails{at}")));
        }
    }
    Ok(None)
}

fn all_pass(rel: &EventRelation, list: &[Axiom]) -> Result<bool> {
    Ok(first_failure(rel, list)?.is_none())
}

const COMPARATIVE_PROBABILITY: [Axiom; 4] =
    [Axiom::Def1, Axiom::Complete, Axiom::Transitive, Axiom::Add];

/// Singleton classes rendered from the top, e.g. "s > s = s > ∅ = s".
pub fn singleton_pattern(levels: &[u32]) -> String {
    let mut distinct: Vec<u32> = levels.to_vec();
    distinct.push(0);
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    distinct
        .iter()
        .map(|&l| {
            let count = levels.iter().filter(|&&x| x == l).count();
            let mut members = vec!["s"; count];
            if l == 0 {
                members.insert(0, "∅");
            }
            members.join(" = ")
        })
        .collect::<Vec<_>>()
        .join(" > ")
}

/// Singleton levels of a confidence weak order (0 for states tied with ∅).
fn singleton_levels(rel: &EventRelation) -> Result<Option<Vec<u32>>> {
    Ok(induce::basic_from_relation(rel)?.levels())
}

/// Non-null singletons strictly ordered; null ones tied with ∅.
fn clo_shape(levels: &[u32]) -> Option<String> {
    let mut positive: Vec<u32> = levels.iter().copied().filter(|&l| l > 0).collect();
    positive.sort_unstable();
    let tied = positive.windows(2).any(|w| w[0] == w[1]);
    tied.then(|| format!("two non-null singletons tie: {}", singleton_pattern(levels)))
}

/// Non-null singletons strictly ordered except among the lowest three.
fn neg_shape(levels: &[u32]) -> Option<String> {
    let mut positive: Vec<u32> = levels.iter().copied().filter(|&l| l > 0).collect();
    positive.sort_unstable_by(|a, b| b.cmp(a));
    let k = positive.len();
    let bad = (0..k.saturating_sub(1)).any(|i| positive[i] == positive[i + 1] && i + 3 < k);
    bad.then(|| {
        format!(
            "tie above the lowest three non-null singletons: {}",
            singleton_pattern(levels)
        )
    })
}

fn theorem1(
    rel: &EventRelation,
    extra: Axiom,
    shape: fn(&[u32]) -> Option<String>,
) -> Result<Outcome> {
    if !all_pass(rel, &COMPARATIVE_PROBABILITY)? || !all_pass(rel, &[extra])? {
        return Ok(Outcome::Excluded);
    }
    Ok(match singleton_levels(rel)? {
        Some(levels) => from_option(shape(&levels)),
        None => Outcome::Violated("singleton restriction is not a weak order".into()),
    })
}

fn theorem2_agreement(p: &ProbabilityDistribution) -> Result<Outcome> {
    let prob = induce::probability(p)?;
    let lex = induce::leximax(p)?;
    Ok(from_option(disagreement(
        "probability",
        &prob,
        "leximax",
        &lex,
    )))
}

fn theorem4_represented(rel: &EventRelation) -> Result<Outcome> {
    let Some(levels) = singleton_levels(rel)? else {
        return Ok(Outcome::Violated(
            "singleton restriction is not a weak order".into(),
        ));
    };
    let Ok(pi) = PossibilityDistribution::new(rel.space().clone(), levels.clone()) else {
        return Ok(Outcome::Violated("every singleton is tied with ∅".into()));
    };
    let induced = induce::possibility(&pi)?;
    Ok(from_option(
        disagreement("relation", rel, "possibility", &induced)
            .map(|d| format!("levels {levels:?}; {d}")),
    ))
}

fn theorem5_conditions(rel: &EventRelation, reading: CpomReading) -> Result<Outcome> {
    let cpom = match reading {
        CpomReading::Verdict => Axiom::Cpom,
        CpomReading::Strict => Axiom::CpomStrict,
    };
    if let Some(d) = first_failure(rel, &[Axiom::Def1, Axiom::Complete, Axiom::Add, cpom])? {
        return Ok(Outcome::Violated(d));
    }
    let basic = induce::basic_from_relation(rel)?;
    if !(basic.is_complete() && basic.is_transitive()) {
        return Ok(Outcome::Violated(
            "singleton restriction is not a weak order".into(),
        ));
    }
    Ok(Outcome::Holds)
}

fn theorem5_pinned(levels: &[u32], reading: CpomReading) -> Result<Outcome> {
    let pi = possibility_of(levels)?;
    let pinned = search::pin_by_cpom_and_add(&pi, reading)?;
    if pinned.conflicts > 0 {
        return Ok(Outcome::Violated(format!(
            "{} conflicting entries",
            pinned.conflicts
        )));
    }
    if pinned.free > 0 {
        return Ok(Outcome::Violated(format!(
            "{} entries left free",
            pinned.free
        )));
    }
    let rel = pinned.relation.expect("fully pinned");
    let discrimax = induce::discrimax(&pi)?;
    Ok(from_option(disagreement(
        "pinned",
        &rel,
        "discrimax",
        &discrimax,
    )))
}

const THEOREM6_CONDITIONS: [Axiom; 5] = [
    Axiom::Def1,
    Axiom::Complete,
    Axiom::Transitive,
    Axiom::Add,
    Axiom::Com,
];

fn theorem6_represent(rel: &EventRelation) -> Result<Outcome> {
    Ok(match construct::represent_big_stepped(rel)? {
        Representation::BigStepped(_) => Outcome::Holds,
        Representation::NotRepresentable(_) => Outcome::Excluded,
        Representation::TheoremCounterexample { candidate, pair } => Outcome::Violated(format!(
            "candidate {:?} disagrees on {}",
            candidate.weights(),
            show_pair(rel.space(), pair.0, pair.1)
        )),
    })
}

fn prop1_conclusion(rel: &EventRelation) -> Outcome {
    let m = rel.side();
    for a in 0..m {
        for b in 0..m {
            if a & b == a && !rel.geq_index(b, a) {
                return Outcome::Violated(format!(
                    "{} ⊆ {} but not {} ⪰ {}",
                    rel.space().format_event(rel.event(a)),
                    rel.space().format_event(rel.event(b)),
                    rel.space().format_event(rel.event(b)),
                    rel.space().format_event(rel.event(a)),
                ));
            }
            for c in 0..m {
                if rel.strict_index(a, b) && !rel.strict_index(a | c, b) {
                    return Outcome::Violated(format!(
                        "A ≻ B but not A∪C ≻ B at ({})",
                        triple(rel, a, b, c)
                    ));
                }
                if rel.strict_index(a, b | c) && !rel.strict_index(a, b) {
                    return Outcome::Violated(format!(
                        "A ≻ B∪C but not A ≻ B at ({})",
                        triple(rel, a, b, c)
                    ));
                }
            }
        }
    }
    Outcome::Holds
}

fn triple(rel: &EventRelation, a: usize, b: usize, c: usize) -> String {
    [a, b, c]
        .iter()
        .map(|&i| rel.space().format_event(rel.event(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// NEG and CLO restricted to pairwise disjoint triples.
fn prop2_conclusion(rel: &EventRelation) -> Outcome {
    let m = rel.side();
    for a in 0..m {
        for b in 0..m {
            if a & b != 0 {
                continue;
            }
            for c in 0..m {
                if a & c != 0 || b & c != 0 {
                    continue;
                }
                if rel.strict_index(a, b) && rel.strict_index(a, c) && !rel.strict_index(a, b | c) {
                    return Outcome::Violated(format!(
                        "disjoint NEG at ({})",
                        triple(rel, a, b, c)
                    ));
                }
                if rel.equiv_index(a, b) && rel.geq_index(a, c) && !rel.equiv_index(a, b | c) {
                    return Outcome::Violated(format!(
                        "disjoint CLO at ({})",
                        triple(rel, a, b, c)
                    ));
                }
            }
        }
    }
    Outcome::Holds
}

fn ordinally_equivalent(levels: &[u32], p: &ProbabilityDistribution) -> bool {
    let n = levels.len();
    (0..n).all(|s| (0..n).all(|t| (levels[s] >= levels[t]) == (p.weight(s) >= p.weight(t))))
}

fn prop4_implication(levels: &[u32], p: &ProbabilityDistribution) -> Result<Outcome> {
    if !ordinally_equivalent(levels, p) {
        return Ok(Outcome::Excluded);
    }
    let discrimax = induce::discrimax(&possibility_of(levels)?)?;
    let prob = induce::probability(p)?;
    Ok(from_option(strict_gap(
        "discrimax",
        &discrimax,
        "probability",
        &prob,
    )))
}

fn prop5_implication(levels: &[u32], p: &ProbabilityDistribution) -> Result<Outcome> {
    if !ordinally_equivalent(levels, p) {
        return Ok(Outcome::Excluded);
    }
    let possibility = induce::possibility(&possibility_of(levels)?)?;
    let prob = induce::probability(p)?;
    Ok(from_option(strict_gap(
        "possibility",
        &possibility,
        "probability",
        &prob,
    )))
}

fn com_p_conclusion(levels: &[u32], p: &ProbabilityDistribution) -> Result<Outcome> {
    let partition = Partition::from_levels(p.space().clone(), levels)?;
    let rel = induce::probability(p)?;
    let verdict = axioms::check_com_p(&rel, &partition)?;
    Ok(match verdict.witness {
        None => Outcome::Holds,
        Some(w) => Outcome::Violated(format!(
            "COM_P fails at {}",
            show_pair(rel.space(), w.events[0], w.events[1])
        )),
    })
}

/// Block masses of a lexicographic probability decrease big-steppedly.
fn block_algebra_big_stepped(p: &ProbabilityDistribution, partition: &Partition) -> bool {
    let masses: Vec<Rational> = partition
        .blocks()
        .iter()
        .map(|&b| p.probability_of(b))
        .collect();
    (0..masses.len()).all(|i| masses[i] > masses[i + 1..].iter().sum::<Rational>())
}

fn com_p(levels: &[u32], weights: &[Rational]) -> Result<Outcome> {
    let s = space(levels.len());
    let partition = Partition::from_levels(s, levels)?;
    let p = construct::lexico_scale(&partition, weights)?;
    if !construct::satisfies_lexicographic_condition(&p, &partition) {
        return Ok(Outcome::Violated("block dominance condition fails".into()));
    }
    if !block_algebra_big_stepped(&p, &partition) {
        return Ok(Outcome::Violated(
            "block subalgebra is not big-stepped".into(),
        ));
    }
    com_p_conclusion(levels, &p)
}

fn family_refinement(levels: &[u32], weights: &[Rational]) -> Result<Outcome> {
    let s = space(levels.len());
    let partition = Partition::from_levels(s, levels)?;
    let p = construct::lexico_scale(&partition, weights)?;
    let discrimax = induce::discrimax(&possibility_of(levels)?)?;
    let prob = induce::probability(&p)?;
    Ok(from_option(strict_gap(
        "discrimax",
        &discrimax,
        "lexicographic",
        &prob,
    )))
}

/// Evaluates `key` on `instance`. Errors mean the instance does not fit the
/// check (wrong kind or malformed), never a theorem failure.
pub fn evaluate(key: CheckKey, instance: &Instance) -> Result<Outcome> {
    use CheckKey::*;
    use Instance as I;
    let mismatch =
        || crate::error::Error::Construction(format!("instance kind does not fit check {key}"));
    match (key, instance) {
        (Theorem1CloShape, I::Relation { n, rows }) => {
            theorem1(&decode_relation(*n, rows)?, Axiom::Clo, clo_shape)
        }
        (Theorem1NegShape, I::Relation { n, rows }) => {
            theorem1(&decode_relation(*n, rows)?, Axiom::Neg, neg_shape)
        }
        (Theorem1CloShapeOnly, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            Ok(match singleton_levels(&rel)? {
                Some(levels) => from_option(clo_shape(&levels)),
                None => Outcome::Violated("singleton restriction is not a weak order".into()),
            })
        }
        (Theorem2Forward, I::Probability { weights }) => {
            let p = probability_of(weights)?;
            if !construct::check_big_stepped(&p).pass {
                return Ok(Outcome::Excluded);
            }
            theorem2_agreement(&p)
        }
        (Theorem2Agreement, I::Probability { weights }) => {
            theorem2_agreement(&probability_of(weights)?)
        }
        (Theorem2Converse, I::Levels { levels }) => {
            let s = space(levels.len());
            let p = construct::big_stepped_from_levels(&s, levels)?;
            if let Some(w) = construct::check_big_stepped(&p).witness {
                return Ok(Outcome::Violated(format!(
                    "constructed p fails the big-stepped test at {}",
                    s.name(w)
                )));
            }
            let prob = induce::probability(&p)?;
            let lex = induce::leximax(&possibility_of(levels)?)?;
            Ok(from_option(disagreement(
                "probability",
                &prob,
                "leximax",
                &lex,
            )))
        }
        (Theorem3Generates, I::Basic { n, rows }) => {
            let basic = decode_basic(*n, rows)?;
            let generated = induce::simply_generate(&basic)?;
            if let Some(d) = first_failure(&generated, &[Axiom::Om])? {
                return Ok(Outcome::Violated(format!("simply generated relation: {d}")));
            }
            let back = induce::basic_from_relation(&generated)?;
            Ok(if back == basic {
                Outcome::Holds
            } else {
                Outcome::Violated(
                    "simply generated relation is not consistent with its basic relation".into(),
                )
            })
        }
        (Theorem3Unique, I::Basic { n, rows }) => {
            let basic = decode_basic(*n, rows)?;
            let found = search::consistent_om_relations(&basic)?;
            let generated = induce::simply_generate(&basic)?;
            Ok(match found.as_slice() {
                [only] if *only == generated => Outcome::Holds,
                [only] => Outcome::Violated(format!(
                    "the unique consistent OM-relation is not simply generated: {}",
                    disagreement("found", only, "generated", &generated).unwrap_or_default()
                )),
                many => Outcome::Violated(format!("{} consistent OM-relations", many.len())),
            })
        }
        (Theorem3Equals, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            let Ok(basic) = induce::basic_from_relation(&rel) else {
                return Ok(Outcome::Violated(
                    "singleton restriction is not a basic relation".into(),
                ));
            };
            let generated = induce::simply_generate(&basic)?;
            Ok(from_option(disagreement(
                "relation",
                &rel,
                "generated",
                &generated,
            )))
        }
        (Theorem4Forward, I::Levels { levels }) => {
            let rel = induce::possibility(&possibility_of(levels)?)?;
            Ok(from_option(first_failure(
                &rel,
                &[Axiom::Complete, Axiom::Transitive, Axiom::Om],
            )?))
        }
        (Theorem4Converse, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            if !all_pass(
                &rel,
                &[Axiom::Def1, Axiom::Complete, Axiom::Transitive, Axiom::Om],
            )? {
                return Ok(Outcome::Excluded);
            }
            theorem4_represented(&rel)
        }
        (Theorem4Represented, I::Relation { n, rows }) => {
            theorem4_represented(&decode_relation(*n, rows)?)
        }
        (Theorem5Forward, I::Levels { levels }) => theorem5_conditions(
            &induce::discrimax(&possibility_of(levels)?)?,
            CpomReading::Verdict,
        ),
        (Theorem5ForwardStrict, I::Levels { levels }) => theorem5_conditions(
            &induce::discrimax(&possibility_of(levels)?)?,
            CpomReading::Strict,
        ),
        (Theorem5Pinned, I::Levels { levels }) => theorem5_pinned(levels, CpomReading::Verdict),
        (Theorem5PinnedStrict, I::Levels { levels }) => {
            theorem5_pinned(levels, CpomReading::Strict)
        }
        (Theorem5Conditions, I::Relation { n, rows }) => {
            theorem5_conditions(&decode_relation(*n, rows)?, CpomReading::Verdict)
        }
        (Theorem6Forward, I::Probability { weights }) => {
            let p = probability_of(weights)?;
            if !construct::check_big_stepped(&p).pass {
                return Ok(Outcome::Excluded);
            }
            let rel = induce::probability(&p)?;
            Ok(match theorem6_represent(&rel)? {
                Outcome::Excluded => Outcome::Violated(
                    first_failure(&rel, &THEOREM6_CONDITIONS)?
                        .unwrap_or_else(|| "not representable".into()),
                ),
                other => other,
            })
        }
        (Theorem6Converse, I::Relation { n, rows }) => {
            theorem6_represent(&decode_relation(*n, rows)?)
        }
        (Theorem6Conditions, I::Relation { n, rows }) => Ok(from_option(first_failure(
            &decode_relation(*n, rows)?,
            &THEOREM6_CONDITIONS,
        )?)),
        (Theorem6SameOrder, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            let Some(levels) = singleton_levels(&rel)? else {
                return Ok(Outcome::Violated(
                    "singleton restriction is not a weak order".into(),
                ));
            };
            let p = construct::big_stepped_from_levels(rel.space(), &levels)?;
            let induced = induce::probability(&p)?;
            Ok(from_option(disagreement(
                "relation",
                &rel,
                "big-stepped",
                &induced,
            )))
        }
        (Prop1, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            if !all_pass(&rel, &[Axiom::Def1])? {
                return Ok(Outcome::Excluded);
            }
            Ok(prop1_conclusion(&rel))
        }
        (Prop1Conclusion, I::Relation { n, rows }) => {
            Ok(prop1_conclusion(&decode_relation(*n, rows)?))
        }
        (Prop2, I::Levels { levels }) => Ok(prop2_conclusion(&induce::discrimax(
            &possibility_of(levels)?,
        )?)),
        (Prop2Conclusion, I::Relation { n, rows }) => {
            Ok(prop2_conclusion(&decode_relation(*n, rows)?))
        }
        (Prop3, I::Levels { levels }) => {
            let pi = possibility_of(levels)?;
            let discrimax = induce::discrimax(&pi)?;
            let possibility = induce::possibility(&pi)?;
            let necessity = induce::necessity(&pi)?;
            if let Some(d) = strict_gap("possibility", &possibility, "discrimax", &discrimax) {
                return Ok(Outcome::Violated(d));
            }
            if let Some(d) = strict_gap("necessity", &necessity, "discrimax", &discrimax) {
                return Ok(Outcome::Violated(d));
            }
            let m = discrimax.side();
            let disjoint_mismatch =
                (0..m)
                    .flat_map(|a| (0..m).map(move |b| (a, b)))
                    .find(|&(a, b)| {
                        a & b == 0 && discrimax.query_index(a, b) != possibility.query_index(a, b)
                    });
            Ok(match disjoint_mismatch {
                None => Outcome::Holds,
                Some((a, b)) => Outcome::Violated(format!(
                    "disjoint {}: discrimax {}, possibility {}",
                    show_pair(discrimax.space(), discrimax.event(a), discrimax.event(b)),
                    discrimax.query_index(a, b),
                    possibility.query_index(a, b)
                )),
            })
        }
        (Prop3Converse, I::Levels { levels }) => {
            let pi = possibility_of(levels)?;
            let discrimax = induce::discrimax(&pi)?;
            let possibility = induce::possibility(&pi)?;
            Ok(from_option(strict_gap(
                "discrimax",
                &discrimax,
                "possibility",
                &possibility,
            )))
        }
        (Prop4, I::Levels { levels }) => {
            let p = construct::big_stepped_from_levels(&space(levels.len()), levels)?;
            prop4_implication(levels, &p)
        }
        (Prop4Implication, I::LevelsAndProbability { levels, weights }) => {
            prop4_implication(levels, &probability_of(weights)?)
        }
        (Prop5, I::Probability { weights }) => {
            let p = probability_of(weights)?;
            if !construct::check_big_stepped(&p).pass {
                return Ok(Outcome::Excluded);
            }
            let pi = construct::possibility_from_prob(&p);
            prop5_implication(pi.levels(), &p)
        }
        (Prop5Implication, I::LevelsAndProbability { levels, weights }) => {
            prop5_implication(levels, &probability_of(weights)?)
        }
        (Prop6, I::Relation { n, rows }) => {
            let rel = decode_relation(*n, rows)?;
            if !all_pass(&rel, &[Axiom::Def1])? {
                return Ok(Outcome::Excluded);
            }
            Ok(match induce::basic_from_relation(&rel) {
                Ok(_) => Outcome::Holds,
                Err(e) => Outcome::Violated(e.to_string()),
            })
        }
        (Prop6Conclusion, I::Relation { n, rows }) => Ok(
            match induce::basic_from_relation(&decode_relation(*n, rows)?) {
                Ok(_) => Outcome::Holds,
                Err(e) => Outcome::Violated(e.to_string()),
            },
        ),
        (ComP, I::Lexicographic { levels, weights }) => com_p(levels, weights),
        (ComPConclusion, I::LevelsAndProbability { levels, weights }) => {
            com_p_conclusion(levels, &probability_of(weights)?)
        }
        (FamilyRefinement, I::Lexicographic { levels, weights }) => {
            family_refinement(levels, weights)
        }
        _ => Err(mismatch()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn patterns() {
        assert_eq!(singleton_pattern(&[2, 1, 0]), "s > s > ∅ = s");
        assert_eq!(singleton_pattern(&[1, 1, 1]), "s = s = s > ∅");
    }

    #[test]
    fn shapes() {
        assert!(clo_shape(&[2, 1, 0]).is_none());
        assert!(clo_shape(&[1, 1, 0]).is_some());
        assert!(neg_shape(&[1, 1, 1]).is_none());
        assert!(neg_shape(&[2, 2, 1, 1]).is_some());
        assert!(neg_shape(&[3, 2, 2, 1]).is_none());
        assert!(neg_shape(&[4, 3, 2, 2, 1]).is_none());
        assert!(neg_shape(&[4, 4, 3, 2, 1]).is_some());
    }

    #[test]
    fn controls_are_violations() {
        let p = Instance::Probability {
            weights: vec![r(1, 2), r(3, 10), r(1, 5)],
        };
        assert!(evaluate(CheckKey::Theorem2Agreement, &p)
            .unwrap()
            .is_violated());
        assert_eq!(
            evaluate(CheckKey::Theorem2Forward, &p).unwrap(),
            Outcome::Excluded
        );
        let drowning = Instance::Levels {
            levels: vec![2, 2, 1],
        };
        assert!(evaluate(CheckKey::Prop3Converse, &drowning)
            .unwrap()
            .is_violated());
        assert_eq!(
            evaluate(CheckKey::Prop3, &drowning).unwrap(),
            Outcome::Holds
        );
    }

    #[test]
    fn two_point_support_is_outside_the_clo_class() {
        // {a} ∼ {a} and {a} ⪰ {b}, yet {a,b} ≻ {a}: the all-triples CLO fails,
        // though the singletons have the strict-prefix shape.
        let p = ProbabilityDistribution::new(space(3), vec![r(2, 3), r(1, 3), r(0, 1)]).unwrap();
        let rel = induce::probability(&p).unwrap();
        let i = Instance::relation(&rel);
        assert_eq!(
            evaluate(CheckKey::Theorem1CloShape, &i).unwrap(),
            Outcome::Excluded
        );
        assert_eq!(
            evaluate(CheckKey::Theorem1CloShapeOnly, &i).unwrap(),
            Outcome::Holds
        );
        assert_eq!(singleton_pattern(&[2, 1, 0]), "s > s > ∅ = s");
    }

    #[test]
    fn wrong_instance_kind_is_an_error() {
        let i = Instance::Levels { levels: vec![1] };
        assert!(evaluate(CheckKey::Theorem6Converse, &i).is_err());
    }

    #[test]
    fn instance_json_round_trip() {
        let i = Instance::LevelsAndProbability {
            levels: vec![3, 2, 1],
            weights: vec![r(1, 2), r(3, 10), r(1, 5)],
        };
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<Instance>(&text).unwrap(), i);
        assert_eq!(CheckKey::Theorem1CloShape.to_string(), "theorem1_clo_shape");
    }
}
