//! Deciding axioms on explicit event relations.
//!
//! Every checker scans its quantifier domain in canonical lexicographic order
//! of the tuple (A, B, C), so a failing verdict carries the smallest
//! violating tuple. Witnesses can be replayed with [`replay`], which
//! re-evaluates the axiom's formula on the witness events alone.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::event::Event;
use crate::induce;
use crate::limits;
use crate::partition::Partition;
use crate::relation::{Comparison, EventRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axiom {
    Reflexive,
    NonTrivial,
    Consistent,
    QuasiTransitive,
    Monotonic,
    /// Bundle of the five clauses above.
    Def1,
    Complete,
    Transitive,
    Add,
    Neg,
    Clo,
    Ccs,
    Qual,
    /// DEF1 + NEG + CLO.
    Om,
    Com,
    Cpom,
    /// CPOM under the strict-parts-only reading.
    CpomStrict,
    ComP,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexive => "REFLEXIVE",
            Axiom::NonTrivial => "NON_TRIVIAL",
            Axiom::Consistent => "CONSISTENT",
            Axiom::QuasiTransitive => "QUASI_TRANSITIVE",
            Axiom::Monotonic => "MONOTONIC",
            Axiom::Def1 => "DEF1",
            Axiom::Complete => "COMPLETE",
            Axiom::Transitive => "TRANSITIVE",
            Axiom::Add => "ADD",
            Axiom::Neg => "NEG",
            Axiom::Clo => "CLO",
            Axiom::Ccs => "CCS",
            Axiom::Qual => "QUAL",
            Axiom::Om => "OM",
            Axiom::Com => "COM",
            Axiom::Cpom => "CPOM",
            Axiom::CpomStrict => "CPOM_STRICT",
            Axiom::ComP => "COMP",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = [
            Axiom::Reflexive,
            Axiom::NonTrivial,
            Axiom::Consistent,
            Axiom::QuasiTransitive,
            Axiom::Monotonic,
            Axiom::Def1,
            Axiom::Complete,
            Axiom::Transitive,
            Axiom::Add,
            Axiom::Neg,
            Axiom::Clo,
            Axiom::Ccs,
            Axiom::Qual,
            Axiom::Om,
            Axiom::Com,
            Axiom::Cpom,
            Axiom::CpomStrict,
            Axiom::ComP,
        ];
        let upper = s.trim().to_ascii_uppercase().replace('-', "_");
        let upper = if upper == "COM_P" {
            "COMP".to_string()
        } else {
            upper
        };
        all.into_iter()
            .find(|a| a.name() == upper)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// How CPOM is read: full verdict coincidence on disjoint pairs, or
/// coincidence of strict parts only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CpomReading {
    #[default]
    Verdict,
    Strict,
}

impl FromStr for CpomReading {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "verdict" => Ok(CpomReading::Verdict),
            "strict" => Ok(CpomReading::Strict),
            _ => Err(format!("unknown CPOM reading `{s}`")),
        }
    }
}

/// The violating tuple for the clause named by `axiom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub axiom: Axiom,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    fn from_scan(axiom: Axiom, found: Option<Vec<usize>>, rel: &EventRelation) -> Self {
        let witness = found.map(|idx| Witness {
            axiom,
            events: idx.into_iter().map(|i| rel.event(i)).collect(),
        });
        AxiomVerdict {
            axiom,
            pass: witness.is_none(),
            witness,
        }
    }

    fn pass(axiom: Axiom) -> Self {
        AxiomVerdict {
            axiom,
            pass: true,
            witness: None,
        }
    }

    /// Relabels a sub-clause verdict as the bundle it belongs to; the witness
    /// keeps naming the clause that failed.
    fn bundled(self, axiom: Axiom) -> Self {
        AxiomVerdict { axiom, ..self }
    }
}

// Above this many events the outer index of a scan is sharded across rayon
// workers. find_map_first keeps the result the global lexicographic minimum.
const PARALLEL_SIDE: usize = 64;

fn scan1(m: usize, bad: impl Fn(usize) -> Option<Vec<usize>> + Sync) -> Option<Vec<usize>> {
    (0..m).find_map(bad)
}

fn scan2(m: usize, bad: impl Fn(usize, usize) -> bool + Sync) -> Option<Vec<usize>> {
    let row = |a: usize| (0..m).find(|&b| bad(a, b)).map(|b| vec![a, b]);
    if m > PARALLEL_SIDE {
        (0..m).into_par_iter().find_map_first(row)
    } else {
        (0..m).find_map(row)
    }
}

fn scan3(m: usize, bad: impl Fn(usize, usize, usize) -> bool + Sync) -> Option<Vec<usize>> {
    let plane = |a: usize| {
        for b in 0..m {
            for c in 0..m {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
        None
    };
    if m > PARALLEL_SIDE {
        (0..m).into_par_iter().find_map_first(plane)
    } else {
        (0..m).find_map(plane)
    }
}

fn triple_guard(rel: &EventRelation) -> Result<()> {
    limits::ensure("triple axiom scan", rel.n(), limits::MAX_TRIPLE_STATES)
}

fn pair_guard(rel: &EventRelation) -> Result<()> {
    limits::ensure("pairwise axiom scan", rel.n(), limits::MAX_MATRIX_STATES)
}

pub fn check_reflexive(rel: &EventRelation) -> AxiomVerdict {
    let found = scan1(rel.side(), |a| (!rel.geq_index(a, a)).then(|| vec![a]));
    AxiomVerdict::from_scan(Axiom::Reflexive, found, rel)
}

pub fn check_non_trivial(rel: &EventRelation) -> AxiomVerdict {
    let full = rel.side() - 1;
    let found = (!rel.strict_index(full, 0)).then(|| vec![full, 0]);
    AxiomVerdict::from_scan(Axiom::NonTrivial, found, rel)
}

/// S ⪰ A and A ⪰ ∅ for every A; the witness is (S, A) or (A, ∅).
pub fn check_consistent(rel: &EventRelation) -> AxiomVerdict {
    let full = rel.side() - 1;
    let found = scan1(rel.side(), |a| {
        if !rel.geq_index(full, a) {
            Some(vec![full, a])
        } else if !rel.geq_index(a, 0) {
            Some(vec![a, 0])
        } else {
            None
        }
    });
    AxiomVerdict::from_scan(Axiom::Consistent, found, rel)
}

pub fn check_quasi_transitive(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        rel.strict_index(a, b) && rel.strict_index(b, c) && !rel.strict_index(a, c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::QuasiTransitive, found, rel))
}

/// A ⪰ B ⇒ A ∪ C ⪰ B, and A ⪰ B ∪ C ⇒ A ⪰ B.
pub fn check_monotonic(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        (rel.geq_index(a, b) && !rel.geq_index(a | c, b))
            || (rel.geq_index(a, b | c) && !rel.geq_index(a, b))
    });
    Ok(AxiomVerdict::from_scan(Axiom::Monotonic, found, rel))
}

/// The five clauses of a confidence relation, in order.
pub fn check_confidence(rel: &EventRelation) -> Result<Vec<AxiomVerdict>> {
    Ok(vec![
        check_reflexive(rel),
        check_non_trivial(rel),
        check_consistent(rel),
        check_quasi_transitive(rel)?,
        check_monotonic(rel)?,
    ])
}

/// All confidence-relation clauses as one verdict; the witness names the
/// first failing clause.
pub fn check_def1(rel: &EventRelation) -> Result<AxiomVerdict> {
    for verdict in [
        check_reflexive(rel),
        check_non_trivial(rel),
        check_consistent(rel),
    ] {
        if !verdict.pass {
            return Ok(verdict.bundled(Axiom::Def1));
        }
    }
    for check in [check_quasi_transitive, check_monotonic] {
        let verdict = check(rel)?;
        if !verdict.pass {
            return Ok(verdict.bundled(Axiom::Def1));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::Def1))
}

pub fn check_complete(rel: &EventRelation) -> Result<AxiomVerdict> {
    pair_guard(rel)?;
    let found = scan2(rel.side(), |a, b| {
        !rel.geq_index(a, b) && !rel.geq_index(b, a)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Complete, found, rel))
}

pub fn check_transitive(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        rel.geq_index(a, b) && rel.geq_index(b, c) && !rel.geq_index(a, c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Transitive, found, rel))
}

/// Preadditivity: for A disjoint from B ∪ C, B ⪰ C ⇔ A ∪ B ⪰ A ∪ C.
pub fn check_preadditivity(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        a & (b | c) == 0 && rel.geq_index(b, c) != rel.geq_index(a | b, a | c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Add, found, rel))
}

fn pairwise_disjoint(a: usize, b: usize, c: usize) -> bool {
    a & b == 0 && a & c == 0 && b & c == 0
}

/// Negligibility over pairwise disjoint triples: A ≻ B, A ≻ C ⇒ A ≻ B ∪ C.
pub fn check_neg(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        pairwise_disjoint(a, b, c)
            && rel.strict_index(a, b)
            && rel.strict_index(a, c)
            && !rel.strict_index(a, b | c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Neg, found, rel))
}

/// Closeness over all triples: A ∼ B and (A ≻ C or A ∼ C) ⇒ A ∼ B ∪ C.
pub fn check_clo(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        rel.equiv_index(a, b) && rel.geq_index(a, c) && !rel.equiv_index(a, b | c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Clo, found, rel))
}

fn union_property(rel: &EventRelation, a: usize, b: usize, c: usize) -> bool {
    rel.strict_index(a | c, b) && rel.strict_index(a | b, c) && !rel.strict_index(a, b | c)
}

/// CCS over pairwise disjoint triples: A ∪ C ≻ B, A ∪ B ≻ C ⇒ A ≻ B ∪ C.
pub fn check_ccs(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| {
        pairwise_disjoint(a, b, c) && union_property(rel, a, b, c)
    });
    Ok(AxiomVerdict::from_scan(Axiom::Ccs, found, rel))
}

/// QUAL: the CCS implication over all triples.
pub fn check_qual(rel: &EventRelation) -> Result<AxiomVerdict> {
    triple_guard(rel)?;
    let found = scan3(rel.side(), |a, b, c| union_property(rel, a, b, c));
    Ok(AxiomVerdict::from_scan(Axiom::Qual, found, rel))
}

/// OM-relation: confidence relation whose strict part satisfies NEG and
/// whose symmetric part satisfies CLO.
pub fn check_om(rel: &EventRelation) -> Result<AxiomVerdict> {
    let def1 = check_def1(rel)?;
    if !def1.pass {
        return Ok(def1.bundled(Axiom::Om));
    }
    for check in [check_neg, check_clo] {
        let verdict = check(rel)?;
        if !verdict.pass {
            return Ok(verdict.bundled(Axiom::Om));
        }
    }
    Ok(AxiomVerdict::pass(Axiom::Om))
}

/// COM: whenever the lifting of the singleton restriction says A ▷ B, the
/// relation must have A ≻ B. Fails with an error when the singleton
/// restriction is not a basic relation.
pub fn check_com(rel: &EventRelation) -> Result<AxiomVerdict> {
    pair_guard(rel)?;
    let basic = induce::basic_from_relation(rel)?;
    let lifted = induce::lifted_strict(&basic);
    let found = scan2(rel.side(), |a, b| lifted[a][b] && !rel.strict_index(a, b));
    Ok(AxiomVerdict::from_scan(Axiom::Com, found, rel))
}

/// CPOM on disjoint pairs, under the chosen reading.
pub fn check_cpom(rel: &EventRelation, reading: CpomReading) -> Result<AxiomVerdict> {
    pair_guard(rel)?;
    let basic = induce::basic_from_relation(rel)?;
    let lifted = induce::lifted_strict(&basic);
    let (axiom, found) = match reading {
        CpomReading::Verdict => (
            Axiom::Cpom,
            scan2(rel.side(), |a, b| {
                a & b == 0 && lifted_verdict(&lifted, a, b) != rel.query_index(a, b)
            }),
        ),
        CpomReading::Strict => (
            Axiom::CpomStrict,
            scan2(rel.side(), |a, b| {
                a & b == 0 && lifted[a][b] != rel.strict_index(a, b)
            }),
        ),
    };
    Ok(AxiomVerdict::from_scan(axiom, found, rel))
}

fn lifted_verdict(lifted: &[Vec<bool>], a: usize, b: usize) -> Comparison {
    match (lifted[a][b], lifted[b][a]) {
        (true, _) => Comparison::StrictGreater,
        (false, true) => Comparison::StrictLess,
        (false, false) => Comparison::Equivalent,
    }
}

/// COM_P: A ▷_P B ⇒ A ≻ B, with ▷_P the rank comparison of `partition`.
pub fn check_com_p(rel: &EventRelation, partition: &Partition) -> Result<AxiomVerdict> {
    pair_guard(rel)?;
    if partition.space() != rel.space() {
        return Err(crate::error::Error::WidthMismatch {
            left: rel.n(),
            right: partition.space().len(),
        });
    }
    let om = induce::partition_strict(partition);
    let found = scan2(rel.side(), |a, b| om(a, b) && !rel.strict_index(a, b));
    Ok(AxiomVerdict::from_scan(Axiom::ComP, found, rel))
}

/// Runs one named axiom. COM/CPOM report a failing verdict (with no witness)
/// when the singleton restriction is not a basic relation.
pub fn check(
    rel: &EventRelation,
    axiom: Axiom,
    partition: Option<&Partition>,
) -> Result<AxiomVerdict> {
    let basic_guard = |r: Result<AxiomVerdict>| match r {
        Err(crate::error::Error::Basic { .. }) => Ok(AxiomVerdict {
            axiom,
            pass: false,
            witness: None,
        }),
        other => other,
    };
    match axiom {
        Axiom::Reflexive => Ok(check_reflexive(rel)),
        Axiom::NonTrivial => Ok(check_non_trivial(rel)),
        Axiom::Consistent => Ok(check_consistent(rel)),
        Axiom::QuasiTransitive => check_quasi_transitive(rel),
        Axiom::Monotonic => check_monotonic(rel),
        Axiom::Def1 => check_def1(rel),
        Axiom::Complete => check_complete(rel),
        Axiom::Transitive => check_transitive(rel),
        Axiom::Add => check_preadditivity(rel),
        Axiom::Neg => check_neg(rel),
        Axiom::Clo => check_clo(rel),
        Axiom::Ccs => check_ccs(rel),
        Axiom::Qual => check_qual(rel),
        Axiom::Om => check_om(rel),
        Axiom::Com => basic_guard(check_com(rel)),
        Axiom::Cpom => basic_guard(check_cpom(rel, CpomReading::Verdict)),
        Axiom::CpomStrict => basic_guard(check_cpom(rel, CpomReading::Strict)),
        Axiom::ComP => {
            let trivial;
            let partition = match partition {
                Some(p) => p,
                None => {
                    trivial = Partition::trivial(rel.space().clone());
                    &trivial
                }
            };
            check_com_p(rel, partition)
        }
    }
}

/// Re-evaluates the clause named by `witness` on its events only; true iff
/// the events genuinely violate it.
pub fn replay(rel: &EventRelation, witness: &Witness, partition: Option<&Partition>) -> bool {
    let e = &witness.events;
    let u = |x: Event, y: Event| x.union(y).expect("same width");
    let geq = |x: Event, y: Event| rel.geq(x, y);
    let strict = |x: Event, y: Event| rel.strict(x, y);
    let equiv = |x: Event, y: Event| rel.equiv(x, y);
    let space = rel.space();
    let (s, empty) = (space.full(), space.empty());
    match (witness.axiom, e.as_slice()) {
        (Axiom::Reflexive, [a]) => !geq(*a, *a),
        (Axiom::NonTrivial, [a, b]) => *a == s && *b == empty && !strict(s, empty),
        (Axiom::Consistent, [a, b]) => (*a == s && !geq(s, *b)) || (*b == empty && !geq(*a, empty)),
        (Axiom::QuasiTransitive, [a, b, c]) => strict(*a, *b) && strict(*b, *c) && !strict(*a, *c),
        (Axiom::Monotonic, [a, b, c]) => {
            (geq(*a, *b) && !geq(u(*a, *c), *b)) || (geq(*a, u(*b, *c)) && !geq(*a, *b))
        }
        (Axiom::Complete, [a, b]) => !geq(*a, *b) && !geq(*b, *a),
        (Axiom::Transitive, [a, b, c]) => geq(*a, *b) && geq(*b, *c) && !geq(*a, *c),
        (Axiom::Add, [a, b, c]) => {
            a.is_disjoint(u(*b, *c)) && geq(*b, *c) != geq(u(*a, *b), u(*a, *c))
        }
        (Axiom::Neg, [a, b, c]) => {
            a.is_disjoint(*b)
                && a.is_disjoint(*c)
                && b.is_disjoint(*c)
                && strict(*a, *b)
                && strict(*a, *c)
                && !strict(*a, u(*b, *c))
        }
        (Axiom::Clo, [a, b, c]) => equiv(*a, *b) && geq(*a, *c) && !equiv(*a, u(*b, *c)),
        (Axiom::Ccs, [a, b, c]) => {
            a.is_disjoint(*b)
                && a.is_disjoint(*c)
                && b.is_disjoint(*c)
                && strict(u(*a, *c), *b)
                && strict(u(*a, *b), *c)
                && !strict(*a, u(*b, *c))
        }
        (Axiom::Qual, [a, b, c]) => {
            strict(u(*a, *c), *b) && strict(u(*a, *b), *c) && !strict(*a, u(*b, *c))
        }
        (Axiom::Com, [a, b]) => lifted_pair(rel, *a, *b).0 && !strict(*a, *b),
        (Axiom::Cpom, [a, b]) => {
            let (ab, ba) = lifted_pair(rel, *a, *b);
            let lifted = match (ab, ba) {
                (true, _) => Comparison::StrictGreater,
                (false, true) => Comparison::StrictLess,
                (false, false) => Comparison::Equivalent,
            };
            a.is_disjoint(*b) && lifted != rel.query(*a, *b)
        }
        (Axiom::CpomStrict, [a, b]) => {
            a.is_disjoint(*b) && lifted_pair(rel, *a, *b).0 != strict(*a, *b)
        }
        (Axiom::ComP, [a, b]) => {
            let trivial = Partition::trivial(space.clone());
            let p = partition.unwrap_or(&trivial);
            let above = !a.is_empty()
                && (b.is_empty()
                    || p.rank(*a).expect("non-empty") < p.rank(*b).expect("non-empty"));
            above && !strict(*a, *b)
        }
        _ => false,
    }
}

/// Direct evaluation of the lifting rule on one pair (both directions).
fn lifted_pair(rel: &EventRelation, a: Event, b: Event) -> (bool, bool) {
    use crate::basic::Node;
    let Ok(basic) = induce::basic_from_relation(rel) else {
        return (false, false);
    };
    let dominates = |x: Event, y: Event| {
        if x.is_empty() {
            return false;
        }
        let targets: Vec<Node> = if y.is_empty() {
            vec![Node::Bottom]
        } else {
            y.states().map(Node::State).collect()
        };
        targets
            .iter()
            .all(|&t| x.states().any(|s| basic.strict(Node::State(s), t)))
    };
    (dominates(a, b), dominates(b, a))
}

/// Membership of a relation in every class the framework defines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub confidence_relation: bool,
    pub complete: bool,
    pub transitive: bool,
    pub weak_order: bool,
    pub preadditive: bool,
    pub neg: bool,
    pub clo: bool,
    pub ccs: bool,
    pub qual: bool,
    pub om_relation: bool,
    pub comparative_probability: bool,
    pub comparative_possibility: bool,
    pub com: bool,
    pub cpom: bool,
    pub big_stepped_representable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub com_p: Option<bool>,
}

pub fn classify(
    rel: &EventRelation,
    partition: Option<&Partition>,
    reading: CpomReading,
) -> Result<Classification> {
    let confidence_relation = check_def1(rel)?.pass;
    let complete = check_complete(rel)?.pass;
    let transitive = check_transitive(rel)?.pass;
    let preadditive = check_preadditivity(rel)?.pass;
    let neg = check_neg(rel)?.pass;
    let clo = check_clo(rel)?.pass;
    let ccs = check_ccs(rel)?.pass;
    let qual = check_qual(rel)?.pass;
    let com = check(rel, Axiom::Com, None)?.pass;
    let cpom_axiom = match reading {
        CpomReading::Verdict => Axiom::Cpom,
        CpomReading::Strict => Axiom::CpomStrict,
    };
    let cpom = check(rel, cpom_axiom, None)?.pass;
    let com_p = partition
        .map(|p| check_com_p(rel, p).map(|v| v.pass))
        .transpose()?;
    let weak_order = complete && transitive;
    let om_relation = confidence_relation && neg && clo;
    Ok(Classification {
        confidence_relation,
        complete,
        transitive,
        weak_order,
        preadditive,
        neg,
        clo,
        ccs,
        qual,
        om_relation,
        comparative_probability: confidence_relation && weak_order && preadditive,
        comparative_possibility: weak_order && om_relation,
        com,
        cpom,
        big_stepped_representable: confidence_relation && weak_order && preadditive && com,
        com_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
    use crate::event::StateSpace;
    use crate::rational::Rational;

    fn space(n: usize) -> StateSpace {
        StateSpace::alphabetic(n).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn prob(ws: &[(i64, i64)]) -> EventRelation {
        let p = ProbabilityDistribution::new(
            space(ws.len()),
            ws.iter().map(|&(n, d)| r(n, d)).collect(),
        )
        .unwrap();
        induce::probability(&p).unwrap()
    }

    fn poss(levels: &[u32]) -> PossibilityDistribution {
        PossibilityDistribution::new(space(levels.len()), levels.to_vec()).unwrap()
    }

    fn ev(rel: &EventRelation, names: &[&str]) -> Event {
        rel.space().event(names.iter().copied()).unwrap()
    }

    fn assert_replays(rel: &EventRelation, v: &AxiomVerdict) {
        assert!(!v.pass);
        let w = v.witness.as_ref().expect("failing verdict has a witness");
        assert!(replay(rel, w, None), "witness {w:?} does not replay");
    }

    #[test]
    fn non_triviality_witness() {
        let s = space(2);
        let full = s.full();
        let rel = EventRelation::from_fn(&s, |a, b| !(a == full && b.is_empty())).unwrap();
        let v = check_non_trivial(&rel);
        assert_eq!(v.witness.unwrap().events, vec![full, s.empty()]);
    }

    #[test]
    fn drowning_effect_breaks_preadditivity() {
        let rel = induce::possibility(&poss(&[3, 2, 1])).unwrap();
        let v = check_preadditivity(&rel).unwrap();
        assert_replays(&rel, &v);
        // Smallest violating tuple: ∅ ≺ {b} yet {a} ∼ {a,b}.
        assert_eq!(
            v.witness.as_ref().unwrap().events,
            vec![ev(&rel, &["a"]), ev(&rel, &[]), ev(&rel, &["b"])]
        );
        // {b} ≻ {c} but {a,b} ∼ {a,c}: the ⇔ breaks for the orientation
        // C = {b}, B = {c}.
        let textbook = Witness {
            axiom: Axiom::Add,
            events: vec![ev(&rel, &["a"]), ev(&rel, &["c"]), ev(&rel, &["b"])],
        };
        assert!(replay(&rel, &textbook, None));
    }

    #[test]
    fn neg_fails_on_a_tied_sum() {
        let rel = prob(&[(1, 2), (3, 10), (1, 5)]);
        let v = check_neg(&rel).unwrap();
        assert_replays(&rel, &v);
        assert_eq!(
            v.witness.unwrap().events,
            vec![ev(&rel, &["a"]), ev(&rel, &["b"]), ev(&rel, &["c"])]
        );
        // Uniform: NEG holds vacuously.
        assert!(check_neg(&prob(&[(1, 3), (1, 3), (1, 3)])).unwrap().pass);
    }

    #[test]
    fn necessity_breaks_closeness() {
        let rel = induce::necessity(&poss(&[2, 2, 1])).unwrap();
        let v = check_clo(&rel).unwrap();
        assert_replays(&rel, &v);
        let v = check_om(&rel).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness.unwrap().axiom, Axiom::Clo);
    }

    #[test]
    fn com_examples() {
        let big = prob(&[(6, 11), (2, 11), (2, 11), (1, 11)]);
        assert!(check_com(&big).unwrap().pass);

        let rel = prob(&[(2, 5), (3, 10), (3, 10)]);
        let v = check_com(&rel).unwrap();
        assert_replays(&rel, &v);
        assert_eq!(
            v.witness.unwrap().events,
            vec![ev(&rel, &["a"]), ev(&rel, &["b", "c"])]
        );
    }

    #[test]
    fn cpom_examples() {
        let dm = induce::discrimax(&poss(&[2, 2, 1])).unwrap();
        assert!(check_cpom(&dm, CpomReading::Verdict).unwrap().pass);
        assert!(check_cpom(&dm, CpomReading::Strict).unwrap().pass);

        let rel = prob(&[(1, 3), (1, 3), (1, 3)]);
        let v = check_cpom(&rel, CpomReading::Verdict).unwrap();
        assert_replays(&rel, &v);
        let ab_c = Witness {
            axiom: Axiom::Cpom,
            events: vec![ev(&rel, &["a", "b"]), ev(&rel, &["c"])],
        };
        assert!(replay(&rel, &ab_c, None));

        let one = induce::probability(&ProbabilityDistribution::uniform(space(1))).unwrap();
        assert!(check_cpom(&one, CpomReading::Verdict).unwrap().pass);
    }

    #[test]
    fn com_p_examples() {
        let s = space(3);
        let uniform = prob(&[(1, 3), (1, 3), (1, 3)]);
        let two = Partition::new(
            s.clone(),
            vec![s.event(["a"]).unwrap(), s.event(["b", "c"]).unwrap()],
        )
        .unwrap();
        let v = check_com_p(&uniform, &two).unwrap();
        assert!(!v.pass);
        assert!(replay(&uniform, v.witness.as_ref().unwrap(), Some(&two)));
        assert!(check_com_p(&uniform, &Partition::trivial(s)).unwrap().pass);
    }

    #[test]
    fn confidence_examples() {
        for levels in [[3, 2, 1], [2, 2, 1], [1, 1, 1]] {
            let d = poss(&levels);
            for rel in [
                induce::discrimax(&d).unwrap(),
                induce::possibility(&d).unwrap(),
            ] {
                assert!(check_confidence(&rel).unwrap().iter().all(|v| v.pass));
            }
        }
        let rel = prob(&[(1, 2), (3, 10), (1, 5)]);
        assert!(check_def1(&rel).unwrap().pass);
    }

    #[test]
    fn possibility_satisfies_the_negligibility_family() {
        let rel = induce::possibility(&poss(&[2, 2, 1, 0])).unwrap();
        for check in [
            check_neg, check_clo, check_ccs, check_qual, check_om, check_com,
        ] {
            assert!(check(&rel).unwrap().pass);
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify(
            &induce::possibility(&poss(&[3, 2, 1])).unwrap(),
            None,
            CpomReading::Verdict,
        )
        .unwrap();
        assert!(c.comparative_possibility && !c.preadditive);

        let c = classify(
            &prob(&[(6, 11), (2, 11), (2, 11), (1, 11)]),
            None,
            CpomReading::Verdict,
        )
        .unwrap();
        assert!(c.big_stepped_representable && c.comparative_probability);

        let c = classify(
            &induce::discrimax(&poss(&[2, 2, 1])).unwrap(),
            None,
            CpomReading::Verdict,
        )
        .unwrap();
        assert!(c.preadditive && c.cpom && !c.transitive && c.complete);
    }

    #[test]
    fn triple_scans_are_capped() {
        let s = space(9);
        let rel = EventRelation::from_index_fn(&s, |a, b| a >= b).unwrap();
        assert!(matches!(
            check_neg(&rel),
            Err(crate::error::Error::SizeLimit { .. })
        ));
        assert!(check_complete(&rel).unwrap().pass);
    }

    #[test]
    fn axiom_names_parse() {
        assert_eq!("COM_P".parse::<Axiom>().unwrap(), Axiom::ComP);
        assert_eq!("add".parse::<Axiom>().unwrap(), Axiom::Add);
        assert!("XYZ".parse::<Axiom>().is_err());
    }
}
