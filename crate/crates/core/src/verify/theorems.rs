//! The theorem suites: which corpus each scans, which checks run on it, and
//! which known-bad instances it must reject.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::checks::{self, evaluate, space, CheckKey, Instance, Outcome};
use super::enumerate;
use super::random::Generators;
use super::report::{Control, Counterexample, Expectation, Mode, TheoremReport};
use crate::axioms::CpomReading;
use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::induce;
use crate::limits;
use crate::rational::Rational;
use crate::relation::EventRelation;
use crate::{construct, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    One,
    Two,
    Three,
    Four,
    Five,
    Six,
    Props,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::One,
        TheoremId::Two,
        TheoremId::Three,
        TheoremId::Four,
        TheoremId::Five,
        TheoremId::Six,
        TheoremId::Props,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::One => "1",
            TheoremId::Two => "2",
            TheoremId::Three => "3",
            TheoremId::Four => "4",
            TheoremId::Five => "5",
            TheoremId::Six => "6",
            TheoremId::Props => "props",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            TheoremId::One => {
                "a comparative probability satisfying CLO (resp. NEG) orders its non-null singletons strictly (resp. strictly above the lowest three)"
            }
            TheoremId::Two => {
                "a big-stepped probability orders events as leximax does, and every leximax order has a big-stepped probability"
            }
            TheoremId::Three => {
                "for a complete basic relation, the simply generated relation is the unique OM-relation consistent with it"
            }
            TheoremId::Four => {
                "a monotonic confidence relation is a complete transitive OM-relation iff a possibility distribution induces it"
            }
            TheoremId::Five => {
                "preadditive, complete, CPOM and a singleton weak order iff the relation is a discrimax relation"
            }
            TheoremId::Six => {
                "a monotonic confidence relation is a preadditive weak order satisfying COM iff a big-stepped probability induces it"
            }
            TheoremId::Props => {
                "monotonicity, discrimax refinement, big-stepped compatibility, induced basic relations and COM_P"
            }
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown theorem {s:?} (expected 1..6 or props)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n: usize,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub cpom_reading: CpomReading,
}

impl VerifyOptions {
    pub fn exhaustive(n: usize) -> Self {
        VerifyOptions {
            n,
            mode: Mode::Exhaustive,
            samples: 0,
            seed: 0,
            cpom_reading: CpomReading::Verdict,
        }
    }

    pub fn sampled(n: usize, samples: u64, seed: u64) -> Self {
        VerifyOptions {
            n,
            mode: Mode::Sampled,
            samples,
            seed,
            cpom_reading: CpomReading::Verdict,
        }
    }
}

/// Largest n for the sampled suites that scan triples of events per sample.
const MAX_SAMPLED_STATES: usize = 6;

/// Failures kept before canonical sorting and trimming.
const FAILURE_BUFFER: usize = 1024;

struct Run {
    report: TheoremReport,
}

impl Run {
    fn new(id: TheoremId, opts: &VerifyOptions, seeded: bool) -> Self {
        let seed = seeded.then_some(opts.seed);
        Run {
            report: TheoremReport::new(id.label(), id.statement(), opts.mode, opts.n, seed),
        }
    }

    fn check(
        &mut self,
        key: CheckKey,
        mode: Mode,
        instance: impl FnOnce() -> Instance,
    ) -> Result<Outcome> {
        let instance = instance();
        let outcome = evaluate(key, &instance)?;
        let entry = self.report.check_mut(key, mode);
        entry.evaluated += 1;
        match &outcome {
            Outcome::Excluded => {}
            Outcome::Holds => entry.qualifying += 1,
            Outcome::Violated(detail) => {
                entry.qualifying += 1;
                entry.failures += 1;
                let detail = detail.clone();
                if self.report.counterexamples.len() < FAILURE_BUFFER {
                    self.report.record_failure(Counterexample {
                        check: key,
                        instance,
                        detail,
                    });
                } else {
                    self.report.counterexample_count += 1;
                }
            }
        }
        Ok(outcome)
    }

    fn control(
        &mut self,
        label: &str,
        key: CheckKey,
        instance: Instance,
        expect: Expectation,
    ) -> Result<()> {
        let outcome = evaluate(key, &instance)?;
        let caught = match expect {
            Expectation::Violated => outcome.is_violated(),
            Expectation::Excluded => outcome == Outcome::Excluded,
        };
        let detail = match outcome {
            Outcome::Violated(d) => Some(d),
            _ => None,
        };
        self.report.controls.push(Control {
            label: label.to_string(),
            check: key,
            instance,
            expect,
            caught,
            detail,
        });
        Ok(())
    }

    fn tally(&mut self, key: &str, by: u64) {
        self.report.tally(key, by);
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("non-zero denominator")
}

fn weights(ws: &[(i64, i64)]) -> Vec<Rational> {
    ws.iter().map(|&(n, d)| r(n, d)).collect()
}

fn probability_relation(ws: &[(i64, i64)]) -> Result<EventRelation> {
    let p = ProbabilityDistribution::new(space(ws.len()), weights(ws))?;
    induce::probability(&p)
}

fn uniform_relation(n: usize) -> Result<EventRelation> {
    induce::probability(&ProbabilityDistribution::uniform(space(n)))
}

fn sampled_guard(opts: &VerifyOptions) -> Result<()> {
    limits::ensure("sampled theorem suite", opts.n, MAX_SAMPLED_STATES)
}

fn no_samples() -> Error {
    Error::Construction("sampled mode needs at least one sample".into())
}

/// Runs one suite. Deterministic in (theorem, options).
pub fn verify(id: TheoremId, opts: &VerifyOptions) -> Result<TheoremReport> {
    if opts.n == 0 {
        return Err(Error::StateCount {
            got: 0,
            max: limits::MAX_STATES,
        });
    }
    if opts.mode == Mode::Sampled && opts.samples == 0 {
        return Err(no_samples());
    }
    let start = Instant::now();
    let mut report = match id {
        TheoremId::One => theorem1(opts),
        TheoremId::Two => theorem2(opts),
        TheoremId::Three => theorem3(opts),
        TheoremId::Four => theorem4(opts),
        TheoremId::Five => theorem5(opts),
        TheoremId::Six => theorem6(opts),
        TheoremId::Props => props(opts),
    }?;
    report.finish(start.elapsed());
    Ok(report)
}

/// Re-evaluates a counterexample; true iff it is still a violation.
pub fn replay(cx: &Counterexample) -> Result<bool> {
    Ok(evaluate(cx.check, &cx.instance)?.is_violated())
}

fn theorem1(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::One, opts, opts.mode == Mode::Sampled);
    let n = opts.n;
    match opts.mode {
        Mode::Exhaustive => {
            let s = space(n);
            run.report.search_space = format!(
                "every complete transitive relation on the {} events of {} states",
                s.event_count(),
                n
            );
            for rel in enumerate::event_weak_orders(&s)? {
                run.report.instances += 1;
                theorem1_instance(&mut run, Mode::Exhaustive, &rel)?;
            }
        }
        Mode::Sampled => {
            sampled_guard(opts)?;
            let s = space(n);
            run.report.search_space = format!(
                "relations of {} random probabilities on {n} states (small integer weights, zeros allowed) and as many random big-stepped ones",
                opts.samples
            );
            let mut gen = Generators::new(opts.seed);
            for _ in 0..opts.samples {
                for p in [gen.probability(&s, 6), gen.big_stepped(&s)] {
                    run.report.instances += 1;
                    theorem1_instance(&mut run, Mode::Sampled, &induce::probability(&p)?)?;
                }
            }
        }
    }
    run.control(
        "uniform probability on 3 states lacks CLO",
        CheckKey::Theorem1CloShape,
        Instance::relation(&uniform_relation(3)?),
        Expectation::Excluded,
    )?;
    run.control(
        "uniform probability on 3 states ties its singletons",
        CheckKey::Theorem1CloShapeOnly,
        Instance::relation(&uniform_relation(3)?),
        Expectation::Violated,
    )?;
    Ok(run.report)
}

fn theorem1_instance(run: &mut Run, mode: Mode, rel: &EventRelation) -> Result<()> {
    for (key, tag) in [
        (CheckKey::Theorem1CloShape, "clo"),
        (CheckKey::Theorem1NegShape, "neg"),
    ] {
        let outcome = run.check(key, mode, || Instance::relation(rel))?;
        if outcome != Outcome::Excluded {
            let levels = induce::basic_from_relation(rel)?.levels().ok_or_else(|| {
                Error::Construction("qualifying relation is not a weak order".into())
            })?;
            run.tally(&format!("{tag}: {}", checks::singleton_pattern(&levels)), 1);
        }
    }
    Ok(())
}

fn theorem2(opts: &VerifyOptions) -> Result<TheoremReport> {
    let seeded = opts.mode == Mode::Sampled || opts.samples > 0;
    let mut run = Run::new(TheoremId::Two, opts, seeded);
    let n = opts.n;
    let s = space(n);
    let mut gen = Generators::new(opts.seed);
    match opts.mode {
        Mode::Exhaustive => {
            let orders: Vec<_> = enumerate::state_orders(n)?.collect();
            run.report.search_space = format!(
                "all {} weak orders on {n} states (converse, and forward on their big-stepped constructions), plus {} random big-stepped probabilities",
                orders.len(),
                opts.samples
            );
            for order in &orders {
                run.report.instances += 1;
                let levels = order.levels().to_vec();
                run.check(CheckKey::Theorem2Converse, Mode::Exhaustive, || {
                    Instance::Levels {
                        levels: levels.clone(),
                    }
                })?;
                let p = construct::big_stepped_from_order(&s, order)?;
                run.check(CheckKey::Theorem2Forward, Mode::Exhaustive, || {
                    Instance::probability(&p)
                })?;
            }
            for _ in 0..opts.samples {
                let p = gen.big_stepped(&s);
                run.check(CheckKey::Theorem2Forward, Mode::Sampled, || {
                    Instance::probability(&p)
                })?;
            }
        }
        Mode::Sampled => {
            run.report.search_space = format!(
                "{} random weak orders (converse) and {} random big-stepped probabilities (forward) on {n} states",
                opts.samples, opts.samples
            );
            for _ in 0..opts.samples {
                run.report.instances += 1;
                let order = gen.state_order(n);
                run.check(CheckKey::Theorem2Converse, Mode::Sampled, || {
                    Instance::Levels {
                        levels: order.levels().to_vec(),
                    }
                })?;
                let p = gen.big_stepped(&s);
                run.check(CheckKey::Theorem2Forward, Mode::Sampled, || {
                    Instance::probability(&p)
                })?;
            }
        }
    }
    run.tally("big-stepped draws rejected", gen.rejected);
    let control = Instance::Probability {
        weights: weights(&[(1, 2), (3, 10), (1, 5)]),
    };
    run.control(
        "p = (1/2, 3/10, 1/5) is not big-stepped",
        CheckKey::Theorem2Forward,
        control.clone(),
        Expectation::Excluded,
    )?;
    run.control(
        "p = (1/2, 3/10, 1/5) disagrees with leximax",
        CheckKey::Theorem2Agreement,
        control,
        Expectation::Violated,
    )?;
    Ok(run.report)
}

fn theorem3(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::Three, opts, opts.mode == Mode::Sampled);
    let n = opts.n;
    let s = space(n);
    let unique = n <= limits::cap(limits::MAX_SEARCH_STATES);
    match opts.mode {
        Mode::Exhaustive => {
            let basics = enumerate::complete_basic_relations(&s)?;
            run.report.search_space = format!(
                "all {} complete basic relations on {n} states{}",
                basics.len(),
                if unique {
                    ", each with a backtracking search over complete relations consistent with it"
                } else {
                    "; uniqueness search skipped above 3 states"
                }
            );
            for basic in &basics {
                run.report.instances += 1;
                let tag = if basic.is_transitive() {
                    "weak-order basics"
                } else {
                    "semiorder basics (intransitive ties)"
                };
                run.tally(tag, 1);
                run.check(CheckKey::Theorem3Generates, Mode::Exhaustive, || {
                    Instance::basic(basic)
                })?;
                if unique {
                    run.check(CheckKey::Theorem3Unique, Mode::Exhaustive, || {
                        Instance::basic(basic)
                    })?;
                }
            }
        }
        Mode::Sampled => {
            sampled_guard(opts)?;
            run.report.search_space = format!(
                "{} random complete basic relations (semiorders) on {n} states",
                opts.samples
            );
            let mut gen = Generators::new(opts.seed);
            for _ in 0..opts.samples {
                run.report.instances += 1;
                let basic = gen.basic(&s);
                run.check(CheckKey::Theorem3Generates, Mode::Sampled, || {
                    Instance::basic(&basic)
                })?;
                if unique {
                    run.check(CheckKey::Theorem3Unique, Mode::Sampled, || {
                        Instance::basic(&basic)
                    })?;
                }
            }
        }
    }
    run.control(
        "uniform probability on 3 states is consistent with the flat basic relation but not simply generated",
        CheckKey::Theorem3Equals,
        Instance::relation(&uniform_relation(3)?),
        Expectation::Violated,
    )?;
    Ok(run.report)
}

fn theorem4(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::Four, opts, opts.mode == Mode::Sampled);
    let n = opts.n;
    let s = space(n);
    match opts.mode {
        Mode::Exhaustive => {
            let assignments: Vec<Vec<u32>> = enumerate::level_assignments(n)?.collect();
            let mut induced = BTreeSet::new();
            let mut induced_positive = BTreeSet::new();
            for levels in &assignments {
                run.check(CheckKey::Theorem4Forward, Mode::Exhaustive, || {
                    Instance::Levels {
                        levels: levels.clone(),
                    }
                })?;
                let rel =
                    induce::possibility(&PossibilityDistribution::new(s.clone(), levels.clone())?)?;
                if levels.iter().all(|&l| l > 0) {
                    induced_positive.insert(rel.to_rows());
                }
                induced.insert(rel.to_rows());
            }
            run.tally(
                "possibility relations (impossible states allowed)",
                induced.len() as u64,
            );
            run.tally(
                "possibility relations (all states possible)",
                induced_positive.len() as u64,
            );
            if n <= limits::cap(limits::MAX_EVENT_ORDER_STATES) {
                run.report.search_space = format!(
                    "all {} level assignments on {n} states (forward) and every complete transitive relation on {} events (converse)",
                    assignments.len(),
                    s.event_count()
                );
                let mut qualifying = BTreeSet::new();
                for rel in enumerate::event_weak_orders(&s)? {
                    run.report.instances += 1;
                    if run.check(CheckKey::Theorem4Converse, Mode::Exhaustive, || {
                        Instance::relation(&rel)
                    })? != Outcome::Excluded
                    {
                        qualifying.insert(rel.to_rows());
                    }
                }
                run.tally("qualifying event weak orders", qualifying.len() as u64);
                // Any mismatch also shows up as a forward or converse failure.
                run.tally(
                    "cross-count mismatches",
                    qualifying.symmetric_difference(&induced).count() as u64,
                );
            } else {
                run.report.search_space = format!(
                    "all {} level assignments on {n} states (forward only; the converse corpus needs n <= 3)",
                    assignments.len()
                );
                run.report.instances = assignments.len() as u64;
            }
        }
        Mode::Sampled => {
            sampled_guard(opts)?;
            run.report.search_space = format!(
                "{} random level assignments (forward) and relations of as many random probabilities (converse) on {n} states",
                opts.samples
            );
            let mut gen = Generators::new(opts.seed);
            for _ in 0..opts.samples {
                run.report.instances += 1;
                let mut levels = gen.state_order(n).levels().to_vec();
                let null = gen.event(&s);
                if !null.is_full() {
                    for st in null.states() {
                        levels[st] = 0;
                    }
                }
                run.check(CheckKey::Theorem4Forward, Mode::Sampled, || {
                    Instance::Levels { levels }
                })?;
                let p = gen.probability(&s, 6);
                run.check(CheckKey::Theorem4Converse, Mode::Sampled, || {
                    Instance::relation(&induce::probability(&p).expect("n within caps"))
                })?;
            }
        }
    }
    let necessity = induce::necessity(&PossibilityDistribution::new(space(3), vec![2, 2, 1])?)?;
    run.control(
        "necessity of (2, 2, 1) fails CLO",
        CheckKey::Theorem4Converse,
        Instance::relation(&necessity),
        Expectation::Excluded,
    )?;
    run.control(
        "necessity of (2, 2, 1) is not a possibility relation",
        CheckKey::Theorem4Represented,
        Instance::relation(&necessity),
        Expectation::Violated,
    )?;
    Ok(run.report)
}

fn theorem5(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::Five, opts, opts.mode == Mode::Sampled);
    let n = opts.n;
    let (forward, pinned, other_forward, other_pinned, other_name) = match opts.cpom_reading {
        CpomReading::Verdict => (
            CheckKey::Theorem5Forward,
            CheckKey::Theorem5Pinned,
            CheckKey::Theorem5ForwardStrict,
            CheckKey::Theorem5PinnedStrict,
            "strict",
        ),
        CpomReading::Strict => (
            CheckKey::Theorem5ForwardStrict,
            CheckKey::Theorem5PinnedStrict,
            CheckKey::Theorem5Forward,
            CheckKey::Theorem5Pinned,
            "verdict",
        ),
    };
    let orders: Vec<Vec<u32>> = match opts.mode {
        Mode::Exhaustive => {
            limits::ensure("entry propagation", n, limits::MAX_PROPAGATION_STATES)?;
            let all: Vec<Vec<u32>> = enumerate::state_orders(n)?
                .map(|o| o.levels().to_vec())
                .collect();
            run.report.search_space = format!(
                "all {} weak orders on {n} states; CPOM reading: {}",
                all.len(),
                reading_name(opts.cpom_reading)
            );
            all
        }
        Mode::Sampled => {
            sampled_guard(opts)?;
            run.report.search_space = format!(
                "{} random weak orders on {n} states; CPOM reading: {}",
                opts.samples,
                reading_name(opts.cpom_reading)
            );
            let mut gen = Generators::new(opts.seed);
            (0..opts.samples)
                .map(|_| gen.state_order(n).levels().to_vec())
                .collect()
        }
    };
    let mut other_failures = 0;
    for levels in &orders {
        run.report.instances += 1;
        let instance = Instance::Levels {
            levels: levels.clone(),
        };
        run.check(forward, opts.mode, || instance.clone())?;
        run.check(pinned, opts.mode, || instance.clone())?;
        let pi = PossibilityDistribution::new(space(n), levels.clone())?;
        let pinning = super::search::pin_by_cpom_and_add(&pi, opts.cpom_reading)?;
        run.tally("entries pinned", pinning.pinned as u64);
        run.tally("entries free", pinning.free as u64);
        run.tally("conflicting classes", pinning.conflicts as u64);
        for key in [other_forward, other_pinned] {
            if evaluate(key, &instance)?.is_violated() {
                other_failures += 1;
            }
        }
    }
    run.tally(
        &format!("failures under the {other_name} reading"),
        other_failures,
    );
    run.control(
        "uniform probability on 3 states fails CPOM",
        CheckKey::Theorem5Conditions,
        Instance::relation(&uniform_relation(3)?),
        Expectation::Violated,
    )?;
    Ok(run.report)
}

fn reading_name(reading: CpomReading) -> &'static str {
    match reading {
        CpomReading::Verdict => "verdict",
        CpomReading::Strict => "strict",
    }
}

fn theorem6(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::Six, opts, opts.mode == Mode::Sampled);
    let n = opts.n;
    let s = space(n);
    match opts.mode {
        Mode::Exhaustive => {
            run.report.search_space = format!(
                "every complete transitive relation on the {} events of {n} states (converse); big-stepped constructions of every level assignment (forward)",
                s.event_count()
            );
            let corpus = enumerate::event_weak_orders(&s)?;
            let mut induced = BTreeSet::new();
            for levels in enumerate::level_assignments(n)? {
                let p = construct::big_stepped_from_levels(&s, &levels)?;
                run.check(CheckKey::Theorem6Forward, Mode::Exhaustive, || {
                    Instance::probability(&p)
                })?;
                induced.insert(induce::probability(&p)?.to_rows());
            }
            let mut qualifying = BTreeSet::new();
            for rel in corpus {
                run.report.instances += 1;
                if run.check(CheckKey::Theorem6Converse, Mode::Exhaustive, || {
                    Instance::relation(&rel)
                })? != Outcome::Excluded
                {
                    qualifying.insert(rel.to_rows());
                }
            }
            run.tally("qualifying event weak orders", qualifying.len() as u64);
            run.tally("big-stepped relations", induced.len() as u64);
            // Any mismatch also shows up as a forward or converse failure.
            run.tally(
                "cross-count mismatches",
                qualifying.symmetric_difference(&induced).count() as u64,
            );
        }
        Mode::Sampled => {
            sampled_guard(opts)?;
            run.report.search_space = format!(
                "{} random big-stepped probabilities (forward) and relations of as many random probabilities (converse) on {n} states",
                opts.samples
            );
            let mut gen = Generators::new(opts.seed);
            for _ in 0..opts.samples {
                run.report.instances += 1;
                let p = gen.big_stepped(&s);
                run.check(CheckKey::Theorem6Forward, Mode::Sampled, || {
                    Instance::probability(&p)
                })?;
                let q = gen.probability(&s, 6);
                let rel = induce::probability(&q)?;
                run.check(CheckKey::Theorem6Converse, Mode::Sampled, || {
                    Instance::relation(&rel)
                })?;
            }
            run.tally("big-stepped draws rejected", gen.rejected);
        }
    }
    let control = Instance::relation(&probability_relation(&[(2, 5), (3, 10), (3, 10)])?);
    run.control(
        "p = (2/5, 3/10, 3/10) fails COM",
        CheckKey::Theorem6Conditions,
        control.clone(),
        Expectation::Violated,
    )?;
    run.control(
        "p = (2/5, 3/10, 3/10) is excluded from the converse",
        CheckKey::Theorem6Converse,
        control.clone(),
        Expectation::Excluded,
    )?;
    run.control(
        "p = (2/5, 3/10, 3/10) has no big-stepped probability with its singleton order",
        CheckKey::Theorem6SameOrder,
        control,
        Expectation::Violated,
    )?;
    Ok(run.report)
}

/// Largest n for the sampled lexicographic structures in the props suite.
const MAX_LEXICOGRAPHIC_STATES: usize = 6;

fn props(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut run = Run::new(TheoremId::Props, opts, true);
    let n = opts.n;
    let s = space(n);
    let mut gen = Generators::new(opts.seed);
    let orders: Vec<Vec<u32>> = match opts.mode {
        Mode::Exhaustive => enumerate::state_orders(n)?
            .map(|o| o.levels().to_vec())
            .collect(),
        Mode::Sampled => {
            sampled_guard(opts)?;
            (0..opts.samples)
                .map(|_| gen.state_order(n).levels().to_vec())
                .collect()
        }
    };
    let lex_sizes: Vec<usize> = (n + 1..=MAX_LEXICOGRAPHIC_STATES).collect();
    let lex_samples = opts.samples.max(1);
    run.report.search_space = format!(
        "{} weak orders on {n} states ({}) with their possibility, necessity, discrimax, leximax and big-stepped relations and lexicographic probabilities; plus {lex_samples} random lexicographic structures per size {:?}",
        orders.len(),
        opts.mode,
        lex_sizes
    );
    let mut drowning_orders = 0;
    let mut first_drowning = None;
    for levels in &orders {
        run.report.instances += 1;
        let pi = PossibilityDistribution::new(s.clone(), levels.clone())?;
        let p = construct::big_stepped_from_levels(&s, levels)?;
        let relations = [
            induce::possibility(&pi)?,
            induce::necessity(&pi)?,
            induce::discrimax(&pi)?,
            induce::leximax(&pi)?,
            induce::probability(&p)?,
        ];
        for rel in &relations {
            run.check(CheckKey::Prop1, opts.mode, || Instance::relation(rel))?;
            run.check(CheckKey::Prop6, opts.mode, || Instance::relation(rel))?;
        }
        let as_levels = || Instance::Levels {
            levels: levels.clone(),
        };
        run.check(CheckKey::Prop2, opts.mode, as_levels)?;
        run.check(CheckKey::Prop3, opts.mode, as_levels)?;
        run.check(CheckKey::Prop4, opts.mode, as_levels)?;
        run.check(CheckKey::Prop5, opts.mode, || Instance::probability(&p))?;
        if evaluate(CheckKey::Prop3Converse, &as_levels())?.is_violated() {
            drowning_orders += 1;
            first_drowning.get_or_insert_with(|| levels.clone());
        }
        let unit = vec![Rational::one(); n];
        let random = gen.block_weights(n, 5);
        for w in [unit, random] {
            let lex = || Instance::Lexicographic {
                levels: levels.clone(),
                weights: w.clone(),
            };
            run.check(CheckKey::ComP, opts.mode, lex)?;
            run.check(CheckKey::FamilyRefinement, opts.mode, lex)?;
        }
    }
    for &size in &lex_sizes {
        let ls = space(size);
        for _ in 0..lex_samples {
            let partition = gen.partition(&ls);
            let levels = partition_levels(&partition);
            let w = gen.block_weights(size, 5);
            let lex = || Instance::Lexicographic {
                levels: levels.clone(),
                weights: w.clone(),
            };
            run.check(CheckKey::ComP, Mode::Sampled, lex)?;
            run.check(CheckKey::FamilyRefinement, Mode::Sampled, lex)?;
        }
    }
    run.tally("orders with drowning pairs", drowning_orders);
    run.tally("big-stepped draws rejected", gen.rejected);

    let shrinking = EventRelation::from_fn(&space(3), |a, b| a.len() <= b.len())?;
    run.control(
        "a relation preferring smaller events breaks inclusion monotonicity",
        CheckKey::Prop1Conclusion,
        Instance::relation(&shrinking),
        Expectation::Violated,
    )?;
    run.control(
        "uniform probability on 3 states breaks closeness on disjoint events",
        CheckKey::Prop2Conclusion,
        Instance::relation(&uniform_relation(3)?),
        Expectation::Violated,
    )?;
    if let Some(levels) = first_drowning {
        run.control(
            "drowning: discrimax strictly separates equally possible events",
            CheckKey::Prop3Converse,
            Instance::Levels { levels },
            Expectation::Violated,
        )?;
    } else {
        run.control(
            "drowning at (2, 2, 1)",
            CheckKey::Prop3Converse,
            Instance::Levels {
                levels: vec![2, 2, 1],
            },
            Expectation::Violated,
        )?;
    }
    let not_big_stepped = Instance::LevelsAndProbability {
        levels: vec![3, 2, 1],
        weights: weights(&[(1, 2), (3, 10), (1, 5)]),
    };
    run.control(
        "p = (1/2, 3/10, 1/5) is not refined by discrimax",
        CheckKey::Prop4Implication,
        not_big_stepped.clone(),
        Expectation::Violated,
    )?;
    run.control(
        "p = (1/2, 3/10, 1/5) ties a strictly more possible event",
        CheckKey::Prop5Implication,
        not_big_stepped,
        Expectation::Violated,
    )?;
    run.control(
        "a relation preferring smaller events has no basic relation",
        CheckKey::Prop6Conclusion,
        Instance::relation(&shrinking),
        Expectation::Violated,
    )?;
    run.control(
        "uniform probability fails COM_P for a linear partition",
        CheckKey::ComPConclusion,
        Instance::LevelsAndProbability {
            levels: vec![3, 2, 1],
            weights: weights(&[(1, 3), (1, 3), (1, 3)]),
        },
        Expectation::Violated,
    )?;
    Ok(run.report)
}

/// Levels reproducing `partition`'s block order (first block highest).
fn partition_levels(partition: &Partition) -> Vec<u32> {
    let k = partition.len() as u32;
    partition
        .block_of_states()
        .into_iter()
        .map(|b| k - b as u32)
        .collect()
}

/// All suites at their default sizes, for the full acceptance run.
pub fn default_options(id: TheoremId) -> VerifyOptions {
    match id {
        TheoremId::One | TheoremId::Three | TheoremId::Six => VerifyOptions::exhaustive(3),
        TheoremId::Two | TheoremId::Four | TheoremId::Five | TheoremId::Props => {
            VerifyOptions::exhaustive(4)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("6".parse::<TheoremId>().unwrap(), TheoremId::Six);
        assert_eq!("PROPS".parse::<TheoremId>().unwrap(), TheoremId::Props);
        assert!("7".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_suites_pass_with_controls_caught() {
        for id in [
            TheoremId::Two,
            TheoremId::Three,
            TheoremId::Four,
            TheoremId::Five,
            TheoremId::Props,
        ] {
            let report = verify(id, &VerifyOptions::exhaustive(2)).unwrap();
            assert!(report.passed(), "{}", report.render_text());
            assert!(!report.controls.is_empty());
        }
    }

    #[test]
    fn sampled_reports_are_reproducible() {
        let opts = VerifyOptions::sampled(4, 20, 11);
        let a = verify(TheoremId::Six, &opts).unwrap();
        let b = verify(TheoremId::Six, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.seed, Some(11));
    }

    #[test]
    fn one_state_is_forced() {
        for id in [
            TheoremId::One,
            TheoremId::Three,
            TheoremId::Four,
            TheoremId::Six,
        ] {
            let report = verify(id, &VerifyOptions::exhaustive(1)).unwrap();
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn partition_levels_round_trip() {
        let s = space(3);
        let p = Partition::from_levels(s.clone(), &[1, 2, 1]).unwrap();
        assert_eq!(Partition::from_levels(s, &partition_levels(&p)).unwrap(), p);
    }
}
