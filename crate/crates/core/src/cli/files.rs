//! The two on-disk formats: line-oriented distribution files and JSON
//! relation envelopes.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::distribution::{PossibilityDistribution, ProbabilityDistribution};
use crate::error::Error;
use crate::event::{Event, StateSpace};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::relation::EventRelation;

/// Parse failures with the stable codes scripts match on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("PARSE_ERROR at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("UNKNOWN_STATE at line {line}: `{token}`")]
    UnknownState { line: usize, token: String },
    #[error("DUPLICATE_ASSIGNMENT at line {line}: `{state}` is assigned twice")]
    DuplicateAssignment { line: usize, state: String },
    #[error("WEIGHTS_NOT_NORMALIZED: weights sum to {sum}, deficit {deficit}")]
    WeightsNotNormalized {
        sum: Box<Rational>,
        deficit: Box<Rational>,
    },
    #[error("BAD_PARTITION at line {line}: {message}")]
    BadPartition { line: usize, message: String },
}

impl FileError {
    pub fn code(&self) -> &'static str {
        match self {
            FileError::Parse { .. } => "PARSE_ERROR",
            FileError::UnknownState { .. } => "UNKNOWN_STATE",
            FileError::DuplicateAssignment { .. } => "DUPLICATE_ASSIGNMENT",
            FileError::WeightsNotNormalized { .. } => "WEIGHTS_NOT_NORMALIZED",
            FileError::BadPartition { .. } => "BAD_PARTITION",
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> FileError {
    FileError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionFile {
    pub space: StateSpace,
    pub possibility: Option<PossibilityDistribution>,
    pub probability: Option<ProbabilityDistribution>,
    pub partition: Option<Partition>,
}

impl DistributionFile {
    pub fn new(space: StateSpace) -> Self {
        DistributionFile {
            space,
            possibility: None,
            probability: None,
            partition: None,
        }
    }
}

/// Reads `name=value` tokens into per-state slots.
fn assign<T>(
    space: &StateSpace,
    line: usize,
    tokens: &[&str],
    slots: &mut [Option<T>],
    parse: impl Fn(&str) -> Option<T>,
) -> Result<(), FileError> {
    if tokens.is_empty() {
        return Err(parse_err(line, "expected at least one name=value"));
    }
    for token in tokens {
        let (name, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected name=value, got `{token}`")))?;
        let state = space.index_of(name).map_err(|_| FileError::UnknownState {
            line,
            token: name.to_string(),
        })?;
        let value = parse(value).ok_or_else(|| parse_err(line, format!("bad value `{value}`")))?;
        if slots[state].is_some() {
            return Err(FileError::DuplicateAssignment {
                line,
                state: name.to_string(),
            });
        }
        slots[state] = Some(value);
    }
    Ok(())
}

fn parse_partition(space: &StateSpace, line: usize, rest: &str) -> Result<Partition, FileError> {
    let bad = |message: String| FileError::BadPartition { line, message };
    let mut blocks = Vec::new();
    for (i, group) in rest.split('|').enumerate() {
        let mut states = Vec::new();
        for name in group.split_whitespace() {
            let s = space.index_of(name).map_err(|_| FileError::UnknownState {
                line,
                token: name.to_string(),
            })?;
            states.push(s);
        }
        if states.is_empty() {
            return Err(bad(format!("block {} is empty", i + 1)));
        }
        blocks.push(Event::from_states(space.len(), states).map_err(|e| bad(e.to_string()))?);
    }
    Partition::new(space.clone(), blocks).map_err(|e| match e {
        Error::OverlappingBlocks(s) => bad(format!(
            "`{}` appears in more than one block",
            space.name(s)
        )),
        Error::UncoveredState(s) => bad(format!("`{}` is not covered", space.name(s))),
        other => bad(other.to_string()),
    })
}

/// Parses the line format. Unassigned states get level 0 / weight 0.
pub fn parse_distribution(text: &str) -> Result<DistributionFile, FileError> {
    let mut space: Option<StateSpace> = None;
    let mut levels: Option<Vec<Option<u32>>> = None;
    let mut weights: Option<Vec<Option<Rational>>> = None;
    let mut weights_line = 0;
    let mut partition: Option<Partition> = None;
    let mut poss_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if directive == "states" {
            if space.is_some() {
                return Err(parse_err(line, "`states` given twice"));
            }
            let s = StateSpace::new(tokens.iter().copied())
                .map_err(|e| parse_err(line, e.to_string()))?;
            space = Some(s);
            continue;
        }
        let Some(space) = space.as_ref() else {
            return Err(parse_err(line, "the first directive must be `states`"));
        };
        let n = space.len();
        match directive {
            "poss" => {
                let slots = levels.get_or_insert_with(|| vec![None; n]);
                poss_line = line;
                assign(space, line, &tokens, slots, |v| v.parse::<u32>().ok())?;
            }
            "prob" => {
                let slots = weights.get_or_insert_with(|| vec![None; n]);
                weights_line = line;
                assign(space, line, &tokens, slots, |v| v.parse::<Rational>().ok())?;
            }
            "partition" => {
                if partition.is_some() {
                    return Err(parse_err(line, "`partition` given twice"));
                }
                partition = Some(parse_partition(space, line, rest)?);
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let space = space.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `states`"))?;
    let mut file = DistributionFile::new(space.clone());
    if let Some(levels) = levels {
        let levels = levels.into_iter().map(|l| l.unwrap_or(0)).collect();
        let pi = PossibilityDistribution::new(space.clone(), levels)
            .map_err(|e| parse_err(poss_line, e.to_string()))?;
        file.possibility = Some(pi);
    }
    if let Some(weights) = weights {
        let weights = weights
            .into_iter()
            .map(|w| w.unwrap_or_else(Rational::zero))
            .collect();
        let p = ProbabilityDistribution::new(space.clone(), weights).map_err(|e| match e {
            Error::NotNormalized { sum, deficit } => {
                FileError::WeightsNotNormalized { sum, deficit }
            }
            other => parse_err(weights_line, other.to_string()),
        })?;
        file.probability = Some(p);
    }
    file.partition = partition;
    Ok(file)
}

impl fmt::Display for DistributionFile {
    /// Canonical rendering; [`parse_distribution`] reads it back unchanged.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.space.names();
        writeln!(f, "states {}", names.join(" "))?;
        if let Some(pi) = &self.possibility {
            let parts: Vec<String> = names
                .iter()
                .zip(pi.levels())
                .map(|(n, l)| format!("{n}={l}"))
                .collect();
            writeln!(f, "poss {}", parts.join(" "))?;
        }
        if let Some(p) = &self.probability {
            let parts: Vec<String> = names
                .iter()
                .zip(p.weights())
                .map(|(n, w)| format!("{n}={w}"))
                .collect();
            writeln!(f, "prob {}", parts.join(" "))?;
        }
        if let Some(partition) = &self.partition {
            let blocks: Vec<String> = partition
                .blocks()
                .iter()
                .map(|b| {
                    b.states()
                        .map(|s| names[s].as_str())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            writeln!(f, "partition {}", blocks.join(" | "))?;
        }
        Ok(())
    }
}

/// JSON envelope of a relation: row A, column B is 1 iff A ⪰ B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub n: usize,
    pub states: Vec<String>,
    pub geq: Vec<String>,
}

impl RelationFile {
    pub fn from_relation(rel: &EventRelation) -> Self {
        RelationFile {
            n: rel.n(),
            states: rel.space().names().to_vec(),
            geq: rel.to_rows(),
        }
    }

    pub fn to_relation(&self) -> Result<EventRelation, FileError> {
        let invalid = |message: String| parse_err(1, message);
        if self.states.len() != self.n {
            return Err(invalid(format!(
                "n = {} but {} state names",
                self.n,
                self.states.len()
            )));
        }
        let space = StateSpace::new(self.states.iter()).map_err(|e| invalid(e.to_string()))?;
        let mut rows = Vec::with_capacity(self.geq.len());
        for (i, row) in self.geq.iter().enumerate() {
            let bits = row
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(invalid(format!("row {i} has character `{other}`"))),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            rows.push(bits);
        }
        EventRelation::from_rows(&space, &rows).map_err(|e| invalid(e.to_string()))
    }

    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("relation files serialize");
        out.push('\n');
        out
    }
}

pub fn parse_relation(text: &str) -> Result<EventRelation, FileError> {
    let file: RelationFile =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    file.to_relation()
}

pub fn render_relation(rel: &EventRelation) -> String {
    RelationFile::from_relation(rel).render()
}

/// Comma-separated state names; empty text is the empty event.
pub fn parse_event(space: &StateSpace, text: &str) -> Result<Event, FileError> {
    let mut states = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let s = space.index_of(name).map_err(|_| FileError::UnknownState {
            line: 0,
            token: name.to_string(),
        })?;
        states.push(s);
    }
    Event::from_states(space.len(), states).map_err(|e| parse_err(0, e.to_string()))
}

/// Used by the text renderers for `name=value` listings.
pub fn render_weights(space: &StateSpace, weights: &[Rational]) -> String {
    let mut out = String::new();
    for (i, w) in weights.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}={}", space.name(i), w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_levels() {
        let f = parse_distribution("states a b c\nposs a=3 b=2 c=1").unwrap();
        assert_eq!(f.possibility.unwrap().levels(), &[3, 2, 1]);
        assert!(f.probability.is_none());
    }

    #[test]
    fn reports_the_exact_deficit() {
        let err = parse_distribution("states a b\nprob a=1/2 b=1/3").unwrap_err();
        assert_eq!(
            err,
            FileError::WeightsNotNormalized {
                sum: Box::new(Rational::new(5, 6).unwrap()),
                deficit: Box::new(Rational::new(1, 6).unwrap()),
            }
        );
    }

    #[test]
    fn unknown_state_names_the_token() {
        let err = parse_distribution("states a b\nposs a=1 c=1").unwrap_err();
        assert_eq!(
            err,
            FileError::UnknownState {
                line: 2,
                token: "c".into()
            }
        );
    }

    #[test]
    fn duplicate_and_partition_errors() {
        let dup = parse_distribution("states a b\nposs a=1\nposs a=2").unwrap_err();
        assert_eq!(dup.code(), "DUPLICATE_ASSIGNMENT");
        let overlap = parse_distribution("states a b\npartition a | a b").unwrap_err();
        assert_eq!(overlap.code(), "BAD_PARTITION");
        let uncovered = parse_distribution("states a b\npartition a").unwrap_err();
        assert_eq!(uncovered.code(), "BAD_PARTITION");
        let empty = parse_distribution("states a b\npartition a | | b").unwrap_err();
        assert_eq!(empty.code(), "BAD_PARTITION");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_distribution("# header\nposs a=1").unwrap_err();
        assert_eq!(err, parse_err(2, "the first directive must be `states`"));
        let err = parse_distribution("states a\nposs a=x").unwrap_err();
        assert!(matches!(err, FileError::Parse { line: 2, .. }));
        let err = parse_distribution("states a\nweights a=1").unwrap_err();
        assert!(matches!(err, FileError::Parse { line: 2, .. }));
    }

    #[test]
    fn distribution_round_trip() {
        let text = "states a b c\nposs a=3 b=0 c=1\nprob a=6/11 b=2/11 c=3/11\npartition a | b c\n";
        let f = parse_distribution(text).unwrap();
        assert_eq!(f.to_string(), text);
        assert_eq!(parse_distribution(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn relation_round_trip_and_validation() {
        let space = StateSpace::alphabetic(2).unwrap();
        let rel = EventRelation::from_fn(&space, |a, b| a.len() >= b.len()).unwrap();
        let text = render_relation(&rel);
        assert_eq!(parse_relation(&text).unwrap(), rel);
        let short = r#"{"n": 2, "states": ["a", "b"], "geq": ["1111"]}"#;
        assert_eq!(parse_relation(short).unwrap_err().code(), "PARSE_ERROR");
        let junk = r#"{"n": 1, "states": ["a"], "geq": ["1x", "11"]}"#;
        assert_eq!(parse_relation(junk).unwrap_err().code(), "PARSE_ERROR");
    }

    #[test]
    fn events_from_names() {
        let space = StateSpace::alphabetic(3).unwrap();
        assert_eq!(parse_event(&space, "").unwrap(), space.empty());
        assert_eq!(
            parse_event(&space, "a, c").unwrap(),
            space.event(["a", "c"]).unwrap()
        );
        assert_eq!(
            parse_event(&space, "d").unwrap_err().code(),
            "UNKNOWN_STATE"
        );
    }
}
