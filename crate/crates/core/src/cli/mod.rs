//! The `omconf` command line.
//!
//! Exit codes: 0 when the command succeeds and every verdict passes, 1 when
//! an axiom fails, a relation is not representable or a theorem suite finds
//! a counterexample, 2 on usage, parse and input errors.

pub mod files;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::axioms::{self, Axiom, CpomReading};
use crate::basic::BasicRelation;
use crate::construct::{self, Representation};
use crate::error::Error;
use crate::induce;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::relation::EventRelation;
use crate::verify::{self, Mode, TheoremId, VerifyOptions};

pub use files::{
    parse_distribution, parse_relation, render_relation, DistributionFile, FileError, RelationFile,
};
pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "omconf",
    version,
    about = "Order-of-magnitude confidence relations over finite state spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Possibility,
    Necessity,
    Probability,
    Discrimax,
    Leximax,
    Lifted,
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    BigStepped,
    Possibility,
    Lexicographic,
    Represent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AxiomArg {
    One(Axiom),
    All,
}

fn parse_axiom(s: &str) -> Result<AxiomArg, String> {
    if s.eq_ignore_ascii_case("all") {
        Ok(AxiomArg::All)
    } else {
        s.parse().map(AxiomArg::One)
    }
}

#[derive(Debug, clap::Args)]
struct Output {
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, clap::Args)]
struct Source {
    /// Relation file (JSON envelope).
    #[arg(long)]
    rel: Option<PathBuf>,
    /// Distribution file; with --kind it supplies the relation, otherwise
    /// only its partition is used.
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Induce an event relation from a distribution file.
    Induce {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        output: Output,
    },
    /// Check one axiom, or ALL of them, with witnesses on failure.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_axiom)]
        axiom: AxiomArg,
        #[arg(long, default_value = "verdict")]
        cpom_reading: CpomReading,
        #[command(flatten)]
        output: Output,
    },
    /// Report every class a relation belongs to.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "verdict")]
        cpom_reading: CpomReading,
        #[command(flatten)]
        output: Output,
    },
    /// Compare two events, given as comma-separated state names.
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        output: Output,
    },
    /// Build a distribution: big-stepped, possibility or lexicographic from
    /// an order or distribution file, or a big-stepped representation of a
    /// relation file.
    Construct {
        #[arg(value_enum)]
        target: Target,
        /// Order string such as "a > b = c > d".
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long)]
        rel: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a theorem suite.
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "exhaustive")]
        mode: Mode,
        /// Random instances; defaults to 1000 in sampled mode, 0 otherwise.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "verdict")]
        cpom_reading: CpomReading,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    File { path: String, source: FileError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: the document to emit and its exit code.
struct Outcome {
    document: String,
    code: i32,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_distribution(path: &Path) -> CliResult<DistributionFile> {
    parse_distribution(&read(path)?).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

fn load_relation(path: &Path) -> CliResult<EventRelation> {
    parse_relation(&read(path)?).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Possibility => "possibility",
        Kind::Necessity => "necessity",
        Kind::Probability => "probability",
        Kind::Discrimax => "discrimax",
        Kind::Leximax => "leximax",
        Kind::Lifted => "lifted",
        Kind::Lexicographic => "lexicographic",
    }
}

fn need<'a, T>(value: Option<&'a T>, what: &str, kind: Kind) -> CliResult<&'a T> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "--kind {} needs a `{what}` directive",
            kind_name(kind)
        ))
    })
}

fn induce_from(file: &DistributionFile, kind: Kind) -> CliResult<EventRelation> {
    let rel = match kind {
        Kind::Possibility => induce::possibility(need(file.possibility.as_ref(), "poss", kind)?)?,
        Kind::Necessity => induce::necessity(need(file.possibility.as_ref(), "poss", kind)?)?,
        Kind::Discrimax => induce::discrimax(need(file.possibility.as_ref(), "poss", kind)?)?,
        Kind::Probability => induce::probability(need(file.probability.as_ref(), "prob", kind)?)?,
        Kind::Leximax => match (&file.possibility, &file.probability) {
            (Some(pi), _) => induce::leximax(pi)?,
            (None, Some(p)) => induce::leximax(p)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "--kind leximax needs `poss` or `prob`".into(),
                ))
            }
        },
        Kind::Lifted => {
            let pi = need(file.possibility.as_ref(), "poss", kind)?;
            let basic = BasicRelation::from_levels(file.space.clone(), pi.levels())?;
            induce::simply_generate(&basic)?
        }
        Kind::Lexicographic => {
            let partition = need(file.partition.as_ref(), "partition", kind)?;
            induce::lexicographic(partition, &in_block_weights(file))?.1
        }
    };
    Ok(rel)
}

/// In-block weights for lexicographic scaling: the `prob` weights when given,
/// otherwise 1 for every state.
fn in_block_weights(file: &DistributionFile) -> Vec<Rational> {
    match &file.probability {
        Some(p) => p.weights().to_vec(),
        None => vec![Rational::one(); file.space.len()],
    }
}

/// The relation a command operates on, plus the partition (if any) and a
/// description for the report inputs.
fn resolve(source: &Source, report: &mut Report) -> CliResult<(EventRelation, Option<Partition>)> {
    let dist = source.dist.as_deref().map(load_distribution).transpose()?;
    if let Some(path) = &source.dist {
        report.input("dist", path.display().to_string());
    }
    let rel = match (&source.rel, source.kind) {
        (Some(path), None) => {
            report.input("rel", path.display().to_string());
            load_relation(path)?
        }
        (None, Some(kind)) => {
            report.input("kind", kind_name(kind));
            let file = dist
                .as_ref()
                .ok_or_else(|| CliError::Usage("--kind needs --dist".into()))?;
            induce_from(file, kind)?
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --rel or --kind, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("give --rel, or --dist with --kind".into())),
    };
    let partition = dist.and_then(|d| d.partition);
    if let Some(p) = &partition {
        if p.space() != rel.space() {
            return Err(CliError::Usage(
                "the partition's states differ from the relation's".into(),
            ));
        }
    }
    Ok((rel, partition))
}

fn finish(report: Report, text: String, format: Format) -> Outcome {
    let code = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let document = match format {
        Format::Text => text,
        Format::Report => report.to_json(),
    };
    Outcome { document, code }
}

fn cmd_induce(dist: &Path, kind: Kind, format: Format) -> CliResult<Outcome> {
    let file = load_distribution(dist)?;
    let rel = induce_from(&file, kind)?;
    let mut report = Report::new("induce");
    report.input("dist", dist.display().to_string());
    report.input("kind", kind_name(kind));
    let rendered = render_relation(&rel);
    report.output =
        Some(serde_json::to_value(RelationFile::from_relation(&rel)).expect("serializable"));
    Ok(finish(report, rendered, format))
}

fn axioms_for(arg: AxiomArg, reading: CpomReading, partition: Option<&Partition>) -> Vec<Axiom> {
    let cpom = match reading {
        CpomReading::Verdict => Axiom::Cpom,
        CpomReading::Strict => Axiom::CpomStrict,
    };
    match arg {
        AxiomArg::One(Axiom::Cpom) => vec![cpom],
        AxiomArg::One(a) => vec![a],
        AxiomArg::All => {
            let mut all = vec![
                Axiom::Def1,
                Axiom::Add,
                Axiom::Neg,
                Axiom::Clo,
                Axiom::Ccs,
                Axiom::Qual,
                Axiom::Om,
                Axiom::Com,
                cpom,
            ];
            if partition.is_some() {
                all.push(Axiom::ComP);
            }
            all
        }
    }
}

fn cmd_check(
    source: &Source,
    axiom: AxiomArg,
    reading: CpomReading,
    format: Format,
) -> CliResult<Outcome> {
    let mut report = Report::new("check");
    let (rel, partition) = resolve(source, &mut report)?;
    report.input("cpom_reading", format!("{reading:?}").to_lowercase());
    let mut text = String::new();
    for a in axioms_for(axiom, reading, partition.as_ref()) {
        let verdict = axioms::check(&rel, a, partition.as_ref())?;
        let before = report.witnesses.len();
        report.axiom(&verdict, rel.space());
        let status = if verdict.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{}: {status}\n", a.name()));
        for w in &report.witnesses[before..] {
            text.push_str(&format!("  {}\n", w.render()));
        }
        if !verdict.pass && verdict.witness.is_none() {
            text.push_str("  singleton restriction is not a basic relation\n");
        }
    }
    report.input(
        "axiom",
        match axiom {
            AxiomArg::All => "ALL".to_string(),
            AxiomArg::One(a) => a.name().to_string(),
        },
    );
    Ok(finish(report, text, format))
}

fn cmd_classify(source: &Source, reading: CpomReading, format: Format) -> CliResult<Outcome> {
    let mut report = Report::new("classify");
    let (rel, partition) = resolve(source, &mut report)?;
    report.input("cpom_reading", format!("{reading:?}").to_lowercase());
    let class = axioms::classify(&rel, partition.as_ref(), reading)?;
    let value = serde_json::to_value(&class).expect("serializable");
    let mut text = String::new();
    if let serde_json::Value::Object(fields) = &value {
        for (name, v) in fields {
            let yes = v.as_bool().unwrap_or(false);
            text.push_str(&format!("{name}: {}\n", if yes { "yes" } else { "no" }));
        }
    }
    report.output = Some(value);
    Ok(finish(report, text, format))
}

fn cmd_compare(source: &Source, a: &str, b: &str, format: Format) -> CliResult<Outcome> {
    let mut report = Report::new("compare");
    let (rel, _) = resolve(source, &mut report)?;
    let space = rel.space().clone();
    let event = |text: &str| {
        files::parse_event(&space, text).map_err(|source| CliError::File {
            path: "event".into(),
            source,
        })
    };
    let (ea, eb) = (event(a)?, event(b)?);
    report.input("a", space.format_event(ea));
    report.input("b", space.format_event(eb));
    let comparison = rel.query(ea, eb);
    report.output = Some(serde_json::to_value(comparison).expect("serializable"));
    let text = format!(
        "{} {comparison} {}\n",
        space.format_event(ea),
        space.format_event(eb)
    );
    Ok(finish(report, text, format))
}

fn order_or_dist(
    order: Option<&str>,
    dist: Option<&Path>,
    report: &mut Report,
) -> CliResult<DistributionFile> {
    match (order, dist) {
        (Some(text), None) => {
            report.input("order", text);
            let (space, order) = construct::parse_order(text)
                .map_err(|e| CliError::Usage(format!("--order: {e}")))?;
            let mut file = DistributionFile::new(space.clone());
            file.possibility = Some(order.to_possibility(&space)?);
            Ok(file)
        }
        (None, Some(path)) => {
            report.input("dist", path.display().to_string());
            load_distribution(path)
        }
        _ => Err(CliError::Usage(
            "give exactly one of --order and --dist".into(),
        )),
    }
}

fn cmd_construct(
    target: Target,
    order: Option<&str>,
    dist: Option<&Path>,
    rel: Option<&Path>,
    format: Format,
) -> CliResult<Outcome> {
    let mut report = Report::new("construct");
    report.input(
        "target",
        target
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default(),
    );
    if target != Target::Represent && rel.is_some() {
        return Err(CliError::Usage(
            "--rel is only used by `construct represent`".into(),
        ));
    }
    let levels_of = |file: &DistributionFile| -> CliResult<Vec<u32>> {
        match (&file.possibility, &file.probability) {
            (Some(pi), _) => Ok(pi.levels().to_vec()),
            (None, Some(p)) => Ok(construct::possibility_from_prob(p).levels().to_vec()),
            (None, None) => Err(CliError::Usage(
                "the distribution file has no `poss` or `prob`".into(),
            )),
        }
    };
    let built = match target {
        Target::BigStepped => {
            let source = order_or_dist(order, dist, &mut report)?;
            let levels = levels_of(&source)?;
            let mut file = DistributionFile::new(source.space.clone());
            file.probability = Some(construct::big_stepped_from_levels(&source.space, &levels)?);
            Some(file)
        }
        Target::Possibility => {
            let source = order_or_dist(order, dist, &mut report)?;
            let levels = levels_of(&source)?;
            let mut file = DistributionFile::new(source.space.clone());
            file.possibility = Some(crate::PossibilityDistribution::new(
                source.space.clone(),
                levels,
            )?);
            Some(file)
        }
        Target::Lexicographic => {
            let source = order_or_dist(order, dist, &mut report)?;
            let partition = match (&source.partition, &source.possibility) {
                (Some(p), _) => p.clone(),
                (None, Some(pi)) => Partition::from_levels(source.space.clone(), pi.levels())?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "lexicographic needs a partition or an order".into(),
                    ))
                }
            };
            let weights = in_block_weights(&source);
            let (p, _) = induce::lexicographic(&partition, &weights)?;
            let mut file = DistributionFile::new(source.space.clone());
            file.probability = Some(p);
            file.partition = Some(partition);
            Some(file)
        }
        Target::Represent => {
            let path =
                rel.ok_or_else(|| CliError::Usage("`construct represent` needs --rel".into()))?;
            if order.is_some() || dist.is_some() {
                return Err(CliError::Usage(
                    "`construct represent` takes only --rel".into(),
                ));
            }
            report.input("rel", path.display().to_string());
            let relation = load_relation(path)?;
            match construct::represent_big_stepped(&relation)? {
                Representation::BigStepped(p) => {
                    let mut file = DistributionFile::new(relation.space().clone());
                    file.probability = Some(p);
                    Some(file)
                }
                Representation::NotRepresentable(verdict) => {
                    report.axiom(&verdict, relation.space());
                    None
                }
                Representation::TheoremCounterexample { candidate, pair } => {
                    let s = relation.space();
                    let detail = format!(
                        "candidate {} disagrees on {} vs {}",
                        files::render_weights(s, candidate.weights()),
                        s.format_event(pair.0),
                        s.format_event(pair.1)
                    );
                    report.verdict("REPRESENTABLE", false, Some(detail));
                    None
                }
            }
        }
    };
    let text = match &built {
        Some(file) => {
            report.verdict("CONSTRUCTED", true, None);
            report.output = Some(serde_json::Value::String(file.to_string()));
            file.to_string()
        }
        None => {
            let mut text = String::from("not representable\n");
            for v in report.verdicts.iter().filter(|v| !v.pass) {
                text.push_str(&format!("{}: FAIL", v.name));
                if let Some(d) = &v.detail {
                    text.push_str(&format!(" ({d})"));
                }
                text.push('\n');
            }
            for w in &report.witnesses {
                text.push_str(&format!("  {}\n", w.render()));
            }
            text
        }
    };
    Ok(finish(report, text, format))
}

struct VerifyArgs {
    theorem: TheoremId,
    n: Option<usize>,
    mode: Mode,
    samples: Option<u64>,
    seed: u64,
    reading: CpomReading,
}

fn cmd_verify(args: &VerifyArgs, format: Format, err: &mut dyn Write) -> CliResult<Outcome> {
    let defaults = verify::theorems::default_options(args.theorem);
    let opts = VerifyOptions {
        n: args.n.unwrap_or(defaults.n),
        mode: args.mode,
        samples: args
            .samples
            .unwrap_or(if args.mode == Mode::Sampled { 1000 } else { 0 }),
        seed: args.seed,
        cpom_reading: args.reading,
    };
    let theorem = verify::verify(args.theorem, &opts)?;
    let _ = writeln!(err, "elapsed: {:.2?}", theorem.elapsed);
    let mut report = Report::new("verify");
    report.input("theorem", args.theorem.label());
    report.input("n", opts.n.to_string());
    report.input("mode", opts.mode.to_string());
    report.input("samples", opts.samples.to_string());
    report.input(
        "cpom_reading",
        format!("{:?}", opts.cpom_reading).to_lowercase(),
    );
    report.seed = Some(opts.seed);
    for c in &theorem.checks {
        let detail = format!(
            "{} evaluated, {} qualifying, {} failed",
            c.evaluated, c.qualifying, c.failures
        );
        report.verdict(
            format!("{} [{}]", c.check, c.mode),
            c.failures == 0,
            Some(detail),
        );
    }
    for c in &theorem.controls {
        report.verdict(format!("control: {}", c.label), c.caught, c.detail.clone());
    }
    let text = theorem.render_text();
    report.output = Some(serde_json::to_value(&theorem).expect("serializable"));
    let mut outcome = finish(report, text, format);
    if !theorem.passed() {
        outcome.code = EXIT_FAIL;
    }
    Ok(outcome)
}

fn dispatch(cli: Cli, err: &mut dyn Write) -> CliResult<(Outcome, Option<PathBuf>)> {
    Ok(match cli.command {
        Command::Induce { dist, kind, output } => {
            (cmd_induce(&dist, kind, output.format)?, output.out)
        }
        Command::Check {
            source,
            axiom,
            cpom_reading,
            output,
        } => (
            cmd_check(&source, axiom, cpom_reading, output.format)?,
            output.out,
        ),
        Command::Classify {
            source,
            cpom_reading,
            output,
        } => (
            cmd_classify(&source, cpom_reading, output.format)?,
            output.out,
        ),
        Command::Compare {
            source,
            a,
            b,
            output,
        } => (cmd_compare(&source, &a, &b, output.format)?, output.out),
        Command::Construct {
            target,
            order,
            dist,
            rel,
            output,
        } => (
            cmd_construct(
                target,
                order.as_deref(),
                dist.as_deref(),
                rel.as_deref(),
                output.format,
            )?,
            output.out,
        ),
        Command::Verify {
            theorem,
            n,
            mode,
            samples,
            seed,
            cpom_reading,
            output,
        } => {
            let args = VerifyArgs {
                theorem,
                n,
                mode,
                samples,
                seed,
                reading: cpom_reading,
            };
            (cmd_verify(&args, output.format, err)?, output.out)
        }
    })
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, err) {
        Ok((outcome, path)) => {
            let written = match &path {
                Some(p) => std::fs::write(p, &outcome.document)
                    .map_err(|e| format!("{}: {e}", p.display())),
                None => out
                    .write_all(outcome.document.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
