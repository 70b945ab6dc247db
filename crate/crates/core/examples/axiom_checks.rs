//! Checks every axiom on the relations induced by one distribution and
//! replays each witness.
//!
//! cargo run --example axiom_checks

use omconf::axioms::{self, Axiom, CpomReading};
use omconf::{induce, PossibilityDistribution, ProbabilityDistribution, Rational, StateSpace};

fn main() -> omconf::Result<()> {
    let space = StateSpace::new(["a", "b", "c", "d"])?;
    let pi = PossibilityDistribution::new(space.clone(), vec![2, 2, 1, 0])?;
    let p = ProbabilityDistribution::new(
        space.clone(),
        [(2, 5), (3, 10), (1, 5), (1, 10)]
            .iter()
            .map(|&(n, d)| Rational::new(n, d))
            .collect::<omconf::Result<_>>()?,
    )?;
    let relations = [
        ("possibility", induce::possibility(&pi)?),
        ("necessity", induce::necessity(&pi)?),
        ("discrimax", induce::discrimax(&pi)?),
        ("probability", induce::probability(&p)?),
    ];
    let list = [
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
    ];
    for (name, rel) in &relations {
        println!("{name}");
        for axiom in list {
            let verdict = axioms::check(rel, axiom, None)?;
            match &verdict.witness {
                None if verdict.pass => println!("  {axiom}: pass"),
                None => println!("  {axiom}: fail (no basic relation)"),
                Some(w) => {
                    let events: Vec<String> =
                        w.events.iter().map(|&e| space.format_event(e)).collect();
                    let replayed = axioms::replay(rel, w, None);
                    println!(
                        "  {axiom}: fail at {} {:?}, replays: {replayed}",
                        w.axiom, events
                    );
                }
            }
        }
        let class = axioms::classify(rel, None, CpomReading::Verdict)?;
        println!(
            "  comparative possibility: {}, comparative probability: {}, big-stepped representable: {}\n",
            class.comparative_possibility, class.comparative_probability, class.big_stepped_representable
        );
    }
    Ok(())
}
