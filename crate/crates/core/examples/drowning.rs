//! Possibility orderings drown events that share their most plausible
//! state; discrimax and leximax separate them.
//!
//! cargo run --example drowning

use omconf::{induce, PossibilityDistribution, StateSpace};

fn main() -> omconf::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let pi = PossibilityDistribution::new(space.clone(), vec![3, 2, 1])?;
    let relations = [
        ("possibility", induce::possibility(&pi)?),
        ("necessity", induce::necessity(&pi)?),
        ("discrimax", induce::discrimax(&pi)?),
        ("leximax", induce::leximax(&pi)?),
    ];
    let pairs: [(&[&str], &[&str]); 3] = [
        (&["a", "b"], &["a", "c"]),
        (&["a", "c"], &["a"]),
        (&["b", "c"], &["b"]),
    ];
    for (a, b) in pairs {
        let (ea, eb) = (
            space.event(a.iter().copied())?,
            space.event(b.iter().copied())?,
        );
        for (name, rel) in &relations {
            println!(
                "{:>11}: {} {} {}",
                name,
                space.format_event(ea),
                rel.query(ea, eb),
                space.format_event(eb)
            );
        }
        println!();
    }
    Ok(())
}
