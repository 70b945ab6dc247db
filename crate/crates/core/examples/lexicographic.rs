//! Lexicographic probabilities: each block of an ordered partition
//! outweighs everything after it, and the induced relation respects the
//! partition's order of magnitude.
//!
//! cargo run --example lexicographic

use omconf::axioms;
use omconf::construct;
use omconf::{induce, Partition, Rational, StateSpace};

fn main() -> omconf::Result<()> {
    let space = StateSpace::new(["a", "b", "c", "d", "e"])?;
    let blocks = vec![
        space.event(["a", "b"])?,
        space.event(["c"])?,
        space.event(["d", "e"])?,
    ];
    let partition = Partition::new(space.clone(), blocks)?;
    let weights: Vec<Rational> = [3, 1, 1, 2, 1]
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let (p, rel) = induce::lexicographic(&partition, &weights)?;
    for (s, w) in p.weights().iter().enumerate() {
        println!("p({}) = {w}", space.name(s));
    }
    println!(
        "block dominance: {}",
        construct::satisfies_lexicographic_condition(&p, &partition)
    );
    println!("COM_P: {}", axioms::check_com_p(&rel, &partition)?.pass);

    let ranked = induce::om_partition(&partition)?;
    let (ad, bc) = (space.event(["a", "d"])?, space.event(["b", "c"])?);
    println!(
        "{} vs {}: probability {}, partition rank {}",
        space.format_event(ad),
        space.format_event(bc),
        rel.query(ad, bc),
        ranked.query(ad, bc)
    );
    Ok(())
}
