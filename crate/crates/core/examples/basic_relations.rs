//! Basic relations on states, simple generation, and the search for every
//! OM-relation consistent with a basic relation.
//!
//! cargo run --release --example basic_relations

use omconf::basic::{BasicRelation, Node};
use omconf::verify::enumerate;
use omconf::verify::search;
use omconf::{induce, StateSpace};

fn main() -> omconf::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let linear = BasicRelation::from_levels(space.clone(), &[3, 2, 1])?;
    let generated = induce::simply_generate(&linear)?;
    let found = search::consistent_om_relations(&linear)?;
    println!(
        "linear a > b > c: {} consistent OM-relation(s), simply generated: {}",
        found.len(),
        found == [generated]
    );

    let mut tally = [0usize; 3];
    let all = enumerate::complete_basic_relations(&space)?;
    for basic in &all {
        let count = search::consistent_om_relations(basic)?.len();
        tally[count.min(2)] += 1;
        if count == 0 && tally[0] == 1 {
            println!("first basic relation with none: {basic:?}");
            for s in 0..3 {
                println!(
                    "  {} ~ bottom: {}",
                    space.name(s),
                    basic.equiv(Node::State(s), Node::Bottom)
                );
            }
        }
    }
    println!(
        "{} complete basic relations: {} with none, {} with one, {} with several",
        all.len(),
        tally[0],
        tally[1],
        tally[2]
    );
    Ok(())
}
