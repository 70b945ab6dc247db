//! Big-stepped probabilities: construction from an order, agreement with
//! leximax, and recovery from the induced relation.
//!
//! cargo run --example big_stepped [-- "a > b = c > d"]

use omconf::construct::{self, Representation};
use omconf::induce;

fn main() -> omconf::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "a > b = c > d".to_string());
    let (space, order) = construct::parse_order(&text).expect("an order such as a > b = c > d");
    let p = construct::big_stepped_from_order(&space, &order)?;
    println!("order: {}", order.render(&space));
    for (s, w) in p.weights().iter().enumerate() {
        println!("  p({}) = {w}", space.name(s));
    }
    println!("big-stepped: {}", construct::check_big_stepped(&p).pass);

    let prob = induce::probability(&p)?;
    let lex = induce::leximax(&order.to_possibility(&space)?)?;
    println!(
        "disagreements with leximax: {}",
        prob.count_disagreements(&lex)
    );

    match construct::represent_big_stepped(&prob)? {
        Representation::BigStepped(q) => println!("recovered from the relation: {}", q == p),
        other => println!("not recovered: {other:?}"),
    }
    Ok(())
}
