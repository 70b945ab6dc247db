//! The distribution and relation file formats used by the `omconf` binary.
//!
//! cargo run --example file_formats

use omconf::cli::{parse_distribution, parse_relation, render_relation};
use omconf::induce;

fn main() {
    let text = "# weather\nstates sun rain snow\nposs sun=2 rain=2 snow=1\nprob sun=1/2 rain=1/3 snow=1/6\npartition sun rain | snow\n";
    let file = parse_distribution(text).expect("valid file");
    print!("{file}");

    let rel =
        induce::discrimax(file.possibility.as_ref().expect("poss given")).expect("small space");
    let json = render_relation(&rel);
    println!("{json}");
    assert_eq!(parse_relation(&json).expect("round trip"), rel);

    for bad in [
        "states a b\nprob a=1/2 b=1/3",
        "states a b\nposs a=1 c=1",
        "states a b\nposs a=1 a=2",
        "states a b c\npartition a | b",
        "poss a=1",
    ] {
        println!("{:?}\n  -> {}", bad, parse_distribution(bad).unwrap_err());
    }
}
