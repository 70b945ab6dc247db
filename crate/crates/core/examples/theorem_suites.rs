//! Runs every theorem suite at its default size and prints the reports.
//!
//! cargo run --release --example theorem_suites [-- 6]

use omconf::verify::{theorems, verify, TheoremId};

fn main() -> omconf::Result<()> {
    let only: Option<TheoremId> = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("1..6 or props"));
    for id in TheoremId::ALL {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let report = verify(id, &theorems::default_options(id))?;
        print!("{}", report.render_text());
        println!("elapsed: {:.2?}\n", report.elapsed);
    }
    Ok(())
}
