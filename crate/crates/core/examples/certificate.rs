//! Build the telescoping certificate and check it against the family.
//!
//! ```text
//! cargo run --example certificate -- 4
//! ```

use pliable::certificate::{build_certificate, verify_certificate};
use pliable::{construct_family, Config, TieBreak};

fn main() {
    let k: u32 = std::env::args().nth(1).map_or(4, |a| a.parse().expect("k must be an integer"));
    let c = build_certificate(k).expect("k >= 3");
    for (i, (a, b)) in c.pairs().into_iter().enumerate() {
        println!("{}. g({a}) + g({b}) - g({}) - g({}) >= 0", i + 1, a - b, b - a);
    }
    let sum: Vec<String> = c
        .summed
        .terms()
        .iter()
        .map(|(coef, s)| format!("{} g({s})", if *coef > 0 { "+" } else { "-" }))
        .collect();
    println!("sum: {} >= 0", sum.join(" "));
    match construct_family(k, TieBreak::LexMin, &Config::default()) {
        Ok(f) => {
            let r = verify_certificate(&f, &c).expect("same k");
            println!("against the constructed family: {}", if r.ok { "verified" } else { "rejected" });
            for w in &r.witnesses {
                println!("  {}", serde_json::to_string(w).unwrap());
            }
        }
        Err(e) => println!("family not available: {e}"),
    }
}
