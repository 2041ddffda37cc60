//! Build the family for a given k and print its generations.
//!
//! ```text
//! cargo run --release --example construct_family -- 4 max
//! ```

use std::env;
use std::time::Instant;

use pliable::{construct_family, Config, TieBreak};

fn main() {
    let mut args = env::args().skip(1);
    let k: u32 = args.next().map_or(3, |a| a.parse().expect("k must be an integer"));
    let policy = match args.next().as_deref() {
        Some("max") => TieBreak::LexMax,
        _ => TieBreak::LexMin,
    };
    let started = Instant::now();
    let family = construct_family(k, policy, &Config::default()).expect("k within the configured cap");
    println!(
        "k = {k}, tie-break = {}: {} sets in {:.2?}",
        policy.label(),
        family.len(),
        started.elapsed()
    );
    for (gen, size) in family.generation_sizes().iter().enumerate() {
        println!("  F_{gen}: {size} sets");
        if k == 3 {
            for (_, m) in family.generation(gen as u32) {
                println!("    {}", m.set);
            }
        }
    }
}
