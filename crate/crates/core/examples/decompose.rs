//! Rewrite every unit-vector member as nested differences of coordinate sets.
//!
//! ```text
//! cargo run --example decompose -- 4
//! ```

use pliable::decompose::{express, verify_expression};
use pliable::{construct_family, Config, TieBreak};

fn main() {
    let k: u32 = std::env::args().nth(1).map_or(3, |a| a.parse().expect("k must be an integer"));
    let f = construct_family(k, TieBreak::LexMin, &Config::default()).expect("k within the configured cap");
    for (idx, m) in f.members().iter().enumerate() {
        let Some(i) = m.set.sole_unit_index() else { continue };
        if m.generation == 0 {
            continue;
        }
        let tree = express(&f, idx).expect("every unit-vector member rewrites");
        let verdict = verify_expression(&tree, m.set, i);
        println!(
            "F_{} {:<24} = {}  [{}]",
            m.generation,
            m.set.to_string(),
            tree,
            if verdict.ok { "ok" } else { "BAD" }
        );
    }
}
