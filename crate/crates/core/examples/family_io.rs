//! Write a family document, read it back, and build one by hand.
//!
//! ```text
//! cargo run --example family_io
//! ```

use pliable::{construct_family, Config, Family, GroundSet, TieBreak};

fn main() {
    let f = construct_family(3, TieBreak::LexMin, &Config::default()).unwrap();
    let text = f.to_json();
    let back = Family::from_json(&text).unwrap();
    assert_eq!(back, f);
    println!("{} bytes, round trip ok; first records:", text.len());
    for line in text.lines().take(16) {
        println!("{line}");
    }

    let g = GroundSet::new(3).unwrap();
    let mut hand = Family::new(g);
    for v in g.coordinate_sets() {
        hand.insert(v, 0, None).unwrap();
    }
    let e = g.vec_of_indexset(&[2]).unwrap();
    println!("unit-vector v_2 is element {e}; hand family has {} sets", hand.len());
    // a tampered document is rejected
    let bad = text.replacen("\"generation\": 1", "\"generation\": 0", 1);
    println!("tampered document: {}", Family::from_json(&bad).unwrap_err());
}
