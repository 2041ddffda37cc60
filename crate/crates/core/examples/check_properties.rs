//! Run every property checker on a constructed family.
//!
//! ```text
//! cargo run --example check_properties -- 4
//! ```

use pliable::checkers::{is_pliable, is_structurally_submodular, is_uncrossable, satisfies_gamma, validate_construction};
use pliable::{construct_family, Config, TieBreak};

fn main() {
    let k: u32 = std::env::args().nth(1).map_or(3, |a| a.parse().expect("k must be an integer"));
    let f = construct_family(k, TieBreak::LexMin, &Config::default()).expect("k within the configured cap");
    println!("k = {k}: {} sets", f.len());
    let lemmas = validate_construction(&f).expect("constructed families are seeded");
    for report in [is_pliable(&f), is_structurally_submodular(&f), is_uncrossable(&f), satisfies_gamma(&f), lemmas] {
        println!(
            "  {:<24} {} ({} witnesses)",
            report.property.label(),
            if report.ok { "holds" } else { "fails" },
            report.witnesses.len()
        );
    }
    // the uncrossing failure is the expected one: V_1 and V_2 have neither
    // their union nor both differences in the family
    let unc = is_uncrossable(&f);
    if let Some(w) = unc.witnesses.first() {
        println!("  first uncrossable witness: {}", serde_json::to_string(w).unwrap());
        assert!(unc.replay(&f));
    }
}
