//! Exact realizability LP: the k = 3 family is infeasible (solver and hand
//! certificates), the 4-cycle cut family at λ = 3 is feasible.
//!
//! ```text
//! cargo run --release --example realizability
//! ```

use pliable::certificate::build_certificate;
use pliable::lp::{build_realizability_lp, hand_certificate, solve_feasibility, verify_farkas, LpOutcome, LpReport, RealizeMode};
use pliable::{construct_family, Config, Family, GroundSet, TieBreak};

fn main() {
    let cfg = Config::default();
    let f = construct_family(3, TieBreak::LexMin, &cfg).unwrap();

    match build_realizability_lp(&f, RealizeMode::Literal, &cfg) {
        Err(e) => println!("literal mode: {e}"),
        Ok(_) => println!("literal mode: LP built"),
    }

    let p = build_realizability_lp(&f, RealizeMode::Complemented, &cfg).unwrap();
    println!("complemented mode: {} variables, {} rows", p.variables(), p.rows().len());
    let hand = hand_certificate(&p, &build_certificate(3).unwrap()).unwrap();
    println!("hand certificate accepted: {}", verify_farkas(&p, &hand).unwrap());
    let out = solve_feasibility(&p, cfg.pivot_budget);
    if let LpOutcome::Infeasible(c) = &out {
        println!("solver: infeasible, certificate accepted: {}", verify_farkas(&p, c).unwrap());
        for (row, y) in c.support() {
            println!("  {y} x {}", p.rows()[row].origin);
        }
    }

    // sublevel sets of the 4-cycle 0-1-2-3-0 cut function below 3
    let g = GroundSet::new(2).unwrap();
    let cut = |s: u32| [(0, 1), (1, 2), (2, 3), (3, 0)].iter().filter(|&&(a, b)| (s >> a & 1) != (s >> b & 1)).count();
    let sets = (1u32..15).filter(|&s| cut(s) < 3).map(|s| g.set_from_mask(s as u128).unwrap());
    let cycle = Family::from_sets(g, sets).unwrap();
    let p = build_realizability_lp(&cycle, RealizeMode::Complemented, &cfg).unwrap();
    let out = solve_feasibility(&p, cfg.pivot_budget);
    let report = LpReport::new(&p, &out);
    println!("4-cycle family: {} (re-checked: {})", report.outcome, report.verified);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
