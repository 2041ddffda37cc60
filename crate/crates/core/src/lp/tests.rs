use super::*;
use crate::certificate::build_certificate;
use crate::{construct_family, Element, TieBreak};

fn k3() -> Family {
    construct_family(3, TieBreak::LexMin, &Config::default()).unwrap()
}

fn family(k: u32, sets: &[&[Element]]) -> Family {
    let g = GroundSet::new(k).unwrap();
    Family::from_sets(g, sets.iter().map(|s| g.set_of(s.iter().copied()).unwrap())).unwrap()
}

fn all_proper(k: u32) -> Family {
    let g = GroundSet::new(k).unwrap();
    Family::from_sets(g, (1..g.full_mask()).map(|m| g.set_from_mask(m).unwrap())).unwrap()
}

#[test]
fn k2_dimensions() {
    let f = family(2, &[&[1], &[2], &[3], &[1, 3], &[2, 3]]);
    let p = build_realizability_lp(&f, RealizeMode::Complemented, &Config::default()).unwrap();
    assert_eq!(p.variables(), 9);
    // 16 subsets: 120 pairs, 65 comparable; 7 threshold rows
    assert_eq!(p.rows().len(), 120 - 65 + 7);
}

#[test]
fn k3_dimensions() {
    let p = build_realizability_lp(&k3(), RealizeMode::Complemented, &Config::default()).unwrap();
    assert_eq!(p.classes(), 128);
    assert_eq!(p.rows().len(), 26_335 + 127);
}

#[test]
fn literal_mode_rejects_v1() {
    let f = k3();
    let v1 = f.ground().coordinate_set(1).unwrap();
    assert_eq!(
        build_realizability_lp(&f, RealizeMode::Literal, &Config::default()),
        Err(LpError::ComplementClosure {
            witness: v1,
            complement: v1.complement()
        })
    );
}

#[test]
fn lp_cap() {
    let f = construct_family(4, TieBreak::LexMin, &Config::default()).unwrap();
    assert_eq!(
        build_realizability_lp(&f, RealizeMode::Complemented, &Config::default()),
        Err(LpError::TooLarge { k: 4, max: 3 })
    );
}

#[test]
fn zero_multipliers_rejected() {
    let p = build_realizability_lp(&family(2, &[&[1]]), RealizeMode::Complemented, &Config::default()).unwrap();
    let zero = FarkasCertificate {
        multipliers: vec![BigRational::zero(); p.rows().len()],
    };
    assert_eq!(verify_farkas(&p, &zero), Ok(false));
    let short = FarkasCertificate { multipliers: vec![] };
    assert!(matches!(verify_farkas(&p, &short), Err(LpError::MultiplierCount { got: 0, .. })));
}

#[test]
fn hand_certificate_k3() {
    let f = k3();
    let p = build_realizability_lp(&f, RealizeMode::Complemented, &Config::default()).unwrap();
    let y = hand_certificate(&p, &build_certificate(3).unwrap()).unwrap();
    assert_eq!(y.support().len(), 9);
    assert_eq!(verify_farkas(&p, &y), Ok(true));
}

#[test]
fn hand_certificate_k4_partial() {
    let f = construct_family(4, TieBreak::LexMin, &Config::default()).unwrap();
    let c = build_certificate(4).unwrap();
    let (pairs, sets) = certificate_rows(&c).unwrap();
    let p = build_partial_lp(&f, RealizeMode::Complemented, &pairs, &sets).unwrap();
    assert_eq!(p.rows().len(), 5 + 8);
    let y = hand_certificate(&p, &c).unwrap();
    assert_eq!(verify_farkas(&p, &y), Ok(true));
}

#[test]
fn constant_g_realizes_every_proper_set() {
    let f = all_proper(2);
    let p = build_realizability_lp(&f, RealizeMode::Complemented, &Config::default()).unwrap();
    let mut x = vec![rat(0); p.variables()];
    x[p.lambda()] = rat(1);
    assert!(p.violated_rows(&x).is_empty());
    let out = solve_feasibility(&p, 10_000);
    let x = out.assignment().expect("feasible");
    assert!(p.violated_rows(&x).is_empty());
}

#[test]
fn affine_rescaling_preserves_feasibility() {
    // sublevel family of the 4-cycle 0-1-2-3-0 cut function at λ = 3
    let f = family(
        2,
        &[&[0], &[1], &[2], &[3], &[0, 1], &[1, 2], &[2, 3], &[0, 3], &[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    );
    let p = build_realizability_lp(&f, RealizeMode::Literal, &Config::default()).unwrap();
    let x = solve_feasibility(&p, 10_000).assignment().expect("feasible");
    assert!(p.violated_rows(&x).is_empty());
    let scaled: Vec<BigRational> = x.iter().map(|v| v * rat(3) + rat(-7)).collect();
    assert!(p.violated_rows(&scaled).is_empty());
}

#[test]
fn two_crossing_pairs_are_infeasible() {
    // g({0,1}) + g({0,2}) ≥ g({0}) + g({3}) ≥ 2λ, yet both left terms are below λ
    let f = family(2, &[&[0, 1], &[2, 3], &[0, 2], &[1, 3]]);
    let p = build_realizability_lp(&f, RealizeMode::Literal, &Config::default()).unwrap();
    match solve_feasibility(&p, 10_000) {
        LpOutcome::Infeasible(c) => assert_eq!(verify_farkas(&p, &c), Ok(true)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn report_lists_origins() {
    let f = k3();
    let p = build_realizability_lp(&f, RealizeMode::Complemented, &Config::default()).unwrap();
    let y = hand_certificate(&p, &build_certificate(3).unwrap()).unwrap();
    let r = LpReport::new(&p, &LpOutcome::Infeasible(y));
    assert!(r.verified);
    assert_eq!(r.multipliers.len(), 9);
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"kind\":\"submodular\""));
}
