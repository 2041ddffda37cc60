//! Randomized property suites shared by the `properties` and `acceptance`
//! targets. Every suite runs 1000 cases from a fixed seed.

#![allow(dead_code)]

use std::collections::HashMap;

use pliable::certificate::{ledger_sum, pair_terms, Ledger};
use pliable::checkers::{is_pliable, is_uncrossable, Violation};
use pliable::construct::{canonical_pairs, stage_generation};
use pliable::{construct_family, Config, ESet, Family, GroundSet, TieBreak};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 1000;
const SEED: [u8; 32] = *b"pliable-property-suites-seed-v01";

pub fn runner() -> TestRunner {
    let cfg = RunnerConfig {
        cases: CASES,
        failure_persistence: None,
        ..RunnerConfig::default()
    };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn ground(k: u32) -> GroundSet {
    GroundSet::new(k).unwrap()
}

fn set(k: u32, mask: u128) -> ESet {
    let g = ground(k);
    g.set_from_mask(mask & g.full_mask()).unwrap()
}

fn arb_k() -> impl Strategy<Value = u32> {
    1u32..=7
}

fn arb_mask() -> impl Strategy<Value = u128> {
    any::<u128>()
}

/// Distinct proper non-empty sets over `{0,1}^k`.
fn arb_family(k: u32, max: usize) -> impl Strategy<Value = Family> {
    prop::collection::vec(any::<u128>(), 0..max).prop_map(move |masks| {
        let g = ground(k);
        let mut f = Family::new(g);
        for m in masks {
            let s = g.set_from_mask(m & g.full_mask()).unwrap();
            if s.is_proper() && !f.contains(&s) {
                f.insert(s, 0, None).unwrap();
            }
        }
        f
    })
}

fn report(name: &str, r: Result<(), TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

/// `crosses` is symmetric, matches the four-quadrant definition and is
/// invariant under complementing either side.
pub fn crossing_symmetry() -> Result<(), String> {
    let r = runner().run(&(arb_k(), arb_mask(), arb_mask()), |(k, a, b)| {
        let (a, b) = (set(k, a), set(k, b));
        let quadrants = [a & b, !(a | b), a - b, b - a];
        prop_assert_eq!(a.crosses(&b), b.crosses(&a));
        prop_assert_eq!(a.crosses(&b), quadrants.iter().all(|q| !q.is_empty()));
        prop_assert_eq!(a.crosses(&b), a.crosses(&b.complement()));
        Ok(())
    });
    report("crossing symmetry", r)
}

/// The canceled ledger's coefficient of every set equals its net count in
/// the raw concatenation of per-pair terms.
pub fn ledger_accounting() -> Result<(), String> {
    let strat = (2u32..=5).prop_flat_map(|k| (Just(k), prop::collection::vec((arb_mask(), arb_mask()), 0..12)));
    let r = runner().run(&strat, |(k, raw)| {
        let pairs: Vec<(ESet, ESet)> = raw.iter().map(|&(a, b)| (set(k, a), set(k, b))).collect();
        let mut naive: HashMap<u128, i64> = HashMap::new();
        let mut terms = Vec::new();
        for &(a, b) in &pairs {
            for t in pair_terms(a, b) {
                *naive.entry(t.set.mask()).or_default() += t.sign as i64;
                terms.push(t);
            }
        }
        let ledger = Ledger::from_terms(ground(k), terms);
        for (&m, &c) in &naive {
            prop_assert_eq!(ledger.coefficient(&set(k, m)), c);
        }
        prop_assert_eq!(ledger.len(), naive.values().filter(|&&c| c != 0).count());
        if pairs.iter().all(|(a, b)| a.crosses(b)) {
            prop_assert_eq!(ledger_sum(ground(k), &pairs).unwrap(), ledger);
        } else {
            prop_assert!(ledger_sum(ground(k), &pairs).is_err());
        }
        Ok(())
    });
    report("ledger accounting", r)
}

/// Family documents survive a JSON round trip, with and without provenance.
pub fn serialization_round_trip() -> Result<(), String> {
    let strat = (1u32..=7).prop_flat_map(|k| arb_family(k, 40));
    let r = runner().run(&strat, |f| {
        let back = Family::from_json(&f.to_json()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, f);
        Ok(())
    });
    report("serialization round trip (random)", r)?;
    let constructed: Vec<Family> = [(3, TieBreak::LexMin), (3, TieBreak::LexMax), (4, TieBreak::LexMin), (4, TieBreak::LexMax)]
        .into_iter()
        .map(|(k, p)| construct_family(k, p, &Config::default()).unwrap())
        .collect();
    let r = runner().run(&(0..constructed.len()), |i| {
        let f = &constructed[i];
        let back = Family::from_json(&f.to_json()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, f);
        Ok(())
    });
    report("serialization round trip (constructed)", r)
}

/// Staging a generation gives the same sets and provenance whatever order
/// (and orientation) the pairs are visited in.
pub fn snapshot_determinism() -> Result<(), String> {
    let strat = (2u32..=4, any::<u64>(), any::<bool>()).prop_flat_map(|(k, seed, max)| (arb_family(k, 24), Just(seed), Just(max)));
    let r = runner().run(&strat, |(f, seed, max)| {
        let policy = if max { TieBreak::LexMax } else { TieBreak::LexMin };
        let reference = stage_generation(&f, policy, canonical_pairs(f.len()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(usize, usize)> = canonical_pairs(f.len())
            .map(|(i, j)| if rand::Rng::gen_bool(&mut rng, 0.5) { (j, i) } else { (i, j) })
            .collect();
        pairs.shuffle(&mut rng);
        prop_assert_eq!(stage_generation(&f, policy, pairs), reference);
        Ok(())
    });
    report("snapshot determinism", r)
}

fn pair_ids(w: &Violation) -> (usize, usize) {
    match w {
        Violation::Pair { a, b, .. } => (*a, *b),
        other => panic!("unexpected witness {other:?}"),
    }
}

/// Every pair that breaks pliability also breaks uncrossability, so an
/// uncrossable family is pliable, on crossing pairs in particular.
pub fn checker_consistency() -> Result<(), String> {
    let strat = (2u32..=4).prop_flat_map(|k| arb_family(k, 20));
    let r = runner().run(&strat, |f| {
        let unc = is_uncrossable(&f);
        let pli = is_pliable(&f);
        let unc_pairs: Vec<_> = unc.witnesses.iter().map(pair_ids).collect();
        for w in &pli.witnesses {
            prop_assert!(unc_pairs.contains(&pair_ids(w)));
        }
        prop_assert!(!unc.ok || pli.ok);
        Ok(())
    });
    report("checker cross-consistency", r)
}

pub fn all_suites() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("crossing symmetry", crossing_symmetry()),
        ("ledger multiset accounting", ledger_accounting()),
        ("serialization round trip", serialization_round_trip()),
        ("snapshot determinism", snapshot_determinism()),
        ("checker cross-consistency", checker_consistency()),
    ]
}
