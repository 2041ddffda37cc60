//! Decision procedures for family properties.
//!
//! Every checker returns a [`ViolationReport`] whose witnesses can be
//! replayed against the family they came from.

mod lemmas;
mod partition;

use serde::Serialize;

use crate::certificate::CertificateCheck;
use crate::family::Family;
use crate::ground::{crosses_mask, ESet, Mask};

pub use lemmas::{validate_construction, LemmaCheck};
pub use partition::{conflict_witness, partition_uncrossable, ConflictPair, PartitionOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Pliable,
    StructurallySubmodular,
    Uncrossable,
    Gamma,
    Construction,
    Certificate,
}

impl Property {
    pub fn label(&self) -> &'static str {
        match self {
            Property::Pliable => "pliable",
            Property::StructurallySubmodular => "structurally-submodular",
            Property::Uncrossable => "uncrossable",
            Property::Gamma => "gamma",
            Property::Construction => "construction",
            Property::Certificate => "certificate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A member pair `(a, b)` whose required derived sets are absent.
    Pair {
        a: usize,
        b: usize,
        sets: [ESet; 2],
        missing: Vec<ESet>,
    },
    /// `S_2 − (S_1 ∪ C)` is neither empty nor a member.
    Triple {
        c: usize,
        s1: usize,
        s2: usize,
        residual: ESet,
    },
    /// A structural lemma fails on `set` (a member, or a set that should
    /// have been absent).
    Lemma {
        check: LemmaCheck,
        set: ESet,
        member: Option<usize>,
        detail: String,
    },
    /// A step of the impossibility certificate fails.
    Certificate {
        check: CertificateCheck,
        sets: Vec<ESet>,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub property: Property,
    pub ok: bool,
    pub witnesses: Vec<Violation>,
}

impl ViolationReport {
    pub(crate) fn new(property: Property, mut witnesses: Vec<Violation>) -> Self {
        witnesses.sort_by_key(witness_key);
        ViolationReport {
            property,
            ok: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Re-run every witness against `f`; true when all of them still fail.
    pub fn replay(&self, f: &Family) -> bool {
        self.witnesses.iter().all(|w| replay_one(self.property, w, f))
    }
}

fn witness_key(v: &Violation) -> (usize, usize, usize, Mask) {
    match v {
        Violation::Pair { a, b, .. } => (*a, *b, 0, 0),
        Violation::Triple { c, s1, s2, .. } => (*c, *s1, *s2, 0),
        Violation::Lemma { check, set, member, .. } => {
            (*check as usize, member.unwrap_or(usize::MAX), 0, set.mask())
        }
        Violation::Certificate { check, sets, .. } => {
            (*check as usize, 0, 0, sets.first().map_or(0, |s| s.mask()))
        }
    }
}

fn replay_one(property: Property, w: &Violation, f: &Family) -> bool {
    match (property, w) {
        (Property::Pliable | Property::StructurallySubmodular | Property::Uncrossable, Violation::Pair { a, b, sets, .. }) => {
            *a < f.len()
                && *b < f.len()
                && f.set(*a) == sets[0]
                && f.set(*b) == sets[1]
                && !pair_ok(property, f, sets[0], sets[1])
        }
        (Property::Gamma, Violation::Triple { c, s1, s2, .. }) => {
            [*c, *s1, *s2].iter().all(|&i| i < f.len())
                && gamma_violated(f, f.set(*c), f.set(*s1), f.set(*s2)).is_some()
        }
        (Property::Construction, Violation::Lemma { check, set, .. }) => lemmas::replay(f, *check, *set),
        (Property::Certificate, Violation::Certificate { check, sets, .. }) => match check {
            CertificateCheck::PairsCross => !sets[0].crosses(&sets[1]),
            CertificateCheck::SeedPresent => !f.contains(&sets[0]),
            CertificateCheck::UnitSingletonsAbsent | CertificateCheck::WSetsAbsent => f.contains(&sets[0]),
            CertificateCheck::SecondListTelescopes | CertificateCheck::ChainsBottomOut => sets[0] != sets[1],
            CertificateCheck::WSetsDefined | CertificateCheck::CanceledSum => true,
        },
        _ => false,
    }
}

/// The four derived sets of a pair: `A∩B, A∪B, A−B, B−A`.
fn quadrants(a: ESet, b: ESet) -> [ESet; 4] {
    [a & b, a | b, a - b, b - a]
}

fn pair_ok(property: Property, f: &Family, a: ESet, b: ESet) -> bool {
    let [i, u, ab, ba] = quadrants(a, b).map(|s| f.contains(&s));
    match property {
        Property::Pliable => [i, u, ab, ba].iter().filter(|&&x| x).count() >= 2,
        Property::StructurallySubmodular => !a.crosses(&b) || ((i || u) && (ab || ba)),
        Property::Uncrossable => (i && u) || (ab && ba),
        _ => unreachable!("not a pair property"),
    }
}

fn pair_check(f: &Family, property: Property, crossing_only: bool) -> ViolationReport {
    let full = f.ground().full_mask();
    let sets: Vec<ESet> = f.sets().collect();
    let mut witnesses = Vec::new();
    for (ai, &a) in sets.iter().enumerate() {
        for (bi, &b) in sets.iter().enumerate().skip(ai + 1) {
            if crossing_only && !crosses_mask(a.mask(), b.mask(), full) {
                continue;
            }
            if !pair_ok(property, f, a, b) {
                let missing = quadrants(a, b)
                    .into_iter()
                    .filter(|s| !f.contains(s))
                    .collect();
                witnesses.push(Violation::Pair {
                    a: ai,
                    b: bi,
                    sets: [a, b],
                    missing,
                });
            }
        }
    }
    ViolationReport::new(property, witnesses)
}

/// At least two of `A∩B, A∪B, A−B, B−A` are members, for every member pair.
pub fn is_pliable(f: &Family) -> ViolationReport {
    pair_check(f, Property::Pliable, false)
}

/// For every crossing member pair, one of `A∩B, A∪B` and one of
/// `A−B, B−A` are members.
pub fn is_structurally_submodular(f: &Family) -> ViolationReport {
    pair_check(f, Property::StructurallySubmodular, true)
}

/// For every member pair, both `A∩B, A∪B` or both `A−B, B−A` are members.
pub fn is_uncrossable(f: &Family) -> ViolationReport {
    pair_check(f, Property::Uncrossable, false)
}

fn gamma_violated(f: &Family, c: ESet, s1: ESet, s2: ESet) -> Option<ESet> {
    if !s1.is_proper_subset(&s2) || !c.crosses(&s1) || !c.crosses(&s2) {
        return None;
    }
    if f.sets().any(|o| o.is_proper_subset(&c)) {
        return None;
    }
    let residual = s2 - (s1 | c);
    (!residual.is_empty() && !f.contains(&residual)).then_some(residual)
}

/// For `C, S_1, S_2` in the family with `S_1 ⊊ S_2` and `C` inclusion-wise
/// minimal and crossing both, `S_2 − (S_1 ∪ C)` is empty or a member.
pub fn satisfies_gamma(f: &Family) -> ViolationReport {
    let sets: Vec<ESet> = f.sets().collect();
    let minimal: Vec<usize> = (0..sets.len())
        .filter(|&c| !sets.iter().any(|o| o.is_proper_subset(&sets[c])))
        .collect();
    let mut witnesses = Vec::new();
    for &c in &minimal {
        for (s2, &big) in sets.iter().enumerate() {
            if !sets[c].crosses(&big) {
                continue;
            }
            for (s1, &small) in sets.iter().enumerate() {
                if let Some(residual) = gamma_violated(f, sets[c], small, big) {
                    witnesses.push(Violation::Triple { c, s1, s2, residual });
                }
            }
        }
    }
    ViolationReport::new(Property::Gamma, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{construct_family, Config, Element, GroundSet, TieBreak};

    fn g3() -> GroundSet {
        GroundSet::new(3).unwrap()
    }

    fn fam(sets: &[&[Element]]) -> Family {
        Family::from_sets(g3(), sets.iter().map(|s| g3().set_of(s.iter().copied()).unwrap())).unwrap()
    }

    fn k3() -> Family {
        construct_family(3, TieBreak::LexMin, &Config::default()).unwrap()
    }

    #[test]
    fn constructed_k3_is_pliable_and_structural() {
        let f = k3();
        assert!(is_pliable(&f).ok);
        assert!(is_structurally_submodular(&f).ok);
    }

    #[test]
    fn two_coordinate_sets_fail() {
        let f = fam(&[&[1, 3, 5, 7], &[2, 3, 6, 7]]);
        for report in [is_pliable(&f), is_structurally_submodular(&f)] {
            assert!(!report.ok);
            assert_eq!(report.witnesses.len(), 1);
            assert!(matches!(
                &report.witnesses[0],
                Violation::Pair { a: 0, b: 1, missing, .. } if missing.len() == 4
            ));
            assert!(report.replay(&f));
        }
    }

    #[test]
    fn trivial_families() {
        let single = fam(&[&[1, 3, 5, 7]]);
        assert!(is_pliable(&single).ok);
        let chain = fam(&[&[1], &[1, 3], &[1, 3, 5]]);
        assert!(is_structurally_submodular(&chain).ok);
        let empty = Family::new(g3());
        assert!(is_uncrossable(&empty).ok);
        assert!(satisfies_gamma(&empty).ok);
    }

    #[test]
    fn constructed_k3_is_not_uncrossable() {
        let f = k3();
        let r = is_uncrossable(&f);
        assert!(!r.ok);
        assert!(r
            .witnesses
            .iter()
            .any(|w| matches!(w, Violation::Pair { a: 0, b: 1, .. })));
        assert!(r.replay(&f));
    }

    #[test]
    fn powerset_of_v1_is_uncrossable() {
        let v1 = g3().coordinate_set(1).unwrap();
        let subsets = (1u128..(1 << 8))
            .filter(|m| m & !v1.mask() == 0)
            .map(|m| g3().set_from_mask(m).unwrap());
        let f = Family::from_sets(g3(), subsets).unwrap();
        assert_eq!(f.len(), 15);
        assert!(is_uncrossable(&f).ok);
    }

    #[test]
    fn gamma_vacuous_when_nothing_crosses() {
        let f = fam(&[&[1, 3, 5, 7], &[3, 7], &[3]]);
        assert!(satisfies_gamma(&f).ok);
    }

    #[test]
    fn gamma_catches_missing_residual() {
        // C = {1,2} is minimal and crosses S1 = {2,3} and S2 = {2,3,4,5};
        // S2 − (S1 ∪ C) = {4,5} is absent.
        let f = fam(&[&[1, 2], &[2, 3], &[2, 3, 4, 5]]);
        let r = satisfies_gamma(&f);
        assert!(!r.ok);
        assert!(matches!(
            r.witnesses[0],
            Violation::Triple { c: 0, s1: 1, s2: 2, .. }
        ));
        assert!(r.replay(&f));
    }
}
