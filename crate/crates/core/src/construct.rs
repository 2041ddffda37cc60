//! Generational construction of the pliable family.
//!
//! Start from the coordinate sets `V_1, ..., V_k`. Each iteration looks at
//! every crossing pair of the family as it stood when the iteration began
//! (the *snapshot*) and stages
//!
//! * `A ∩ B` when it is not in the snapshot, and
//! * one of `A − B`, `B − A` when neither is in the snapshot: the one whose
//!   unit-vector has the larger coordinate if both carry one, the one without
//!   a unit-vector if exactly one carries one, and otherwise whichever the
//!   [`TieBreak`] picks.
//!
//! Staged sets join the family as the next generation. The loop stops when an
//! iteration stages nothing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::ConstructError;
use crate::family::{Family, Provenance, Rule};
use crate::ground::{crosses_mask, GroundSet, Mask};

/// Choice between `A − B` and `B − A` when neither carries a unit-vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// The difference with the numerically smaller mask.
    #[default]
    LexMin,
    /// The difference with the numerically larger mask.
    LexMax,
}

impl TieBreak {
    fn pick(self, a: Mask, b: Mask) -> bool {
        // true selects `a`
        match self {
            TieBreak::LexMin => a < b,
            TieBreak::LexMax => a > b,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TieBreak::LexMin => "min",
            TieBreak::LexMax => "max",
        }
    }
}

/// A set staged during one iteration, attributed to the earliest pair (in
/// `(index of A, index of B)` order) that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Staged {
    pub mask: Mask,
    pub provenance: Provenance,
    /// `(a, b, step)` of the producing pair; step 0 is the intersection step.
    origin: (usize, usize, u8),
}

/// Stage the next generation from `snapshot`, visiting crossing pairs in the
/// order given by `pairs`. The result does not depend on that order.
pub fn stage_generation<I>(snapshot: &Family, policy: TieBreak, pairs: I) -> Vec<Staged>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let ground = snapshot.ground();
    let full = ground.full_mask();
    let masks: Vec<Mask> = snapshot.sets().map(|s| s.mask()).collect();
    let mut staged: BTreeMap<Mask, Staged> = BTreeMap::new();
    let mut offer = |mask: Mask, provenance: Provenance, origin: (usize, usize, u8)| {
        staged
            .entry(mask)
            .and_modify(|cur| {
                if origin < cur.origin {
                    *cur = Staged { mask, provenance, origin };
                }
            })
            .or_insert(Staged { mask, provenance, origin });
    };

    for (i, j) in pairs {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let (a, b) = (masks[i], masks[j]);
        if !crosses_mask(a, b, full) {
            continue;
        }
        let inter = a & b;
        if !snapshot.contains_mask(inter) {
            offer(
                inter,
                Provenance::Intersection {
                    parents: [i, j],
                    rule: Rule::Intersection,
                },
                (i, j, 0),
            );
        }
        let (ab, ba) = (a & !b, b & !a);
        if snapshot.contains_mask(ab) || snapshot.contains_mask(ba) {
            continue;
        }
        let sa = ground.set_from_mask(ab).expect("subset of V");
        let sb = ground.set_from_mask(ba).expect("subset of V");
        let (take_ab, rule) = match (sa.unit_indices().first(), sb.unit_indices().first()) {
            (Some(ua), Some(ub)) => (ua > ub, Rule::BothUnits),
            (Some(_), None) => (false, Rule::OneUnit),
            (None, Some(_)) => (true, Rule::OneUnit),
            (None, None) => (policy.pick(ab, ba), Rule::TieBreak),
        };
        let (mask, parents) = if take_ab { (ab, [i, j]) } else { (ba, [j, i]) };
        offer(mask, Provenance::Difference { parents, rule }, (i, j, 1));
    }
    staged.into_values().collect()
}

/// All unordered index pairs of a family of size `n`, in canonical order.
pub fn canonical_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Canonical pairs `(i, j)`, `i < j`, with `j >= fresh`.
///
/// A pair of members that were both present one iteration earlier already
/// had its intersection and one of its differences staged back then, so it
/// cannot stage anything now; only pairs touching the newest generation
/// (members `fresh..n`) need a visit.
pub fn pairs_touching(fresh: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (fresh.max(i + 1)..n).map(move |j| (i, j)))
}

/// Number of pairs [`pairs_touching`] yields.
pub fn touching_count(fresh: usize, n: usize) -> u64 {
    let (f, n) = (fresh as u64, n as u64);
    if n < 2 || f >= n {
        return 0;
    }
    let lo = f.max(1);
    // sum of j over lo..n
    (lo + n - 1) * (n - lo) / 2
}

pub fn construct_family(k: u32, policy: TieBreak, cfg: &Config) -> Result<Family, ConstructError> {
    if k < 3 || k > cfg.max_k {
        return Err(ConstructError::KOutOfRange { k, max: cfg.max_k });
    }
    let ground = GroundSet::new(k).map_err(|_| ConstructError::KOutOfRange { k, max: cfg.max_k })?;
    let mut family = Family::new(ground);
    for v in ground.coordinate_sets() {
        family.insert(v, 0, Some(Provenance::Initial))?;
    }
    let mut gen = 0;
    let mut fresh = 0;
    let mut left = cfg.construct_pair_budget;
    loop {
        let n = family.len();
        let needed = touching_count(fresh, n);
        if needed > left {
            return Err(ConstructError::BudgetExceeded {
                generation: gen + 1,
                needed,
                left,
                budget: cfg.construct_pair_budget,
            });
        }
        left -= needed;
        let staged = stage_generation(&family, policy, pairs_touching(fresh, n));
        fresh = n;
        if staged.is_empty() {
            break;
        }
        gen += 1;
        log::debug!("generation {gen}: {} new sets", staged.len());
        for s in staged {
            let set = ground.set_from_mask(s.mask).expect("subset of V");
            family.insert(set, gen, Some(s.provenance))?;
        }
    }
    Ok(family)
}
