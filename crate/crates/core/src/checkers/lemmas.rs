//! Structural facts every constructed family must satisfy.

use serde::Serialize;

use super::{Property, Violation, ViolationReport};
use crate::error::CheckError;
use crate::family::Family;
use crate::ground::{ESet, GroundSet, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaCheck {
    /// Every member lies inside some coordinate set.
    InsideCoordinateSet,
    /// A member holds at most one unit-vector, and holding `v_{i}` puts it
    /// inside `V_i`.
    SingleUnitVector,
    /// A member holding `v_{i}` holds `v_I` for every `I = {i} ∪ J`,
    /// `J ⊆ {i+1, ..., k}`.
    UpwardClosure,
    /// `{v_{i}}` is absent for `i < k`.
    NoUnitSingleton,
    /// `V_i − V_j` is absent for `i < j`.
    NoCoordinateDifference,
    /// No member holds `v_{i}` and `v_[k]` but not `v_{1,i}`, for `i >= 3`.
    NoSkippedCorner,
}

/// Vectors `v_I` with `min(I) = i`: bit `i-1` set, all lower bits clear.
pub(crate) fn upward_mask(g: GroundSet, i: usize) -> Mask {
    let low = (1u32 << i) - 1;
    let top = 1u32 << (i - 1);
    (0..g.n() as u32)
        .filter(|e| e & low == top)
        .fold(0, |m, e| m | (1u128 << e))
}

fn seeded(f: &Family) -> Result<(), CheckError> {
    let mut seed: Vec<Mask> = f.generation(0).map(|(_, m)| m.set.mask()).collect();
    let mut want: Vec<Mask> = f.ground().coordinate_sets().iter().map(|s| s.mask()).collect();
    seed.sort_unstable();
    want.sort_unstable();
    if seed == want {
        Ok(())
    } else {
        Err(CheckError::NotSeeded(format!(
            "{} sets in generation 0, expected V_1..V_{}",
            seed.len(),
            f.k()
        )))
    }
}

/// Per-member failures of the first three checks, with a reason.
fn member_failures(g: GroundSet, s: ESet) -> Vec<(LemmaCheck, String)> {
    let coords = g.coordinate_sets();
    let mut out = Vec::new();
    if !coords.iter().any(|v| s.is_subset(v)) {
        out.push((LemmaCheck::InsideCoordinateSet, "not inside any V_i".to_string()));
    }
    let units = s.unit_indices();
    if units.len() > 1 {
        out.push((LemmaCheck::SingleUnitVector, format!("unit-vectors of coordinates {units:?}")));
    } else if let Some(&i) = units.first() {
        if !s.is_subset(&coords[i - 1]) {
            out.push((LemmaCheck::SingleUnitVector, format!("holds v_{{{i}}} but leaves V_{i}")));
        }
    }
    for &i in &units {
        let need = upward_mask(g, i);
        let lacking = need & !s.mask();
        if lacking != 0 {
            let lacking = g.set_from_mask(lacking).expect("subset of V");
            out.push((LemmaCheck::UpwardClosure, format!("holds v_{{{i}}} but lacks {lacking}")));
        }
    }
    let k = g.k() as usize;
    let top = g.full_mask().count_ones() - 1;
    for i in 3..=k {
        let unit = 1u32 << (i - 1);
        let corner = unit | 1;
        if s.contains(unit) && s.contains(top) && !s.contains(corner) {
            out.push((
                LemmaCheck::NoSkippedCorner,
                format!("holds v_{{{i}}} and v_[k] but not v_{{1,{i}}}"),
            ));
        }
    }
    out
}

/// Sets that must be absent: `{v_{i}}` for `i < k` and `V_i − V_j` for `i < j`.
fn forbidden(g: GroundSet) -> Vec<(LemmaCheck, ESet, String)> {
    let k = g.k() as usize;
    let coords = g.coordinate_sets();
    let mut out = Vec::new();
    for i in 1..k {
        let s = g.set_of([1u32 << (i - 1)]).expect("unit-vector in range");
        out.push((LemmaCheck::NoUnitSingleton, s, format!("{{v_{{{i}}}}} is a member")));
    }
    for i in 1..=k {
        for j in i + 1..=k {
            out.push((
                LemmaCheck::NoCoordinateDifference,
                coords[i - 1] - coords[j - 1],
                format!("V_{i} − V_{j} is a member"),
            ));
        }
    }
    out
}

/// Run all six structural checks over a family seeded with the coordinate
/// sets. The empty family passes vacuously.
pub fn validate_construction(f: &Family) -> Result<ViolationReport, CheckError> {
    if f.is_empty() {
        return Ok(ViolationReport::new(Property::Construction, Vec::new()));
    }
    seeded(f)?;
    let g = f.ground();
    let mut witnesses = Vec::new();
    for (idx, m) in f.members().iter().enumerate() {
        for (check, detail) in member_failures(g, m.set) {
            witnesses.push(Violation::Lemma {
                check,
                set: m.set,
                member: Some(idx),
                detail,
            });
        }
    }
    for (check, set, detail) in forbidden(g) {
        if let Some(idx) = f.position(&set).filter(|_| f.contains(&set)) {
            witnesses.push(Violation::Lemma {
                check,
                set,
                member: Some(idx),
                detail,
            });
        }
    }
    Ok(ViolationReport::new(Property::Construction, witnesses))
}

pub(super) fn replay(f: &Family, check: LemmaCheck, set: ESet) -> bool {
    if !f.contains(&set) {
        return false;
    }
    match check {
        LemmaCheck::NoUnitSingleton | LemmaCheck::NoCoordinateDifference => {
            forbidden(f.ground()).iter().any(|(c, s, _)| *c == check && *s == set)
        }
        _ => member_failures(f.ground(), set).iter().any(|(c, _)| *c == check),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{construct_family, Config, TieBreak};

    fn k3() -> Family {
        construct_family(3, TieBreak::LexMin, &Config::default()).unwrap()
    }

    fn inject(mut f: Family, els: &[u32]) -> Family {
        let s = f.ground().set_of(els.iter().copied()).unwrap();
        let gen = f.max_generation().unwrap();
        f.insert(s, gen, None).unwrap();
        f
    }

    fn checks(r: &ViolationReport) -> Vec<LemmaCheck> {
        r.witnesses
            .iter()
            .map(|w| match w {
                Violation::Lemma { check, .. } => *check,
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn upward_masks_k3() {
        let g = GroundSet::new(3).unwrap();
        // v_{1}, v_{1,2}, v_{1,3}, v_{1,2,3}
        assert_eq!(g.set_from_mask(upward_mask(g, 1)).unwrap().elements(), vec![1, 3, 5, 7]);
        assert_eq!(g.set_from_mask(upward_mask(g, 2)).unwrap().elements(), vec![2, 6]);
        assert_eq!(g.set_from_mask(upward_mask(g, 3)).unwrap().elements(), vec![4]);
    }

    #[test]
    fn constructed_k3_passes() {
        let r = validate_construction(&k3()).unwrap();
        assert!(r.ok, "{:?}", r.witnesses);
    }

    #[test]
    fn injected_w3_is_caught() {
        let f = inject(k3(), &[4, 7]);
        let r = validate_construction(&f).unwrap();
        assert!(!r.ok);
        assert_eq!(checks(&r), vec![LemmaCheck::NoSkippedCorner]);
        assert!(r.replay(&f));
    }

    #[test]
    fn injected_unit_singleton_is_caught() {
        let f = inject(k3(), &[1]);
        let r = validate_construction(&f).unwrap();
        assert!(checks(&r).contains(&LemmaCheck::NoUnitSingleton));
        assert!(r.replay(&f));
    }

    #[test]
    fn injected_coordinate_difference_is_caught() {
        let f = inject(k3(), &[1, 5]);
        let r = validate_construction(&f).unwrap();
        assert!(checks(&r).contains(&LemmaCheck::NoCoordinateDifference));
    }

    #[test]
    fn unseeded_family_is_rejected() {
        let g = GroundSet::new(3).unwrap();
        let f = Family::from_sets(g, [g.coordinate_set(1).unwrap()]).unwrap();
        assert!(matches!(validate_construction(&f), Err(CheckError::NotSeeded(_))));
    }

    #[test]
    fn empty_family_is_vacuous() {
        let f = Family::new(GroundSet::new(3).unwrap());
        assert!(validate_construction(&f).unwrap().ok);
    }
}
