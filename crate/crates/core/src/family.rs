//! An ordered family of sets with generation tags and optional provenance.
//!
//! Members are addressed by their position (`usize`). Generation `0` holds
//! the seed sets; every later generation holds sets derived from members of
//! strictly earlier generations. A membership index keyed by mask keeps
//! [`Family::contains`] O(1).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{FamilyError, GroundError};
use crate::ground::{Element, ESet, GroundSet, Mask};

/// Which step of the construction produced a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Missing intersection of a crossing pair.
    #[serde(rename = "a")]
    Intersection,
    /// Both differences carry unit-vectors; the larger index wins.
    #[serde(rename = "b-i")]
    BothUnits,
    /// Exactly one difference carries a unit-vector; the other one is taken.
    #[serde(rename = "b-ii")]
    OneUnit,
    /// Neither difference carries a unit-vector; the tie-break policy decides.
    #[serde(rename = "b-iii")]
    TieBreak,
}

impl Rule {
    pub fn label(&self) -> &'static str {
        match self {
            Rule::Intersection => "a",
            Rule::BothUnits => "b-i",
            Rule::OneUnit => "b-ii",
            Rule::TieBreak => "b-iii",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Initial,
    /// `set = parents[0] ∩ parents[1]`
    Intersection { parents: [usize; 2], rule: Rule },
    /// `set = parents[0] − parents[1]`
    Difference { parents: [usize; 2], rule: Rule },
}

impl Provenance {
    pub fn parents(&self) -> Option<[usize; 2]> {
        match self {
            Provenance::Initial => None,
            Provenance::Intersection { parents, .. } | Provenance::Difference { parents, .. } => {
                Some(*parents)
            }
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            Provenance::Initial => None,
            Provenance::Intersection { rule, .. } | Provenance::Difference { rule, .. } => {
                Some(*rule)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub set: ESet,
    pub generation: u32,
    pub provenance: Option<Provenance>,
}

#[derive(Debug, Clone)]
pub struct Family {
    ground: GroundSet,
    members: Vec<Member>,
    index: HashMap<Mask, usize>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for Family {}

impl Family {
    pub fn new(ground: GroundSet) -> Self {
        Family {
            ground,
            members: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// An unprovenanced family with every set in generation 0.
    pub fn from_sets<I: IntoIterator<Item = ESet>>(
        ground: GroundSet,
        sets: I,
    ) -> Result<Self, FamilyError> {
        let mut f = Family::new(ground);
        for s in sets {
            f.insert(s, 0, None)?;
        }
        Ok(f)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn k(&self) -> u32 {
        self.ground.k()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, idx: usize) -> Option<&Member> {
        self.members.get(idx)
    }

    pub fn set(&self, idx: usize) -> ESet {
        self.members[idx].set
    }

    pub fn sets(&self) -> impl Iterator<Item = ESet> + '_ {
        self.members.iter().map(|m| m.set)
    }

    /// Newest generation, or `None` for an empty family.
    pub fn max_generation(&self) -> Option<u32> {
        self.members.last().map(|m| m.generation)
    }

    pub fn generation(&self, gen: u32) -> impl Iterator<Item = (usize, &Member)> {
        self.members
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.generation == gen)
    }

    /// Member count per generation, oldest first.
    pub fn generation_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        for m in &self.members {
            let g = m.generation as usize;
            if sizes.len() <= g {
                sizes.resize(g + 1, 0);
            }
            sizes[g] += 1;
        }
        sizes
    }

    /// `∅` and `V` never count as members, even if stored.
    pub fn contains(&self, s: &ESet) -> bool {
        s.ground() == self.ground && s.is_proper() && self.index.contains_key(&s.mask())
    }

    pub fn try_contains(&self, s: &ESet) -> Result<bool, FamilyError> {
        if s.ground() != self.ground {
            return Err(GroundError::Mismatch {
                left: self.ground.k(),
                right: s.ground().k(),
            }
            .into());
        }
        Ok(self.contains(s))
    }

    pub(crate) fn contains_mask(&self, m: Mask) -> bool {
        m != 0 && m != self.ground.full_mask() && self.index.contains_key(&m)
    }

    pub fn position(&self, s: &ESet) -> Option<usize> {
        if s.ground() != self.ground {
            return None;
        }
        self.index.get(&s.mask()).copied()
    }

    pub fn insert(
        &mut self,
        s: ESet,
        gen: u32,
        prov: Option<Provenance>,
    ) -> Result<usize, FamilyError> {
        if s.ground() != self.ground {
            return Err(GroundError::Mismatch {
                left: self.ground.k(),
                right: s.ground().k(),
            }
            .into());
        }
        if self.index.contains_key(&s.mask()) {
            return Err(FamilyError::Duplicate(s.to_string()));
        }
        match self.max_generation() {
            Some(current) if gen < current => {
                return Err(FamilyError::StaleGeneration { gen, current })
            }
            Some(current) if gen > current + 1 => {
                return Err(FamilyError::GenerationGap { gen, current })
            }
            None if gen != 0 => return Err(FamilyError::GenerationGap { gen, current: 0 }),
            _ => {}
        }
        if let Some(p) = &prov {
            self.check_provenance(&s, gen, p)?;
        }
        if !s.is_proper() {
            log::warn!("family member {s} is empty or the whole ground set; it is never counted as a member");
        }
        let idx = self.members.len();
        self.members.push(Member {
            set: s,
            generation: gen,
            provenance: prov,
        });
        self.index.insert(s.mask(), idx);
        Ok(idx)
    }

    fn check_provenance(&self, s: &ESet, gen: u32, p: &Provenance) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::Provenance(msg));
        let [a, b] = match p {
            Provenance::Initial if gen == 0 => return Ok(()),
            Provenance::Initial => return bad(format!("initial set {s} in generation {gen}")),
            _ if gen == 0 => return bad(format!("derived set {s} in generation 0")),
            Provenance::Intersection { parents, rule } => {
                if *rule != Rule::Intersection {
                    return bad(format!("intersection {s} tagged with rule {}", rule.label()));
                }
                *parents
            }
            Provenance::Difference { parents, rule } => {
                if *rule == Rule::Intersection {
                    return bad(format!("difference {s} tagged with rule a"));
                }
                *parents
            }
        };
        let (Some(pa), Some(pb)) = (self.members.get(a), self.members.get(b)) else {
            return bad(format!("parent index out of range in ({a}, {b})"));
        };
        if pa.generation >= gen || pb.generation >= gen {
            return bad(format!("parents of {s} are not from earlier generations"));
        }
        let expected = match p {
            Provenance::Intersection { .. } => pa.set & pb.set,
            _ => pa.set - pb.set,
        };
        if expected != *s {
            return bad(format!("parents ({a}, {b}) produce {expected}, not {s}"));
        }
        Ok(())
    }

    pub fn to_document(&self) -> FamilyDocument {
        FamilyDocument {
            k: self.k(),
            sets: self
                .members
                .iter()
                .map(|m| SetRecord {
                    elements: m.set.elements(),
                    generation: m.generation,
                    provenance: m.provenance,
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &FamilyDocument) -> Result<Self, FamilyError> {
        let ground = GroundSet::new(doc.k)?;
        let mut f = Family::new(ground);
        for (pos, rec) in doc.sets.iter().enumerate() {
            let mut sorted = rec.elements.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(FamilyError::Malformed(format!(
                    "set #{pos} lists an element twice"
                )));
            }
            let s = ground.set_of(sorted)?;
            f.insert(s, rec.generation, rec.provenance)?;
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("family document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let doc: FamilyDocument =
            serde_json::from_str(text).map_err(|e| FamilyError::Malformed(e.to_string()))?;
        Family::from_document(&doc)
    }
}

/// On-disk form of a [`Family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub k: u32,
    pub sets: Vec<SetRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetRecord {
    pub elements: Vec<Element>,
    pub generation: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}
