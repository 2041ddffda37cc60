//! The hypercube ground set `V = {0,1}^k` and dense subsets of it.
//!
//! Elements are integer ids in `[0, 2^k)`. Bit `j - 1` of an id is
//! coordinate `j` of the vector, so the unit-vector of coordinate `i` is
//! `2^(i-1)` and the all-ones vector is `2^k - 1`. A subset of `V` is an
//! [`ESet`]: a `2^k`-bit membership mask tagged with the `k` it lives in.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Serialize, Serializer};

use crate::config::STORAGE_MAX_K;
use crate::error::GroundError;

pub type Element = u32;

/// Membership mask; bit `e` is set iff element `e` is in the set.
pub type Mask = u128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    k: u32,
}

impl GroundSet {
    pub fn new(k: u32) -> Result<Self, GroundError> {
        if k == 0 || k > STORAGE_MAX_K {
            return Err(GroundError::BadLength {
                k,
                max: STORAGE_MAX_K,
            });
        }
        Ok(GroundSet { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, `2^k`.
    pub fn n(&self) -> usize {
        1usize << self.k
    }

    pub fn full_mask(&self) -> Mask {
        if self.n() == 128 {
            Mask::MAX
        } else {
            (1u128 << self.n()) - 1
        }
    }

    pub fn empty(&self) -> ESet {
        ESet::raw(*self, 0)
    }

    pub fn full(&self) -> ESet {
        ESet::raw(*self, self.full_mask())
    }

    fn check_element(&self, e: Element) -> Result<(), GroundError> {
        if (e as usize) < self.n() {
            Ok(())
        } else {
            Err(GroundError::ElementOutOfRange {
                element: e,
                n: self.n(),
            })
        }
    }

    fn check_coordinate(&self, i: usize) -> Result<(), GroundError> {
        if (1..=self.k as usize).contains(&i) {
            Ok(())
        } else {
            Err(GroundError::CoordinateOutOfRange { index: i, k: self.k })
        }
    }

    /// `V_i`: every vector whose `i`-th coordinate is 1.
    pub fn coordinate_set(&self, i: usize) -> Result<ESet, GroundError> {
        self.check_coordinate(i)?;
        let bit = 1u32 << (i - 1);
        let mask = (0..self.n() as u32)
            .filter(|e| e & bit != 0)
            .fold(0, |m, e| m | (1u128 << e));
        Ok(ESet::raw(*self, mask))
    }

    /// All coordinate sets `V_1, ..., V_k` in index order.
    pub fn coordinate_sets(&self) -> Vec<ESet> {
        (1..=self.k as usize)
            .map(|i| self.coordinate_set(i).expect("index in range"))
            .collect()
    }

    /// The coordinate `i` for which `e` is the unit-vector, if any.
    pub fn unit_index(&self, e: Element) -> Result<Option<usize>, GroundError> {
        self.check_element(e)?;
        Ok(if e.is_power_of_two() {
            Some(e.trailing_zeros() as usize + 1)
        } else {
            None
        })
    }

    /// The unit-vector of coordinate `i`.
    pub fn unit_vector(&self, i: usize) -> Result<Element, GroundError> {
        self.check_coordinate(i)?;
        Ok(1 << (i - 1))
    }

    /// The vector whose 1-coordinates are exactly `indices`.
    pub fn vec_of_indexset(&self, indices: &[usize]) -> Result<Element, GroundError> {
        indices.iter().try_fold(0, |acc, &j| {
            self.check_coordinate(j)?;
            Ok(acc | (1 << (j - 1)))
        })
    }

    pub fn set_of<I: IntoIterator<Item = Element>>(&self, elements: I) -> Result<ESet, GroundError> {
        let mut mask = 0;
        for e in elements {
            self.check_element(e)?;
            mask |= 1u128 << e;
        }
        Ok(ESet::raw(*self, mask))
    }

    pub fn set_from_mask(&self, mask: Mask) -> Result<ESet, GroundError> {
        if mask & !self.full_mask() != 0 {
            let e = (mask & !self.full_mask()).trailing_zeros();
            return Err(GroundError::ElementOutOfRange {
                element: e,
                n: self.n(),
            });
        }
        Ok(ESet::raw(*self, mask))
    }

    /// Unit-vector mask: bit `2^(i-1)` for every coordinate `i`.
    pub(crate) fn units_mask(&self) -> Mask {
        (0..self.k).fold(0, |m, i| m | (1u128 << (1u32 << i)))
    }
}

/// A subset of a [`GroundSet`]. Equality is equality of membership masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ESet {
    ground: GroundSet,
    bits: Mask,
}

/// The derived sets of a pair `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetAlgebra {
    pub inter: ESet,
    pub union: ESet,
    pub diff_ab: ESet,
    pub diff_ba: ESet,
    pub complement_a: ESet,
}

impl ESet {
    pub(crate) fn raw(ground: GroundSet, bits: Mask) -> Self {
        ESet { ground, bits }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn mask(&self) -> Mask {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.ground.full_mask()
    }

    /// Neither empty nor all of `V`.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    pub fn contains(&self, e: Element) -> bool {
        (e as usize) < self.ground.n() && self.bits >> e & 1 == 1
    }

    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.bits;
        while m != 0 {
            out.push(m.trailing_zeros());
            m &= m - 1;
        }
        out
    }

    pub fn is_subset(&self, other: &ESet) -> bool {
        self.assert_same(other);
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset(&self, other: &ESet) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    pub fn complement(&self) -> ESet {
        ESet::raw(self.ground, !self.bits & self.ground.full_mask())
    }

    /// Coordinates whose unit-vector lies in this set, ascending.
    pub fn unit_indices(&self) -> Vec<usize> {
        let m = self.bits & self.ground.units_mask();
        (0..self.ground.k as usize)
            .filter(|i| m >> (1u32 << i) & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// The coordinate of the single unit-vector in this set, or `None` when
    /// the set holds zero or several unit-vectors.
    pub fn sole_unit_index(&self) -> Option<usize> {
        let m = self.bits & self.ground.units_mask();
        if m.count_ones() == 1 {
            let e = m.trailing_zeros();
            Some(e.trailing_zeros() as usize + 1)
        } else {
            None
        }
    }

    pub fn has_unit_vector(&self) -> bool {
        self.bits & self.ground.units_mask() != 0
    }

    /// Checked version of the four derived sets plus the complement of `self`.
    pub fn set_algebra(&self, other: &ESet) -> Result<SetAlgebra, GroundError> {
        self.check_same(other)?;
        Ok(SetAlgebra {
            inter: *self & *other,
            union: *self | *other,
            diff_ab: *self - *other,
            diff_ba: *other - *self,
            complement_a: self.complement(),
        })
    }

    /// Checked crossing test; see [`ESet::crosses`].
    pub fn try_crosses(&self, other: &ESet) -> Result<bool, GroundError> {
        self.check_same(other)?;
        Ok(crosses_mask(self.bits, other.bits, self.ground.full_mask()))
    }

    /// `A` and `B` cross when `A∩B`, `V−(A∪B)`, `A−B` and `B−A` are all
    /// non-empty. Panics if the sets live in different ground sets.
    pub fn crosses(&self, other: &ESet) -> bool {
        self.assert_same(other);
        crosses_mask(self.bits, other.bits, self.ground.full_mask())
    }

    fn check_same(&self, other: &ESet) -> Result<(), GroundError> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(GroundError::Mismatch {
                left: self.ground.k,
                right: other.ground.k,
            })
        }
    }

    fn assert_same(&self, other: &ESet) {
        assert_eq!(
            self.ground, other.ground,
            "set operation across different ground sets"
        );
    }
}

pub(crate) fn crosses_mask(a: Mask, b: Mask, full: Mask) -> bool {
    a & b != 0 && a & !b != 0 && b & !a != 0 && full & !(a | b) != 0
}

impl BitAnd for ESet {
    type Output = ESet;
    fn bitand(self, rhs: ESet) -> ESet {
        self.assert_same(&rhs);
        ESet::raw(self.ground, self.bits & rhs.bits)
    }
}

impl BitOr for ESet {
    type Output = ESet;
    fn bitor(self, rhs: ESet) -> ESet {
        self.assert_same(&rhs);
        ESet::raw(self.ground, self.bits | rhs.bits)
    }
}

impl Sub for ESet {
    type Output = ESet;
    fn sub(self, rhs: ESet) -> ESet {
        self.assert_same(&rhs);
        ESet::raw(self.ground, self.bits & !rhs.bits)
    }
}

impl Not for ESet {
    type Output = ESet;
    fn not(self) -> ESet {
        self.complement()
    }
}

impl fmt::Display for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ESet(k={}, {})", self.ground.k, self)
    }
}

impl Serialize for ESet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}
