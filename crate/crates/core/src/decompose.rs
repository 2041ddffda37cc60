//! Rewriting a unit-vector member as nested differences of coordinate sets.
//!
//! A member `S` of generation `ℓ >= 1` holding the unit-vector `v_{i}` is a
//! difference `S' − S''` of a crossing member pair, where `S'` holds `v_{i}`
//! and comes from generation `<= ℓ`, and `S''` holds a unit-vector of a
//! smaller coordinate and comes from generation `< ℓ`. Applying this
//! recursively bottoms out in coordinate sets: the leftmost leaf is `V_i`
//! and every other leaf is some `V_j` with `j < i`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::ExpressError;
use crate::family::{Family, Provenance};
use crate::ground::ESet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum ExpressionTree {
    /// The coordinate set `V_index`.
    Leaf { index: usize, value: ESet },
    /// `value = left − right`.
    Diff {
        left: Box<ExpressionTree>,
        right: Box<ExpressionTree>,
        value: ESet,
    },
}

impl ExpressionTree {
    pub fn value(&self) -> ESet {
        match self {
            ExpressionTree::Leaf { value, .. } | ExpressionTree::Diff { value, .. } => *value,
        }
    }

    /// Recompute the set bottom-up from the leaves, ignoring cached values.
    pub fn evaluate(&self) -> ESet {
        match self {
            ExpressionTree::Leaf { value, .. } => *value,
            ExpressionTree::Diff { left, right, .. } => left.evaluate() - right.evaluate(),
        }
    }

    /// Leaf indices from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ExpressionTree::Leaf { index, .. } => out.push(*index),
            ExpressionTree::Diff { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ExpressionTree::Leaf { .. } => 0,
            ExpressionTree::Diff { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

/// Parenthesized text form, e.g. `(V3 - (V2 - V1))`.
impl fmt::Display for ExpressionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpressionTree::Leaf { index, .. } => write!(f, "V{index}"),
            ExpressionTree::Diff { left, right, .. } => write!(f, "({left} - {right})"),
        }
    }
}

struct Expander<'a> {
    family: &'a Family,
    memo: HashMap<usize, ExpressionTree>,
}

impl Expander<'_> {
    fn describe(&self, idx: usize) -> String {
        self.family.set(idx).to_string()
    }

    fn leaf(&self, idx: usize) -> Result<ExpressionTree, ExpressError> {
        let s = self.family.set(idx);
        let g = self.family.ground();
        (1..=g.k() as usize)
            .find(|&j| g.coordinate_set(j).is_ok_and(|v| v == s))
            .map(|index| ExpressionTree::Leaf { index, value: s })
            .ok_or_else(|| ExpressError::NoRewrite(self.describe(idx)))
    }

    /// Does `(a, b)` rewrite member `idx` (holding `v_{i}`, generation `gen`)?
    fn fits(&self, idx: usize, i: usize, a: usize, b: usize) -> bool {
        let f = self.family;
        let (s, gen) = (f.set(idx), f.members()[idx].generation);
        let (sa, sb) = (f.set(a), f.set(b));
        let (ga, gb) = (f.members()[a].generation, f.members()[b].generation);
        ga <= gen
            && gb < gen
            && a != idx
            && sa.sole_unit_index() == Some(i)
            && sb.sole_unit_index().is_some_and(|j| j < i)
            && sa.crosses(&sb)
            && sa - sb == s
    }

    fn split(&self, idx: usize, i: usize) -> Result<(usize, usize), ExpressError> {
        let f = self.family;
        if let Some(Provenance::Difference { parents: [a, b], .. }) = f.members()[idx].provenance {
            if self.fits(idx, i, a, b) {
                return Ok((a, b));
            }
        }
        let s = f.set(idx);
        let gen = f.members()[idx].generation;
        let outer: Vec<usize> = (0..f.len())
            .filter(|&a| a != idx && f.members()[a].generation <= gen && s.is_proper_subset(&f.set(a)))
            .collect();
        let mut best: Option<((u32, u32, u128, u128), (usize, usize))> = None;
        for b in 0..f.len() {
            if f.members()[b].generation >= gen {
                continue;
            }
            for &a in &outer {
                if self.fits(idx, i, a, b) {
                    let key = (
                        f.members()[b].generation,
                        f.members()[a].generation,
                        f.set(a).mask(),
                        f.set(b).mask(),
                    );
                    if best.is_none_or(|(k, _)| key < k) {
                        best = Some((key, (a, b)));
                    }
                }
            }
        }
        best.map(|(_, pair)| pair)
            .ok_or_else(|| ExpressError::NoRewrite(self.describe(idx)))
    }

    fn expand(&mut self, idx: usize) -> Result<ExpressionTree, ExpressError> {
        if let Some(t) = self.memo.get(&idx) {
            return Ok(t.clone());
        }
        let member = &self.family.members()[idx];
        let tree = if member.generation == 0 {
            self.leaf(idx)?
        } else {
            let i = member
                .set
                .sole_unit_index()
                .ok_or_else(|| ExpressError::NoRewrite(self.describe(idx)))?;
            let (a, b) = self.split(idx, i)?;
            let left = self.expand(a)?;
            let right = self.expand(b)?;
            ExpressionTree::Diff {
                left: Box::new(left),
                right: Box::new(right),
                value: member.set,
            }
        };
        self.memo.insert(idx, tree.clone());
        Ok(tree)
    }
}

/// Rewrite member `idx` as a nested difference of coordinate sets.
///
/// Recorded provenance is used when it already has the required shape;
/// otherwise every member pair is searched, preferring the pair with the
/// oldest `S''`, then the oldest `S'`, then the smallest `S'` mask.
pub fn express(f: &Family, idx: usize) -> Result<ExpressionTree, ExpressError> {
    let member = f.member(idx).ok_or(ExpressError::NoSuchMember(idx))?;
    let s = member.set;
    match s.unit_indices().len() {
        0 => return Err(ExpressError::NoUnitVector(s.to_string())),
        1 => {}
        _ => return Err(ExpressError::SeveralUnitVectors(s.to_string())),
    }
    if member.generation == 0 {
        return Err(ExpressError::CoordinateSet(s.to_string()));
    }
    Expander {
        family: f,
        memo: HashMap::new(),
    }
    .expand(idx)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpressionVerdict {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Check that `t` evaluates to `s`, its leftmost leaf is `V_i`, every other
/// leaf is `V_j` with `j < i`, and both operands of every difference cross.
pub fn verify_expression(t: &ExpressionTree, s: ESet, i: usize) -> ExpressionVerdict {
    let mut reasons = Vec::new();
    let value = t.evaluate();
    if value != s {
        reasons.push(format!("evaluates to {value}, expected {s}"));
    }
    let leaves = t.leaves();
    if leaves[0] != i {
        reasons.push(format!("leftmost leaf is V{}, expected V{i}", leaves[0]));
    }
    for &j in &leaves[1..] {
        if j >= i {
            reasons.push(format!("leaf V{j} does not have index below {i}"));
        }
    }
    check_nodes(t, s.ground(), &mut reasons);
    ExpressionVerdict {
        ok: reasons.is_empty(),
        reasons,
    }
}

fn check_nodes(t: &ExpressionTree, g: crate::GroundSet, reasons: &mut Vec<String>) {
    match t {
        ExpressionTree::Leaf { index, value } => {
            if g.coordinate_set(*index).ok() != Some(*value) {
                reasons.push(format!("leaf V{index} carries {value}"));
            }
        }
        ExpressionTree::Diff { left, right, value } => {
            let (l, r) = (left.evaluate(), right.evaluate());
            if !l.crosses(&r) {
                reasons.push(format!("operands {l} and {r} do not cross"));
            }
            if l - r != *value {
                reasons.push(format!("node caches {value}, evaluates to {}", l - r));
            }
            check_nodes(left, g, reasons);
            check_nodes(right, g, reasons);
        }
    }
}
