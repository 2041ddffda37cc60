//! Exact search for a partition of a family into uncrossable sub-families,
//! and the clique of coordinate-set pairs that forces at least `k` blocks.

use serde::Serialize;

use super::is_uncrossable;
use crate::error::CheckError;
use crate::family::Family;
use crate::ground::ESet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PartitionOutcome {
    /// Blocks of member indices; every block is uncrossable.
    Found { blocks: Vec<Vec<usize>> },
    /// The exhaustive search proved that no partition exists.
    Impossible { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl PartitionOutcome {
    pub fn blocks(&self) -> Option<&[Vec<usize>]> {
        match self {
            PartitionOutcome::Found { blocks } => Some(blocks),
            _ => None,
        }
    }
}

/// Members that must share a block with a pair for one uncrossing clause to
/// hold. `None` when a required set is not a member at all.
#[derive(Clone, Copy)]
struct PairNeeds {
    meet_join: Option<[usize; 2]>,
    differences: Option<[usize; 2]>,
}

struct Search<'a> {
    needs: Vec<Vec<PairNeeds>>,
    /// For each member `m`, the pairs whose needs mention `m`.
    dependents: Vec<Vec<(usize, usize)>>,
    order: Vec<usize>,
    block_of: Vec<Option<usize>>,
    blocks: Vec<Vec<usize>>,
    max_blocks: usize,
    nodes: u64,
    budget: u64,
    family: &'a Family,
}

enum Step {
    Found,
    Exhausted,
    Fail,
}

impl Search<'_> {
    fn need(&self, p: usize, q: usize) -> PairNeeds {
        if p < q {
            self.needs[p][q - p - 1]
        } else {
            self.needs[q][p - q - 1]
        }
    }

    fn clause_alive(&self, req: Option<[usize; 2]>, block: usize) -> bool {
        match req {
            None => false,
            Some(ms) => ms.iter().all(|&m| self.block_of[m].is_none_or(|b| b == block)),
        }
    }

    fn pair_alive(&self, p: usize, q: usize, block: usize) -> bool {
        let n = self.need(p, q);
        self.clause_alive(n.meet_join, block) || self.clause_alive(n.differences, block)
    }

    fn consistent_after(&self, m: usize) -> bool {
        let b = self.block_of[m].expect("just assigned");
        if !self.blocks[b].iter().all(|&p| p == m || self.pair_alive(p, m, b)) {
            return false;
        }
        self.dependents[m].iter().all(|&(p, q)| match (self.block_of[p], self.block_of[q]) {
            (Some(bp), Some(bq)) if bp == bq => self.pair_alive(p, q, bp),
            _ => true,
        })
    }

    fn run(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Exhausted;
        }
        let m = self.order[depth];
        // Blocks are interchangeable: open at most one new block per level.
        let open = (self.blocks.len() + 1).min(self.max_blocks);
        for b in 0..open {
            if b == self.blocks.len() {
                self.blocks.push(Vec::new());
            }
            self.blocks[b].push(m);
            self.block_of[m] = Some(b);
            if self.consistent_after(m) {
                match self.run(depth + 1) {
                    Step::Fail => {}
                    done => return done,
                }
            }
            self.block_of[m] = None;
            self.blocks[b].pop();
            if self.blocks[b].is_empty() {
                self.blocks.pop();
            }
        }
        Step::Fail
    }
}

/// Partition `f` into at most `d` uncrossable sub-families, if possible.
///
/// Members are placed in decreasing order of their degree in the conflict
/// graph (pairs that can never share a block). A branch is cut as soon as
/// some pair inside a block has lost both uncrossing clauses.
pub fn partition_uncrossable(f: &Family, d: usize, node_budget: u64) -> PartitionOutcome {
    let n = f.len();
    if n == 0 {
        return PartitionOutcome::Found { blocks: Vec::new() };
    }
    if d == 0 {
        return PartitionOutcome::Impossible { nodes: 0 };
    }
    let sets: Vec<ESet> = f.sets().collect();
    let pos = |s: ESet| f.contains(&s).then(|| f.position(&s)).flatten();
    let both = |x: ESet, y: ESet| Some([pos(x)?, pos(y)?]);

    let mut needs = Vec::with_capacity(n);
    let mut dependents = vec![Vec::new(); n];
    let mut degree = vec![0usize; n];
    for p in 0..n {
        let mut row = Vec::with_capacity(n - p - 1);
        for q in p + 1..n {
            let (a, b) = (sets[p], sets[q]);
            let pn = PairNeeds {
                meet_join: both(a & b, a | b),
                differences: both(a - b, b - a),
            };
            if pn.meet_join.is_none() && pn.differences.is_none() {
                degree[p] += 1;
                degree[q] += 1;
            }
            for m in pn.meet_join.into_iter().chain(pn.differences).flatten() {
                if m != p && m != q {
                    dependents[m].push((p, q));
                }
            }
            row.push(pn);
        }
        needs.push(row);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&m| (std::cmp::Reverse(degree[m]), m));

    let mut search = Search {
        needs,
        dependents,
        order,
        block_of: vec![None; n],
        blocks: Vec::new(),
        max_blocks: d,
        nodes: 0,
        budget: node_budget,
        family: f,
    };
    match search.run(0) {
        Step::Found => {
            let mut blocks = search.blocks;
            for b in &mut blocks {
                b.sort_unstable();
            }
            blocks.sort();
            debug_assert!(blocks.iter().all(|b| block_is_uncrossable(search.family, b)));
            PartitionOutcome::Found { blocks }
        }
        Step::Exhausted => PartitionOutcome::BudgetExhausted { nodes: search.nodes },
        Step::Fail => PartitionOutcome::Impossible { nodes: search.nodes },
    }
}

/// Rebuild a block as its own family and run the uncrossability checker on it.
pub(crate) fn block_is_uncrossable(f: &Family, block: &[usize]) -> bool {
    let sub = Family::from_sets(f.ground(), block.iter().map(|&i| f.set(i))).expect("distinct members");
    is_uncrossable(&sub).ok
}

/// A coordinate-set pair `(V_i, V_j)`, `i < j`, that cannot share an
/// uncrossable block: `V_i ∪ V_j` and `V_i − V_j` must both be non-members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConflictPair {
    pub i: usize,
    pub j: usize,
    pub members: [usize; 2],
    pub union: ESet,
    pub difference: ESet,
    pub union_absent: bool,
    pub difference_absent: bool,
}

impl ConflictPair {
    pub fn verified(&self) -> bool {
        self.union_absent && self.difference_absent
    }
}

/// Every pair `(V_i, V_j)`, `i < j`, of the seed with its two non-membership
/// facts evaluated.
pub fn conflict_witness(f: &Family) -> Result<Vec<ConflictPair>, CheckError> {
    let g = f.ground();
    let coords = g.coordinate_sets();
    let mut members = Vec::with_capacity(coords.len());
    for (i, v) in coords.iter().enumerate() {
        match f.position(v).filter(|&p| f.members()[p].generation == 0) {
            Some(p) => members.push(p),
            None => {
                return Err(CheckError::NotSeeded(format!(
                    "V_{} is missing from generation 0",
                    i + 1
                )))
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let union = coords[i] | coords[j];
            let difference = coords[i] - coords[j];
            out.push(ConflictPair {
                i: i + 1,
                j: j + 1,
                members: [members[i], members[j]],
                union,
                difference,
                union_absent: !f.contains(&union),
                difference_absent: !f.contains(&difference),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{construct_family, Config, GroundSet, TieBreak};

    const BUDGET: u64 = 10_000_000;

    fn k3() -> Family {
        construct_family(3, TieBreak::LexMin, &Config::default()).unwrap()
    }

    #[test]
    fn two_blocks_are_not_enough_for_k3() {
        assert!(matches!(
            partition_uncrossable(&k3(), 2, BUDGET),
            PartitionOutcome::Impossible { .. }
        ));
    }

    #[test]
    fn singleton_blocks_always_work() {
        let f = k3();
        let out = partition_uncrossable(&f, f.len(), BUDGET);
        let blocks = out.blocks().unwrap();
        assert!(blocks.iter().all(|b| block_is_uncrossable(&f, b)));
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..f.len()).collect::<Vec<_>>());
    }

    #[test]
    fn budget_is_reported() {
        let f = k3();
        assert!(matches!(
            partition_uncrossable(&f, f.len(), 3),
            PartitionOutcome::BudgetExhausted { nodes: 4 }
        ));
    }

    #[test]
    fn empty_family_and_zero_blocks() {
        let g = GroundSet::new(3).unwrap();
        let empty = Family::new(g);
        assert_eq!(
            partition_uncrossable(&empty, 1, BUDGET),
            PartitionOutcome::Found { blocks: vec![] }
        );
        assert!(matches!(
            partition_uncrossable(&k3(), 0, BUDGET),
            PartitionOutcome::Impossible { .. }
        ));
    }

    #[test]
    fn conflict_clique_k3_and_k4() {
        let pairs = conflict_witness(&k3()).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(ConflictPair::verified));
        let f4 = construct_family(4, TieBreak::LexMin, &Config::default()).unwrap();
        let pairs = conflict_witness(&f4).unwrap();
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(ConflictPair::verified));
    }

    #[test]
    fn conflict_needs_the_seed() {
        let g = GroundSet::new(3).unwrap();
        let f = Family::from_sets(g, [g.coordinate_set(1).unwrap(), g.coordinate_set(3).unwrap()]).unwrap();
        assert!(matches!(conflict_witness(&f), Err(CheckError::NotSeeded(_))));
    }
}
