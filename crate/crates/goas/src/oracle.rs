//! Brute-force ground truth.
//!
//! Enumerates every rooted subtree, evaluates each one directly and
//! keeps the best.  Exponential by design and kept deliberately free of
//! pruning: this module is the reference every solver is checked
//! against, so it must stay obviously correct.

use std::fmt;

use crate::instance::{Instance, Strategy};
use crate::solvers::{OpCounts, SolveResult, SolverTag};
use crate::tree::PlantedPlaneTree;

/// Beyond this many non-root vertices the enumeration refuses to run
/// (override with the `_with_cap` variants, or `GOAS_ORACLE_CAP` in the
/// CLI).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { n: usize, cap: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { n, cap } => {
                write!(f, "{n} non-root vertices exceed the enumeration cap {cap}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Streams every vertex set that contains the root and is closed under
/// parents, each exactly once.
///
/// A subset of the non-root vertices is encoded as a bitmask; a mask is
/// emitted iff every member's parent is the root or also a member.
pub struct SubtreeEnumerator<'a> {
    tree: &'a PlantedPlaneTree,
    /// Non-root vertices, bit position -> vertex index.
    non_root: Vec<usize>,
    /// Bit position of each vertex's parent, or `None` for the root.
    parent_bit: Vec<Option<usize>>,
    next_mask: u64,
    end: u64,
}

impl<'a> SubtreeEnumerator<'a> {
    fn new(tree: &'a PlantedPlaneTree, cap: usize) -> Result<Self, OracleError> {
        let n = tree.non_root_count();
        if n > cap || n >= 63 {
            return Err(OracleError::TooLarge { n, cap });
        }
        let non_root: Vec<usize> = tree
            .vertex_indices()
            .filter(|&v| v != tree.root())
            .collect();
        let mut bit_of = vec![usize::MAX; tree.vertex_count()];
        for (bit, &v) in non_root.iter().enumerate() {
            bit_of[v] = bit;
        }
        let parent_bit = non_root
            .iter()
            .map(|&v| {
                let p = tree.parent(v).expect("non-root vertex has a parent");
                if p == tree.root() {
                    None
                } else {
                    Some(bit_of[p])
                }
            })
            .collect();
        Ok(SubtreeEnumerator {
            tree,
            non_root,
            parent_bit,
            next_mask: 0,
            end: 1u64 << n,
        })
    }
}

impl Iterator for SubtreeEnumerator<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            let closed = (0..self.non_root.len()).all(|bit| {
                mask & (1 << bit) == 0
                    || match self.parent_bit[bit] {
                        None => true,
                        Some(pb) => mask & (1 << pb) != 0,
                    }
            });
            if closed {
                let mut set = vec![self.tree.root()];
                for (bit, &v) in self.non_root.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        set.push(v);
                    }
                }
                return Some(set);
            }
        }
        None
    }
}

/// Enumerates rooted subtrees under the default cap.
pub fn enumerate_rooted_subtrees(
    tree: &PlantedPlaneTree,
) -> Result<SubtreeEnumerator<'_>, OracleError> {
    SubtreeEnumerator::new(tree, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates rooted subtrees under an explicit cap.
pub fn enumerate_rooted_subtrees_with_cap(
    tree: &PlantedPlaneTree,
    cap: usize,
) -> Result<SubtreeEnumerator<'_>, OracleError> {
    SubtreeEnumerator::new(tree, cap)
}

/// Exact optimum by exhaustive scan, with the default cap.
pub fn brute_force_optimum(inst: &Instance) -> Result<SolveResult, OracleError> {
    brute_force_optimum_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

/// Exact optimum by exhaustive scan.
///
/// Ties on the prize are broken toward the lexicographically smallest
/// sorted vertex-id set, so results are deterministic and comparable
/// across solvers only by value.
pub fn brute_force_optimum_with_cap(
    inst: &Instance,
    cap: usize,
) -> Result<SolveResult, OracleError> {
    let tree = inst.tree();
    let mut ops = OpCounts::default();
    let mut enumerated = 0u64;
    let mut best: Option<(Strategy, Vec<String>)> = None;

    for set in SubtreeEnumerator::new(tree, cap)? {
        enumerated += 1;
        let strategy = Strategy::new(inst, &set).expect("enumerator emits rooted subtrees");
        ops.additions += 2 * set.len() as u64; // cost and prize sums
        ops.comparisons += 1; // feasibility
        if strategy.cost > *inst.budget() {
            continue;
        }
        match &mut best {
            None => {
                let ids = sorted_ids(inst, &strategy);
                best = Some((strategy, ids));
            }
            Some((incumbent, incumbent_ids)) => {
                ops.comparisons += 1;
                if strategy.prize > incumbent.prize {
                    let ids = sorted_ids(inst, &strategy);
                    *incumbent = strategy;
                    *incumbent_ids = ids;
                } else if strategy.prize == incumbent.prize {
                    let ids = sorted_ids(inst, &strategy);
                    if ids < *incumbent_ids {
                        *incumbent = strategy;
                        *incumbent_ids = ids;
                    }
                }
            }
        }
    }

    let (strategy, _) = best.expect("the root-only subtree is always feasible");
    Ok(SolveResult {
        prize: strategy.prize.clone(),
        goas_met: strategy.prize >= *inst.threshold(),
        strategy,
        ops,
        solver: SolverTag::Oracle { enumerated },
    })
}

fn sorted_ids(inst: &Instance, s: &Strategy) -> Vec<String> {
    let mut ids: Vec<String> = s
        .vertices
        .iter()
        .map(|&v| inst.tree().id(v).to_string())
        .collect();
    ids.sort_unstable();
    ids
}

/// Independent count of rooted subtrees: each vertex contributes the
/// choice of being absent or present with any combination of its
/// children's choices, so s(u) = 1 + Π s(child) and the emitted count
/// is s(root) − 1 (the root cannot be absent).
pub fn subtree_count_recurrence(tree: &PlantedPlaneTree) -> u128 {
    fn s(tree: &PlantedPlaneTree, u: usize) -> u128 {
        1 + tree
            .children(u)
            .iter()
            .map(|&c| s(tree, c))
            .product::<u128>()
    }
    s(tree, tree.root()) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::testutil::{instance, strategy_ids};

    #[test]
    fn star_emits_all_leaf_subsets() {
        let inst = instance(
            &[("r", "0"), ("a", "1"), ("b", "2"), ("c", "3")],
            &[("r", "a", "1"), ("r", "b", "1"), ("r", "c", "1")],
            "3",
            "0",
        );
        let subtrees: Vec<_> = enumerate_rooted_subtrees(inst.tree()).unwrap().collect();
        assert_eq!(subtrees.len(), 8);
        assert_eq!(subtree_count_recurrence(inst.tree()), 8);
    }

    #[test]
    fn path_emits_prefixes_only() {
        let inst = instance(
            &[("r", "0"), ("a", "1"), ("b", "2"), ("c", "3"), ("d", "4")],
            &[("r", "a", "1"), ("a", "b", "1"), ("b", "c", "1"), ("c", "d", "1")],
            "4",
            "0",
        );
        let subtrees: Vec<_> = enumerate_rooted_subtrees(inst.tree()).unwrap().collect();
        assert_eq!(subtrees.len(), 5);
        assert_eq!(subtree_count_recurrence(inst.tree()), 5);
    }

    #[test]
    fn root_only_tree() {
        let inst = instance(&[("r", "9")], &[], "0", "0");
        let res = brute_force_optimum(&inst).unwrap();
        assert_eq!(res.prize, rat(9));
        assert_eq!(res.strategy.cost, rat(0));
        assert_eq!(strategy_ids(&inst, &res.strategy), ["r"]);
    }

    #[test]
    fn star_optimum() {
        let inst = instance(
            &[("r", "0"), ("a", "5"), ("b", "3"), ("c", "2"), ("d", "8")],
            &[("r", "a", "1"), ("r", "b", "1"), ("r", "c", "1"), ("r", "d", "1")],
            "2",
            "0",
        );
        let res = brute_force_optimum(&inst).unwrap();
        assert_eq!(res.prize, rat(13));
        assert_eq!(strategy_ids(&inst, &res.strategy), ["a", "d", "r"]);
        match res.solver {
            SolverTag::Oracle { enumerated } => assert_eq!(enumerated, 16),
            _ => unreachable!(),
        }
    }

    #[test]
    fn ample_budget_takes_everything() {
        let inst = instance(
            &[("r", "1"), ("a", "5"), ("b", "3")],
            &[("r", "a", "1"), ("a", "b", "1")],
            "100",
            "0",
        );
        let res = brute_force_optimum(&inst).unwrap();
        assert_eq!(res.prize, rat(9));
        assert_eq!(res.strategy.vertices.len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let vertices: Vec<(String, crate::rational::Rational)> = (0..=21)
            .map(|i| (format!("v{i}"), rat(1)))
            .collect();
        let edges: Vec<(String, String, crate::rational::Rational)> = (1..=21)
            .map(|i| (format!("v{}", i - 1), format!("v{i}"), rat(1)))
            .collect();
        let inst =
            crate::instance::build_instance(&vertices, &edges, "v0", rat(5), rat(0)).unwrap();
        assert_eq!(
            brute_force_optimum(&inst).unwrap_err(),
            OracleError::TooLarge { n: 21, cap: 20 }
        );
        assert!(brute_force_optimum_with_cap(&inst, 21).is_ok());
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Two leaves with equal prize; only one fits the budget.
        let inst = instance(
            &[("r", "0"), ("z", "4"), ("b", "4")],
            &[("r", "z", "1"), ("r", "b", "1")],
            "1",
            "0",
        );
        let res = brute_force_optimum(&inst).unwrap();
        assert_eq!(strategy_ids(&inst, &res.strategy), ["b", "r"]);
    }
}
