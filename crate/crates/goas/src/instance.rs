//! Problem instances: a planted plane tree with penetration costs on
//! edges, prizes on vertices, a budget and a game-over threshold.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::tree::{BuildError, PlantedPlaneTree};

/// A full problem instance.  Immutable after construction; solvers
/// share it read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    tree: PlantedPlaneTree,
    /// Cost of the parent edge e(u), indexed by the child vertex u.
    /// The root's slot holds 0 (c(e(r)) = 0 by convention).
    cost: Vec<Rational>,
    prize: Vec<Rational>,
    budget: Rational,
    threshold: Rational,
}

/// Validates and assembles an instance.
///
/// Sibling order is taken from the edge-list order.  Costs must be
/// non-negative; prizes may be any rational (the root's prize counts
/// toward every strategy).
pub fn build_instance(
    vertices: &[(String, Rational)],
    edges: &[(String, String, Rational)],
    root: &str,
    budget: Rational,
    threshold: Rational,
) -> Result<Instance, BuildError> {
    if budget.is_negative() {
        return Err(BuildError::NegativeBudget);
    }
    let ids: Vec<String> = vertices.iter().map(|(id, _)| id.clone()).collect();
    let plain_edges: Vec<(String, String)> = edges
        .iter()
        .map(|(p, c, _)| (p.clone(), c.clone()))
        .collect();
    let tree = PlantedPlaneTree::from_edges(&ids, root, &plain_edges)?;

    let mut cost = vec![Rational::zero(); tree.vertex_count()];
    for (_, child, c) in edges {
        if c.is_negative() {
            return Err(BuildError::NegativeCost(child.clone()));
        }
        // from_edges validated the endpoint ids already
        cost[tree.index_of(child).unwrap()] = c.clone();
    }
    let mut prize = vec![Rational::zero(); tree.vertex_count()];
    for (id, p) in vertices {
        prize[tree.index_of(id).unwrap()] = p.clone();
    }
    Ok(Instance {
        tree,
        cost,
        prize,
        budget,
        threshold,
    })
}

impl Instance {
    pub fn tree(&self) -> &PlantedPlaneTree {
        &self.tree
    }

    /// Cost of the parent edge of `v`; zero for the root.
    pub fn cost(&self, v: usize) -> &Rational {
        &self.cost[v]
    }

    pub fn prize(&self, v: usize) -> &Rational {
        &self.prize[v]
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// Number of non-root vertices.
    pub fn n(&self) -> usize {
        self.tree.non_root_count()
    }

    pub fn total_cost(&self) -> Rational {
        self.cost.iter().sum()
    }

    pub fn total_prize(&self) -> Rational {
        self.prize.iter().sum()
    }

    /// Same instance under a different budget (used by budget grids).
    pub fn with_budget(&self, budget: Rational) -> Instance {
        let mut copy = self.clone();
        copy.budget = budget;
        copy
    }

    /// Same instance under a different threshold.
    pub fn with_threshold(&self, threshold: Rational) -> Instance {
        let mut copy = self.clone();
        copy.threshold = threshold;
        copy
    }

    /// Same instance with every edge cost replaced through `f`.
    pub(crate) fn map_costs(&self, mut f: impl FnMut(usize, &Rational) -> Rational) -> Instance {
        let mut copy = self.clone();
        for v in self.tree.vertex_indices() {
            if v != self.tree.root() {
                copy.cost[v] = f(v, &self.cost[v]);
            }
        }
        copy
    }

    /// The distinct edge-cost values, in first-appearance order
    /// (preorder of the child endpoints).
    pub fn cost_alphabet(&self) -> Vec<Rational> {
        let mut seen: Vec<Rational> = Vec::new();
        for v in self.tree.preorder() {
            if v == self.tree.root() {
                continue;
            }
            if !seen.contains(&self.cost[v]) {
                seen.push(self.cost[v].clone());
            }
        }
        seen
    }
}

/// Error raised when a vertex subset is not a rooted subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyError {
    /// The subset misses the root or `vertex` has no parent in the set.
    NotASubtree { vertex: String },
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::NotASubtree { vertex } => {
                write!(f, "vertex set is not a rooted subtree at {vertex:?}")
            }
        }
    }
}

impl std::error::Error for StrategyError {}

/// A rooted subtree T' given by its vertex set, with its derived cost
/// and prize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    /// Member vertex indices, sorted ascending.  Always contains the
    /// root.
    pub vertices: Vec<usize>,
    pub cost: Rational,
    pub prize: Rational,
}

impl Strategy {
    /// Validates `subset` (root present, closed under parents) and
    /// computes cost and prize from the instance.
    pub fn new(inst: &Instance, subset: &[usize]) -> Result<Strategy, StrategyError> {
        let (cost, prize) = strategy_cost_prize(inst, subset)?;
        let mut vertices: Vec<usize> = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Strategy {
            vertices,
            cost,
            prize,
        })
    }

    /// Member ids, sorted lexicographically.
    pub fn ids<'a>(&self, inst: &'a Instance) -> Vec<&'a str> {
        let mut ids: Vec<&str> = self
            .vertices
            .iter()
            .map(|&v| inst.tree().id(v))
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Cost and prize of the subtree induced by `subset`.
///
/// The subset must contain the root, and every non-root member's parent
/// must be a member.  The root's edge contributes cost 0.
pub fn strategy_cost_prize(
    inst: &Instance,
    subset: &[usize],
) -> Result<(Rational, Rational), StrategyError> {
    let tree = inst.tree();
    let mut member = vec![false; tree.vertex_count()];
    for &v in subset {
        member[v] = true;
    }
    if !member[tree.root()] {
        return Err(StrategyError::NotASubtree {
            vertex: tree.id(tree.root()).to_string(),
        });
    }
    let mut cost = Rational::zero();
    let mut prize = Rational::zero();
    for v in tree.vertex_indices() {
        if !member[v] {
            continue;
        }
        if let Some(p) = tree.parent(v) {
            if !member[p] {
                return Err(StrategyError::NotASubtree {
                    vertex: tree.id(v).to_string(),
                });
            }
            cost += inst.cost(v);
        }
        prize += inst.prize(v);
    }
    Ok((cost, prize))
}

/// Mapping from the vertices of an instance to the vertices of its
/// zero-cost contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    /// original vertex -> original index of its surviving ancestor
    survivor: Vec<usize>,
    /// original index of a survivor -> vertex index in the contracted
    /// instance (usize::MAX for non-survivors)
    contracted_index: Vec<usize>,
}

impl VertexMap {
    /// Image of an original vertex in the contracted instance.
    pub fn to_contracted(&self, original: usize) -> usize {
        self.contracted_index[self.survivor[original]]
    }

    /// Original vertices whose image lies in `contracted_set`: the
    /// union of the merged classes, which is again a rooted subtree.
    pub fn expand(&self, contracted_set: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.contracted_index.len()];
        for (orig, &ci) in self.contracted_index.iter().enumerate() {
            if ci != usize::MAX && contracted_set.contains(&ci) {
                in_set[orig] = true;
            }
        }
        (0..self.survivor.len())
            .filter(|&v| in_set[self.survivor[v]])
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.survivor.iter().enumerate().all(|(v, &s)| v == s)
    }
}

/// Contracts every zero-cost edge.
///
/// Each zero-cost child is merged into its surviving ancestor: its
/// prize is added to the survivor and its children are spliced into the
/// survivor's child list at the child's position.  The returned
/// instance has strictly positive costs on all edges.
///
/// The optimum prize at every budget is preserved when prizes are
/// non-negative.  A *negative* prize on a zero-cost child is optional
/// before contraction but forcibly lumped after it, so callers whose
/// instances carry negative prizes on zero-cost edges must not use the
/// contracted instance as an equivalent problem.
pub fn contract_zero_cost_edges(inst: &Instance) -> (Instance, VertexMap) {
    let tree = inst.tree();
    let count = tree.vertex_count();

    // Survivor of v: the nearest ancestor (possibly v itself) whose
    // parent edge has positive cost, or the root.  Preorder guarantees
    // the parent's survivor is known first.
    let mut survivor = vec![usize::MAX; count];
    for v in tree.preorder() {
        survivor[v] = match tree.parent(v) {
            Some(p) if inst.cost(v).is_zero() => survivor[p],
            _ => v,
        };
    }

    // Child list of a survivor: original children with zero-cost
    // children replaced, in place, by their own (spliced) lists.
    fn spliced_children(inst: &Instance, v: usize, out: &mut Vec<usize>) {
        for &c in inst.tree().children(v) {
            if inst.cost(c).is_zero() {
                spliced_children(inst, c, out);
            } else {
                out.push(c);
            }
        }
    }

    let survivors: Vec<usize> = (0..count).filter(|&v| survivor[v] == v).collect();
    let mut contracted_index = vec![usize::MAX; count];
    for (new_idx, &v) in survivors.iter().enumerate() {
        contracted_index[v] = new_idx;
    }

    let mut prize_sum: Vec<Rational> = vec![Rational::zero(); count];
    for v in 0..count {
        let s = survivor[v];
        let p = prize_sum[s].clone() + inst.prize(v);
        prize_sum[s] = p;
    }

    let vertices: Vec<(String, Rational)> = survivors
        .iter()
        .map(|&v| (tree.id(v).to_string(), prize_sum[v].clone()))
        .collect();
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    for &s in &survivors {
        let mut kids = Vec::new();
        spliced_children(inst, s, &mut kids);
        for c in kids {
            edges.push((
                tree.id(s).to_string(),
                tree.id(c).to_string(),
                inst.cost(c).clone(),
            ));
        }
    }

    let contracted = build_instance(
        &vertices,
        &edges,
        tree.id(survivor[tree.root()]),
        inst.budget().clone(),
        inst.threshold().clone(),
    )
    .expect("contraction of a valid instance is valid");

    (
        contracted,
        VertexMap {
            survivor,
            contracted_index,
        },
    )
}
