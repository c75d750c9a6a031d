//! Bridges from neighbouring problem statements onto instances:
//! knapsacks become stars, doubly edge-weighted unrooted trees are
//! rooted with prizes pushed to the lower endpoint, and nested
//! container models are read off as trees.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::instance::{build_instance, Instance};
use crate::rational::Rational;
use crate::tree::BuildError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    NonPositiveWeight { item: usize },
    NegativeCapacity,
    UnknownVertex(String),
    DuplicateVertex(String),
    /// The undirected edge set is not a single tree.
    NotATree(String),
    DuplicateContainer(String),
    UnknownContainer(String),
    /// Two containers depend on each other.
    NotWellFormed { a: String, b: String },
    /// A penetration list that is not the container's ancestor chain.
    NotNested { container: String },
    Build(BuildError),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::NonPositiveWeight { item } => {
                write!(f, "item {item} has non-positive weight")
            }
            ReductionError::NegativeCapacity => write!(f, "capacity must be non-negative"),
            ReductionError::UnknownVertex(id) => write!(f, "unknown vertex {id:?}"),
            ReductionError::DuplicateVertex(id) => write!(f, "duplicate vertex {id:?}"),
            ReductionError::NotATree(why) => write!(f, "input is not a tree: {why}"),
            ReductionError::DuplicateContainer(id) => write!(f, "duplicate container {id:?}"),
            ReductionError::UnknownContainer(id) => write!(f, "unknown container {id:?}"),
            ReductionError::NotWellFormed { a, b } => {
                write!(f, "containers {a:?} and {b:?} depend on each other")
            }
            ReductionError::NotNested { container } => write!(
                f,
                "penetration list of {container:?} is not its ancestor chain"
            ),
            ReductionError::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ReductionError {}

impl From<BuildError> for ReductionError {
    fn from(e: BuildError) -> Self {
        ReductionError::Build(e)
    }
}

/// A 0/1 knapsack: items with positive weights, a capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInput {
    /// (weight, value) pairs.
    pub items: Vec<(Rational, Rational)>,
    pub capacity: Rational,
}

impl KnapsackInput {
    pub fn new(items: Vec<(Rational, Rational)>, capacity: Rational) -> Result<Self, ReductionError> {
        for (i, (w, _)) in items.iter().enumerate() {
            if !w.is_positive() {
                return Err(ReductionError::NonPositiveWeight { item: i });
            }
        }
        if capacity.is_negative() {
            return Err(ReductionError::NegativeCapacity);
        }
        Ok(KnapsackInput { items, capacity })
    }
}

/// Encodes a knapsack as a star: one leaf per item, edge cost = weight,
/// leaf prize = value, budget = capacity.  Selecting leaves is exactly
/// selecting items.
pub fn knapsack_to_star(kp: &KnapsackInput, threshold: Rational) -> Instance {
    let mut vertices = vec![("r".to_string(), Rational::zero())];
    let mut edges = Vec::with_capacity(kp.items.len());
    for (i, (w, v)) in kp.items.iter().enumerate() {
        let id = format!("item{}", i + 1);
        vertices.push((id.clone(), v.clone()));
        edges.push(("r".to_string(), id, w.clone()));
    }
    build_instance(&vertices, &edges, "r", kp.capacity.clone(), threshold)
        .expect("a star with positive weights is a valid instance")
}

/// An unrooted tree carrying two edge-weight functions: `prize_weight`
/// (to maximize) and `cost_weight` (budgeted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralTreeInput {
    vertices: Vec<String>,
    /// (endpoint, endpoint, prize weight w, cost weight w′), undirected.
    edges: Vec<(String, String, Rational, Rational)>,
    pub budget: Rational,
    pub threshold: Rational,
}

impl GeneralTreeInput {
    /// Validates that the edges form one tree over `vertices`.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, Rational, Rational)>,
        budget: Rational,
        threshold: Rational,
    ) -> Result<Self, ReductionError> {
        let mut index = HashMap::new();
        for (i, id) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(ReductionError::DuplicateVertex(id.clone()));
            }
        }
        if edges.len() + 1 != vertices.len() {
            return Err(ReductionError::NotATree(format!(
                "{} vertices need {} edges, got {}",
                vertices.len(),
                vertices.len() - 1,
                edges.len()
            )));
        }
        // Union-find over the endpoints; n−1 edges without a cycle make a tree.
        let mut root: Vec<usize> = (0..vertices.len()).collect();
        fn find(root: &mut Vec<usize>, mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for (a, b, _, _) in &edges {
            let ai = *index
                .get(a)
                .ok_or_else(|| ReductionError::UnknownVertex(a.clone()))?;
            let bi = *index
                .get(b)
                .ok_or_else(|| ReductionError::UnknownVertex(b.clone()))?;
            let (ra, rb) = (find(&mut root, ai), find(&mut root, bi));
            if ra == rb {
                return Err(ReductionError::NotATree(format!(
                    "edge {a:?}-{b:?} closes a cycle"
                )));
            }
            root[ra] = rb;
        }
        Ok(GeneralTreeInput {
            vertices,
            edges,
            budget,
            threshold,
        })
    }
}

/// Roots the tree at `root_id` and pushes each edge's prize weight down
/// to the endpoint away from the root; cost weights become edge costs.
/// Maximizing the instance prize under the budget then answers the
/// two-weight subtree question.
pub fn root_general_tree(
    g: &GeneralTreeInput,
    root_id: &str,
) -> Result<Instance, ReductionError> {
    if !g.vertices.iter().any(|v| v == root_id) {
        return Err(ReductionError::UnknownVertex(root_id.to_string()));
    }
    // Adjacency in input order keeps sibling order deterministic.
    let mut adjacent: HashMap<&str, Vec<(&str, &Rational, &Rational)>> = HashMap::new();
    for (a, b, w, wc) in &g.edges {
        adjacent.entry(a).or_default().push((b, w, wc));
        adjacent.entry(b).or_default().push((a, w, wc));
    }
    let mut prize_of: HashMap<&str, Rational> = HashMap::new();
    let mut edges: Vec<(String, String, Rational)> = Vec::new();
    let mut visited: HashMap<&str, bool> =
        g.vertices.iter().map(|v| (v.as_str(), false)).collect();
    let mut queue = std::collections::VecDeque::from([root_id]);
    visited.insert(root_id, true);
    while let Some(u) = queue.pop_front() {
        if let Some(nbrs) = adjacent.get(u) {
            for &(v, w, wc) in nbrs {
                if visited[v] {
                    continue;
                }
                visited.insert(v, true);
                prize_of.insert(v, w.clone());
                edges.push((u.to_string(), v.to_string(), wc.clone()));
                queue.push_back(v);
            }
        }
    }
    let vertices: Vec<(String, Rational)> = g
        .vertices
        .iter()
        .map(|id| {
            let p = prize_of.get(id.as_str()).cloned().unwrap_or_else(Rational::zero);
            (id.clone(), p)
        })
        .collect();
    Ok(build_instance(
        &vertices,
        &edges,
        root_id,
        g.budget.clone(),
        g.threshold.clone(),
    )?)
}

/// A container declaration: penetration cost and the list of containers
/// (outermost first) that must be penetrated before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerDecl {
    pub id: String,
    pub cost: Rational,
    pub penetration: Vec<String>,
}

/// A target declaration: value and level-1 location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetDecl {
    pub id: String,
    pub value: Rational,
    pub location: String,
}

/// The container model: targets inside nested containers, a budget and
/// a threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerModel {
    pub containers: Vec<ContainerDecl>,
    pub targets: Vec<TargetDecl>,
    pub budget: Rational,
    pub threshold: Rational,
}

/// Reads a strictly nested container model off as a tree instance.
///
/// One vertex per container under a fresh root; the edge into a
/// container costs its penetration cost; a container's prize is the sum
/// of the values of the targets located in it.  Double containers
/// (containers holding only a container) are kept as they are, not
/// merged.  Partially overlapping containers cannot be represented and
/// are rejected as non-nested.
pub fn containers_to_tree(cm: &ContainerModel) -> Result<Instance, ReductionError> {
    let mut decl_of: HashMap<&str, &ContainerDecl> = HashMap::new();
    for c in &cm.containers {
        if decl_of.insert(c.id.as_str(), c).is_some() {
            return Err(ReductionError::DuplicateContainer(c.id.clone()));
        }
    }
    for c in &cm.containers {
        for dep in &c.penetration {
            let other = decl_of
                .get(dep.as_str())
                .ok_or_else(|| ReductionError::UnknownContainer(dep.clone()))?;
            if other.penetration.contains(&c.id) {
                return Err(ReductionError::NotWellFormed {
                    a: c.id.clone(),
                    b: other.id.clone(),
                });
            }
        }
    }
    // Strict nesting: the penetration list must be exactly the ancestor
    // chain, i.e. dropping its last element gives the parent's list.
    for c in &cm.containers {
        if let Some((parent_id, outer)) = c.penetration.split_last() {
            let parent = decl_of[parent_id.as_str()];
            if parent.penetration != outer {
                return Err(ReductionError::NotNested {
                    container: c.id.clone(),
                });
            }
        }
    }

    let root_id = fresh_root_id(&decl_of);
    let mut prize: HashMap<&str, Rational> = cm
        .containers
        .iter()
        .map(|c| (c.id.as_str(), Rational::zero()))
        .collect();
    for t in &cm.targets {
        match prize.get_mut(t.location.as_str()) {
            Some(p) => *p += &t.value,
            None => return Err(ReductionError::UnknownContainer(t.location.clone())),
        }
    }

    let mut vertices = vec![(root_id.clone(), Rational::zero())];
    for c in &cm.containers {
        vertices.push((c.id.clone(), prize[c.id.as_str()].clone()));
    }
    let edges: Vec<(String, String, Rational)> = cm
        .containers
        .iter()
        .map(|c| {
            let parent = c
                .penetration
                .last()
                .cloned()
                .unwrap_or_else(|| root_id.clone());
            (parent, c.id.clone(), c.cost.clone())
        })
        .collect();
    Ok(build_instance(
        &vertices,
        &edges,
        &root_id,
        cm.budget.clone(),
        cm.threshold.clone(),
    )?)
}

fn fresh_root_id(taken: &HashMap<&str, &ContainerDecl>) -> String {
    let mut id = "r".to_string();
    while taken.contains_key(id.as_str()) {
        id.insert(0, '_');
    }
    id
}
