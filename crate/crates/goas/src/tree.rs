//! Planted plane trees: rooted trees with a fixed left-to-right child
//! order.
//!
//! The child order is what makes the leftmost-child decomposition well
//! defined: any subtree τ rooted at u splits into the subtree under u's
//! leftmost child and the remainder, joined by exactly one edge.  All
//! three dynamic-programming solvers consume the tree through that
//! decomposition, so the order is fixed at build time (from the input
//! edge order) and preserved by serialization.

use std::collections::HashMap;
use std::fmt;

/// Errors detected while assembling a tree from an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    /// A vertex id occurs more than once in the vertex list.
    DuplicateId(String),
    /// An edge endpoint or the designated root was never declared.
    UnknownVertex(String),
    /// A vertex is the child of two different edges.
    MultipleParents(String),
    /// Following parent edges from this vertex revisits a vertex
    /// (includes any edge pointing back into the root).
    CycleDetected(String),
    /// A non-root vertex with no path to the root.
    DisconnectedVertex(String),
    /// An edge with negative cost (named by its child endpoint).
    NegativeCost(String),
    /// The instance budget is negative.
    NegativeBudget,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::DuplicateId(id) => write!(f, "duplicate vertex id {id:?}"),
            BuildError::UnknownVertex(id) => write!(f, "unknown vertex {id:?}"),
            BuildError::MultipleParents(id) => {
                write!(f, "vertex {id:?} has more than one parent edge")
            }
            BuildError::CycleDetected(id) => write!(f, "cycle detected at vertex {id:?}"),
            BuildError::DisconnectedVertex(id) => {
                write!(f, "vertex {id:?} is not connected to the root")
            }
            BuildError::NegativeCost(id) => {
                write!(f, "edge into vertex {id:?} has negative cost")
            }
            BuildError::NegativeBudget => write!(f, "budget must be non-negative"),
        }
    }
}

impl std::error::Error for BuildError {}

/// A rooted tree with ordered children.
///
/// Vertices are dense indices into the internal tables; external string
/// ids are kept for input/output.  `n` in the problem statements is the
/// number of *non-root* vertices, which equals the number of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedPlaneTree {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl PlantedPlaneTree {
    /// Builds a tree from a vertex list and an ordered edge list.
    ///
    /// Sibling order is the order in which the edges appear.  Vertex
    /// indices follow the order of `vertex_ids`.
    pub fn from_edges(
        vertex_ids: &[String],
        root_id: &str,
        edges: &[(String, String)],
    ) -> Result<Self, BuildError> {
        let mut index = HashMap::with_capacity(vertex_ids.len());
        for (i, id) in vertex_ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(BuildError::DuplicateId(id.clone()));
            }
        }
        let root = *index
            .get(root_id)
            .ok_or_else(|| BuildError::UnknownVertex(root_id.to_string()))?;

        let n = vertex_ids.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, c) in edges {
            let pi = *index
                .get(p)
                .ok_or_else(|| BuildError::UnknownVertex(p.clone()))?;
            let ci = *index
                .get(c)
                .ok_or_else(|| BuildError::UnknownVertex(c.clone()))?;
            if ci == root {
                return Err(BuildError::CycleDetected(c.clone()));
            }
            if parent[ci].is_some() {
                return Err(BuildError::MultipleParents(c.clone()));
            }
            parent[ci] = Some(pi);
            children[pi].push(ci);
        }

        let tree = PlantedPlaneTree {
            ids: vertex_ids.to_vec(),
            index,
            root,
            parent,
            children,
        };
        tree.check_connected()?;
        Ok(tree)
    }

    /// Every non-root vertex must reach the root by parent edges.  A
    /// vertex that does not is either in a parent cycle or genuinely
    /// disconnected; the two cases get distinct errors.
    fn check_connected(&self) -> Result<(), BuildError> {
        let mut reached = vec![false; self.ids.len()];
        let mut stack = vec![self.root];
        reached[self.root] = true;
        while let Some(u) = stack.pop() {
            for &c in &self.children[u] {
                if !reached[c] {
                    reached[c] = true;
                    stack.push(c);
                }
            }
        }
        for v in 0..self.ids.len() {
            if reached[v] {
                continue;
            }
            let mut seen = vec![false; self.ids.len()];
            let mut cur = v;
            loop {
                if seen[cur] {
                    return Err(BuildError::CycleDetected(self.ids[cur].clone()));
                }
                seen[cur] = true;
                match self.parent[cur] {
                    Some(p) => cur = p,
                    None => return Err(BuildError::DisconnectedVertex(self.ids[cur].clone())),
                }
            }
        }
        Ok(())
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Total vertex count, root included.
    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    /// Number of non-root vertices (= number of edges); the `n` of the
    /// problem statements.
    pub fn non_root_count(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.non_root_count()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Child count d(u).
    pub fn child_count(&self, v: usize) -> usize {
        self.children[v].len()
    }

    pub fn leftmost_child(&self, v: usize) -> Option<usize> {
        self.children[v].first().copied()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn vertex_indices(&self) -> impl Iterator<Item = usize> {
        0..self.ids.len()
    }

    /// Vertices in preorder (parents before children, siblings
    /// left-to-right).
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ids.len());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            out.push(u);
            for &c in self.children[u].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Depth of each vertex (root = 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.ids.len()];
        for &u in &self.preorder() {
            for &c in &self.children[u] {
                depth[c] = depth[u] + 1;
            }
        }
        depth
    }

    /// Vertex count of every subtree T(u).
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.ids.len()];
        for &u in self.preorder().iter().rev() {
            for &c in &self.children[u] {
                size[u] += size[c];
            }
        }
        size
    }

    /// Vertices of T(u) in preorder.
    pub fn subtree_vertices(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.children[v].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Leftmost-child decomposition of T(u).
    pub fn decompose(&self, u: usize) -> Decomposition {
        match self.leftmost_child(u) {
            None => Decomposition {
                root: u,
                leftmost: None,
                left_vertices: Vec::new(),
                remainder_vertices: vec![u],
            },
            Some(l) => {
                let left_vertices = self.subtree_vertices(l);
                let mut remainder_vertices = Vec::new();
                let mut stack = vec![u];
                while let Some(v) = stack.pop() {
                    remainder_vertices.push(v);
                    for &c in self.children[v].iter().rev() {
                        if v == u && c == l {
                            continue; // drop τ_ℓ, keep everything else
                        }
                        stack.push(c);
                    }
                }
                Decomposition {
                    root: u,
                    leftmost: Some(l),
                    left_vertices,
                    remainder_vertices,
                }
            }
        }
    }
}

/// The split of a subtree τ rooted at `root` into the leftmost child's
/// subtree τ_ℓ and the remainder τ″ = τ − V(τ_ℓ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub root: usize,
    pub leftmost: Option<usize>,
    pub left_vertices: Vec<usize>,
    pub remainder_vertices: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn edges(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect()
    }

    #[test]
    fn builds_single_vertex() {
        let t = PlantedPlaneTree::from_edges(&ids(&["r"]), "r", &[]).unwrap();
        assert_eq!(t.non_root_count(), 0);
        assert!(t.is_leaf(t.root()));
    }

    #[test]
    fn child_order_follows_edge_order() {
        let t = PlantedPlaneTree::from_edges(
            &ids(&["r", "a", "b", "c"]),
            "r",
            &edges(&[("r", "b"), ("r", "a"), ("a", "c")]),
        )
        .unwrap();
        let order: Vec<&str> = t.children(t.root()).iter().map(|&v| t.id(v)).collect();
        assert_eq!(order, ["b", "a"]);
        assert_eq!(t.leftmost_child(t.root()).map(|v| t.id(v)), Some("b"));
    }

    #[test]
    fn rejects_duplicate_and_unknown() {
        let err = PlantedPlaneTree::from_edges(&ids(&["r", "r"]), "r", &[]).unwrap_err();
        assert_eq!(err, BuildError::DuplicateId("r".into()));
        let err =
            PlantedPlaneTree::from_edges(&ids(&["r"]), "r", &edges(&[("r", "x")])).unwrap_err();
        assert_eq!(err, BuildError::UnknownVertex("x".into()));
    }

    #[test]
    fn rejects_cycle_through_root() {
        let err = PlantedPlaneTree::from_edges(
            &ids(&["r", "a"]),
            "r",
            &edges(&[("r", "a"), ("a", "r")]),
        )
        .unwrap_err();
        assert_eq!(err, BuildError::CycleDetected("r".into()));
    }

    #[test]
    fn rejects_detached_cycle_and_disconnected() {
        let err = PlantedPlaneTree::from_edges(
            &ids(&["r", "a", "b"]),
            "r",
            &edges(&[("a", "b"), ("b", "a")]),
        )
        .unwrap_err();
        assert!(matches!(err, BuildError::CycleDetected(_)));
        let err = PlantedPlaneTree::from_edges(&ids(&["r", "a"]), "r", &[]).unwrap_err();
        assert_eq!(err, BuildError::DisconnectedVertex("a".into()));
    }

    #[test]
    fn rejects_multiple_parents() {
        let err = PlantedPlaneTree::from_edges(
            &ids(&["r", "a", "b"]),
            "r",
            &edges(&[("r", "a"), ("r", "b"), ("a", "b")]),
        )
        .unwrap_err();
        assert_eq!(err, BuildError::MultipleParents("b".into()));
    }

    #[test]
    fn decomposition_partitions_subtree() {
        let t = PlantedPlaneTree::from_edges(
            &ids(&["r", "a", "b", "c", "d"]),
            "r",
            &edges(&[("r", "a"), ("r", "b"), ("a", "c"), ("a", "d")]),
        )
        .unwrap();
        let d = t.decompose(t.root());
        assert_eq!(d.leftmost.map(|v| t.id(v)), Some("a"));
        let mut all: Vec<usize> = d
            .left_vertices
            .iter()
            .chain(d.remainder_vertices.iter())
            .copied()
            .collect();
        all.sort_unstable();
        let mut expect: Vec<usize> = t.subtree_vertices(t.root());
        expect.sort_unstable();
        assert_eq!(all, expect);
        assert_eq!(
            d.left_vertices.len() + d.remainder_vertices.len(),
            t.vertex_count()
        );
    }

    #[test]
    fn leaf_decomposition_is_itself() {
        let t =
            PlantedPlaneTree::from_edges(&ids(&["r", "a"]), "r", &edges(&[("r", "a")])).unwrap();
        let leaf = t.index_of("a").unwrap();
        let d = t.decompose(leaf);
        assert_eq!(d.leftmost, None);
        assert!(d.left_vertices.is_empty());
        assert_eq!(d.remainder_vertices, vec![leaf]);
    }
}
