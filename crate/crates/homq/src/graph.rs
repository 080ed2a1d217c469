//! Simple undirected graphs with stable vertex/edge identifiers and
//! enumeration of connected vertex subsets up to a size bound.
//!
//! Edge identifiers are dense in `[0, |E|)` and double as the distinct
//! edge colours used by the coefficient machinery.

use crate::error::{HomqError, Result};

/// Simple undirected graph. No self-loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a validated graph. Edge ids are assigned in input order.
    pub fn new(vertex_count: usize, edge_pairs: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(edge_pairs.len());
        for (id, &(u, v)) in edge_pairs.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(HomqError::VertexOutOfRange {
                        edge: id,
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(HomqError::SelfLoop { edge: id, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(HomqError::ParallelEdge { edge: id, u, v });
            }
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
            edges.push((u, v));
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of the edge with the given id.
    pub fn endpoints(&self, edge_id: usize) -> (usize, usize) {
        self.edges[edge_id]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` as `(neighbor, edge_id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum vertex degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.adjacency[v].len())
            .max()
            .unwrap_or(0)
    }

    /// Edges with both endpoints in `subset`, in increasing edge-id order.
    pub fn induced_edges(&self, subset: &VertexSubset) -> Vec<usize> {
        let member: Vec<bool> = {
            let mut m = vec![false; self.vertex_count];
            for &v in subset.members() {
                m[v] = true;
            }
            m
        };
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| member[u] && member[v])
            .map(|(id, _)| id)
            .collect()
    }

    /// Whether the induced subgraph `G[subset]` is connected.
    /// Singletons count as connected.
    pub fn is_connected_subset(&self, subset: &VertexSubset) -> Result<bool> {
        if subset.is_empty() {
            return Err(HomqError::EmptySubset);
        }
        let mut member = vec![false; self.vertex_count];
        for &v in subset.members() {
            member[v] = true;
        }
        let mut visited = vec![false; self.vertex_count];
        let start = subset.members()[0];
        let mut stack = vec![start];
        visited[start] = true;
        let mut reached = 0usize;
        while let Some(v) = stack.pop() {
            reached += 1;
            for &(w, _) in &self.adjacency[v] {
                if member[w] && !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(reached == subset.len())
    }

    /// Enumerates every vertex subset `U` with `1 <= |U| <= size_bound` and
    /// `G[U]` connected, each exactly once, sorted by `(|U|, members)`.
    ///
    /// Anchored growth: for each anchor `v` in ascending order, connected
    /// subsets with minimum vertex `v` are grown by extension, with
    /// exclusive-neighbourhood bookkeeping so no subset is produced twice.
    pub fn enumerate_connected_subsets(&self, size_bound: usize) -> Vec<VertexSubset> {
        let mut out = Vec::new();
        if size_bound == 0 {
            return out;
        }
        let mut in_current = vec![false; self.vertex_count];
        let mut blocked = vec![false; self.vertex_count];
        for anchor in 0..self.vertex_count {
            let mut current = vec![anchor];
            in_current[anchor] = true;
            blocked[anchor] = true;
            let extension: Vec<usize> = self
                .adjacency[anchor]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| w > anchor)
                .collect();
            let mut newly: Vec<usize> = extension.clone();
            for &w in &newly {
                blocked[w] = true;
            }
            self.extend_subsets(
                anchor,
                &mut current,
                extension,
                &mut in_current,
                &mut blocked,
                size_bound,
                &mut out,
            );
            in_current[anchor] = false;
            blocked[anchor] = false;
            for w in newly.drain(..) {
                blocked[w] = false;
            }
        }
        out.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_subsets(
        &self,
        anchor: usize,
        current: &mut Vec<usize>,
        mut extension: Vec<usize>,
        in_current: &mut Vec<bool>,
        blocked: &mut Vec<bool>,
        size_bound: usize,
        out: &mut Vec<VertexSubset>,
    ) {
        out.push(VertexSubset::from_sorted_unchecked({
            let mut m = current.clone();
            m.sort_unstable();
            m
        }));
        if current.len() == size_bound {
            return;
        }
        while let Some(w) = extension.pop() {
            // Exclusive neighbours of w: unseen along this branch.
            let fresh: Vec<usize> = self.adjacency[w]
                .iter()
                .map(|&(x, _)| x)
                .filter(|&x| x > anchor && !blocked[x])
                .collect();
            for &x in &fresh {
                blocked[x] = true;
            }
            let mut next_ext = extension.clone();
            next_ext.extend_from_slice(&fresh);
            current.push(w);
            in_current[w] = true;
            self.extend_subsets(anchor, current, next_ext, in_current, blocked, size_bound, out);
            in_current[w] = false;
            current.pop();
            for &x in &fresh {
                blocked[x] = false;
            }
        }
    }
}

/// Sorted set of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSubset {
    members: Vec<usize>,
}

impl VertexSubset {
    /// Sorts and deduplicates the given members.
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSubset { members: vec![v] }
    }

    pub fn empty() -> Self {
        VertexSubset { members: Vec::new() }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        VertexSubset { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Bitmask over vertex ids; only valid when all ids are < 128.
    pub fn mask(&self) -> Option<u128> {
        if self.members.last().is_some_and(|&v| v >= 128) {
            return None;
        }
        Some(self.members.iter().fold(0u128, |acc, &v| acc | (1u128 << v)))
    }

    /// Whether `self` is a subset of `other` (both sorted).
    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        let mut it = other.members.iter();
        'outer: for &v in &self.members {
            for &w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn build_path() {
        let g = path3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.endpoints(0), (0, 1));
        assert_eq!(g.endpoints(1), (1, 2));
    }

    #[test]
    fn build_isolated_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(
            Graph::new(2, &[(0, 0)]),
            Err(HomqError::SelfLoop { edge: 0, vertex: 0 })
        ));
    }

    #[test]
    fn rejects_parallel_edge() {
        assert!(matches!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(HomqError::ParallelEdge { edge: 1, .. })
        ));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            Graph::new(2, &[(0, 5)]),
            Err(HomqError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(path3().max_degree(), 2);
        assert_eq!(Graph::new(5, &[]).unwrap().max_degree(), 0);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.max_degree(), 4);
    }

    #[test]
    fn induced_edges_examples() {
        let g = path3();
        assert_eq!(g.induced_edges(&VertexSubset::new(vec![0, 1])), vec![0]);
        assert!(g.induced_edges(&VertexSubset::new(vec![0, 2])).is_empty());
        assert_eq!(triangle().induced_edges(&VertexSubset::new(vec![0, 1, 2])).len(), 3);
        assert_eq!(g.induced_edges(&VertexSubset::new(vec![0, 1, 2])).len(), 2);
    }

    #[test]
    fn connectivity_examples() {
        let g = path3();
        assert!(!g.is_connected_subset(&VertexSubset::new(vec![0, 2])).unwrap());
        assert!(g.is_connected_subset(&VertexSubset::new(vec![0, 1, 2])).unwrap());
        assert!(g.is_connected_subset(&VertexSubset::singleton(1)).unwrap());
        assert!(matches!(
            g.is_connected_subset(&VertexSubset::empty()),
            Err(HomqError::EmptySubset)
        ));
    }

    #[test]
    fn enumerate_path_bound_two() {
        let subs = path3().enumerate_connected_subsets(2);
        let expected: Vec<VertexSubset> = [vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]]
            .into_iter()
            .map(VertexSubset::new)
            .collect();
        assert_eq!(subs, expected);
    }

    #[test]
    fn enumerate_triangle_full() {
        let subs = triangle().enumerate_connected_subsets(3);
        assert_eq!(subs.len(), 7);
    }

    #[test]
    fn subset_relations() {
        let a = VertexSubset::new(vec![1, 3]);
        let b = VertexSubset::new(vec![0, 1, 3, 5]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(a.mask(), Some(0b1010));
    }
}
