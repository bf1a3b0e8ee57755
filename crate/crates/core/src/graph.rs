//! Simple undirected graphs with stable vertex ids and an optional rotation
//! system.
//!
//! Vertex ids are dense integers fixed at construction. Deleting vertices
//! masks them out instead of renumbering, so a vertex keeps its id through
//! every level of a reduction.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    BadRotation(Vertex),
    #[error("rotation given for {got} vertices, graph has id bound {expected}")]
    RotationSize { expected: usize, got: usize },
}

/// An immutable simple graph.
///
/// `adj[v]` is sorted and only lists live neighbors. When a rotation system
/// is present, `rotation[v]` is the cyclic order of the live neighbors of
/// `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    alive: Vec<bool>,
    adj: Vec<Vec<Vertex>>,
    rotation: Option<Vec<Vec<Vertex>>>,
    num_alive: usize,
    num_edges: usize,
}

impl Graph {
    /// Builds a graph on vertices `0..n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut num_edges = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            num_edges += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            alive: vec![true; n],
            adj,
            rotation: None,
            num_alive: n,
            num_edges,
        })
    }

    /// Attaches a rotation system. `rotation[v]` must list every neighbor of
    /// `v` exactly once.
    pub fn with_rotation(mut self, rotation: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        if rotation.len() != self.adj.len() {
            return Err(GraphError::RotationSize {
                expected: self.adj.len(),
                got: rotation.len(),
            });
        }
        for (v, order) in rotation.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != self.adj[v] {
                return Err(GraphError::BadRotation(v));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn without_rotation(&self) -> Graph {
        Graph {
            rotation: None,
            ..self.clone()
        }
    }

    /// One past the largest vertex id ever used by this graph.
    pub fn id_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_alive
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.num_alive == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.adj[v].len())
    }

    /// Degree of a vertex known to be live. Dead ids report 0.
    pub fn deg(&self, v: Vertex) -> usize {
        self.adj.get(v).map_or(0, Vec::len)
    }

    /// Sorted neighbors. Empty for dead or unknown ids.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    pub fn rotation(&self, v: Vertex) -> Option<&[Vertex]> {
        self.rotation
            .as_ref()
            .and_then(|r| r.get(v))
            .map(Vec::as_slice)
    }

    /// Induced subgraph on the live vertices outside `removed`. The rotation
    /// system, if any, is restricted to the surviving neighbors.
    pub fn delete(&self, removed: &[Vertex]) -> Result<Graph, GraphError> {
        let mut gone = vec![false; self.alive.len()];
        for &v in removed {
            if !self.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
            gone[v] = true;
        }
        Ok(self.retain(|v| !gone[v]))
    }

    /// Induced subgraph on the live vertices satisfying `keep`.
    pub fn retain<F: Fn(Vertex) -> bool>(&self, keep: F) -> Graph {
        let alive: Vec<bool> = (0..self.alive.len())
            .map(|v| self.alive[v] && keep(v))
            .collect();
        let filter = |list: &Vec<Vertex>, v: Vertex| -> Vec<Vertex> {
            if alive[v] {
                list.iter().copied().filter(|&u| alive[u]).collect()
            } else {
                Vec::new()
            }
        };
        let adj: Vec<Vec<Vertex>> = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, l)| filter(l, v))
            .collect();
        let rotation = self
            .rotation
            .as_ref()
            .map(|rot| rot.iter().enumerate().map(|(v, l)| filter(l, v)).collect());
        let num_alive = alive.iter().filter(|&&a| a).count();
        let num_edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            alive,
            adj,
            rotation,
            num_alive,
            num_edges,
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.alive.len()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from a set of sources; `None` for unreachable ids.
    pub fn distances_from(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.alive.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.contains(s) && dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.vertices() {
            let mut dist = vec![usize::MAX; self.alive.len()];
            let mut parent = vec![usize::MAX; self.alive.len()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// A vertex set removed from a parent graph. Edges survive iff both ends
/// survive.
#[derive(Debug, Clone)]
pub struct VertexSetDeletion<'a> {
    parent: &'a Graph,
    removed: BTreeSet<Vertex>,
}

impl<'a> VertexSetDeletion<'a> {
    pub fn new(parent: &'a Graph, removed: &[Vertex]) -> Result<Self, GraphError> {
        if let Some(&v) = removed.iter().find(|&&v| !parent.contains(v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(VertexSetDeletion {
            parent,
            removed: removed.iter().copied().collect(),
        })
    }

    pub fn parent(&self) -> &Graph {
        self.parent
    }

    pub fn removed(&self) -> &BTreeSet<Vertex> {
        &self.removed
    }

    pub fn survives(&self, v: Vertex) -> bool {
        self.parent.contains(v) && !self.removed.contains(&v)
    }

    pub fn materialize(&self) -> Graph {
        self.parent.retain(|v| !self.removed.contains(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn degrees_of_small_graphs() {
        let c5 = cycle(5);
        assert!(c5.vertices().all(|v| c5.degree(v).unwrap() == 2));
        let k = k4();
        assert!(k.vertices().all(|v| k.degree(v).unwrap() == 3));
        let iso = Graph::new(1, []).unwrap();
        assert_eq!(iso.degree(0).unwrap(), 0);
        assert_eq!(iso.degree(3), Err(GraphError::UnknownVertex(3)));
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::UnknownVertex(2)));
    }

    #[test]
    fn delete_keeps_ids_and_induces() {
        let p = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.delete(&[]).unwrap(), p);
        let q = p.delete(&[1]).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_edges(), 0);
        assert!(q.contains(0) && q.contains(2) && !q.contains(1));
        assert_eq!(q.id_bound(), 3);
        assert_eq!(p.delete(&[7]), Err(GraphError::UnknownVertex(7)));
        assert_eq!(q.delete(&[1]), Err(GraphError::UnknownVertex(1)));
    }

    #[test]
    fn deletion_view_matches_delete() {
        let g = k4();
        let view = VertexSetDeletion::new(&g, &[2]).unwrap();
        assert!(!view.survives(2) && view.survives(0));
        assert_eq!(view.materialize(), g.delete(&[2]).unwrap());
    }

    #[test]
    fn rotation_is_restricted_on_delete() {
        let g = cycle(4)
            .with_rotation(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]])
            .unwrap();
        let h = g.delete(&[0]).unwrap();
        assert_eq!(h.rotation(1), Some(&[2][..]));
        assert_eq!(h.rotation(3), Some(&[2][..]));
        assert!(cycle(4)
            .with_rotation(vec![vec![1], vec![2, 0], vec![3, 1], vec![0, 2]])
            .is_err());
    }

    #[test]
    fn girth_and_components() {
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(k4().girth(), Some(3));
        let forest = Graph::new(5, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(forest.girth(), None);
        assert_eq!(forest.components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
