//! Undirected simple graphs on dense vertex indices and their bipartitions.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed")]
    Loop(Vertex),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("graph is not bipartite: odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<Vertex> },
    #[error("bipartition does not match the graph: {0}")]
    InvalidBipartition(String),
    #[error("vertex {vertex} is outside 0..{n}")]
    UnknownVertex { vertex: Vertex, n: usize },
}

/// Orders an edge so the smaller endpoint comes first.
#[inline]
pub fn canonical(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple undirected graph on the vertices `0..n`.
///
/// Edges are stored once, smaller endpoint first, in ascending order; the
/// adjacency lists are sorted as well so every traversal that walks them is
/// deterministic.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph, dropping duplicate edges. Loops and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            canon.push(canonical(u, v));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("clique edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("biclique edges are valid")
    }

    /// `k` disjoint copies of `K2`.
    pub fn perfect_matching(k: usize) -> Self {
        Self::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).expect("matching edges are valid")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in ascending order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Same vertex set, with the given edges deleted. Every listed pair must
    /// be an edge of `self`.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Graph, GraphError> {
        let mut drop = Vec::with_capacity(removed.len());
        for &(u, v) in removed {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            drop.push(canonical(u, v));
        }
        drop.sort_unstable();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err());
        Graph::new(self.n, kept)
    }

    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A partition of the vertices into sides A and B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    in_a: Vec<bool>,
}

impl Bipartition {
    /// Builds a bipartition from membership flags and checks it against `g`.
    pub fn from_membership(g: &Graph, in_a: Vec<bool>) -> Result<Self, GraphError> {
        let b = Bipartition { in_a };
        b.validate(g)?;
        Ok(b)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if self.in_a.len() != g.order() {
            return Err(GraphError::InvalidBipartition(format!(
                "covers {} vertices, graph has {}",
                self.in_a.len(),
                g.order()
            )));
        }
        for &(u, v) in g.edges() {
            if self.in_a[u] == self.in_a[v] {
                return Err(GraphError::InvalidBipartition(format!(
                    "edge ({u}, {v}) lies inside one side"
                )));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn is_a(&self, v: Vertex) -> bool {
        self.in_a[v]
    }

    pub fn side_a(&self) -> Vec<Vertex> {
        (0..self.in_a.len()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn side_b(&self) -> Vec<Vertex> {
        (0..self.in_a.len()).filter(|&v| !self.in_a[v]).collect()
    }
}

/// Two-colors `g` by BFS. In every component the lowest-index vertex lands
/// on side A, so isolated vertices are on side A too.
///
/// On failure the error carries an odd cycle, rotated to start at its
/// smallest vertex.
pub fn bipartition(g: &Graph) -> Result<Bipartition, GraphError> {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(GraphError::NotBipartite {
                            cycle: odd_cycle(u, w, &parent, &depth),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartition {
        in_a: color.into_iter().map(|c| c.unwrap()).collect(),
    })
}

fn odd_cycle(mut u: Vertex, mut w: Vertex, parent: &[Vertex], depth: &[usize]) -> Vec<Vertex> {
    let mut left = vec![u];
    let mut right = vec![w];
    while depth[u] > depth[w] {
        u = parent[u];
        left.push(u);
    }
    while depth[w] > depth[u] {
        w = parent[w];
        right.push(w);
    }
    while u != w {
        u = parent[u];
        w = parent[w];
        left.push(u);
        right.push(w);
    }
    right.pop();
    left.reverse();
    left.extend(right);
    normalize_cycle(left)
}

fn normalize_cycle(mut cycle: Vec<Vertex>) -> Vec<Vertex> {
    let len = cycle.len();
    let start = (0..len).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(start);
    if len > 2 && cycle[len - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        let k2 = Graph::new(2, [(1, 0), (0, 1)]).unwrap();
        assert_eq!(k2.size(), 1);
        assert_eq!(k2.edges(), &[(0, 1)]);
        assert_eq!(c6(), Graph::cycle(6));
        assert_eq!(c6().size(), 6);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::OutOfRange { u: 0, v: 2, n: 2 })
        ));
        let msg = Graph::new(3, [(0, 0)]).unwrap_err().to_string();
        assert!(msg.contains("loop"), "{msg}");
    }

    #[test]
    fn bipartition_examples() {
        let b = bipartition(&c6()).unwrap();
        assert_eq!(b.side_a(), vec![0, 2, 4]);
        assert_eq!(b.side_b(), vec![1, 3, 5]);

        match bipartition(&Graph::complete(3)) {
            Err(GraphError::NotBipartite { cycle }) => assert_eq!(cycle, vec![0, 1, 2]),
            other => panic!("expected odd cycle, got {other:?}"),
        }

        let b = bipartition(&Graph::empty(3)).unwrap();
        assert_eq!(b.side_a(), vec![0, 1, 2]);
        assert!(b.side_b().is_empty());
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        // C5 on 6,1,2,3,4 with the path 0-5 hanging off it.
        let g = Graph::new(7, [(0, 5), (5, 6), (6, 1), (1, 2), (2, 3), (3, 4), (4, 6)]).unwrap();
        let Err(GraphError::NotBipartite { cycle }) = bipartition(&g) else {
            panic!("the odd cycle must be detected");
        };
        assert_eq!(cycle.len() % 2, 1);
        for i in 0..cycle.len() {
            assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn each_component_starts_on_side_a() {
        let g = Graph::new(5, [(3, 1), (4, 2)]).unwrap();
        let b = bipartition(&g).unwrap();
        assert_eq!(b.side_a(), vec![0, 1, 2]);
    }

    #[test]
    fn remove_edges_examples() {
        let p6 = c6().remove_edges(&[(0, 1)]).unwrap();
        assert_eq!(p6.size(), 5);
        assert!(!p6.has_edge(0, 1));
        assert_eq!(p6.degree(0), 1);
        assert_eq!(p6.degree(1), 1);

        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(k2.remove_edges(&[(1, 0)]).unwrap(), Graph::empty(2));

        assert_eq!(
            c6().remove_edges(&[(0, 2)]),
            Err(GraphError::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn invalid_bipartition_rejected() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert!(Bipartition::from_membership(&g, vec![true, true]).is_err());
        assert!(Bipartition::from_membership(&g, vec![true]).is_err());
        assert!(Bipartition::from_membership(&g, vec![false, true]).is_ok());
    }
}
