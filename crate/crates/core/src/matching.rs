//! Matchings, maximum bipartite matching, König covers and maximum
//! independent sets of bipartite graphs.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{bipartition, canonical, Bipartition, Edge, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("vertex {0} is covered by two edges")]
    SharedVertex(Vertex),
    #[error("edges {0:?} and {1:?} are joined by a graph edge")]
    NotInduced(Edge, Edge),
    #[error("matching is not maximum: augmenting path {0:?}")]
    NotMaximum(Vec<Vertex>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of pairwise vertex-disjoint edges of some host graph.
///
/// Values only come out of constructors that validate against the host, so
/// the `induced` flag is trustworthy: when set, no host edge joins the
/// endpoints of two different matching edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
    induced: bool,
}

impl Matching {
    pub fn empty() -> Self {
        Matching {
            edges: Vec::new(),
            induced: true,
        }
    }

    pub fn new(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self, MatchingError> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| canonical(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        check_matching(g, &edges)?;
        let induced = first_induced_violation(g, &edges).is_none();
        Ok(Matching { edges, induced })
    }

    /// Like [`Matching::new`] but additionally requires the matching to be
    /// induced.
    pub fn induced(
        g: &Graph,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, MatchingError> {
        let m = Self::new(g, edges)?;
        if let Some((e, f)) = first_induced_violation(g, &m.edges) {
            return Err(MatchingError::NotInduced(e, f));
        }
        Ok(m)
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    #[inline]
    pub fn is_induced(&self) -> bool {
        self.induced
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&canonical(u, v)).is_ok()
    }

    /// `mate[v]` is the partner of `v`, if covered.
    pub fn mates(&self, n: usize) -> Vec<Option<Vertex>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }
}

fn check_matching(g: &Graph, edges: &[Edge]) -> Result<(), MatchingError> {
    let mut used = vec![false; g.order()];
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(MatchingError::NotAnEdge(u, v));
        }
        for w in [u, v] {
            if used[w] {
                return Err(MatchingError::SharedVertex(w));
            }
            used[w] = true;
        }
    }
    Ok(())
}

fn first_induced_violation(g: &Graph, edges: &[Edge]) -> Option<(Edge, Edge)> {
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let joined = [e.0, e.1]
                .iter()
                .any(|&x| g.has_edge(x, f.0) || g.has_edge(x, f.1));
            if joined {
                return Some((e, f));
            }
        }
    }
    None
}

/// True iff `edges` are edges of `g` and pairwise vertex-disjoint.
pub fn is_matching(g: &Graph, edges: &[Edge]) -> bool {
    let mut canon: Vec<Edge> = edges.iter().map(|&(u, v)| canonical(u, v)).collect();
    canon.sort_unstable();
    let len = canon.len();
    canon.dedup();
    canon.len() == len && check_matching(g, &canon).is_ok()
}

/// True iff `edges` is a matching and no edge of `g` joins endpoints of two
/// different matching edges.
pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> bool {
    is_matching(g, edges) && first_induced_violation(g, edges).is_none()
}

/// Hopcroft–Karp maximum matching.
///
/// Side-A vertices are the free roots; roots, adjacency lists and DFS
/// choices are all scanned in ascending index order, so the result is a
/// deterministic function of `(g, b)`.
pub fn maximum_matching(g: &Graph, b: &Bipartition) -> Result<Matching, GraphError> {
    b.validate(g)?;
    let n = g.order();
    let left = b.side_a();
    let mut mate: Vec<Option<Vertex>> = vec![None; n];
    let mut dist = vec![usize::MAX; n];

    loop {
        // Layer the side-A vertices by alternating BFS distance from the
        // free ones; `found` records whether some free B vertex is reachable.
        let mut queue = VecDeque::new();
        for &a in &left {
            if mate[a].is_none() {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &bv in g.neighbors(a) {
                match mate[bv] {
                    None => found = true,
                    Some(a2) if dist[a2] == usize::MAX => {
                        dist[a2] = dist[a] + 1;
                        queue.push_back(a2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for &a in &left {
            if mate[a].is_none() {
                augment(g, a, &mut mate, &mut dist);
            }
        }
    }

    let mut edges: Vec<Edge> = left
        .iter()
        .filter_map(|&a| mate[a].map(|bv| canonical(a, bv)))
        .collect();
    edges.sort_unstable();
    let induced = first_induced_violation(g, &edges).is_none();
    Ok(Matching { edges, induced })
}

fn augment(g: &Graph, a: Vertex, mate: &mut [Option<Vertex>], dist: &mut [usize]) -> bool {
    for &bv in g.neighbors(a) {
        let next = mate[bv];
        let ok = match next {
            None => true,
            Some(a2) => dist[a2] == dist[a] + 1 && augment(g, a2, mate, dist),
        };
        if ok {
            mate[a] = Some(bv);
            mate[bv] = Some(a);
            return true;
        }
    }
    dist[a] = usize::MAX;
    false
}

/// Searches for an `m`-augmenting path, starting from the free side-A
/// vertices in ascending order. Returns the path from its A end to its B end.
pub fn find_augmenting_path(g: &Graph, b: &Bipartition, m: &Matching) -> Option<Vec<Vertex>> {
    let n = g.order();
    let mate = m.mates(n);
    let mut prev: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for a in b.side_a() {
        if mate[a].is_none() {
            seen[a] = true;
            queue.push_back(a);
        }
    }
    while let Some(a) = queue.pop_front() {
        for &bv in g.neighbors(a) {
            if seen[bv] {
                continue;
            }
            seen[bv] = true;
            prev[bv] = Some(a);
            match mate[bv] {
                None => {
                    let mut path = vec![bv];
                    let mut cur = bv;
                    while let Some(p) = prev[cur] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                Some(a2) => {
                    if !seen[a2] {
                        seen[a2] = true;
                        prev[a2] = Some(bv);
                        queue.push_back(a2);
                    }
                }
            }
        }
    }
    None
}

/// König cover: with `Z` the vertices reachable from free side-A vertices
/// by alternating paths, the cover is `(A \ Z) ∪ (B ∩ Z)`. Sorted ascending.
pub fn koenig_cover(g: &Graph, b: &Bipartition, m: &Matching) -> Result<Vec<Vertex>, MatchingError> {
    b.validate(g)?;
    check_matching(g, m.edges())?;
    if let Some(path) = find_augmenting_path(g, b, m) {
        return Err(MatchingError::NotMaximum(path));
    }
    let n = g.order();
    let mate = m.mates(n);
    let mut reached = vec![false; n];
    let mut queue: VecDeque<Vertex> = b.side_a().into_iter().filter(|&a| mate[a].is_none()).collect();
    for &a in &queue {
        reached[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &bv in g.neighbors(a) {
            if reached[bv] || mate[a] == Some(bv) {
                continue;
            }
            reached[bv] = true;
            if let Some(a2) = mate[bv] {
                if !reached[a2] {
                    reached[a2] = true;
                    queue.push_back(a2);
                }
            }
        }
    }
    Ok((0..n).filter(|&v| b.is_a(v) != reached[v]).collect())
}

/// Maximum independent set of a bipartite graph, as the complement of a
/// König cover.
pub fn maximum_independent_set_bipartite(g: &Graph) -> Result<Vec<Vertex>, GraphError> {
    let b = bipartition(g)?;
    let m = maximum_matching(g, &b)?;
    let cover = koenig_cover(g, &b, &m).expect("Hopcroft-Karp output is maximum");
    let mut in_cover = vec![false; g.order()];
    for v in cover {
        in_cover[v] = true;
    }
    Ok((0..g.order()).filter(|&v| !in_cover[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_matching_of(g: &Graph) -> Matching {
        maximum_matching(g, &bipartition(g).unwrap()).unwrap()
    }

    /// Largest matching by exhaustive edge-subset search.
    fn brute_matching_number(g: &Graph) -> usize {
        fn go(g: &Graph, i: usize, used: &mut Vec<bool>) -> usize {
            if i == g.size() {
                return 0;
            }
            let (u, v) = g.edges()[i];
            let mut best = go(g, i + 1, used);
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + go(g, i + 1, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        go(g, 0, &mut vec![false; g.order()])
    }

    fn brute_min_cover(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matching_sizes() {
        let c6 = Graph::cycle(6);
        assert_eq!(brute_matching_number(&c6), 3);
        assert_eq!(max_matching_of(&c6).len(), 3);
        assert!(max_matching_of(&Graph::empty(4)).is_empty());
        let p4 = Graph::path(4);
        assert_eq!(brute_matching_number(&p4), 2);
        assert_eq!(max_matching_of(&p4).len(), 2);
    }

    #[test]
    fn deterministic_tie_break() {
        let m = max_matching_of(&Graph::cycle(6));
        assert_eq!(m.edges(), &[(0, 1), (2, 3), (4, 5)]);
        let m = max_matching_of(&Graph::path(4));
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn rejects_invalid_bipartition() {
        let g = Graph::path(3);
        let b = bipartition(&Graph::empty(3)).unwrap();
        assert!(maximum_matching(&g, &b).is_err());
    }

    #[test]
    fn koenig_examples() {
        for g in [Graph::cycle(6), Graph::complete_bipartite(3, 3), Graph::empty(3)] {
            let b = bipartition(&g).unwrap();
            let m = maximum_matching(&g, &b).unwrap();
            let cover = koenig_cover(&g, &b, &m).unwrap();
            assert_eq!(cover.len(), m.len());
            assert_eq!(cover.len(), brute_min_cover(&g));
            for &(u, v) in g.edges() {
                assert!(cover.contains(&u) || cover.contains(&v));
            }
        }
    }

    #[test]
    fn koenig_rejects_non_maximum() {
        let g = Graph::cycle(6);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(0, 1)]).unwrap();
        assert!(matches!(
            koenig_cover(&g, &b, &m),
            Err(MatchingError::NotMaximum(_))
        ));
    }

    #[test]
    fn mis_examples() {
        assert_eq!(maximum_independent_set_bipartite(&Graph::cycle(6)).unwrap().len(), 3);
        assert_eq!(maximum_independent_set_bipartite(&Graph::empty(5)).unwrap().len(), 5);
        let k33 = Graph::complete_bipartite(3, 3);
        let mis = maximum_independent_set_bipartite(&k33).unwrap();
        assert_eq!(mis.len(), 3);
        assert!(k33.is_independent(&mis));
        assert!(maximum_independent_set_bipartite(&Graph::complete(3)).is_err());
    }

    #[test]
    fn matching_predicates() {
        let c6 = Graph::cycle(6);
        assert!(is_induced_matching(&c6, &[(0, 1), (3, 4)]));
        assert!(is_matching(&c6, &[(0, 1), (2, 3)]));
        assert!(!is_induced_matching(&c6, &[(0, 1), (2, 3)]));
        assert!(!is_matching(&c6, &[(0, 1), (1, 2)]));
        assert!(!is_matching(&c6, &[(0, 2)]));
        assert!(!is_matching(&c6, &[(0, 1), (1, 0)]));
        assert!(is_matching(&c6, &[]));
    }

    #[test]
    fn matching_constructors() {
        let c6 = Graph::cycle(6);
        assert!(Matching::induced(&c6, [(0, 1), (3, 4)]).unwrap().is_induced());
        assert!(!Matching::new(&c6, [(0, 1), (2, 3)]).unwrap().is_induced());
        assert!(matches!(
            Matching::induced(&c6, [(0, 1), (2, 3)]),
            Err(MatchingError::NotInduced(..))
        ));
        assert_eq!(
            Matching::new(&c6, [(0, 1), (1, 2)]),
            Err(MatchingError::SharedVertex(1))
        );
        assert_eq!(Matching::new(&c6, [(0, 3)]), Err(MatchingError::NotAnEdge(0, 3)));
    }

    #[test]
    fn augmenting_path_found() {
        let g = Graph::path(4);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(1, 2)]).unwrap();
        let path = find_augmenting_path(&g, &b, &m).unwrap();
        assert_eq!(path, vec![0, 1, 2, 3]);
    }
}
