//! Exact solvers for the dissociation number, the independence number and
//! the induced matching number of small graphs.
//!
//! All three are branch-and-bound searches over [`BitSet`]s. They are the
//! oracles the rest of the crate is tested against, so they favour plain
//! correctness over cleverness: one reduction rule, one bound, one
//! branching rule each.

use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Edge, Graph, Vertex};
use crate::matching::Matching;

pub const DEFAULT_VERTEX_CUTOFF: usize = 30;
pub const DEFAULT_INDUCED_MATCHING_CUTOFF: usize = 24;

/// Largest instance orders the exact solvers accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cutoffs {
    /// Applies to diss and α.
    pub vertices: usize,
    /// Applies to ν_s, whose search runs over edges.
    pub induced_matching: usize,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Cutoffs {
            vertices: DEFAULT_VERTEX_CUTOFF,
            induced_matching: DEFAULT_INDUCED_MATCHING_CUTOFF,
        }
    }
}

impl Cutoffs {
    /// Both cutoffs set to `n`.
    pub fn uniform(n: usize) -> Self {
        Cutoffs {
            vertices: n,
            induced_matching: n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("instance too large: {what} is {size}, cutoff is {cutoff}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        cutoff: usize,
    },
}

fn check_size(what: &'static str, size: usize, cutoff: usize) -> Result<(), ExactError> {
    let cutoff = cutoff.min(BitSet::CAPACITY);
    if size > cutoff {
        return Err(ExactError::InstanceTooLarge { what, size, cutoff });
    }
    Ok(())
}

fn adjacency(g: &Graph) -> Vec<BitSet> {
    (0..g.order())
        .map(|v| BitSet::from_iter_checked(g.neighbors(v).iter().copied()))
        .collect()
}

/// True iff every vertex of `set` has at most one neighbor inside `set`.
/// Vertices outside the graph make the answer `false`.
pub fn is_dissociation_set(g: &Graph, set: &[Vertex]) -> bool {
    let n = g.order();
    let mut inside = vec![false; n];
    for &v in set {
        if v >= n || inside[v] {
            return false;
        }
        inside[v] = true;
    }
    set.iter()
        .all(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count() <= 1)
}

/// Greedy clique partition of `p`; returns the number of cliques and the
/// sum of `min(|K|, cap)` over them.
fn clique_cover(adj: &[BitSet], p: BitSet, cap: usize) -> usize {
    let mut rest = p;
    let mut total = 0;
    while let Some(v) = rest.first() {
        let mut size = 1;
        let mut cand = rest.and(&adj[v]);
        rest.remove(v);
        while let Some(w) = cand.first() {
            size += 1;
            rest.remove(w);
            cand = cand.and(&adj[w]);
        }
        total += size.min(cap);
    }
    total
}

/// Vertex of `p` with the most neighbors in `p`, lowest index on ties.
fn max_degree_vertex(adj: &[BitSet], p: &BitSet) -> Option<Vertex> {
    let mut best: Option<(usize, Vertex)> = None;
    for v in p.iter() {
        let d = adj[v].and_len(p);
        if best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

struct IndependentSetSearch<'a> {
    adj: &'a [BitSet],
    best: BitSet,
}

impl IndependentSetSearch<'_> {
    fn run(&mut self, mut p: BitSet, mut s: BitSet) {
        // Vertices with at most one neighbor left can always be taken.
        loop {
            let forced = p.iter().find(|&v| self.adj[v].and_len(&p) <= 1);
            match forced {
                Some(v) => {
                    s.insert(v);
                    p = p.minus(&self.adj[v]);
                    p.remove(v);
                }
                None => break,
            }
        }
        if p.is_empty() {
            if s.len() > self.best.len() {
                self.best = s;
            }
            return;
        }
        if s.len() + clique_cover(self.adj, p, 1) <= self.best.len() {
            return;
        }
        let v = max_degree_vertex(self.adj, &p).expect("p is nonempty");
        let mut with_v = s;
        with_v.insert(v);
        let mut rest = p.minus(&self.adj[v]);
        rest.remove(v);
        self.run(rest, with_v);
        let mut without_v = p;
        without_v.remove(v);
        self.run(without_v, s);
    }
}

fn max_independent_set(adj: &[BitSet], p: BitSet) -> BitSet {
    let mut search = IndependentSetSearch {
        adj,
        best: BitSet::new(),
    };
    search.run(p, BitSet::new());
    search.best
}

struct DissociationSearch<'a> {
    adj: &'a [BitSet],
    best: BitSet,
}

impl DissociationSearch<'_> {
    /// Drops from `p` every vertex that can no longer join `s`: those with
    /// two chosen neighbors and those next to a chosen vertex that already
    /// has its one chosen neighbor.
    fn prune(&self, p: BitSet, s: &BitSet) -> BitSet {
        let mut out = p;
        for u in s.iter() {
            if !self.adj[u].and(s).is_empty() {
                out = out.minus(&self.adj[u]);
            }
        }
        let candidates = out;
        for w in candidates.iter() {
            if self.adj[w].and_len(s) >= 2 {
                out.remove(w);
            }
        }
        out
    }

    fn run(&mut self, mut p: BitSet, mut s: BitSet) {
        // A candidate with at most one neighbor among chosen and undecided
        // vertices belongs to some optimum extending `s`.
        loop {
            let live = p.or(&s);
            let forced = p.iter().find(|&v| self.adj[v].and_len(&live) <= 1);
            match forced {
                Some(v) => {
                    s.insert(v);
                    p.remove(v);
                    p = self.prune(p, &s);
                }
                None => break,
            }
        }
        if p.is_empty() {
            if s.len() > self.best.len() {
                self.best = s;
            }
            return;
        }
        // A clique contributes at most two vertices.
        if s.len() + clique_cover(self.adj, p, 2) <= self.best.len() {
            return;
        }
        let v = max_degree_vertex(self.adj, &p).expect("p is nonempty");
        let mut with_v = s;
        with_v.insert(v);
        let mut rest = p;
        rest.remove(v);
        let rest = self.prune(rest, &with_v);
        self.run(rest, with_v);
        let mut without_v = p;
        without_v.remove(v);
        self.run(without_v, s);
    }
}

/// `(diss(g), a maximum dissociation set)`, the set sorted ascending.
pub fn dissociation_number_exact(
    g: &Graph,
    cutoffs: &Cutoffs,
) -> Result<(usize, Vec<Vertex>), ExactError> {
    check_size("vertex count", g.order(), cutoffs.vertices)?;
    let adj = adjacency(g);
    let mut search = DissociationSearch {
        adj: &adj,
        best: BitSet::new(),
    };
    search.run(BitSet::full(g.order()), BitSet::new());
    let set: Vec<Vertex> = search.best.iter().collect();
    debug_assert!(is_dissociation_set(g, &set));
    Ok((set.len(), set))
}

/// `(α(g), a maximum independent set)`, the set sorted ascending.
pub fn independence_number_exact(
    g: &Graph,
    cutoffs: &Cutoffs,
) -> Result<(usize, Vec<Vertex>), ExactError> {
    check_size("vertex count", g.order(), cutoffs.vertices)?;
    let adj = adjacency(g);
    let set: Vec<Vertex> = max_independent_set(&adj, BitSet::full(g.order()))
        .iter()
        .collect();
    debug_assert!(g.is_independent(&set));
    Ok((set.len(), set))
}

/// For each edge, the set of edges that cannot share an induced matching
/// with it: those touching the closed neighborhood of either endpoint.
fn edge_conflicts(g: &Graph) -> Vec<BitSet> {
    let adj = adjacency(g);
    let closed: Vec<BitSet> = (0..g.order())
        .map(|v| {
            let mut s = adj[v];
            s.insert(v);
            s
        })
        .collect();
    let edges = g.edges();
    edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let reach = closed[a].or(&closed[b]);
            let mut out = BitSet::new();
            for (j, &(c, d)) in edges.iter().enumerate() {
                if j != i && (reach.contains(c) || reach.contains(d)) {
                    out.insert(j);
                }
            }
            out
        })
        .collect()
}

/// `(ν_s(g), a maximum induced matching)`.
///
/// Searches edge subsets directly: an edge taken into the matching rules out
/// every edge within distance one of it, which makes this an independent
/// set search over the edge conflict graph.
pub fn induced_matching_number_exact(
    g: &Graph,
    cutoffs: &Cutoffs,
) -> Result<(usize, Matching), ExactError> {
    check_size("vertex count", g.order(), cutoffs.induced_matching)?;
    check_size("edge count", g.size(), BitSet::CAPACITY)?;
    let conflicts = edge_conflicts(g);
    let chosen = max_independent_set(&conflicts, BitSet::full(g.size()));
    let m = Matching::induced(g, chosen.iter().map(|i| g.edges()[i]))
        .expect("conflict-free edges form an induced matching");
    Ok((m.len(), m))
}

/// Calls `visit` once for every induced matching of `g`, the empty one
/// included.
pub fn for_each_induced_matching(g: &Graph, mut visit: impl FnMut(&[Edge])) {
    fn go(
        edges: &[Edge],
        conflicts: &[BitSet],
        i: usize,
        blocked: BitSet,
        current: &mut Vec<Edge>,
        visit: &mut dyn FnMut(&[Edge]),
    ) {
        if i == edges.len() {
            visit(current);
            return;
        }
        go(edges, conflicts, i + 1, blocked, current, visit);
        if !blocked.contains(i) {
            current.push(edges[i]);
            go(
                edges,
                conflicts,
                i + 1,
                blocked.or(&conflicts[i]),
                current,
                visit,
            );
            current.pop();
        }
    }
    let conflicts = edge_conflicts(g);
    go(
        g.edges(),
        &conflicts,
        0,
        BitSet::new(),
        &mut Vec::new(),
        &mut visit,
    );
}

/// `max α(g − M)` over all induced matchings `M` of `g`, which equals
/// diss(g): the edges inside a dissociation set form an induced matching,
/// and deleting them leaves the set independent.
pub fn diss_via_induced_matchings(g: &Graph, cutoffs: &Cutoffs) -> Result<usize, ExactError> {
    check_size("vertex count", g.order(), cutoffs.vertices.min(cutoffs.induced_matching))?;
    check_size("edge count", g.size(), BitSet::CAPACITY)?;
    let adj = adjacency(g);
    let full = BitSet::full(g.order());
    let mut best = 0;
    for_each_induced_matching(g, |m| {
        let mut reduced = adj.clone();
        for &(u, v) in m {
            reduced[u].remove(v);
            reduced[v].remove(u);
        }
        best = best.max(max_independent_set(&reduced, full).len());
    });
    Ok(best)
}

/// Which bounds of `max(α, 2ν_s) ≤ diss ≤ α + ν_s ≤ 2α` are tight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EqualityFlags {
    pub diss_eq_2alpha: bool,
    pub diss_eq_2nu_s: bool,
    pub diss_eq_alpha: bool,
    pub diss_eq_alpha_plus_nu_s: bool,
    pub alpha_plus_nu_s_eq_2alpha: bool,
}

impl EqualityFlags {
    pub fn from_values(diss: usize, alpha: usize, nu_s: usize) -> Self {
        EqualityFlags {
            diss_eq_2alpha: diss == 2 * alpha,
            diss_eq_2nu_s: diss == 2 * nu_s,
            diss_eq_alpha: diss == alpha,
            diss_eq_alpha_plus_nu_s: diss == alpha + nu_s,
            alpha_plus_nu_s_eq_2alpha: alpha + nu_s == 2 * alpha,
        }
    }

    /// `(name, value)` pairs in a fixed order, for reports.
    pub fn named(&self) -> [(&'static str, bool); 5] {
        [
            ("diss=2alpha", self.diss_eq_2alpha),
            ("diss=2nu_s", self.diss_eq_2nu_s),
            ("diss=alpha", self.diss_eq_alpha),
            ("diss=alpha+nu_s", self.diss_eq_alpha_plus_nu_s),
            ("alpha+nu_s=2alpha", self.alpha_plus_nu_s_eq_2alpha),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub diss: usize,
    pub alpha: usize,
    pub nu_s: usize,
    pub diss_witness: Vec<Vertex>,
    pub alpha_witness: Vec<Vertex>,
    pub nu_s_witness: Matching,
    pub equalities: EqualityFlags,
}

impl InvariantReport {
    pub fn chain_holds(&self) -> bool {
        let (d, a, s) = (self.diss, self.alpha, self.nu_s);
        a.max(2 * s) <= d && d <= a + s && a + s <= 2 * a
    }

    /// Re-checks every witness against its definition and size.
    pub fn witnesses_valid(&self, g: &Graph) -> bool {
        self.diss_witness.len() == self.diss
            && is_dissociation_set(g, &self.diss_witness)
            && self.alpha_witness.len() == self.alpha
            && g.is_independent(&self.alpha_witness)
            && self.nu_s_witness.len() == self.nu_s
            && crate::matching::is_induced_matching(g, self.nu_s_witness.edges())
    }
}

/// Computes diss, α and ν_s with witnesses and the equality flags.
pub fn check_inequality_chain(g: &Graph, cutoffs: &Cutoffs) -> Result<InvariantReport, ExactError> {
    let (diss, diss_witness) = dissociation_number_exact(g, cutoffs)?;
    let (alpha, alpha_witness) = independence_number_exact(g, cutoffs)?;
    let (nu_s, nu_s_witness) = induced_matching_number_exact(g, cutoffs)?;
    Ok(InvariantReport {
        diss,
        alpha,
        nu_s,
        diss_witness,
        alpha_witness,
        nu_s_witness,
        equalities: EqualityFlags::from_values(diss, alpha, nu_s),
    })
}
