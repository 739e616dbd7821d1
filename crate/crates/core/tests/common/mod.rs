//! Brute-force oracles shared by the integration tests. Each one enumerates
//! every feasible object with no bounding, so they stay independent of the
//! branch-and-bound solvers they check.

#![allow(dead_code)]

use dissolab::graph::Graph;
use dissolab::twosat::TwoSatFormula;

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.order() <= 64, "oracle supports at most 64 vertices");
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Largest independent set, by enumerating all of them.
pub fn alpha(g: &Graph) -> usize {
    fn go(v: usize, n: usize, adj: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if v == n {
            *best = (*best).max(size);
            return;
        }
        if adj[v] & chosen == 0 {
            go(v + 1, n, adj, chosen | 1 << v, size + 1, best);
        }
        go(v + 1, n, adj, chosen, size, best);
    }
    let adj = masks(g);
    let mut best = 0;
    go(0, g.order(), &adj, 0, 0, &mut best);
    best
}

/// Largest set inducing maximum degree at most one, by enumerating all.
pub fn diss(g: &Graph) -> usize {
    fn go(v: usize, n: usize, adj: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if v == n {
            *best = (*best).max(size);
            return;
        }
        let inside = adj[v] & chosen;
        let ok = inside.count_ones() <= 1
            && (inside == 0 || adj[inside.trailing_zeros() as usize] & chosen == 0);
        if ok {
            go(v + 1, n, adj, chosen | 1 << v, size + 1, best);
        }
        go(v + 1, n, adj, chosen, size, best);
    }
    let adj = masks(g);
    let mut best = 0;
    go(0, g.order(), &adj, 0, 0, &mut best);
    best
}

/// Largest induced matching, by enumerating all of them.
pub fn nu_s(g: &Graph) -> usize {
    fn go(i: usize, edges: &[(usize, usize)], adj: &[u64], blocked: u64, size: usize, best: &mut usize) {
        if i == edges.len() {
            *best = (*best).max(size);
            return;
        }
        let (u, v) = edges[i];
        if blocked >> u & 1 == 0 && blocked >> v & 1 == 0 {
            let more = (1u64 << u) | (1 << v) | adj[u] | adj[v];
            go(i + 1, edges, adj, blocked | more, size + 1, best);
        }
        go(i + 1, edges, adj, blocked, size, best);
    }
    let adj = masks(g);
    let mut best = 0;
    go(0, g.edges(), &adj, 0, 0, &mut best);
    best
}

/// Largest matching, by enumerating all of them.
pub fn matching_number(g: &Graph) -> usize {
    fn go(i: usize, edges: &[(usize, usize)], used: u64, size: usize, best: &mut usize) {
        if i == edges.len() {
            *best = (*best).max(size);
            return;
        }
        let (u, v) = edges[i];
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            go(i + 1, edges, used | 1 << u | 1 << v, size + 1, best);
        }
        go(i + 1, edges, used, size, best);
    }
    let mut best = 0;
    go(0, g.edges(), 0, 0, &mut best);
    best
}

pub fn is_dissociation_set(g: &Graph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.order()];
    for &v in set {
        if v >= g.order() || inside[v] {
            return false;
        }
        inside[v] = true;
    }
    set.iter()
        .all(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count() <= 1)
}

/// Truth-table satisfiability.
pub fn satisfiable_2sat(f: &TwoSatFormula) -> bool {
    let n = f.var_count();
    assert!(n <= 24);
    let mut values = vec![false; n];
    (0u32..1 << n).any(|mask| {
        for (v, slot) in values.iter_mut().enumerate() {
            *slot = mask >> v & 1 == 1;
        }
        f.clauses()
            .iter()
            .all(|c| c.iter().any(|l| values[l.var] == l.positive))
    })
}
