//! Deterministic instance generators: seeded random graphs, bipartite
//! graphs and formulas, and exhaustive catalogs of small graphs.
//!
//! All randomness comes from [`Prng`], ChaCha8 seeded with
//! `ChaCha8Rng::seed_from_u64`, so a seed names the same instance on every
//! platform.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::canon::{canonical_code, decode};
use crate::graph::{bipartition, Graph};
use crate::reductions::CnfFormula;
use crate::twosat::{Literal, TwoSatFormula};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("a 3-CNF clause needs 3 distinct variables, formula has {0}")]
    TooFewVariables(usize),
}

/// The crate's seeded generator.
///
/// * `next_u64`: the ChaCha8 output stream.
/// * `bernoulli(p)`: `(next_u64 >> 11) · 2⁻⁵³ < p`, one draw per call.
/// * `below(n)`: rejection sampling, discarding draws `≥ 2⁶⁴ − (2⁶⁴ mod n)`
///   and returning the rest mod `n`.
#[derive(Debug, Clone)]
pub struct Prng(ChaCha8Rng);

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform in `0..n`.
    ///
    /// # Panics
    ///
    /// If `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let reject_from = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= reject_from {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }
}

fn check_probability(p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::Probability(p))
    }
}

/// Side A is `0..n_a`, side B is `n_a..n_a + n_b`. Pairs `(a, b)` are drawn
/// in row-major order.
pub fn random_bipartite(n_a: usize, n_b: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = Prng::new(seed);
    let mut edges = Vec::new();
    for a in 0..n_a {
        for b in n_a..n_a + n_b {
            if rng.bernoulli(p) {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::new(n_a + n_b, edges).expect("generated edges are valid"))
}

/// `G(n, p)` with pairs `(i, j)`, `i < j`, drawn in lexicographic order.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_probability(p)?;
    let mut rng = Prng::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(p) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("generated edges are valid"))
}

/// Parameters of one corpus member, kept so failures can be reproduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusEntry {
    pub index: usize,
    pub n_a: usize,
    pub n_b: usize,
    pub p: f64,
    pub seed: u64,
}

impl CorpusEntry {
    pub fn name(&self) -> String {
        format!(
            "rand#{} n={}+{} p={} seed={}",
            self.index, self.n_a, self.n_b, self.p, self.seed
        )
    }
}

/// Draws `(n, p, seed)` triples from one stream seeded with `seed`: order
/// uniform in `1..=max_n`, `p` uniform in {0.1, …, 0.9}.
fn corpus_params(count: usize, max_n: usize, seed: u64, split: bool) -> Vec<CorpusEntry> {
    let mut rng = Prng::new(seed);
    (0..count)
        .map(|index| {
            let n = rng.range(1, max_n);
            let n_a = if split { rng.range(0, n) } else { n };
            let p = rng.range(1, 9) as f64 / 10.0;
            CorpusEntry {
                index,
                n_a,
                n_b: n - n_a,
                p,
                seed: rng.next_u64(),
            }
        })
        .collect()
}

/// `count` seeded `G(n, p)` graphs with `1 ≤ n ≤ max_n`.
pub fn random_graph_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(CorpusEntry, Graph)> {
    corpus_params(count, max_n, seed, false)
        .into_iter()
        .map(|e| (e, random_graph(e.n_a, e.p, e.seed).expect("p in range")))
        .collect()
}

/// `count` seeded bipartite graphs with `1 ≤ n ≤ max_n`.
pub fn random_bipartite_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(CorpusEntry, Graph)> {
    corpus_params(count, max_n, seed, true)
        .into_iter()
        .map(|e| (e, random_bipartite(e.n_a, e.n_b, e.p, e.seed).expect("p in range")))
        .collect()
}

/// `clauses` clauses over `vars` variables, each with three distinct
/// variables (chosen by partial Fisher-Yates) and fair-coin polarities.
pub fn random_3cnf(vars: usize, clauses: usize, seed: u64) -> Result<CnfFormula, GenerateError> {
    if vars < 3 {
        return Err(GenerateError::TooFewVariables(vars));
    }
    let mut rng = Prng::new(seed);
    let mut out = Vec::with_capacity(clauses);
    let mut pool: Vec<usize> = (0..vars).collect();
    for _ in 0..clauses {
        let mut clause = Vec::with_capacity(3);
        for k in 0..3 {
            let pick = rng.range(k, vars - 1);
            pool.swap(k, pick);
            clause.push(Literal {
                var: pool[k],
                positive: rng.bernoulli(0.5),
            });
        }
        out.push(clause);
    }
    Ok(CnfFormula::new(vars, out).expect("clauses use distinct in-range variables"))
}

/// Random 2-SAT instance; each clause has one literal with probability 1/8.
pub fn random_2sat(vars: usize, clauses: usize, seed: u64) -> TwoSatFormula {
    let mut f = TwoSatFormula::new(vars);
    if vars == 0 {
        return f;
    }
    let mut rng = Prng::new(seed);
    for _ in 0..clauses {
        let width = if rng.below(8) == 0 { 1 } else { 2 };
        let lits: Vec<Literal> = (0..width)
            .map(|_| Literal {
                var: rng.below(vars as u64) as usize,
                positive: rng.bernoulli(0.5),
            })
            .collect();
        f.add_clause(&lits).expect("literals in range");
    }
    f
}

fn extend(
    parents: &[Graph],
    mut neighborhoods: impl FnMut(&Graph) -> Vec<Vec<usize>>,
    keep: impl Fn(&Graph) -> bool,
) -> Vec<Graph> {
    let mut seen = HashSet::new();
    for g in parents {
        let n = g.order();
        for nb in neighborhoods(g) {
            let edges = g.edges().iter().copied().chain(nb.iter().map(|&u| (u, n)));
            let h = Graph::new(n + 1, edges).expect("extension edges are valid");
            if keep(&h) {
                seen.insert(canonical_code(&h));
            }
        }
    }
    // Descending code order puts denser graphs first; any fixed order works.
    let mut codes: Vec<u128> = seen.into_iter().collect();
    codes.sort_unstable_by(|a, b| b.cmp(a));
    codes.into_iter().map(|c| decode(n_next(parents), c)).collect()
}

fn n_next(parents: &[Graph]) -> usize {
    parents.first().map_or(0, |g| g.order() + 1)
}

fn subsets(of: &[usize], nonempty: bool) -> Vec<Vec<usize>> {
    (u32::from(nonempty)..1u32 << of.len())
        .map(|mask| {
            of.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// One representative per isomorphism class, for every order
/// `1..=max_n`, grouped by order. Generated by adding a vertex to each class
/// one order down.
fn catalog(
    max_n: usize,
    neighborhoods: impl Fn(&Graph) -> Vec<Vec<usize>>,
    keep: impl Fn(&Graph) -> bool,
) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut level = vec![Graph::empty(1)];
    out.extend(level.iter().cloned());
    for _ in 2..=max_n {
        level = extend(&level, &neighborhoods, &keep);
        out.extend(level.iter().cloned());
    }
    out
}

/// All connected graphs with `1 ≤ n ≤ max_n`, up to isomorphism. Every
/// connected graph has a non-cut vertex, so extending the connected graphs
/// one order down by a vertex with a nonempty neighbourhood reaches all.
pub fn connected_catalog(max_n: usize) -> Vec<Graph> {
    catalog(
        max_n,
        |g| subsets(&(0..g.order()).collect::<Vec<_>>(), true),
        |_| true,
    )
}

/// All connected bipartite graphs with `1 ≤ n ≤ max_n`, up to isomorphism.
/// The new vertex may only see one side of the (unique) bipartition.
pub fn connected_bipartite_catalog(max_n: usize) -> Vec<Graph> {
    catalog(
        max_n,
        |g| {
            let b = bipartition(g).expect("catalog members are bipartite");
            let mut out = subsets(&b.side_a(), true);
            out.extend(subsets(&b.side_b(), true));
            out
        },
        |_| true,
    )
}

/// All bipartite graphs (connected or not) with `1 ≤ n ≤ max_n`, up to
/// isomorphism.
pub fn bipartite_catalog(max_n: usize) -> Vec<Graph> {
    catalog(
        max_n,
        |g| subsets(&(0..g.order()).collect::<Vec<_>>(), false),
        |h| bipartition(h).is_ok(),
    )
}

/// All graphs (connected or not) with `n ≤ max_n`, up to isomorphism,
/// including the empty graph on zero vertices.
pub fn all_graphs_catalog(max_n: usize) -> Vec<Graph> {
    let mut out = vec![Graph::empty(0)];
    out.extend(catalog(
        max_n,
        |g| subsets(&(0..g.order()).collect::<Vec<_>>(), false),
        |_| true,
    ));
    out
}
