//! Canonical forms for small graphs by colour refinement and
//! individualization.

use crate::graph::Graph;

/// Largest order [`canonical_code`] accepts (the upper triangle must fit in
/// 128 bits).
pub const MAX_CANON_ORDER: usize = 16;

/// Isomorphism-invariant code: two graphs of the same order get the same
/// code iff they are isomorphic.
///
/// # Panics
///
/// If `g` has more than [`MAX_CANON_ORDER`] vertices.
pub fn canonical_code(g: &Graph) -> u128 {
    assert!(
        g.order() <= MAX_CANON_ORDER,
        "canonical_code supports at most {MAX_CANON_ORDER} vertices"
    );
    let colors = refine(g, vec![0; g.order()]);
    let mut best = None;
    search(g, colors, &mut best);
    best.unwrap_or(0)
}

/// Relabels `g` so that its edge set is the canonical one.
pub fn canonical_form(g: &Graph) -> Graph {
    decode(g.order(), canonical_code(g))
}

/// The graph on `n` vertices whose upper-triangle adjacency bits are `code`.
pub fn decode(n: usize, code: u128) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).expect("decoded edges are valid")
}

/// Equitable refinement. Colours are renumbered by sorted signature, so the
/// result depends only on the isomorphism class of `(g, colors)`.
fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.order();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for v in 0..n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap() as u32;
        }
        if sorted.len() == classes {
            return colors;
        }
        classes = sorted.len();
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(g: &Graph, colors: Vec<u32>, best: &mut Option<u128>) {
    let n = g.order();
    // First (smallest colour) non-singleton cell.
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let code = leaf_code(g, &colors);
        if best.is_none_or(|b| code < b) {
            *best = Some(code);
        }
        return;
    };
    for v in 0..n {
        if colors[v] as usize != target {
            continue;
        }
        let split: Vec<u32> = (0..n)
            .map(|w| 2 * colors[w] + u32::from(colors[w] as usize == target && w != v))
            .collect();
        search(g, refine(g, split), best);
    }
}

fn leaf_code(g: &Graph, colors: &[u32]) -> u128 {
    let n = g.order();
    let mut code = 0u128;
    for &(u, v) in g.edges() {
        let (a, b) = (colors[u] as usize, colors[v] as usize);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        // Index of (i, j) in row-major upper-triangle order.
        let bit = i * (2 * n - i - 1) / 2 + (j - i - 1);
        code |= 1 << bit;
    }
    code
}
