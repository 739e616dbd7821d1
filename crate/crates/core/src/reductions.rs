//! Gadget constructions whose invariant equalities encode the answer to a
//! 3-SAT or Independent Set instance, and the clique-join construction.
//!
//! Every gadget carries the values its construction predicts. Some are
//! unconditional (orders, α of the clause-clique gadget, ...), others are
//! biconditionals against the source instance (`diss = 2α` iff the formula
//! is satisfiable, ...). [`check_predictions`] evaluates them with the exact
//! solvers.
//!
//! Serialized instances are edge lists with a metadata block of comment
//! lines:
//!
//! ```text
//! c kind clause-clique
//! c role 1 lit:C1:x1
//! c predict order 12
//! c predict nu_s >=2
//! c predict diss=alpha+nu_s true
//! c predict diss=2alpha iff:satisfiable
//! c source satisfiable true
//! c m 1 4
//! ```
//!
//! Vertex numbers in `role` and `m` lines are 1-indexed like the edges.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::{
    dissociation_number_exact, independence_number_exact, induced_matching_number_exact,
    Cutoffs, ExactError,
};
use crate::format::{render_annotated, ParseError};
use crate::graph::{Edge, Graph, Vertex};
use crate::matching::{Matching, MatchingError};
use crate::twosat::Literal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("clause {clause} has {len} literals, expected 3")]
    ClauseWidth { clause: usize, len: usize },
    #[error("clause {clause} repeats variable x{}", var + 1)]
    RepeatedVariable { clause: usize, var: usize },
    #[error("clause {clause} uses variable x{} but the formula has {var_count}", var + 1)]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        var_count: usize,
    },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("line {line}: {message}")]
    Cnf { line: usize, message: String },
    #[error("bad metadata line {0:?}")]
    Metadata(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// A 3-CNF formula: every clause has three literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, GadgetError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.into_iter().enumerate() {
            let clause = i + 1;
            let lits: [Literal; 3] = c
                .as_slice()
                .try_into()
                .map_err(|_| GadgetError::ClauseWidth {
                    clause,
                    len: c.len(),
                })?;
            for (k, l) in lits.iter().enumerate() {
                if l.var >= var_count {
                    return Err(GadgetError::VariableOutOfRange {
                        clause,
                        var: l.var,
                        var_count,
                    });
                }
                if lits[..k].iter().any(|o| o.var == l.var) {
                    return Err(GadgetError::RepeatedVariable { clause, var: l.var });
                }
            }
            out.push(lits);
        }
        Ok(CnfFormula {
            var_count,
            clauses: out,
        })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(values)))
    }

    /// Truth-table satisfiability; `None` above 24 variables.
    pub fn brute_force_satisfiable(&self) -> Option<bool> {
        if self.var_count > 24 {
            return None;
        }
        let mut values = vec![false; self.var_count];
        Some((0u32..1 << self.var_count).any(|mask| {
            for (v, slot) in values.iter_mut().enumerate() {
                *slot = mask >> v & 1 == 1;
            }
            self.eval(&values)
        }))
    }

    /// Parses DIMACS CNF (`p cnf <vars> <clauses>`, clauses as signed
    /// 1-based literals terminated by `0`).
    pub fn parse_dimacs(text: &str) -> Result<Self, GadgetError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let bad = |message: String| GadgetError::Cnf {
                line: line_no,
                message,
            };
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                header = match parts.as_slice() {
                    ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                if header.is_none() {
                    return Err(bad(format!("malformed header {line:?}")));
                }
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(bad("clause before header".into()));
            };
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var > vars {
                    return Err(bad(format!("variable {var} exceeds {vars}")));
                }
                current.push(Literal {
                    var: var - 1,
                    positive: lit > 0,
                });
            }
        }
        let Some((vars, count)) = header else {
            return Err(GadgetError::Cnf {
                line: last,
                message: "missing header".into(),
            });
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(GadgetError::Cnf {
                line: last,
                message: format!("header announces {count} clauses, found {}", clauses.len()),
            });
        }
        Self::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            let lits: Vec<String> = c
                .iter()
                .map(|l| {
                    let v = l.var as i64 + 1;
                    (if l.positive { v } else { -v }).to_string()
                })
                .collect();
            out.push_str(&lits.join(" "));
            out.push_str(" 0\n");
        }
        out
    }
}

fn literal_tag(l: Literal) -> String {
    if l.positive {
        format!("x{}", l.var + 1)
    } else {
        format!("-x{}", l.var + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    /// One `K4` per clause (three literal vertices and a hub), complementary
    /// literal occurrences joined across clauses.
    ClauseClique,
    /// One `K6` minus a perfect matching per clause; only the first copy of
    /// each literal is joined to complementary occurrences.
    ClauseCocktailParty,
    /// Independent Set reduction: pendants on every vertex plus a joined
    /// `(k-1) K2`.
    IndependentSet,
    /// Join with a clique of the same order, plus a perfect matching across.
    CliqueJoin,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::ClauseClique => "clause-clique",
            GadgetKind::ClauseCocktailParty => "clause-cocktail-party",
            GadgetKind::IndependentSet => "independent-set",
            GadgetKind::CliqueJoin => "clique-join",
        }
    }
}

impl FromStr for GadgetKind {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            GadgetKind::ClauseClique,
            GadgetKind::ClauseCocktailParty,
            GadgetKind::IndependentSet,
            GadgetKind::CliqueJoin,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| GadgetError::Metadata(format!("kind {s}")))
    }
}

/// A graph invariant a gadget predicts, possibly of `H − M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Order,
    Alpha,
    Diss,
    NuS,
    AlphaWithoutMatching,
    DissWithoutMatching,
}

impl Invariant {
    const ALL: [Invariant; 6] = [
        Invariant::Order,
        Invariant::Alpha,
        Invariant::Diss,
        Invariant::NuS,
        Invariant::AlphaWithoutMatching,
        Invariant::DissWithoutMatching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Order => "order",
            Invariant::Alpha => "alpha",
            Invariant::Diss => "diss",
            Invariant::NuS => "nu_s",
            Invariant::AlphaWithoutMatching => "alpha(H-M)",
            Invariant::DissWithoutMatching => "diss(H-M)",
        }
    }
}

/// A relation between invariants of the gadget graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    DissEq2Alpha,
    DissEq2NuS,
    DissEqAlpha,
    DissEqAlphaPlusNuS,
    DissLtAlphaPlusNuS,
    NuSAtLeast(usize),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::DissEq2Alpha => write!(f, "diss=2alpha"),
            Relation::DissEq2NuS => write!(f, "diss=2nu_s"),
            Relation::DissEqAlpha => write!(f, "diss=alpha"),
            Relation::DissEqAlphaPlusNuS => write!(f, "diss=alpha+nu_s"),
            Relation::DissLtAlphaPlusNuS => write!(f, "diss<alpha+nu_s"),
            Relation::NuSAtLeast(k) => write!(f, "nu_s>={k}"),
        }
    }
}

impl FromStr for Relation {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "diss=2alpha" => Relation::DissEq2Alpha,
            "diss=2nu_s" => Relation::DissEq2NuS,
            "diss=alpha" => Relation::DissEqAlpha,
            "diss=alpha+nu_s" => Relation::DissEqAlphaPlusNuS,
            "diss<alpha+nu_s" => Relation::DissLtAlphaPlusNuS,
            _ => match s.strip_prefix("nu_s>=").map(str::parse) {
                Some(Ok(k)) => Relation::NuSAtLeast(k),
                _ => return Err(GadgetError::Metadata(format!("relation {s}"))),
            },
        })
    }
}

/// The yes/no question of the source instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceQuestion {
    /// Is the 3-CNF formula satisfiable?
    Satisfiable,
    /// Is `α(G) ≥ k` for the Independent Set instance `(G, k)`?
    AlphaAtLeastK,
}

impl SourceQuestion {
    pub fn name(self) -> &'static str {
        match self {
            SourceQuestion::Satisfiable => "satisfiable",
            SourceQuestion::AlphaAtLeastK => "alpha>=k",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "satisfiable" => Some(SourceQuestion::Satisfiable),
            "alpha>=k" => Some(SourceQuestion::AlphaAtLeastK),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Exact(Invariant, usize),
    AtLeast(Invariant, usize),
    /// The relation holds (or fails) regardless of the source instance.
    Holds(Relation, bool),
    /// The relation holds iff the source answer is yes.
    Iff(Relation, SourceQuestion),
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(i, v) => write!(f, "{} {v}", i.name()),
            Prediction::AtLeast(i, v) => write!(f, "{} >={v}", i.name()),
            Prediction::Holds(r, b) => write!(f, "{r} {b}"),
            Prediction::Iff(r, q) => write!(f, "{r} iff:{}", q.name()),
        }
    }
}

impl FromStr for Prediction {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GadgetError::Metadata(format!("predict {s}"));
        let (name, value) = s.split_once(' ').ok_or_else(bad)?;
        let value = value.trim();
        if let Some(inv) = Invariant::ALL.into_iter().find(|i| i.name() == name) {
            return match value.strip_prefix(">=") {
                Some(v) => Ok(Prediction::AtLeast(inv, v.parse().map_err(|_| bad())?)),
                None => Ok(Prediction::Exact(inv, value.parse().map_err(|_| bad())?)),
            };
        }
        let rel: Relation = name.parse()?;
        match value {
            "true" => Ok(Prediction::Holds(rel, true)),
            "false" => Ok(Prediction::Holds(rel, false)),
            _ => value
                .strip_prefix("iff:")
                .and_then(SourceQuestion::parse)
                .map(|q| Prediction::Iff(rel, q))
                .ok_or_else(bad),
        }
    }
}

/// A constructed gadget with its predictions and vertex roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub kind: GadgetKind,
    pub predicted: Vec<Prediction>,
    /// One tag per vertex.
    pub roles: Vec<String>,
    pub source: SourceQuestion,
    /// Answer to the source question, when it was cheap to compute.
    pub source_answer: Option<bool>,
    /// The cross matching of a clique join.
    pub matching: Option<Matching>,
}

impl GadgetInstance {
    /// Edge list with the metadata block in front of the header.
    pub fn render(&self) -> String {
        let mut comments = vec![format!("kind {}", self.kind.name())];
        for (v, role) in self.roles.iter().enumerate() {
            comments.push(format!("role {} {role}", v + 1));
        }
        for p in &self.predicted {
            comments.push(format!("predict {p}"));
        }
        match self.source_answer {
            Some(a) => comments.push(format!("source {} {a}", self.source.name())),
            None => comments.push(format!("source {} unknown", self.source.name())),
        }
        if let Some(m) = &self.matching {
            for &(u, v) in m.edges() {
                comments.push(format!("m {} {}", u + 1, v + 1));
            }
        }
        render_annotated(&self.graph, &comments)
    }

    /// Rebuilds an instance from [`GadgetInstance::render`] output.
    pub fn parse(text: &str) -> Result<Self, GadgetError> {
        let (graph, comments) = crate::format::parse_annotated(text)?;
        let mut kind = None;
        let mut roles = vec![String::new(); graph.order()];
        let mut predicted = Vec::new();
        let mut source = None;
        let mut source_answer = None;
        let mut matching = Vec::new();
        for c in &comments {
            let bad = || GadgetError::Metadata(c.clone());
            let (head, rest) = c.split_once(' ').unwrap_or((c.as_str(), ""));
            match head {
                "kind" => kind = Some(rest.trim().parse()?),
                "role" => {
                    let (v, tag) = rest.split_once(' ').ok_or_else(bad)?;
                    let v: usize = v.parse().map_err(|_| bad())?;
                    if v == 0 || v > graph.order() {
                        return Err(bad());
                    }
                    roles[v - 1] = tag.trim().to_string();
                }
                "predict" => predicted.push(rest.trim().parse()?),
                "source" => {
                    let (q, a) = rest.split_once(' ').ok_or_else(bad)?;
                    source = Some(SourceQuestion::parse(q).ok_or_else(bad)?);
                    source_answer = match a.trim() {
                        "true" => Some(true),
                        "false" => Some(false),
                        "unknown" => None,
                        _ => return Err(bad()),
                    };
                }
                "m" => {
                    let mut it = rest.split_whitespace().map(str::parse::<usize>);
                    match (it.next(), it.next()) {
                        (Some(Ok(u)), Some(Ok(v))) if u >= 1 && v >= 1 => {
                            matching.push((u - 1, v - 1))
                        }
                        _ => return Err(bad()),
                    }
                }
                // Other comments are free text.
                _ => {}
            }
        }
        let kind = kind.ok_or_else(|| GadgetError::Metadata("missing kind".into()))?;
        let source = source.ok_or_else(|| GadgetError::Metadata("missing source".into()))?;
        let matching = if matching.is_empty() && kind != GadgetKind::CliqueJoin {
            None
        } else {
            Some(Matching::new(&graph, matching)?)
        };
        Ok(GadgetInstance {
            graph,
            kind,
            predicted,
            roles,
            source,
            source_answer,
            matching,
        })
    }
}

fn complementary(a: Literal, b: Literal) -> bool {
    a.var == b.var && a.positive != b.positive
}

/// Clause-clique gadget: vertex `4i + k` is the `k`-th literal of clause
/// `i`, vertex `4i + 3` its hub. Order `4m`, `α = m`, and `diss = α + ν_s`
/// always; `diss = 2α` and `diss = 2ν_s` each hold iff `f` is satisfiable.
pub fn gadget_diss_2alpha(f: &CnfFormula) -> GadgetInstance {
    let m = f.clauses().len();
    let mut edges = Vec::new();
    let mut roles = Vec::with_capacity(4 * m);
    for (i, clause) in f.clauses().iter().enumerate() {
        let base = 4 * i;
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((base + u, base + v));
            }
        }
        for l in clause {
            roles.push(format!("lit:C{}:{}", i + 1, literal_tag(*l)));
        }
        roles.push(format!("hub:C{}", i + 1));
    }
    for (i, ci) in f.clauses().iter().enumerate() {
        for (j, cj) in f.clauses().iter().enumerate().skip(i + 1) {
            for (ki, &li) in ci.iter().enumerate() {
                for (kj, &lj) in cj.iter().enumerate() {
                    if complementary(li, lj) {
                        edges.push((4 * i + ki, 4 * j + kj));
                    }
                }
            }
        }
    }
    let graph = Graph::new(4 * m, edges).expect("gadget edges are valid");
    GadgetInstance {
        graph,
        kind: GadgetKind::ClauseClique,
        predicted: vec![
            Prediction::Exact(Invariant::Order, 4 * m),
            Prediction::Exact(Invariant::Alpha, m),
            Prediction::Holds(Relation::DissEqAlphaPlusNuS, true),
            Prediction::Iff(Relation::DissEq2Alpha, SourceQuestion::Satisfiable),
            Prediction::Iff(Relation::DissEq2NuS, SourceQuestion::Satisfiable),
        ],
        roles,
        source: SourceQuestion::Satisfiable,
        source_answer: f.brute_force_satisfiable(),
        matching: None,
    }
}

/// Cocktail-party gadget: clause `i` owns vertices `6i..6i + 6`, the first
/// copies of its literals at `6i + k` and the second copies at `6i + 3 + k`;
/// they induce `K6` minus the three edges between copies of one literal.
/// Order `6m`, `diss = 2m`; `diss = α` iff `f` is satisfiable.
pub fn gadget_diss_alpha(f: &CnfFormula) -> GadgetInstance {
    let m = f.clauses().len();
    let mut edges = Vec::new();
    let mut roles = Vec::with_capacity(6 * m);
    for (i, clause) in f.clauses().iter().enumerate() {
        let base = 6 * i;
        for u in 0..6 {
            for v in u + 1..6 {
                if v != u + 3 {
                    edges.push((base + u, base + v));
                }
            }
        }
        for copy in 1..=2 {
            for l in clause {
                roles.push(format!("lit{copy}:C{}:{}", i + 1, literal_tag(*l)));
            }
        }
    }
    for (i, ci) in f.clauses().iter().enumerate() {
        for (j, cj) in f.clauses().iter().enumerate().skip(i + 1) {
            for (ki, &li) in ci.iter().enumerate() {
                for (kj, &lj) in cj.iter().enumerate() {
                    if complementary(li, lj) {
                        edges.push((6 * i + ki, 6 * j + kj));
                    }
                }
            }
        }
    }
    let graph = Graph::new(6 * m, edges).expect("gadget edges are valid");
    GadgetInstance {
        graph,
        kind: GadgetKind::ClauseCocktailParty,
        predicted: vec![
            Prediction::Exact(Invariant::Order, 6 * m),
            Prediction::Exact(Invariant::Diss, 2 * m),
            Prediction::Iff(Relation::DissEqAlpha, SourceQuestion::Satisfiable),
        ],
        roles,
        source: SourceQuestion::Satisfiable,
        source_answer: f.brute_force_satisfiable(),
        matching: None,
    }
}

/// Number of isolated vertices (each also raising `k` by one) needed so that
/// `2(k − 1) > n ≥ 2`.
pub fn independent_set_padding(n: usize, k: usize) -> usize {
    let need_k = (n + 3).saturating_sub(2 * k);
    let need_n = 2usize.saturating_sub(n);
    need_k.max(need_n)
}

/// Independent Set gadget for the instance `(g, k)`.
///
/// After padding to `(n', k')`, vertex `u < n'` keeps its index, its pendant
/// is `n' + u`, and the `k' − 1` extra edges are `(2n' + 2t, 2n' + 2t + 1)`,
/// each endpoint joined to every vertex below `n'`. Predicts order
/// `2n' + 2(k' − 1)`, `α = n' + k' − 1`, `diss = n' + 2(k' − 1)`,
/// `ν_s ≥ k' − 1`, and: `α(g) ≥ k` iff `ν_s ≥ k'` iff `diss < α + ν_s`.
pub fn gadget_diss_alpha_plus_nus(g: &Graph, k: usize) -> Result<GadgetInstance, GadgetError> {
    gadget_diss_alpha_plus_nus_with(g, k, &Cutoffs::default())
}

/// [`gadget_diss_alpha_plus_nus`] with explicit cutoffs for the exact α(g)
/// used to fill in the source answer.
pub fn gadget_diss_alpha_plus_nus_with(
    g: &Graph,
    k: usize,
    cutoffs: &Cutoffs,
) -> Result<GadgetInstance, GadgetError> {
    if k == 0 {
        return Err(GadgetError::ZeroK);
    }
    let source_answer = independence_number_exact(g, cutoffs)
        .ok()
        .map(|(alpha, _)| alpha >= k);
    let t = independent_set_padding(g.order(), k);
    let n = g.order() + t;
    let k = k + t;
    let w = 2 * (k - 1);
    let order = 2 * n + w;

    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.extend((0..n).map(|u| (u, n + u)));
    for p in 0..k - 1 {
        edges.push((2 * n + 2 * p, 2 * n + 2 * p + 1));
    }
    for u in 0..n {
        for x in 2 * n..order {
            edges.push((u, x));
        }
    }
    let graph = Graph::new(order, edges).expect("gadget edges are valid");

    let mut roles = Vec::with_capacity(order);
    for u in 0..n {
        if u < g.order() {
            roles.push(format!("v:{}", u + 1));
        } else {
            roles.push(format!("pad:{}", u + 1));
        }
    }
    roles.extend((0..n).map(|u| format!("pendant:{}", u + 1)));
    roles.extend((0..w).map(|x| format!("w:{}", x / 2 + 1)));

    Ok(GadgetInstance {
        graph,
        kind: GadgetKind::IndependentSet,
        predicted: vec![
            Prediction::Exact(Invariant::Order, order),
            Prediction::Exact(Invariant::Alpha, n + k - 1),
            Prediction::Exact(Invariant::Diss, n + 2 * (k - 1)),
            Prediction::AtLeast(Invariant::NuS, k - 1),
            Prediction::Iff(Relation::NuSAtLeast(k), SourceQuestion::AlphaAtLeastK),
            Prediction::Iff(Relation::DissLtAlphaPlusNuS, SourceQuestion::AlphaAtLeastK),
        ],
        roles,
        source: SourceQuestion::AlphaAtLeastK,
        source_answer,
        matching: None,
    })
}

/// Joins `g` with a clique of the same order: clique vertex `n + i` pairs
/// with `i` in the returned perfect matching. Requires `α(g) ≥ 3`. Predicts
/// `α(H) = α(H − M) = α(g)` and `diss(H) = diss(H − M) = diss(g)`.
pub fn gadget_join_kn(g: &Graph, cutoffs: &Cutoffs) -> Result<(GadgetInstance, Matching), GadgetError> {
    let (alpha, _) = independence_number_exact(g, cutoffs)?;
    if alpha < 3 {
        return Err(GadgetError::PreconditionFailed(format!(
            "alpha(G) = {alpha}, need at least 3"
        )));
    }
    let (diss, _) = dissociation_number_exact(g, cutoffs)?;
    let n = g.order();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    for i in n..2 * n {
        for j in i + 1..2 * n {
            edges.push((i, j));
        }
    }
    for u in 0..n {
        for x in n..2 * n {
            edges.push((u, x));
        }
    }
    let graph = Graph::new(2 * n, edges).expect("gadget edges are valid");
    let matching = Matching::new(&graph, (0..n).map(|u| (u, n + u)))?;
    let roles = (0..n)
        .map(|u| format!("g:{}", u + 1))
        .chain((0..n).map(|u| format!("clique:{}", u + 1)))
        .collect();
    let instance = GadgetInstance {
        graph,
        kind: GadgetKind::CliqueJoin,
        predicted: vec![
            Prediction::Exact(Invariant::Order, 2 * n),
            Prediction::Exact(Invariant::Alpha, alpha),
            Prediction::Exact(Invariant::AlphaWithoutMatching, alpha),
            Prediction::Exact(Invariant::Diss, diss),
            Prediction::Exact(Invariant::DissWithoutMatching, diss),
        ],
        roles,
        source: SourceQuestion::AlphaAtLeastK,
        source_answer: Some(true),
        matching: Some(matching.clone()),
    };
    Ok((instance, matching))
}

/// Outcome of checking one prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionCheck {
    pub prediction: Prediction,
    pub observed: String,
    /// `None` when the prediction depends on an unknown source answer.
    pub ok: Option<bool>,
}

#[derive(Default)]
struct LazyInvariants {
    alpha: Option<usize>,
    diss: Option<usize>,
    nu_s: Option<usize>,
    alpha_without: Option<usize>,
    diss_without: Option<usize>,
}

/// Evaluates every prediction of `inst` with the exact solvers.
pub fn check_predictions(
    inst: &GadgetInstance,
    cutoffs: &Cutoffs,
) -> Result<Vec<PredictionCheck>, GadgetError> {
    let g = &inst.graph;
    let mut cache = LazyInvariants::default();
    let value = |i: Invariant, cache: &mut LazyInvariants| -> Result<usize, GadgetError> {
        let without = || -> Result<Graph, GadgetError> {
            let m = inst.matching.as_ref().ok_or_else(|| {
                GadgetError::Metadata("prediction about H-M without a matching".into())
            })?;
            Ok(g.remove_edges(m.edges()).expect("matching edges belong to the graph"))
        };
        Ok(match i {
            Invariant::Order => g.order(),
            Invariant::Alpha => *get_or(&mut cache.alpha, || {
                Ok(independence_number_exact(g, cutoffs)?.0)
            })?,
            Invariant::Diss => *get_or(&mut cache.diss, || {
                Ok(dissociation_number_exact(g, cutoffs)?.0)
            })?,
            Invariant::NuS => *get_or(&mut cache.nu_s, || {
                Ok(induced_matching_number_exact(g, cutoffs)?.0)
            })?,
            Invariant::AlphaWithoutMatching => *get_or(&mut cache.alpha_without, || {
                Ok(independence_number_exact(&without()?, cutoffs)?.0)
            })?,
            Invariant::DissWithoutMatching => *get_or(&mut cache.diss_without, || {
                Ok(dissociation_number_exact(&without()?, cutoffs)?.0)
            })?,
        })
    };
    let relation = |r: Relation, cache: &mut LazyInvariants| -> Result<bool, GadgetError> {
        let diss = value(Invariant::Diss, cache)?;
        Ok(match r {
            Relation::DissEq2Alpha => diss == 2 * value(Invariant::Alpha, cache)?,
            Relation::DissEq2NuS => diss == 2 * value(Invariant::NuS, cache)?,
            Relation::DissEqAlpha => diss == value(Invariant::Alpha, cache)?,
            Relation::DissEqAlphaPlusNuS => {
                diss == value(Invariant::Alpha, cache)? + value(Invariant::NuS, cache)?
            }
            Relation::DissLtAlphaPlusNuS => {
                diss < value(Invariant::Alpha, cache)? + value(Invariant::NuS, cache)?
            }
            Relation::NuSAtLeast(k) => value(Invariant::NuS, cache)? >= k,
        })
    };

    let mut out = Vec::with_capacity(inst.predicted.len());
    for &p in &inst.predicted {
        let (observed, ok) = match p {
            Prediction::Exact(i, v) => {
                let x = value(i, &mut cache)?;
                (x.to_string(), Some(x == v))
            }
            Prediction::AtLeast(i, v) => {
                let x = value(i, &mut cache)?;
                (x.to_string(), Some(x >= v))
            }
            Prediction::Holds(r, expected) => {
                let holds = relation(r, &mut cache)?;
                (holds.to_string(), Some(holds == expected))
            }
            Prediction::Iff(r, _) => {
                let holds = relation(r, &mut cache)?;
                (holds.to_string(), inst.source_answer.map(|a| a == holds))
            }
        };
        out.push(PredictionCheck {
            prediction: p,
            observed,
            ok,
        });
    }
    Ok(out)
}

fn get_or(
    slot: &mut Option<usize>,
    compute: impl FnOnce() -> Result<usize, GadgetError>,
) -> Result<&usize, GadgetError> {
    if slot.is_none() {
        *slot = Some(compute()?);
    }
    Ok(slot.as_ref().unwrap())
}

/// Vertices of `inst` whose role starts with `prefix`.
pub fn vertices_with_role(inst: &GadgetInstance, prefix: &str) -> Vec<Vertex> {
    (0..inst.roles.len())
        .filter(|&v| inst.roles[v].starts_with(prefix))
        .collect()
}
