//! Recognition of the pairs `(G, M)`, `G` bipartite and `M` a maximum
//! matching, with `diss(G) = 4/3 · α(G − M)`.
//!
//! For such a pair, and `M'` any maximum matching of `G − M`, the graph
//! `H = (V, M ∪ M')` splits into alternating paths and cycles that walk the
//! vertex classes in the cyclic order
//!
//! ```text
//! A1 -M- B1 -M'- A4 -M- B2 -M'- A2 -M- B4 -M'- A1 ...
//! ```
//!
//! Paths have length 4 mod 6 and their classes are forced by where they
//! start. On each cycle, which of the first three side-A vertices sits in
//! A4 is a free choice; a 2-SAT formula over those choices encodes that
//! every edge outside `M ∪ M'` must touch `A4 ∪ B4`. The pair is extremal
//! iff every check passes and the formula is satisfiable, in which case
//! `A1 ∪ A2 ∪ B1 ∪ B2` is a maximum dissociation set.

use std::fmt;

use thiserror::Error;

use crate::exact::is_dissociation_set;
use crate::graph::{bipartition, canonical, Bipartition, Edge, Graph, GraphError, Vertex};
use crate::matching::{
    find_augmenting_path, is_matching, maximum_matching, Matching, MatchingError,
};
use crate::twosat::{solve_2sat, Literal, TwoSatFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    A1,
    A2,
    A4,
    B1,
    B2,
    B4,
}

impl VertexClass {
    pub const ALL: [VertexClass; 6] = [
        VertexClass::A1,
        VertexClass::A2,
        VertexClass::A4,
        VertexClass::B1,
        VertexClass::B2,
        VertexClass::B4,
    ];

    pub fn is_side_a(self) -> bool {
        matches!(self, VertexClass::A1 | VertexClass::A2 | VertexClass::A4)
    }

    /// A4 or B4: the vertices left out of the dissociation set.
    pub fn is_outside(self) -> bool {
        matches!(self, VertexClass::A4 | VertexClass::B4)
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Classes along a path that starts on side A with an `M` edge.
const PATH_FROM_A: [VertexClass; 6] = [
    VertexClass::A1,
    VertexClass::B1,
    VertexClass::A4,
    VertexClass::B2,
    VertexClass::A2,
    VertexClass::B4,
];

/// The same cyclic order traversed from side B: swap the roles of A and B.
const PATH_FROM_B: [VertexClass; 6] = [
    VertexClass::B1,
    VertexClass::A1,
    VertexClass::B4,
    VertexClass::A2,
    VertexClass::B2,
    VertexClass::A4,
];

/// Classes along a cycle, starting at the side-A vertex placed in A4.
const CYCLE_FROM_A4: [VertexClass; 6] = [
    VertexClass::A4,
    VertexClass::B2,
    VertexClass::A2,
    VertexClass::B4,
    VertexClass::A1,
    VertexClass::B1,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTag {
    M,
    MPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One component of `H = (V, M ∪ M')`.
///
/// `tags[i]` labels the edge `vertices[i]`-`vertices[i + 1]`; on a cycle the
/// last tag labels the closing edge back to `vertices[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    pub tags: Vec<EdgeTag>,
}

impl Component {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.tags.len()
    }
}

/// Paths and cycles of `H = (V, M ∪ M')`.
///
/// Paths of even positive length start at the end whose edge is in `M`;
/// other paths start at their smaller endpoint. A cycle starts at its
/// smallest side-A vertex and leaves it along its `M` edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingDecomposition {
    pub components: Vec<Component>,
    /// `(component, position)` of every vertex.
    location: Vec<(usize, usize)>,
}

impl AlternatingDecomposition {
    pub fn location(&self, v: Vertex) -> (usize, usize) {
        self.location[v]
    }

    pub fn kind_of(&self, v: Vertex) -> ComponentKind {
        self.components[self.location[v].0].kind
    }

    pub fn cycles(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ComponentKind::Cycle)
    }

    pub fn paths(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ComponentKind::Path)
    }
}

/// Why a pair is not extremal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotExtremalReason {
    NotBipartite { odd_cycle: Vec<Vertex> },
    NotMaximumMatching { augmenting_path: Vec<Vertex> },
    MatchingSizeMismatch { m: usize, m_prime: usize },
    BadCycleLength {
        component: usize,
        length: usize,
        vertices: Vec<Vertex>,
    },
    BadPathLength {
        component: usize,
        length: usize,
        vertices: Vec<Vertex>,
    },
    PathEdgeViolation { edge: Edge },
    TwoSatUnsat,
}

impl NotExtremalReason {
    pub fn code(&self) -> &'static str {
        match self {
            NotExtremalReason::NotBipartite { .. } => "NotBipartite",
            NotExtremalReason::NotMaximumMatching { .. } => "NotMaximumMatching",
            NotExtremalReason::MatchingSizeMismatch { .. } => "MatchingSizeMismatch",
            NotExtremalReason::BadCycleLength { .. } => "BadCycleLength",
            NotExtremalReason::BadPathLength { .. } => "BadPathLength",
            NotExtremalReason::PathEdgeViolation { .. } => "PathEdgeViolation",
            NotExtremalReason::TwoSatUnsat => "TwoSatUnsat",
        }
    }
}

impl fmt::Display for NotExtremalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotExtremalReason::NotBipartite { odd_cycle } => {
                write!(f, "NotBipartite odd_cycle={odd_cycle:?}")
            }
            NotExtremalReason::NotMaximumMatching { augmenting_path } => {
                write!(f, "NotMaximumMatching augmenting_path={augmenting_path:?}")
            }
            NotExtremalReason::MatchingSizeMismatch { m, m_prime } => {
                write!(f, "MatchingSizeMismatch |M|={m} |M'|={m_prime}")
            }
            NotExtremalReason::BadCycleLength {
                component,
                length,
                vertices,
            } => write!(
                f,
                "BadCycleLength component={component} length={length} vertices={vertices:?}"
            ),
            NotExtremalReason::BadPathLength {
                component,
                length,
                vertices,
            } => write!(
                f,
                "BadPathLength component={component} length={length} vertices={vertices:?}"
            ),
            NotExtremalReason::PathEdgeViolation { edge } => {
                write!(f, "PathEdgeViolation edge={edge:?}")
            }
            NotExtremalReason::TwoSatUnsat => write!(f, "TwoSatUnsat"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("invalid matching: {0}")]
    InvalidMatching(#[from] MatchingError),
    #[error("matchings share the edge {0:?}")]
    MatchingOverlap(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A pipeline stage was called on input an earlier check should have
    /// rejected.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Class per vertex for the vertices labeled so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLabeling {
    classes: Vec<Option<VertexClass>>,
}

impl PartialLabeling {
    pub fn class(&self, v: Vertex) -> Option<VertexClass> {
        self.classes.get(v).copied().flatten()
    }

    pub fn labeled_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_some()).count()
    }
}

/// A complete assignment of the vertices to A1, A2, A4, B1, B2, B4 with
/// `|A1| = |A2| = |B1| = |B2| = ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixLabeling {
    classes: Vec<VertexClass>,
    ell: usize,
}

impl SixLabeling {
    pub fn class(&self, v: Vertex) -> Option<VertexClass> {
        self.classes.get(v).copied()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of labeled vertices.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn members(&self, class: VertexClass) -> Vec<Vertex> {
        (0..self.classes.len())
            .filter(|&v| self.classes[v] == class)
            .collect()
    }

    pub fn count(&self, class: VertexClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// `A1 ∪ A2 ∪ B1 ∪ B2`, ascending.
    pub fn dissociation_set(&self) -> Vec<Vertex> {
        (0..self.classes.len())
            .filter(|&v| !self.classes[v].is_outside())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCertificate {
    pub labeling: SixLabeling,
    pub max_dissociation_set: Vec<Vertex>,
    /// The maximum matching of `G − M` the decomposition was built from.
    pub m_prime: Matching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecognitionOutcome {
    Extremal(ExtremalCertificate),
    NotExtremal(NotExtremalReason),
}

impl RecognitionOutcome {
    pub fn is_extremal(&self) -> bool {
        matches!(self, RecognitionOutcome::Extremal(_))
    }
}

/// Splits `H = (V, m ∪ m2)` into alternating paths and cycles.
pub fn decompose_alternating(
    g: &Graph,
    b: &Bipartition,
    m: &Matching,
    m2: &Matching,
) -> Result<AlternatingDecomposition, RecognizeError> {
    b.validate(g)?;
    for &(u, v) in m.edges().iter().chain(m2.edges()) {
        if !g.has_edge(u, v) {
            return Err(MatchingError::NotAnEdge(u, v).into());
        }
    }
    if let Some(&e) = m.edges().iter().find(|&&(u, v)| m2.contains(u, v)) {
        return Err(RecognizeError::MatchingOverlap(e));
    }
    let n = g.order();
    let mate = m.mates(n);
    let mate2 = m2.mates(n);
    let degree = |v: Vertex| usize::from(mate[v].is_some()) + usize::from(mate2[v].is_some());

    // Walks from `start` leaving along `first`, alternating between the two
    // matchings, until the walk ends or closes.
    let walk = |start: Vertex, first: EdgeTag| -> (Vec<Vertex>, Vec<EdgeTag>) {
        let mut vertices = vec![start];
        let mut tags = Vec::new();
        let mut tag = first;
        let mut cur = start;
        loop {
            let next = match tag {
                EdgeTag::M => mate[cur],
                EdgeTag::MPrime => mate2[cur],
            };
            let Some(next) = next else { break };
            tags.push(tag);
            if next == start {
                break;
            }
            vertices.push(next);
            cur = next;
            tag = match tag {
                EdgeTag::M => EdgeTag::MPrime,
                EdgeTag::MPrime => EdgeTag::M,
            };
        }
        (vertices, tags)
    };

    let mut components = Vec::new();
    let mut location = vec![(usize::MAX, 0); n];
    let mut place = |comp: Component, location: &mut Vec<(usize, usize)>| {
        let idx = components.len();
        for (pos, &v) in comp.vertices.iter().enumerate() {
            location[v] = (idx, pos);
        }
        components.push(comp);
    };

    for v in 0..n {
        if location[v].0 != usize::MAX || degree(v) == 2 {
            continue;
        }
        let first = if mate[v].is_some() {
            EdgeTag::M
        } else {
            EdgeTag::MPrime
        };
        let (mut vertices, mut tags) = walk(v, first);
        let len = tags.len();
        let reverse = len > 0
            && if len % 2 == 0 {
                tags[0] != EdgeTag::M
            } else {
                *vertices.last().unwrap() < v
            };
        if reverse {
            vertices.reverse();
            tags.reverse();
        }
        place(
            Component {
                kind: ComponentKind::Path,
                vertices,
                tags,
            },
            &mut location,
        );
    }
    for v in 0..n {
        if location[v].0 != usize::MAX || !b.is_a(v) {
            continue;
        }
        let (vertices, tags) = walk(v, EdgeTag::M);
        place(
            Component {
                kind: ComponentKind::Cycle,
                vertices,
                tags,
            },
            &mut location,
        );
    }
    if let Some(v) = (0..n).find(|&v| location[v].0 == usize::MAX) {
        return Err(RecognizeError::Internal(format!(
            "vertex {v} lies on no component"
        )));
    }
    Ok(AlternatingDecomposition {
        components,
        location,
    })
}

/// Cycles must have length 0 mod 6 and paths length 4 mod 6.
pub fn check_component_lengths(d: &AlternatingDecomposition) -> Result<(), NotExtremalReason> {
    for (component, c) in d.components.iter().enumerate() {
        let length = c.length();
        match c.kind {
            ComponentKind::Cycle if length % 6 != 0 => {
                return Err(NotExtremalReason::BadCycleLength {
                    component,
                    length,
                    vertices: c.vertices.clone(),
                })
            }
            ComponentKind::Path if length % 6 != 4 => {
                return Err(NotExtremalReason::BadPathLength {
                    component,
                    length,
                    vertices: c.vertices.clone(),
                })
            }
            _ => {}
        }
    }
    Ok(())
}

/// Labels every path vertex by the 6-periodic class pattern read from the
/// path's `M`-edge end. Cycle vertices stay unlabeled.
pub fn label_path_components(
    d: &AlternatingDecomposition,
    b: &Bipartition,
    m: &Matching,
    m2: &Matching,
) -> Result<PartialLabeling, RecognizeError> {
    let n = d.location.len();
    let mate2 = m2.mates(n);
    let mut classes = vec![None; n];
    for (idx, path) in d.paths() {
        let start = path.vertices[0];
        let ok = path.tags.first() == Some(&EdgeTag::M)
            && m.contains(start, path.vertices[1])
            && mate2[start].is_none();
        if !ok {
            return Err(RecognizeError::Internal(format!(
                "path component {idx} does not start with an M edge at an M'-free vertex"
            )));
        }
        let pattern = if b.is_a(start) {
            &PATH_FROM_A
        } else {
            &PATH_FROM_B
        };
        for (pos, &v) in path.vertices.iter().enumerate() {
            classes[v] = Some(pattern[pos % 6]);
        }
    }
    Ok(PartialLabeling { classes })
}

fn outside_h(m: &Matching, m2: &Matching, (u, v): Edge) -> bool {
    !m.contains(u, v) && !m2.contains(u, v)
}

/// Every edge outside `M ∪ M'` joining two path vertices must touch A4 ∪ B4.
pub fn check_path_path_edges(
    g: &Graph,
    m: &Matching,
    m2: &Matching,
    d: &AlternatingDecomposition,
    labels: &PartialLabeling,
) -> Result<(), NotExtremalReason> {
    for &e in g.edges() {
        let (u, v) = e;
        if !outside_h(m, m2, e)
            || d.kind_of(u) != ComponentKind::Path
            || d.kind_of(v) != ComponentKind::Path
        {
            continue;
        }
        let touches_outside = [u, v]
            .iter()
            .any(|&w| labels.class(w).is_some_and(VertexClass::is_outside));
        if !touches_outside {
            return Err(NotExtremalReason::PathEdgeViolation { edge: e });
        }
    }
    Ok(())
}

/// Maps `(cycle, j)` with `j ∈ {1, 2, 3}` to a 2-SAT variable. Variable
/// `x_cycle^j` true means the side-A vertex at position `2(j − 1)` of the
/// cycle lies in A4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVariables {
    /// Component index of each cycle, in variable order.
    pub cycles: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl CycleVariables {
    fn new(d: &AlternatingDecomposition) -> Self {
        let cycles: Vec<usize> = d.cycles().map(|(i, _)| i).collect();
        let mut slot = vec![None; d.components.len()];
        for (k, &c) in cycles.iter().enumerate() {
            slot[c] = Some(k);
        }
        CycleVariables { cycles, slot }
    }

    pub fn var_count(&self) -> usize {
        3 * self.cycles.len()
    }

    /// Variable for `(component, j)`, `j` 1-based.
    pub fn variable(&self, component: usize, j: usize) -> usize {
        assert!((1..=3).contains(&j));
        3 * self.slot[component].expect("component is a cycle") + (j - 1)
    }

    /// `(component, j)` of a variable.
    pub fn position(&self, var: usize) -> (usize, usize) {
        (self.cycles[var / 3], var % 3 + 1)
    }

    /// Variable whose truth puts the side-A vertex at `pos` into A4: the
    /// one at distance 0 mod 6 from it.
    fn a_in_outside(&self, component: usize, pos: usize) -> usize {
        self.variable(component, (pos % 6) / 2 + 1)
    }

    /// Variable whose truth puts the side-B vertex at `pos` into B4: the
    /// one at distance 3 mod 6 from it.
    fn b_in_outside(&self, component: usize, pos: usize) -> usize {
        self.variable(component, ((pos + 3) % 6) / 2 + 1)
    }
}

/// Builds the 2-SAT formula over the cycle rotations.
pub fn build_2sat(
    g: &Graph,
    d: &AlternatingDecomposition,
    b: &Bipartition,
    m: &Matching,
    m2: &Matching,
    labels: &PartialLabeling,
) -> (TwoSatFormula, CycleVariables) {
    let vars = CycleVariables::new(d);
    let mut f = TwoSatFormula::new(vars.var_count());
    let add = |f: &mut TwoSatFormula, lits: &[Literal]| {
        f.add_clause(lits).expect("variables come from the map");
    };
    for &c in &vars.cycles {
        let x = |j| Literal::neg(vars.variable(c, j));
        add(&mut f, &[x(1), x(2)]);
        add(&mut f, &[x(2), x(3)]);
        add(&mut f, &[x(1), x(3)]);
    }
    for &e in g.edges() {
        if !outside_h(m, m2, e) {
            continue;
        }
        let (a, bv) = if b.is_a(e.0) { e } else { (e.1, e.0) };
        let (ca, pa) = d.location(a);
        let (cb, pb) = d.location(bv);
        match (d.kind_of(a), d.kind_of(bv)) {
            (ComponentKind::Cycle, ComponentKind::Cycle) => add(
                &mut f,
                &[
                    Literal::pos(vars.a_in_outside(ca, pa)),
                    Literal::pos(vars.b_in_outside(cb, pb)),
                ],
            ),
            (ComponentKind::Cycle, ComponentKind::Path) => {
                if labels.class(bv) != Some(VertexClass::B4) {
                    add(&mut f, &[Literal::pos(vars.a_in_outside(ca, pa))]);
                }
            }
            (ComponentKind::Path, ComponentKind::Cycle) => {
                if labels.class(a) != Some(VertexClass::A4) {
                    add(&mut f, &[Literal::pos(vars.b_in_outside(cb, pb))]);
                }
            }
            (ComponentKind::Path, ComponentKind::Path) => {}
        }
    }
    (f, vars)
}

/// Decides whether `diss(g) = 4/3 · α(g − m)` for a maximum matching `m` of
/// the bipartite graph `g`, and on success returns a maximum dissociation
/// set with its six-class labeling.
///
/// `m` is checked rather than trusted: a non-maximum `m` yields
/// `NotMaximumMatching`, a non-bipartite `g` yields `NotBipartite`, and an
/// edge set that is not a matching of `g` at all is an error.
pub fn recognize_extremal(g: &Graph, m: &Matching) -> Result<RecognitionOutcome, RecognizeError> {
    use RecognitionOutcome::NotExtremal;

    if !is_matching(g, m.edges()) {
        // Re-run the validating constructor for a precise error.
        Matching::new(g, m.edges().iter().copied())?;
    }
    let b = match bipartition(g) {
        Ok(b) => b,
        Err(GraphError::NotBipartite { cycle }) => {
            return Ok(NotExtremal(NotExtremalReason::NotBipartite {
                odd_cycle: cycle,
            }))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = find_augmenting_path(g, &b, m) {
        return Ok(NotExtremal(NotExtremalReason::NotMaximumMatching {
            augmenting_path: path,
        }));
    }
    let rest = g.remove_edges(m.edges())?;
    let m2 = maximum_matching(&rest, &b)?;
    if m.len() != m2.len() {
        return Ok(NotExtremal(NotExtremalReason::MatchingSizeMismatch {
            m: m.len(),
            m_prime: m2.len(),
        }));
    }
    let d = decompose_alternating(g, &b, m, &m2)?;
    if let Err(reason) = check_component_lengths(&d) {
        return Ok(NotExtremal(reason));
    }
    let partial = label_path_components(&d, &b, m, &m2)?;
    if let Err(reason) = check_path_path_edges(g, m, &m2, &d, &partial) {
        return Ok(NotExtremal(reason));
    }
    let (formula, vars) = build_2sat(g, &d, &b, m, &m2, &partial);
    let Ok(assignment) = solve_2sat(&formula) else {
        return Ok(NotExtremal(NotExtremalReason::TwoSatUnsat));
    };

    let mut classes = partial.classes;
    for (k, &c) in vars.cycles.iter().enumerate() {
        // A cycle with no true variable is unconstrained; rotation 1 is as
        // good as any.
        let j = (1..=3)
            .find(|&j| assignment.values[3 * k + j - 1])
            .unwrap_or(1);
        let offset = 2 * (j - 1);
        let cycle = &d.components[c];
        let len = cycle.vertices.len();
        for (pos, &v) in cycle.vertices.iter().enumerate() {
            classes[v] = Some(CYCLE_FROM_A4[(pos + len - offset) % 6]);
        }
    }
    let classes: Vec<VertexClass> = classes
        .into_iter()
        .map(|c| c.expect("every vertex lies on a path or a cycle"))
        .collect();
    let labeling = finish_labeling(g, &b, m, &m2, &d, classes)?;
    let max_dissociation_set = labeling.dissociation_set();
    Ok(RecognitionOutcome::Extremal(ExtremalCertificate {
        labeling,
        max_dissociation_set,
        m_prime: m2,
    }))
}

/// Checks the structure a completed labeling must have and computes `ell`.
fn finish_labeling(
    g: &Graph,
    b: &Bipartition,
    m: &Matching,
    m2: &Matching,
    d: &AlternatingDecomposition,
    classes: Vec<VertexClass>,
) -> Result<SixLabeling, RecognizeError> {
    let internal = |msg: String| Err(RecognizeError::Internal(msg));
    let count = |c: VertexClass| classes.iter().filter(|&&x| x == c).count();
    let ell = count(VertexClass::A1);
    for c in [VertexClass::A2, VertexClass::B1, VertexClass::B2] {
        if count(c) != ell {
            return internal(format!("|{c}| = {} but |A1| = {ell}", count(c)));
        }
    }
    for (v, c) in classes.iter().enumerate() {
        if c.is_side_a() != b.is_a(v) {
            return internal(format!("vertex {v} labeled {c} on the wrong side"));
        }
    }
    for &(u, v) in g.edges() {
        if outside_h(m, m2, canonical(u, v)) && !classes[u].is_outside() && !classes[v].is_outside()
        {
            return internal(format!("edge ({u}, {v}) misses A4 and B4"));
        }
    }
    let outside = count(VertexClass::A4) + count(VertexClass::B4);
    let paths = d.paths().count();
    if 2 * ell < outside || paths != 2 * ell - outside {
        return internal(format!(
            "{paths} path components, expected 2*{ell} - {outside}"
        ));
    }
    let labeling = SixLabeling { classes, ell };
    let set = labeling.dissociation_set();
    if set.len() != 4 * ell || !is_dissociation_set(g, &set) {
        return internal("A1 ∪ A2 ∪ B1 ∪ B2 is not a dissociation set".into());
    }
    Ok(labeling)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6_setup() -> (Graph, Bipartition, Matching, Matching) {
        let g = Graph::cycle(6);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let m2 = Matching::new(&g, [(1, 2), (3, 4), (5, 0)]).unwrap();
        (g, b, m, m2)
    }

    #[test]
    fn decompose_c6() {
        let (g, b, m, m2) = c6_setup();
        let d = decompose_alternating(&g, &b, &m, &m2).unwrap();
        assert_eq!(d.components.len(), 1);
        let c = &d.components[0];
        assert_eq!(c.kind, ComponentKind::Cycle);
        assert_eq!(c.vertices, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(c.length(), 6);
        assert_eq!(c.tags[0], EdgeTag::M);
        assert!(c.tags.windows(2).all(|w| w[0] != w[1]));
        assert_eq!(check_component_lengths(&d), Ok(()));
        let labels = label_path_components(&d, &b, &m, &m2).unwrap();
        assert_eq!(labels.labeled_count(), 0);
    }

    #[test]
    fn decompose_p4() {
        let g = Graph::path(4);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(0, 1), (2, 3)]).unwrap();
        let m2 = Matching::new(&g, [(1, 2)]).unwrap();
        let d = decompose_alternating(&g, &b, &m, &m2).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].kind, ComponentKind::Path);
        assert_eq!(d.components[0].length(), 3);
        assert_eq!(
            check_component_lengths(&d),
            Err(NotExtremalReason::BadPathLength {
                component: 0,
                length: 3,
                vertices: vec![0, 1, 2, 3]
            })
        );
    }

    #[test]
    fn decompose_isolated_vertices() {
        let g = Graph::empty(2);
        let b = bipartition(&g).unwrap();
        let e = Matching::empty();
        let d = decompose_alternating(&g, &b, &e, &e).unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(d
            .components
            .iter()
            .all(|c| c.kind == ComponentKind::Path && c.length() == 0));
        assert!(matches!(
            check_component_lengths(&d),
            Err(NotExtremalReason::BadPathLength { length: 0, .. })
        ));
    }

    #[test]
    fn overlapping_matchings_rejected() {
        let g = Graph::path(2);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(0, 1)]).unwrap();
        assert_eq!(
            decompose_alternating(&g, &b, &m, &m),
            Err(RecognizeError::MatchingOverlap((0, 1)))
        );
    }

    #[test]
    fn path_orientation_and_labels() {
        // P5 = 0-1-2-3-4 with M = {01, 23}, M' = {12, 34}: starts at 0.
        let g = Graph::path(5);
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(0, 1), (2, 3)]).unwrap();
        let m2 = Matching::new(&g, [(1, 2), (3, 4)]).unwrap();
        let d = decompose_alternating(&g, &b, &m, &m2).unwrap();
        assert_eq!(d.components[0].vertices, vec![0, 1, 2, 3, 4]);
        let l = label_path_components(&d, &b, &m, &m2).unwrap();
        use VertexClass::*;
        let got: Vec<_> = (0..5).map(|v| l.class(v).unwrap()).collect();
        assert_eq!(got, vec![A1, B1, A4, B2, A2]);

        // 1-0-2-3-4: vertex 0 is on side A, so both ends lie on side B.
        let g = Graph::new(5, [(1, 0), (0, 2), (2, 3), (3, 4)]).unwrap();
        let b = bipartition(&g).unwrap();
        let m = Matching::new(&g, [(1, 0), (2, 3)]).unwrap();
        let m2 = Matching::new(&g, [(0, 2), (3, 4)]).unwrap();
        let d = decompose_alternating(&g, &b, &m, &m2).unwrap();
        assert_eq!(d.components[0].vertices, vec![1, 0, 2, 3, 4]);
        let l = label_path_components(&d, &b, &m, &m2).unwrap();
        assert!(!b.is_a(1));
        let got: Vec<_> = [1, 0, 2, 3, 4].iter().map(|&v| l.class(v).unwrap()).collect();
        assert_eq!(got, vec![B1, A1, B4, A2, B2]);
    }

    #[test]
    fn c6_formula() {
        let (g, b, m, m2) = c6_setup();
        let d = decompose_alternating(&g, &b, &m, &m2).unwrap();
        let l = label_path_components(&d, &b, &m, &m2).unwrap();
        let (f, vars) = build_2sat(&g, &d, &b, &m, &m2, &l);
        assert_eq!(vars.var_count(), 3);
        assert_eq!(f.clauses().len(), 3);
        assert!(solve_2sat(&f).is_ok());
        assert_eq!(vars.position(2), (0, 3));
    }

    #[test]
    fn recognize_c6() {
        let g = Graph::cycle(6);
        let m = Matching::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let RecognitionOutcome::Extremal(cert) = recognize_extremal(&g, &m).unwrap() else {
            panic!("C6 is extremal");
        };
        assert_eq!(cert.max_dissociation_set.len(), 4);
        assert_eq!(cert.labeling.ell(), 1);
        // All variables false, rotation 1: vertex 0 is in A4.
        assert_eq!(cert.labeling.class(0), Some(VertexClass::A4));
        assert_eq!(cert.max_dissociation_set, vec![1, 2, 4, 5]);
    }

    #[test]
    fn recognize_rejections() {
        let p4 = Graph::path(4);
        let m = Matching::new(&p4, [(0, 1), (2, 3)]).unwrap();
        // M' = {12}; the size check runs before the length checks.
        assert_eq!(
            recognize_extremal(&p4, &m).unwrap(),
            RecognitionOutcome::NotExtremal(NotExtremalReason::MatchingSizeMismatch {
                m: 2,
                m_prime: 1
            })
        );

        let two_k2 = Graph::perfect_matching(2);
        let m = Matching::new(&two_k2, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            recognize_extremal(&two_k2, &m).unwrap(),
            RecognitionOutcome::NotExtremal(NotExtremalReason::MatchingSizeMismatch {
                m: 2,
                m_prime: 0
            })
        );

        let c6 = Graph::cycle(6);
        let m = Matching::new(&c6, [(0, 1)]).unwrap();
        assert!(matches!(
            recognize_extremal(&c6, &m).unwrap(),
            RecognitionOutcome::NotExtremal(NotExtremalReason::NotMaximumMatching { .. })
        ));

        let k3 = Graph::complete(3);
        let m = Matching::new(&k3, [(0, 1)]).unwrap();
        assert!(matches!(
            recognize_extremal(&k3, &m).unwrap(),
            RecognitionOutcome::NotExtremal(NotExtremalReason::NotBipartite { .. })
        ));
    }

    #[test]
    fn recognize_empty_graph() {
        let out = recognize_extremal(&Graph::empty(0), &Matching::empty()).unwrap();
        let RecognitionOutcome::Extremal(cert) = out else {
            panic!("empty graph is extremal");
        };
        assert!(cert.max_dissociation_set.is_empty());
    }

    #[test]
    fn foreign_matching_is_an_error() {
        let g = Graph::path(3);
        let other = Graph::complete(3);
        let m = Matching::new(&other, [(0, 2)]).unwrap();
        assert!(matches!(
            recognize_extremal(&g, &m),
            Err(RecognizeError::InvalidMatching(MatchingError::NotAnEdge(0, 2)))
        ));
    }
}
