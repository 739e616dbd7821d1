//! 2-SAT via the implication graph and Tarjan's strongly connected
//! components.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, values: &[bool]) -> bool {
        values[self.var] == self.positive
    }

    /// Node of this literal in the implication graph.
    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause must have one or two literals, got {0}")]
    ClauseWidth(usize),
    #[error("variable {var} out of range (formula has {var_count} variables)")]
    VariableOutOfRange { var: usize, var_count: usize },
}

/// Conjunction of clauses with one or two literals each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoSatFormula {
    var_count: usize,
    clauses: Vec<Vec<Literal>>,
}

impl TwoSatFormula {
    pub fn new(var_count: usize) -> Self {
        TwoSatFormula {
            var_count,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, literals: &[Literal]) -> Result<(), FormulaError> {
        if literals.is_empty() || literals.len() > 2 {
            return Err(FormulaError::ClauseWidth(literals.len()));
        }
        for l in literals {
            if l.var >= self.var_count {
                return Err(FormulaError::VariableOutOfRange {
                    var: l.var,
                    var_count: self.var_count,
                });
            }
        }
        self.clauses.push(literals.to_vec());
        Ok(())
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    fn implication_graph(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); 2 * self.var_count];
        for clause in &self.clauses {
            // A unit clause (l) is read as (l ∨ l).
            let (a, b) = (clause[0], *clause.last().unwrap());
            out[a.negated().node()].push(b.node());
            out[b.negated().node()].push(a.node());
        }
        out
    }
}

impl fmt::Display for TwoSatFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(Literal::to_string).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn satisfies(&self, f: &TwoSatFormula) -> bool {
        self.values.len() == f.var_count
            && f
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.eval(&self.values)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("formula is unsatisfiable")]
pub struct Unsatisfiable;

/// Tarjan's algorithm, iterative. Roots are tried in ascending node order and
/// successors in insertion order. Component ids come out in reverse
/// topological order of the condensation.
fn strongly_connected_components(graph: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (node, next successor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&w) = graph[v].get(pos) {
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Solves `f`. A variable is set true when its positive literal's component
/// comes earlier in Tarjan order (i.e. later topologically) than its
/// negation's.
pub fn solve_2sat(f: &TwoSatFormula) -> Result<Assignment, Unsatisfiable> {
    let graph = f.implication_graph();
    let comp = strongly_connected_components(&graph);
    let mut values = Vec::with_capacity(f.var_count);
    for var in 0..f.var_count {
        let (p, q) = (comp[Literal::pos(var).node()], comp[Literal::neg(var).node()]);
        if p == q {
            return Err(Unsatisfiable);
        }
        values.push(p < q);
    }
    let a = Assignment { values };
    debug_assert!(a.satisfies(f));
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(var_count: usize, clauses: &[&[Literal]]) -> TwoSatFormula {
        let mut f = TwoSatFormula::new(var_count);
        for c in clauses {
            f.add_clause(c).unwrap();
        }
        f
    }

    #[test]
    fn examples() {
        use Literal as L;
        let f = formula(2, &[&[L::pos(0), L::pos(1)], &[L::neg(0), L::pos(1)]]);
        let a = solve_2sat(&f).unwrap();
        assert!(a.values[1]);
        assert!(a.satisfies(&f));

        let f = formula(1, &[&[L::pos(0)], &[L::neg(0)]]);
        assert_eq!(solve_2sat(&f), Err(Unsatisfiable));

        let f = formula(
            3,
            &[
                &[L::neg(0), L::neg(1)],
                &[L::neg(1), L::neg(2)],
                &[L::neg(0), L::neg(2)],
            ],
        );
        let a = solve_2sat(&f).unwrap();
        assert!(a.satisfies(&f));
        assert!(Assignment {
            values: vec![false; 3]
        }
        .satisfies(&f));
    }

    #[test]
    fn empty_formula_is_satisfiable() {
        let f = TwoSatFormula::new(0);
        assert_eq!(solve_2sat(&f).unwrap().values, Vec::<bool>::new());
    }

    #[test]
    fn malformed_clauses_rejected() {
        let mut f = TwoSatFormula::new(2);
        assert_eq!(f.add_clause(&[]), Err(FormulaError::ClauseWidth(0)));
        assert_eq!(
            f.add_clause(&[Literal::pos(0), Literal::pos(1), Literal::pos(0)]),
            Err(FormulaError::ClauseWidth(3))
        );
        assert!(matches!(
            f.add_clause(&[Literal::pos(2)]),
            Err(FormulaError::VariableOutOfRange { var: 2, .. })
        ));
    }

    #[test]
    fn implication_chain_forces_values() {
        use Literal as L;
        // x0, x0 -> x1, x1 -> x2, x2 -> !x3
        let f = formula(
            4,
            &[
                &[L::pos(0)],
                &[L::neg(0), L::pos(1)],
                &[L::neg(1), L::pos(2)],
                &[L::neg(2), L::neg(3)],
            ],
        );
        assert_eq!(solve_2sat(&f).unwrap().values, vec![true, true, true, false]);
    }

    #[test]
    fn display() {
        let f = formula(2, &[&[Literal::pos(0), Literal::neg(1)]]);
        assert_eq!(f.to_string(), "(x0 | !x1)");
    }
}
