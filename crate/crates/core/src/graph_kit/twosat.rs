use super::{scc_condense, Digraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    pub fn negate(self) -> Self {
        Self {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

/// 2-CNF. A unary clause `(l)` is stored as `(l, l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    pub num_vars: usize,
    pub clauses: Vec<(Literal, Literal)>,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, a: Literal, b: Literal) {
        assert!(a.var < self.num_vars && b.var < self.num_vars);
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Literal) {
        self.add_clause(a, a);
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }
}

/// Implication-graph 2-SAT. `None` iff some variable shares an SCC with its negation.
pub fn solve_2sat(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let mut g = Digraph::new(2 * f.num_vars);
    for &(a, b) in &f.clauses {
        g.add_arc(a.negate().node(), b.node());
        g.add_arc(b.negate().node(), a.node());
    }
    let c = scc_condense(&g);
    let comp = &c.component;
    (0..f.num_vars)
        .map(|v| {
            let (p, n) = (comp[2 * v], comp[2 * v + 1]);
            // Ids are reverse-topological: the literal closer to the sinks wins.
            (p != n).then_some(p < n)
        })
        .collect()
}
