use super::Digraph;
use crate::mixed_graph::VertexId;

/// Strongly connected components and the condensed DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Component of every vertex. Ids are in reverse topological order:
    /// an arc between components always goes from a higher id to a lower one.
    pub component: Vec<usize>,
    pub count: usize,
    /// Arcs between components, without self-loops or duplicates.
    pub dag: Digraph,
}

impl Condensation {
    pub fn members(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.component.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Tarjan's algorithm with an explicit call stack.
pub fn scc_condense(g: &Digraph) -> Condensation {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut component = vec![UNSEEN; n];
    let mut count = 0;
    let mut next_index = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = g.successors(v).get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
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
                    component[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }

    let mut dag_arcs: Vec<(usize, usize)> = g
        .arcs()
        .map(|(u, v)| (component[u], component[v]))
        .filter(|(a, b)| a != b)
        .collect();
    dag_arcs.sort_unstable();
    dag_arcs.dedup();
    Condensation {
        component,
        count,
        dag: Digraph::from_arcs(count, dag_arcs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_kit::topo_order;

    #[test]
    fn triangle_is_one_component() {
        let c = scc_condense(&Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]));
        assert_eq!(c.count, 1);
        assert_eq!(c.component, vec![0, 0, 0]);
    }

    #[test]
    fn path_gives_reverse_topological_ids() {
        let c = scc_condense(&Digraph::from_arcs(3, [(0, 1), (1, 2)]));
        assert_eq!(c.count, 3);
        // sink first
        assert_eq!(c.component, vec![2, 1, 0]);
        let order = topo_order(&c.dag).unwrap();
        let by_vertex: Vec<usize> = order.iter().map(|&comp| c.members()[comp][0]).collect();
        assert_eq!(by_vertex, vec![0, 1, 2]);
    }

    #[test]
    fn empty_graph() {
        let c = scc_condense(&Digraph::new(0));
        assert_eq!(c.count, 0);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 200_000;
        let g = Digraph::from_arcs(n, (0..n - 1).map(|i| (i, i + 1)).chain([(n - 1, 0)]));
        assert_eq!(scc_condense(&g).count, 1);
    }

    #[test]
    fn self_loops_and_duplicates_dropped() {
        let c = scc_condense(&Digraph::from_arcs(
            3,
            [(0, 0), (0, 1), (0, 1), (1, 2), (2, 1)],
        ));
        assert_eq!(c.count, 2);
        assert_eq!(c.dag.arcs().count(), 1);
    }
}
