//! MSO2 encoding over the augmented digraph.
//!
//! The output has a fact section describing the structure and a formula
//! section that is the same for every instance. Facts use 1-based vertex ids:
//!
//! ```text
//! edge(e3, 2, 5).   arc e3 goes from vertex 2 to vertex 5
//! t1(e3).           e3 is an original arc or one direction of an undirected edge
//! t2(e7).           e7 is the demand arc of a terminal pair
//! ```
//!
//! The formula is an s-expression. Quantifiers take a variable and a body:
//! `forall-vertex`, `exists-vertex`, `forall-vertexset`, `exists-vertexset`,
//! `forall-edge`, `exists-edge`, `exists-edgeset`. Connectives are `and`,
//! `or`, `not`, `implies`; atoms are `(in x X)`, `(edge e x y)`, `(t1 e)`,
//! `(t2 e)`.

use std::fmt::Write;

use crate::mixed_graph::Instance;
use crate::{Error, Result};

/// The sentence: some set `S` of type-1 arcs, never holding both directions
/// between two vertices, contains a path for every type-2 arc.
pub const MSO2_FORMULA: &str = "\
(exists-edgeset S
  (and
    (forall-edge e
      (implies (in e S) (t1 e)))
    (forall-edge e
      (forall-edge f
        (forall-vertex x
          (forall-vertex y
            (not (and (in e S) (in f S) (edge e x y) (edge f y x)))))))
    (forall-edge d
      (forall-vertex s
        (forall-vertex t
          (implies (and (t2 d) (edge d s t))
            (forall-vertexset X
              (implies (and (in s X) (not (in t X)))
                (exists-edge e
                  (exists-vertex x
                    (exists-vertex y
                      (and (in e S) (edge e x y) (in x X) (not (in y X))))))))))))))
";

/// Facts for the augmented digraph followed by [`MSO2_FORMULA`].
pub fn emit_mso2(inst: &Instance) -> Result<String> {
    let g = inst.graph();
    if let Some(&(u, v)) = g.arcs().iter().find(|&&(u, v)| g.has_arc(v, u)) {
        return Err(Error::Contract(format!(
            "anti-parallel arcs between {} and {}; contract cycles first",
            u + 1,
            v + 1
        )));
    }
    let type1 = g
        .arcs()
        .iter()
        .copied()
        .chain(g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]));
    let type2 = inst.terminals().iter().map(|p| (p.s, p.t));

    let mut out = String::from("c facts\n");
    let mut id = 0;
    for (label, arcs) in [("t1", type1.collect::<Vec<_>>()), ("t2", type2.collect())] {
        for (u, v) in arcs {
            id += 1;
            let _ = writeln!(out, "edge(e{id}, {}, {}).", u + 1, v + 1);
            let _ = writeln!(out, "{label}(e{id}).");
        }
    }
    out.push_str("c formula\n");
    out.push_str(MSO2_FORMULA);
    Ok(out)
}
