//! Drives the module through an embedded interpreter.

use std::ffi::CString;

use pyo3::prelude::*;
use steiner_orientation::steiner_orientation;

const SCRIPT: &str = r#"
import steiner_orientation as so

inst = so.Instance(4, edges=[(2, 3)], arcs=[(0, 1), (1, 2)], terminals=[(0, 3)])
assert inst.k == 1 and inst.n == 4
assert so.Instance.parse(inst.to_text()) == inst

for algo in ["auto", "brute", "arcs"]:
    sol = so.solve(inst, algo)
    assert sol.yes, algo
    assert inst.check(sol.witness)

no = so.Instance(2, edges=[(0, 1)], terminals=[(0, 1), (1, 0)])
assert not so.solve(no, "brute").yes
assert so.solve(no, "brute").witness is None

reduced, verdict, mapping = so.preprocess(no)
assert verdict == "NO"
assert len(mapping) == 2

kernel, info = so.kernelize(inst, "exact")
assert info["cover_size"] >= 0

sat = so.gen_cnf_sat(1, [[1], [-1]])
assert not so.solve(sat, "arcs").yes

try:
    so.Instance(2, edges=[(0, 5)])
    raise AssertionError("expected ValueError")
except ValueError:
    pass
"#;

#[test]
fn module_works_from_python() {
    pyo3::append_to_inittab!(steiner_orientation);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(SCRIPT).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("embedded script failed");
        }
    });
}
