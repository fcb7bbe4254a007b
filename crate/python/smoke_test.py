"""Smoke test for the steiner_orientation extension module.

Build first:  pip install --no-build-isolation -e crates/python
Run:          python3 python/smoke_test.py
"""

import itertools

import steiner_orientation as so


def brute(inst):
    for flips in itertools.product([False, True], repeat=len(inst.edges)):
        dirs = [(v, u) if f else (u, v) for (u, v), f in zip(inst.edges, flips)]
        if inst.check(dirs):
            return True
    return False


def main():
    # path 0 - 1 - 2 with an arc 2 -> 3
    inst = so.Instance(4, edges=[(0, 1), (1, 2)], arcs=[(2, 3)], terminals=[(0, 3)])
    assert inst.n == 4 and inst.k == 1
    sol = so.solve(inst, "brute")
    assert sol.yes and inst.check(sol.witness), sol
    assert sol.witness == [(0, 1), (1, 2)]

    text = inst.to_text()
    assert so.Instance.parse(text) == inst

    both_ways = so.Instance(2, edges=[(0, 1)], terminals=[(0, 1), (1, 0)])
    for algo in ["brute", "arcs", "dtc", "vc", "auto"]:
        assert not so.solve(both_ways, algo).yes, algo

    # (x1 or x2) and (not x1) is satisfiable
    sat = so.gen_cnf_sat(2, [[1, 2], [-1]])
    res = so.solve(sat, "arcs")
    assert res.yes and sat.check(res.witness)
    assert res.leaves is not None
    assert not so.solve(so.gen_cnf_sat(1, [[1], [-1]]), "arcs").yes

    mono = so.gen_monotone3sat(3, [[1, 2, 3]])
    assert mono.n == 12 and mono.k == 4

    clique = so.gen_multicolored_clique(1, 2, [])
    assert so.solve(clique, "arcs").yes

    for seed in range(30):
        r = so.gen_random(seed, 7, 0.3, 0.3, 3)
        expected = brute(r)
        for algo in ["brute", "arcs"]:
            got = so.solve(r, algo)
            assert got.yes == expected, (seed, algo)
            if got.yes:
                assert r.check(got.witness)
        kernel, summary = so.kernelize(r)
        assert so.solve(kernel, "brute").yes == expected, seed
        assert summary["kept_pairs"] == kernel.k
        reduced, verdict, vmap = so.preprocess(r)
        assert verdict in ("YES", "NO", "UNDECIDED") and len(vmap) == r.n

    text = so.emit_mso2(inst)
    assert text.startswith("c facts\n") and "c formula\n" in text

    try:
        so.solve(so.Instance(10), "vc", cover=list(range(7)))
    except so.RefusedError:
        pass
    else:
        raise AssertionError("cover of size 7 should be refused")

    try:
        so.Instance(2, edges=[(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self-loop should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
