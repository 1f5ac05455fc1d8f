#!/usr/bin/env python3
"""Regenerates data/catalog.json (the shipped group catalog)."""
import json
import os


def eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def elem(dims, *entries):
    """Element of a product of unitriangular groups.

    entries: (factor, row, col, value) with 0-based indices.
    """
    mats = [eye(d) for d in dims]
    for (f, r, c, v) in entries:
        mats[f][r][c] = v
    return mats


def fn(*terms):
    """Linear functional as [factor,row,col,coeff] terms."""
    return [list(t) for t in terms]


def zd(d):
    dims = [2] * d
    gens = {f"x{i+1}": elem(dims, (i, 0, 1, 1)) for i in range(d)}
    names = [f"x{i+1}" for i in range(d)]
    full = {
        "name": "full", "zero_entries": [], "gens": names,
        "hj_gens": [names],
    }
    trivial = {
        "name": "trivial",
        "zero_entries": [[i, 0, 1] for i in range(d)],
        "gens": [], "hj_gens": [[]],
    }
    hyper = {
        "name": "hyper",
        "zero_entries": [[0, 0, 1]],
        "gens": names[1:],
        "hj_gens": [names[1:]],
    }
    return {
        "name": f"Z{d}",
        "factors": dims,
        "class": 1,
        "abelian": True,
        "generators": gens,
        "word_gens": names,
        "graded": [names],
        "levels": [{
            "rank": d,
            "zero_entries": [],
            "proj": [fn((i, 0, 1, 1)) for i in range(d)],
        }],
        "subgroups": [full, trivial] + ([hyper] if d >= 1 else []),
        "witnesses": [{
            "name": "K_G", "central": "x1", "K": "full",
            "H": "hyper" if d >= 2 else "trivial",
            "mu": fn((0, 0, 1, 1)), "chain": [],
        }],
        "central_candidates": [{
            "element": "x1", "witnesses": ["K_G"],
            "rationale": "free abelian; the whole group is a stabilizer subgroup with trivial chain",
        }],
    }


def n3():
    dims = [3]
    e = lambda r, c: elem(dims, (0, r, c, 1))
    a12, a13, a23 = fn((0, 0, 1, 1)), fn((0, 0, 2, 1)), fn((0, 1, 2, 1))
    return {
        "name": "N3",
        "factors": dims,
        "class": 2,
        "abelian": False,
        "generators": {"a": e(0, 1), "b": e(1, 2), "c": e(0, 2)},
        "word_gens": ["a", "b"],
        "graded": [["a", "b"], ["c"]],
        "levels": [
            {"rank": 2, "zero_entries": [], "proj": [a12, a23]},
            {"rank": 1, "zero_entries": [[0, 0, 1], [0, 1, 2]], "proj": [a13]},
        ],
        "subgroups": [
            {"name": "Zcenter", "zero_entries": [[0, 0, 1], [0, 1, 2]],
             "gens": ["c"], "hj_gens": [["c"], ["c"]],
             "pi": a13, "pi_center": "c",
             "canonicalizer": [{"gen": "c", "entry": [0, 0, 2]}]},
            {"name": "K_ac", "zero_entries": [[0, 1, 2]],
             "gens": ["a", "c"], "hj_gens": [["a", "c"], ["c"]],
             "pi": a13, "pi_center": "c",
             "canonicalizer": [{"gen": "a", "entry": [0, 0, 1]},
                                {"gen": "c", "entry": [0, 0, 2]}],
             "order": a23},
            {"name": "H_a", "zero_entries": [[0, 1, 2], [0, 0, 2]],
             "gens": ["a"], "hj_gens": [["a"], []]},
            {"name": "full", "zero_entries": [],
             "gens": ["a", "b"], "hj_gens": [["a", "b"], ["c"]]},
            {"name": "trivial",
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 1, 2]],
             "gens": [], "hj_gens": [[], []]},
        ],
        "witnesses": [
            {"name": "K_ac", "central": "c", "K": "K_ac", "H": "H_a",
             "mu": a13, "chain": [{"sub": "K_ac", "lambda": a23}]},
            {"name": "K_center", "central": "c", "K": "Zcenter", "H": "trivial",
             "mu": a13, "chain": [{"sub": "K_ac", "lambda": a23},
                                   {"sub": "Zcenter", "lambda": a12}]},
        ],
        "central_candidates": [{
            "element": "c", "witnesses": ["K_ac", "K_center"],
            "rationale": "cyclic center <c>; K_ac attains Schreier degree 1",
        }],
    }


def n4():
    dims = [4]
    e = lambda r, c: elem(dims, (0, r, c, 1))
    a12, a23, a34 = fn((0, 0, 1, 1)), fn((0, 1, 2, 1)), fn((0, 2, 3, 1))
    a13, a24, a14 = fn((0, 0, 2, 1)), fn((0, 1, 3, 1)), fn((0, 0, 3, 1))
    return {
        "name": "N4",
        "factors": dims,
        "class": 3,
        "abelian": False,
        "generators": {"a": e(0, 1), "b": e(1, 2), "c": e(2, 3),
                        "m13": e(0, 2), "m24": e(1, 3), "z": e(0, 3)},
        "word_gens": ["a", "b", "c"],
        "graded": [["a", "b", "c"], ["m13", "m24"], ["z"]],
        "levels": [
            {"rank": 3, "zero_entries": [], "proj": [a12, a23, a34]},
            {"rank": 2, "zero_entries": [[0, 0, 1], [0, 1, 2], [0, 2, 3]],
             "proj": [a13, a24]},
            {"rank": 1,
             "zero_entries": [[0, 0, 1], [0, 1, 2], [0, 2, 3], [0, 0, 2], [0, 1, 3]],
             "proj": [a14]},
        ],
        "subgroups": [
            {"name": "Zcenter",
             "zero_entries": [[0, 0, 1], [0, 1, 2], [0, 2, 3], [0, 0, 2], [0, 1, 3]],
             "gens": ["z"], "hj_gens": [["z"], ["z"], ["z"]]},
            {"name": "G74", "zero_entries": [[0, 0, 1]],
             "gens": ["m13", "b", "c"],
             "hj_gens": [["b", "c", "m13"], ["m13", "m24", "z"], ["z"]]},
            {"name": "K_ex74", "zero_entries": [[0, 0, 1], [0, 2, 3]],
             "gens": ["m13", "b", "m24", "z"],
             "hj_gens": [["b", "m13", "m24", "z"], ["m13", "m24", "z"], ["z"]],
             "pi": a14, "pi_center": "z",
             "canonicalizer": [{"gen": "b", "entry": [0, 1, 2]},
                                {"gen": "m13", "entry": [0, 0, 2]},
                                {"gen": "m24", "entry": [0, 1, 3]},
                                {"gen": "z", "entry": [0, 0, 3]}]},
            {"name": "H_ex74",
             "zero_entries": [[0, 0, 1], [0, 2, 3], [0, 0, 3]],
             "gens": ["m13", "b", "m24"]},
            {"name": "K2", "zero_entries": [[0, 0, 1], [0, 1, 2]],
             "gens": ["m13", "m24", "c", "z"]},
            {"name": "K_G2",
             "zero_entries": [[0, 0, 1], [0, 1, 2], [0, 2, 3]],
             "gens": ["m13", "m24", "z"],
             "hj_gens": [["m13", "m24", "z"], ["m13", "m24", "z"], ["z"]]},
            {"name": "H_G2",
             "zero_entries": [[0, 0, 1], [0, 1, 2], [0, 2, 3], [0, 0, 3]],
             "gens": ["m13", "m24"]},
            {"name": "full", "zero_entries": [],
             "gens": ["a", "b", "c"],
             "hj_gens": [["a", "b", "c"], ["m13", "m24"], ["z"]]},
            {"name": "trivial",
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 0, 3], [0, 1, 2], [0, 1, 3], [0, 2, 3]],
             "gens": [], "hj_gens": [[], [], []]},
        ],
        "witnesses": [
            {"name": "K_ex74", "central": "z", "K": "K_ex74", "H": "H_ex74",
             "mu": a14,
             "chain": [{"sub": "G74", "lambda": a12},
                        {"sub": "K_ex74", "lambda": a34}]},
            {"name": "K_G2", "central": "z", "K": "K_G2", "H": "H_G2",
             "mu": a14,
             "chain": [{"sub": "G74", "lambda": a12},
                        {"sub": "K2", "lambda": a23},
                        {"sub": "K_G2", "lambda": a34}]},
        ],
        "central_candidates": [{
            "element": "z", "witnesses": ["K_ex74", "K_G2"],
            "rationale": "cyclic center <z>; K_ex74 (Z^4) attains Schreier degree 2",
        }],
    }


def n4g():
    dims = [4]
    e = lambda r, c: elem(dims, (0, r, c, 1))
    a13, a23, a34 = fn((0, 0, 2, 1)), fn((0, 1, 2, 1)), fn((0, 2, 3, 1))
    a14, a24 = fn((0, 0, 3, 1)), fn((0, 1, 3, 1))
    return {
        "name": "N4G",
        "factors": dims,
        "class": 2,
        "abelian": False,
        "generators": {"p": e(0, 2), "q": e(1, 2), "r": e(2, 3),
                        "s": e(1, 3), "t": e(0, 3)},
        "word_gens": ["p", "q", "r"],
        "graded": [["p", "q", "r"], ["t", "s"]],
        "levels": [
            {"rank": 3, "zero_entries": [[0, 0, 1]], "proj": [a13, a23, a34]},
            {"rank": 2,
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 1, 2], [0, 2, 3]],
             "proj": [a14, a24]},
        ],
        "subgroups": [
            {"name": "K", "zero_entries": [[0, 0, 1], [0, 2, 3]],
             "gens": ["p", "q", "s", "t"],
             "hj_gens": [["p", "q", "s", "t"], ["t", "s"]],
             "pi": a14, "pi_center": "t",
             "canonicalizer": [{"gen": "q", "entry": [0, 1, 2]},
                                {"gen": "p", "entry": [0, 0, 2]},
                                {"gen": "s", "entry": [0, 1, 3]},
                                {"gen": "t", "entry": [0, 0, 3]}],
             "order": a34},
            {"name": "H", "zero_entries": [[0, 0, 1], [0, 2, 3], [0, 0, 3]],
             "gens": ["p", "q", "s"]},
            {"name": "full", "zero_entries": [[0, 0, 1]],
             "gens": ["p", "q", "r"],
             "hj_gens": [["p", "q", "r"], ["t", "s"]]},
            {"name": "trivial",
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 0, 3], [0, 1, 2], [0, 1, 3], [0, 2, 3]],
             "gens": [], "hj_gens": [[], []]},
        ],
        "witnesses": [
            {"name": "K", "central": "t", "K": "K", "H": "H",
             "mu": a14, "chain": [{"sub": "K", "lambda": a34}]},
        ],
        "central_candidates": [{
            "element": "t", "witnesses": ["K"],
            "rationale": "declared representative of Z = <t, s>; K = Z^4 attains Schreier degree 1",
        }],
    }


def h5():
    dims = [4]
    e = lambda r, c: elem(dims, (0, r, c, 1))
    a12, a13, a24, a34 = fn((0, 0, 1, 1)), fn((0, 0, 2, 1)), fn((0, 1, 3, 1)), fn((0, 2, 3, 1))
    a14 = fn((0, 0, 3, 1))
    carrier = [0, 1, 2]  # a23 == 0 cuts H5 out of the 4x4 unitriangular group
    return {
        "name": "H5",
        "factors": dims,
        "class": 2,
        "abelian": False,
        "generators": {"x1": e(0, 1), "x2": e(0, 2), "y1": e(1, 3),
                        "y2": e(2, 3), "c": e(0, 3)},
        "word_gens": ["x1", "x2", "y1", "y2"],
        "graded": [["x1", "x2", "y1", "y2"], ["c"]],
        "levels": [
            {"rank": 4, "zero_entries": [carrier], "proj": [a12, a13, a24, a34]},
            {"rank": 1,
             "zero_entries": [carrier, [0, 0, 1], [0, 0, 2], [0, 1, 3], [0, 2, 3]],
             "proj": [a14]},
        ],
        "subgroups": [
            {"name": "K_A", "zero_entries": [carrier, [0, 1, 3], [0, 2, 3]],
             "gens": ["x1", "x2", "c"],
             "hj_gens": [["x1", "x2", "c"], ["c"]],
             "pi": a14, "pi_center": "c",
             "canonicalizer": [{"gen": "x1", "entry": [0, 0, 1]},
                                {"gen": "x2", "entry": [0, 0, 2]},
                                {"gen": "c", "entry": [0, 0, 3]}]},
            {"name": "H_A",
             "zero_entries": [carrier, [0, 1, 3], [0, 2, 3], [0, 0, 3]],
             "gens": ["x1", "x2"]},
            {"name": "K1", "zero_entries": [carrier, [0, 2, 3]],
             "gens": ["x1", "x2", "y1", "c"]},
            {"name": "KX2C",
             "zero_entries": [carrier, [0, 1, 3], [0, 2, 3], [0, 0, 1]],
             "gens": ["x2", "c"]},
            {"name": "Zcenter",
             "zero_entries": [carrier, [0, 0, 1], [0, 0, 2], [0, 1, 3], [0, 2, 3]],
             "gens": ["c"], "hj_gens": [["c"], ["c"]]},
            {"name": "full", "zero_entries": [carrier],
             "gens": ["x1", "x2", "y1", "y2"],
             "hj_gens": [["x1", "x2", "y1", "y2"], ["c"]]},
            {"name": "trivial",
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 0, 3], [0, 1, 2], [0, 1, 3], [0, 2, 3]],
             "gens": [], "hj_gens": [[], []]},
        ],
        "witnesses": [
            {"name": "K_A", "central": "c", "K": "K_A", "H": "H_A",
             "mu": a14,
             "chain": [{"sub": "K1", "lambda": a34},
                        {"sub": "K_A", "lambda": a24}]},
            {"name": "K_center", "central": "c", "K": "Zcenter", "H": "trivial",
             "mu": a14,
             "chain": [{"sub": "K1", "lambda": a34},
                        {"sub": "K_A", "lambda": a24},
                        {"sub": "KX2C", "lambda": a12},
                        {"sub": "Zcenter", "lambda": a13}]},
        ],
        "central_candidates": [{
            "element": "c", "witnesses": ["K_A", "K_center"],
            "rationale": "cyclic center <c>; the maximal abelian K_A attains Schreier degree 2",
        }],
    }


def n3xn3():
    dims = [3, 3]
    z_lvl1 = [[0, 0, 1], [0, 1, 2], [1, 0, 1], [1, 1, 2]]
    a12 = lambda f: fn((f, 0, 1, 1))
    a13 = lambda f: fn((f, 0, 2, 1))
    a23 = lambda f: fn((f, 1, 2, 1))
    g = {
        "a1": elem(dims, (0, 0, 1, 1)), "b1": elem(dims, (0, 1, 2, 1)),
        "c1": elem(dims, (0, 0, 2, 1)),
        "a2": elem(dims, (1, 0, 1, 1)), "b2": elem(dims, (1, 1, 2, 1)),
        "c2": elem(dims, (1, 0, 2, 1)),
    }
    return {
        "name": "N3xN3",
        "factors": dims,
        "class": 2,
        "abelian": False,
        "generators": g,
        "products": {"c1c2": ["c1", "c2"]},
        "word_gens": ["a1", "b1", "a2", "b2"],
        "graded": [["a1", "b1", "a2", "b2"], ["c1", "c2"]],
        "levels": [
            {"rank": 4, "zero_entries": [],
             "proj": [a12(0), a23(0), a12(1), a23(1)]},
            {"rank": 2, "zero_entries": z_lvl1, "proj": [a13(0), a13(1)]},
        ],
        "subgroups": [
            {"name": "Zc", "zero_entries": z_lvl1,
             "gens": ["c1", "c2"], "hj_gens": [["c1", "c2"], ["c1", "c2"]],
             "join_center": "Zc"},
            {"name": "K1", "zero_entries": [[0, 1, 2]],
             "gens": ["a1", "c1", "a2", "b2", "c2"],
             "hj_gens": [["a1", "c1", "a2", "b2", "c2"], ["c1", "c2"]],
             "pi": a13(0), "pi_center": "c1",
             "canonicalizer": [{"gen": "a1", "entry": [0, 0, 1]},
                                {"gen": "c1", "entry": [0, 0, 2]},
                                {"gen": "a2", "entry": [1, 0, 1]},
                                {"gen": "b2", "entry": [1, 1, 2]},
                                {"gen": "c2", "entry": [1, 0, 2]}],
             "order": a23(0)},
            {"name": "H1", "zero_entries": [[0, 1, 2], [0, 0, 2]],
             "gens": ["a1", "a2", "b2", "c2"]},
            {"name": "K2", "zero_entries": [[1, 1, 2]],
             "gens": ["a2", "c2", "a1", "b1", "c1"],
             "hj_gens": [["a2", "c2", "a1", "b1", "c1"], ["c1", "c2"]],
             "pi": a13(1), "pi_center": "c2",
             "canonicalizer": [{"gen": "a2", "entry": [1, 0, 1]},
                                {"gen": "c2", "entry": [1, 0, 2]},
                                {"gen": "a1", "entry": [0, 0, 1]},
                                {"gen": "b1", "entry": [0, 1, 2]},
                                {"gen": "c1", "entry": [0, 0, 2]}],
             "order": a23(1)},
            {"name": "H2", "zero_entries": [[1, 1, 2], [1, 0, 2]],
             "gens": ["a2", "a1", "b1", "c1"]},
            {"name": "A2", "zero_entries": [[0, 1, 2], [1, 1, 2]],
             "gens": ["a1", "c1", "a2", "c2"],
             "hj_gens": [["a1", "a2", "c1", "c2"], ["c1", "c2"]],
             "join_center": "A2"},
            {"name": "B2", "zero_entries": [[0, 0, 1], [1, 0, 1]],
             "gens": ["b1", "c1", "b2", "c2"],
             "hj_gens": [["b1", "b2", "c1", "c2"], ["c1", "c2"]],
             "join_center": "B2"},
            {"name": "M", "zero_entries": [[0, 1, 2], [1, 0, 1]],
             "gens": ["a1", "c1", "b2", "c2"],
             "hj_gens": [["a1", "b2", "c1", "c2"], ["c1", "c2"]],
             "join_center": "M"},
            {"name": "full", "zero_entries": [],
             "gens": ["a1", "b1", "a2", "b2"],
             "hj_gens": [["a1", "b1", "a2", "b2"], ["c1", "c2"]],
             "join_center": "full"},
            {"name": "trivial",
             "zero_entries": [[0, 0, 1], [0, 0, 2], [0, 1, 2],
                               [1, 0, 1], [1, 0, 2], [1, 1, 2]],
             "gens": [], "hj_gens": [[], []]},
        ],
        "witnesses": [
            {"name": "K1", "central": "c1", "K": "K1", "H": "H1",
             "mu": a13(0), "chain": [{"sub": "K1", "lambda": a23(0)}]},
            {"name": "K2", "central": "c2", "K": "K2", "H": "H2",
             "mu": a13(1), "chain": [{"sub": "K2", "lambda": a23(1)}]},
            {"name": "K12", "central": "c1c2", "K": "K1", "H": "H1",
             "mu": a13(0), "chain": [{"sub": "K1", "lambda": a23(0)}]},
        ],
        "central_candidates": [
            {"element": "c1", "witnesses": ["K1"],
             "rationale": "product witness <a1,c1> x N3 attains Schreier degree 1"},
            {"element": "c2", "witnesses": ["K2"],
             "rationale": "mirror of c1"},
            {"element": "c1c2", "witnesses": ["K12"],
             "rationale": "mixed central direction; the K1 witness separates it"},
        ],
        "abelian_catalog": ["Zc", "A2", "B2", "M"],
    }


def main():
    cat = {
        "schema": "nilreg-catalog-v1",
        "groups": [zd(1), zd(2), zd(3), zd(4), n3(), n4(), n4g(), h5(), n3xn3()],
    }
    out = os.path.join(os.path.dirname(__file__), "..", "data", "catalog.json")
    with open(out, "w") as f:
        json.dump(cat, f, indent=1)
        f.write("\n")
    print("wrote", os.path.normpath(out))


if __name__ == "__main__":
    main()
