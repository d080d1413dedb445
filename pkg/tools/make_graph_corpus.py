#!/usr/bin/env python3
"""Regenerate the bundled resolution-graph corpus.

The corpus entries are fixed input data: curve self-intersections,
pullback multiplicities and branch counts of the standard blowup
staircases for the classical plane-curve germs xy = 0 (node) and
x^2 = y^n (cusp at n = 3, tacnode at n = 4).  Curves are numbered in
blowup order, so the last id is the final (-1)-curve.

Run from the repository root:  python3 tools/make_graph_corpus.py
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "lctkit" / "data" / "graphs"

NOTES = ("Fixed input data (standard blowup staircase of the plane-curve germ); "
         "multiplicities and self-intersections are part of the input, not derived "
         "from equations at runtime.")


def x2_yn_graph(n: int) -> dict:
    """Minimal embedded resolution data for x^2 = y^n, curves in blowup order."""
    assert n >= 3
    if n % 2 == 0:
        k = n // 2
        curves = [{"id": i, "self_int": -2 if i < k else -1, "f_mult": 2 * i}
                  for i in range(1, k + 1)]
        edges = [[i, i + 1] for i in range(1, k)]
        components = [1, 1]  # two smooth branches through the last curve
    else:
        k = (n - 1) // 2
        curves = [{"id": i, "self_int": -2, "f_mult": 2 * i} for i in range(1, k)]
        curves.append({"id": k, "self_int": -3, "f_mult": 2 * k})
        curves.append({"id": k + 1, "self_int": -2, "f_mult": n})
        curves.append({"id": k + 2, "self_int": -1, "f_mult": 2 * n})
        edges = [[i, i + 1] for i in range(1, k)] + [[k, k + 2], [k + 2, k + 1]]
        components = [1]  # one smooth branch through the last curve
    return {
        "name": f"x2_y{n}",
        "notes": NOTES,
        "curves": curves,
        "edges": edges,
        "ends": [],
        "components": components,
    }


def node_graph() -> dict:
    return {
        "name": "node",
        "notes": NOTES,
        "curves": [{"id": 1, "self_int": -1, "f_mult": 2}],
        "edges": [],
        "ends": [],
        "components": [1, 1],
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {"node.json": node_graph()}
    for n in range(3, 13):
        docs[f"x2_y{n}.json"] = x2_yn_graph(n)
    cusp = dict(x2_yn_graph(3), name="cusp")
    tacnode = dict(x2_yn_graph(4), name="tacnode")
    docs["cusp.json"] = cusp
    docs["tacnode.json"] = tacnode
    for fname, doc in docs.items():
        path = OUT / fname
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print("wrote", path)


if __name__ == "__main__":
    main()
