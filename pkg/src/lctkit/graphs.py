"""Resolution graphs: crepant pullback and threshold extraction.

A graph records the exceptional curves of a surface resolution (id,
self-intersection, multiplicity of the resolved divisor along the
curve), their tree adjacency, and optionally transverse boundary
branches with fixed coefficients attached to curves.  All curves are
rational, so the canonical intersection is K.E = -2 - E^2, and the
multiplicity data determines the strict transform's intersection with
each curve.  Crepant coefficients solve the triviality system
(K + sum b_i E_i + c F_strict + boundary).E_j = 0, which is
affine-linear in the threshold parameter c; the linear algebra is exact
integer fraction-free elimination, whose pivots simultaneously certify
negative definiteness of the intersection matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .errors import DomainError, StructuralError
from .germs import AxesBoundary, CyclicQuotientGerm, hj_expand
from .rationals import ONE, format_rational, parse_rational


@dataclass(frozen=True)
class Curve:
    id: int
    self_int: int
    f_mult: int

    def __post_init__(self) -> None:
        if self.self_int > -1:
            raise StructuralError(f"curve {self.id}: self-intersection must be <= -1")
        if self.f_mult < 0:
            raise StructuralError(f"curve {self.id}: multiplicity must be >= 0")


@dataclass(frozen=True)
class BoundaryEnd:
    curve: int
    mult: Fraction


@dataclass(frozen=True)
class ResolutionGraph:
    """Exceptional tree with divisor multiplicities and boundary ends.

    `components` lists the multiplicities of the resolved divisor's own
    components (used for the coefficient bounds c <= 1/mult when
    extracting the threshold).
    """

    curves: tuple[Curve, ...]
    edges: tuple[tuple[int, int], ...] = ()
    ends: tuple[BoundaryEnd, ...] = ()
    components: tuple[int, ...] = ()
    name: str = ""
    notes: str = ""

    def __post_init__(self) -> None:
        ids = [c.id for c in self.curves]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate curve ids")
        idset = set(ids)
        seen = set()
        for i, j in self.edges:
            if i == j or i not in idset or j not in idset:
                raise StructuralError(f"bad edge ({i}, {j})")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise StructuralError(f"duplicate edge ({i}, {j})")
            seen.add(key)
        for e in self.ends:
            if e.curve not in idset:
                raise StructuralError(f"boundary end attached to unknown curve {e.curve}")
            if e.mult < 0 or e.mult > 1:
                raise StructuralError("boundary end coefficient must lie in [0, 1]")
        for mult in self.components:
            if mult < 1:
                raise StructuralError("component multiplicities must be >= 1")
        if self.curves:
            if len(self.edges) != len(self.curves) - 1 or not self._connected():
                raise StructuralError("exceptional graph must be a tree")
            # negative definiteness certified by the elimination pivots
            _triangularize(self._intersection_matrix(), [])

    def _connected(self) -> bool:
        ids = [c.id for c in self.curves]
        adj: dict[int, list[int]] = {i: [] for i in ids}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {ids[0]}
        todo = [ids[0]]
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(ids)

    def _intersection_matrix(self) -> list[list[int]]:
        index = {c.id: i for i, c in enumerate(self.curves)}
        n = len(self.curves)
        mat = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.curves):
            mat[i][i] = c.self_int
        for i, j in self.edges:
            mat[index[i]][index[j]] = 1
            mat[index[j]][index[i]] = 1
        return mat

    def to_json(self) -> dict:
        doc: dict = {
            "curves": [{"id": c.id, "self_int": c.self_int, "f_mult": c.f_mult}
                       for c in self.curves],
            "edges": [[i, j] for i, j in self.edges],
            "ends": [{"curve": e.curve, "mult": format_rational(e.mult)} for e in self.ends],
        }
        if self.components:
            doc["components"] = list(self.components)
        if self.name:
            doc["name"] = self.name
        if self.notes:
            doc["notes"] = self.notes
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ResolutionGraph":
        try:
            curves = tuple(Curve(int(c["id"]), int(c["self_int"]), int(c.get("f_mult", 0)))
                           for c in doc.get("curves", []))
            edges = tuple((int(i), int(j)) for i, j in doc.get("edges", []))
            ends = tuple(BoundaryEnd(int(e["curve"]), parse_rational(str(e["mult"])))
                         for e in doc.get("ends", []))
            components = tuple(int(x) for x in doc.get("components", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed graph document: {exc}") from exc
        return cls(curves, edges, ends, components,
                   name=str(doc.get("name", "")), notes=str(doc.get("notes", "")))

    @classmethod
    def from_file(cls, path: str) -> "ResolutionGraph":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise StructuralError(f"cannot read graph file {path}: {exc}") from exc
        return cls.from_json(doc)


def _triangularize(mat: list[list[int]], rhs_cols: list[list[int]]) -> list[list[int]]:
    """Fraction-free (Bareiss) elimination of the augmented integer matrix.

    The pivots are the leading principal minors; alternating signs
    starting negative certify negative definiteness, anything else
    raises.  Returns the upper-triangularized augmented matrix.
    """
    n = len(mat)
    a = [list(mat[i]) + [col[i] for col in rhs_cols] for i in range(n)]
    width = n + len(rhs_cols)
    prev = 1
    sign = -1
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0 or (pivot > 0) != (sign > 0):
            raise StructuralError("intersection matrix is not negative definite")
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            factor = row_i[k]
            for j in range(k, width):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
        prev = pivot
        sign = -sign
    return a


def _solve_columns(mat: list[list[int]], rhs_cols: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact solutions of mat * x = rhs for each rational rhs column."""
    n = len(mat)
    if n == 0:
        return [[] for _ in rhs_cols]
    scaled = []
    scales = []
    for col in rhs_cols:
        scale = lcm(*(v.denominator for v in col)) if col else 1
        scales.append(scale)
        scaled.append([int(v * scale) for v in col])
    tri = _triangularize(mat, scaled)
    solutions = []
    for idx, scale in enumerate(scales):
        col = n + idx
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = Fraction(tri[i][col], 1)
            for j in range(i + 1, n):
                acc -= tri[i][j] * x[j]
            x[i] = acc / tri[i][i]
        solutions.append([v / scale for v in x])
    return solutions


def crepant_coefficients_affine(graph: ResolutionGraph) -> list[tuple[int, Fraction, Fraction]]:
    """Per curve id, the crepant coefficient b(c) = alpha + beta*c.

    Solves (K + sum b_i E_i + c F_strict + boundary).E_j = 0 for all j,
    where K.E_j = -2 - E_j^2 and F_strict.E_j is recovered from the
    multiplicities by triviality of the full pullback.
    """
    n = len(graph.curves)
    if n == 0:
        return []
    index = {c.id: i for i, c in enumerate(graph.curves)}
    mat = graph._intersection_matrix()
    end_load = [Fraction(0)] * n
    for e in graph.ends:
        end_load[index[e.curve]] += e.mult
    rhs0 = [Fraction(2 + c.self_int) - end_load[i] for i, c in enumerate(graph.curves)]
    mults = [c.f_mult for c in graph.curves]
    rhs1 = [Fraction(sum(mults[i] * mat[i][j] for i in range(n))) for j in range(n)]
    alpha, beta = _solve_columns(mat, [rhs0, rhs1])
    return [(c.id, alpha[i], beta[i]) for i, c in enumerate(graph.curves)]


def crepant_pullback(graph: ResolutionGraph, c: Fraction) -> list[tuple[int, Fraction]]:
    """Crepant coefficients b_i at the threshold parameter c.

    The discrepancy of the curve's valuation is -b_i.
    """
    return [(cid, a + b * c) for cid, a, b in crepant_coefficients_affine(graph)]


@dataclass(frozen=True)
class LctResult:
    value: Fraction
    binding: Optional[tuple[str, int]]  # ("curve", id) or ("component", index)
    capped: bool = False

    def to_json(self) -> dict:
        doc: dict = {"lct": format_rational(self.value), "capped": self.capped}
        if self.binding is not None:
            doc["binding"] = {"kind": self.binding[0], "id": self.binding[1]}
        return doc


def lct_from_graph(graph: ResolutionGraph,
                   component_multiplicities: Optional[list[int]] = None) -> LctResult:
    """Largest threshold c keeping every coefficient of the pair at most 1.

    Every crepant coefficient is affine-linear in c, so each exceptional
    curve contributes the bound b_i(c) <= 1 and each divisor component
    the bound c <= 1/multiplicity; the threshold is the minimum.  If no
    constraint binds, the value is capped at 1 (the convention for a
    divisor that stays log canonical with coefficient 1) and flagged.
    """
    mults = list(component_multiplicities) if component_multiplicities is not None \
        else list(graph.components)
    for mult in mults:
        if mult < 1:
            raise DomainError("component multiplicities must be >= 1")
    bounds: list[tuple[Fraction, tuple[str, int]]] = []
    for cid, a, b in crepant_coefficients_affine(graph):
        if b > 0:
            bounds.append(((1 - a) / b, ("curve", cid)))
        elif a > 1:
            raise StructuralError(
                f"curve {cid} has constant coefficient {format_rational(a)} > 1: "
                "the pair is not log canonical for any threshold")
    for idx, mult in enumerate(mults):
        bounds.append((Fraction(1, mult), ("component", idx)))
    if not bounds:
        return LctResult(ONE, None, capped=True)
    best_value, best_binding = bounds[0]
    for value, binding in bounds[1:]:
        if value < best_value:
            best_value, best_binding = value, binding
    if best_value > 1:
        return LctResult(ONE, None, capped=True)
    return LctResult(best_value, best_binding)


def germ_chain_graph(germ: CyclicQuotientGerm, boundary: AxesBoundary) -> ResolutionGraph:
    """Minimal-resolution chain of a quotient germ with its axes boundary.

    Curve i corresponds to the i-th staircase vector of the germ's
    lattice; the first curve meets the strict transform of the axis
    carrying lambda2 and the last curve the axis carrying lambda1.
    """
    chain = hj_expand(germ.m, germ.q)
    if not chain:
        return ResolutionGraph(())
    curves = tuple(Curve(i + 1, -a, 0) for i, a in enumerate(chain))
    edges = tuple((i, i + 1) for i in range(1, len(chain)))
    ends = (BoundaryEnd(1, boundary.lambda2), BoundaryEnd(len(chain), boundary.lambda1))
    return ResolutionGraph(curves, edges, ends,
                           name=f"quotient-chain-{germ.m}-{germ.q}")
