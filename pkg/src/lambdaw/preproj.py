"""Degree-truncated preprojective algebras and their modules.

The double quiver has arrows ``a`` (index ``2m``) and ``a*`` (index
``2m + 1``) for the ``m``-th arrow of the quiver.  The relation at a vertex
``v`` is ``sum_{t(a)=v} a a* - sum_{s(a)=v} a* a``.

The algebra is built one degree at a time: degree ``d`` is spanned by the
formal products ``a.b`` of an arrow with a basis element ``b`` of degree
``d - 1``, modulo ``rho_v.q`` for basis elements ``q`` of degree ``d - 2``.
Every surviving basis element keeps the pair ``(a, b)`` it came from, so the
basis of each projective is a tree rooted at its idempotent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .coxeter import Quiver
from .linalg import QQ, Field, hstack, matrix_from_strings, matrix_to_strings, rref
from .reps import (ArrowGraph, Morphism, Rep, Subrep, generated_subrep, hom_space,
                   loewy_layers, radical, socle, socle_component, top_dims, whole)


class ResourceCapExceeded(RuntimeError):
    pass


DEFAULT_BASIS_CAP = 200_000


def double_quiver(q: Quiver) -> ArrowGraph:
    arrows, names = [], []
    for m, (s, t) in enumerate(q.arrows):
        arrows.append((s - 1, t - 1))
        names.append(f"a{m + 1}")
        arrows.append((t - 1, s - 1))
        names.append(f"a{m + 1}*")
    return ArrowGraph(q.n, tuple(arrows), tuple(names),
                      tuple(str(v) for v in q.vertices))


@dataclass
class TreeProjective:
    """A projective module whose basis vectors are paths from one generator.

    Node ``0`` is the generator; node ``n > 0`` equals arrow ``node_arrow[n]``
    applied to node ``node_parent[n]``.  ``basis_nodes[v][k]`` is the node that
    represents the ``k``-th basis vector of ``rep`` at vertex ``v``.
    """

    rep: Rep
    vertex: int
    node_vertex: list[int]
    node_parent: list[int]
    node_arrow: list[int]
    basis_nodes: list[list[int]]

    def path(self, node: int) -> list[int]:
        """Arrow indices from the generator to ``node`` in traversal order."""
        out = []
        while node:
            out.append(self.node_arrow[node])
            node = self.node_parent[node]
        return out[::-1]

    def yoneda(self, X: Rep, x) -> Morphism:
        """The map sending the generator to the column vector ``x`` of ``X``."""
        F = X.field
        imgs = [None] * len(self.node_vertex)
        imgs[0] = x
        for n in range(1, len(imgs)):
            imgs[n] = X.mats[self.node_arrow[n]] * imgs[self.node_parent[n]]
        comps = []
        for v, nodes in enumerate(self.basis_nodes):
            comps.append(hstack(F, [imgs[n] for n in nodes], X.dims[v]))
        return Morphism(self.rep, X, comps)


class TruncAlg:
    """Preprojective algebra truncated below degree ``N``."""

    def __init__(self, quiver: Quiver, N: int, field: Field = QQ,
                 basis_cap: int = DEFAULT_BASIS_CAP):
        if N < 1:
            raise ValueError("truncation degree must be at least 1")
        self.quiver = quiver
        self.N = N
        self.field = field
        self.graph = double_quiver(quiver)
        self.basis_cap = basis_cap
        self._total = 0
        # per source vertex: node data and degree lists
        self.nodes: list[dict] = [self._build_source(i) for i in range(quiver.n)]
        self._projectives: dict[int, TreeProjective] = {}

    # construction ---------------------------------------------------------
    def _build_source(self, i: int) -> dict:
        G = self.graph
        F = self.field
        nq = len(self.quiver.arrows)
        vertex, degree, parent, arrow = [i], [0], [-1], [-1]
        by_deg = [[0]]
        mult: dict[tuple[int, int], dict[int, object]] = {}
        self._count(1)
        for d in range(1, self.N):
            cands = [(a, b) for b in by_deg[d - 1] for a in G.arrows_out_of(vertex[b])]
            if not cands:
                break
            index = {c: k for k, c in enumerate(cands)}
            rels = []
            if d >= 2:
                for q in by_deg[d - 2]:
                    v = vertex[q]
                    row = {}
                    for m in range(nq):
                        s, t = self.quiver.arrows[m]
                        if t - 1 == v:
                            outer, inner, sign = 2 * m, 2 * m + 1, 1
                        elif s - 1 == v:
                            outer, inner, sign = 2 * m + 1, 2 * m, -1
                        else:
                            continue
                        for b, c in mult.get((inner, q), {}).items():
                            k = index[(outer, b)]
                            row[k] = row.get(k, 0) + sign * c
                    if any(x != 0 for x in row.values()):
                        rels.append(row)
            ncand = len(cands)
            if rels:
                flat = [0] * (len(rels) * ncand)
                for r, row in enumerate(rels):
                    for k, x in row.items():
                        flat[r * ncand + k] = x
                R, rk, piv = rref(F.matrix(len(rels), ncand, flat))
                Rl = R.tolist()
            else:
                rk, piv, Rl = 0, [], []
            pivset = set(piv)
            free = [k for k in range(ncand) if k not in pivset]
            new_nodes = []
            for k in free:
                a, b = cands[k]
                vertex.append(G.arrows[a][1])
                degree.append(d)
                parent.append(b)
                arrow.append(a)
                new_nodes.append(len(vertex) - 1)
            self._count(len(new_nodes))
            col_node = {k: n for k, n in zip(free, new_nodes)}
            for k in free:
                mult[cands[k]] = {col_node[k]: F.scalar(1)}
            for r, k in enumerate(piv):
                vec = {}
                for f in free:
                    x = Rl[r][f]
                    if x != 0:
                        vec[col_node[f]] = -x
                mult[cands[k]] = vec
            by_deg.append(new_nodes)
            if not new_nodes:
                break
        return {"vertex": vertex, "degree": degree, "parent": parent, "arrow": arrow,
                "by_deg": by_deg, "mult": mult}

    def _count(self, k: int):
        self._total += k
        if self._total > self.basis_cap:
            raise ResourceCapExceeded(
                f"truncated algebra exceeds {self.basis_cap} basis elements")

    # queries --------------------------------------------------------------
    def degree_dims(self) -> list[int]:
        out = [0] * self.N
        for data in self.nodes:
            for d, nodes in enumerate(data["by_deg"]):
                out[d] += len(nodes)
        return out

    @property
    def dim(self) -> int:
        return sum(self.degree_dims())

    def label(self, i: int, node: int) -> str:
        data = self.nodes[i]
        parts = []
        while node:
            parts.append(self.graph.names[data["arrow"][node]])
            node = data["parent"][node]
        parts.append(f"e{i + 1}")
        return ".".join(parts)

    def degree_basis(self, d: int) -> list[str]:
        out = []
        for i, data in enumerate(self.nodes):
            if d < len(data["by_deg"]):
                out.extend(self.label(i, n) for n in data["by_deg"][d])
        return out

    def projective(self, i: int) -> TreeProjective:
        """``P_i`` truncated below degree ``N``; ``i`` is a 0-based vertex."""
        if i in self._projectives:
            return self._projectives[i]
        data = self.nodes[i]
        G, F = self.graph, self.field
        n = len(data["vertex"])
        per_vertex: list[list[int]] = [[] for _ in range(G.nverts)]
        pos = [0] * n
        for node in range(n):
            v = data["vertex"][node]
            pos[node] = len(per_vertex[v])
            per_vertex[v].append(node)
        dims = [len(p) for p in per_vertex]
        mats = []
        for a, (s, t) in enumerate(G.arrows):
            M = F.zeros(dims[t], dims[s])
            for node in per_vertex[s]:
                for tgt, c in data["mult"].get((a, node), {}).items():
                    M[pos[tgt], pos[node]] = c
            mats.append(M)
        rep = Rep(G, F, dims, mats)
        tp = TreeProjective(rep, i, list(data["vertex"]), list(data["parent"]),
                            list(data["arrow"]), per_vertex)
        self._projectives[i] = tp
        return tp


def build_truncated_algebra(q: Quiver, N: int, field: Field = QQ,
                            basis_cap: int = DEFAULT_BASIS_CAP) -> TruncAlg:
    return TruncAlg(q, N, field, basis_cap)


def truncated_projective(alg: TruncAlg, i: int) -> Rep:
    """``P_i^{(N)}`` for a 1-based vertex ``i``."""
    return alg.projective(i - 1).rep


# relations ------------------------------------------------------------------

def relation_defects(q: Quiver, X: Rep) -> list[int]:
    """Vertices (1-based) where the preprojective relation fails on ``X``."""
    bad = []
    for v in range(q.n):
        d = X.dims[v]
        if d == 0:
            continue
        acc = X.field.zeros(d, d)
        for m, (s, t) in enumerate(q.arrows):
            a, b = X.mats[2 * m], X.mats[2 * m + 1]
            if t - 1 == v:
                acc += a * b
            if s - 1 == v:
                acc -= b * a
        if any(x != 0 for x in acc.entries()):
            bad.append(v + 1)
    return bad


def satisfies_relations(q: Quiver, X: Rep) -> bool:
    return not relation_defects(q, X)


# structure ------------------------------------------------------------------

def structure_parts(X: Rep) -> dict:
    rad = radical(X)
    soc = socle(X)
    return {
        "radical": rad,
        "top": top_dims(X),
        "socle": soc.dims,
        "socle_subrep": soc,
        "socle_component": lambda i: socle_component(X, i - 1),
    }


def sub_quotient(X: Rep, generators: dict[int, object] | Subrep, quotient: bool = False):
    """Subrepresentation generated by vectors (1-based vertex keys) or given
    directly; with ``quotient`` returns ``X / U`` and the projection instead."""
    if isinstance(generators, Subrep):
        U = generators
    else:
        U = generated_subrep(X, {v - 1: g for v, g in generators.items()})
    if quotient:
        return U.quotient()
    return U.rep(), U.inclusion()


def loewy_diagram(X: Rep, labels: Sequence[str] | None = None) -> str:
    """Radical layers top-down with vertex labels repeated by multiplicity."""
    labels = labels or X.graph.vertex_labels
    rows = []
    for layer in loewy_layers(X):
        items = []
        for v, m in enumerate(layer):
            items.extend([labels[v]] * m)
        rows.append(" ".join(items))
    if not rows:
        return "0"
    width = max(len(r) for r in rows)
    return "\n".join(r.center(width).rstrip() for r in rows)


# serialization ----------------------------------------------------------------

def rep_to_json(X: Rep) -> dict:
    F = X.field
    return {
        "field": F.name,
        "dims": list(X.dims),
        "arrows": [[s + 1, t + 1] for s, t in X.graph.arrows],
        "arrow_names": list(X.graph.names),
        "matrices": [matrix_to_strings(F, m) for m in X.mats],
    }


def rep_from_json(data: dict, graph: ArrowGraph) -> Rep:
    F = Field.parse(data.get("field", "q"))
    dims = data["dims"]
    mats = []
    for (s, t), rows in zip(graph.arrows, data["matrices"]):
        mats.append(matrix_from_strings(F, rows, dims[t], dims[s]))
    return Rep(graph, F, dims, mats)


def dumps_rep(X: Rep) -> str:
    return json.dumps(rep_to_json(X), sort_keys=True)


__all__ = [
    "TruncAlg", "TreeProjective", "ResourceCapExceeded", "build_truncated_algebra",
    "truncated_projective", "double_quiver", "relation_defects", "satisfies_relations",
    "hom_space", "structure_parts", "sub_quotient", "loewy_diagram", "rep_to_json",
    "rep_from_json", "whole",
]
