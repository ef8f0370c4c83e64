"""Rigidity, cluster tilting certificates, mutation and the cluster tilting graph."""
from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field

from . import homological as hl
from .coxeter import letter_positions
from .linalg import Subspace, complement_basis
from .modops import CTObject, NotAModuleError, WordAlgebra, in_sub_lambda_w, omega_tilde
from .reps import (Morphism, Rep, hom_space, is_local, isomorphic_indecomposables,
                   loewy_layers, span_of_maps, sum_map_from, sum_map_into, trace_radical)


class MutationError(ValueError):
    """Mutation requested at a projective position or the theory was violated."""


# rigidity and cluster tilting -------------------------------------------------------

def is_rigid(parts: list[Rep], A: WordAlgebra) -> bool:
    return all(hl.ext1_dim(A, X, Y) == 0 for X in parts for Y in parts)


def match_indecomposables(a: list[Rep], b: list[Rep]) -> list[int] | None:
    """A bijection ``a -> b`` by isomorphism classes, or ``None``."""
    if len(a) != len(b):
        return None
    used = [False] * len(b)
    out = []
    for X in a:
        for k, Y in enumerate(b):
            if not used[k] and isomorphic_indecomposables(X, Y):
                used[k] = True
                out.append(k)
                break
        else:
            return None
    return out


def is_cluster_tilting(M: CTObject | list[Rep], A: WordAlgebra) -> tuple[bool, dict]:
    """Rigid with ``l(w)`` pairwise non-isomorphic indecomposable summands.

    Missing indecomposable projectives are added (and reported) first.
    """
    parts = list(M.summands if isinstance(M, CTObject) else M)
    for X in parts:
        if not in_sub_lambda_w(X, A):
            raise NotAModuleError(f"summand of dims {X.dims} is not in Sub Lambda_w")
    added = []
    for v in range(A.nverts):
        P = A.projective(v).rep
        if P.dim and not any(isomorphic_indecomposables(P, X) for X in parts):
            parts.append(P)
            added.append(v + 1)
    local = all(is_local(X) for X in parts)
    distinct = all(not isomorphic_indecomposables(parts[a], parts[b])
                   for a in range(len(parts)) for b in range(a))
    rigid = is_rigid(parts, A)
    n = len(A.word)
    diag = {"summands": len(parts), "expected": n, "added_projectives": added,
            "indecomposable": local, "pairwise_distinct": distinct, "rigid": rigid}
    return rigid and local and distinct and len(parts) == n, diag


# approximations ---------------------------------------------------------------

def _radical_maps(X: Rep, T: list[Rep], i: int) -> Subspace:
    """Maps ``X -> T_i`` factoring through a radical map of ``add T``."""
    H = hom_space(X, T[i])
    if H.dim == 0:
        return Subspace.zero(X.field, 0)
    maps = []
    for j, Tj in enumerate(T):
        src = hom_space(X, Tj)
        if src.dim == 0:
            continue
        E = hom_space(Tj, T[i])
        if j == i:
            R = trace_radical(Tj)
            rad = [E.element([R.basis[r, c] for r in range(E.dim)]) for c in range(R.dim)]
        else:
            rad = E.basis
        for g in rad:
            for f in src.basis:
                maps.append(g.compose(f))
    return span_of_maps(H, maps)


@dataclass
class Approximation:
    """``f: X -> B = T_{idx[0]} + T_{idx[1]} + ...`` with its component maps."""

    source: Rep
    target: Rep
    map: Morphism
    components: list[Morphism]
    indices: list[int]


def is_left_approximation(X: Rep, comps: list[Morphism], T: list[Rep]) -> bool:
    """Every map ``X -> T_i`` factors through ``(comps)``."""
    for Ti in T:
        H = hom_space(X, Ti)
        if H.dim == 0:
            continue
        maps = [g.compose(f) for f in comps for g in hom_space(f.target, Ti).basis]
        if span_of_maps(H, maps).dim != H.dim:
            return False
    return True


def minimal_left_approx(X: Rep, T: list[Rep], check: bool = True) -> Approximation:
    """Minimal left ``add T``-approximation of ``X`` (``T`` indecomposables).

    The multiplicity of ``T_i`` is the dimension of ``Hom(X, T_i)`` modulo the
    maps factoring through radical maps of ``add T``; the chosen components
    are a basis of a complement.  With ``check`` the result is certified to
    be an approximation from which no summand can be dropped.
    """
    F = X.field
    comps, idx = [], []
    for i, Ti in enumerate(T):
        H = hom_space(X, Ti)
        if H.dim == 0:
            continue
        R = _radical_maps(X, T, i)
        for c in complement_basis(F, R, F.eye(H.dim)):
            comps.append(H.basis[c])
            idx.append(i)
    if comps:
        f = sum_map_into(comps)
        B = f.target
    else:
        B = Rep.zero(X.graph, F)
        f = X.zero_map(B)
    if check:
        if not is_left_approximation(X, comps, T):
            raise MutationError("left approximation failed to factor all maps")
        for k in range(len(comps)):
            if is_left_approximation(X, comps[:k] + comps[k + 1:], T):
                raise MutationError("left approximation is not minimal")
    return Approximation(X, B, f, comps, idx)


def minimal_right_approx(X: Rep, T: list[Rep], check: bool = True) -> Approximation:
    """Minimal right ``add T``-approximation ``B -> X`` (dual construction)."""
    F = X.field
    comps, idx = [], []
    for i, Ti in enumerate(T):
        H = hom_space(Ti, X)
        if H.dim == 0:
            continue
        maps = []
        for j, Tj in enumerate(T):
            src = hom_space(Tj, X)
            E = hom_space(Ti, Tj)
            if src.dim == 0 or E.dim == 0:
                continue
            if j == i:
                R = trace_radical(Ti)
                rad = [E.element([R.basis[r, c] for r in range(E.dim)]) for c in range(R.dim)]
            else:
                rad = E.basis
            maps.extend(f.compose(g) for g in rad for f in src.basis)
        R = span_of_maps(H, maps)
        for c in complement_basis(F, R, F.eye(H.dim)):
            comps.append(H.basis[c])
            idx.append(i)
    if comps:
        f = sum_map_from(comps)
        B = f.source
    else:
        B = Rep.zero(X.graph, F)
        f = B.zero_map(X)
    if check:
        def covers(cs):
            for Ti in T:
                H = hom_space(Ti, X)
                if H.dim == 0:
                    continue
                maps = [g.compose(h) for g in cs for h in hom_space(Ti, g.source).basis]
                if span_of_maps(H, maps).dim != H.dim:
                    return False
            return True
        if not covers(comps):
            raise MutationError("right approximation failed to factor all maps")
        for k in range(len(comps)):
            if covers(comps[:k] + comps[k + 1:]):
                raise MutationError("right approximation is not minimal")
    return Approximation(B, X, f, comps, idx)


# mutation -------------------------------------------------------------------------

@dataclass
class ExchangePair:
    """``0 -> removed -> middle -> added -> 0`` with ``middle`` in ``add(M / M_k)``."""

    position: int
    removed: Rep
    added: Rep
    middle: Rep
    middle_indices: list[int]
    inclusion: Morphism
    projection: Morphism


def mutate(M: CTObject, k: int, A: WordAlgebra, certify: str = "full",
           cross_check: bool = False) -> tuple[CTObject, ExchangePair]:
    """``mu_k`` at the 0-based position ``k``; the new summand stays at ``k``.

    ``certify="full"`` re-certifies the result from scratch;
    ``"incremental"`` only tests the new summand against the others (the
    remaining summands are already known to be rigid).
    """
    if M.projective[k]:
        raise MutationError(f"position {M.labels[k]} carries a projective summand")
    X = M.summands[k]
    others = [Y for j, Y in enumerate(M.summands) if j != k]
    idx_map = [j for j in range(len(M.summands)) if j != k]
    ap = minimal_left_approx(X, others)
    if not ap.map.is_injective():
        raise MutationError("exchange approximation is not injective")
    new, q = ap.map.image().quotient()
    if not is_local(new):
        raise MutationError("exchanged summand is decomposable")
    if isomorphic_indecomposables(new, X):
        raise MutationError("exchanged summand is isomorphic to the removed one")
    if any(isomorphic_indecomposables(X, others[i]) for i in set(ap.indices)):
        raise MutationError("middle term contains the removed summand")
    N = M.replaced(k, new)
    N.meta = {}
    if certify == "full":
        ok, diag = is_cluster_tilting(N, A)
        if not ok:
            raise MutationError(f"mutation result is not cluster tilting: {diag}")
    elif certify == "incremental":
        parts = [new] + others
        if not all(hl.ext1_dim(A, new, Y) == 0 and hl.ext1_dim(A, Y, new) == 0 for Y in parts):
            raise MutationError("exchanged summand is not rigid against the rest")
        if any(isomorphic_indecomposables(new, Y) for Y in others):
            raise MutationError("exchanged summand duplicates a remaining summand")
    if cross_check:
        rap = minimal_right_approx(new, others)
        K = rap.map.kernel().rep()
        if not (rap.map.is_surjective() and isomorphic_indecomposables(K, X)):
            raise MutationError("right approximation does not recover the removed summand")
    pair = ExchangePair(k, X, new, ap.target, [idx_map[i] for i in ap.indices],
                        ap.map, q)
    return N, pair


# the cluster tilting graph ------------------------------------------------------

def summand_fingerprint(X: Rep) -> tuple:
    fp = X._cache.get("fingerprint")
    if fp is None:
        fp = (tuple(X.dims), tuple(tuple(l) for l in loewy_layers(X)),
              hom_space(X, X).dim)
        X._cache["fingerprint"] = fp
    return fp


def object_fingerprint(M: CTObject, A: WordAlgebra) -> tuple:
    projs = [A.projective(v).rep for v in range(A.nverts)]
    parts = []
    for X in M.summands:
        key = ("fp_hom_proj", id(A))
        h = X._cache.get(key)
        if h is None:
            h = tuple(hom_space(X, P).dim if P.dim else 0 for P in projs)
            X._cache[key] = h
        parts.append(summand_fingerprint(X) + (h,))
    return tuple(sorted(parts))


def fingerprint_hash(fp: tuple) -> str:
    return hashlib.sha1(repr(fp).encode()).hexdigest()[:10]


def same_object(M: CTObject, N: CTObject) -> bool:
    return match_indecomposables(M.summands, N.summands) is not None


@dataclass
class CTGraph:
    nodes: list[tuple]                               # fingerprints
    witnesses: list[CTObject]
    edges: list[tuple[int, int, int]]                # (node, 1-based position, node)
    expanded: list[bool]
    partial: bool
    capped: bool = False
    marks: dict[str, int] = field(default_factory=dict)
    path: list[int] = field(default_factory=list)    # node ids

    def neighbours(self, a: int) -> set[int]:
        return {b for x, _, b in self.edges if x == a}

    def undirected_edges(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, _, b in self.edges}

    def degrees(self) -> dict[int, int]:
        return {a: len(self.neighbours(a)) for a in range(len(self.nodes)) if self.expanded[a]}

    def symmetric(self) -> bool:
        """Involutivity: if ``a -> b`` and ``b`` was expanded then ``b -> a``."""
        return all(a in self.neighbours(b) for a, _, b in self.edges if self.expanded[b])

    def component(self, a: int) -> set[int]:
        seen, todo = {a}, [a]
        adj: dict[int, set] = {}
        for x, y in self.undirected_edges():
            adj.setdefault(x, set()).add(y)
            adj.setdefault(y, set()).add(x)
        while todo:
            x = todo.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    def find(self, M: CTObject, A: WordAlgebra) -> int | None:
        fp = object_fingerprint(M, A)
        for n, (g, W) in enumerate(zip(self.nodes, self.witnesses)):
            if g == fp and same_object(M, W):
                return n
        return None

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n, "hash": fingerprint_hash(fp),
                       "dims": [list(X.dims) for X in W.summands],
                       "expanded": e}
                      for n, (fp, W, e) in enumerate(zip(self.nodes, self.witnesses,
                                                         self.expanded))],
            "edges": [{"source": a, "position": k, "target": b} for a, k, b in self.edges],
            "partial": self.partial,
            "marks": dict(self.marks),
            "path": list(self.path),
        }

    def to_dot(self, dims: bool = False) -> str:
        lines = ["graph ct {", "  node [shape=box, fontname=monospace];"]
        marked = {v: k for k, v in self.marks.items()}
        for n, (fp, W) in enumerate(zip(self.nodes, self.witnesses)):
            label = fingerprint_hash(fp)
            if dims:
                label += "\\n" + " ".join("".join(map(str, X.dims)) for X in W.summands)
            if n in marked:
                label = marked[n] + "\\n" + label
            style = ", style=bold, color=red" if n in marked else ""
            lines.append(f'  n{n} [label="{label}"{style}];')
        on_path = {(min(a, b), max(a, b)) for a, b in zip(self.path, self.path[1:])}
        for a, b in sorted(self.undirected_edges()):
            style = " [color=red, penwidth=2]" if (a, b) in on_path else ""
            lines.append(f"  n{a} -- n{b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ct_graph(start: CTObject, A: WordAlgebra, max_nodes: int = 10000,
             max_edges: int = 50000, max_depth: int | None = None,
             targets: list[CTObject] | None = None) -> CTGraph:
    """Breadth-first closure of ``start`` under mutation.

    Fingerprints only pre-filter; a new object is identified with an
    existing node only after an exact summand-wise isomorphism test.  The
    search stops at the caps, at ``max_depth``, or once every target has
    been seen and the current depth is finished; a graph with unexpanded
    nodes is flagged partial.
    """
    nodes, wit, edges, expanded, depth = [], [], [], [], []
    by_fp: dict[tuple, list[int]] = {}

    def lookup(M: CTObject) -> tuple[int, bool]:
        fp = object_fingerprint(M, A)
        for n in by_fp.get(fp, []):
            if same_object(M, wit[n]):
                return n, False
        n = len(nodes)
        nodes.append(fp)
        wit.append(M)
        expanded.append(False)
        by_fp.setdefault(fp, []).append(n)
        return n, True

    root, _ = lookup(start)
    depth.append(0)
    queue = deque([root])
    want = list(targets or [])
    found = {}
    capped = False
    while queue:
        a = queue.popleft()
        if max_depth is not None and depth[a] >= max_depth:
            continue
        if want and len(found) == len(want) and depth[a] > max(depth[n] for n in found.values()):
            break
        M = wit[a]
        for k in range(len(M.summands)):
            if M.projective[k]:
                continue
            N, _ = mutate(M, k, A, certify="incremental")
            b, new = lookup(N)
            if new:
                depth.append(depth[a] + 1)
                queue.append(b)
            edges.append((a, M.labels[k], b))
        expanded[a] = True
        for t, T in enumerate(want):
            if t not in found:
                for n in range(len(nodes)):
                    if nodes[n] == object_fingerprint(T, A) and same_object(T, wit[n]):
                        found[t] = n
                        break
        if len(nodes) > max_nodes or len(edges) > max_edges:
            capped = True
            break
    partial = capped or not all(expanded)
    return CTGraph(nodes, wit, edges, expanded, partial, capped)


# the mutation path to the syzygy object -----------------------------------------------

def omega_schedule(word) -> list[int]:
    """Mutation positions (1-based) from ``M_w`` to the syzygy object.

    First the earlier occurrences ``l_1, ..., l_{k-1}`` of the first letter,
    in order; then the schedule of the word without its first letter, with
    its positions moved to ``w``: a position of another letter keeps its
    place, an occurrence ``l_{u+1}`` of the first letter moves to ``l_u``.
    """
    word = list(word)
    if len(word) <= 1:
        return []
    i = word[0]
    pos = letter_positions(word, i)
    out = pos[:-1]
    for q in omega_schedule(word[1:]):
        out.append(stage_position(word, q + 1))
    return out


def stage_position(word, p: int) -> int:
    """Where the suffix summand at ``w``-position ``p >= 2`` sits after the first stage."""
    i = word[0]
    if word[p - 1] != i:
        return p
    pos = letter_positions(word, i)
    return pos[pos.index(p) - 1]


def incoming_arrows(parts: list[Rep], vertex: int) -> dict:
    """Arrows ending at ``vertex`` in the quiver of ``End(parts)``, counted twice.

    Once from the Gabriel quiver (irreducible maps ``T_j -> T_vertex``) and
    once as ``dim Ext^1`` between simple modules of the endomorphism algebra.
    """
    from .algebra import EndAlgebra
    G = EndAlgebra(parts)
    sources = sorted(j for j, k, _ in G.arrows() if k == vertex)
    ext = {j: hl.ext1_dim(G, G.simple(j), G.simple(vertex)) for j in range(G.n)}
    return {"sources": sources,
            "ext_counts": {j: e for j, e in ext.items() if e},
            "agree": sorted(j for j, e in ext.items() for _ in range(e)) == sources}


@dataclass
class OmegaPath:
    schedule: list[int]
    objects: list[CTObject]
    exchanges: list[ExchangePair]
    stage_one_length: int
    checkpoint: dict
    endpoint_matches: bool
    two_arrow_checks: list[dict]

    @property
    def verified(self) -> bool:
        return (self.endpoint_matches and self.checkpoint.get("verified", True)
                and all(c["verified"] for c in self.two_arrow_checks))

    def script(self) -> str:
        return json.dumps(self.schedule)


def verify_omega_path(A: WordAlgebra, M: CTObject | None = None,
                      certify: str = "full") -> OmegaPath:
    from .functorial import tensor_ideal_object
    from .modops import standard_ct
    M = M or standard_ct(A)
    w = list(A.word.letters)
    sched = omega_schedule(w)
    i = w[0]
    pos = letter_positions(w, i)
    k1 = len(pos) - 1
    objs, exch, checks = [M], [], []
    cur = M
    checkpoint = {}
    if k1 == 0 and len(w) > 1:
        checkpoint = _stage_one_checkpoint(A, cur, tensor_ideal_object)
    for step, p in enumerate(sched):
        if step < k1 and step >= 1:
            # before mutating at l_{u}: arrows into l_u come from l_{u-1} and l_{u+1}
            u = step
            inc = incoming_arrows(cur.summands, pos[u] - 1)
            want = sorted([pos[u - 1] - 1, pos[u + 1] - 1])
            checks.append({"vertex": pos[u], "sources": [s + 1 for s in inc["sources"]],
                           "expected": [s + 1 for s in want], "ext_agrees": inc["agree"],
                           "verified": inc["sources"] == want and inc["agree"]})
        cur, pair = mutate(cur, cur.position(p), A, certify=certify)
        objs.append(cur)
        exch.append(pair)
        if step == k1 - 1:
            checkpoint = _stage_one_checkpoint(A, cur, tensor_ideal_object)
    target = omega_tilde(M, A)
    ok = match_indecomposables(cur.summands, target.summands) is not None
    return OmegaPath(sched, objs, exch, k1, checkpoint, ok, checks)


def _stage_one_checkpoint(A: WordAlgebra, cur: CTObject, tensor_ideal_object) -> dict:
    """Position-wise comparison with ``I_i (x) M_v`` plus the projective at ``l_k``."""
    w = list(A.word.letters)
    i = w[0]
    tensored = tensor_ideal_object(A, 1)
    expected = {}
    for q, X in enumerate(tensored, 2):
        expected[stage_position(w, q)] = X
    last = letter_positions(w, i)[-1]
    expected[last] = A.projective(i - 1).rep
    per = []
    for p in range(1, len(w) + 1):
        X = cur.summands[cur.position(p)]
        per.append(isomorphic_indecomposables(X, expected[p]))
    return {"positions": per, "verified": all(per)}


__all__ = [
    "is_rigid", "is_cluster_tilting", "match_indecomposables", "minimal_left_approx",
    "minimal_right_approx", "is_left_approximation", "Approximation", "ExchangePair",
    "mutate", "MutationError", "CTGraph", "ct_graph", "object_fingerprint", "same_object",
    "omega_schedule", "verify_omega_path", "OmegaPath", "incoming_arrows",
]
