"""Finite-dimensional quiver representations with exact coefficients.

This core is agnostic of relations: the same :class:`Rep` type carries
modules over the preprojective algebra (arrows of the double quiver) and
modules over an endomorphism algebra (arrows of its Gabriel quiver).
Relations are checked by the algebra-specific validators.

A representation assigns to vertex ``v`` the space ``k^{dims[v]}`` and to an
arrow ``a: s -> t`` a ``dims[t] x dims[s]`` matrix.  Morphisms are tuples of
per-vertex matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (Field, Subspace, block_diag, charpoly_factors, field_of,
                     from_columns, hstack, is_zero, nullspace, poly_eval, rank,
                     submatrix, vstack)


class DecompositionError(RuntimeError):
    """An indecomposable piece whose endomorphism ring is not split local."""

    def __init__(self, message: str, summand: "Rep"):
        super().__init__(message)
        self.summand = summand


@dataclass(frozen=True)
class ArrowGraph:
    """Vertices ``0..nverts-1`` and arrows ``(source, target)``."""

    nverts: int
    arrows: tuple[tuple[int, int], ...]
    names: tuple[str, ...]
    vertex_labels: tuple[str, ...]

    def arrows_into(self, v: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == v]

    def arrows_out_of(self, v: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == v]


class Rep:
    __slots__ = ("graph", "field", "dims", "mats", "_cache")

    def __init__(self, graph: ArrowGraph, field: Field, dims: Sequence[int],
                 mats: Sequence, check: bool = True):
        self.graph = graph
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(mats)
        self._cache: dict = {}
        if check:
            if len(self.dims) != graph.nverts or len(self.mats) != len(graph.arrows):
                raise ValueError("representation does not match its quiver")
            for m, (s, t) in zip(self.mats, graph.arrows):
                if (m.nrows(), m.ncols()) != (self.dims[t], self.dims[s]):
                    raise ValueError("arrow matrix has the wrong shape")

    @classmethod
    def zero(cls, graph: ArrowGraph, field: Field) -> "Rep":
        return cls(graph, field, [0] * graph.nverts,
                   [field.zeros(0, 0) for _ in graph.arrows])

    @classmethod
    def simple(cls, graph: ArrowGraph, field: Field, v: int) -> "Rep":
        dims = [0] * graph.nverts
        dims[v] = 1
        return cls(graph, field, dims,
                   [field.zeros(dims[t], dims[s]) for s, t in graph.arrows])

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def identity(self) -> "Morphism":
        return Morphism(self, self, [self.field.eye(d) for d in self.dims])

    def zero_map(self, other: "Rep") -> "Morphism":
        return Morphism(self, other, [self.field.zeros(other.dims[v], self.dims[v])
                                      for v in range(self.graph.nverts)])

    def path_matrix(self, path: Sequence[int]):
        """Matrix of a path given as arrow indices in the order traversed."""
        if not path:
            raise ValueError("empty path has no fixed vertex")
        M = self.mats[path[0]]
        for a in path[1:]:
            M = self.mats[a] * M
        return M

    def base_change(self, P: Sequence) -> "Rep":
        """Isomorphic copy ``P X P^{-1}`` for invertible per-vertex ``P``."""
        inv = [p.inv() if p.nrows() else p for p in P]
        mats = [P[t] * m * inv[s] for m, (s, t) in zip(self.mats, self.graph.arrows)]
        return Rep(self.graph, self.field, self.dims, mats)

    def __repr__(self):
        return f"Rep(dims={self.dims})"


class Morphism:
    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Rep, target: Rep, comps: Sequence):
        self.source = source
        self.target = target
        self.comps = tuple(comps)

    def __call__(self, v: int, x):
        return self.comps[v] * x

    def compose(self, first: "Morphism") -> "Morphism":
        """``self o first`` (first ``first``, then ``self``)."""
        return Morphism(first.source, self.target,
                        [a * b for a, b in zip(self.comps, first.comps)])

    def __mul__(self, other: "Morphism") -> "Morphism":
        return self.compose(other)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a - b for a, b in zip(self.comps, other.comps)])

    def scale(self, c) -> "Morphism":
        c = self.source.field.scalar(c)
        return Morphism(self.source, self.target, [a * c for a in self.comps])

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.comps)

    def is_morphism(self) -> bool:
        X, Y = self.source, self.target
        for a, (s, t) in enumerate(X.graph.arrows):
            if Y.mats[a] * self.comps[s] != self.comps[t] * X.mats[a]:
                return False
        return True

    def rank(self) -> int:
        return sum(rank(c) for c in self.comps)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(c.nrows() == 0 or c.det() != 0 for c in self.comps)

    def flatten(self) -> list:
        out = []
        for c in self.comps:
            out.extend(c.entries())
        return out

    def kernel(self) -> "Subrep":
        F = self.source.field
        spaces = []
        for v, c in enumerate(self.comps):
            d = self.source.dims[v]
            if c.nrows() == 0:
                spaces.append(Subspace.full(F, d))
            else:
                K, _ = nullspace(c)
                spaces.append(Subspace.span(F, K, d))
        return Subrep(self.source, spaces)

    def image(self) -> "Subrep":
        F = self.source.field
        return Subrep(self.target, [Subspace.span(F, c, self.target.dims[v])
                                    for v, c in enumerate(self.comps)])

    def cokernel(self) -> tuple[Rep, "Morphism"]:
        return self.image().quotient()


# subrepresentations -------------------------------------------------------

class Subrep:
    """A subrepresentation of ``ambient`` given by per-vertex subspaces."""

    __slots__ = ("ambient", "spaces", "_rep")

    def __init__(self, ambient: Rep, spaces: Sequence[Subspace]):
        self.ambient = ambient
        self.spaces = tuple(spaces)
        self._rep = None

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_closed(self) -> bool:
        X = self.ambient
        for a, (s, t) in enumerate(X.graph.arrows):
            if not self.spaces[t].contains(X.mats[a] * self.spaces[s].basis):
                return False
        return True

    def rep(self) -> Rep:
        """The induced representation (basis = stored RCEF basis)."""
        if self._rep is None:
            X = self.ambient
            mats = [self.spaces[t].coords(X.mats[a] * self.spaces[s].basis)
                    for a, (s, t) in enumerate(X.graph.arrows)]
            self._rep = Rep(X.graph, X.field, self.dims, mats)
        return self._rep

    def inclusion(self) -> Morphism:
        return Morphism(self.rep(), self.ambient, [s.basis for s in self.spaces])

    def quotient(self) -> tuple[Rep, Morphism]:
        X = self.ambient
        F = X.field
        comps = [s.quotient_matrix() for s in self.spaces]
        keep = [s.complement_indices() for s in self.spaces]
        mats = []
        for a, (s, t) in enumerate(X.graph.arrows):
            mats.append(comps[t] * submatrix(F, X.mats[a], None, keep[s]))
        Q = Rep(X.graph, F, [len(k) for k in keep], mats)
        return Q, Morphism(X, Q, comps)

    def contains(self, other: "Subrep") -> bool:
        return all(a.contains_space(b) for a, b in zip(self.spaces, other.spaces))

    def __add__(self, other: "Subrep") -> "Subrep":
        return Subrep(self.ambient, [a + b for a, b in zip(self.spaces, other.spaces)])

    def intersect(self, other: "Subrep") -> "Subrep":
        return Subrep(self.ambient, [a.intersect(b) for a, b in zip(self.spaces, other.spaces)])

    def __eq__(self, other):
        return isinstance(other, Subrep) and self.dims == other.dims and self.contains(other)

    def __hash__(self):
        return hash(self.dims)

    def relative(self, inner: "Subrep") -> "Subrep":
        """``inner`` (contained in self) as a subrepresentation of ``self.rep()``."""
        R = self.rep()
        F = R.field
        return Subrep(R, [Subspace.span(F, o.coords(i.basis), o.dim)
                          for o, i in zip(self.spaces, inner.spaces)])

    def push(self, f: Morphism) -> "Subrep":
        """Image of this subrepresentation under ``f``."""
        F = self.ambient.field
        return Subrep(f.target, [Subspace.span(F, c * s.basis, f.target.dims[v])
                                 for v, (c, s) in enumerate(zip(f.comps, self.spaces))])

    def pull(self, f: Morphism) -> "Subrep":
        """Preimage of this subrepresentation (of ``f.target``) under ``f``."""
        F = self.ambient.field
        spaces = []
        for v, (c, s) in enumerate(zip(f.comps, self.spaces)):
            d = f.source.dims[v]
            comp = s.quotient_matrix() * c
            if comp.nrows() == 0:
                spaces.append(Subspace.full(F, d))
            else:
                K, _ = nullspace(comp)
                spaces.append(Subspace.span(F, K, d))
        return Subrep(f.source, spaces)


def whole(X: Rep) -> Subrep:
    return Subrep(X, [Subspace.full(X.field, d) for d in X.dims])


def nothing(X: Rep) -> Subrep:
    return Subrep(X, [Subspace.zero(X.field, d) for d in X.dims])


def generated_subrep(X: Rep, gens: dict[int, object] | Sequence) -> Subrep:
    """Smallest subrepresentation containing the given vectors.

    ``gens`` maps a vertex to a matrix whose columns are generators (or is a
    list of such matrices indexed by vertex, ``None`` for no generators).
    """
    F = X.field
    if not isinstance(gens, dict):
        gens = {v: g for v, g in enumerate(gens) if g is not None}
    spaces = [Subspace.zero(F, d) for d in X.dims]
    todo = []
    for v, g in gens.items():
        if g is not None and g.ncols():
            spaces[v] = Subspace.span(F, g, X.dims[v])
            todo.append(v)
    return close_subspaces(X, spaces, todo)


def close_subspaces(X: Rep, spaces: list[Subspace], todo: Iterable[int] | None = None) -> Subrep:
    spaces = list(spaces)
    todo = list(range(X.graph.nverts) if todo is None else todo)
    out_arrows = [X.graph.arrows_out_of(v) for v in range(X.graph.nverts)]
    while todo:
        s = todo.pop()
        if spaces[s].dim == 0:
            continue
        for a in out_arrows[s]:
            t = X.graph.arrows[a][1]
            img = X.mats[a] * spaces[s].basis
            if not spaces[t].contains(img):
                spaces[t] = spaces[t].add_vectors(img)
                if t not in todo:
                    todo.append(t)
    return Subrep(X, spaces)


# structure ------------------------------------------------------------------

def radical(X: Rep, inside: Subrep | None = None) -> Subrep:
    """``rad U = sum of arrow images`` of ``U`` (default ``U = X``)."""
    F = X.field
    U = whole(X) if inside is None else inside
    spaces = []
    for v in range(X.graph.nverts):
        imgs = [X.mats[a] * U.spaces[X.graph.arrows[a][0]].basis for a in X.graph.arrows_into(v)]
        spaces.append(Subspace.span(F, hstack(F, imgs, X.dims[v]), X.dims[v]))
    return Subrep(X, spaces)


def socle(X: Rep) -> Subrep:
    F = X.field
    spaces = []
    for v in range(X.graph.nverts):
        outs = [X.mats[a] for a in X.graph.arrows_out_of(v)]
        d = X.dims[v]
        if not outs or d == 0:
            spaces.append(Subspace.full(F, d))
            continue
        K, _ = nullspace(vstack(F, outs, d))
        spaces.append(Subspace.span(F, K, d))
    return Subrep(X, spaces)


def socle_component(X: Rep, v: int) -> Subrep:
    """The sum of the simple submodules isomorphic to the simple at ``v``."""
    soc = socle(X)
    return Subrep(X, [s if u == v else Subspace.zero(X.field, X.dims[u])
                      for u, s in enumerate(soc.spaces)])


def top_dims(X: Rep) -> tuple[int, ...]:
    return tuple(d - r for d, r in zip(X.dims, radical(X).dims))


def loewy_layers(X: Rep) -> list[tuple[int, ...]]:
    """Dimension vectors of ``rad^k X / rad^{k+1} X``, top first."""
    layers = []
    U = whole(X)
    while U.dim:
        R = radical(X, U)
        layers.append(tuple(a - b for a, b in zip(U.dims, R.dims)))
        U = R
    return layers


# constructions --------------------------------------------------------------

def direct_sum(reps: Sequence[Rep]) -> tuple[Rep, list[Morphism], list[Morphism]]:
    reps = list(reps)
    X0 = reps[0]
    F, G = X0.field, X0.graph
    dims = [sum(r.dims[v] for r in reps) for v in range(G.nverts)]
    mats = [block_diag(F, [r.mats[a] for r in reps]) for a in range(len(G.arrows))]
    S = Rep(G, F, dims, mats)
    inj, proj = [], []
    offs = [0] * G.nverts
    for r in reps:
        ic, pc = [], []
        for v in range(G.nverts):
            E = F.zeros(dims[v], r.dims[v])
            for k in range(r.dims[v]):
                E[offs[v] + k, k] = 1
            ic.append(E)
            pc.append(E.transpose())
            offs[v] += r.dims[v]
        inj.append(Morphism(r, S, ic))
        proj.append(Morphism(S, r, pc))
    return S, inj, proj


def sum_map_into(maps: Sequence[Morphism], target: Rep | None = None) -> Morphism:
    """The map ``X -> Y_1 + ... + Y_m`` with the given components."""
    S, inj, _ = direct_sum([f.target for f in maps])
    src = maps[0].source
    comps = []
    for v in range(src.graph.nverts):
        comps.append(vstack(src.field, [f.comps[v] for f in maps], src.dims[v]))
    return Morphism(src, S, comps)


def sum_map_from(maps: Sequence[Morphism]) -> Morphism:
    """The map ``X_1 + ... + X_m -> Y`` with the given components."""
    S, _, _ = direct_sum([f.source for f in maps])
    tgt = maps[0].target
    comps = []
    for v in range(tgt.graph.nverts):
        comps.append(hstack(tgt.field, [f.comps[v] for f in maps], tgt.dims[v]))
    return Morphism(S, tgt, comps)


def pushout(i: Morphism, phi: Morphism) -> tuple[Rep, Morphism, Morphism]:
    """Pushout of ``P <-i- K -phi-> Y``; returns ``E, P -> E, Y -> E``."""
    P, Y = i.target, phi.target
    S, inj, _ = direct_sum([P, Y])
    F = P.field
    comps = [vstack(F, [a, -b], i.source.dims[v]) for v, (a, b) in enumerate(zip(i.comps, phi.comps))]
    m = Morphism(i.source, S, comps)
    E, pi = m.image().quotient()
    return E, pi.compose(inj[0]), pi.compose(inj[1])


# hom spaces -----------------------------------------------------------------

class HomSpace:
    """Basis of ``Hom(X, Y)`` with coordinate extraction.

    The basis comes from a reduced row echelon solve, so the coordinates of
    a morphism are its flattened entries at the free unknowns.
    """

    __slots__ = ("source", "target", "basis", "free", "offsets")

    def __init__(self, source: Rep, target: Rep, basis: list[Morphism], free: list[int],
                 offsets: list[int]):
        self.source = source
        self.target = target
        self.basis = basis
        self.free = free
        self.offsets = offsets

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Morphism) -> list:
        flat = f.flatten()
        return [flat[j] for j in self.free]

    def coords_matrix(self, maps: Sequence[Morphism]):
        """Columns are coordinates of the given morphisms."""
        F = self.source.field
        return from_columns(F, [self.coords(f) for f in maps], self.dim)

    def element(self, coeffs: Sequence) -> Morphism:
        X, Y = self.source, self.target
        F = X.field
        comps = [F.zeros(Y.dims[v], X.dims[v]) for v in range(X.graph.nverts)]
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                if isinstance(c, (int, Fraction)):
                    c = F.scalar(c)
                comps = [x + y * c for x, y in zip(comps, b.comps)]
        return Morphism(X, Y, comps)

    def random_element(self, rng: random.Random, lo: int = -3, hi: int = 3) -> Morphism:
        return self.element([rng.randint(lo, hi) for _ in self.basis])


def hom_equations(X: Rep, Y: Rep):
    """Linear system whose kernel is ``Hom(X, Y)`` and the variable offsets."""
    F = X.field
    G = X.graph
    nv = G.nverts
    offsets = []
    o = 0
    for v in range(nv):
        offsets.append(o)
        o += Y.dims[v] * X.dims[v]
    ncols = o
    rows = []
    for a, (s, t) in enumerate(G.arrows):
        ds, dt = X.dims[s], X.dims[t]
        es, et = Y.dims[s], Y.dims[t]
        if ds == 0 or et == 0:
            continue
        Ya = Y.mats[a].tolist()
        Xa = X.mats[a].tolist()
        for r in range(et):
            for c in range(ds):
                row = {}
                for k in range(es):
                    y = Ya[r][k]
                    if y != 0:
                        idx = offsets[s] + k * ds + c
                        row[idx] = row.get(idx, 0) + y
                for k in range(dt):
                    x = Xa[k][c]
                    if x != 0:
                        idx = offsets[t] + r * dt + k
                        row[idx] = row.get(idx, 0) - x
                if row:
                    rows.append(row)
    flat = [0] * (len(rows) * ncols)
    for i, row in enumerate(rows):
        base = i * ncols
        for j, x in row.items():
            flat[base + j] = x
    return F.matrix(len(rows), ncols, flat), offsets


def hom_space(X: Rep, Y: Rep) -> HomSpace:
    key = ("hom", id(Y))
    cached = X._cache.get(key)
    if cached is not None and cached.target is Y:
        return cached
    F = X.field
    A, offsets = hom_equations(X, Y)
    K, free = nullspace(A)
    basis = []
    nv = X.graph.nverts
    cols = K.ncols()
    Kl = K.tolist()
    for j in range(cols):
        comps = []
        for v in range(nv):
            dy, dx = Y.dims[v], X.dims[v]
            base = offsets[v]
            comps.append(F.matrix(dy, dx, [Kl[base + i][j] for i in range(dy * dx)]))
        basis.append(Morphism(X, Y, comps))
    H = HomSpace(X, Y, basis, free, offsets)
    X._cache[key] = H
    return H


def hom_dim(X: Rep, Y: Rep) -> int:
    if not any(a and b for a, b in zip(X.dims, Y.dims)):
        return 0
    return hom_space(X, Y).dim


def span_of_maps(H: HomSpace, maps: Iterable[Morphism]) -> Subspace:
    """Subspace of ``H`` (in coordinates) spanned by the given morphisms."""
    maps = list(maps)
    F = H.source.field
    if not maps or H.dim == 0:
        return Subspace.zero(F, H.dim)
    return Subspace.span(F, H.coords_matrix(maps), H.dim)


# endomorphism rings ---------------------------------------------------------

def _trace(f: Morphism):
    F = f.source.field
    tr = F.scalar(0)
    for c in f.comps:
        for i in range(c.nrows()):
            tr += c[i, i]
    return tr


def trace_gram(E: HomSpace):
    """Matrix of the trace form ``tr(b_i b_j)`` on an endomorphism basis."""
    F = E.source.field
    n = E.dim
    rows_v = [b.flatten() for b in E.basis]
    rows_w = [Morphism(b.target, b.source, [c.transpose() for c in b.comps]).flatten()
              for b in E.basis]
    V = F.matrix(n, len(rows_v[0]) if n else 0, [x for r in rows_v for x in r])
    W = F.matrix(n, len(rows_w[0]) if n else 0, [x for r in rows_w for x in r])
    return V * W.transpose()


def is_local(X: Rep) -> bool:
    """Whether ``End(X)`` is local with residue field the ground field.

    Certificate: the trace-zero hyperplane ``N`` of ``End(X)`` is closed
    under multiplication.  Then every element of ``N`` has vanishing power
    traces, hence is nilpotent (characteristic zero or larger than dim X),
    so ``N`` is a nilpotent ideal of codimension one.  Conversely a local
    split endomorphism ring has radical equal to ``N``.
    """
    cached = X._cache.get("local")
    if cached is not None:
        return cached
    res = _is_local(X)
    X._cache["local"] = res
    return res


def _is_local(X: Rep) -> bool:
    if X.dim == 0:
        return False
    F = X.field
    if F.p and X.dim % F.p == 0 or F.p and F.p <= X.dim:
        raise DecompositionError("characteristic too small for the trace certificate", X)
    E = hom_space(X, X)
    if E.dim == 1:
        return True
    traces = [_trace(b) for b in E.basis]
    C, _ = nullspace(F.matrix(1, E.dim, traces))
    G = trace_gram(E)
    return is_zero(C.transpose() * G * C)


def trace_radical(X: Rep) -> Subspace:
    """Radical of ``End(X)`` in basis coordinates (characteristic zero)."""
    E = hom_space(X, X)
    G = trace_gram(E)
    K, _ = nullspace(G.transpose())
    return Subspace.span(X.field, K, E.dim)


def isomorphic_indecomposables(X: Rep, Y: Rep) -> bool:
    """Exact iso test, valid when one of ``X``, ``Y`` is indecomposable."""
    if X.dims != Y.dims:
        return False
    if X.dim == 0:
        return True
    H = hom_space(X, Y)
    return any(f.is_iso() for f in H.basis)


def _primary_split(X: Rep, f: Morphism) -> list[Subrep] | None:
    F = X.field
    facs = []
    for c in f.comps:
        for p in charpoly_factors(c):
            if all(p != q for q in facs):
                facs.append(p)
    if len(facs) < 2:
        return None
    parts = []
    for p in facs:
        spaces = []
        for v, c in enumerate(f.comps):
            d = X.dims[v]
            if d == 0:
                spaces.append(Subspace.zero(F, 0))
                continue
            A = poly_eval(F, p, c)
            Ak = A
            for _ in range(d - 1):
                Ak = Ak * A
            K, _ = nullspace(Ak)
            spaces.append(Subspace.span(F, K, d))
        part = Subrep(X, spaces)
        if part.dim:
            parts.append(part)
    return parts if len(parts) > 1 else None


def split_indecomposables(X: Rep, rng: random.Random | None = None,
                          attempts: int = 60) -> list[Rep]:
    """Indecomposable pieces of ``X`` (each certified local)."""
    if X.dim == 0:
        return []
    if is_local(X):
        return [X]
    rng = rng or random.Random(0)
    E = hom_space(X, X)
    candidates = list(E.basis)
    for i in range(min(len(E.basis), 6)):
        for j in range(min(len(E.basis), 6)):
            candidates.append(E.basis[i] * E.basis[j])
    for _ in range(attempts):
        candidates.append(E.random_element(rng))
    for f in candidates:
        parts = _primary_split(X, f)
        if parts:
            out = []
            for p in parts:
                out.extend(split_indecomposables(p.rep(), rng, attempts))
            return out
    raise DecompositionError(
        f"no idempotent found for a summand of dimension vector {X.dims} whose "
        f"endomorphism ring is not split local", X)


def decompose(X: Rep, rng: random.Random | None = None) -> list[tuple[Rep, int]]:
    """Isomorphism classes of indecomposable summands with multiplicities."""
    classes: list[list] = []
    for piece in split_indecomposables(X, rng):
        for cl in classes:
            if isomorphic_indecomposables(cl[0], piece):
                cl[1] += 1
                break
        else:
            classes.append([piece, 1])
    return [(r, m) for r, m in classes]


def is_isomorphic(X: Rep, Y: Rep) -> bool:
    if X.dims != Y.dims:
        return False
    if X.dim == 0:
        return True
    if is_local(X) or is_local(Y):
        return isomorphic_indecomposables(X, Y)
    return same_summands(decompose(X), decompose(Y))


def same_summands(a: list[tuple[Rep, int]], b: list[tuple[Rep, int]]) -> bool:
    if sorted(m for _, m in a) != sorted(m for _, m in b):
        return False
    used = [False] * len(b)
    for r, m in a:
        for k, (s, n) in enumerate(b):
            if not used[k] and m == n and isomorphic_indecomposables(r, s):
                used[k] = True
                break
        else:
            return False
    return True


def random_base_change(X: Rep, rng: random.Random) -> Rep:
    F = X.field
    P = []
    for d in X.dims:
        while True:
            M = F.matrix(d, d, [rng.randint(-2, 2) for _ in range(d * d)])
            if d == 0 or M.det() != 0:
                break
        P.append(M)
    return X.base_change(P)
