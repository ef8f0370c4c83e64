"""Projective covers, syzygies, Ext^1 and projective dimension.

Everything here works over any algebra object exposing ``nverts`` and
``projective(v)`` returning a :class:`~lambdaw.preproj.TreeProjective`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import Subspace, complement_basis, hstack, submatrix, vstack
from .reps import (HomSpace, Morphism, Rep, direct_sum, hom_space, radical, span_of_maps,
                   sum_map_from)


@dataclass
class Cover:
    """Projective cover ``pi: P -> X`` with its summand list."""

    P: Rep
    pi: Morphism
    vertices: list[int]           # generator vertex of each summand
    injections: list[Morphism]
    projections: list[Morphism]
    kernel: Rep
    kernel_incl: Morphism


def top_generators(X: Rep) -> list[tuple[int, object]]:
    """Vectors spanning a complement of ``rad X``, as ``(vertex, column)``."""
    R = radical(X)
    F = X.field
    gens = []
    for v, sp in enumerate(R.spaces):
        I = F.eye(X.dims[v])
        for k in sp.complement_indices():
            gens.append((v, F.column([I[r, k] for r in range(X.dims[v])])))
    return gens


def projective_cover(A, X: Rep) -> Cover:
    key = ("cover", id(A))
    hit = X._cache.get(key)
    if hit is not None and hit[0] is A:
        return hit[1]
    gens = top_generators(X)
    F = X.field
    if not gens:
        Z = Rep.zero(X.graph, F)
        c = Cover(Z, Z.zero_map(X), [], [], [], Z, Z.identity())
        X._cache[key] = (A, c)
        return c
    maps = [A.projective(v).yoneda(X, x) for v, x in gens]
    pi = sum_map_from(maps)
    S, inj, proj = direct_sum([m.source for m in maps])
    pi = Morphism(S, X, pi.comps)
    K = pi.kernel()
    c = Cover(S, pi, [v for v, _ in gens], inj, proj, K.rep(), K.inclusion())
    X._cache[key] = (A, c)
    return c


def syzygy(A, X: Rep) -> tuple[Rep, Morphism]:
    c = projective_cover(A, X)
    return c.kernel, c.kernel_incl


def is_projective(A, X: Rep) -> bool:
    return projective_cover(A, X).kernel.dim == 0


def maps_from_cover(A, c: Cover, Y: Rep) -> list[Morphism]:
    """A basis of ``Hom(P, Y)`` for the cover source ``P`` (via Yoneda)."""
    F = Y.field
    out = []
    for k, v in enumerate(c.vertices):
        tp = A.projective(v)
        for r in range(Y.dims[v]):
            y = F.zeros(Y.dims[v], 1)
            y[r, 0] = 1
            out.append(tp.yoneda(Y, y).compose(c.projections[k]))
    return out


def ext1_data(A, X: Rep, Y: Rep) -> tuple[HomSpace, Subspace, Cover]:
    """``Hom(Omega X, Y)`` and the image of restriction from the cover."""
    c = projective_cover(A, X)
    H = hom_space(c.kernel, Y)
    if H.dim == 0:
        return H, Subspace.zero(X.field, 0), c
    restricted = [f.compose(c.kernel_incl) for f in maps_from_cover(A, c, Y)]
    return H, span_of_maps(H, restricted), c


def ext1_dim(A, X: Rep, Y: Rep) -> int:
    c = projective_cover(A, X)
    if c.kernel.dim == 0 or Y.dim == 0:
        return 0
    H, img, _ = ext1_data(A, X, Y)
    return H.dim - img.dim


def ext1_classes(A, X: Rep, Y: Rep) -> list[Morphism]:
    """Maps ``Omega X -> Y`` whose classes form a basis of ``Ext^1(X, Y)``."""
    H, img, _ = ext1_data(A, X, Y)
    if H.dim == 0:
        return []
    F = X.field
    chosen = complement_basis(F, img, F.eye(H.dim))
    return [H.basis[j] for j in chosen]


def extension(A, X: Rep, Y: Rep, cls: Morphism) -> tuple[Rep, Morphism, Morphism]:
    """Middle term ``E`` of ``0 -> Y -> E -> X -> 0`` for a class ``Omega X -> Y``.

    ``E`` is the pushout of the cover kernel inclusion along ``cls``.  Returns
    ``E``, the inclusion ``Y -> E`` and the projection ``E -> X``.
    """
    c = projective_cover(A, X)
    F = X.field
    S, inj, _ = direct_sum([c.P, Y])
    comps = [vstack(F, [a, -b], c.kernel.dims[v])
             for v, (a, b) in enumerate(zip(c.kernel_incl.comps, cls.comps))]
    sub = Morphism(c.kernel, S, comps).image()
    E, q = sub.quotient()
    to_x = []
    for v, sp in enumerate(sub.spaces):
        keep = sp.complement_indices()
        full = hstack(F, [c.pi.comps[v], F.zeros(X.dims[v], Y.dims[v])], X.dims[v])
        to_x.append(submatrix(F, full, None, keep))
    return E, q.compose(inj[1]), Morphism(E, X, to_x)


def resolution_tops(A, X: Rep, length: int) -> list[tuple[int, ...]]:
    """Top dimension vectors of the first ``length + 1`` projective terms."""
    out = []
    cur = X
    for _ in range(length + 1):
        if cur.dim == 0:
            break
        c = projective_cover(A, cur)
        top = [0] * cur.graph.nverts
        for v in c.vertices:
            top[v] += 1
        out.append(tuple(top))
        cur = c.kernel
    return out


def projective_dimension(A, X: Rep, bound: int = 4) -> int | None:
    """``pd X`` if at most ``bound``, else ``None``; ``pd 0 = -1``."""
    if X.dim == 0:
        return -1
    cur = X
    for n in range(bound + 1):
        c = projective_cover(A, cur)
        if c.kernel.dim == 0:
            return n
        cur = c.kernel
    return None


def random_element_vector(F, d: int, rng: random.Random, lo: int = -3, hi: int = 3):
    while True:
        vals = [rng.randint(lo, hi) for _ in range(d)]
        if any(vals) or d == 0:
            return F.column(vals)
