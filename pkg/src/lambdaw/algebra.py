"""Basic finite-dimensional algebras given by idempotent blocks.

An :class:`FDAlgebra` has orthogonal primitive idempotents ``eps_0 .. eps_{n-1}``
and stores ``eps_k A eps_j`` as block ``(j, k)``: in an endomorphism algebra
this block is ``Hom(T_j, T_k)``.  Composition follows the usual convention,
``x y`` means first ``y`` then ``x``, so left multiplication by ``x`` in block
``(k, l)`` maps block ``(j, k)`` into block ``(j, l)``.

Left modules are :class:`~lambdaw.reps.Rep` objects over the Gabriel quiver:
vertex ``j`` carries ``eps_j Y`` and an arrow ``j -> k`` is an element of
block ``(j, k)`` in ``rad A`` but not in ``rad^2 A``.  Each block ``eps_j A`` is
spanned by paths from ``j``; the chosen path basis makes every indecomposable
projective a :class:`~lambdaw.preproj.TreeProjective`, so the generic
homological functions apply verbatim.
"""
from __future__ import annotations

import random
from typing import Sequence

from .linalg import Field, Subspace, block_diag, complement_basis, hstack, nullspace, submatrix
from .preproj import TreeProjective
from .reps import ArrowGraph, HomSpace, Morphism, Rep, hom_space


class NotLocalError(RuntimeError):
    pass


class FDAlgebra:
    """Algebra by blocks and left-multiplication matrices.

    ``lmul[(k, l)][c][j]`` is the matrix of left multiplication by the ``c``-th
    basis element of block ``(k, l)`` from block ``(j, k)`` to block ``(j, l)``.
    """

    def __init__(self, field: Field, n: int, bdim: dict, lmul: dict, units: list,
                 labels: Sequence[str] | None = None, arrows: list | None = None):
        self.field = field
        self.n = n
        self.nverts = n
        self.bdim = bdim
        self.lmul = lmul
        self.units = units
        self.labels = tuple(labels) if labels else tuple(str(j + 1) for j in range(n))
        self._rad: dict | None = None
        self._arrows = arrows
        self._graph: ArrowGraph | None = None
        self._paths: dict[int, tuple] = {}
        self._proj: dict[int, TreeProjective] = {}

    # basic data -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return sum(self.bdim.values())

    def cartan(self) -> list[list[int]]:
        """``cartan[j][k] = dim eps_k A eps_j``."""
        return [[self.bdim[(j, k)] for k in range(self.n)] for j in range(self.n)]

    def left_matrix(self, x, k: int, l: int, j: int):
        """Left multiplication by ``x`` (block ``(k, l)``) on block ``(j, k)``."""
        F = self.field
        out = F.zeros(self.bdim[(j, l)], self.bdim[(j, k)])
        for c, L in enumerate(self.lmul[(k, l)]):
            a = x[c, 0]
            if a != 0:
                out += L[j] * a
        return out

    def mul(self, x, kl: tuple[int, int], y, jk: tuple[int, int]):
        k, l = kl
        j, k2 = jk
        if k != k2:
            raise ValueError("blocks do not compose")
        return self.left_matrix(x, k, l, j) * y

    def check_structure(self, rng: random.Random | None = None, samples: int = 30) -> bool:
        """Unit laws on all blocks and associativity on random triples."""
        F = self.field
        n = self.n
        for j in range(n):
            for k in range(n):
                d = self.bdim[(j, k)]
                if d == 0:
                    continue
                if self.left_matrix(self.units[k], k, k, j) != F.eye(d):
                    return False
                for c in range(d):
                    e = F.zeros(d, 1)
                    e[c, 0] = 1
                    if self.left_matrix(e, j, k, j) * self.units[j] != e:
                        return False
        rng = rng or random.Random(0)
        for _ in range(samples):
            j, k, l, m = (rng.randrange(n) for _ in range(4))
            if not (self.bdim[(j, k)] and self.bdim[(k, l)] and self.bdim[(l, m)]):
                continue
            x = _rand_col(F, self.bdim[(l, m)], rng)
            y = _rand_col(F, self.bdim[(k, l)], rng)
            z = _rand_col(F, self.bdim[(j, k)], rng)
            left = self.mul(self.mul(x, (l, m), y, (k, l)), (k, m), z, (j, k))
            right = self.mul(x, (l, m), self.mul(y, (k, l), z, (j, k)), (j, l))
            if left != right:
                return False
        return True

    # radical and Gabriel quiver ---------------------------------------------
    def radical(self) -> dict[tuple[int, int], Subspace]:
        """``rad A`` blockwise; the diagonal blocks must be local."""
        if self._rad is not None:
            return self._rad
        F = self.field
        rad = {}
        for j in range(self.n):
            for k in range(self.n):
                d = self.bdim[(j, k)]
                if j != k:
                    rad[(j, k)] = Subspace.full(F, d)
                    continue
                traces = []
                for L in self.lmul[(j, j)]:
                    M = L[j]
                    traces.append(sum((M[i, i] for i in range(d)), F.scalar(0)))
                if F.p and d % F.p == 0:
                    raise NotLocalError("characteristic divides a local block dimension")
                K, _ = nullspace(F.matrix(1, d, traces))
                rad[(j, j)] = Subspace.span(F, K, d)
        # local certificate: the trace-zero hyperplane is closed under products
        for j in range(self.n):
            R = rad[(j, j)]
            for c in range(R.dim):
                x = submatrix(F, R.basis, None, [c])
                prod = self.left_matrix(x, j, j, j) * R.basis
                if not R.contains(prod):
                    raise NotLocalError(f"block {j + 1} is not local")
        self._rad = rad
        return rad

    def radical_square(self) -> dict[tuple[int, int], Subspace]:
        F = self.field
        rad = self.radical()
        out = {}
        for j in range(self.n):
            for k in range(self.n):
                cols = []
                for m in range(self.n):
                    A, B = rad[(m, k)], rad[(j, m)]
                    if A.dim == 0 or B.dim == 0:
                        continue
                    for c in range(A.dim):
                        x = submatrix(F, A.basis, None, [c])
                        cols.append(self.left_matrix(x, m, k, j) * B.basis)
                d = self.bdim[(j, k)]
                out[(j, k)] = Subspace.span(F, hstack(F, cols, d), d) if cols else Subspace.zero(F, d)
        return out

    def arrows(self) -> list[tuple[int, int, object]]:
        """Arrows ``(j, k, x)``: ``x`` in block ``(j, k)`` spanning ``rad / rad^2``."""
        if self._arrows is not None:
            return self._arrows
        F = self.field
        rad = self.radical()
        rad2 = self.radical_square()
        out = []
        for j in range(self.n):
            for k in range(self.n):
                R = rad[(j, k)]
                if R.dim == 0:
                    continue
                for c in complement_basis(F, rad2[(j, k)], R.basis):
                    out.append((j, k, submatrix(F, R.basis, None, [c])))
        self._arrows = out
        return out

    def graph(self) -> ArrowGraph:
        if self._graph is None:
            arrows, names, seen = [], [], {}
            for j, k, _ in self.arrows():
                m = seen.get((j, k), 0)
                seen[(j, k)] = m + 1
                arrows.append((j, k))
                name = f"{self.labels[j]}>{self.labels[k]}"
                names.append(name if m == 0 else f"{name}#{m + 1}")
            self._graph = ArrowGraph(self.n, tuple(arrows), tuple(names), self.labels)
        return self._graph

    # path bases and projectives ----------------------------------------------
    def path_basis(self, j: int) -> tuple[list, list, list, list, dict]:
        """Paths from ``j`` forming a basis of ``A eps_j``.

        Returns node targets, parents, arrow indices, coordinate vectors and
        for each target block the change-of-basis matrix from node to block
        coordinates.
        """
        if j in self._paths:
            return self._paths[j]
        F = self.field
        arrows = self.arrows()
        vert, parent, arrow, coords = [j], [-1], [-1], [self.units[j]]
        spans = {k: Subspace.zero(F, self.bdim[(j, k)]) for k in range(self.n)}
        spans[j] = spans[j].add_vectors(self.units[j])
        queue = [0]
        qi = 0
        while qi < len(queue):
            node = queue[qi]
            qi += 1
            k = vert[node]
            for m, (s, t, x) in enumerate(arrows):
                if s != k:
                    continue
                z = self.left_matrix(x, k, t, j) * coords[node]
                if spans[t].contains(z):
                    continue
                spans[t] = spans[t].add_vectors(z)
                vert.append(t)
                parent.append(node)
                arrow.append(m)
                coords.append(z)
                queue.append(len(vert) - 1)
        change = {}
        for k in range(self.n):
            d = self.bdim[(j, k)]
            if spans[k].dim != d:
                raise RuntimeError("arrows do not generate the radical")
            nodes = [n for n in range(len(vert)) if vert[n] == k]
            change[k] = hstack(F, [coords[n] for n in nodes], d) if nodes else F.zeros(0, 0)
        self._paths[j] = (vert, parent, arrow, coords, change)
        return self._paths[j]

    def projective(self, j: int) -> TreeProjective:
        """``A eps_j`` in its path basis."""
        if j in self._proj:
            return self._proj[j]
        F = self.field
        vert, parent, arrow, coords, change = self.path_basis(j)
        G = self.graph()
        inv = {k: (C.inv() if C.nrows() else C) for k, C in change.items()}
        dims = [self.bdim[(j, k)] for k in range(self.n)]
        mats = []
        for s, t, x in self.arrows():
            if dims[s] == 0 or dims[t] == 0:
                mats.append(F.zeros(dims[t], dims[s]))
                continue
            mats.append(inv[t] * self.left_matrix(x, s, t, j) * change[s])
        rep = Rep(G, F, dims, mats)
        per_vertex = [[n for n in range(len(vert)) if vert[n] == k] for k in range(self.n)]
        tp = TreeProjective(rep, j, vert, parent, arrow, per_vertex)
        self._proj[j] = tp
        return tp

    def simple(self, j: int) -> Rep:
        return Rep.simple(self.graph(), self.field, j)

    def regular(self) -> list[Rep]:
        return [self.projective(j).rep for j in range(self.n)]

    def relation_defects(self, Y: Rep) -> list[tuple[int, int]]:
        """Pairs ``(node, arrow)`` at which ``Y`` violates a defining relation.

        The relations ``alpha . p = sum c_q q`` for path-basis nodes ``p`` and
        arrows ``alpha`` generate all relations, so an empty list certifies
        that ``Y`` is an ``A``-module.
        """
        F = self.field
        arrows = self.arrows()
        bad = []
        for j in range(self.n):
            vert, parent, arrow, coords, change = self.path_basis(j)
            tp = self.projective(j)
            # Y(p) for each node p
            img = [F.eye(Y.dims[j])]
            for nd in range(1, len(vert)):
                img.append(Y.mats[arrow[nd]] * img[parent[nd]])
            for nd in range(len(vert)):
                k = vert[nd]
                pos = tp.basis_nodes[k].index(nd)
                for m, (s, t, _) in enumerate(arrows):
                    if s != k:
                        continue
                    col = submatrix(F, tp.rep.mats[m], None, [pos])
                    rhs = F.zeros(Y.dims[t], Y.dims[j])
                    for r, q in enumerate(tp.basis_nodes[t]):
                        c = col[r, 0]
                        if c != 0:
                            rhs += img[q] * c
                    if Y.mats[m] * img[nd] != rhs:
                        bad.append((nd, m))
        return bad

    def is_module(self, Y: Rep) -> bool:
        return not self.relation_defects(Y)

    # opposite algebra ------------------------------------------------------
    def opposite(self) -> "FDAlgebra":
        """``A^op`` on the same blocks; arrows are the same elements reversed."""
        n = self.n
        bdim = {(k, j): d for (j, k), d in self.bdim.items()}
        lmul = {}
        for k in range(n):
            for l in range(n):
                # op block (k, l) is block (l, k); element c acts on op block
                # (j, k) = block (k, j) by right multiplication.
                mats = []
                for c in range(self.bdim[(l, k)]):
                    per = {}
                    for j in range(n):
                        cols = []
                        for b in range(self.bdim[(k, j)]):
                            L = self.lmul[(k, j)][b][l]
                            cols.append(submatrix(self.field, L, None, [c]))
                        per[j] = hstack(self.field, cols, self.bdim[(l, j)])
                    mats.append(per)
                lmul[(k, l)] = mats
        arrows = [(k, j, x) for j, k, x in self.arrows()]
        op = FDAlgebra(self.field, n, bdim, lmul, list(self.units), self.labels, arrows)
        op._rad = {(k, j): s for (j, k), s in self.radical().items()}
        return op


def _rand_col(F, d, rng):
    return F.column([rng.randint(-3, 3) for _ in range(d)])


# endomorphism algebras ------------------------------------------------------

class EndAlgebra(FDAlgebra):
    """``End(T_0 + ... + T_{n-1})`` for pairwise non-isomorphic indecomposables."""

    def __init__(self, summands: Sequence[Rep], labels: Sequence[str] | None = None):
        self.summands = list(summands)
        n = len(self.summands)
        F = self.summands[0].field
        H = {(j, k): hom_space(self.summands[j], self.summands[k])
             for j in range(n) for k in range(n)}
        self.homs = H
        bdim = {jk: h.dim for jk, h in H.items()}
        lmul = {}
        for k in range(n):
            for l in range(n):
                mats = []
                for c in H[(k, l)].basis:
                    per = {}
                    for j in range(n):
                        src, dst = H[(j, k)], H[(j, l)]
                        per[j] = dst.coords_matrix([c.compose(b) for b in src.basis]) \
                            if src.dim else F.zeros(dst.dim, 0)
                    mats.append(per)
                lmul[(k, l)] = mats
        units = []
        for j in range(n):
            units.append(F.column(H[(j, j)].coords(self.summands[j].identity())))
        super().__init__(F, n, bdim, lmul, units, labels)

    def element(self, j: int, k: int, x) -> Morphism:
        """The morphism ``T_j -> T_k`` with block coordinates ``x``."""
        return self.homs[(j, k)].element([x[c, 0] for c in range(x.nrows())])

    def arrow_maps(self) -> list[Morphism]:
        return [self.element(j, k, x) for j, k, x in self.arrows()]


# modules built from Hom functors ---------------------------------------------

class HomModule:
    """``Hom(X, T)`` as a left module over ``End(T)``.

    ``homs[j]`` is ``Hom(X, T_j)``; the vertex-``j`` coordinates of the module
    are the coordinates in that basis.
    """

    def __init__(self, A: EndAlgebra, X: Rep):
        self.algebra = A
        self.source = X
        F = A.field
        self.homs = [hom_space(X, T) for T in A.summands]
        mats = []
        for (j, k, _), g in zip(A.arrows(), A.arrow_maps()):
            src, dst = self.homs[j], self.homs[k]
            if src.dim == 0 or dst.dim == 0:
                mats.append(F.zeros(dst.dim, src.dim))
            else:
                mats.append(dst.coords_matrix([g.compose(f) for f in src.basis]))
        self.rep = Rep(A.graph(), F, [h.dim for h in self.homs], mats)

    def element(self, j: int, x) -> Morphism:
        return self.homs[j].element([x[c, 0] for c in range(x.nrows())])

    def induced(self, other: "HomModule", g: Morphism) -> Morphism:
        """``Hom(g, T)``: ``Hom(Z, T) -> Hom(X, T)`` for ``g: X -> Z`` (self over X)."""
        F = self.algebra.field
        comps = []
        for j, (src, dst) in enumerate(zip(other.homs, self.homs)):
            if src.dim == 0 or dst.dim == 0:
                comps.append(F.zeros(dst.dim, src.dim))
            else:
                comps.append(dst.coords_matrix([f.compose(g) for f in src.basis]))
        return Morphism(other.rep, self.rep, comps)


def slice_module(A: EndAlgebra, v: int) -> Rep:
    """``e_v T`` as a left ``End(T)``-module: vertex ``j`` carries ``(T_j)_v``."""
    F = A.field
    dims = [T.dims[v] for T in A.summands]
    mats = [g.comps[v] for g in A.arrow_maps()]
    return Rep(A.graph(), F, dims, mats)


class DualHomModule:
    """``Hom_A(Y, T)`` for an ``A``-module ``Y``, a module over the base algebra.

    At a base vertex ``v`` the space is ``Hom_A(Y, e_v T)``; a base arrow
    acts by post-composition with its action on ``T``.
    """

    def __init__(self, A: EndAlgebra, Y: Rep):
        self.algebra = A
        self.source = Y
        T0 = A.summands[0]
        base = T0.graph
        F = A.field
        self.slices = [slice_module(A, v) for v in range(base.nverts)]
        self.homs: list[HomSpace] = [hom_space(Y, S) for S in self.slices]
        mats = []
        for a, (s, t) in enumerate(base.arrows):
            src, dst = self.homs[s], self.homs[t]
            if src.dim == 0 or dst.dim == 0:
                mats.append(F.zeros(dst.dim, src.dim))
                continue
            act = Morphism(self.slices[s], self.slices[t], [T.mats[a] for T in A.summands])
            mats.append(dst.coords_matrix([act.compose(f) for f in src.basis]))
        self.rep = Rep(base, F, [h.dim for h in self.homs], mats)


def unit_to_double_dual(A: EndAlgebra, X: Rep, FX: HomModule | None = None,
                        GFX: DualHomModule | None = None) -> Morphism:
    """Evaluation ``X -> Hom_A(Hom(X, T), T)``, ``x -> (f -> f(x))``."""
    FX = FX or HomModule(A, X)
    GFX = GFX or DualHomModule(A, FX.rep)
    F = A.field
    comps = []
    for v in range(X.graph.nverts):
        H = GFX.homs[v]
        cols = []
        for r in range(X.dims[v]):
            x = F.zeros(X.dims[v], 1)
            x[r, 0] = 1
            per_j = []
            for j, Hj in enumerate(FX.homs):
                if Hj.dim == 0:
                    per_j.append(F.zeros(A.summands[j].dims[v], 0))
                else:
                    per_j.append(hstack(F, [f.comps[v] * x for f in Hj.basis],
                                        A.summands[j].dims[v]))
            phi = Morphism(FX.rep, GFX.slices[v], per_j)
            cols.append(H.coords(phi))
        comps.append(F.matrix(H.dim, X.dims[v], [cols[c][r] for r in range(H.dim)
                                                 for c in range(X.dims[v])])
                     if H.dim and X.dims[v] else F.zeros(H.dim, X.dims[v]))
    return Morphism(X, GFX.rep, comps)


def unit_to_module_double_dual(A: EndAlgebra, Y: Rep, GY: DualHomModule | None = None,
                               FGY: HomModule | None = None) -> Morphism:
    """Evaluation ``Y -> Hom(Hom_A(Y, T), T)``, ``y -> (phi -> phi(y))``."""
    GY = GY or DualHomModule(A, Y)
    FGY = FGY or HomModule(A, GY.rep)
    F = A.field
    base_n = GY.rep.graph.nverts
    comps = []
    for j, T in enumerate(A.summands):
        H = FGY.homs[j]
        cols = []
        for r in range(Y.dims[j]):
            y = F.zeros(Y.dims[j], 1)
            y[r, 0] = 1
            per_v = []
            for v in range(base_n):
                Hv = GY.homs[v]
                if Hv.dim == 0:
                    per_v.append(F.zeros(T.dims[v], 0))
                else:
                    per_v.append(hstack(F, [phi.comps[j] * y for phi in Hv.basis], T.dims[v]))
            psi = Morphism(GY.rep, T, per_v)
            cols.append(H.coords(psi))
        comps.append(F.matrix(H.dim, Y.dims[j], [cols[c][r] for r in range(H.dim)
                                                 for c in range(Y.dims[j])])
                     if H.dim and Y.dims[j] else F.zeros(H.dim, Y.dims[j]))
    return Morphism(Y, FGY.rep, comps)


def dual_module(Y: Rep, target: FDAlgebra) -> Rep:
    """``D Y = Hom_k(Y, k)`` as a module over ``target``.

    ``Y`` is a module over ``target.opposite()`` (or ``target`` over its
    opposite); arrows are shared and reversed, so the matrices transpose.
    """
    return Rep(target.graph(), Y.field, Y.dims, [m.transpose() for m in Y.mats])


def ideal_blocks(A: FDAlgebra, generators: Sequence[int]) -> dict[tuple[int, int], Subspace]:
    """Two-sided ideal ``A e A`` for ``e`` the sum of the given idempotents."""
    F = A.field
    out = {}
    for j in range(A.n):
        for k in range(A.n):
            cols = []
            d = A.bdim[(j, k)]
            for m in generators:
                if A.bdim[(j, m)] == 0 or A.bdim[(m, k)] == 0:
                    continue
                I = F.eye(A.bdim[(m, k)])
                B = F.eye(A.bdim[(j, m)])
                for c in range(A.bdim[(m, k)]):
                    x = submatrix(F, I, None, [c])
                    cols.append(A.left_matrix(x, m, k, j) * B)
            out[(j, k)] = Subspace.span(F, hstack(F, cols, d), d) if cols else Subspace.zero(F, d)
    return out


def ideal_product(A: FDAlgebra, I: dict, J: dict) -> dict[tuple[int, int], Subspace]:
    F = A.field
    out = {}
    for j in range(A.n):
        for k in range(A.n):
            cols = []
            d = A.bdim[(j, k)]
            for m in range(A.n):
                X, Y = I[(m, k)], J[(j, m)]
                if X.dim == 0 or Y.dim == 0:
                    continue
                for c in range(X.dim):
                    x = submatrix(F, X.basis, None, [c])
                    cols.append(A.left_matrix(x, m, k, j) * Y.basis)
            out[(j, k)] = Subspace.span(F, hstack(F, cols, d), d) if cols else Subspace.zero(F, d)
    return out


def ideal_as_left_module(A: FDAlgebra, I: dict) -> Rep:
    """The left ideal ``I`` as a module: vertex ``k`` carries ``sum_j I(j, k)``."""
    F = A.field
    dims = [sum(I[(j, k)].dim for j in range(A.n)) for k in range(A.n)]
    mats = []
    for s, t, x in A.arrows():
        blocks = []
        for j in range(A.n):
            src, dst = I[(j, s)], I[(j, t)]
            M = A.left_matrix(x, s, t, j) * src.basis if src.dim else F.zeros(A.bdim[(j, t)], 0)
            blocks.append(dst.coords(M) if dst.dim else F.zeros(0, src.dim))
        mats.append(block_diag(F, blocks) if blocks else F.zeros(dims[t], dims[s]))
    return Rep(A.graph(), F, dims, mats)


__all__ = [
    "FDAlgebra", "EndAlgebra", "HomModule", "DualHomModule", "NotLocalError",
    "slice_module", "unit_to_double_dual", "unit_to_module_double_dual", "dual_module",
    "ideal_blocks", "ideal_product", "ideal_as_left_module",
]
