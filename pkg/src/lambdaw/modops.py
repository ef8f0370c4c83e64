"""Ideal operators, the algebra Lambda_w and its standard modules.

Vertices and letters are 1-based in this module's public functions, matching
the instance format; the underlying representations index vertices from 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import homological as hl
from .coxeter import Quiver, Word, certify_word, last_occurrences, letter_positions
from .linalg import QQ, Field, Subspace, complement_basis, hstack, nullspace, vstack
from .preproj import DEFAULT_BASIS_CAP, TreeProjective, TruncAlg
from .reps import (Morphism, Rep, Subrep, decompose, direct_sum, generated_subrep,
                   hom_dim, hom_space, is_local, isomorphic_indecomposables, span_of_maps,
                   whole)


class NotAModuleError(ValueError):
    """A representation that is not annihilated by ``I_w``."""


# ideal operators ------------------------------------------------------------

def apply_ideal(i: int, X: Rep | Subrep) -> Subrep:
    """``I_i U`` for a subrepresentation ``U`` (or all of ``X``).

    ``I_i U`` keeps ``U_j`` for ``j != i`` and, at ``i``, the images of the
    arrows ending at ``i``.
    """
    U = whole(X) if isinstance(X, Rep) else X
    A = U.ambient
    F = A.field
    v = i - 1
    spaces = list(U.spaces)
    imgs = [A.mats[a] * U.spaces[A.graph.arrows[a][0]].basis for a in A.graph.arrows_into(v)]
    spaces[v] = Subspace.span(F, hstack(F, imgs, A.dims[v]), A.dims[v])
    return Subrep(A, spaces)


def word_submodule(letters: Sequence[int] | Word, X: Rep | Subrep) -> Subrep:
    """``I_{i_1} ... I_{i_j} U``, applying the last letter first."""
    U = whole(X) if isinstance(X, Rep) else X
    for i in reversed(tuple(letters)):
        U = apply_ideal(i, U)
        if U.dim == 0:
            break
    return U


# the algebra Lambda_w --------------------------------------------------------

class WordAlgebra:
    """``Lambda_w`` for a reduced word, materialized in truncation ``N``.

    ``N`` defaults to ``l(w)``.  Since ``rad Lambda`` lies in every ``I_i``,
    ``rad^{l(w)}`` lies in ``I_w`` and every module killed by ``I_w`` is a
    module over the truncation; larger ``N`` (used when ``w`` is a factor of
    a longer word) is equally faithful.
    """

    def __init__(self, quiver: Quiver, word: Sequence[int] | Word, field: Field = QQ,
                 trunc: TruncAlg | None = None, basis_cap: int = DEFAULT_BASIS_CAP):
        self.quiver = quiver
        self.word = word if isinstance(word, Word) and word.reduced else certify_word(quiver, word)
        self.field = field
        N = max(1, len(self.word))
        if trunc is None:
            trunc = TruncAlg(quiver, N, field, basis_cap)
        elif trunc.N < N:
            raise ValueError("truncation below the word length")
        self.trunc = trunc
        self.graph = trunc.graph
        self.nverts = quiver.n
        self._proj: dict[int, TreeProjective] = {}
        self._chain: dict[tuple, Subrep] = {}
        self._summands: dict[int, tuple[Rep, Morphism]] = {}

    def key(self) -> tuple:
        return (self.quiver.key(), self.word.letters, self.trunc.N, self.field.p)

    def truncated(self, v: int) -> TreeProjective:
        return self.trunc.projective(v)

    def chain(self, letters: Sequence[int], v: int) -> Subrep:
        """``I_{letters} P_v`` inside the truncated projective (0-based ``v``)."""
        key = (tuple(letters), v)
        if key not in self._chain:
            self._chain[key] = word_submodule(letters, self.truncated(v).rep)
        return self._chain[key]

    def projective(self, v: int) -> TreeProjective:
        """``P_v / I_w P_v`` as a tree projective (0-based ``v``)."""
        if v not in self._proj:
            tp = self.truncated(v)
            S = self.chain(self.word.letters, v)
            Q, _ = S.quotient()
            nodes = [[tp.basis_nodes[u][k] for k in sp.complement_indices()]
                     for u, sp in enumerate(S.spaces)]
            self._proj[v] = TreeProjective(Q, v, tp.node_vertex, tp.node_parent,
                                           tp.node_arrow, nodes)
        return self._proj[v]

    def projectives(self) -> list[Rep]:
        return [self.projective(v).rep for v in range(self.nverts)]

    def regular(self) -> Rep:
        return direct_sum([P for P in self.projectives() if P.dim])[0]

    @property
    def dim(self) -> int:
        return sum(P.dim for P in self.projectives())

    def summand(self, j: int) -> tuple[Rep, Morphism]:
        """``M_j = P_{i_j} / I_{i_1...i_j} P_{i_j}`` and its projection from ``P^{(N)}``."""
        if j not in self._summands:
            i = self.word[j - 1]
            S = self.chain(self.word.letters[:j], i - 1)
            self._summands[j] = S.quotient()
        return self._summands[j]

    def kills(self, X: Rep) -> bool:
        return word_submodule(self.word.letters, X).dim == 0

    def require_module(self, X: Rep):
        if not self.kills(X):
            raise NotAModuleError(f"representation of dims {X.dims} is not killed by I_w")


def lambda_w(A: WordAlgebra) -> tuple[Rep, list[Rep]]:
    """``Lambda_w`` as a left module together with ``P_i / I_w P_i`` for each vertex."""
    Ps = A.projectives()
    return A.regular(), Ps


# standard cluster tilting objects ---------------------------------------------

@dataclass
class CTObject:
    """Ordered indecomposable summands; ``labels`` are their positions."""

    summands: list[Rep]
    labels: list[int]
    projective: list[bool]
    word: Word | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.summands)

    def position(self, label: int) -> int:
        return self.labels.index(label)

    def total(self) -> Rep:
        return direct_sum(self.summands)[0]

    def replaced(self, k: int, new: Rep) -> "CTObject":
        s = list(self.summands)
        s[k] = new
        return CTObject(s, list(self.labels), list(self.projective), self.word)

    def dims(self) -> list[tuple[int, ...]]:
        return [X.dims for X in self.summands]


def standard_ct(A: WordAlgebra, verify: bool = True) -> CTObject:
    """``M_w = M_1 + ... + M_t`` with ``M_j = P_{i_j}/I_{i_1}...I_{i_j}P_{i_j}``."""
    w = A.word
    last = last_occurrences(w)
    summands = [A.summand(j)[0] for j in range(1, len(w) + 1)]
    proj = [last[w[j - 1]] == j for j in range(1, len(w) + 1)]
    M = CTObject(summands, list(range(1, len(w) + 1)), proj, w)
    if verify:
        for j, X in enumerate(summands, 1):
            if not is_local(X):
                raise RuntimeError(f"summand M_{j} is decomposable")
        for a in range(len(summands)):
            for b in range(a):
                if isomorphic_indecomposables(summands[a], summands[b]):
                    raise RuntimeError(f"summands M_{b + 1} and M_{a + 1} are isomorphic")
    return M


def chain_map(A: WordAlgebra, j: int, k: int) -> Morphism:
    """The epimorphism ``M_j -> M_k`` for positions ``k < j`` of the same letter."""
    if A.word[j - 1] != A.word[k - 1] or k >= j:
        raise ValueError("chain maps go to an earlier position of the same letter")
    Mj, pj = A.summand(j)
    Mk, pk = A.summand(k)
    F = A.field
    # both are quotients of the same truncated projective; pk factors through pj
    comps = []
    for v in range(A.nverts):
        sec = _section(F, pj.comps[v])
        comps.append(pk.comps[v] * sec)
    return Morphism(Mj, Mk, comps)


def _section(F, P):
    """Right inverse of a surjective matrix of the form returned by quotients."""
    from .linalg import solve
    if P.nrows() == 0:
        return F.zeros(P.ncols(), 0)
    S = solve(P, F.eye(P.nrows()))
    return S


def layers(A: WordAlgebra) -> list[tuple[Rep, Morphism]]:
    """``L_j`` for every position ``j`` with its inclusion into ``M_j``."""
    out = []
    for j in range(1, len(A.word) + 1):
        prev = [p for p in letter_positions(A.word, A.word[j - 1]) if p < j]
        Mj = A.summand(j)[0]
        if not prev:
            out.append((Mj, Mj.identity()))
            continue
        f = chain_map(A, j, prev[-1])
        K = f.kernel()
        out.append((K.rep(), K.inclusion()))
    return out


# homological algebra over Lambda_w ---------------------------------------------

def syzygy_w(X: Rep, A: WordAlgebra, check: bool = True) -> tuple[Rep, Morphism, hl.Cover]:
    if check:
        A.require_module(X)
    c = hl.projective_cover(A, X)
    return c.kernel, c.kernel_incl, c


def omega_tilde(M: CTObject, A: WordAlgebra) -> CTObject:
    """``Lambda_w`` plus the syzygies of the non-projective summands.

    The syzygy of an indecomposable non-projective module in ``Sub Lambda_w``
    is indecomposable, so positions are kept; projective positions carry the
    indecomposable projective of their letter.
    """
    summands, proj = [], []
    for X, p, lab in zip(M.summands, M.projective, M.labels):
        if p:
            summands.append(X)
        else:
            summands.append(syzygy_w(X, A, check=False)[0])
        proj.append(p)
    return CTObject(summands, list(M.labels), proj, M.word)


@dataclass
class ExtResult:
    dim: int
    classes: list[Morphism] | None = None
    middle_terms: list[Rep] | None = None


def ext1(X: Rep, Y: Rep, A: WordAlgebra, basis: bool = False) -> ExtResult:
    if not basis:
        return ExtResult(hl.ext1_dim(A, X, Y))
    cls = hl.ext1_classes(A, X, Y)
    mids = [hl.extension(A, X, Y, c)[0] for c in cls]
    return ExtResult(len(cls), cls, mids)


def ext1_dim(X: Rep, Y: Rep, A: WordAlgebra) -> int:
    return hl.ext1_dim(A, X, Y)


class OracleRefused(ValueError):
    pass


def ext1_euler_oracle(X: Rep, Y: Rep, q: Quiver) -> int:
    """``hom(X,Y) + hom(Y,X) - (dim X, dim Y)`` for non-Dynkin quivers."""
    if q.is_dynkin():
        raise OracleRefused("the Euler-form identity needs a non-Dynkin quiver")
    C = q.cartan
    form = sum(X.dims[a] * C[a][b] * Y.dims[b] for a in range(q.n) for b in range(q.n))
    return hom_dim(X, Y) + hom_dim(Y, X) - form


def maps_through(X: Rep, Y: Rep, T: Sequence[Rep]) -> Subspace:
    """Coordinates (in ``Hom(X, Y)``) of the maps factoring through ``add T``."""
    H = hom_space(X, Y)
    if H.dim == 0:
        return Subspace.zero(X.field, 0)
    comps = []
    for Z in T:
        A1 = hom_space(X, Z)
        B1 = hom_space(Z, Y)
        for g in B1.basis:
            for f in A1.basis:
                comps.append(g.compose(f))
    return span_of_maps(H, comps)


def ideal_quotient(X: Rep, Y: Rep, T: Sequence[Rep]) -> tuple[int, list[Morphism]]:
    """``Hom(X, Y) / [T](X, Y)``: dimension and representatives of a basis."""
    H = hom_space(X, Y)
    I = maps_through(X, Y, T)
    F = X.field
    chosen = complement_basis(F, I, F.eye(H.dim)) if H.dim else []
    return H.dim - I.dim, [H.basis[j] for j in chosen]


def stable_hom(X: Rep, Y: Rep, A: WordAlgebra) -> tuple[int, list[Morphism]]:
    """Hom modulo maps factoring through projective ``Lambda_w``-modules.

    A map factors through a projective iff it factors through the cover of
    ``Y``, so the ideal is the image of ``Hom(X, P) -> Hom(X, Y)``.
    """
    H = hom_space(X, Y)
    if H.dim == 0:
        return 0, []
    c = hl.projective_cover(A, Y)
    comps = [c.pi.compose(f) for f in hom_space(X, c.P).basis] if c.P.dim else []
    I = span_of_maps(H, comps)
    F = X.field
    chosen = complement_basis(F, I, F.eye(H.dim))
    return H.dim - I.dim, [H.basis[j] for j in chosen]


def in_sub_lambda_w(X: Rep, A: WordAlgebra) -> bool:
    """``X`` in ``Sub Lambda_w`` iff ``Ext^1(X, Lambda_w) = 0``."""
    if not A.kills(X):
        return False
    return all(hl.ext1_dim(A, X, P) == 0 for P in A.projectives() if P.dim)


def cogenerated_by_free(X: Rep, A: WordAlgebra) -> bool:
    """Explicit criterion: the maps ``X -> Lambda_w`` have no common kernel."""
    F = X.field
    comps = [[] for _ in X.dims]
    for P in A.projectives():
        if P.dim == 0:
            continue
        for f in hom_space(X, P).basis:
            for v, c in enumerate(f.comps):
                comps[v].append(c)
    for v, d in enumerate(X.dims):
        if d == 0:
            continue
        if not comps[v]:
            return False
        K, _ = nullspace(vstack(F, comps[v], d))
        if K.ncols():
            return False
    return True


def random_submodule(A: WordAlgebra, rng: random.Random, copies: int = 2,
                     generators: int = 1) -> Rep:
    """Submodule of ``Lambda_w^copies`` generated by random vectors."""
    R = A.regular()
    S, _, _ = direct_sum([R] * copies)
    F = A.field
    gens: dict[int, list] = {}
    support = [v for v in range(A.nverts) if S.dims[v]]
    for _ in range(generators):
        v = rng.choice(support)
        vec = hl.random_element_vector(F, S.dims[v], rng)
        gens.setdefault(v, []).append(vec)
    G = {v: hstack(F, cols, S.dims[v]) for v, cols in gens.items()}
    return generated_subrep(S, G).rep()


def random_quotient(A: WordAlgebra, rng: random.Random) -> Rep:
    """Quotient of an indecomposable projective by a random submodule."""
    v = rng.choice([u for u in range(A.nverts) if A.projective(u).rep.dim])
    P = A.projective(v).rep
    u = rng.choice([x for x in range(A.nverts) if P.dims[x]])
    vec = hl.random_element_vector(A.field, P.dims[u], rng)
    U = generated_subrep(P, {u: vec})
    return U.quotient()[0]


# layer filtrations -------------------------------------------------------------

@dataclass
class LayerStep:
    """``X_{r} / X_{r+1}`` is isomorphic to ``L_layer`` (``multiplicity`` copies)."""

    layer: int
    multiplicity: int
    sub: Subrep


def layer_filtration(X: Rep, A: WordAlgebra, M: CTObject | None = None,
                     gamma=None) -> list[LayerStep]:
    """Filtration of ``X`` in ``Sub Lambda_w`` with layer subquotients.

    The primary route transports the Delta-filtration of ``Hom(X, M)``
    through the duality with ``Sub Lambda_w``; if that fails a greedy search
    peels layers off the top.
    """
    from .quasihered import transport_layer_filtration
    try:
        return transport_layer_filtration(X, A, M, gamma)
    except FiltrationError:
        return greedy_layer_filtration(X, A)


class FiltrationError(RuntimeError):
    pass


def greedy_layer_filtration(X: Rep, A: WordAlgebra, rng: random.Random | None = None,
                            tries: int = 8) -> list[LayerStep]:
    """Peel a quotient isomorphic to a layer off the top; largest layers first."""
    rng = rng or random.Random(0)
    L = [(j, Lj) for j, (Lj, _) in enumerate(layers(A), 1)]
    L.sort(key=lambda p: (-p[1].dim, p[0]))
    steps = []
    cur = whole(X)
    while cur.dim:
        R = cur.rep()
        found = None
        for j, Lj in L:
            if any(a > b for a, b in zip(Lj.dims, R.dims)):
                continue
            H = hom_space(R, Lj)
            if H.dim == 0:
                continue
            for _ in range(tries):
                f = H.random_element(rng)
                if f.is_surjective():
                    K = f.kernel()
                    if in_sub_lambda_w(K.rep(), A):
                        found = (j, K)
                        break
            if found:
                break
        if not found:
            raise FiltrationError(f"no layer quotient found for dims {R.dims}")
        j, K = found
        steps.append(LayerStep(j, 1, cur))
        # re-express K inside X
        spaces = [outer.basis * k.basis for outer, k in zip(cur.spaces, K.spaces)]
        cur = Subrep(X, [Subspace.span(X.field, s, d) for s, d in zip(spaces, X.dims)])
    return steps


__all__ = [
    "apply_ideal", "word_submodule", "WordAlgebra", "lambda_w", "CTObject", "standard_ct",
    "layers", "chain_map", "syzygy_w", "omega_tilde", "ExtResult", "ext1", "ext1_dim",
    "ext1_euler_oracle", "OracleRefused", "stable_hom", "ideal_quotient", "maps_through",
    "in_sub_lambda_w", "cogenerated_by_free", "random_submodule", "random_quotient",
    "layer_filtration", "greedy_layer_filtration", "LayerStep", "FiltrationError",
    "NotAModuleError", "decompose",
]
