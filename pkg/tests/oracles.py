"""Independent recomputations used to cross-check the library.

Nothing here imports the library's linear algebra or module code: ranks are
computed with ``fractions.Fraction`` elimination, algebra dimensions by
enumerating paths, and Weyl group lengths by breadth-first search.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product


def frac(x) -> Fraction:
    return Fraction(str(x))


def to_rows(m) -> list[list[Fraction]]:
    """flint matrix -> list of Fraction rows."""
    return [[frac(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c] / p
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


# Weyl group ------------------------------------------------------------------------

def cartan(n: int, arrows) -> list[list[int]]:
    C = [[2 if a == b else 0 for b in range(n)] for a in range(n)]
    for s, t in arrows:
        C[s - 1][t - 1] -= 1
        C[t - 1][s - 1] -= 1
    return C


def reflection_matrix(C, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of ``s_i`` on simple-root coordinates (columns are images of simple roots)."""
    n = len(C)
    M = [[int(a == b) for b in range(n)] for a in range(n)]
    for b in range(n):
        M[i - 1][b] -= C[i - 1][b]
    return tuple(tuple(r) for r in M)


def matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def element(C, word):
    n = len(C)
    g = tuple(tuple(int(a == b) for b in range(n)) for a in range(n))
    for i in word:
        g = matmul(g, reflection_matrix(C, i))
    return g


def lengths_up_to(C, depth: int) -> dict:
    """Group element -> length, for every element of length at most ``depth``."""
    n = len(C)
    e = tuple(tuple(int(a == b) for b in range(n)) for a in range(n))
    seen = {e: 0}
    frontier = [e]
    for d in range(1, depth + 1):
        nxt = []
        for g in frontier:
            for i in range(1, n + 1):
                h = matmul(g, reflection_matrix(C, i))
                if h not in seen:
                    seen[h] = d
                    nxt.append(h)
        frontier = nxt
    return seen


def is_reduced_bfs(C, word) -> bool:
    table = lengths_up_to(C, len(word))
    return table.get(element(C, word)) == len(word)


# weights ----------------------------------------------------------------------------

def weight_drop(C, letters, i: int) -> list[int]:
    """``varpi_i - x(varpi_i)`` for the product ``x`` of ``letters``, in simple-root coordinates."""
    n = len(C)
    c = [0] * n  # x(varpi_i) = varpi_i + sum c_k alpha_k
    for letter in reversed(list(letters)):
        a = letter - 1
        pairing = int(a == i - 1) + sum(C[a][k] * c[k] for k in range(n))
        c[a] -= pairing
    return [-x for x in c]


def weight_dims(C, word, j: int) -> list[int]:
    """Dimension vector of the standard summand at position ``j``."""
    return weight_drop(C, word[:j], word[j - 1])


# preprojective algebra by path enumeration -----------------------------------------

def double_arrows(n: int, arrows):
    out = []
    for s, t in arrows:
        out.append((s - 1, t - 1, "a"))
        out.append((t - 1, s - 1, "a*"))
    return out


def paths(n: int, darrows, d: int):
    """Paths of length ``d`` as tuples of arrow indices in traversal order."""
    if d == 0:
        return [("e", v) for v in range(n)]
    out = []
    for seq in product(range(len(darrows)), repeat=d):
        if all(darrows[seq[k]][1] == darrows[seq[k + 1]][0] for k in range(d - 1)):
            out.append(seq)
    return out


def preprojective_degree_dims(n: int, arrows, N: int) -> list[int]:
    """Dimension of each graded piece of ``Lambda / rad^N`` via path enumeration."""
    da = double_arrows(n, arrows)
    rel = {v: [] for v in range(n)}  # relation at v as (coefficient, two-arrow path)
    for m, (s, t) in enumerate(arrows):
        a, b = 2 * m, 2 * m + 1
        rel[t - 1].append((1, (b, a)))    # leave along a*, return along a
        rel[s - 1].append((-1, (a, b)))
    dims = []
    for d in range(N):
        P = paths(n, da, d)
        if d < 2:
            dims.append(len(P))
            continue
        index = {p: k for k, p in enumerate(P)}
        rows = []
        for k in range(d - 1):
            for pre in (paths(n, da, k) if k else [None]):
                for suf in (paths(n, da, d - 2 - k) if d - 2 - k else [None]):
                    for v in range(n):
                        if pre is not None and da[pre[-1]][1] != v:
                            continue
                        if suf is not None and da[suf[0]][0] != v:
                            continue
                        row = [Fraction(0)] * len(P)
                        for c, mid in rel[v]:
                            full = (pre or ()) + mid + (suf or ())
                            row[index[full]] += c
                        if any(row):
                            rows.append(row)
        dims.append(len(P) - rank(rows))
    return dims


# representations --------------------------------------------------------------------

def hom_dim(X, Y) -> int:
    """``dim Hom(X, Y)`` from the commutativity equations, solved over Fractions."""
    n = len(X.dims)
    offs, tot = [], 0
    for v in range(n):
        offs.append(tot)
        tot += X.dims[v] * Y.dims[v]
    if tot == 0:
        return 0
    Xm = [to_rows(m) for m in X.mats]
    Ym = [to_rows(m) for m in Y.mats]
    rows = []

    def var(v, r, c):  # entry (r, c) of f_v : X_v -> Y_v
        return offs[v] + r * X.dims[v] + c

    for a, (s, t) in enumerate(X.graph.arrows):
        # Y_a f_s - f_t X_a = 0, an (dY_t x dX_s) system
        for r in range(Y.dims[t]):
            for c in range(X.dims[s]):
                row = [Fraction(0)] * tot
                for k in range(Y.dims[s]):
                    row[var(s, k, c)] += Ym[a][r][k]
                for k in range(X.dims[t]):
                    row[var(t, r, k)] -= Xm[a][k][c]
                rows.append(row)
    return tot - rank(rows)


def relation_holds(n: int, arrows, X) -> bool:
    """Sum over arrows at each vertex of ``a a* - a* a`` vanishes on ``X``."""
    M = [to_rows(m) for m in X.mats]

    def mul(A, B, r, c, inner):
        return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(c)] for i in range(r)]

    for v in range(n):
        d = X.dims[v]
        if d == 0:
            continue
        acc = [[Fraction(0)] * d for _ in range(d)]
        for m, (s, t) in enumerate(arrows):
            a, b = M[2 * m], M[2 * m + 1]
            s0, t0 = s - 1, t - 1
            if t0 == v:
                term = mul(a, b, d, d, X.dims[s0])
                acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, term)]
            if s0 == v:
                term = mul(b, a, d, d, X.dims[t0])
                acc = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, term)]
        if any(x for r in acc for x in r):
            return False
    return True


def bilinear_form(C, x, y) -> int:
    return sum(x[a] * C[a][b] * y[b] for a in range(len(C)) for b in range(len(C)))
