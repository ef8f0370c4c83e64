"""Exact dense linear algebra over Q or a prime field.

Matrices are python-flint objects (``fmpq_mat`` over Q, ``nmod_mat`` over
GF(p)).  A :class:`Field` creates them; the free functions below work on
either kind.  Subspaces of ``k^d`` are stored in reduced column echelon form
so that coordinates of a vector are read off at the pivot rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

DEFAULT_PRIME = 1073741789  # largest prime below 2**30


class Field:
    """The coefficient field: rationals (``p == 0``) or GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0 or p == 1:
            raise ValueError(f"bad characteristic {p}")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q`` or ``fp:<p>`` (``fp`` alone uses a 30-bit prime)."""
        text = text.strip().lower()
        if text in ("q", "qq", "rational"):
            return cls(0)
        if text == "fp":
            return cls(DEFAULT_PRIME)
        if text.startswith("fp:"):
            p = int(text[3:])
            if p < 2 or any(p % d == 0 for d in range(2, min(p, 1 << 16))
                            if d * d <= p):
                raise ValueError(f"{p} is not a prime")
            return cls(p)
        raise ValueError(f"unknown field {text!r}")

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"

    # construction -------------------------------------------------------
    def matrix(self, rows: int, cols: int, entries: Sequence | None = None):
        if self.p == 0:
            if entries is None:
                return flint.fmpq_mat(rows, cols)
            return flint.fmpq_mat(rows, cols, list(entries))
        if entries is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, [int(x) % self.p for x in entries],
                              self.p)

    def zeros(self, rows: int, cols: int):
        return self.matrix(rows, cols)

    def eye(self, n: int):
        entries = [0] * (n * n)
        for i in range(n):
            entries[i * n + i] = 1
        return self.matrix(n, n, entries)

    def from_rows(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        flat = [x for r in rows for x in r]
        return self.matrix(len(rows), ncols, flat)

    def column(self, values: Sequence):
        return self.matrix(len(values), 1, list(values))

    def scalar(self, x):
        """Coerce an int, Fraction or flint scalar into the field."""
        if self.p == 0:
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            return flint.fmpq(x)
        if isinstance(x, Fraction):
            return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
        if isinstance(x, flint.fmpq):
            return flint.nmod(int(x.p), self.p) / flint.nmod(int(x.q), self.p)
        return flint.nmod(int(x), self.p)

    def element_to_str(self, x) -> str:
        if self.p == 0:
            return rational_to_str(x)
        return str(int(x))

    def element_from_str(self, s: str):
        if self.p == 0:
            return flint.fmpq(Fraction(s).numerator, Fraction(s).denominator)
        return self.scalar(Fraction(s))


QQ = Field(0)


def field_of(A) -> Field:
    if isinstance(A, flint.nmod_mat):
        return Field(A.modulus())
    return QQ


# shape helpers ------------------------------------------------------------

def shape(A) -> tuple[int, int]:
    return A.nrows(), A.ncols()


def is_zero(A) -> bool:
    return all(x == 0 for x in A.entries())


def entries(A) -> list:
    return list(A.entries())


def hstack(F: Field, mats: Sequence, rows: int | None = None):
    mats = list(mats)
    if not mats:
        return F.zeros(rows or 0, 0)
    r = mats[0].nrows()
    cols = sum(m.ncols() for m in mats)
    out = []
    rowlists = [m.tolist() for m in mats]
    for i in range(r):
        for rl in rowlists:
            out.extend(rl[i])
    return F.matrix(r, cols, out)


def vstack(F: Field, mats: Sequence, cols: int | None = None):
    mats = list(mats)
    if not mats:
        return F.zeros(0, cols or 0)
    c = mats[0].ncols()
    out = []
    for m in mats:
        out.extend(m.entries())
    return F.matrix(sum(m.nrows() for m in mats), c, out)


def block_diag(F: Field, mats: Sequence):
    mats = list(mats)
    R = sum(m.nrows() for m in mats)
    C = sum(m.ncols() for m in mats)
    out = F.zeros(R, C)
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.tolist()):
            for j, x in enumerate(row):
                if x != 0:
                    out[r0 + i, c0 + j] = x
        r0 += m.nrows()
        c0 += m.ncols()
    return out


def submatrix(F: Field, A, rows: Sequence[int] | None = None,
              cols: Sequence[int] | None = None):
    rows = range(A.nrows()) if rows is None else rows
    cols = range(A.ncols()) if cols is None else cols
    rows, cols = list(rows), list(cols)
    full = A.tolist()
    return F.matrix(len(rows), len(cols), [full[i][j] for i in rows for j in cols])


def columns(A) -> list[list]:
    """Columns of ``A`` as python lists."""
    return [list(c) for c in zip(*A.tolist())] if A.nrows() else [[] for _ in range(A.ncols())]


def from_columns(F: Field, cols: Sequence[Sequence], nrows: int):
    cols = list(cols)
    out = [0] * (nrows * len(cols))
    for j, c in enumerate(cols):
        for i, x in enumerate(c):
            out[i * len(cols) + j] = x
    return F.matrix(nrows, len(cols), out)


def transpose(A):
    return A.transpose()


# elimination --------------------------------------------------------------

def rref(A) -> tuple[object, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    if A.nrows() == 0 or A.ncols() == 0:
        return A, 0, []
    R, rank = A.rref()
    pivots = []
    rows = R.tolist()
    for i in range(rank):
        row = rows[i]
        start = pivots[-1] + 1 if pivots else 0
        for j in range(start, len(row)):
            if row[j] != 0:
                pivots.append(j)
                break
    return R, rank, pivots


def rank(A) -> int:
    if A.nrows() == 0 or A.ncols() == 0:
        return 0
    return A.rank()


def nullspace(A) -> tuple[object, list[int]]:
    """Kernel basis as the columns of an ``ncols x k`` matrix.

    Returns the basis together with the free columns; the basis vector for
    free column ``f`` has entry 1 at ``f`` and 0 at the other free columns, so
    the coordinates of any kernel vector are its entries at the free columns.
    """
    F = field_of(A)
    n = A.ncols()
    R, r, pivots = rref(A)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    K = F.zeros(n, len(free))
    if r:
        rows = R.tolist()
    for k, f in enumerate(free):
        K[f, k] = 1
        for i, p in enumerate(pivots):
            x = rows[i][f]
            if x != 0:
                K[p, k] = -x
    return K, free


def solve(A, B):
    """Some X with A X = B, or None if inconsistent."""
    F = field_of(A)
    m, n = A.nrows(), A.ncols()
    k = B.ncols()
    if n == 0:
        return F.zeros(0, k) if is_zero(B) else None
    if m == 0:
        return F.zeros(n, k)
    aug = hstack(F, [A, B])
    R, r, pivots = rref(aug)
    if pivots and pivots[-1] >= n:
        return None
    X = F.zeros(n, k)
    rows = R.tolist()
    for i, p in enumerate(pivots):
        for j in range(k):
            X[p, j] = rows[i][n + j]
    return X


def charpoly_factors(A) -> list:
    """Distinct irreducible factors of the characteristic polynomial."""
    if A.nrows() == 0:
        return []
    _, facs = A.charpoly().factor()
    return [f for f, _ in facs]


def poly_eval(F: Field, poly, A):
    """Evaluate a flint polynomial at a square matrix by Horner's rule."""
    n = A.nrows()
    coeffs = poly.coeffs()
    R = F.zeros(n, n)
    I = F.eye(n)
    for c in reversed(coeffs):
        R = R * A + I * c
    return R


# subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of ``k^d`` with basis in reduced column echelon form.

    ``basis`` is ``d x r``; ``basis[pivots[j], i] == (i == j)``.
    """

    d: int
    basis: object
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def field(self) -> Field:
        return field_of(self.basis)

    @staticmethod
    def span(F: Field, S, d: int | None = None) -> "Subspace":
        """Column span of ``S`` (a ``d x m`` matrix)."""
        d = S.nrows() if d is None else d
        if S.ncols() == 0 or d == 0:
            return Subspace(d, F.zeros(d, 0), ())
        R, r, piv = rref(S.transpose())
        rows = R.tolist()[:r]
        B = F.matrix(r, d, [x for row in rows for x in row]).transpose()
        return Subspace(d, B, tuple(piv))

    @staticmethod
    def zero(F: Field, d: int) -> "Subspace":
        return Subspace(d, F.zeros(d, 0), ())

    @staticmethod
    def full(F: Field, d: int) -> "Subspace":
        return Subspace(d, F.eye(d), tuple(range(d)))

    def coords(self, V):
        """Coordinates of the columns of ``V`` (assumed to lie in the span)."""
        F = self.field
        return submatrix(F, V, self.pivots, None)

    def residual(self, V):
        return V - self.basis * self.coords(V)

    def contains(self, V) -> bool:
        if V.ncols() == 0:
            return True
        return is_zero(self.residual(V))

    def contains_space(self, other: "Subspace") -> bool:
        return self.contains(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        F = self.field
        return Subspace.span(F, hstack(F, [self.basis, other.basis], self.d), self.d)

    def add_vectors(self, V) -> "Subspace":
        F = self.field
        return Subspace.span(F, hstack(F, [self.basis, V], self.d), self.d)

    def intersect(self, other: "Subspace") -> "Subspace":
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.d)
        K, _ = nullspace(hstack(F, [self.basis, -other.basis]))
        top = submatrix(F, K, range(self.dim), None)
        return Subspace.span(F, self.basis * top, self.d)

    def complement_indices(self) -> list[int]:
        """Coordinates spanning a complement: the non-pivot rows."""
        ps = set(self.pivots)
        return [i for i in range(self.d) if i not in ps]

    def quotient_matrix(self):
        """Matrix of ``k^d -> k^d / self`` in the basis of non-pivot unit vectors."""
        F = self.field
        comp = self.complement_indices()
        P = submatrix(F, F.eye(self.d), comp, None)
        if self.dim:
            P = P - submatrix(F, self.basis, comp, None) * submatrix(F, F.eye(self.d), self.pivots, None)
        return P

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.d == other.d
                and self.pivots == other.pivots and self.basis == other.basis)

    def __hash__(self):
        return hash((self.d, self.pivots))


def complement_basis(F: Field, sub: Subspace, candidates) -> list[int]:
    """Greedy choice of candidate columns extending ``sub`` to its sum with them."""
    chosen = []
    cur = sub
    for j, col in enumerate(columns(candidates)):
        v = F.column(col)
        if not cur.contains(v):
            chosen.append(j)
            cur = cur.add_vectors(v)
    return chosen


def rational_to_str(x) -> str:
    x = flint.fmpq(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


def matrix_to_strings(F: Field, A) -> list[list[str]]:
    return [[F.element_to_str(x) for x in row] for row in A.tolist()]


def matrix_from_strings(F: Field, rows: Iterable[Iterable[str]], nrows: int, ncols: int):
    flat = [F.element_from_str(s) for r in rows for s in r]
    if F.p == 0:
        return flint.fmpq_mat(nrows, ncols, flat)
    return flint.nmod_mat(nrows, ncols, [int(x) for x in flat], F.p)
