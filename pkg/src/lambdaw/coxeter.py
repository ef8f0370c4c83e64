"""Quivers, Cartan matrices and reduced words in the associated Coxeter group."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InputError(ValueError):
    """Invalid instance data.  ``reason`` is a short machine-readable tag."""

    def __init__(self, reason: str, message: str, position: int | None = None):
        super().__init__(message)
        self.reason = reason
        self.position = position


@dataclass(frozen=True)
class Quiver:
    """Acyclic quiver on vertices ``1..n``; parallel arrows allowed."""

    n: int
    arrows: tuple[tuple[int, int], ...]
    cartan: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def key(self) -> tuple:
        return (self.n, self.arrows)

    def is_dynkin(self) -> bool:
        """Positive definiteness of the Cartan matrix (leading minors)."""
        return all(_det([row[:k] for row in self.cartan[:k]]) > 0
                   for k in range(1, self.n + 1))

    def to_json(self) -> dict:
        return {"vertices": self.n, "arrows": [list(a) for a in self.arrows]}


def _det(rows: list[Sequence[int]]) -> int:
    from fractions import Fraction
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


def build_quiver(n: int, arrows: Iterable[Sequence[int]]) -> Quiver:
    """Validate a quiver and compute its symmetric Cartan matrix.

    Raises :class:`InputError` with reason ``vertex-range``, ``loop`` or
    ``cycle``.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError("vertex-range", f"vertex count must be a positive integer, got {n!r}")
    arr = []
    for k, a in enumerate(arrows):
        try:
            s, t = (int(a[0]), int(a[1]))
            if len(a) != 2:
                raise ValueError
        except (TypeError, ValueError, IndexError):
            raise InputError("malformed", f"arrow {k} is not a pair: {a!r}", k)
        for v in (s, t):
            if not 1 <= v <= n:
                raise InputError("vertex-range", f"arrow {k} ({s}->{t}) uses vertex {v} outside 1..{n}", k)
        if s == t:
            raise InputError("loop", f"arrow {k} is a loop at vertex {s}", k)
        arr.append((s, t))
    # Kahn's algorithm; leftovers lie on an oriented cycle
    indeg = {v: 0 for v in range(1, n + 1)}
    for _, t in arr:
        indeg[t] += 1
    ready = [v for v in indeg if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for s, t in arr:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    if seen < n:
        bad = sorted(v for v in indeg if indeg[v] > 0)
        raise InputError("cycle", f"oriented cycle through vertices {bad}")
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
    for s, t in arr:
        C[s - 1][t - 1] -= 1
        C[t - 1][s - 1] -= 1
    return Quiver(n, tuple(arr), tuple(tuple(r) for r in C))


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    reduced: bool = False

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def prefix(self, j: int) -> "Word":
        return Word(self.letters[:j], self.reduced)

    def suffix(self, j: int) -> "Word":
        """Letters from position ``j + 1`` on (1-based)."""
        return Word(self.letters[j:], self.reduced)

    def __str__(self):
        return " ".join(f"s{i}" for i in self.letters) or "e"


def reflect(cartan, i: int, root: list[int]) -> list[int]:
    """Apply the simple reflection ``s_i`` to a root given in simple-root coordinates."""
    r = list(root)
    r[i - 1] -= sum(cartan[i - 1][j] * root[j] for j in range(len(root)))
    return r


def reducedness_failure(q: Quiver, letters: Sequence[int]) -> int | None:
    """First 1-based position ``k`` where ``s_{i_1}...s_{i_{k-1}}(alpha_{i_k})`` is negative."""
    for k, i in enumerate(letters):
        root = [0] * q.n
        root[i - 1] = 1
        for j in reversed(letters[:k]):
            root = reflect(q.cartan, j, root)
        if all(x <= 0 for x in root):
            return k + 1
    return None


def is_reduced(q: Quiver, word: Sequence[int] | Word) -> Word | int:
    """Certified word, or the first failing position."""
    letters = tuple(word.letters if isinstance(word, Word) else word)
    for k, i in enumerate(letters):
        if not isinstance(i, int) or not 1 <= i <= q.n:
            raise InputError("letter-range", f"letter {i!r} at position {k + 1} is not a vertex", k + 1)
    bad = reducedness_failure(q, letters)
    if bad is not None:
        return bad
    return Word(letters, True)


def certify_word(q: Quiver, word: Sequence[int] | Word) -> Word:
    res = is_reduced(q, word)
    if isinstance(res, int):
        raise InputError("not-reduced", f"word is not reduced at position {res}", res)
    return res


def letter_positions(word: Word | Sequence[int], i: int) -> list[int]:
    return [k + 1 for k, x in enumerate(word) if x == i]


def last_occurrences(word: Word | Sequence[int]) -> dict[int, int]:
    """Letter -> position of its last occurrence."""
    out = {}
    for k, x in enumerate(word):
        out[x] = k + 1
    return out


def previous_occurrence(word: Word | Sequence[int], pos: int) -> int | None:
    """Position of the previous occurrence of the letter at ``pos``."""
    letter = word[pos - 1]
    for k in range(pos - 1, 0, -1):
        if word[k - 1] == letter:
            return k
    return None
