from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path

import pytest

from lambdaw.coxeter import build_quiver
from lambdaw.modops import WordAlgebra, standard_ct

INSTANCES = Path(__file__).resolve().parents[1] / "instances"


class Fixture:
    """One worked example, with its derived objects built on first use."""

    def __init__(self, name: str):
        self.name = name
        self.path = INSTANCES / f"{name}.json"
        data = json.loads(self.path.read_text())
        self.n = data["quiver"]["vertices"]
        self.arrows = [tuple(a) for a in data["quiver"]["arrows"]]
        self.quiver = build_quiver(self.n, self.arrows)
        w = data["word"]
        self.word = [int(t.lstrip("s")) for t in w.split()] if isinstance(w, str) else list(w)

    @cached_property
    def A(self):
        return WordAlgebra(self.quiver, self.word)

    @cached_property
    def M(self):
        return standard_ct(self.A)

    @cached_property
    def G(self):
        from lambdaw.quasihered import end_algebra
        return end_algebra(self.M)

    @cached_property
    def D(self):
        from lambdaw.quasihered import delta_system
        return delta_system(self.A, self.M, self.G)


_CACHE: dict[str, Fixture] = {}


def fixture(name: str) -> Fixture:
    if name not in _CACHE:
        _CACHE[name] = Fixture(name)
    return _CACHE[name]


@pytest.fixture(scope="session")
def fix_a():
    return fixture("fix_a")


@pytest.fixture(scope="session")
def fix_b():
    return fixture("fix_b")


@pytest.fixture(scope="session")
def fix_k():
    return fixture("fix_k")


@pytest.fixture(scope="session", params=["fix_a", "fix_b", "fix_k"])
def any_fix(request):
    return fixture(request.param)


@pytest.fixture
def record(request):
    """``record(k, ok, detail)`` stores the outcome of acceptance criterion ``k``."""
    table = request.config.__dict__.setdefault("acceptance_results", {})

    def put(k: int, ok: bool, detail: str = ""):
        prev = table.get(k)
        if prev is not None:
            ok, detail = prev[0] and ok, "; ".join(x for x in (prev[1], detail) if x)
        table[k] = (ok, detail)
    return put


def pytest_terminal_summary(terminalreporter):
    table = terminalreporter.config.__dict__.get("acceptance_results")
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(table):
        ok, detail = table[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
