"""Acceptance criteria, run exactly over the rationals.

Every criterion builds its objects from scratch so the measured time covers
the whole computation.  A line per criterion is printed in the terminal
summary (see ``conftest.pytest_terminal_summary``).
"""
from __future__ import annotations

import time

import pytest

import oracles
import property_checks as pc
from conftest import Fixture

from lambdaw import homological as hl
from lambdaw.coxeter import last_occurrences
from lambdaw.functorial import (WordSplit, identify_regular, subfactor_ct_check,
                                subfactor_end_check, syzygy_tensor_check, verify_functor_props)
from lambdaw.modops import ext1_dim, layers, omega_tilde, standard_ct
from lambdaw.quasihered import (characteristic_tilting, delta_filtration, delta_system,
                                duality_check, end_algebra, expected_projective_series,
                                heredity_chain, peel_delta_series, ringel_dual_check,
                                two_auslander_certificate)
from lambdaw.reps import Rep, is_isomorphic, isomorphic_indecomposables, is_local
from lambdaw.tilting import ct_graph, is_cluster_tilting, verify_omega_path

# composition-diagram dimension vectors of the triangle example, as transcribed
TRANSCRIBED_M = [(1, 0, 0), (1, 1, 0), (2, 1, 1), (3, 2, 1), (2, 2, 1), (4, 4, 2), (4, 2, 2)]
TRANSCRIBED_L7 = (1, 0, 1)


def fresh(name: str) -> Fixture:
    return Fixture(name)


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# 1 -------------------------------------------------------------------------------------

def triangle_reproduction():
    fx = fresh("fix_b")
    with Clock() as c:
        M = standard_ct(fx.A)
        L = [X for X, _ in layers(fx.A)]
    S = M.summands
    C = oracles.cartan(fx.n, fx.arrows)
    weights = [tuple(oracles.weight_dims(C, fx.word, j)) for j in range(1, 8)]
    indec = all(is_local(X) for X in S)
    distinct = all(not isomorphic_indecomposables(S[a], S[b]) for a in range(7) for b in range(a))
    simple2 = Rep.simple(L[4].graph, L[4].field, 1)
    return {"fx": fx, "M": M, "L": L, "seconds": c.seconds, "weights": weights,
            "indecomposable": indec, "distinct": distinct,
            "L5_is_S2": is_isomorphic(L[4], simple2)}


def test_criterion_1_triangle_summands_and_layers(record):
    r = triangle_reproduction()
    dims = [X.dims for X in r["M"].summands]
    ok = (len(dims) == 7 and r["indecomposable"] and r["distinct"] and r["L5_is_S2"]
          and dims == r["weights"] and dims[:6] == TRANSCRIBED_M[:6] and r["seconds"] < 5)
    record(1, ok, f"7 distinct indecomposables, oracle dims match, L5=S2, "
                  f"{r['seconds']:.2f}s")
    assert len(dims) == 7 and r["indecomposable"] and r["distinct"]
    assert dims == r["weights"]
    assert dims[:6] == TRANSCRIBED_M[:6]
    assert r["L5_is_S2"]
    assert r["seconds"] < 5


@pytest.mark.xfail(strict=True, reason=(
    "transcribed seventh diagram (4,2,2) and layer (1,0,1) disagree with the computed "
    "P_1/I_w P_1 = (4,4,2), L_7 = (1,2,1); the weight formula and the symmetric Cartan "
    "matrix of Lambda_w for this palindromic word both confirm the computed values"))
def test_criterion_1_matches_transcribed_diagrams(record):
    r = triangle_reproduction()
    dims = [X.dims for X in r["M"].summands]
    L7 = r["L"][6].dims
    ok = dims == TRANSCRIBED_M and L7 == TRANSCRIBED_L7
    record(1, ok, f"transcription: M7 computed {dims[6]} vs {TRANSCRIBED_M[6]}, "
                  f"L7 computed {L7} vs {TRANSCRIBED_L7}")
    assert dims == TRANSCRIBED_M
    assert L7 == TRANSCRIBED_L7


# 2 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["fix_a", "fix_b", "fix_k"])
def test_criterion_2_cluster_tilting_certificates(record, name):
    fx = fresh(name)
    with Clock() as c:
        M = standard_ct(fx.A)
        ok, diag = is_cluster_tilting(M, fx.A)
        ext = sum(ext1_dim(X, Y, fx.A) for X in M.summands for Y in M.summands)
    proj = [lab for lab, p in zip(M.labels, M.projective) if p]
    last = sorted(last_occurrences(fx.word).values())
    really_proj = [lab for lab, X in zip(M.labels, M.summands) if hl.is_projective(fx.A, X)]
    passed = (ok and ext == 0 and diag["summands"] == len(fx.word) and not diag["added_projectives"]
              and proj == last == really_proj and c.seconds < 10)
    record(2, passed, f"{name}: ext 0, {diag['summands']} summands, {c.seconds:.2f}s")
    assert ok and ext == 0
    assert diag["summands"] == len(fx.word) and not diag["added_projectives"]
    assert proj == last == really_proj
    assert c.seconds < 10


# 3 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["fix_a", "fix_b"])
def test_criterion_3_strongly_quasihereditary(record, name):
    fx = fresh(name)
    with Clock() as c:
        G = end_algebra(fx.M)
        D = delta_system(fx.A, fx.M, G)
        chain = heredity_chain(fx.A, fx.M, G)
        pd = [hl.projective_dimension(G, Dl, 4) for Dl in D.deltas]
        series = []
        for i in range(G.n):
            P = G.projective(i).rep
            series.append((delta_filtration(P, D).series(), peel_delta_series(P, D),
                           expected_projective_series(fx.word, i + 1)))
    steps_ok = all(s["idempotent"] and s["left_projective"] and s["right_projective"]
                   for s in chain["steps"])
    S = fx.M.summands
    via_layers = [[oracles.hom_dim(L, X) for X in S] for L, _ in layers(fx.A)]
    two_ways = all(D.realized) and [list(d.dims) for d in D.deltas] == via_layers
    serial = all(a == b == e for a, b, e in series)
    passed = (chain["verified"] and chain["length"] == len(fx.word) and steps_ok
              and all(p is not None and p <= 1 for p in pd) and serial and two_ways
              and c.seconds < 30)
    record(3, passed, f"{name}: chain {chain['length']}, pd Delta {pd}, {c.seconds:.2f}s")
    assert chain["verified"] and chain["length"] == len(fx.word) and steps_ok
    assert all(p is not None and p <= 1 for p in pd)
    assert serial
    assert two_ways
    assert c.seconds < 30


# 4 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["fix_a", "fix_b"])
def test_criterion_4_two_auslander(record, name):
    fx = fresh(name)
    with Clock() as c:
        cert = two_auslander_certificate(end_algebra(fx.M))
    passed = cert["verified"] and cert["gl_dim"] <= 3 and c.seconds < 60
    record(4, passed, f"{name}: gl.dim {cert['gl_dim']}, injective pd "
                      f"{sorted(set(cert['injective_pd'].values()))}, {c.seconds:.2f}s")
    assert cert["gl_dim"] is not None and cert["gl_dim"] <= 3
    assert all(p is not None and p <= 1 for p in cert["injective_pd"].values())
    assert cert["verified"]
    assert c.seconds < 60


# 5 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["fix_a", "fix_b"])
def test_criterion_5_characteristic_tilting_and_ringel_dual(record, name):
    fx = fresh(name)
    with Clock() as c:
        G = end_algebra(fx.M)
        D = delta_system(fx.A, fx.M, G)
        U = characteristic_tilting(fx.A, fx.M, G, D, samples=20, seed=0)
        R = ringel_dual_check(fx.A, fx.M, G, seed=0)
    passed = (U["verified"] and U["summands"] == len(fx.word) and U["in_F_delta"]
              and U["ext_vanishing"] and U["ext_vanishing_samples"] == 20
              and R["evaluation_bijective"] and R["verified"] and c.seconds < 60)
    record(5, passed, f"{name}: {U['summands']} summands, End {R['dim_end_omega']} = "
                      f"{R['dim_end_u']}, {c.seconds:.2f}s")
    assert U["summands"] == len(fx.word)
    assert all(p is not None and p <= 1 for p in U["pd"]) and U["rigid"]
    assert U["in_F_delta"]
    assert U["ext_vanishing"] and U["ext_vanishing_samples"] == 20
    assert R["evaluation_bijective"] and R["dim_end_omega"] == R["dim_end_u"]
    assert U["verified"] and R["verified"]
    assert c.seconds < 60


# 6 -------------------------------------------------------------------------------------

def test_criterion_6_duality(record):
    fx = fresh("fix_b")
    with Clock() as c:
        G = end_algebra(fx.M)
        D = delta_system(fx.A, fx.M, G)
        r = duality_check(fx.A, fx.M, G, D, sub_samples=20, delta_samples=20, seed=0)
    passed = r["verified"] and r["sub_samples"] >= 20 and r["delta_samples"] >= 20 \
        and c.seconds < 60
    record(6, passed, f"GF on {r['sub_samples']}, FG on {r['delta_samples']}, {c.seconds:.2f}s")
    assert r["gf_identity"] and r["sub_samples"] >= 20
    assert r["fg_identity"] and r["delta_samples"] >= 20
    assert r["f_lands_in_F_delta"]
    assert c.seconds < 60


# 7 -------------------------------------------------------------------------------------

def test_criterion_7_tensor_functor_and_subfactors(record):
    fx = fresh("fix_b")
    out = []
    with Clock() as c:
        for cut in (1, 2):
            S = WordSplit(fx.A, cut)
            out.append((S, identify_regular(S), verify_functor_props(S, 10, seed=0),
                        subfactor_ct_check(S, 10, seed=0), subfactor_end_check(S, seed=0)))
    a = len(set(fx.word))
    ok = c.seconds < 120
    lines = []
    for S, reg, fun, sct, send in out:
        n_v = len(S.v)
        ok = ok and reg["verified"] and fun["verified"] \
            and fun["pairs"] == n_v * n_v + 10 and sct["verified"] and sct["perpendicular"] \
            and sct["family_i"] + sct["family_ii"] == len(fx.word) - a \
            and sct["families_distinct"] and send["verified"] and send["ideal_equality"] \
            and send["end_bijective"]
        lines.append(f"{S.label()} families {sct['family_i']}/{sct['family_ii']}")
    record(7, ok, f"{'; '.join(lines)}, {c.seconds:.2f}s")
    for S, reg, fun, sct, send in out:
        assert reg["verified"], S.label()
        assert fun["verified"] and fun["pairs"] == len(S.v) ** 2 + 10, S.label()
        assert sct["perpendicular"] and sct["perpendicular_samples"] == 10
        assert sct["family_i"] + sct["family_ii"] == len(fx.word) - a
        assert sct["families_distinct"] and sct["cluster_tilting"]
        assert send["ideal_equality"] and send["end_bijective"] and send["verified"]
    assert c.seconds < 120


# 8 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name, max_nodes", [("fix_a", 100), ("fix_b", 200), ("fix_k", 40)])
def test_criterion_8_mutation_path_and_graph(record, name, max_nodes):
    fx = fresh(name)
    with Clock() as c:
        P = verify_omega_path(fx.A, fx.M)
        syz = syzygy_tensor_check(fx.A)
        O = omega_tilde(fx.M, fx.A)
        g = ct_graph(fx.M, fx.A, max_nodes=max_nodes, targets=[O])
    m, o = g.find(fx.M, fx.A), g.find(O, fx.A)
    expect = sum(1 for p in fx.M.projective if not p)
    degs = g.degrees()
    same = m is not None and o is not None and o in g.component(m)
    steps_ok = name != "fix_a" or len(P.schedule) == 1
    passed = (P.verified and syz["verified"] and same and steps_ok
              and all(d == expect for d in degs.values()) and c.seconds < 120)
    record(8, passed, f"{name}: {len(P.schedule)} mutations, {len(g.nodes)} nodes"
                      f"{' (partial)' if g.partial else ''}, degree {expect}, {c.seconds:.2f}s")
    assert P.endpoint_matches and P.verified and steps_ok
    assert syz["verified"]
    assert same
    assert degs and all(d == expect for d in degs.values())
    assert c.seconds < 120


# 9 -------------------------------------------------------------------------------------

PROPERTY_SEED = 20240
CASES = 50


def test_criterion_9_property_suites(record):
    failures = {}
    counts = {}
    with Clock() as c:
        for name in ("fix_a", "fix_b", "fix_k"):
            fx = fresh(name)
            for check in pc.CHECKS:
                bad = pc.run(fx, check, CASES, PROPERTY_SEED)
                counts[(name, check)] = CASES
                if bad:
                    failures[(name, check)] = bad[:3]
    passed = not failures and c.seconds < 120 and min(counts.values()) >= 50
    record(9, passed, f"{len(counts)} suites x {CASES} cases, {len(failures)} failing, "
                      f"{c.seconds:.2f}s")
    assert not failures, failures
    assert c.seconds < 120
