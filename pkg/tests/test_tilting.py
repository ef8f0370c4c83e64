import random

import pytest

from lambdaw.modops import chain_map, ext1_dim, omega_tilde
from lambdaw.reps import Rep, is_isomorphic, isomorphic_indecomposables
from lambdaw.tilting import (MutationError, ct_graph, incoming_arrows, is_cluster_tilting,
                             is_left_approximation, is_rigid, match_indecomposables,
                             minimal_left_approx, minimal_right_approx, mutate, omega_schedule,
                             same_object, stage_position, verify_omega_path)


def simples(fx):
    G = fx.M.summands[0].graph
    return [Rep.simple(G, fx.A.field, v) for v in range(fx.n)]


def test_a2_simples_are_not_rigid_together(fix_a):
    S1, S2 = simples(fix_a)
    assert not is_rigid([S1, S2], fix_a.A)
    assert is_rigid([S1], fix_a.A) and is_rigid([S2], fix_a.A)


def test_a2_simple_plus_projectives_is_cluster_tilting(fix_a):
    S1, S2 = simples(fix_a)
    P1, P2 = fix_a.A.projectives()
    ok, diag = is_cluster_tilting([S2, P1, P2], fix_a.A)
    assert ok and diag["summands"] == 3
    ok, diag = is_cluster_tilting([S2], fix_a.A)
    assert ok and diag["added_projectives"] == [1, 2]


def test_standard_objects_are_cluster_tilting(any_fix):
    ok, diag = is_cluster_tilting(any_fix.M, any_fix.A)
    assert ok and diag["summands"] == len(any_fix.word)


def test_dropping_a_summand_breaks_maximality(fix_b):
    for k in range(4):  # non-projective positions
        parts = [X for j, X in enumerate(fix_b.M.summands) if j != k]
        ok, diag = is_cluster_tilting(parts, fix_b.A)
        assert not ok and diag["summands"] == 6 and diag["rigid"]


def test_approximation_of_simple_by_projectives(fix_a):
    S1, _ = simples(fix_a)
    P1, P2 = fix_a.A.projectives()
    ap = minimal_left_approx(S1, [P1, P2])
    assert ap.indices == [1]
    assert ap.map.is_injective() and ap.target.dims == P2.dims
    assert is_left_approximation(S1, ap.components, [P1, P2])


def test_chain_epimorphism_is_minimal_right_approximation(fix_b):
    # M4 -> M1 is the minimal right approximation of M1 by the other summands
    M = fix_b.M.summands
    others = [X for j, X in enumerate(M) if j != 0]
    ap = minimal_right_approx(M[0], others)
    assert [others[i] for i in ap.indices] == [M[3]]
    assert ap.map.is_surjective()
    f = chain_map(fix_b.A, 4, 1)
    assert ap.map.kernel().dims == f.kernel().dims
    assert is_isomorphic(ap.map.kernel().rep(), f.kernel().rep())


def test_mutation_of_a2_simple(fix_a):
    N, pair = mutate(fix_a.M, 0, fix_a.A)
    assert pair.removed.dims == (1, 0) and pair.added.dims == (0, 1)
    assert pair.middle.dims == (1, 1)
    assert N.dims() == [(0, 1), (1, 1), (1, 1)]
    assert pair.inclusion.is_injective() and pair.projection.is_surjective()


def test_mutation_at_projective_position_is_refused(fix_a):
    with pytest.raises(MutationError):
        mutate(fix_a.M, 1, fix_a.A)


def test_triangle_first_mutation_gives_kernel_of_chain_map(fix_b):
    N, pair = mutate(fix_b.M, 0, fix_b.A)
    K = chain_map(fix_b.A, 4, 1).kernel().rep()
    assert isomorphic_indecomposables(N.summands[0], K)
    assert pair.middle_indices and ext1_dim(pair.added, pair.removed, fix_b.A) == 1


@pytest.mark.parametrize("certify", ["full", "incremental"])
def test_mutation_is_involutive(any_fix, certify):
    M, A = any_fix.M, any_fix.A
    for k, p in enumerate(M.projective):
        if p:
            continue
        N, _ = mutate(M, k, A, certify=certify)
        back, _ = mutate(N, k, A, certify=certify)
        assert same_object(back, M)
        assert isomorphic_indecomposables(back.summands[k], M.summands[k])


def test_exchange_sequence_dimensions_add_up(fix_b):
    for k in range(4):
        _, pair = mutate(fix_b.M, k, fix_b.A)
        assert tuple(a + b for a, b in zip(pair.removed.dims, pair.added.dims)) == pair.middle.dims


def test_match_indecomposables_finds_permutation(fix_b):
    S = fix_b.M.summands
    rng = random.Random(0)
    perm = list(range(7))
    rng.shuffle(perm)
    assert match_indecomposables(S, [S[p] for p in perm]) == [perm.index(j) for j in range(7)]
    assert match_indecomposables(S, S[:6] + [S[0]]) is None


@pytest.mark.parametrize("word, schedule", [
    ([1, 2, 1], [1]),
    ([1, 2, 3, 1, 3, 2, 1], [1, 4, 2, 3, 1]),
    ([1, 2, 1, 2], [1, 2]),
    ([1, 2], []),
])
def test_mutation_schedules(word, schedule):
    assert omega_schedule(word) == schedule


def test_stage_position_moves_first_letter_down_the_chain():
    w = [1, 2, 3, 1, 3, 2, 1]
    assert stage_position(w, 4) == 1 and stage_position(w, 7) == 4
    assert stage_position(w, 5) == 5


def test_gabriel_arrows_agree_with_ext_between_simples(fix_b):
    inc = incoming_arrows(fix_b.M.summands, 3)
    assert inc["agree"]
    assert 6 in inc["sources"]


def test_mutation_path_reaches_syzygy_object(any_fix):
    P = verify_omega_path(any_fix.A, any_fix.M)
    assert P.verified and P.endpoint_matches
    assert len(P.exchanges) == len(P.schedule)
    target = omega_tilde(any_fix.M, any_fix.A)
    assert match_indecomposables(P.objects[-1].summands, target.summands) is not None


def test_triangle_path_checks(fix_b):
    P = verify_omega_path(fix_b.A, fix_b.M, certify="incremental")
    assert P.stage_one_length == 2
    assert P.checkpoint["verified"]
    assert [c["sources"] for c in P.two_arrow_checks] == [[1, 7]]


def test_a2_graph_has_two_objects(fix_a):
    g = ct_graph(fix_a.M, fix_a.A)
    assert len(g.nodes) == 2 and g.undirected_edges() == {(0, 1)}
    assert not g.partial and g.symmetric()
    O = omega_tilde(fix_a.M, fix_a.A)
    assert g.find(O, fix_a.A) == 1


def test_kronecker_graph_is_partial_under_caps(fix_k):
    g = ct_graph(fix_k.M, fix_k.A, max_nodes=6)
    assert g.partial and g.capped
    assert all(d == 2 for d in g.degrees().values())


def test_graph_json_and_dot(fix_a):
    g = ct_graph(fix_a.M, fix_a.A)
    js = g.to_json()
    assert len(js["nodes"]) == 2
    dot = g.to_dot(dims=True)
    assert dot.startswith("graph") or dot.startswith("digraph")
