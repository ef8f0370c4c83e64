import random

import pytest

from lambdaw import homological as hl
from lambdaw.modops import layers, omega_tilde
from lambdaw.quasihered import (characteristic_tilting, delta_filtration, duality_check,
                                expected_projective_series, global_dimension, heredity_chain,
                                peel_delta_series, quasihereditary_report, random_delta_filtered,
                                ringel_dual_check, two_auslander_certificate)
from lambdaw.algebra import HomModule

import oracles


def test_standard_modules_are_homs_from_layers(fix_a, fix_b):
    for fx in (fix_a, fix_b):
        S = fx.M.summands
        for i, (L, _) in enumerate(layers(fx.A)):
            assert list(fx.D.deltas[i].dims) == [oracles.hom_dim(L, X) for X in S]
        assert all(fx.D.realized) and all(fx.D.yoneda_ok)


def test_standard_modules_have_no_earlier_factors(fix_b):
    for i, D in enumerate(fix_b.D.deltas):
        assert D.dims[i] == 1 and all(D.dims[r] == 0 for r in range(i))


def test_projective_series_follows_the_letter_chain(fix_b):
    assert expected_projective_series(fix_b.word, 7) == [7, 4, 1]
    assert expected_projective_series(fix_b.word, 5) == [5, 3]
    P7 = fix_b.G.projective(6).rep
    assert delta_filtration(P7, fix_b.D).series() == [7, 4, 1]
    assert peel_delta_series(P7, fix_b.D) == [7, 4, 1]


def test_gamma_simple_is_not_delta_filtered(fix_a):
    f = delta_filtration(fix_a.G.simple(0), fix_a.D)
    assert not f.filtered and f.failure == 1


def test_standard_modules_have_projective_dimension_at_most_one(fix_a, fix_b):
    assert [hl.projective_dimension(fix_a.G, D, 4) for D in fix_a.D.deltas] == [0, 0, 1]
    assert [hl.projective_dimension(fix_b.G, D, 4) for D in fix_b.D.deltas] == [0, 0, 0, 1, 1, 1, 1]


@pytest.mark.parametrize("name, length", [("fix_a", 3), ("fix_b", 7)])
def test_heredity_chain_length_equals_word_length(name, length, fix_a, fix_b):
    fx = {"fix_a": fix_a, "fix_b": fix_b}[name]
    chain = heredity_chain(fx.A, fx.M, fx.G)
    assert chain["verified"] and chain["length"] == length
    for step in chain["steps"]:
        assert step["idempotent"] and step["left_projective"] and step["right_projective"]


def test_quasihereditary_report_is_verified(fix_b):
    assert quasihereditary_report(fix_b.A, fix_b.M, fix_b.G, fix_b.D)["verified"]


def test_global_dimension_three(fix_a, fix_b):
    assert global_dimension(fix_a.G)[0] == 3
    cert = two_auslander_certificate(fix_b.G)
    assert cert["gl_dim"] == 3 and cert["verified"]
    assert set(cert["injective_pd"].values()) <= {0, 1}


def test_characteristic_tilting_dimensions_match_oracle(fix_a):
    U = characteristic_tilting(fix_a.A, fix_a.M, fix_a.G, fix_a.D, samples=5)
    Om = omega_tilde(fix_a.M, fix_a.A).summands
    assert U["verified"] and U["summands"] == 3
    assert U["dims"] == [[oracles.hom_dim(X, Y) for Y in fix_a.M.summands] for X in Om]


def test_ringel_dual_dimensions(fix_a):
    R = ringel_dual_check(fix_a.A, fix_a.M, fix_a.G)
    assert R["verified"] and R["cartan_transposed_equal"]
    Om = omega_tilde(fix_a.M, fix_a.A).summands
    assert R["dim_end_omega"] == sum(oracles.hom_dim(X, Y) for X in Om for Y in Om)
    assert R["dim_end_omega_twice"] == 7


def test_duality_on_small_samples(fix_a):
    assert duality_check(fix_a.A, fix_a.M, fix_a.G, fix_a.D, 5, 5, seed=3)["verified"]


def test_random_delta_filtered_modules_are_filtered(fix_b):
    rng = random.Random(0)
    for _ in range(3):
        Y = random_delta_filtered(fix_b.G, fix_b.D, rng)
        f = delta_filtration(Y, fix_b.D)
        assert f.filtered
        assert sum(m * fix_b.D.deltas[i].dim for i, m in enumerate(f.multiplicities)) == Y.dim


def test_hom_module_of_regular_is_projective_over_gamma(fix_b):
    Y = HomModule(fix_b.G, fix_b.A.regular()).rep
    assert hl.projective_dimension(fix_b.G, Y, 2) == 1 or \
        hl.projective_dimension(fix_b.G, Y, 2) == 0
    assert delta_filtration(Y, fix_b.D).filtered
