"""Randomized structural checks shared by the property tests and the acceptance run.

Each check draws its inputs from ``rng`` and returns ``(ok, info)``.
"""
from __future__ import annotations

import random

from lambdaw.modops import (OracleRefused, ext1_dim, ext1_euler_oracle, random_submodule,
                            syzygy_w)
from lambdaw.preproj import satisfies_relations
from lambdaw.reps import Rep, random_base_change
from lambdaw.tilting import mutate, same_object

import oracles


def sub_object(fx, rng: random.Random):
    return random_submodule(fx.A, rng, copies=rng.choice([1, 2]), generators=rng.choice([1, 2]))


def ext_symmetry(fx, rng):
    X, Y = sub_object(fx, rng), sub_object(fx, rng)
    a, b = ext1_dim(X, Y, fx.A), ext1_dim(Y, X, fx.A)
    return a == b, (X.dims, Y.dims, a, b)


def syzygy_invariance(fx, rng):
    X, Y = sub_object(fx, rng), sub_object(fx, rng)
    a = ext1_dim(X, Y, fx.A)
    b = ext1_dim(syzygy_w(X, fx.A)[0], syzygy_w(Y, fx.A)[0], fx.A)
    return a == b, (X.dims, Y.dims, a, b)


def mutation_involutive(fx, rng):
    M = fx.M
    free = [k for k, p in enumerate(M.projective) if not p]
    for _ in range(rng.randint(0, 3)):
        M, _ = mutate(M, rng.choice(free), fx.A, certify="incremental")
    k = rng.choice(free)
    N, _ = mutate(M, k, fx.A, certify="incremental")
    back, _ = mutate(N, k, fx.A, certify="incremental")
    return same_object(back, M), (k, M.dims())


def euler_agreement(fx, rng):
    X, Y = sub_object(fx, rng), sub_object(fx, rng)
    e = ext1_dim(X, Y, fx.A)
    try:
        o = ext1_euler_oracle(X, Y, fx.quiver)
    except OracleRefused:
        return fx.quiver.is_dynkin(), "refused"
    return (not fx.quiver.is_dynkin()) and e == o, (X.dims, Y.dims, e, o)


def _perturb(X: Rep, rng):
    mats = list(X.mats)
    live = [a for a, m in enumerate(mats) if m.nrows() and m.ncols()]
    if not live:
        return X
    a = rng.choice(live)
    m = mats[a].__class__(mats[a])
    r, c = rng.randrange(m.nrows()), rng.randrange(m.ncols())
    m[r, c] += rng.choice([1, -1, 2])
    mats[a] = m
    return Rep(X.graph, X.field, X.dims, mats)


def relation_validator(fx, rng):
    X = sub_object(fx, rng)
    if rng.random() < 0.5:
        X = random_base_change(X, rng)
    if rng.random() < 0.5:
        X = _perturb(X, rng)
    got = satisfies_relations(fx.quiver, X)
    want = oracles.relation_holds(fx.n, fx.arrows, X)
    return got == want, (X.dims, got, want)


CHECKS = {
    "ext_symmetry": ext_symmetry,
    "syzygy_invariance": syzygy_invariance,
    "mutation_involutive": mutation_involutive,
    "euler_agreement": euler_agreement,
    "relation_validator": relation_validator,
}


def run(fx, name: str, cases: int, seed: int) -> list:
    """Failures of ``CHECKS[name]`` over ``cases`` draws from one seeded generator."""
    rng = random.Random(f"{seed}:{fx.name}:{name}")
    bad = []
    for n in range(cases):
        ok, info = CHECKS[name](fx, rng)
        if not ok:
            bad.append((n, info))
    return bad
