import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from greedoidlab import axioms, core, generators, paths
from greedoidlab.errors import BadArgs, NotAPath, NotFeasible, NotInterval, NotLocalForest, NotSubfeasible
from greedoidlab.instances import load_fixture


def fixture(name):
    return load_fixture(name).build()


def test_delta_examples():
    g = fixture("shadow_strict")
    assert paths.delta(g, g.mask("b", "c")) == g.mask("b")
    assert paths.delta(g, g.mask("a", "d")) == g.mask("a", "d")
    lpg = fixture("lpg_counterexample")
    assert paths.delta(lpg, lpg.mask("x", "z")) == lpg.mask("x")
    with pytest.raises(NotSubfeasible):
        paths.delta(g, g.mask("b", "d"))


def test_delta_needs_interval():
    g = core.explicit(["a", "b", "c"], [[], ["a"], ["c"], ["a", "b"], ["c", "b"], ["a", "b", "c"]])
    with pytest.raises(NotInterval):
        paths.delta(g, 0)


def test_path_examples():
    lpg = fixture("lpg_counterexample")
    xzu = lpg.mask("x", "z", "u")
    assert paths.path(lpg, xzu, lpg.ground.index("z")) == xzu
    assert paths.path(lpg, xzu, lpg.ground.index("x")) == lpg.mask("x")
    fig1 = fixture("fig1")
    assert paths.path(fig1, fig1.mask("a", "c"), fig1.ground.index("c")) == fig1.mask("a", "c")
    with pytest.raises(BadArgs):
        paths.path(fig1, fig1.mask("a", "c"), fig1.ground.index("b"))


def test_path_ordering_examples():
    fig1 = fixture("fig1")
    assert fig1.names(paths.path_ordering(fig1, fig1.mask("a", "c"))) == ("a", "c")
    assert fig1.names(paths.path_ordering(fig1, fig1.mask("b"))) == ("b",)
    fig2 = fixture("fig2")
    assert fig2.names(paths.path_ordering(fig2, fig2.mask("x", "b", "a"))) == ("x", "b", "a")
    with pytest.raises(NotAPath):
        paths.path_ordering(fig2, fig2.mask("x", "z"))
    with pytest.raises(NotLocalForest):
        paths.path_ordering(fixture("shadow_strict"), 1)


def test_shadow_examples():
    g = fixture("shadow_strict")
    assert paths.shadow_vector(g, g.mask("a", "b", "c")) == (2, 2, 1, 0)
    assert paths.shadow_vector(g, g.mask("a", "c", "d")) == (3, 0, 1, 2)
    assert paths.shadow(g, g.mask("a", "b", "c"), g.ground.index("d")) == 0
    with pytest.raises(NotFeasible):
        paths.shadow_vector(g, g.mask("c"))


def test_matroid_shadow_is_incidence_vector():
    u = core.uniform_matroid(5, 3)
    for b in u.bases:
        assert paths.shadow_vector(u, b) == tuple(b >> i & 1 for i in range(5))


def test_objective_identity_examples():
    lpg = fixture("lpg_counterexample")
    c = (3, 2, 0, 0)
    assert paths.objfn_sides(lpg, lpg.mask("x", "z", "u"), c) == (9, 9)
    assert paths.objfn_sides(lpg, lpg.mask("x", "y", "z"), c) == (10, 10)
    assert paths.objfn_sides(lpg, 0, c) == (0, 0)


def test_branching_closed_forms_match():
    rng = random.Random(5)
    for _ in range(60):
        g = generators.branching(rng)
        for a in g.family:
            for x in core.bits(a):
                assert paths.branching_path(g, a, x) == paths.path(g, a, x)
            for x in range(g.n):
                assert paths.branching_shadow(g, a, x) == paths.shadow(g, a, x)


def _local_poset(rng):
    while True:
        g = rng.choice([generators.poset_ideals, generators.antimatroid, generators.greedoid])(rng, rng.randint(1, 6))
        if axioms.classify(g).is_local_poset:
            return g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_paths_and_shadows_match_naive(seed):
    rng = random.Random(seed)
    g = _local_poset(rng)
    fam = oracles.family_of(g)
    for a in fam:
        m = oracles.to_mask(g, a)
        for x in a:
            assert set(g.labels(paths.path(g, m, g.ground.index(x)))) == oracles.path(fam, a, x)
        for x in g.elements:
            assert paths.shadow(g, m, g.ground.index(x)) == oracles.shadow(fam, a, x)
    assert {frozenset(g.labels(p)) for p in paths.all_paths(g)} == oracles.all_paths(fam)
    for x in oracles.powerset(g.elements):
        if oracles.subfeasible(fam, x):
            assert set(g.labels(paths.delta(g, oracles.to_mask(g, x)))) == oracles.delta(fam, x)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_objective_identity_random(seed):
    rng = random.Random(seed)
    g = _local_poset(rng)
    c = generators.weights(rng, g.n, -5, 9)
    for a in g.family:
        lhs, rhs = paths.objfn_sides(g, a, c)
        assert lhs == rhs and isinstance(lhs, Fraction)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_rank_sum_and_intersection_lemmas(seed):
    rng = random.Random(seed)
    g = _local_poset(rng)
    assert paths.check_rank_sum_inequality(g) == (True, None)
    assert paths.check_path_intersection(g) == (True, None)
    assert axioms.check_supermodularity(g) == (True, None)
