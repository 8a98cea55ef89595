import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from greedoidlab import axioms, core, generators, greedy
from greedoidlab.errors import BadArgs, NotAViolation, NotInterval, NotLocalForest
from greedoidlab.greedy import Objective
from greedoidlab.instances import load_fixture
from greedoidlab.paths import all_paths


def load(name):
    inst = load_fixture(name)
    g = inst.build()
    return g, inst


@pytest.fixture(scope="module")
def fig1():
    g, inst = load("fig1")
    return g, inst.objective_for(g)


@pytest.fixture(scope="module")
def lpg():
    g, inst = load("lpg_counterexample")
    return g, inst.objective_for(g)


@pytest.fixture(scope="module")
def fig2():
    g, inst = load("fig2")
    return g, inst.objective_for(g)


def constant(g, value=1):
    return Objective.set_table({m: value for m in g.family})


def test_greedy_fig1(fig1):
    g, w = fig1
    t = greedy.greedy(g, w)
    assert (t.base, t.value) == (g.mask("a", "c"), 3)
    assert g.names(t.order) == ("a", "c")
    assert t.picks[0].continuations == g.mask("a", "b")


def test_greedy_local_poset_counterexample(lpg):
    g, w = lpg
    t = greedy.greedy(g, w)
    assert (t.base, t.value) == (g.mask("x", "y", "z"), 10)
    assert g.names(t.order) == ("y", "x", "z")


def test_greedy_on_rank_zero():
    g = core.explicit(["e"], [[]])
    t = greedy.greedy(g, Objective.set_table({0: 7}))
    assert (t.base, t.value, t.picks) == (0, 7, ())


def test_brute_force_examples(fig1, lpg):
    g, w = fig1
    assert greedy.brute_force_optimum(g, w) == (g.mask("b", "c"), 4)
    g, w = lpg
    assert greedy.brute_force_optimum(g, w) == (g.mask("x", "z", "u"), 9)
    single = core.explicit(["e"], [[], ["e"]])
    assert greedy.brute_force_optimum(single, Objective.linear([3])) == (1, 3)


def test_all_runs_and_bad_tie_rule(fig1):
    g, w = fig1
    runs = greedy.greedy(g, constant(g), "all_runs")
    assert sorted(t.base for t in runs) == sorted([g.mask("a", "c"), g.mask("b", "c")])
    with pytest.raises(BadArgs):
        greedy.greedy(g, w, "random")


def test_kl_fig2_lifted_path_sum(fig2):
    g, w = fig2
    seq_xba = tuple(g.ground.index(e) for e in ("x", "b", "a"))
    seq_zba = tuple(g.ground.index(e) for e in ("z", "b", "a"))
    assert (w.value_of(g, seq_xba), w.value_of(g, seq_zba)) == (11, 10)
    ok, witness = greedy.check_kl_conditions(g, w)
    assert not ok
    assert witness == (1, seq_xba, seq_zba)


def test_kl_fig1_and_constant(fig1):
    g, w = fig1
    ok, witness = greedy.check_kl_conditions(g, w)
    assert not ok
    assert (witness[0], g.names(witness[1]), g.names(witness[2])) == (1, ("a", "c"), ("b", "c"))
    assert greedy.check_kl_conditions(g, constant(g)) == (True, None)


def test_condition_3(fig1):
    g, w = fig1
    assert greedy.check_condition_3(g, w) == (True, None)
    assert greedy.check_condition_3(g, constant(g)) == (True, None)
    # any objective passes on this greedoid: Gamma(B) is a single element for every nonempty B
    zeroed = dict(w.table)
    zeroed[g.mask("a", "c")] = Fraction(0)
    assert greedy.check_condition_3(g, Objective.set_table(zeroed))[0]


def test_condition_3_can_fail():
    g = core.uniform_matroid(3, 2, ["a", "b", "c"])
    table = {m: Fraction(0) for m in g.family}
    table[g.mask("a")] = Fraction(1)
    table[g.mask("b", "c")] = Fraction(5)
    ok, witness = greedy.check_condition_3(g, Objective.set_table(table))
    assert not ok
    assert witness == (0, g.mask("b"), g.ground.index("a"), g.ground.index("c"))


def test_condition_3_does_not_give_optimality(fig1):
    g, w = fig1
    assert greedy.check_condition_3(g, w)[0]
    assert greedy.greedy(g, w).value < greedy.brute_force_optimum(g, w)[1]


def test_condition_6_examples(fig1, lpg):
    g, w = fig1
    assert greedy.check_condition_6(g, w) == (False, (0, g.mask("b", "c"), g.ground.index("a")))
    u = core.uniform_matroid(2, 1)
    assert greedy.check_condition_6(u, Objective.linear([1, 1])) == (True, None)
    g, w = lpg
    ok, witness = greedy.check_condition_6(g, w)
    assert not ok and greedy.condition_6_violated_by(g, w, *witness)


def test_condition_7_examples(fig1, lpg):
    g, w = lpg
    assert not greedy.check_condition_7(g, w)[0]
    assert greedy.check_condition_7(g, constant(g)) == (True, None)
    g, _ = fig1
    assert greedy.check_condition_7(g, Objective.path_sum([1, 2, 1])) == (True, None)
    bad = core.explicit(["a", "b", "c"], [[], ["a"], ["c"], ["a", "b"], ["c", "b"], ["a", "b", "c"]])
    with pytest.raises(NotInterval):
        greedy.check_condition_7(bad, constant(bad))


def test_set_conditions_reject_ordered_objectives(fig1):
    g, _ = fig1
    with pytest.raises(BadArgs):
        greedy.check_condition_6(g, Objective.ordered_table({(): 0}))


def test_monotone_f_examples(fig1):
    g, _ = fig1
    c = (Fraction(1), Fraction(2), Fraction(1))
    assert greedy.check_monotone_f(g, lambda p: sum((c[e] for e in core.bits(p)), Fraction(0)))[0]
    assert greedy.check_monotone_f(g, lambda p: max(c[e] for e in core.bits(p)))[0]
    ok, witness = greedy.check_monotone_f(g, lambda p: -core.popcount(p))
    assert not ok and witness[0] == "i"
    with pytest.raises(NotLocalForest):
        greedy.check_monotone_f(load("shadow_strict")[0], lambda p: 0)


def test_violation_minor_fig1(fig1):
    g, w = fig1
    h, wh = greedy.violation_minor(g, w, (0, g.mask("b", "c"), g.ground.index("a")))
    assert h.family == g.family and h.elements == g.elements
    assert greedy.greedy(h, wh).value == 3
    assert greedy.brute_force_optimum(h, wh)[1] == 4
    with pytest.raises(NotAViolation):
        greedy.violation_minor(g, w, (0, g.mask("a", "c"), g.ground.index("b")))


def test_violation_witnesses_differ_in_two_elements():
    # B = A + b makes b a continuation of A, so w(A+x) >= w(B) and the swap
    # y = b always works; every witness has |B - A| >= 2 and H has >= 3 elements
    rng = random.Random(11)
    seen = 0
    for _ in range(200):
        g, obj = _table_instance(rng)
        for b in g.bases:
            for a in g.members:
                if a & ~b:
                    continue
                for x in range(g.n):
                    if greedy.condition_6_violated_by(g, obj, a, b, x):
                        assert core.popcount(b & ~a) >= 2
                        h, _ = greedy.violation_minor(g, obj, (a, b, x))
                        assert set(h.elements) == set(g.labels(b & ~a)) | {g.elements[x]}
                        seen += 1
    assert seen > 0


def test_violation_minor_local_poset(lpg):
    g, w = lpg
    ok, witness = greedy.check_condition_6(g, w)
    h, wh = greedy.violation_minor(g, w, witness)
    assert greedy.suboptimal_runs(h, wh)


def test_ordered_greedy_first_picks(fig2, lpg):
    g, w = fig2
    assert g.elements[greedy.ordered_greedy(g, w).order[0]] == "x"
    g, w = lpg
    assert g.elements[greedy.ordered_greedy(g, w).order[0]] == "y"
    single = core.explicit(["e"], [[], ["e"]])
    assert greedy.ordered_greedy(single, Objective.ordered_table({(): 0, (0,): 1})).order == (0,)


def _table_instance(rng):
    n = rng.randint(1, 5)
    g = rng.choice([generators.greedoid, generators.antimatroid, generators.poset_ideals])(rng, n)
    return g, Objective.set_table(generators.set_function(rng, g, -3, 3), rng.choice(["max", "min"]))


def _score(g, obj):
    return lambda s: obj.score(g, oracles.to_mask(g, s))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_checks_match_naive(seed):
    rng = random.Random(seed)
    g, obj = _table_instance(rng)
    fam = oracles.family_of(g)
    ground = frozenset(g.elements)
    score = _score(g, obj)
    assert greedy.check_condition_6(g, obj)[0] == oracles.condition_6(fam, ground, score)
    if axioms.classify(g).is_interval:
        assert greedy.check_condition_7(g, obj)[0] == oracles.condition_7(fam, ground, score)
    reachable = {obj.sign * t.value for t in greedy.greedy(g, obj, "all_runs")}
    assert reachable == oracles.greedy_values(fam, ground, score)
    best = max(score(b) for b in oracles.bases(fam, ground))
    assert obj.score(g, greedy.brute_force_optimum(g, obj)[0]) == best


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_condition_6_gives_optimal_runs(seed):
    rng = random.Random(seed)
    g, obj = _table_instance(rng)
    ok, witness = greedy.check_condition_6(g, obj)
    if ok:
        assert not greedy.suboptimal_runs(g, obj)
    else:
        assert greedy.condition_6_violated_by(g, obj, *witness)
        h, wh = greedy.violation_minor(g, obj, witness)
        assert greedy.suboptimal_runs(h, wh)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_path_objectives_on_branchings(seed):
    rng = random.Random(seed)
    g = generators.branching(rng)
    c = generators.weights(rng, g.n)
    for obj in (Objective.path_sum(c), Objective.bottleneck(c)):
        t = greedy.greedy(g, obj)
        assert t.value == greedy.brute_force_optimum(g, obj)[1]
    paths = all_paths(g)
    assert greedy.check_monotone_f(g, {p: sum((c[e] for e in core.bits(p)), Fraction(0)) for p in paths})[0]
    assert greedy.check_monotone_f(g, {p: max(c[e] for e in core.bits(p)) for p in paths})[0]
