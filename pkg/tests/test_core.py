import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from greedoidlab import core, generators
from greedoidlab.core import Edge, GroundSet, MixedGraph
from greedoidlab.errors import (
    AxiomViolation, BadArgs, BadParams, ContractNotFeasible, NoWitness, NotFeasible, SizeLimit,
)
from greedoidlab.instances import load_fixture


@pytest.fixture(scope="module")
def fig1():
    return load_fixture("fig1").build()


@pytest.fixture(scope="module")
def lpg():
    return load_fixture("lpg_counterexample").build()


@pytest.fixture(scope="module")
def strict():
    return load_fixture("shadow_strict").build()


def sets(g):
    return {frozenset(g.labels(m)) for m in g.family}


def test_fig1_branching_family(fig1):
    assert sets(fig1) == {frozenset(), frozenset("a"), frozenset("b"), frozenset("ac"), frozenset("bc")}


def test_explicit_accepts_local_poset_example(lpg):
    assert len(lpg.family) == 7


def test_explicit_requires_empty_set():
    with pytest.raises(AxiomViolation):
        core.explicit(["a"], [["a"]])


def test_explicit_reports_exchange_pair():
    with pytest.raises(AxiomViolation) as info:
        core.explicit(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"], ["c"]])
    x, y = info.value.pair
    assert x is not None and y is not None


def test_size_limit():
    with pytest.raises(SizeLimit):
        GroundSet(tuple(f"e{i}" for i in range(21)))


def test_duplicate_labels_rejected():
    with pytest.raises(BadParams):
        GroundSet(("a", "a"))


def test_is_feasible(fig1, strict):
    assert not core.is_feasible(fig1, fig1.mask("a", "b"))
    assert core.is_feasible(fig1, 0)
    assert core.is_feasible(strict, strict.mask("a", "d"))


def test_rank(strict, fig1):
    assert core.rank(strict, strict.mask("c", "d")) == 0
    assert core.rank(fig1, 0) == 0
    assert core.rank(strict, strict.ground.full) == 3


def test_bases_of(strict, fig1):
    assert core.bases_of(strict, strict.ground.full) == {strict.mask("a", "b", "c"), strict.mask("a", "c", "d")}
    assert core.bases_of(fig1, fig1.ground.full) == {fig1.mask("a", "c"), fig1.mask("b", "c")}
    assert core.bases_of(fig1, 0) == {0}


def test_continuations(fig1):
    assert core.continuations(fig1, 0) == fig1.mask("a", "b")
    assert core.continuations(fig1, fig1.mask("a")) == fig1.mask("c")
    assert core.continuations(fig1, fig1.mask("a", "c")) == 0
    with pytest.raises(NotFeasible):
        core.continuations(fig1, fig1.mask("c"))


def test_augment(fig1, lpg):
    assert fig1.elements[core.augment(fig1, 0, fig1.mask("b", "c"))] == "b"
    assert fig1.elements[core.augment(fig1, 0, fig1.mask("a"))] == "a"
    assert lpg.elements[core.augment(lpg, lpg.mask("y"), lpg.mask("x", "z", "u"))] == "x"
    with pytest.raises(BadArgs):
        core.augment(fig1, fig1.mask("a"), fig1.mask("b"))
    broken = core.Greedoid(GroundSet(("a", "b", "c")), frozenset({0, 1, 6}))
    with pytest.raises(NoWitness):
        core.augment(broken, 0, 6)


def test_feasible_ordering(fig1, lpg):
    assert fig1.names(core.feasible_ordering(fig1, fig1.mask("a", "c"))) == ("a", "c")
    assert core.feasible_ordering(fig1, 0) == ()
    assert lpg.names(core.feasible_ordering(lpg, lpg.mask("x", "y"))) == ("x", "y")
    with pytest.raises(NotFeasible):
        core.feasible_ordering(fig1, fig1.mask("c"))


def test_minor_examples(fig1, lpg):
    h = core.minor(fig1, fig1.mask("b"))
    assert sets(h) == {frozenset(), frozenset("a"), frozenset("ac")}
    same = core.minor(fig1)
    assert same.family == fig1.family and same.elements == fig1.elements
    c = core.minor(lpg, 0, lpg.mask("x"))
    assert sets(c) == {frozenset(), frozenset("y"), frozenset("u"), frozenset("yz"), frozenset("zu")}
    with pytest.raises(ContractNotFeasible):
        core.minor(fig1, 0, fig1.mask("c"))
    with pytest.raises(BadParams):
        core.minor(fig1, fig1.mask("a"), fig1.mask("a"))


def test_uniform_and_graphic():
    u = core.uniform_matroid(4, 2)
    assert len(u.family) == 1 + 4 + 6 and u.rank == 2
    tri = MixedGraph(("1", "2", "3"), (Edge("a", "1", "2"), Edge("b", "2", "3"), Edge("c", "1", "3")))
    k3 = core.graphic_matroid(tri)
    assert len(k3.family) == 7 and k3.rank == 2
    with pytest.raises(BadParams):
        core.uniform_matroid(2, 3)


def test_branching_respects_directions():
    g = MixedGraph(("r", "v", "u"), (Edge("a", "r", "v", True), Edge("b", "u", "v", True), Edge("c", "v", "u")), "r")
    br = core.branching(g)
    assert sets(br) == {frozenset(), frozenset("a"), frozenset("ac")}


def test_direct_sum_and_rooted_extension():
    u = core.uniform_matroid(3, 2, ["p", "q", "s"])
    fig1 = load_fixture("fig1").build()
    ds = core.direct_sum(u, fig1)
    assert len(ds.family) == len(u.family) * len(fig1.family)
    with pytest.raises(BadParams):
        core.direct_sum(fig1, fig1)
    x = u.mask("p", "q")
    ext = core.rooted_extension(u, x, [u.ground.index("q"), u.ground.index("p")])
    assert sets(ext) == {frozenset(), frozenset("q"), frozenset("pq")}


def test_construct_dispatch():
    assert core.construct("uniform_matroid", n=3, k=1).rank == 1
    with pytest.raises(BadParams):
        core.construct("nope")
    with pytest.raises(BadParams):
        core.construct("uniform_matroid", size=3)


def test_to_fraction_rejects_floats():
    assert core.to_fraction("2/3") == Fraction(2, 3)
    with pytest.raises(BadParams):
        core.to_fraction(0.5)
    with pytest.raises(BadParams):
        core.to_fraction(True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5))
def test_tables_match_naive_definitions(seed, n):
    g = generators.greedoid(random.Random(seed), n)
    fam = oracles.family_of(g)
    assert oracles.is_greedoid(fam)
    ground = frozenset(g.elements)
    for a in oracles.powerset(ground):
        m = oracles.to_mask(g, a)
        assert g.rank_table[m] == oracles.rank(fam, a)
        assert bool(g.subfeasible_table[m]) == oracles.subfeasible(fam, a)
    assert {frozenset(g.labels(b)) for b in g.bases} == oracles.bases(fam, ground)
    for a in fam:
        m = oracles.to_mask(g, a)
        assert set(g.labels(core.continuations(g, m))) == oracles.continuations(fam, a, ground)
        orders = {g.names(o) for o in core.feasible_orderings(g, m)}
        assert orders == set(oracles.orderings(fam, a))


@settings(max_examples=150, deadline=None)
@given(st.sets(st.integers(0, 15)).map(lambda s: s | {0}))
def test_explicit_validator_matches_naive(masks):
    labels = ("a", "b", "c", "d")
    fam = {frozenset(labels[i] for i in range(4) if m >> i & 1) for m in masks}
    if oracles.is_greedoid(fam):
        core.explicit(labels, [sorted(f) for f in fam])
    else:
        with pytest.raises(AxiomViolation):
            core.explicit(labels, [sorted(f) for f in fam])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_minors_match_definition(seed):
    rng = random.Random(seed)
    g = generators.greedoid(rng, rng.randint(1, 5))
    contracted = rng.choice(sorted(g.family))
    free = [i for i in range(g.n) if not contracted >> i & 1]
    deleted = sum(1 << i for i in free if rng.random() < 0.3)
    h = core.minor(g, deleted, contracted)
    fam = oracles.family_of(g)
    gone = set(g.labels(deleted))
    con = frozenset(g.labels(contracted))
    want = {f - con for f in fam if con <= f and not f & gone}
    assert oracles.family_of(h) == want
    assert oracles.is_greedoid(want)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_branching_sets_are_rooted_trees(seed):
    rng = random.Random(seed)
    graph = generators.mixed_graph(rng)
    g = core.branching(graph)
    for m in g.family:
        used = [graph.edges[i] for i in core.bits(m)]
        reached = {"r"}
        grown = True
        while grown:
            grown = False
            for e in used:
                if e.tail in reached and e.head not in reached:
                    reached.add(e.head)
                    grown = True
                elif not e.directed and e.head in reached and e.tail not in reached:
                    reached.add(e.tail)
                    grown = True
        # a tree on the reached nodes: connected from the root and acyclic
        assert len(reached) == len(used) + 1
