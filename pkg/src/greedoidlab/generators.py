"""Seeded random instances for property checks.

Every generator takes a ``random.Random`` and returns a validated greedoid.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import core
from .core import Edge, Greedoid, MixedGraph, bits, popcount


def mixed_graph(rng: random.Random, max_edges: int = 8, max_nodes: int = 5,
                directed_prob: float = 0.5) -> MixedGraph:
    """Random multigraph on nodes r, v1, ...; edges may be parallel or directed."""
    k = rng.randint(2, max_nodes)
    nodes = ("r",) + tuple(f"v{i}" for i in range(1, k))
    m = rng.randint(1, max_edges)
    edges = []
    for i in range(m):
        u, v = rng.sample(nodes, 2)
        edges.append(Edge(f"e{i + 1}", u, v, rng.random() < directed_prob))
    return MixedGraph(nodes, tuple(edges), "r")


def connected_graph(rng: random.Random, max_edges: int = 7, max_nodes: int = 5) -> MixedGraph:
    """Random connected undirected multigraph: a random spanning tree plus extra edges."""
    k = rng.randint(2, max_nodes)
    nodes = tuple(f"n{i}" for i in range(k))
    edges = []
    for i in range(1, k):
        edges.append((nodes[rng.randrange(i)], nodes[i]))
    while len(edges) < max_edges and rng.random() < 0.7:
        edges.append(tuple(rng.sample(nodes, 2)))
    rng.shuffle(edges)
    return MixedGraph(nodes, tuple(Edge(f"e{i + 1}", u, v) for i, (u, v) in enumerate(edges)), None)


def branching(rng: random.Random, max_edges: int = 8, **kw) -> Greedoid:
    return core.branching(mixed_graph(rng, max_edges, **kw))


def graphic_matroid(rng: random.Random, max_edges: int = 7) -> Greedoid:
    return core.graphic_matroid(connected_graph(rng, max_edges))


def uniform_matroid(rng: random.Random, max_n: int = 6) -> Greedoid:
    n = rng.randint(1, max_n)
    return core.uniform_matroid(n, rng.randint(1, n))


def _labels(n, prefix="s"):
    return tuple(f"{prefix}{i}" for i in range(n))


def greedoid(rng: random.Random, n: int, keep: float = 0.6) -> Greedoid:
    """Random greedoid grown level by level.

    Each level keeps a random share of the one-element extensions of the
    previous level, then drops sets that break the exchange property against
    lower levels until none do.
    """
    fam = {0}
    level = [0]
    for _ in range(n):
        cand = sorted({m | (1 << e) for m in level for e in range(n) if not m >> e & 1})
        chosen = {m for m in cand if rng.random() < keep}
        lower = sorted(fam)
        changed = True
        while changed:
            changed = False
            for x in sorted(chosen):
                for y in lower:
                    if popcount(y) >= popcount(x):
                        continue
                    ok = any((y | (1 << e)) in fam or (y | (1 << e)) in chosen for e in bits(x & ~y))
                    if not ok:
                        chosen.discard(x)
                        changed = True
                        break
        if not chosen:
            break
        fam |= chosen
        level = sorted(chosen)
    return core.explicit(_labels(n), fam)


def antimatroid(rng: random.Random, n: int, words: int = 3) -> Greedoid:
    """Union closure of the prefixes of a few random words."""
    gens = set()
    for _ in range(words):
        perm = rng.sample(range(n), rng.randint(1, n))
        prefix = 0
        for e in perm:
            prefix |= 1 << e
            gens.add(prefix)
    fam = {0}
    for g in gens:
        fam |= {f | g for f in fam}
    return core.explicit(_labels(n), fam)


def poset_ideals(rng: random.Random, n: int, density: float = 0.3) -> Greedoid:
    """Down-sets of a random poset compatible with the order 0 < 1 < ... < n-1."""
    below = [0] * n
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                below[j] |= (1 << i) | below[i]
    fam = {m for m in range(1 << n) if all(below[e] & ~m == 0 for e in bits(m))}
    return core.explicit(_labels(n), fam)


def rooted_extension(rng: random.Random, g: Greedoid) -> Greedoid:
    x = rng.choice([m for m in g.family if m])
    order = list(bits(x))
    rng.shuffle(order)
    return core.rooted_extension(g, x, order)


def relabel(g: Greedoid, prefix: str) -> Greedoid:
    return core.explicit(tuple(f"{prefix}{e}" for e in g.elements), g.family)


def direct_sum(g1: Greedoid, g2: Greedoid) -> Greedoid:
    """Direct sum after prefixing labels with L and R."""
    return core.direct_sum(relabel(g1, "L"), relabel(g2, "R"))


def local_forest(rng: random.Random, max_n: int = 8) -> Greedoid:
    """A random member of one of the local forest families."""
    kind = rng.choice(["branching", "uniform", "graphic", "rooted", "sum"])
    if kind == "branching":
        return branching(rng, min(max_n, 8))
    if kind == "uniform":
        return uniform_matroid(rng, min(max_n, 6))
    if kind == "graphic":
        return graphic_matroid(rng, min(max_n, 7))
    if kind == "rooted":
        return rooted_extension(rng, uniform_matroid(rng, min(max_n, 5)))
    half = max(2, max_n // 2)
    return direct_sum(uniform_matroid(rng, min(half, 4)), branching(rng, half))


def weights(rng: random.Random, n: int, lo: int = 0, hi: int = 9, denominators=(1, 2, 3)) -> tuple:
    return tuple(Fraction(rng.randint(lo, hi), rng.choice(denominators)) for _ in range(n))


def set_function(rng: random.Random, g: Greedoid, lo: int = -5, hi: int = 9) -> dict[int, Fraction]:
    return {m: Fraction(rng.randint(lo, hi)) for m in g.family}
