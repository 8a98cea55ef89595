"""Unique bases, paths, path orderings and shadows."""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .axioms import require_interval, require_local_forest, require_local_poset
from .core import Greedoid, bits, feasible_orderings, memo, popcount, submasks
from .errors import BadArgs, NotAPath, NotFeasible, NotSubfeasible


def delta(g: Greedoid, x: int) -> int:
    """Unique base of a subfeasible set in an interval greedoid."""
    require_interval(g)
    if not g.subfeasible_table[x]:
        raise NotSubfeasible(f"{{{g.format(x)}}} is not subfeasible")
    out = 0
    for f in g.family:
        if f & ~x == 0:
            out |= f
    assert out in g.family and popcount(out) == g.rank_table[x]
    return out


def paths_in(g: Greedoid, a: int) -> dict[int, int]:
    """Map each ``x`` in feasible ``a`` to its path P_x^A (local poset greedoids)."""
    return memo(g, ("paths_in", a), lambda: _paths_in(g, a))


def _paths_in(g: Greedoid, a: int) -> dict[int, int]:
    require_local_poset(g)
    if a not in g.family:
        raise NotFeasible(f"{{{g.format(a)}}} is not feasible")
    out = {x: a for x in bits(a)}
    for q in submasks(a):
        if q in g.family:
            for x in bits(q):
                out[x] &= q
    for x, p in out.items():
        assert p in g.family and p >> x & 1
    return out


def path(g: Greedoid, a: int, x: int) -> int:
    require_local_poset(g)
    if a not in g.family or not a >> x & 1:
        raise BadArgs("path needs a feasible A containing x")
    p = paths_in(g, a)[x]
    assert not any(q in g.family and q != p and q & ~p == 0 and q >> x & 1 for q in submasks(p))
    return p


def all_paths(g: Greedoid) -> frozenset[int]:
    """Every path P_x^A, found as the feasible sets having an element that no
    proper feasible subset contains."""
    return memo(g, "all_paths", lambda: _all_paths(g))


def _all_paths(g: Greedoid) -> frozenset[int]:
    require_local_poset(g)
    out = set()
    for p in g.family:
        if not p:
            continue
        lonely = p
        for q in g.family:
            if q != p and q & ~p == 0:
                lonely &= ~q
        if lonely:
            out.add(p)
    return frozenset(out)


def path_ordering(g: Greedoid, p: int) -> tuple[int, ...]:
    require_local_forest(g)
    if p not in all_paths(g):
        raise NotAPath(f"{{{g.format(p)}}} is not a path")
    orders = feasible_orderings(g, p)
    assert len(orders) == 1, "local forest path with several feasible orderings"
    order = orders[0]
    prefix = 0
    for e in order:
        prefix |= 1 << e
        assert prefix in all_paths(g)
    return order


def shadow(g: Greedoid, a: int, x: int) -> int:
    if a not in g.family:
        raise NotFeasible(f"{{{g.format(a)}}} is not feasible")
    return popcount(a) - g.rank_table[a & ~(1 << x)]


def shadow_vector(g: Greedoid, a: int) -> tuple[int, ...]:
    if a not in g.family:
        raise NotFeasible(f"{{{g.format(a)}}} is not feasible")
    k = popcount(a)
    return tuple(k - g.rank_table[a & ~(1 << x)] for x in range(g.n))


def objfn_sides(g: Greedoid, a: int, c) -> tuple[Fraction, Fraction]:
    """Both sides of sum c(x) sh_A(x) = sum c(P_x^A) over x in A."""
    require_local_poset(g)
    c = g.weights(c)
    sh = shadow_vector(g, a)
    lhs = sum((c[x] * sh[x] for x in bits(a)), Fraction(0))
    rhs = Fraction(0)
    for x, p in paths_in(g, a).items():
        rhs += sum((c[e] for e in bits(p)), Fraction(0))
    return lhs, rhs


def check_objfn_identity(g: Greedoid, a: int, c) -> bool:
    lhs, rhs = objfn_sides(g, a, c)
    return lhs == rhs


def check_rank_sum_inequality(g: Greedoid):
    """sum_{x in A} r(B-x) <= r(B-A) + (|A|-1) r(B) for subfeasible B, nonempty A in B."""
    require_local_poset(g)
    r = g.rank_table
    sub = g.subfeasible_table
    for b in range(1 << g.n):
        if not sub[b]:
            continue
        drop = [r[b & ~(1 << x)] for x in range(g.n)]
        for a in submasks(b):
            if not a:
                continue
            lhs = sum(drop[x] for x in bits(a))
            if lhs > r[b & ~a] + (popcount(a) - 1) * r[b]:
                return False, (a, b)
    return True, None


# Branching greedoids: closed forms by walking the tree.

def _tree(g: Greedoid, a: int):
    if g.kind != "branching":
        raise BadArgs("tree walks need a branching greedoid")
    if a not in g.family:
        raise NotFeasible(f"{{{g.format(a)}}} is not feasible")
    graph = g.provenance[1]
    parent_edge = {graph.root: None}
    queue = deque([graph.root])
    while queue:
        node = queue.popleft()
        for i in bits(a):
            e = graph.edges[i]
            for u, v in ((e.tail, e.head), (e.head, e.tail)):
                if u == node and v not in parent_edge:
                    parent_edge[v] = i
                    queue.append(v)
    return graph, parent_edge


def branching_path(g: Greedoid, a: int, x: int) -> int:
    """Edges on the root path of tree ``a`` ending with edge ``x``."""
    graph, parent_edge = _tree(g, a)
    e = graph.edges[x]
    node = e.head if parent_edge.get(e.head) == x else e.tail
    out = 0
    while parent_edge[node] is not None:
        i = parent_edge[node]
        out |= 1 << i
        edge = graph.edges[i]
        node = edge.tail if edge.head == node else edge.head
    return out


def branching_shadow(g: Greedoid, a: int, x: int) -> int:
    """Tree nodes cut off from the root when edge ``x`` is removed."""
    graph, parent_edge = _tree(g, a)
    if not a >> x & 1:
        return 0
    _, reach = _tree_without(graph, a & ~(1 << x))
    return len(parent_edge) - len(reach)


def _tree_without(graph, a):
    reached = {graph.root}
    queue = deque([graph.root])
    while queue:
        node = queue.popleft()
        for i in bits(a):
            e = graph.edges[i]
            for u, v in ((e.tail, e.head), (e.head, e.tail)):
                if u == node and v not in reached:
                    reached.add(v)
                    queue.append(v)
    return graph, reached


def check_path_intersection(g: Greedoid):
    """Paths through B - Delta(B) agree inside B - Delta(B) for two one-element
    feasible extensions B+x, B+z whose union with Delta(B) is infeasible.

    Returns ``(holds, witness)`` with witness ``(B, x, z, e)``.
    """
    require_local_poset(g)
    fam = g.family
    seen = set()
    for f in g.members:
        for x in bits(f):
            b = f & ~(1 << x)
            if (b, x) in seen:
                continue
            seen.add((b, x))
            db = delta(g, b)
            rest = b & ~db
            if not rest:
                continue
            px = paths_in(g, f)
            for z in range(x + 1, g.n):
                Z = 1 << z
                if b & Z or (b | Z) not in fam or (db | (1 << x) | Z) in fam:
                    continue
                pz = paths_in(g, b | Z)
                for e in bits(rest):
                    if px[e] & rest != pz[e] & rest:
                        return False, (b, x, z, e)
    return True, None
