"""Ground sets, bitmask subsets and materialized greedoids.

Every subset of the ground set is an ``int`` bitmask over element indices in
declaration order.  Families are enumerated once at construction time, so all
later queries are finite scans over ``Greedoid.family``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    BadArgs,
    BadParams,
    ContractNotFeasible,
    NoWitness,
    NotFeasible,
    SizeLimit,
)

MAX_ELEMENTS = 20


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int):
    """Yield the indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int):
    """Yield every submask of ``mask``, including ``mask`` and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def mask_key(mask: int) -> tuple[int, ...]:
    """Sort key giving the lowest-index-lexicographic order on subsets."""
    return tuple(bits(mask))


def to_fraction(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise BadParams(f"refusing non-exact number {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BadParams(f"not a rational: {value!r}") from exc
    raise BadParams(f"not a rational: {value!r}")


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise BadParams(f"duplicate element labels in {self.elements}")
        if len(self.elements) > MAX_ELEMENTS:
            raise SizeLimit(f"{len(self.elements)} elements exceeds the limit of {MAX_ELEMENTS}")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._positions[label]
        except KeyError:
            raise BadArgs(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    def format(self, mask: int) -> str:
        return ",".join(self.labels(mask))


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    directed: bool = False


@dataclass(frozen=True)
class MixedGraph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    root: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.nodes)) != len(self.nodes):
            raise BadParams("duplicate node labels")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise BadParams("duplicate edge ids")
        known = set(self.nodes)
        for e in self.edges:
            if e.tail not in known or e.head not in known:
                raise BadParams(f"edge {e.id} has an endpoint outside the node set")
        if self.root is not None and self.root not in known:
            raise BadParams(f"root {self.root!r} is not a node")


@dataclass(frozen=True)
class Greedoid:
    """A greedoid with its feasible family fully materialized.

    ``provenance`` records how the greedoid was built, as a tuple whose first
    entry is the construction kind.  It does not take part in equality.
    """

    ground: GroundSet
    family: frozenset[int]
    provenance: tuple = field(default=("explicit",), compare=False)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def elements(self) -> tuple[str, ...]:
        return self.ground.elements

    @property
    def kind(self) -> str:
        return self.provenance[0]

    def mask(self, *labels: str) -> int:
        if len(labels) == 1 and not isinstance(labels[0], str):
            labels = tuple(labels[0])
        return self.ground.mask(labels)

    def labels(self, mask: int) -> tuple[str, ...]:
        return self.ground.labels(mask)

    def names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.ground.elements[i] for i in indices)

    def format(self, mask: int) -> str:
        return self.ground.format(mask)

    @cached_property
    def members(self) -> tuple[int, ...]:
        """Feasible sets ordered by size, then by mask value."""
        return tuple(sorted(self.family, key=lambda m: (popcount(m), m)))

    @cached_property
    def continuation_table(self) -> dict[int, int]:
        table = {}
        for a in self.family:
            gamma = 0
            for x in range(self.n):
                bit = 1 << x
                if not a & bit and (a | bit) in self.family:
                    gamma |= bit
            table[a] = gamma
        return table

    @cached_property
    def rank_table(self) -> list[int]:
        table = [0] * (1 << self.n)
        for a in range(1, 1 << self.n):
            if a in self.family:
                table[a] = popcount(a)
                continue
            best = 0
            for x in bits(a):
                r = table[a ^ (1 << x)]
                if r > best:
                    best = r
            table[a] = best
        return table

    @cached_property
    def subfeasible_table(self) -> bytearray:
        table = bytearray(1 << self.n)
        for a in self.family:
            table[a] = 1
        for a in range((1 << self.n) - 1, 0, -1):
            if table[a]:
                for x in bits(a):
                    table[a ^ (1 << x)] = 1
        return table

    @cached_property
    def rank(self) -> int:
        return max(popcount(a) for a in self.family)

    @cached_property
    def bases(self) -> tuple[int, ...]:
        r = self.rank
        return tuple(sorted((a for a in self.family if popcount(a) == r), key=mask_key))

    def weights(self, values) -> tuple[Fraction, ...]:
        """Normalize a label->value mapping or a sequence into an index-ordered tuple."""
        if isinstance(values, Mapping):
            unknown = set(values) - set(self.elements)
            if unknown:
                raise BadParams(f"weights for unknown elements {sorted(unknown)}")
            missing = [e for e in self.elements if e not in values]
            if missing:
                raise BadParams(f"missing weights for {missing}")
            return tuple(to_fraction(values[e]) for e in self.elements)
        values = tuple(values)
        if len(values) != self.n:
            raise BadParams(f"expected {self.n} weights, got {len(values)}")
        return tuple(to_fraction(v) for v in values)


def memo(g: Greedoid, key, compute):
    """Per-instance cache for derived data; greedoids are immutable."""
    store = g.__dict__.setdefault("_memo", {})
    try:
        return store[key]
    except KeyError:
        value = store[key] = compute()
        return value


# ---------------------------------------------------------------------------
# queries


def _check_mask(g: Greedoid, mask: int) -> None:
    if mask < 0 or mask >> g.n:
        raise BadArgs(f"mask {mask} is not a subset of the ground set")


def is_feasible(g: Greedoid, x: int) -> bool:
    _check_mask(g, x)
    return x in g.family


def is_subfeasible(g: Greedoid, x: int) -> bool:
    _check_mask(g, x)
    return bool(g.subfeasible_table[x])


def rank(g: Greedoid, a: int) -> int:
    _check_mask(g, a)
    return g.rank_table[a]


def bases_of(g: Greedoid, a: int) -> set[int]:
    _check_mask(g, a)
    r = g.rank_table[a]
    return {x for x in g.family if x & ~a == 0 and popcount(x) == r}


def continuations(g: Greedoid, a: int) -> int:
    if a not in g.family:
        raise NotFeasible(f"{g.format(a) or '{}'} is not feasible")
    return g.continuation_table[a]


def augment(g: Greedoid, x: int, y: int) -> int:
    """Lowest-index ``e`` in ``y - x`` with ``x + e`` feasible."""
    for s in (x, y):
        if s not in g.family:
            raise NotFeasible(f"{g.format(s) or '{}'} is not feasible")
    if popcount(x) >= popcount(y):
        raise BadArgs("augment needs |X| < |Y|")
    for e in bits(y & ~x):
        if (x | (1 << e)) in g.family:
            return e
    raise NoWitness(f"cannot augment {g.format(x) or '{}'} from {g.format(y)}")


def feasible_ordering(g: Greedoid, x: int) -> tuple[int, ...]:
    if x not in g.family:
        raise NotFeasible(f"{g.format(x) or '{}'} is not feasible")
    order = []
    cur = 0
    while cur != x:
        e = augment(g, cur, x)
        order.append(e)
        cur |= 1 << e
    return tuple(order)


def feasible_orderings(g: Greedoid, x: int) -> list[tuple[int, ...]]:
    """Every feasible ordering of ``x`` (empty list if ``x`` is infeasible)."""
    if x not in g.family:
        return []
    out = []

    def extend(cur, seq):
        if cur == x:
            out.append(tuple(seq))
            return
        for e in bits(x & ~cur):
            nxt = cur | (1 << e)
            if nxt in g.family:
                seq.append(e)
                extend(nxt, seq)
                seq.pop()

    extend(0, [])
    return out


def exchange_violation(n: int, family) -> tuple[int, int] | None:
    """First pair (X, Y) breaking the exchange axiom, or None."""
    fam = family if isinstance(family, (set, frozenset)) else set(family)
    gamma = {}
    for a in fam:
        g = 0
        for x in range(n):
            bit = 1 << x
            if not a & bit and (a | bit) in fam:
                g |= bit
        gamma[a] = g
    ordered = sorted(fam, key=lambda m: (popcount(m), m))
    for i, x in enumerate(ordered):
        px = popcount(x)
        gx = gamma[x]
        for y in ordered[i + 1:]:
            if popcount(y) > px and not (y & ~x) & gx:
                return (x, y)
    return None


def verify_axioms(g: Greedoid) -> tuple[int, int] | None:
    """Exhaustively re-check the empty-set and exchange axioms; returns a witness pair or None."""
    if 0 not in g.family:
        return (None, None)
    return exchange_violation(g.n, g.family)


# ---------------------------------------------------------------------------
# constructions


def _grow(n: int, extend) -> frozenset[int]:
    """Materialize an accessible family level by level.

    ``extend(state)`` yields ``(element, new_state)`` pairs for the feasible
    one-element extensions of the set carried by ``state``.
    """
    seen = {0: None}
    level = {0: extend.initial}
    while level:
        nxt = {}
        for mask, state in level.items():
            for e, new_state in extend(mask, state):
                m = mask | (1 << e)
                if m not in seen and m not in nxt:
                    nxt[m] = new_state
        seen.update(nxt)
        level = nxt
    return frozenset(seen)


def explicit(elements: Sequence[str], family: Iterable[Iterable[str]]) -> Greedoid:
    ground = GroundSet(tuple(elements))
    fam = set()
    for member in family:
        if isinstance(member, int):
            fam.add(member)
        else:
            fam.add(ground.mask(list(member)))
    if 0 not in fam:
        raise AxiomViolation("the empty set is not feasible", (None, None))
    bad = exchange_violation(ground.n, fam)
    if bad is not None:
        x, y = bad
        raise AxiomViolation(
            f"cannot augment {{{ground.format(x)}}} from {{{ground.format(y)}}}", bad
        )
    return Greedoid(ground, frozenset(fam), ("explicit",))


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def uniform_matroid(n: int, k: int, elements: Sequence[str] | None = None) -> Greedoid:
    if n < 0 or k < 0 or k > n:
        raise BadParams(f"uniform matroid needs 0 <= k <= n, got n={n}, k={k}")
    ground = GroundSet(tuple(elements) if elements is not None else _default_labels(n))
    if ground.n != n:
        raise BadParams("label count does not match n")
    fam = frozenset(
        sum(1 << i for i in combo)
        for size in range(k + 1)
        for combo in itertools.combinations(range(n), size)
    )
    return Greedoid(ground, fam, ("uniform_matroid", n, k))


def graphic_matroid(graph: MixedGraph) -> Greedoid:
    """Cycle matroid of ``graph``; edge directions are ignored."""
    ground = GroundSet(tuple(e.id for e in graph.edges))
    ends = [(e.tail, e.head) for e in graph.edges]

    def extend(mask, comp):
        for i, (u, v) in enumerate(ends):
            if mask >> i & 1:
                continue
            cu, cv = comp.get(u, u), comp.get(v, v)
            if cu == cv:
                continue
            merged = dict(comp)
            for node in graph.nodes:
                if comp.get(node, node) == cv:
                    merged[node] = cu
            yield i, merged

    extend.initial = {}
    return Greedoid(ground, _grow(ground.n, extend), ("graphic_matroid", graph))


def branching(graph: MixedGraph, root: str | None = None) -> Greedoid:
    root = root if root is not None else graph.root
    if root is None or root not in graph.nodes:
        raise BadParams("branching greedoid needs a root node of the graph")
    if graph.root != root:
        graph = MixedGraph(graph.nodes, graph.edges, root)
    ground = GroundSet(tuple(e.id for e in graph.edges))
    edges = graph.edges

    def extend(mask, reached):
        for i, e in enumerate(edges):
            if mask >> i & 1:
                continue
            t_in, h_in = e.tail in reached, e.head in reached
            if e.directed:
                if t_in and not h_in:
                    yield i, reached | {e.head}
            elif t_in != h_in:
                yield i, reached | {e.head if t_in else e.tail}

    extend.initial = frozenset([root])
    return Greedoid(ground, _grow(ground.n, extend), ("branching", graph))


def direct_sum(g1: Greedoid, g2: Greedoid) -> Greedoid:
    overlap = set(g1.elements) & set(g2.elements)
    if overlap:
        raise BadParams(f"direct sum needs disjoint ground sets, shared: {sorted(overlap)}")
    ground = GroundSet(g1.elements + g2.elements)
    shift = g1.n
    fam = frozenset(a | (b << shift) for a in g1.family for b in g2.family)
    return Greedoid(ground, fam, ("direct_sum", g1.provenance, g2.provenance))


def rooted_extension(g: Greedoid, x: int, ordering: Sequence[int]) -> Greedoid:
    """Feasible sets of ``g`` containing ``x``, plus the prefixes of ``ordering``.

    ``ordering`` is any permutation of ``x`` (element indices); it need not be
    a feasible ordering.
    """
    if x not in g.family:
        raise BadParams(f"{g.format(x)} is not feasible")
    ordering = tuple(ordering)
    if sorted(ordering) != list(bits(x)):
        raise BadParams("ordering must be a permutation of X")
    fam = {y for y in g.family if y & x == x}
    prefix = 0
    fam.add(0)
    for e in ordering:
        prefix |= 1 << e
        fam.add(prefix)
    return Greedoid(g.ground, frozenset(fam), ("rooted_extension", g.provenance, ordering))


def minor_kept(g: Greedoid, deleted: int, contracted: int) -> tuple[int, ...]:
    """Indices of ``g`` surviving in the minor, in order."""
    gone = deleted | contracted
    return tuple(i for i in range(g.n) if not gone >> i & 1)


def compress(mask: int, kept: Sequence[int]) -> int:
    out = 0
    for j, i in enumerate(kept):
        if mask >> i & 1:
            out |= 1 << j
    return out


def expand(mask: int, kept: Sequence[int]) -> int:
    out = 0
    for j in bits(mask):
        out |= 1 << kept[j]
    return out


def minor(g: Greedoid, deleted: int = 0, contracted: int = 0) -> Greedoid:
    _check_mask(g, deleted)
    _check_mask(g, contracted)
    if deleted & contracted:
        raise BadParams("deleted and contracted sets must be disjoint")
    if contracted not in g.family:
        raise ContractNotFeasible(f"{g.format(contracted)} is not feasible")
    kept = minor_kept(g, deleted, contracted)
    fam = frozenset(
        compress(a & ~contracted, kept)
        for a in g.family
        if not a & deleted and a & contracted == contracted
    )
    ground = GroundSet(tuple(g.elements[i] for i in kept))
    return Greedoid(ground, fam, ("minor", g.provenance, deleted, contracted))


def construct(kind: str, **params) -> Greedoid:
    builders = {
        "explicit": explicit,
        "uniform_matroid": uniform_matroid,
        "graphic_matroid": graphic_matroid,
        "branching": branching,
        "direct_sum": direct_sum,
        "rooted_extension": rooted_extension,
        "minor": minor,
    }
    try:
        builder = builders[kind]
    except KeyError:
        raise BadParams(f"unknown construction {kind!r}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {kind}: {exc}") from exc
