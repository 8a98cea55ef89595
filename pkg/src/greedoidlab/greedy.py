"""The greedy algorithm on greedoids, objective families and optimality checks.

Every checker works in max convention: a ``min`` objective is handled by
scoring with ``-w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .axioms import classify, require_interval, require_local_forest
from .core import Greedoid, bits, expand, minor, minor_kept, popcount
from .errors import BadArgs, NotAViolation, ObjectiveUndefined
from .paths import all_paths, delta, paths_in

SET_KINDS = ("set_table", "linear", "path_sum", "bottleneck", "monotone_path_fn")


@dataclass(frozen=True, eq=False)
class Objective:
    """An objective on feasible sets (or, for ``ordered_table``, on feasible orderings).

    ``table`` maps masks to values for ``set_table``, path masks to values
    for ``monotone_path_fn`` and index tuples to values for ``ordered_table``.
    ``weights`` is an index-ordered tuple for the weight-based kinds.
    """

    kind: str
    direction: str = "max"
    weights: tuple = ()
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in SET_KINDS + ("ordered_table",):
            raise BadArgs(f"unknown objective kind {self.kind!r}")
        if self.direction not in ("max", "min"):
            raise BadArgs(f"direction must be 'max' or 'min', not {self.direction!r}")

    @classmethod
    def set_table(cls, table, direction="max"):
        return cls("set_table", direction, table={m: Fraction(v) for m, v in table.items()})

    @classmethod
    def linear(cls, weights, direction="max"):
        return cls("linear", direction, weights=tuple(Fraction(v) for v in weights))

    @classmethod
    def path_sum(cls, weights, direction="min"):
        return cls("path_sum", direction, weights=tuple(Fraction(v) for v in weights))

    @classmethod
    def bottleneck(cls, weights, direction="min"):
        return cls("bottleneck", direction, weights=tuple(Fraction(v) for v in weights))

    @classmethod
    def path_function(cls, table, direction="min"):
        return cls("monotone_path_fn", direction, table={m: Fraction(v) for m, v in table.items()})

    @classmethod
    def ordered_table(cls, table, direction="max"):
        return cls("ordered_table", direction,
                   table={tuple(k): Fraction(v) for k, v in table.items()})

    @property
    def is_ordered(self) -> bool:
        return self.kind == "ordered_table"

    @property
    def sign(self) -> int:
        return 1 if self.direction == "max" else -1

    def negated(self) -> "Objective":
        """Same objective with the opposite direction."""
        flip = "min" if self.direction == "max" else "max"
        return Objective(self.kind, flip, self.weights, self.table)

    def value(self, g: Greedoid, a: int) -> Fraction:
        """w(A) for a feasible set A."""
        kind = self.kind
        if kind == "set_table":
            try:
                return self.table[a]
            except KeyError:
                raise ObjectiveUndefined(f"no table value for {{{g.format(a)}}}") from None
        if kind == "ordered_table":
            raise ObjectiveUndefined("an ordered objective needs an ordering")
        if kind == "linear":
            return sum((self.weights[x] for x in bits(a)), Fraction(0))
        if not classify(g).is_local_poset:
            raise ObjectiveUndefined(f"{kind} objectives need a local poset greedoid")
        total = Fraction(0)
        for p in paths_in(g, a).values():
            if kind == "path_sum":
                total += sum((self.weights[e] for e in bits(p)), Fraction(0))
            elif kind == "bottleneck":
                total += max(self.weights[e] for e in bits(p))
            else:
                try:
                    total += self.table[p]
                except KeyError:
                    raise ObjectiveUndefined(f"no value for path {{{g.format(p)}}}") from None
        return total

    def value_of(self, g: Greedoid, seq: Sequence[int]) -> Fraction:
        """w of a feasible ordering; set objectives ignore the order."""
        if self.is_ordered:
            try:
                return self.table[tuple(seq)]
            except KeyError:
                raise ObjectiveUndefined(f"no table value for ordering {g.names(seq)}") from None
        m = 0
        for e in seq:
            m |= 1 << e
        return self.value(g, m)

    def score(self, g: Greedoid, a: int) -> Fraction:
        return self.sign * self.value(g, a)

    def score_of(self, g: Greedoid, seq: Sequence[int]) -> Fraction:
        return self.sign * self.value_of(g, seq)


def path_table(g: Greedoid, f: Callable[[int], Fraction]) -> dict[int, Fraction]:
    """Tabulate a function of paths over every path of ``g``."""
    return {p: Fraction(f(p)) for p in all_paths(g)}


@dataclass(frozen=True)
class Pick:
    element: int
    continuations: int
    value: Fraction


@dataclass(frozen=True)
class GreedyTrace:
    picks: tuple[Pick, ...]
    base: int
    value: Fraction

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(p.element for p in self.picks)


def _best_steps(g, obj, seq, cur):
    gamma = g.continuation_table[cur]
    scored = [(obj.score_of(g, seq + (x,)), x) for x in bits(gamma)]
    if not scored:
        return gamma, []
    top = max(s for s, _ in scored)
    return gamma, [x for s, x in scored if s == top]


def greedy(g: Greedoid, obj: Objective, tie_rule: str = "lowest_index"):
    """Run the greedy algorithm.

    ``lowest_index`` returns one trace; ``all_runs`` returns the list of every
    trace obtainable by some legal tie-breaking, in depth-first index order.
    """
    if tie_rule not in ("lowest_index", "all_runs"):
        raise BadArgs(f"unknown tie rule {tie_rule!r}")
    runs = []

    def walk(seq, cur, picks):
        gamma, best = _best_steps(g, obj, seq, cur)
        if not best:
            runs.append(GreedyTrace(tuple(picks), cur, obj.value_of(g, seq)))
            return
        for x in best if tie_rule == "all_runs" else best[:1]:
            nseq = seq + (x,)
            picks.append(Pick(x, gamma, obj.value_of(g, nseq)))
            walk(nseq, cur | (1 << x), picks)
            picks.pop()

    walk((), 0, [])
    return runs if tie_rule == "all_runs" else runs[0]


def ordered_greedy(g: Greedoid, obj: Objective) -> GreedyTrace:
    """Greedy that maintains a feasible ordering; identical to ``greedy`` but
    named for order-dependent objectives."""
    return greedy(g, obj, "lowest_index")


def _orderings_of_bases(g):
    from .core import feasible_orderings

    for b in g.bases:
        for seq in feasible_orderings(g, b):
            yield b, seq


def brute_force_optimum(g: Greedoid, obj: Objective) -> tuple[int, Fraction]:
    """Best base by enumeration; ties go to the lexicographically lowest base."""
    best = None
    if obj.is_ordered:
        for b, seq in _orderings_of_bases(g):
            s = obj.score_of(g, seq)
            if best is None or s > best[0]:
                best = (s, b, obj.value_of(g, seq))
    else:
        for b in g.bases:
            s = obj.score(g, b)
            if best is None or s > best[0]:
                best = (s, b, obj.value(g, b))
    return best[1], best[2]


def is_optimal(g: Greedoid, obj: Objective, trace: GreedyTrace) -> bool:
    _, opt = brute_force_optimum(g, obj)
    return obj.sign * trace.value >= obj.sign * opt


# ---------------------------------------------------------------------------
# optimality conditions


def _best_continuations(g, obj):
    """For each feasible A, the mask of x in Gamma(A) maximizing score(A + x)."""
    out = {}
    for a in g.family:
        gamma = g.continuation_table[a]
        top = None
        mask = 0
        for x in bits(gamma):
            s = obj.score(g, a | (1 << x))
            if top is None or s > top:
                top, mask = s, 1 << x
            elif s == top:
                mask |= 1 << x
        out[a] = mask
    return out


def _require_set_objective(obj):
    if obj.is_ordered:
        raise BadArgs("this condition is stated for order-independent objectives")


def language(g: Greedoid) -> list[tuple[int, ...]]:
    """All feasible orderings of all feasible sets, by length then lexicographically."""
    out = []
    frontier = [()]
    while frontier:
        out.extend(frontier)
        nxt = []
        for seq in frontier:
            cur = 0
            for e in seq:
                cur |= 1 << e
            for x in bits(g.continuation_table[cur]):
                nxt.append(seq + (x,))
        frontier = sorted(nxt)
    return out


def check_kl_conditions(g: Greedoid, obj: Objective):
    """Exhaustive check of the two string conditions (the kl check).

    Returns ``(holds, witness)``; a witness is ``(condition, s1, s2)`` with
    ``score(s1) < score(s2)`` although ``s1`` carries a best continuation.
    """
    lang = language(g)
    members = set(lang)
    score = {s: obj.score_of(g, s) for s in lang}
    best = {}
    for alpha in lang:
        cont = [s for s in (alpha + (x,) for x in range(g.n)) if s in members]
        if cont:
            top = max(score[s] for s in cont)
            best[alpha] = {s[-1] for s in cont if score[s] == top}
    for s1 in lang:
        used = set(s1)
        for i in range(len(s1)):
            good = best.get(s1[:i], ())
            for p in range(i, len(s1)):
                if s1[p] not in good:
                    continue
                for z in range(g.n):
                    if z in used:
                        continue
                    s2 = s1[:p] + (z,) + s1[p + 1:]
                    if s2 in members and score[s1] < score[s2]:
                        return False, (1, s1, s2)
                for q in range(p + 1, len(s1)):
                    s2 = list(s1)
                    s2[p], s2[q] = s2[q], s2[p]
                    s2 = tuple(s2)
                    if s2 in members and score[s1] < score[s2]:
                        return False, (2, s1, s2)
    return True, None


def check_condition_3(g: Greedoid, obj: Objective):
    """The faulty set-function reformulation; it does not imply greedy optimality."""
    _require_set_objective(obj)
    best = _best_continuations(g, obj)
    for a in g.members:
        for b in g.members:
            if a & ~b:
                continue
            gamma_b = g.continuation_table[b]
            for x in bits(best[a] & gamma_b):
                sx = obj.score(g, b | (1 << x))
                for z in bits(gamma_b):
                    if sx < obj.score(g, b | (1 << z)):
                        return False, (a, b, x, z)
    return True, None


def check_condition_6(g: Greedoid, obj: Objective):
    """Exchange condition that guarantees the greedy base is maximum.

    Returns ``(holds, witness)`` with witness ``(A, B, x)``.
    """
    _require_set_objective(obj)
    best = _best_continuations(g, obj)
    base_set = set(g.bases)
    for a in g.members:
        for x in bits(best[a]):
            X = 1 << x
            for b in g.bases:
                if a & ~b or b & X:
                    continue
                sb = obj.score(g, b)
                ok = False
                for y in bits(b & ~a):
                    swapped = (b & ~(1 << y)) | X
                    if swapped in base_set and obj.score(g, swapped) >= sb:
                        ok = True
                        break
                if not ok:
                    return False, (a, b, x)
    return True, None


def condition_6_violated_by(g: Greedoid, obj: Objective, a: int, b: int, x: int) -> bool:
    """Re-check a candidate witness directly against the definition."""
    fam = g.family
    base_set = set(g.bases)
    X = 1 << x
    if a not in fam or (a | X) not in fam or b not in base_set or a & ~b or b & X:
        return False
    gamma = g.continuation_table[a]
    sx = obj.score(g, a | X)
    if any(obj.score(g, a | (1 << u)) > sx for u in bits(gamma)):
        return False
    sb = obj.score(g, b)
    return not any(
        ((b & ~(1 << y)) | X) in base_set and obj.score(g, (b & ~(1 << y)) | X) >= sb
        for y in bits(b & ~a)
    )


def check_condition_7(g: Greedoid, obj: Objective):
    """Interval-greedoid condition involving the unique base of B.

    Returns ``(holds, witness)`` with witness ``(A, B, x, z)``.
    """
    require_interval(g)
    _require_set_objective(obj)
    best = _best_continuations(g, obj)
    fam = g.family
    base_set = set(g.bases)
    for d in g.bases:
        for x in bits(d):
            X = 1 << x
            b = d & ~X
            db = delta(g, b)
            has_a = any(a & ~b == 0 and best[a] & X for a in g.members)
            if not has_a:
                continue
            sx = obj.score(g, d)
            for z in range(g.n):
                Z = 1 << z
                if z == x or b & Z or (b | Z) not in base_set:
                    continue
                if (db | X | Z) in fam:
                    continue
                if sx < obj.score(g, b | Z):
                    a = next(a for a in g.members if a & ~b == 0 and best[a] & X)
                    return False, (a, b, x, z)
    return True, None


def check_monotone_f(g: Greedoid, f):
    """Monotonicity constraints (i) and (ii) for a function on paths.

    In (ii) the common extension C is disjoint from both A and B.

    ``f`` is a mapping from path masks to values or a callable on path masks.
    Returns ``(holds, witness)``; witnesses are ``("i", A, B)`` or
    ``("ii", A, B, C)``.
    """
    require_local_forest(g)
    paths = sorted(all_paths(g), key=lambda m: (popcount(m), m))
    if callable(f):
        f = path_table(g, f)
    for a in paths:
        for b in paths:
            if a & ~b == 0 and f[a] > f[b]:
                return False, ("i", a, b)
    # C is taken disjoint from A and B, as in the proof where the extension
    # is the part of a path lying outside the unique base.
    for a in paths:
        ups_a = [p for p in paths if a & ~p == 0 and p != a]
        for b in paths:
            if f[a] > f[b]:
                continue
            for a2 in ups_a:
                c = a2 & ~a
                if c & b or (b | c) not in f:
                    continue
                if f[a2] > f[b | c]:
                    return False, ("ii", a, b, c)
    return True, None


# ---------------------------------------------------------------------------
# minors built from condition c6 violations


def transport(obj: Objective, g: Greedoid, deleted: int, contracted: int, h: Greedoid) -> Objective:
    """Objective on the minor ``h``: restrict to S - deleted, shift by the contracted set."""
    _require_set_objective(obj)
    kept = minor_kept(g, deleted, contracted)
    table = {m: obj.value(g, expand(m, kept) | contracted) for m in h.family}
    return Objective("set_table", obj.direction, table=table)


def violation_minor(g: Greedoid, obj: Objective, witness) -> tuple[Greedoid, Objective]:
    """Minor (G minus Y) / A on which some legal greedy run is suboptimal."""
    a, b, x = witness
    if not condition_6_violated_by(g, obj, a, b, x):
        raise NotAViolation("the witness does not violate condition c6")
    full = (1 << g.n) - 1
    y = full & ~b & ~(1 << x)
    h = minor(g, y, a)
    return h, transport(obj, g, y, a, h)


def suboptimal_runs(g: Greedoid, obj: Objective) -> list[GreedyTrace]:
    _, opt = brute_force_optimum(g, obj)
    return [t for t in greedy(g, obj, "all_runs") if obj.sign * t.value < obj.sign * opt]
