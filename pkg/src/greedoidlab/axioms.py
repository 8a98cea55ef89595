"""Class recognition (interval, local poset, local forest) by exhaustive search.

All checks quantify over the materialized family.  The quadruple loop of the
local forest check is comfortable up to about 14 elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Greedoid, bits, feasible_orderings, memo, popcount, verify_axioms
from .errors import NotInterval, NotLocalForest, NotLocalPoset


@dataclass(frozen=True)
class ClassReport:
    is_greedoid: bool
    has_lup: bool
    has_lip: bool
    has_lfp: bool
    has_strong_exchange: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_interval(self) -> bool:
        return self.has_lup

    @property
    def is_local_poset(self) -> bool:
        return self.has_lup and self.has_lip

    @property
    def is_local_forest(self) -> bool:
        return self.has_lup and self.has_lip and self.has_lfp

    @property
    def class_name(self) -> str:
        if not self.is_greedoid:
            return "not_a_greedoid"
        if self.is_local_forest:
            return "local_forest"
        if self.is_local_poset:
            return "local_poset"
        if self.is_interval:
            return "interval"
        return "greedoid"


def _subfeasible_by_scan(g: Greedoid, x: int) -> bool:
    return any(x & ~f == 0 for f in g.family)


# Raw definitions, used to re-verify every witness independently of the
# search loops below.

def lup_fails(g: Greedoid, a: int, b: int) -> bool:
    return (a in g.family and b in g.family and _subfeasible_by_scan(g, a | b)
            and (a | b) not in g.family)


def lip_fails(g: Greedoid, a: int, b: int) -> bool:
    return (a in g.family and b in g.family and _subfeasible_by_scan(g, a | b)
            and (a & b) not in g.family)


def lfp_fails(g: Greedoid, a: int, x: int, y: int, z: int) -> bool:
    X, Y, Z = 1 << x, 1 << y, 1 << z
    fam = g.family
    hyp = all(s in fam for s in (a, a | X, a | Y, a | X | Y, a | X | Y | Z))
    return hyp and (a | X | Z) not in fam and (a | Y | Z) not in fam


def strong_exchange_fails(g: Greedoid, a: int, b: int, x: int) -> bool:
    X = 1 << x
    fam = g.family
    bases = set(g.bases)
    if not (a & ~b == 0 and a in fam and (a | X) in fam and b in bases and not b & X):
        return False
    return not any(
        ((b & ~(1 << y)) | X) in bases and (a | (1 << y)) in fam for y in bits(b & ~a)
    )


def _search_lup(g):
    members = g.members
    sub = g.subfeasible_table
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            u = a | b
            if sub[u] and u not in g.family:
                return (a, b)
    return None


def _search_lip(g):
    members = g.members
    sub = g.subfeasible_table
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if sub[a | b] and (a & b) not in g.family:
                return (a, b)
    return None


def _search_lfp(g):
    fam = g.family
    gamma = g.continuation_table
    for a in sorted(fam):
        cont = list(bits(gamma[a]))
        for i, x in enumerate(cont):
            for y in cont[i + 1:]:
                axy = a | (1 << x) | (1 << y)
                if axy not in fam:
                    continue
                for z in bits(gamma[axy]):
                    if (a | (1 << x) | (1 << z)) not in fam and (a | (1 << y) | (1 << z)) not in fam:
                        return (a, x, y, z)
    return None


def _search_strong_exchange(g):
    fam = g.family
    bases = g.bases
    base_set = set(bases)
    for a in g.members:
        for x in bits(g.continuation_table[a]):
            X = 1 << x
            for b in bases:
                if a & ~b or b & X:
                    continue
                if not any(((b & ~(1 << y)) | X) in base_set and (a | (1 << y)) in fam
                           for y in bits(b & ~a)):
                    return (a, b, x)
    return None


def classify(g: Greedoid) -> ClassReport:
    return memo(g, "classify", lambda: _classify(g))


def _classify(g: Greedoid) -> ClassReport:
    witnesses = {}
    bad = verify_axioms(g)
    witnesses["greedoid"] = bad
    lup = _search_lup(g)
    lip = _search_lip(g)
    lfp = _search_lfp(g)
    sx = _search_strong_exchange(g)
    if lup is not None:
        assert lup_fails(g, *lup)
    if lip is not None:
        assert lip_fails(g, *lip)
    if lfp is not None:
        assert lfp_fails(g, *lfp)
    if sx is not None:
        assert strong_exchange_fails(g, *sx)
    witnesses.update(lup=lup, lip=lip, lfp=lfp, strong_exchange=sx)
    return ClassReport(
        is_greedoid=bad is None,
        has_lup=lup is None,
        has_lip=lip is None,
        has_lfp=lfp is None,
        has_strong_exchange=sx is None,
        witnesses=witnesses,
    )


def require_interval(g: Greedoid) -> None:
    if not classify(g).is_interval:
        raise NotInterval("greedoid lacks the local union property")


def require_local_poset(g: Greedoid) -> None:
    if not classify(g).is_local_poset:
        raise NotLocalPoset("greedoid is not a local poset greedoid")


def require_local_forest(g: Greedoid) -> None:
    if not classify(g).is_local_forest:
        raise NotLocalForest("greedoid is not a local forest greedoid")


def check_strong_exchange(g: Greedoid):
    """Return ``(holds, witness)`` where witness is a failing ``(A, B, x)``."""
    report = classify(g)
    return report.has_strong_exchange, report.witnesses["strong_exchange"]


def check_supermodularity(g: Greedoid):
    """Check r(A) + r(B) <= r(A|B) + r(A&B) whenever A|B is subfeasible.

    Pairs are generated per subfeasible union U as A subset of U and
    B = (U - A) | C with C a subset of A, so each pair is visited once per
    ordering.
    """
    r = g.rank_table
    sub = g.subfeasible_table
    for u in range(1 << g.n):
        if not sub[u]:
            continue
        ru = r[u]
        a = u
        while True:
            rest = u & ~a
            c = a
            while True:
                b = rest | c
                if r[a] + r[b] > ru + r[a & b]:
                    return False, (a, b)
                if c == 0:
                    break
                c = (c - 1) & a
            if a == 0:
                break
            a = (a - 1) & u
    return True, None


def check_path_uniqueness(g: Greedoid):
    """Path-ordering characterization of local forest greedoids.

    Holds iff every path has exactly one feasible ordering and every prefix
    of that ordering is a path.  The answer must agree with the local forest
    property; disagreement raises ``AssertionError``.
    """
    from .paths import all_paths

    report = classify(g)
    if not report.is_local_poset:
        raise NotLocalPoset("path uniqueness is only defined for local poset greedoids")
    paths = all_paths(g)
    result = (True, None)
    for p in sorted(paths, key=lambda m: (popcount(m), m)):
        orders = feasible_orderings(g, p)
        if len(orders) != 1:
            result = (False, ("orderings", p, tuple(orders)))
            break
        order = orders[0]
        prefix = 0
        bad_prefix = None
        for e in order:
            prefix |= 1 << e
            if prefix not in paths:
                bad_prefix = prefix
                break
        if bad_prefix is not None:
            result = (False, ("prefix", p, order, bad_prefix))
            break
    if result[0] != report.has_lfp:
        raise AssertionError("path uniqueness disagrees with the local forest property")
    return result
