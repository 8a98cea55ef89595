"""The polyhedron Q = {x : x(U) >= r(S) - r(S-U) for all U}, shadow vertices
and greedy-built dual certificates.

Optimality over Q is certified by a primal point (a shadow vector, which
lies in Q) and a dual-feasible certificate with the same objective value; no
general LP solver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import require_local_forest
from .core import Greedoid, bits, mask_key
from .errors import BadParams, NegativeWeight
from .greedy import Objective, greedy
from .paths import path, shadow_vector


@dataclass(frozen=True)
class DualCertificate:
    sets: tuple[int, ...]
    values: tuple[Fraction, ...]
    objective: Fraction
    # greedy data the construction was read off
    order: tuple[int, ...] = ()
    base: int = 0
    paths: tuple[int, ...] = field(default=())

    def negate(self, i: int) -> "DualCertificate":
        vals = list(self.values)
        vals[i] = -vals[i]
        return DualCertificate(self.sets, tuple(vals), self.objective, self.order, self.base, self.paths)

    def with_objective(self, objective) -> "DualCertificate":
        return DualCertificate(self.sets, self.values, Fraction(objective), self.order, self.base, self.paths)


@dataclass
class CertificateReport:
    nonnegative: bool
    covering: bool
    objective_matches_ranks: bool
    strong_duality: bool
    primal_feasible: bool
    primal_value: Fraction
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _nonneg(g: Greedoid, c) -> tuple[Fraction, ...]:
    c = g.weights(c)
    if any(v < 0 for v in c):
        raise NegativeWeight("weights must be non-negative")
    return c


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def q_bound(g: Greedoid, u: int) -> int:
    """Right-hand side r(S) - r(S - U) of the constraint for U."""
    full = (1 << g.n) - 1
    return g.rank - g.rank_table[full & ~u]


def q_violations(g: Greedoid, p) -> list[int]:
    """All U with p(U) < r(S) - r(S-U); empty exactly when p lies in Q."""
    p = g.weights(p)
    sums = [Fraction(0)] * (1 << g.n)
    out = []
    for u in range(1, 1 << g.n):
        low = (u & -u).bit_length() - 1
        sums[u] = sums[u & (u - 1)] + p[low]
        if sums[u] < q_bound(g, u):
            out.append(u)
    return out


def separating_inequality_check(g: Greedoid, coeffs, bound) -> bool:
    """Whether coeffs . sh_B >= bound for every base B."""
    coeffs = g.weights(coeffs)
    bound = Fraction(bound)
    return all(dot(coeffs, shadow_vector(g, b)) >= bound for b in g.bases)


def min_over_shadow(g: Greedoid, c) -> tuple[int, Fraction]:
    c = _nonneg(g, c)
    best = None
    for b in sorted(g.bases, key=mask_key):
        v = dot(c, shadow_vector(g, b))
        if best is None or v < best[1]:
            best = (b, v)
    return best


def dual_certificate(g: Greedoid, c) -> DualCertificate:
    require_local_forest(g)
    c = _nonneg(g, c)
    trace = greedy(g, Objective.path_sum(c, "min"))
    base = trace.base
    picks = trace.order
    r = len(picks)
    rest = tuple(x for x in range(g.n) if not base >> x & 1)
    order = picks + rest

    def cost(mask):
        return sum((c[e] for e in bits(mask)), Fraction(0))

    paths = tuple(path(g, base, s) for s in picks)
    sets = []
    values = []
    prefix = 0
    prev = Fraction(0)
    for i, s in enumerate(picks):
        sets.append(g.continuation_table[prefix])
        cur = cost(paths[i])
        values.append(cur - prev)
        prev = cur
        prefix |= 1 << s
    for s in rest:
        covered = sum((values[j] for j in range(r) if sets[j] >> s & 1), Fraction(0))
        sets.append(1 << s)
        values.append(c[s] - covered)
    objective = sum(((r - i) * values[i] for i in range(r)), Fraction(0))
    return DualCertificate(tuple(sets), tuple(values), objective, order, base, paths)


def verify_certificate(g: Greedoid, c, cert: DualCertificate) -> CertificateReport:
    c = g.weights(c)
    failures = []
    nonneg = all(v >= 0 for v in cert.values)
    if not nonneg:
        failures.append("nonnegative")
    cover = [Fraction(0)] * g.n
    for u, v in zip(cert.sets, cert.values):
        for x in bits(u):
            cover[x] += v
    covering = tuple(cover) == c
    if not covering:
        failures.append("covering")
    by_ranks = sum((q_bound(g, u) * v for u, v in zip(cert.sets, cert.values)), Fraction(0))
    matches = by_ranks == cert.objective
    if not matches:
        failures.append("objective_matches_ranks")
    if all(v >= 0 for v in c):
        base, primal = min_over_shadow(g, c)
        primal_ok = not q_violations(g, shadow_vector(g, base))
    else:
        primal, primal_ok = None, False
    if not primal_ok:
        failures.append("primal_feasible")
    duality = primal is not None and primal == cert.objective
    if not duality:
        failures.append("strong_duality")
    return CertificateReport(nonneg, covering, matches, duality, primal_ok, primal, failures)


def certificate_claims(g: Greedoid, c, cert: DualCertificate) -> dict[str, bool]:
    """Re-check the intermediate claims of the dual construction.

    ``path_extension``: the path of x in B_j + x is P_{j-1} + x for the
    first j with x in U_j.  ``interval``: {i : x in U_i} is an interval and
    the y-values over it sum to c(P_k) - c(P_{j-1}).  ``nondecreasing``:
    c(P_i) is nondecreasing.  ``rank_profile``: r(S - U_i) = i - 1 for
    greedy steps and r(S) afterwards.
    """
    c = g.weights(c)
    r = len(cert.paths)
    full = (1 << g.n) - 1

    def cost(mask):
        return sum((c[e] for e in bits(mask)), Fraction(0))

    prefixes = [0]
    for s in cert.order[:r]:
        prefixes.append(prefixes[-1] | (1 << s))
    pcost = [Fraction(0)] + [cost(p) for p in cert.paths]
    pmask = [0] + list(cert.paths)

    path_extension = interval = True
    for x in range(g.n):
        hits = [i for i in range(r) if cert.sets[i] >> x & 1]
        if not hits:
            continue
        j, k = hits[0], hits[-1]
        if hits != list(range(j, k + 1)):
            interval = False
        if sum((cert.values[i] for i in hits), Fraction(0)) != pcost[k + 1] - pcost[j]:
            interval = False
        bj = prefixes[j]
        if path(g, bj | (1 << x), x) != pmask[j] | (1 << x):
            path_extension = False
    nondecreasing = all(pcost[i] <= pcost[i + 1] for i in range(1, r))
    rank_profile = all(
        g.rank_table[full & ~u] == (i if i < r else g.rank) for i, u in enumerate(cert.sets)
    )
    return {"path_extension": path_extension, "interval": interval,
            "nondecreasing": nondecreasing, "rank_profile": rank_profile}


def integrality_check(g: Greedoid, c) -> bool:
    c = _nonneg(g, c)
    if any(v.denominator != 1 for v in c):
        raise BadParams("integrality check needs integer weights")
    base, _ = min_over_shadow(g, c)
    primal_integral = all(isinstance(v, int) for v in shadow_vector(g, base))
    cert = dual_certificate(g, c)
    return primal_integral and all(v.denominator == 1 for v in cert.values)
