"""The Local Forest Greedoid Base Game and an exact zero-sum solver.

The Attacker picks an element s, the Defender a base B, and the Defender
pays ``d(s) * sh_B(s) - c(s)``.  The closed-form value is checked against a
dense rational simplex on the standard zero-sum LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Greedoid, MixedGraph, bits, to_fraction
from .errors import BadParams, Disconnected
from .paths import shadow_vector


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class GameInstance:
    greedoid: Greedoid
    d: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self):
        g = self.greedoid
        object.__setattr__(self, "d", g.weights(self.d))
        object.__setattr__(self, "c", g.weights(self.c))
        if g.n == 0:
            raise BadParams("the game needs a nonempty ground set")
        if any(v <= 0 for v in self.d):
            raise BadParams("damage weights d must be positive")
        if g.rank == 0:
            raise BadParams("rank-0 greedoids give the Defender no choice")


@dataclass(frozen=True)
class GameSolution:
    value: Fraction
    argmax_set: int | None = None
    attacker_mix: tuple[Fraction, ...] | None = None
    defender_mix: tuple[Fraction, ...] | None = None


def payoff_matrix(inst: GameInstance) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """Rows are elements, columns are bases (in ``greedoid.bases`` order)."""
    g = inst.greedoid
    cols = g.bases
    shadows = [shadow_vector(g, b) for b in cols]
    matrix = [
        [inst.d[s] * sh[s] - inst.c[s] for sh in shadows]
        for s in range(g.n)
    ]
    return matrix, cols


def game_value_formula(inst: GameInstance) -> GameSolution:
    """max over nonempty U of (r(S) - r(S-U) - q(U)) / p(U) with p = 1/d, q = c/d."""
    g = inst.greedoid
    p = [1 / d for d in inst.d]
    q = [c / d for c, d in zip(inst.c, inst.d)]
    full = (1 << g.n) - 1
    psum = [Fraction(0)] * (1 << g.n)
    qsum = [Fraction(0)] * (1 << g.n)
    best = None
    for u in range(1, 1 << g.n):
        low = (u & -u).bit_length() - 1
        rest = u & (u - 1)
        psum[u] = psum[rest] + p[low]
        qsum[u] = qsum[rest] + q[low]
        v = (g.rank - g.rank_table[full & ~u] - qsum[u]) / psum[u]
        if best is None or v > best[0]:
            best = (v, u)
    return GameSolution(best[0], best[1])


def simplex_max(c: Sequence, a: Sequence[Sequence], b: Sequence):
    """Maximize c.x subject to a x <= b, x >= 0, for b >= 0.

    Dense tableau over Fractions with Bland's rule.  Returns
    ``(value, x, y)`` where ``y`` are the optimal dual prices.
    """
    m, n = len(a), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("simplex_max needs b >= 0 (slack basis)")
    rows = [
        [Fraction(v) for v in a[i]] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b[i])]
        for i in range(m)
    ]
    reduced = [Fraction(v) for v in c] + [Fraction(0)] * m
    basis = [n + i for i in range(m)]
    value = Fraction(0)
    while True:
        enter = next((j for j in range(n + m) if reduced[j] > 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:
            raise Unbounded("objective is unbounded")
        r = leave[1]
        piv = rows[r][enter]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        f = reduced[enter]
        reduced = [v - f * w for v, w in zip(reduced, rows[r][:-1])]
        value += f * rows[r][-1]
        basis[r] = enter
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    y = [-reduced[n + i] for i in range(m)]
    return value, x, y


def solve_zero_sum(matrix: Sequence[Sequence]):
    """Exact value and optimal mixed strategies; the row player maximizes.

    Returns ``(value, row_mix, col_mix)``; both guarantees are checked
    exactly before returning.
    """
    m = [[to_fraction(v) for v in row] for row in matrix]
    if not m or not m[0]:
        raise BadParams("the payoff matrix needs at least one row and column")
    shift = 1 - min(min(row) for row in m)
    pos = [[v + shift for v in row] for row in m]
    nrows, ncols = len(pos), len(pos[0])
    total, v, u = simplex_max([1] * ncols, pos, [1] * nrows)
    shifted = 1 / total
    col_mix = tuple(x / total for x in v)
    row_mix = tuple(x / total for x in u)
    value = shifted - shift
    for i in range(nrows):
        if sum(m[i][j] * col_mix[j] for j in range(ncols)) > value:
            raise ArithmeticError("column strategy fails its guarantee")
    for j in range(ncols):
        if sum(m[i][j] * row_mix[i] for i in range(nrows)) < value:
            raise ArithmeticError("row strategy fails its guarantee")
    if sum(row_mix) != 1 or sum(col_mix) != 1:
        raise ArithmeticError("mixed strategies do not sum to one")
    return value, row_mix, col_mix


def game_value_oracle(inst: GameInstance) -> GameSolution:
    matrix, _ = payoff_matrix(inst)
    value, attacker, defender = solve_zero_sum(matrix)
    return GameSolution(value, None, attacker, defender)


def defender_shadow_point(inst: GameInstance, defender_mix) -> tuple[Fraction, ...]:
    """x(s) = sum over bases of mix(B) * sh_B(s)."""
    g = inst.greedoid
    out = [Fraction(0)] * g.n
    for weight, b in zip(defender_mix, g.bases):
        if weight:
            for s, v in enumerate(shadow_vector(g, b)):
                out[s] += weight * v
    return tuple(out)


def _components(nodes, edges, removed: int) -> int:
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    count = len(parent)
    for i, e in enumerate(edges):
        if removed >> i & 1:
            continue
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
            count -= 1
    return count


def strength(graph: MixedGraph, p) -> Fraction:
    """min p(U) / (comp(G - U) - 1) over edge sets U that disconnect the graph."""
    edges = graph.edges
    if hasattr(p, "items"):
        p = [to_fraction(p[e.id]) for e in edges]
    else:
        p = [to_fraction(v) for v in p]
    if len(p) != len(edges):
        raise BadParams("one weight per edge is required")
    if any(v <= 0 for v in p):
        raise BadParams("edge weights must be positive")
    if _components(graph.nodes, edges, 0) != 1:
        raise Disconnected("strength is defined for connected graphs")
    if len(graph.nodes) < 2:
        raise BadParams("a single node cannot be disconnected")
    best = None
    for u in range(1, 1 << len(edges)):
        comp = _components(graph.nodes, edges, u)
        if comp > 1:
            ratio = sum((p[i] for i in bits(u)), Fraction(0)) / (comp - 1)
            if best is None or ratio < best:
                best = ratio
    return best
