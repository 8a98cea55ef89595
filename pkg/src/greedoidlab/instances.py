"""Instance files and the bundled fixture corpus.

An instance file is a version line, optional ``#`` comment lines, then one
JSON object::

    greedoid-instance 1
    # free-form comments
    {
      "greedoid": {"kind": "branching", "nodes": [...], "root": "r",
                   "edges": [["a", "r", "v"]], "arcs": [["d", "v", "u"]]},
      "weights": {"c": {"a": "1", "b": "2/3"}},
      "objective": {"kind": "table", "direction": "max",
                    "table": {"": "0", "a": "2", "a,c": "3"}},
      "checks": [{"ordering": ["a", "c"], "value": "3"}]
    }

Greedoid kinds: ``explicit`` (elements, family), ``uniform_matroid``
(n, k, optional elements), ``graphic_matroid`` (nodes, edges),
``branching`` (nodes, root, edges, arcs), and the nestable wrappers
``direct_sum`` (left, right), ``rooted_extension`` (base, ordering) and
``minor`` (base, delete, contract).  Rationals are strings ``"p/q"`` or
integers.  Table keys are comma-joined element lists, sorted by declaration
order for set tables and in sequence order for ``ordered_table``; ``""`` is
the empty set.  Objective kinds: ``table``, ``ordered_table``, ``linear``,
``path_sum``, ``bottleneck`` (the weight-based ones read ``weights.c``).
``checks`` are assertions on the objective value of given orderings, run
whenever the instance is loaded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import core
from .core import Edge, Greedoid, MixedGraph
from .errors import GreedoidError, ParseError, ValidationError
from .greedy import Objective

HEADER = "greedoid-instance 1"
FIXTURES = ("fig1", "fig2", "lpg_counterexample", "shadow_strict", "k3", "single")

OBJECTIVE_KINDS = {
    "table": "set_table",
    "ordered_table": "ordered_table",
    "linear": "linear",
    "path_sum": "path_sum",
    "path-sum": "path_sum",
    "bottleneck": "bottleneck",
}


@dataclass
class InstanceFile:
    greedoid: dict
    weights: dict = field(default_factory=dict)
    objective: dict | None = None
    checks: list = field(default_factory=list)
    comments: tuple = ()

    def build(self) -> Greedoid:
        return build_greedoid(self.greedoid)

    def graph(self) -> MixedGraph:
        desc = self.greedoid
        if desc.get("kind") not in ("graphic_matroid", "branching"):
            raise ValidationError("this instance has no underlying graph")
        return _graph(desc)

    def weight(self, g: Greedoid, name: str, default=None):
        """Index-ordered weights; missing elements take ``default``."""
        table = self.weights.get(name)
        if table is None:
            if default is None:
                raise ValidationError(f"instance has no weights {name!r}")
            return tuple(Fraction(default) for _ in g.elements)
        if default is None:
            missing = [e for e in g.elements if e not in table]
            if missing:
                raise ValidationError(f"weights {name!r} miss elements {missing}")
        return tuple(table[e] if e in table else Fraction(default) for e in g.elements)

    def objective_for(self, g: Greedoid, kind: str | None = None, direction: str | None = None) -> Objective:
        desc = dict(self.objective or {})
        if kind is not None:
            kind = OBJECTIVE_KINDS.get(kind, kind)
            if OBJECTIVE_KINDS.get(desc.get("kind")) != kind:
                desc = {"kind": kind}
        if not desc:
            raise ValidationError("instance has no objective and none was requested")
        if direction is not None:
            desc["direction"] = direction
        return _objective(g, desc, self)


def _graph(desc: dict) -> MixedGraph:
    edges = [Edge(str(i), str(t), str(h), False) for i, t, h in desc.get("edges", [])]
    edges += [Edge(str(i), str(t), str(h), True) for i, t, h in desc.get("arcs", [])]
    return MixedGraph(tuple(desc["nodes"]), tuple(edges), desc.get("root"))


def build_greedoid(desc: dict, where: str = "greedoid") -> Greedoid:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValidationError(f"{where}: expected an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "explicit":
            return core.explicit(desc["elements"], desc["family"])
        if kind == "uniform_matroid":
            return core.uniform_matroid(int(desc["n"]), int(desc["k"]), desc.get("elements"))
        if kind == "graphic_matroid":
            return core.graphic_matroid(_graph(desc))
        if kind == "branching":
            return core.branching(_graph(desc), desc.get("root"))
        if kind == "direct_sum":
            return core.direct_sum(build_greedoid(desc["left"], where + ".left"),
                                   build_greedoid(desc["right"], where + ".right"))
        if kind == "rooted_extension":
            base = build_greedoid(desc["base"], where + ".base")
            order = [base.ground.index(e) for e in desc["ordering"]]
            x = 0
            for i in order:
                x |= 1 << i
            return core.rooted_extension(base, x, order)
        if kind == "minor":
            base = build_greedoid(desc["base"], where + ".base")
            return core.minor(base, base.mask(desc.get("delete", [])), base.mask(desc.get("contract", [])))
    except KeyError as exc:
        raise ValidationError(f"{where}: missing field {exc}") from None
    except ValidationError:
        raise
    except GreedoidError as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    raise ValidationError(f"{where}: unknown kind {kind!r}")


def _split(key: str) -> list[str]:
    return [k for k in key.split(",") if k] if key else []


def _objective(g: Greedoid, desc: dict, inst: InstanceFile) -> Objective:
    kind = OBJECTIVE_KINDS.get(desc.get("kind"))
    if kind is None:
        raise ValidationError(f"objective: unknown kind {desc.get('kind')!r}")
    direction = desc.get("direction", "min" if kind in ("path_sum", "bottleneck") else "max")
    if kind == "set_table":
        table = {g.mask(_split(k)): v for k, v in desc.get("table", {}).items()}
        return Objective.set_table(table, direction)
    if kind == "ordered_table":
        table = {tuple(g.ground.index(e) for e in _split(k)): v
                 for k, v in desc.get("table", {}).items()}
        return Objective.ordered_table(table, direction)
    c = inst.weight(g, desc.get("weights", "c"))
    return {"linear": Objective.linear, "path_sum": Objective.path_sum,
            "bottleneck": Objective.bottleneck}[kind](c, direction)


def _rational(value, where):
    try:
        return core.to_fraction(value)
    except GreedoidError:
        raise ValidationError(f"{where}: not a rational: {value!r}") from None


def validate(inst: InstanceFile) -> Greedoid:
    g = inst.build()
    for name, table in inst.weights.items():
        for key, value in table.items():
            if key not in g.elements:
                raise ValidationError(f"weights.{name}: unknown element {key!r}")
            table[key] = _rational(value, f"weights.{name}.{key}")
    if inst.objective is not None:
        desc = inst.objective
        table = desc.get("table", {})
        for key in list(table):
            for e in _split(key):
                if e not in g.elements:
                    raise ValidationError(f"objective.table: unknown element {e!r}")
            table[key] = _rational(table[key], f"objective.table.{key}")
        try:
            obj = inst.objective_for(g)
        except GreedoidError as exc:
            raise ValidationError(f"objective: {exc}") from exc
        for check in inst.checks:
            check["value"] = _rational(check["value"], "checks.value")
            try:
                seq = [g.ground.index(e) for e in check["ordering"]]
                got = obj.value_of(g, seq)
            except GreedoidError as exc:
                raise ValidationError(f"checks: {exc}") from exc
            if got != check["value"]:
                raise ValidationError(
                    f"self-test failed: w({','.join(check['ordering'])}) = {got}, expected {check['value']}"
                )
    return g


def parse_text(text: str, source: str = "<string>") -> InstanceFile:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"{source}: expected header {HEADER!r}", 1)
    comments = []
    start = 1
    while start < len(lines) and (lines[start].startswith("#") or not lines[start].strip()):
        if lines[start].startswith("#"):
            comments.append(lines[start][1:].strip())
        start += 1
    body = "\n".join(lines[start:])
    try:
        data = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", start + exc.lineno) from None
    if not isinstance(data, dict) or "greedoid" not in data:
        raise ParseError(f"{source}: body must be an object with a 'greedoid' entry", start + 1)
    unknown = set(data) - {"greedoid", "weights", "objective", "checks"}
    if unknown:
        raise ParseError(f"{source}: unknown sections {sorted(unknown)}", start + 1)
    inst = InstanceFile(
        greedoid=data["greedoid"],
        weights={k: dict(v) for k, v in data.get("weights", {}).items()},
        objective=data.get("objective"),
        checks=list(data.get("checks", [])),
        comments=tuple(comments),
    )
    validate(inst)
    return inst


def parse_instance(path) -> InstanceFile:
    path = Path(path)
    return parse_text(path.read_text(), str(path))


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def dump_instance(inst: InstanceFile) -> str:
    body = {"greedoid": inst.greedoid}
    if inst.weights:
        body["weights"] = inst.weights
    if inst.objective is not None:
        body["objective"] = inst.objective
    if inst.checks:
        body["checks"] = inst.checks
    lines = [HEADER] + [f"# {c}" for c in inst.comments]
    lines.append(json.dumps(_plain(body), indent=2))
    return "\n".join(lines) + "\n"


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise ValidationError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return resources.files("greedoidlab").joinpath("fixtures").joinpath(f"{name}.inst").read_text()


def load_fixture(name: str) -> InstanceFile:
    return parse_text(fixture_text(name), f"fixture:{name}")
