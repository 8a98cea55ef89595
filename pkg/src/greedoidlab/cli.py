"""Command-line interface.

Every command reads an instance file (or ``--fixture NAME``) and prints
``key=value`` lines.  Exit status: 0 on success, 2 when a property check
finds a violation, 1 on errors (including bad usage).
"""

from __future__ import annotations

import argparse
import sys

from . import axioms, game, greedy, instances, paths, polyhedra
from .core import to_fraction
from .errors import GreedoidError

OK, ERROR, VIOLATION = 0, 1, 2


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def fmt_set(g, mask) -> str:
    return g.format(mask) if mask else "{}"


def fmt_seq(g, seq) -> str:
    return ",".join(g.names(seq)) if seq else "()"


def fmt_bool(b) -> str:
    return "true" if b else "false"


def _load(args):
    if args.fixture and args.instance:
        raise GreedoidError("give either an instance path or --fixture, not both")
    if args.fixture:
        return instances.load_fixture(args.fixture)
    if args.instance:
        return instances.parse_instance(args.instance)
    raise GreedoidError("an instance path or --fixture NAME is required")


def _objective(args, inst, g):
    return inst.objective_for(g, getattr(args, "objective", None), getattr(args, "direction", None))


def _parse_set(g, text: str) -> int:
    text = text.strip().strip("{}")
    return g.mask([t.strip() for t in text.split(",") if t.strip()])


def _parse_point(g, text: str):
    values = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise GreedoidError(f"point entries look like name=value, got {part!r}")
        key = key.strip()
        g.ground.index(key)
        values[key] = to_fraction(value.strip())
    missing = [e for e in g.elements if e not in values]
    if missing:
        raise GreedoidError(f"point misses elements {missing}")
    return values


def cmd_classify(args, inst, g, out):
    report = axioms.classify(g)
    out(f"class={report.class_name}")
    out(f"lup={fmt_bool(report.has_lup)} lip={fmt_bool(report.has_lip)} "
        f"lfp={fmt_bool(report.has_lfp)} strong_exchange={fmt_bool(report.has_strong_exchange)}")
    out(f"elements={g.n} feasible_sets={len(g.family)} rank={g.rank} bases={len(g.bases)}")
    return OK


def cmd_strong_exchange(args, inst, g, out):
    holds, witness = axioms.check_strong_exchange(g)
    out(f"strong_exchange={fmt_bool(holds)}")
    if not holds:
        a, b, x = witness
        out(f"A={fmt_set(g, a)} B={fmt_set(g, b)} x={g.elements[x]}")
        return VIOLATION
    return OK


def cmd_greedy(args, inst, g, out):
    obj = _objective(args, inst, g)
    if args.all_runs:
        runs = greedy.greedy(g, obj, "all_runs")
        for i, t in enumerate(runs, 1):
            out(f"run={i} order={fmt_seq(g, t.order)} base={fmt_set(g, t.base)} value={t.value}")
        return OK
    t = greedy.greedy(g, obj)
    out(f"base={fmt_set(g, t.base)} value={t.value}")
    return OK


def cmd_brute_opt(args, inst, g, out):
    base, value = greedy.brute_force_optimum(g, _objective(args, inst, g))
    out(f"base={fmt_set(g, base)} value={value}")
    return OK


def cmd_shadow(args, inst, g, out):
    base = _parse_set(g, args.base)
    sh = paths.shadow_vector(g, base)
    out(f"base={fmt_set(g, base)}")
    out(" ".join(f"{e}={v}" for e, v in zip(g.elements, sh)))
    return OK


def cmd_polytope_check(args, inst, g, out):
    point = _parse_point(g, args.point)
    bad = polyhedra.q_violations(g, point)
    out(f"member_of_Q={fmt_bool(not bad)}")
    if bad:
        u = bad[0]
        out(f"violated_U={fmt_set(g, u)} bound={polyhedra.q_bound(g, u)}")
        return VIOLATION
    return OK


def cmd_dual_cert(args, inst, g, out):
    c = inst.weight(g, "c")
    cert = polyhedra.dual_certificate(g, c)
    for i, (u, y) in enumerate(zip(cert.sets, cert.values), 1):
        out(f"U{i}={fmt_set(g, u)} y{i}={y}")
    out(f"objective={cert.objective}")
    if not args.verify:
        return OK
    report = polyhedra.verify_certificate(g, c, cert)
    claims = polyhedra.certificate_claims(g, c, cert)
    out(f"nonnegative={fmt_bool(report.nonnegative)} covering={fmt_bool(report.covering)} "
        f"objective_matches_ranks={fmt_bool(report.objective_matches_ranks)}")
    out(f"primal_value={report.primal_value} primal_feasible={fmt_bool(report.primal_feasible)} "
        f"strong_duality={fmt_bool(report.strong_duality)}")
    out(" ".join(f"{k}={fmt_bool(v)}" for k, v in claims.items()))
    return OK if report.ok and all(claims.values()) else VIOLATION


def cmd_game_value(args, inst, g, out):
    d = inst.weight(g, "d", 1)
    c = inst.weight(g, "c", 0)
    problem = game.GameInstance(g, d, c)
    sol = game.game_value_formula(problem)
    if not args.oracle:
        out(f"value={sol.value} U={fmt_set(g, sol.argmax_set)}")
        return OK
    lp = game.game_value_oracle(problem)
    out(f"formula={sol.value} lp={lp.value} U={fmt_set(g, sol.argmax_set)}")
    out("attacker=" + ",".join(f"{e}:{v}" for e, v in zip(g.elements, lp.attacker_mix)))
    out("defender=" + " ".join(f"{{{fmt_set(g, b)}}}:{v}" for b, v in zip(g.bases, lp.defender_mix) if v))
    out(f"agree={fmt_bool(sol.value == lp.value)}")
    return OK if sol.value == lp.value else VIOLATION


def cmd_strength(args, inst, g, out):
    graph = inst.graph()
    p = inst.weight(g, "p", 1)
    sigma = game.strength(graph, p)
    out(f"strength={sigma} inverse={1 / sigma}")
    return OK


def cmd_check_conditions(args, inst, g, out):
    obj = _objective(args, inst, g)
    which = args.which
    if which == "kl":
        holds, w = greedy.check_kl_conditions(g, obj)
        out(f"condition=kl holds={fmt_bool(holds)}")
        if not holds:
            out(f"violates={w[0]} s1={fmt_seq(g, w[1])} s2={fmt_seq(g, w[2])}")
    elif which == "c3":
        holds, w = greedy.check_condition_3(g, obj)
        out(f"condition=c3 holds={fmt_bool(holds)}")
        if not holds:
            a, b, x, z = w
            out(f"A={fmt_set(g, a)} B={fmt_set(g, b)} x={g.elements[x]} z={g.elements[z]}")
    elif which == "c6":
        holds, w = greedy.check_condition_6(g, obj)
        out(f"condition=c6 holds={fmt_bool(holds)}")
        if not holds:
            a, b, x = w
            out(f"A={fmt_set(g, a)} B={fmt_set(g, b)} x={g.elements[x]}")
    else:
        holds, w = greedy.check_condition_7(g, obj)
        out(f"condition=c7 holds={fmt_bool(holds)}")
        if not holds:
            a, b, x, z = w
            out(f"A={fmt_set(g, a)} B={fmt_set(g, b)} x={g.elements[x]} z={g.elements[z]}")
    return OK if holds else VIOLATION


COMMANDS = {
    "classify": cmd_classify,
    "check-strong-exchange": cmd_strong_exchange,
    "greedy": cmd_greedy,
    "brute-opt": cmd_brute_opt,
    "shadow": cmd_shadow,
    "polytope-check": cmd_polytope_check,
    "dual-cert": cmd_dual_cert,
    "game-value": cmd_game_value,
    "strength": cmd_strength,
    "check-conditions": cmd_check_conditions,
}


def build_parser() -> Parser:
    parser = Parser(prog="greedoidlab", description="Exact greedoid optimization experiments.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    source = Parser(add_help=False)
    source.add_argument("instance", nargs="?", help="instance file")
    source.add_argument("--fixture", choices=instances.FIXTURES, help="bundled fixture instead of a file")

    objective = Parser(add_help=False)
    objective.add_argument("--objective", choices=["table", "linear", "path-sum", "bottleneck"])
    objective.add_argument("--direction", choices=["min", "max"])

    sub.add_parser("classify", parents=[source], help="greedoid class and axiom flags")
    sub.add_parser("check-strong-exchange", parents=[source], help="strong exchange axiom")
    p = sub.add_parser("greedy", parents=[source, objective], help="run the greedy algorithm")
    p.add_argument("--all-runs", action="store_true", help="every tie-breaking of the greedy run")
    sub.add_parser("brute-opt", parents=[source, objective], help="optimum base by enumeration")
    p = sub.add_parser("shadow", parents=[source], help="shadow vector of a feasible set")
    p.add_argument("--base", required=True, help="comma-separated elements")
    p = sub.add_parser("polytope-check", parents=[source], help="membership of a point in Q")
    p.add_argument("--point", required=True, help='e.g. "a=2,b=1,c=1,d=1"')
    p = sub.add_parser("dual-cert", parents=[source], help="dual certificate for weights c")
    p.add_argument("--verify", action="store_true", help="check the certificate and its claims")
    p = sub.add_parser("game-value", parents=[source], help="value of the base game")
    p.add_argument("--oracle", action="store_true", help="compare against the exact LP")
    sub.add_parser("strength", parents=[source], help="strength of the underlying graph")
    p = sub.add_parser("check-conditions", parents=[source, objective], help="greedy optimality conditions")
    p.add_argument("--which", required=True, choices=["kl", "c3", "c6", "c7"])

    p = sub.add_parser("fixtures", help="bundled fixtures")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--show", choices=instances.FIXTURES, metavar="NAME")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else ERROR
    lines = []
    try:
        if args.command == "fixtures":
            if args.list:
                lines.extend(f"fixture={name}" for name in instances.FIXTURES)
            else:
                lines.append(instances.fixture_text(args.show).rstrip("\n"))
            status = OK
        else:
            inst = _load(args)
            g = inst.build()
            status = COMMANDS[args.command](args, inst, g, lines.append)
    except (GreedoidError, OSError) as exc:
        sys.stdout.write("".join(line + "\n" for line in lines))
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    sys.stdout.write("".join(line + "\n" for line in lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
