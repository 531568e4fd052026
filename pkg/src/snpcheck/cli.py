"""Command-line entry point.

Exit codes: 0 every selected property holds, 1 some property fails,
2 some property is inconclusive (and none fails), 3 bad input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from pathlib import Path

from . import __version__
from .behavior import (
    Answer,
    check_bounded,
    check_deadlock_free,
    check_live,
    check_quasi_live,
    check_reversible,
    check_safe,
)
from .dsl import DslSyntaxError, load_system
from .graph import ExploreLimits, explore, from_json, parse_config, reachable, to_dot, to_json
from .structural import (
    check_conservative,
    check_partial_conservative,
    check_structurally_bounded,
    has_synapse_cycle,
    struct_matrix,
)
from .system import ValidationError, build_matrix, run

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

GRAPH_PROPS = ("bounded", "safe", "deadlock-free", "live", "quasi-live", "reversible")
MATRIX_PROPS = ("structurally-bounded", "conservative", "partial-conservative", "cycle")
ALL_PROPS = GRAPH_PROPS + MATRIX_PROPS

_GRAPH_CHECKS = {
    "bounded": check_bounded,
    "safe": check_safe,
    "deadlock-free": check_deadlock_free,
    "live": check_live,
    "quasi-live": check_quasi_live,
    "reversible": check_reversible,
}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # exit code 2 means "inconclusive" here, so usage errors must not use it
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(path):
    try:
        return load_system(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except DslSyntaxError as exc:
        raise InputError(f"{path}: syntax error: {exc}") from None
    except ValidationError as exc:
        msgs = "\n  ".join(exc.report.errors)
        raise InputError(f"{path}: invalid system:\n  {msgs}") from None


def _limits(args) -> ExploreLimits:
    try:
        return ExploreLimits(args.max_vertices, args.max_depth, args.max_spikes)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _aligned(rows) -> list:
    if not rows:
        return []
    width = max(len(str(x)) for r in rows for x in r)
    return ["  ".join(str(x).rjust(width) for x in r) for r in rows]


# --------------------------------------------------------------- commands


def cmd_matrix(args) -> int:
    system = _load(args.file)
    mat = build_matrix(system)
    sm = struct_matrix(system)
    if args.json:
        sys.stdout.write(_dumps({
            "system": system.name, "n": system.n, "m": system.m,
            "neurons": list(system.names),
            "rules": [system.rule_label(i) for i in range(1, system.n + 1)],
            "matrix": [list(r) for r in mat],
            "struct_matrix": [list(r) for r in sm],
        }))
        return EXIT_OK
    print(f"spiking transition matrix ({system.n} x {system.m}):")
    label_w = max((len(system.rule_label(i)) for i in range(1, system.n + 1)), default=0)
    for i, line in enumerate(_aligned(mat), 1):
        print(f"  {system.rule_label(i).ljust(label_w)}  {line}")
    print(f"synapse matrix ({system.m} x {system.m}):")
    for line in _aligned(sm):
        print(f"  {line}")
    return EXIT_OK


def cmd_run(args) -> int:
    system = _load(args.file)
    if args.steps < 0:
        raise InputError("--steps must be >= 0")
    trace = run(system, args.strategy, args.steps, seed=args.seed)
    spiked = set(trace.spike_times)
    if args.json:
        sys.stdout.write(_dumps({
            "strategy": args.strategy, "seed": args.seed,
            "configs": [list(c) for c in trace.configs],
            "vectors": [list(v) for v in trace.vectors],
            "spike_times": trace.spike_times,
            "gap": trace.gap,
            "halted": trace.halted,
        }))
        return EXIT_OK
    print(f"{'step':>4}  {'configuration':<16} {'spiking vector':<20} out")
    for k, config in enumerate(trace.configs):
        sp = _fmt(trace.vectors[k]) if k < len(trace.vectors) else "-"
        mark = "*" if (k + 1) in spiked else ""
        print(f"{k:>4}  {_fmt(config):<16} {sp:<20} {mark}")
    print("halted" if trace.halted else f"stopped after {trace.steps} steps")
    if trace.gap is not None:
        print(f"first two output spikes at steps {trace.spike_times[0]} and "
              f"{trace.spike_times[1]}: gap {trace.gap}")
    return EXIT_OK


def _write(dest, text: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def cmd_explore(args) -> int:
    system = _load(args.file)
    g = explore(system, _limits(args), threads=args.threads)
    if args.json:
        _write(args.json, to_json(g))
    if args.dot:
        _write(args.dot, to_dot(g, system.name))
    status = g.status if g.complete else f"truncated ({g.reason})"
    print(f"{len(g.vertices)} vertices, {len(g.edges)} edges, {status}",
          file=sys.stderr if "-" in (args.json, args.dot) else sys.stdout)
    return EXIT_OK


def cmd_reach(args) -> int:
    system = _load(args.file)
    try:
        target = parse_config(args.target)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if len(target) != system.m:
        raise InputError(f"target has {len(target)} entries, system has {system.m} neurons")
    res = reachable(system, target, _limits(args))
    if args.json:
        sys.stdout.write(_dumps({
            "target": list(target), "verdict": res.verdict, "graph_status": res.status,
            "path": [{"src": list(a), "label": list(l), "dst": list(b)} for a, l, b in res.path],
        }))
    else:
        print(f"{_fmt(target)}: {res.verdict}")
        for a, label, b in res.path:
            print(f"  {_fmt(a)} --{_fmt(label)}--> {_fmt(b)}")
        if res.verdict == "reachable":
            print(f"witness length: {len(res.path)} steps")
    if res.verdict == "reachable":
        return EXIT_OK
    return EXIT_NO if res.verdict == "not-reachable" else EXIT_INCONCLUSIVE


def _summary(name, v) -> str:
    text = v.answer.value
    extra = []
    if v.answer is Answer.YES and name == "bounded":
        extra.append(f"s={v.details['s']}")
    if v.witness:
        w = v.witness
        if "rule" in w:
            extra.append(f"rule r{w['rule']}")
        if "vertex" in w:
            extra.append(_fmt(w["vertex"]))
        if "neurons" in w:
            extra.append("->".join(w["neurons"]))
    cert = v.details.get("certificate")
    if cert:
        if cert["kind"] == "solution":
            extra.append(f"y={_fmt(cert['y'])}")
        else:
            extra.append(f"Farkas x={_fmt(cert['row_multipliers'])}, "
                         f"x·M={_fmt(cert['combination'])}")
    return text + (f" [{'; '.join(extra)}]" if extra else "")


def run_checks(system, props, limits, threads=1, graph=None) -> tuple:
    """Return ``(report, exit code, verdicts by property)``."""
    mat = build_matrix(system)
    verdicts = {}
    exploration = None
    if any(p in GRAPH_PROPS for p in props):
        g = graph if graph is not None else explore(system, limits, threads=threads)
        if g.n_rules != system.n or g.m != system.m:
            raise InputError("graph does not match the system's dimensions")
        exploration = {"vertices": len(g.vertices), "edges": len(g.edges),
                       "status": g.status, "reason": g.reason}
        for p in props:
            if p in _GRAPH_CHECKS:
                verdicts[p] = _GRAPH_CHECKS[p](g)
    for p in props:
        if p == "structurally-bounded":
            verdicts[p] = check_structurally_bounded(mat, system.m)
        elif p == "conservative":
            verdicts[p] = check_conservative(mat, system.m)
        elif p == "partial-conservative":
            verdicts[p] = check_partial_conservative(mat, system.m)
        elif p == "cycle":
            verdicts[p] = has_synapse_cycle(system)
    answers = [verdicts[p].answer for p in props]
    if Answer.NO in answers:
        code = EXIT_NO
    elif Answer.INCONCLUSIVE in answers:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    report = {
        "tool": {"name": "snpcheck", "version": __version__},
        "system": {"name": system.name, "n": system.n, "m": system.m,
                   "neurons": list(system.names)},
        "matrix": [list(r) for r in mat],
        "exploration": exploration,
        "verdicts": {p: verdicts[p].to_dict() for p in props},
        "exit_code": code,
    }
    return report, code, verdicts


def cmd_check(args) -> int:
    system = _load(args.file)
    props = [p.strip() for p in args.props.split(",") if p.strip()] if args.props else list(ALL_PROPS)
    unknown = [p for p in props if p not in ALL_PROPS]
    if unknown:
        raise InputError(f"unknown properties: {', '.join(unknown)}")
    graph = None
    if args.graph_in:
        try:
            graph = from_json(Path(args.graph_in).read_text(encoding="utf-8"))
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"{args.graph_in}: cannot load graph: {exc}") from None
    t0 = time.perf_counter()
    report, code, verdicts = run_checks(system, props, _limits(args), args.threads, graph)
    wall = round((time.perf_counter() - t0) * 1000)
    if args.timing:
        report["wall_time_ms"] = wall
    if args.json:
        sys.stdout.write(_dumps(report))
        return code
    print(f"system {system.name}: n={system.n} rules, m={system.m} neurons")
    ex = report["exploration"]
    if ex:
        st = ex["status"] if ex["reason"] is None else f"truncated ({ex['reason']})"
        print(f"configuration graph: {ex['vertices']} vertices, {ex['edges']} edges, {st}")
    width = max(len(p) for p in props)
    for p in props:
        print(f"  {p.ljust(width)}  {_summary(p, verdicts[p])}")
    if args.timing:
        print(f"wall time: {wall} ms")
    return code


def cmd_struct_live(args) -> int:
    """Bounded search for an initial configuration under which the system is live."""
    system = _load(args.file)
    limits = _limits(args)
    for c0 in itertools.product(range(args.max_initial + 1), repeat=system.m):
        g = explore(system, limits, initial=c0)
        if g.complete and check_live(g).answer is Answer.YES:
            print(f"live for C0={_fmt(c0)} ({len(g.vertices)} vertices)")
            return EXIT_OK
    print(f"no live initial configuration with entries <= {args.max_initial}")
    return EXIT_INCONCLUSIVE


# ------------------------------------------------------------------ parser


def _add_limits(p):
    p.add_argument("--max-vertices", type=int, default=10_000, metavar="V",
                   help="vertex limit (0 = unlimited, default 10000)")
    p.add_argument("--max-depth", type=int, default=0, metavar="D",
                   help="BFS depth limit (0 = unlimited)")
    p.add_argument("--max-spikes", type=int, default=0, metavar="S",
                   help="per-neuron spike limit (0 = unlimited)")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for frontier expansion (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snpcheck",
                     description="Analyze SN P systems without delay.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("matrix", help="print the spiking transition and synapse matrices")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("run", help="simulate one computation")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--strategy", choices=("first", "random"), default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("explore", help="build and export the configuration graph")
    p.add_argument("file")
    _add_limits(p)
    p.add_argument("--dot", metavar="PATH", help="write Graphviz DOT ('-' for stdout)")
    p.add_argument("--json", metavar="PATH", help="write graph JSON ('-' for stdout)")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("check", help="decide behavioral and structural properties")
    p.add_argument("file")
    p.add_argument("--props", help=f"comma-separated subset of: {','.join(ALL_PROPS)}")
    _add_limits(p)
    p.add_argument("--graph-in", metavar="PATH", help="use a graph JSON instead of exploring")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--timing", action="store_true", help="include wall-clock time")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reach", help="reachability query with a shortest witness")
    p.add_argument("file")
    p.add_argument("--target", required=True, help='configuration such as "(1,0,0)"')
    _add_limits(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("struct-live",
                       help="search small initial configurations for a live one")
    p.add_argument("file")
    p.add_argument("--max-initial", type=int, default=3,
                   help="largest initial spike count tried per neuron")
    _add_limits(p)
    p.set_defaults(func=cmd_struct_live)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"snpcheck: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
