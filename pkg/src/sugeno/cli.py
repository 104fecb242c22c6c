"""Command-line front end.

Subcommands: eval, table, check, recognize, map, verify.  Exit codes:
0 when the requested property holds or a value was computed, 1 when a
property is violated (a counterexample is emitted), 2 on malformed
input.  ``--json`` prints a single RunReport document whose bytes are
identical across runs for identical inputs, so the wall time is only
shown in human-readable mode.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .chain import Chain
from .capacity import Capacity, require_valid
from .integral import (
    MAX_TABLE_ENTRIES,
    AggregationTable,
    Counterexample,
    ScoreVector,
    check_comonotone_maxitive,
    check_idempotent,
    check_median_decomposable,
    check_min_homogeneous,
    recognize_sugeno,
    sugeno_eval,
    sugeno_table,
)
from .capacity import pushforward_capacity
from .congruence import MAX_ENUM_GRID, verify_prop1, verify_theorem1
from .scale import BUILTIN_NAMES, Epimorphism, builtin_epimorphism, verify_theorem2

AXIOM_CHECKS = {
    "idempotent": check_idempotent,
    "comonotone-maxitive": check_comonotone_maxitive,
    "min-homogeneous": check_min_homogeneous,
    "median-decomposable": check_median_decomposable,
}


@dataclass
class RunReport:
    command: list[str]
    verdict: str  # ok | fail | error
    payload: dict
    wall_time: float

    def to_json(self) -> dict:
        # wall time deliberately omitted: json output must be
        # byte-identical across runs for identical inputs
        return {
            "command": self.command,
            "verdict": self.verdict,
            "payload": self.payload,
        }


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_capacity(path: str) -> Capacity:
    return require_valid(Capacity.from_json(_load_json(path)))


def _load_table(path: str) -> AggregationTable:
    return AggregationTable.from_json(_load_json(path))


def _load_vector(args, chain: Chain) -> ScoreVector:
    if args.input is not None and args.input_file is not None:
        raise ValueError("give either --input or --input-file, not both")
    if args.input is not None:
        return ScoreVector.parse(chain, args.input)
    if args.input_file is not None:
        literals = _load_json(args.input_file)
        if not isinstance(literals, list):
            raise ValueError("--input-file must hold a JSON array of value literals")
        return ScoreVector.of(chain, literals)
    raise ValueError("an input vector is required (--input or --input-file)")


def _max_grid(default: int) -> int:
    raw = os.environ.get("SUGENO_MAX_GRID")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"SUGENO_MAX_GRID must be an integer, got {raw!r}") from None


def _epimorphism(ref: str, source: Chain) -> Epimorphism:
    if ref in BUILTIN_NAMES:
        return builtin_epimorphism(ref, source)
    if os.path.exists(ref):
        return Epimorphism.from_json(_load_json(ref))
    raise ValueError(f"--epi expects one of {BUILTIN_NAMES} or a JSON file path")


# --- subcommand handlers ---------------------------------------------------

def _cmd_eval(args) -> tuple[str, dict, list[str]]:
    c = _load_capacity(args.capacity)
    x = _load_vector(args, c.chain)
    if args.formula == "all":
        values = {f: sugeno_eval(c, x, f) for f in ("level", "subset", "sorted")}
        agree = len({str(v) for v in values.values()}) == 1
        payload = {
            "values": {f: str(v) for f, v in values.items()},
            "formulas_agree": agree,
        }
        lines = [f"{f}: {v}" for f, v in values.items()]
        lines.append(f"formulas agree: {'yes' if agree else 'NO'}")
        return ("ok" if agree else "fail"), payload, lines
    v = sugeno_eval(c, x, args.formula)
    return "ok", {"value": str(v)}, [str(v)]


def _cmd_table(args) -> tuple[str, dict, list[str]]:
    c = _load_capacity(args.capacity)
    t = sugeno_table(c, max_entries=_max_grid(MAX_TABLE_ENTRIES))
    payload = {"table": t.to_json()}
    lines = [
        "A(" + ", ".join(e["x"]) + ") = " + e["v"] for e in payload["table"]["entries"]
    ]
    return "ok", payload, lines


def _cmd_check(args) -> tuple[str, dict, list[str]]:
    t = _load_table(args.table)
    selected = (
        [s.strip() for s in args.axioms.split(",")]
        if args.axioms
        else list(AXIOM_CHECKS) + ["recognize"]
    )
    payload: dict = {"checks": {}}
    lines = []
    verdict = "ok"
    for name in selected:
        if name == "recognize":
            result = recognize_sugeno(t)
            if isinstance(result, Counterexample):
                verdict = "fail"
                payload["checks"][name] = {"ok": False, "counterexample": result.to_json()}
                lines.append(f"recognize: fail ({result})")
            else:
                payload["checks"][name] = {"ok": True}
                payload["capacity"] = result.to_json()
                lines.append("recognize: ok, capacity recovered")
        elif name in AXIOM_CHECKS:
            cex = AXIOM_CHECKS[name](t)
            if cex is None:
                payload["checks"][name] = {"ok": True}
                lines.append(f"{name}: ok")
            else:
                verdict = "fail"
                payload["checks"][name] = {"ok": False, "counterexample": cex.to_json()}
                lines.append(f"{name}: fail ({cex})")
        else:
            raise ValueError(
                f"unknown axiom {name!r}; pick from "
                f"{', '.join(list(AXIOM_CHECKS) + ['recognize'])}"
            )
    return verdict, payload, lines


def _cmd_recognize(args) -> tuple[str, dict, list[str]]:
    t = _load_table(args.table)
    result = recognize_sugeno(t)
    if isinstance(result, Counterexample):
        return "fail", {"counterexample": result.to_json()}, [str(result)]
    return "ok", {"capacity": result.to_json()}, [f"capacity: {json.dumps(result.to_json()['values'], sort_keys=True)}"]


def _cmd_map(args) -> tuple[str, dict, list[str]]:
    c = _load_capacity(args.capacity)
    phi = _epimorphism(args.epi, c.chain)
    x = _load_vector(args, c.chain)
    phi_x = phi.apply_vector(x)
    pushed = pushforward_capacity(phi, c)
    lhs = phi.apply(sugeno_eval(c, x))
    rhs = sugeno_eval(pushed, phi_x)
    holds = lhs == rhs
    payload = {
        "phi_x": [str(v) for v in phi_x.coords],
        "pushforward": pushed.to_json(),
        "phi_of_integral": str(lhs),
        "integral_of_phi": str(rhs),
        "holds": holds,
    }
    lines = [
        f"phi(x) = {phi_x}",
        "phi(m) = " + json.dumps(payload["pushforward"]["values"], sort_keys=True),
        f"phi(Su_m(x)) = {lhs}",
        f"Su_phi(m)(phi(x)) = {rhs}",
        f"scale invariance: {'holds' if holds else 'VIOLATED'}",
    ]
    return ("ok" if holds else "fail"), payload, lines


def _cmd_verify(args) -> tuple[str, dict, list[str]]:
    chain = Chain.finite([str(i) for i in range(args.chain_size)])
    cap = _max_grid(MAX_ENUM_GRID)
    if args.theorem == "prop1":
        report = verify_prop1(chain)
        lines = [
            f"equivalence relations: {report.relations_total}",
            f"congruences: {report.congruence_count}",
            f"interval partitions: {report.interval_partition_count}",
            f"dual checks agree: {report.dual_checks_agree}",
            f"congruences = interval partitions: "
            f"{report.congruences_are_interval_partitions}",
        ]
    elif args.theorem == "theorem1":
        report = verify_theorem1(args.arity, chain, cap)
        lines = [
            f"tables: {report.tables_total}",
            f"compatible: {report.compatible_count}",
            f"sugeno: {report.sugeno_count}",
            f"sets equal: {report.sets_equal}",
        ]
    else:
        report = verify_theorem2(args.arity, chain, cap)
        lines = [
            f"tables: {report.tables_total}",
            f"sugeno: {report.sugeno_count}",
            f"epimorphisms: {report.epimorphism_count}",
            f"forward checks: {report.forward_checks}, "
            f"failures: {len(report.forward_failures)}",
            f"non-sugeno tables lacking a refuting epimorphism: "
            f"{len(report.converse_unrefuted)}",
            f"holds: {report.holds}",
        ]
    verdict = "ok" if report.holds else "fail"
    return verdict, report.to_json(), lines


# --- parser and entry point ------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sugeno",
        description="Sugeno integrals on bounded chains: evaluation, "
        "axiomatic recognition, congruence compatibility, scale maps, "
        "and exhaustive desk-scale theorem verification.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit a deterministic JSON RunReport"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a Sugeno integral")
    p.add_argument("--capacity", required=True, metavar="PATH")
    p.add_argument("--input", metavar="CSV")
    p.add_argument("--input-file", metavar="PATH")
    p.add_argument(
        "--formula",
        choices=["level", "subset", "sorted", "all"],
        default="subset",
    )
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser(
        "table", parents=[common], help="materialize a Sugeno table (finite chain)"
    )
    p.add_argument("--capacity", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser(
        "check", parents=[common], help="run axiom checks on an aggregation table"
    )
    p.add_argument("--table", required=True, metavar="PATH")
    p.add_argument(
        "--axioms",
        metavar="LIST",
        help="comma-separated subset of: "
        + ", ".join(list(AXIOM_CHECKS) + ["recognize"]),
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser(
        "recognize", parents=[common], help="extract the capacity of a Sugeno table"
    )
    p.add_argument("--table", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_recognize)

    p = sub.add_parser(
        "map", parents=[common], help="apply a scale epimorphism and test Eq-4"
    )
    p.add_argument("--epi", required=True, metavar="NAME|PATH")
    p.add_argument("--capacity", required=True, metavar="PATH")
    p.add_argument("--input", metavar="CSV")
    p.add_argument("--input-file", metavar="PATH")
    p.set_defaults(handler=_cmd_map)

    p = sub.add_parser(
        "verify", parents=[common], help="exhaustive desk-scale verification"
    )
    p.add_argument("theorem", choices=["theorem1", "theorem2", "prop1"])
    p.add_argument("--chain-size", type=int, required=True, metavar="K")
    p.add_argument("--arity", type=int, default=2, metavar="N")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        verdict, payload, lines = args.handler(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        wall = 1000 * (time.perf_counter() - start)
        if args.json:
            report = RunReport(argv, "error", {"error": str(exc)}, wall)
            print(json.dumps(report.to_json(), sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    wall = 1000 * (time.perf_counter() - start)
    report = RunReport(argv, verdict, payload, wall)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        for line in lines:
            print(line)
        if verdict != "ok":
            print("verdict: fail")
        print(f"wall-time: {wall:.1f} ms", file=sys.stderr)
    return 0 if verdict == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
