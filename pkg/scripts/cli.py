"""
Total Closure Lab — command line

Usage:
    python -m scripts.cli closure --group "6: (3 4)(5 6), (1 2)(5 6)" --k 2
    python -m scripts.cli base --group "6: (1 2 3 4), (1 3), (5 6)" --exact
    python -m scripts.cli sylow --group "6: (1 2 3 4 5 6)"
    python -m scripts.cli prober --group "4: (1 2), (3 4)" --k 2 --max-degree 6
    python -m scripts.cli classify --group "4: (1 2 3 4), (1 3)" --k 3
    python -m scripts.cli verify lemma-base --format json
    python -m scripts.cli catalog

Exit codes: 0 success, 1 verification failure or refused input,
2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import LOG_LEVEL, REPORT_DIR  # noqa: E402
from scripts.abstract_group import cayley_table  # noqa: E402
from scripts.catalog import catalog, computed_properties  # noqa: E402
from scripts.closure_engine import k_closure, k_closure_naive  # noqa: E402
from scripts.errors import (  # noqa: E402
    CapExceededError,
    GroupSpecError,
    HypothesisNotMetError,
    NonAbelianInputError,
    NotNilpotentError,
    PermutationError,
    UnknownTheoremError,
)
from scripts.perm_group import format_group_spec, parse_group_spec, same_group  # noqa: E402
from scripts.permutation import format_cycles  # noqa: E402
from scripts.structure import base_number, greedy_base, sylow_decomposition  # noqa: E402
from scripts.totality import decide_total_closure, probe_totally_k_closed, theorem_b_classify  # noqa: E402
from scripts.verification import (  # noqa: E402
    VerifyOptions,
    available_tags,
    render_json,
    render_text,
    verify,
    write_report,
)

LOGGER = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _emit(payload: dict[str, Any], fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_closure(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.group)
    closure = k_closure_naive(g, args.k) if args.naive else k_closure(g, args.k, degree_cap=args.degree_cap)
    closed = same_group(g, closure)
    payload = {
        "group": format_group_spec(g),
        "k": args.k,
        "method": "naive" if args.naive else "search",
        "order": g.order(),
        "closure_order": closure.order(),
        "generators": [format_cycles(x) for x in closure.generators],
        "k_closed": closed,
    }
    lines = [
        f"group: {payload['group']} (order {payload['order']})",
        f"{args.k}-closure order: {payload['closure_order']}",
        "generators: " + ", ".join(payload["generators"]),
        f"{args.k}-closed: {'true' if closed else 'false'}",
    ]
    _emit(payload, args.format, lines)
    return EXIT_OK


def cmd_base(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.group)
    greedy = greedy_base(g)
    payload: dict[str, Any] = {"group": format_group_spec(g), "greedy_base": greedy, "greedy_length": len(greedy)}
    lines = [f"greedy base: {greedy} (length {len(greedy)})"]
    if not args.greedy:
        payload["base_number"] = base_number(g)
        lines.append(f"base number: {payload['base_number']}")
    _emit(payload, args.format, lines)
    return EXIT_OK


def cmd_sylow(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.group)
    decomposition = sylow_decomposition(g)
    payload = decomposition.to_dict()
    lines = [f"order {decomposition.order}, primes {decomposition.primes}"]
    for c in decomposition.components:
        lines.append(f"  p={c.prime}: order {c.order}, {format_group_spec(c.group)}")
    _emit(payload, args.format, lines)
    return EXIT_OK


def _verdict_lines(verdict: dict[str, Any]) -> list[str]:
    lines = [f"verdict: {verdict['kind']} (k={verdict['k']})"]
    for key in ("totally_closed", "citation", "reason", "witness", "witness_element", "closure_order", "bound", "representations_checked"):
        value = verdict.get(key)
        if value not in (None, ""):
            lines.append(f"  {key}: {value}")
    return lines


def cmd_prober(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.group)
    a = cayley_table(g)
    max_degree = args.max_degree if args.max_degree is not None else 2 * a.order
    verdict = probe_totally_k_closed(a, args.k, max_degree).to_dict()
    _emit(verdict, args.format, _verdict_lines(verdict))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    g = parse_group_spec(args.group)
    if args.theorem == "b":
        verdict = theorem_b_classify(g, args.k)
    else:
        verdict = decide_total_closure(g, args.k)
    payload = verdict.to_dict()
    _emit(payload, args.format, _verdict_lines(payload))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    options = VerifyOptions(
        max_degree=args.max_degree,
        max_order=args.max_order,
        ks=tuple(args.k) if args.k else (2, 3),
        entries=tuple(args.entry or ()),
    )
    report = verify(args.tag, options)
    print(render_json(report) if args.format == "json" else render_text(report))
    if args.output:
        path = write_report(report, args.output)
        LOGGER.info("report written to %s", path)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_catalog(args: argparse.Namespace) -> int:
    rows = []
    for item in catalog():
        props = computed_properties(item.group)
        rows.append({"name": item.name, "degree": item.degree, **props})
    lines = [
        f"{r['name']:<16} degree {r['degree']:>2}  order {r['order']:>3}  "
        f"abelian {str(r['abelian']).lower():<5}  nilpotent {str(r['nilpotent']).lower():<5}  n {r['n']}"
        for r in rows
    ]
    _emit({"entries": rows}, args.format, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="closure-lab", description="Wielandt closures and total closedness of permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--group", required=True, help='Group as "degree: gen, gen, ..."')
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("closure", help="Compute the k-closure of a group")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--naive", action="store_true", help="Filter all of Sym(n) instead of searching")
    p.add_argument("--degree-cap", type=int, default=None, help="Override the closure degree cap")
    p.set_defaults(handler=cmd_closure)

    p = sub.add_parser("base", help="Greedy base and exact base number")
    add_common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="Also compute the exact base number (default)")
    mode.add_argument("--greedy", action="store_true", help="Only the greedy base")
    p.set_defaults(handler=cmd_base)

    p = sub.add_parser("sylow", help="Sylow decomposition of a nilpotent group")
    add_common(p)
    p.set_defaults(handler=cmd_sylow)

    p = sub.add_parser("prober", help="Bounded search for a non-closed faithful representation")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None, help="Largest degree searched (default 2|G|)")
    p.set_defaults(handler=cmd_prober)

    p = sub.add_parser("classify", help="Decide total k-closedness by theorem")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theorem", choices=["b", "auto"], default="b", help="b: elementary-abelian criterion; auto: first applicable")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify", help="Run a verification suite over the catalog")
    p.add_argument("tag", help=f"One of: {', '.join(available_tags())}")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None, help=f"Directory for the JSON report (e.g. {REPORT_DIR})")
    p.add_argument("--max-degree", type=int, default=None, help="Prober degree bound for every case")
    p.add_argument("--max-order", type=int, default=16, help="Largest group order given to the prober")
    p.add_argument("--k", type=int, action="append", help="Closure arity (repeatable; default 2 and 3)")
    p.add_argument("--entry", action="append", help="Restrict to catalog entries (repeatable)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("catalog", help="List catalog entries")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=cmd_catalog)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one subcommand, and map failures onto exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except (PermutationError, GroupSpecError, UnknownTheoremError) as exc:
        LOGGER.error("error: %s", exc)
        return EXIT_USAGE
    except CapExceededError as exc:
        LOGGER.error("cap exceeded: %s", exc)
        return EXIT_CAP
    except (NotNilpotentError, HypothesisNotMetError, NonAbelianInputError) as exc:
        LOGGER.error("refused: %s", exc)
        return EXIT_FAIL
    except ValueError as exc:
        LOGGER.error("error: %s", exc)
        return EXIT_USAGE


def main() -> None:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL, logging.WARNING), format="%(message)s")
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
