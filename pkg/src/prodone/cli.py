"""Command-line front end.

Every subcommand emits one JSON report on stdout with sorted keys and no
timestamps, so identical invocations produce byte-identical output; --timing
adds elapsed seconds and --pretty renders a human table from the same data.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import analysis, products, verify
from . import dihedral as dih
from .groups import (
    GroupFormatError,
    element_key,
    element_text,
    infinite_dihedral,
    parse_group,
)
from .products import BudgetExceeded
from .sequences import SequenceError, parse_sequence, parse_subset


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--pretty", action="store_true", help="render a table instead of JSON"
    )
    common.add_argument(
        "--timing", action="store_true", help="include elapsed seconds in the report"
    )

    p = argparse.ArgumentParser(
        prog="prodone",
        description="exact computations in monoids of product-one sequences",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pi", parents=[common], help="the set of ordered products")
    sp.add_argument("group", help="group: file path or inline JSON")
    sp.add_argument("sequence", help='sequence text, e.g. "a^2, a^6, t^[2]"')
    sp.add_argument(
        "--oracle",
        action="store_true",
        help="also run the permutation walk and report agreement",
    )
    sp.add_argument("--pair-budget", type=int, default=products.DP_PAIR_BUDGET)

    sp = sub.add_parser("is-one", parents=[common], help="is 1 an ordered product")
    sp.add_argument("group")
    sp.add_argument("sequence")

    sp = sub.add_parser("atoms", parents=[common], help="enumerate atoms over a subset")
    sp.add_argument("group")
    sp.add_argument("subset", help='subset text, e.g. "{a, a^-1, t}"')
    sp.add_argument("--max-len", type=int, default=None)
    sp.add_argument(
        "--exact",
        action="store_true",
        help="fail unless the inventory is certified exact",
    )

    sp = sub.add_parser("davenport", parents=[common], help="largest atom length")
    sp.add_argument("group")
    sp.add_argument("subset")
    sp.add_argument("--max-len", type=int, default=None)

    sp = sub.add_parser(
        "factorize", parents=[common], help="all factorizations into atoms"
    )
    sp.add_argument("group")
    sp.add_argument("subset")
    sp.add_argument("sequence")
    sp.add_argument("--max-len", type=int, default=None)

    sp = sub.add_parser(
        "invariants", parents=[common], help="length-set invariants of a scan"
    )
    sp.add_argument("group")
    sp.add_argument("subset")
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--max-k", type=int, default=4)

    sp = sub.add_parser(
        "probe", parents=[common], help="bounded structural counterexample search"
    )
    sp.add_argument("kind", choices=("seminormal", "rootclosed"))
    sp.add_argument("group")
    sp.add_argument("subset")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--max-power", type=int, default=6)

    dp = sub.add_parser("dihedral", help="infinite dihedral closed forms")
    dsub = dp.add_subparsers(dest="dihedral_command", required=True)
    sp = dsub.add_parser("classify", parents=[common], help="structural classification")
    sp.add_argument("subset")
    sp = dsub.add_parser("is-one", parents=[common], help="balanced-split membership")
    sp.add_argument("sequence")
    sp.add_argument(
        "--witness", action="store_true", help="include a canonical ordering witness"
    )
    sp = dsub.add_parser("atoms", parents=[common], help="atoms over a dihedral subset")
    sp.add_argument("subset")
    sp.add_argument("--max-len", type=int, default=None)
    sp.add_argument(
        "--closed-form",
        action="store_true",
        help="fail unless a closed form covers the subset",
    )

    sp = sub.add_parser("verify", parents=[common], help="run acceptance criteria")
    sp.add_argument("--suite", default="all", choices=sorted(verify.SUITES))

    return p


# -- subcommand bodies: each returns (results dict, echo dict, exit code) ---------


def _run_pi(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    s = parse_sequence(group, args.sequence)
    got = products.product_set_dp(s, pair_budget=args.pair_budget)
    ordered = sorted(got, key=element_key)
    results = {
        "product_set": [element_text(group, e) for e in ordered],
        "size": len(got),
        "method": "dp",
    }
    if args.oracle:
        results["oracle_agrees"] = products.product_set_perm(s) == got
    return results, {"group": group.label, "sequence": s.text()}, 0


def _run_is_one(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    s = parse_sequence(group, args.sequence)
    results = {"product_one": products.is_product_one(s)}
    return results, {"group": group.label, "sequence": s.text()}, 0


def _run_atoms(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    gnd = parse_subset(group, args.subset)
    inv = analysis.enumerate_atoms(gnd, max_len=args.max_len)
    code = 0
    if args.exact and not inv.certificate.to_json()["kind"] == "exact":
        code = 1
    return inv.to_json(), {"group": group.label, "subset": gnd.text()}, code


def _run_davenport(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    gnd = parse_subset(group, args.subset)
    res = analysis.davenport(gnd, max_len=args.max_len)
    return res.to_json(), {"group": group.label, "subset": gnd.text()}, 0


def _run_factorize(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    gnd = parse_subset(group, args.subset)
    s = parse_sequence(group, args.sequence, over=gnd)
    inv = analysis.enumerate_atoms(gnd, max_len=args.max_len or max(len(s), 1))
    facs = analysis.factorizations(s, inv)
    out = facs.to_json()
    out["certificate"] = inv.certificate.to_json()
    return out, {"group": group.label, "subset": gnd.text()}, 0


def _run_invariants(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    gnd = parse_subset(group, args.subset)
    rep = analysis.length_invariants(gnd, args.max_size, args.max_k)
    return rep.to_json(), {"group": group.label, "subset": gnd.text()}, 0


def _run_probe(args) -> tuple[dict, dict, int]:
    group = parse_group(args.group)
    gnd = parse_subset(group, args.subset)
    if args.kind == "seminormal":
        res = analysis.seminormality_probe(gnd, args.bound)
    else:
        res = analysis.root_closure_probe(gnd, args.bound, max_power=args.max_power)
    out = res.to_json()
    out["probe"] = args.kind
    return out, {"group": group.label, "subset": gnd.text()}, 0


def _run_dihedral(args) -> tuple[dict, dict, int]:
    group = infinite_dihedral()
    if args.dihedral_command == "classify":
        gnd = parse_subset(group, args.subset)
        return dih.classify(gnd), {"group": group.label, "subset": gnd.text()}, 0
    if args.dihedral_command == "is-one":
        s = parse_sequence(group, args.sequence)
        results: dict = {"product_one": dih.is_product_one(s)}
        if args.witness and results["product_one"]:
            results["witness"] = dih.decompose(s).to_json()
        return results, {"group": group.label, "sequence": s.text()}, 0
    gnd = parse_subset(group, args.subset)
    if args.closed_form:
        inv = analysis.enumerate_atoms(gnd, max_len=args.max_len, method="closed-form")
    else:
        inv = analysis.enumerate_atoms(gnd, max_len=args.max_len)
    return inv.to_json(), {"group": group.label, "subset": gnd.text()}, 0


def _run_verify(args) -> int:
    outcomes = verify.run_suite(args.suite)
    passed = all(r.passed for r in outcomes)
    if args.pretty:
        for r in outcomes:
            print(r.line())
    else:
        report = {
            "command": "verify",
            "results": {
                "suite": args.suite,
                "threads": verify.thread_cap(),
                "criteria": [r.to_json(timing=args.timing) for r in outcomes],
                "passed": passed,
            },
        }
        if args.timing:
            report["elapsed"] = round(sum(r.elapsed for r in outcomes), 3)
        print(json.dumps(report, sort_keys=True))
    return 0 if passed else 1


_RUNNERS = {
    "pi": _run_pi,
    "is-one": _run_is_one,
    "atoms": _run_atoms,
    "davenport": _run_davenport,
    "factorize": _run_factorize,
    "invariants": _run_invariants,
    "probe": _run_probe,
    "dihedral": _run_dihedral,
}


def _pretty(report: dict) -> str:
    """An indented key: value table; lists of scalars join on one line."""
    lines: list[str] = []

    def emit(indent: int, label: str, val) -> None:
        pad = "  " * indent
        if isinstance(val, dict):
            lines.append(f"{pad}{label}:")
            for k in sorted(val):
                emit(indent + 1, k, val[k])
        elif isinstance(val, list) and all(
            not isinstance(x, (dict, list)) for x in val
        ):
            lines.append(f"{pad}{label}: {', '.join(str(x) for x in val)}")
        elif isinstance(val, list):
            lines.append(f"{pad}{label}:")
            for i, x in enumerate(val):
                emit(indent + 1, str(i + 1), x)
        else:
            lines.append(f"{pad}{label}: {val}")

    for key in sorted(report):
        emit(0, key, report[key])
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "verify":
            return _run_verify(args)
        results, echo, code = _RUNNERS[args.command](args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 3
    except (GroupFormatError, SequenceError, ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2
    report = {"command": args.command, **echo, "results": results}
    if args.timing:
        report["elapsed"] = round(time.perf_counter() - t0, 3)
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
