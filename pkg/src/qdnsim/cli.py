"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage,
input or IO errors.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .epr import EPRSetup, WignerScanRow, count_violations, mesh_triples, wigner_scan
from .errors import QDNError
from .localops import locality_audit, random_local_operator
from .questions import Proposition, partial_probability
from .register import labstate_from_json, random_labstate
from .signal_ops import ALGEBRA_TOL, algebra_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return s


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _triple(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated radians, got {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three angles, got {len(vals)}")
    return vals


def _mesh(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdnsim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra-check", help="verify the signal algebra on random labstates")
    a.add_argument("--rank", type=int, required=True)
    a.add_argument("--trials", type=_positive, default=100)
    a.add_argument("--seed", type=_seed, default=0)
    a.add_argument("--format", choices=["json"], default="json")

    l = sub.add_parser("locality-audit", help="check remote probabilities under a local operation")
    l.add_argument("--rank", type=int, required=True)
    l.add_argument("--targets", type=_int_list, required=True)
    l.add_argument("--trials", type=_positive, default=100)
    l.add_argument("--seed", type=_seed, default=0)
    l.add_argument("--state", help="labstate JSON (default: random state drawn from the seed)")
    l.add_argument("--format", choices=["json"], default="json")

    e = sub.add_parser("epr-scan", help="evaluate Wigner's inequality over angle triples")
    e.add_argument("--triple", type=_triple, action="append", default=[],
                   help="theta_a,theta_b,theta_c in radians (repeatable)")
    e.add_argument("--mesh", type=_mesh, help="start:stop:step applied to all three angles")
    e.add_argument("--rank", type=int, default=4)
    e.add_argument("--format", choices=["csv", "json"], default="csv")

    q = sub.add_parser("question", help="probability of a proposition such as '1+ 2- 4+'")
    q.add_argument("--state", required=True, help="labstate JSON file")
    q.add_argument("proposition", nargs="+", help="clauses: detector followed by + (fired) or - (void)")
    return p


def _read_state(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return labstate_from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def _algebra_check(args, out) -> int:
    report = algebra_check(args.rank, args.trials, args.seed)
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed(ALGEBRA_TOL) else EXIT_FAIL


def _locality_audit(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    psi = _read_state(args.state) if args.state else random_labstate(args.rank, rng)
    if psi.rank != args.rank:
        raise UsageError(f"--rank {args.rank} does not match state rank {psi.rank}")
    op = random_local_operator(args.targets, rng)
    report = locality_audit(psi, op, args.trials, seed=int(rng.integers(2**63)))
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _epr_scan(args, out, err) -> int:
    grid = list(args.triple)
    if args.mesh is not None:
        grid.extend(mesh_triples(*args.mesh))
    if not grid:
        raise UsageError("epr-scan needs --triple or --mesh")
    rows = wigner_scan(grid, EPRSetup(args.rank))
    if args.format == "csv":
        out.write(WignerScanRow.CSV_HEADER + "\n")
        for row in rows:
            out.write(row.csv() + "\n")
    else:
        out.write(json.dumps([r.to_dict() for r in rows], indent=2) + "\n")
    err.write(f"violations: {count_violations(rows)} of {len(rows)}\n")
    return EXIT_OK


def _question(args, out) -> int:
    psi = _read_state(args.state)
    prob = partial_probability(psi, Proposition.parse(" ".join(args.proposition)))
    out.write(f"{prob:.15g}\n")
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "algebra-check":
            return _algebra_check(args, out)
        if args.command == "locality-audit":
            return _locality_audit(args, out)
        if args.command == "epr-scan":
            return _epr_scan(args, out, err)
        return _question(args, out)
    except (QDNError, UsageError, OSError) as exc:
        err.write(f"qdnsim {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
