"""Command-line front end.

Subcommands: `energy` (single-graph spectrum and p-energies), `verify`
(checker scans over graphs, files, or generators), `constants` (C_p by
closed form and quadrature).  Exit codes: 0 all pass, 1 check failure,
2 input/parse error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analytic import (
    DEFAULT_SPEC,
    QuadratureError,
    QuadratureSpec,
    cp_constant,
    cp_constant_quadrature,
    energy_by_integral,
)
from .graphs import Graph6Error, parse_graph6
from .seidel import count_odd_pairs, is_sc_equivalent_to_complete
from .search import (
    AllGraphs,
    BoundaryFamily,
    Graph6Stream,
    Graph6StreamError,
    scan,
)
from .spectral import (
    JacobiConvergenceError,
    eigenvalues,
    elementary_symmetric_A2,
    p_energy,
)
from .verify import CHECK_NAMES, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERIC_ERROR = 3


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _quad_spec() -> QuadratureSpec:
    tol = os.environ.get("SEIDELAB_QUAD_TOL")
    if tol is None:
        return DEFAULT_SPEC
    return QuadratureSpec(rel_tol=float(tol))


def cmd_energy(args) -> int:
    try:
        g = parse_graph6(args.g6)
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        spectrum = eigenvalues(g)
    except JacobiConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    sc, _ = is_sc_equivalent_to_complete(g)
    nop = count_odd_pairs(g)
    out = {
        "graph6": args.g6.strip(),
        "n": g.n,
        "spectrum": [float(v) for v in spectrum.values],
        "residual": spectrum.residual,
        "N_op": nop,
        "sc_equivalent_to_complete": sc,
        "energies": [],
    }
    sk = elementary_symmetric_A2(g) if args.backend in ("integral", "both") else None
    try:
        for p in args.p:
            entry = {"p": p}
            if args.backend in ("eig", "both"):
                entry["eigenvalue_backend"] = p_energy(spectrum, p)
            if args.backend in ("integral", "both"):
                if 0.0 < p < 2.0:
                    entry["integral_backend"] = energy_by_integral(sk, p, _quad_spec())
                else:
                    entry["integral_backend"] = None  # identity only holds on (0,2)
            out["energies"].append(entry)
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"graph6   {out['graph6']}")
        print(f"n        {g.n}")
        print("spectrum " + " ".join(_fmt(v) for v in spectrum.values))
        print(f"residual {_fmt(spectrum.residual)}")
        print(f"N_op     {nop}")
        print(f"SC-equivalent-to-complete {str(sc).lower()}")
        for entry in out["energies"]:
            parts = [f"E_{_fmt(entry['p'])}"]
            if "eigenvalue_backend" in entry:
                parts.append(f"eig={_fmt(entry['eigenvalue_backend'])}")
            if entry.get("integral_backend") is not None:
                parts.append(f"integral={_fmt(entry['integral_backend'])}")
            print(" ".join(parts))
    return EXIT_OK


def _parse_range(spec: str, lo: int, hi: int) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        values = list(range(int(a), int(b) + 1))
    else:
        values = [int(spec)]
    for v in values:
        if not lo <= v <= hi:
            raise ValueError(f"{v} outside supported range {lo}..{hi}")
    return values


def cmd_verify(args) -> int:
    checks = tuple(args.checks.split(",")) if args.checks else CHECK_NAMES
    unknown = set(checks) - set(CHECK_NAMES)
    if unknown:
        print(f"error: unknown checks {sorted(unknown)}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    p_grid = tuple(args.p)
    if "theorem1" in checks and any(not 0.0 < p < 2.0 for p in p_grid):
        print("error: theorem1 requires p in the open interval (0, 2)", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        if args.g6 is not None:
            return _verify_single(args, checks, p_grid)
        sources = []
        if args.all_n is not None:
            for n in _parse_range(args.all_n, 1, 7):
                sources.append(AllGraphs(n))
        elif args.boundary_family is not None:
            for n in _parse_range(args.boundary_family, 11, 22):
                sources.append(BoundaryFamily(n))
        else:
            sources.append(Graph6Stream(args.g6_file, strict=args.strict_parse))
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    reports = []
    try:
        for src in sources:
            reports.append(
                scan(
                    src,
                    checks=checks,
                    p_grid=p_grid,
                    workers=args.workers,
                    collect_rows=args.format == "csv",
                )
            )
    except (Graph6StreamError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except JacobiConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    out = sys.stdout if args.out is None else open(args.out, "w")
    try:
        if args.format == "json":
            payload = [r.as_dict(include_timing=not args.no_timing) for r in reports]
            print(json.dumps(payload, indent=2, sort_keys=True), file=out)
        elif args.format == "csv":
            for r in reports:
                r.write_csv(out)
        else:
            for r in reports:
                print(
                    f"{r.source}: {r.graphs_scanned} graphs, "
                    f"{r.total_failures} failures, "
                    f"min E_S = {_fmt(r.min_energy)} at {r.min_energy_graph6}",
                    file=out,
                )
                for f in r.failures:
                    print(
                        f"  FAIL {f['graph6']} {f['check']} "
                        f"lhs={f['lhs']} rhs={f['rhs']} margin={f['margin']}",
                        file=out,
                    )
    finally:
        if out is not sys.stdout:
            out.close()
    failed = sum(r.total_failures for r in reports)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _verify_single(args, checks, p_grid) -> int:
    try:
        g = parse_graph6(args.g6)
    except Graph6Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        reports = run_checks(g, checks, p_grid)
    except JacobiConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    if args.format == "json":
        print(json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{status} {r.check} lhs={r.lhs} rhs={r.rhs} margin={_fmt(r.margin)}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_constants(args) -> int:
    spec = _quad_spec()
    code = EXIT_OK
    for p in args.p:
        if not 0.0 < p < 1.0:
            print(f"error: p={p} outside (0, 1)", file=sys.stderr)
            return EXIT_INPUT_ERROR
        closed = cp_constant(p)
        if p > 0.98:
            print(
                f"warning: p={_fmt(p)} is near-degenerate for the defining "
                "integral; reporting the closed form only",
                file=sys.stderr,
            )
            print(f"C_{_fmt(p)} closed-form={_fmt(closed)}")
            continue
        try:
            quad = cp_constant_quadrature(p, spec)
        except QuadratureError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC_ERROR
        print(
            f"C_{_fmt(p)} closed-form={_fmt(closed)} "
            f"quadrature={_fmt(quad)} diff={_fmt(abs(closed - quad))}"
        )
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seidelab",
        description="Seidel energy laboratory: spectra, lemma checkers, scans",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("energy", help="spectrum and p-energies of one graph")
    pe.add_argument("--g6", required=True, help="graph6 string")
    pe.add_argument("-p", type=float, action="append", default=None)
    pe.add_argument("--backend", choices=("eig", "integral", "both"), default="eig")
    pe.add_argument("--format", choices=("json", "plain"), default="plain")
    pe.set_defaults(func=cmd_energy)

    pv = sub.add_parser("verify", help="run lemma/theorem checkers")
    src = pv.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="single graph6 string")
    src.add_argument("--g6-file", help="file of graph6 lines")
    src.add_argument("--all-n", help="exhaustive scan, n or lo..hi (n <= 7)")
    src.add_argument("--boundary-family", help="clique-plus-two-apexes family, n or lo..hi (11..22)")
    pv.add_argument("--checks", help="comma-separated subset of " + ",".join(CHECK_NAMES))
    pv.add_argument("-p", type=float, action="append", default=None)
    pv.add_argument("--workers", type=int, default=1)
    pv.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    pv.add_argument("--out", help="write the report here instead of stdout")
    pv.add_argument("--no-timing", action="store_true", help="omit wall time from JSON")
    pv.add_argument(
        "--skip-bad-lines",
        dest="strict_parse",
        action="store_false",
        help="skip malformed graph6 lines instead of aborting",
    )
    pv.set_defaults(func=cmd_verify, strict_parse=True)

    pc = sub.add_parser("constants", help="C_p by closed form and quadrature")
    pc.add_argument("-p", type=float, action="append", required=True)
    pc.set_defaults(func=cmd_constants)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "p", None) is None:
        args.p = [1.0]
    for p in getattr(args, "p", []):
        if args.command in ("energy", "verify") and not 0.0 < p <= 2.0:
            print(f"error: p={p} outside (0, 2]", file=sys.stderr)
            return EXIT_INPUT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
