"""clique-spectra command line.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .enumeration import SearchSpaceError, expected_tree_determinant
from .graph import CliqueTree, CliqueTreeError, balanced_clique_path, clique_path, \
    distance_matrix, load_graph
from .quotient import cliquepath_partition, quotient_matrix
from .report import VerificationReport, reports_to_csv
from .spectra import distance_energy, eig_symmetric, inertia, power_iteration
from . import sweeps

TARGETS = ("inertia", "energy", "quotient", "lemmas", "conjecture", "graham-pollak")
SIG_DIGITS = 10


class UsageError(Exception):
    pass


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _fmt(x) -> str:
    return f"{x:.{SIG_DIGITS}g}" if isinstance(x, float) else str(x)


def _parse_sizes(raw: str) -> list[int]:
    try:
        sizes = [int(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--sizes: expected comma-separated integers, got {raw!r}") from None
    if not sizes:
        raise UsageError("--sizes: empty list")
    return sizes


def _graph_from_args(args) -> CliqueTree:
    chosen = [a for a in ("sizes", "graph") if getattr(args, a, None) is not None]
    balanced = getattr(args, "n", None) is not None or getattr(args, "k", None) is not None
    if len(chosen) + balanced != 1:
        raise UsageError("give exactly one of --sizes, --graph, or --n with --k")
    if args.sizes is not None:
        return clique_path(_parse_sizes(args.sizes))
    if args.graph is not None:
        try:
            return load_graph(args.graph)
        except OSError as exc:
            raise UsageError(f"--graph: cannot read {args.graph}: {exc.strerror}") from None
    if args.n is None or args.k is None:
        raise UsageError("--n and --k must be given together")
    return balanced_clique_path(args.n, args.k)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(_round(obj), indent=2, sort_keys=True) + "\n"


def cmd_spectrum(args) -> int:
    g = _graph_from_args(args)
    s = eig_symmetric(distance_matrix(g))
    inert = inertia(s)
    data = {
        "n": g.n,
        "block_sizes": list(g.block_sizes),
        "eigenvalues": [float(x) for x in s.eigenvalues],
        "spectral_radius": s.radius,
        "energy": distance_energy(s),
        "inertia": list(inert),
        "residual": s.residual,
        "zero_threshold": s.zero_threshold,
    }
    if args.format == "json":
        text = _dump_json(data)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(s.eigenvalues, start=1):
            w.writerow([i, _fmt(float(lam))])
        text = buf.getvalue()
    else:
        text = (f"n = {g.n}, blocks = {list(g.block_sizes)}\n"
                f"eigenvalues: {' '.join(_fmt(float(x)) for x in s.eigenvalues)}\n"
                f"spectral radius: {_fmt(s.radius)}\n"
                f"energy: {_fmt(data['energy'])}\n"
                f"inertia: ({inert.positive}, {inert.zero}, {inert.negative})\n")
    _emit(text, args.out)
    return 0


def cmd_graph(args) -> int:
    g = _graph_from_args(args)
    _emit(_dump_json(g.to_dict()), args.out)
    return 0


def cmd_quotient(args) -> int:
    for name in ("n1", "n2"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name} must be >= 1")
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    part = cliquepath_partition(args.n1, args.k, args.n2)
    g = clique_path([args.n1 + 1] + [2] * (args.k - 2) + [args.n2 + 1])
    qs = quotient_matrix(distance_matrix(g), part)
    lam_b = power_iteration(qs.B_float)[0]
    lam_d = eig_symmetric(qs.matrix).radius
    data = {**qs.to_dict(), "n1": args.n1, "k": args.k, "n2": args.n2,
            "lambda_B": lam_b, "lambda_D": lam_d, "difference": lam_b - lam_d}
    if args.format == "json":
        text = _dump_json(data)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in data["B"]:
            w.writerow(row)
        text = buf.getvalue()
    else:
        rows = "\n".join("  " + " ".join(f"{x:>4}" for x in row) for row in data["B"])
        text = (f"cells: {data['cells']}\nB =\n{rows}\nequitable: {qs.equitable}\n"
                f"lambda(B) = {_fmt(lam_b)}\nlambda(D) = {_fmt(lam_d)}\n"
                f"difference = {_fmt(lam_b - lam_d)}\n")
    _emit(text, args.out)
    return 0


def _verify_reports(args) -> tuple[list[VerificationReport], dict]:
    t = args.target
    extra: dict = {}
    if t in ("inertia", "energy"):
        fn = sweeps.inertia_sweep if t == "inertia" else sweeps.energy_sweep
        return fn(args.n_max or 10), extra
    if t == "graham-pollak":
        n_max = args.n_max or 9
        extra["formula"] = {str(n): expected_tree_determinant(n) for n in range(2, n_max + 1)}
        return sweeps.graham_pollak_sweep(n_max), extra
    if t == "quotient":
        return sweeps.quotient_sweep(args.n1_max or 5, args.k_max or 8,
                                     args.n2_max or args.n1_max or 5), extra
    if t == "lemmas":
        return sweeps.lemma_sweep(args.k_max), extra
    # conjecture
    if args.n is not None:
        if args.k is not None:
            if not 2 <= args.k <= args.n - 1:
                raise UsageError(f"--k must be in 2..n-1, got {args.k}")
            rep, res = sweeps.conjecture_case(args.n, args.k)
            extra["winner_sizes"] = rep.details["winner_sizes"]
            if args.certificates:
                with open(args.certificates, "w") as fh:
                    fh.write(res.certificates_csv())
            return [rep], extra
        return sweeps.conjecture_sweep(args.n, args.n), extra
    return sweeps.conjecture_sweep(args.n_max or 11), extra


def cmd_verify(args) -> int:
    if args.n is not None and args.n_max is not None:
        raise UsageError("--n and --n-max are mutually exclusive")
    if args.target != "conjecture" and (args.n is not None or args.k is not None):
        raise UsageError("--n/--k apply only to the conjecture target")
    if args.certificates and not (args.target == "conjecture" and args.k is not None):
        raise UsageError("--certificates requires 'verify conjecture --n N --k K'")
    reports, extra = _verify_reports(args)
    failures = [r for r in reports if not r.passed]
    summary = {"target": args.target, "checked": len(reports), "failed": len(failures), **extra}
    if args.format == "json":
        text = _dump_json({**summary, "reports": [r.to_dict() for r in reports]})
    elif args.format == "csv":
        text = reports_to_csv(reports)
    else:
        lines = [f"{args.target}: {len(reports) - len(failures)}/{len(reports)} checks passed"]
        for key, val in extra.items():
            if key != "formula":
                lines.append(f"{key}: {val}")
        for r in failures:
            lines.append(f"FAIL {r.check} {json.dumps(r.to_dict()['params'])} "
                         f"margin={_fmt(r.margin)} {r.note}".rstrip())
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clique-spectra",
        description="Distance spectra, energy and inertia of clique trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    def graph_source(p):
        p.add_argument("--sizes", help="clique path block sizes, e.g. 4,2,2,5")
        p.add_argument("--graph", metavar="PATH", help="graph JSON file")
        p.add_argument("--n", type=int, help="with --k: balanced clique path")
        p.add_argument("--k", type=int)

    p = sub.add_parser("spectrum", help="eigenvalues, radius, energy and inertia of D(G)")
    graph_source(p)
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("graph", help="print a clique tree as graph JSON")
    graph_source(p)
    common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("quotient", help="quotient matrix of P_{n1+1,2,...,2,n2+1}")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--n1-max", type=int)
    p.add_argument("--n2-max", type=int)
    p.add_argument("--certificates", metavar="PATH",
                   help="conjecture with --n/--k: write certificate energies as CSV")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("n_max", "k_max", "n1_max", "n2_max"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except (UsageError, CliqueTreeError, SearchSpaceError, ValueError) as exc:
        print(f"clique-spectra: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
