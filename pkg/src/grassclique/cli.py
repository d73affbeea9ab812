"""Command-line front end.

Subcommands mirror the pipeline stages: `orbits` (census), `classify`
(one C_q(n,d,k) with certificate), `table` (a grid of them), `verify`
(re-check a certificate file), `graph-export` (compatibility graph for
external solvers).  Exit codes: 0 success, 1 computation error, 2 usage,
3 a time budget left a partial (unproved) result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import classify as classify_mod
from ._kernels import BACKEND_NAME
from .compat_graph import build_graph, graph_to_dimacs, graph_to_json_dict
from .errors import GrassCliqueError
from .field import field_for
from .orbits import gaussian_binomial, load_or_enumerate
from .subspace import format_elems

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3


def _add_common(p: argparse.ArgumentParser, formats=("text", "json", "csv")):
    p.add_argument("--poly", help='modulus polynomial, e.g. "x^8+x^4+x^3+x^2+1" or "1,0,1,1,1,0,0,0,1"')
    p.add_argument("--format", choices=formats, default="text", help="output format")
    p.add_argument("--cache-dir", help="orbit cache directory (GRASSCLIQUE_CACHE overrides the default)")
    p.add_argument("--no-cache", action="store_true", help="bypass the orbit cache")
    p.add_argument("--time-budget", type=float, default=600.0, help="solver budget in seconds (default 600)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads for the pair scan")


def _int_pair(args, flag_val, pos_val, name, parser):
    val = flag_val if flag_val is not None else pos_val
    if val is None:
        parser.error(f"missing {name} (give it positionally or with --{name})")
    return val


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="grassclique",
        description="Classify cyclic constant-dimension subspace codes "
        "(orbit census, compatibility graph, exact clique search).",
    )
    root.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 [{BACKEND_NAME} kernels]")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="compute C_q(n,d,k) with a certificate")
    p.add_argument("pos", nargs="*", type=int, metavar="q n k d", help="q n k d")
    p.add_argument("-q", type=int, dest="q")
    p.add_argument("-n", type=int, dest="n")
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("-d", type=int, dest="d")
    p.add_argument("--certificate-out", metavar="FILE", help="write the winning certificate as JSON")
    _add_common(p)

    p = sub.add_parser("orbits", help="orbit census of G_q(n,k)")
    p.add_argument("pos", nargs="*", type=int, metavar="q n k", help="q n k")
    p.add_argument("-q", type=int, dest="q")
    p.add_argument("-n", type=int, dest="n")
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("--list", action="store_true", help="print every orbit, not just the census")
    _add_common(p)

    p = sub.add_parser("table", help="grid of C_q(n,d,k) values")
    p.add_argument("pos", nargs="*", type=int, metavar="q n", help="q n")
    p.add_argument("-q", type=int, dest="q")
    p.add_argument("-n", type=int, dest="n")
    p.add_argument("--d-values", help="comma-separated distances (default: even 4..2*(n//2))")
    p.add_argument("--k-values", help="comma-separated dimensions (default: 2..n//2)")
    _add_common(p)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("graph-export", help="write the compatibility graph")
    p.add_argument("pos", nargs="*", type=int, metavar="q n k d", help="q n k d")
    p.add_argument("-q", type=int, dest="q")
    p.add_argument("-n", type=int, dest="n")
    p.add_argument("-k", type=int, dest="k")
    p.add_argument("-d", type=int, dest="d")
    p.add_argument("--graph-format", choices=("dimacs", "json"), default="dimacs")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    _add_common(p, formats=("text",))
    return root


def _positional(args, idx):
    return args.pos[idx] if len(args.pos) > idx else None


def _common_kwargs(args):
    return {
        "poly": args.poly,
        "cache_dir": args.cache_dir,
        "use_cache": not args.no_cache,
        "time_budget": args.time_budget,
        "threads": max(1, args.threads),
    }


def _cmd_classify(args, parser) -> int:
    q = _int_pair(args, args.q, _positional(args, 0), "q", parser)
    n = _int_pair(args, args.n, _positional(args, 1), "n", parser)
    k = _int_pair(args, args.k, _positional(args, 2), "k", parser)
    d = _int_pair(args, args.d, _positional(args, 3), "d", parser)
    report = classify_mod.run_algorithm1(q, n, k, d, **_common_kwargs(args))
    if args.certificate_out and report.certificate:
        report.certificate.save(args.certificate_out)

    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=1))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["q", "n", "k", "d", "M", "optimal"])
        w.writerow([report.q, report.n, report.k, report.d, report.m, report.optimal])
        sys.stdout.write(buf.getvalue())
    else:
        _print_classify_text(report)
    return EXIT_OK if report.optimal else EXIT_PARTIAL


def _print_classify_text(report):
    flag = "optimal" if report.optimal else "best found, unproved"
    print(f"C_{report.q}({report.n},{report.d},{report.k}) = {report.m} ({flag})")
    bounds = ", ".join(f"alpha_{t} <= {b}" for t, b in sorted(report.alpha_bounds.items()))
    proved = "" if report.alpha_bounds_proved else " (unproved)"
    print(f"class bounds: {bounds}{proved}", end="")
    if report.class_bound_total is not None:
        print(f"; weighted total {report.class_bound_total}")
    else:
        print()
    for rec in report.conditional_bounds:
        ext = f" within t={rec.extend_t}" if rec.extend_t is not None else ""
        print(
            f"conditional: fixing {rec.fix_count} orbit(s) of t={rec.fix_t}, "
            f"best extension{ext} has {rec.bound} orbit(s)"
        )
    if report.m == 0:
        print("no qualifying orbit: the code is empty")
        return
    decomp = " + ".join(
        f"{a} x {(report.q ** report.n - 1) // (report.q ** t - 1)} (t={t})"
        for t, a in sorted(report.decomposition.items())
    )
    print(f"decomposition: {decomp}")
    checked = "verified" if report.verified else "unverified"
    print(f"a {report.code_label}-cyclic code ({checked}), generators:")
    for gens in report.certificate.generators:
        print(f"  {format_elems(gens)}")


def _cmd_orbits(args, parser) -> int:
    q = _int_pair(args, args.q, _positional(args, 0), "q", parser)
    n = _int_pair(args, args.n, _positional(args, 1), "n", parser)
    k = _int_pair(args, args.k, _positional(args, 2), "k", parser)
    ctx = field_for(q, n, args.poly)
    orbit_set = load_or_enumerate(
        ctx, k, cache_dir=args.cache_dir, use_cache=not args.no_cache
    )
    if args.format == "json":
        payload = {
            "q": q,
            "n": n,
            "k": k,
            "poly": list(ctx.params.poly),
            "subspace_total": orbit_set.subspace_total,
            "counts_by_t": {str(t): c for t, c in orbit_set.counts_by_t.items()},
            "orbits": [
                {
                    "rep": list(o.rep.elems),
                    "period": o.period,
                    "t": o.t,
                    "min_dist": o.min_dist,
                }
                for o in orbit_set.orbits
            ],
        }
        print(json.dumps(payload, indent=1))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["rep", "period", "t", "min_dist"])
        for o in orbit_set.orbits:
            w.writerow([" ".join(map(str, o.rep.elems)), o.period, o.t, o.min_dist])
        sys.stdout.write(buf.getvalue())
    else:
        total = orbit_set.subspace_total
        print(
            f"G_{q}({n},{k}): {len(orbit_set.orbits)} orbits covering {total} subspaces "
            f"(Gaussian binomial {gaussian_binomial(n, k, q)})"
        )
        for t, c in orbit_set.counts_by_t.items():
            print(f"  t={t}: {c} orbit(s) of {orbit_set.period_of_t(t)} subspaces")
        if args.list:
            for o in orbit_set.orbits:
                md = "inf" if o.min_dist is None else o.min_dist
                print(
                    f"  rep {format_elems(o.rep.elems)} period {o.period} "
                    f"t {o.t} min_dist {md}"
                )
    return EXIT_OK


def _cmd_table(args, parser) -> int:
    q = _int_pair(args, args.q, _positional(args, 0), "q", parser)
    n = _int_pair(args, args.n, _positional(args, 1), "n", parser)
    d_values = (
        tuple(int(x) for x in args.d_values.split(",")) if args.d_values else None
    )
    k_values = (
        tuple(int(x) for x in args.k_values.split(",")) if args.k_values else None
    )
    result = classify_mod.table(
        q, n, d_values=d_values, k_values=k_values, **_common_kwargs(args)
    )
    if args.format == "json":
        print(json.dumps(result.to_json_dict(), indent=1))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["d\\k"] + [str(k) for k in result.k_values])
        for d in result.d_values:
            row = [str(d)]
            for k in result.k_values:
                cell = result.cells[(d, k)]
                row.append("error" if cell.m is None else str(cell.m))
            w.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        print(f"C_{q}({n},d,k)")
        width = max(7, *(len(str(k)) for k in result.k_values))
        header = " d\\k " + "".join(f"{k:>{width}}" for k in result.k_values)
        print(header)
        for d in result.d_values:
            row = f"{d:>4} "
            for k in result.k_values:
                cell = result.cells[(d, k)]
                if cell.m is None:
                    row += f"{'error':>{width}}"
                else:
                    mark = "" if cell.optimal else "*"
                    row += f"{str(cell.m) + mark:>{width}}"
            print(row)
        if any(not c.optimal and c.m is not None for c in result.cells.values()):
            print("* budget-limited lower bound, not proved optimal")

    bad = [c for c in result.cells.values() if c.error]
    partial = [c for c in result.cells.values() if c.m is not None and not c.optimal]
    if bad:
        for (d, k), cell in sorted(result.cells.items()):
            if cell.error:
                print(f"cell d={d} k={k}: {cell.error}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_PARTIAL if partial else EXIT_OK


def _cmd_verify(args) -> int:
    cert = classify_mod.Certificate.load(args.certificate)
    outcome = classify_mod.verify_certificate(cert)
    if args.format == "json":
        print(
            json.dumps(
                {"ok": outcome.ok, "M": outcome.m, "violation": outcome.violation},
                indent=1,
            )
        )
    else:
        if outcome.ok:
            print(
                f"PASS: a [{cert.n},{outcome.m},{cert.d},{cert.k}]-cyclic code "
                f"over F_{cert.q} ({len(cert.generators)} orbits)"
            )
        else:
            print(f"FAIL: {outcome.violation}")
    return EXIT_OK if outcome.ok else EXIT_ERROR


def _cmd_graph_export(args, parser) -> int:
    q = _int_pair(args, args.q, _positional(args, 0), "q", parser)
    n = _int_pair(args, args.n, _positional(args, 1), "n", parser)
    k = _int_pair(args, args.k, _positional(args, 2), "k", parser)
    d = _int_pair(args, args.d, _positional(args, 3), "d", parser)
    ctx = field_for(q, n, args.poly)
    orbit_set = load_or_enumerate(
        ctx, k, cache_dir=args.cache_dir, use_cache=not args.no_cache
    )
    graph = build_graph(orbit_set, d, threads=max(1, args.threads))
    if args.graph_format == "json":
        text = json.dumps(graph_to_json_dict(graph), indent=1) + "\n"
    else:
        text = graph_to_dimacs(graph)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(
            f"wrote {graph.n_vertices} vertices / {graph.edge_count} edges to {args.output}",
            file=sys.stderr,
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return _cmd_classify(args, parser)
        if args.command == "orbits":
            return _cmd_orbits(args, parser)
        if args.command == "table":
            return _cmd_table(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "graph-export":
            return _cmd_graph_export(args, parser)
    except GrassCliqueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    parser.error(f"unknown command {args.command!r}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
