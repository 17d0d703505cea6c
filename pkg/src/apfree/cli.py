"""Command-line front end.

    apfree construct greedy --k K --n N
    apfree construct behrend --n N
    apfree construct theta --input A.txt --rows R
    apfree detect ap --k K --input A.txt
    apfree detect grid --s S --input B.txt
    apfree search r --k K --n N [--budget B]
    apfree search rtilde --s S --n N [--budget B]
    apfree search bound --s S --n N
    apfree analyze energy --input B.txt
    apfree analyze rowbound --max A
    apfree analyze table --s S --nmax N --c C

Exit status: 0 on success (a detected pattern is a result, not a failure),
1 on invalid parameters or malformed input, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

from . import __version__, _backend
from .analysis import (
    energy_partial,
    fmt_float,
    fmt_fraction,
    grid_bound_table,
    row_bound_sign,
    table_to_csv,
)
from .construct import behrend_params, behrend_set, greedy_ap_free, theta
from .core import DomainError, FormatError, NaturalSet, PointSet, find_ap, find_grid
from .search import SearchConfig, certified_lower_bound, max_ap_free, max_grid_free


class CliError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, kind):
    text = _read_input(path)
    try:
        return kind.from_text(text)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from None
    except (DomainError, OverflowError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _manifest(args, exact=None) -> dict:
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k not in {"func", "group", "command", "no_manifest", "output", "started_at"}
    }
    out = {
        "command": f"{args.group} {args.command}",
        "parameters": params,
        "tool_version": __version__,
        "backend": _backend.BACKEND,
        "started_at": args.started_at,
    }
    if exact is not None:
        out["exact"] = exact
    return out


def _config(args) -> SearchConfig:
    return SearchConfig(node_budget=getattr(args, "budget", None), workers=args.workers)


def _emit_result(args, payload: dict, text: str | None = None, csv_text: str | None = None,
                 exact=None, seconds=None, embed=True) -> str:
    """Render the primary output in the requested format, attaching the manifest.

    JSON output embeds the manifest; other formats, and JSON with
    ``embed=False``, get a ``<output>.manifest.json`` sidecar when written to
    a file.
    """
    fmt = args.format
    if fmt == "text" and text is None or fmt == "csv" and csv_text is None:
        raise CliError(f"--format {fmt} is not available for {args.group} {args.command}")
    if fmt == "json" and embed:
        body = dict(payload)
        if not args.no_manifest:
            if seconds is not None:
                body["seconds"] = seconds
            body["manifest"] = _manifest(args, exact)
        return _dump(body)
    if args.output and not args.no_manifest:
        manifest = _manifest(args, exact)
        if seconds is not None:
            manifest["seconds"] = seconds
        with open(args.output + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(_dump(manifest))
    if fmt == "json":
        return _dump(payload)
    return text if fmt == "text" else csv_text


# construct ------------------------------------------------------------------

def cmd_construct_greedy(args):
    A = greedy_ap_free(args.k, args.n)
    return _emit_result(args, {"elements": list(A)}, text=A.to_text())


def cmd_construct_behrend(args):
    A = behrend_set(args.n)
    p = behrend_params(args.n)
    params = None if p is None else {
        "base_digit_bound": p.base_digit_bound,
        "dimension": p.dimension,
        "shell_norm": p.shell_norm,
    }
    return _emit_result(args, {"elements": list(A), "params": params}, text=A.to_text())


def cmd_construct_theta(args):
    A = _load(args.input, NaturalSet)
    B = theta(A, args.rows)
    return _emit_result(args, {"points": [list(p) for p in B]}, text=B.to_text())


# detect ---------------------------------------------------------------------

def _detect_payload(w):
    if w is None:
        return {"found": False}
    return {"found": True, "witness": w.to_dict()}


def cmd_detect_ap(args):
    A = _load(args.input, NaturalSet)
    return _emit_result(args, _detect_payload(find_ap(A, args.k)), embed=False)


def cmd_detect_grid(args):
    B = _load(args.input, PointSet)
    return _emit_result(args, _detect_payload(find_grid(B, args.s)), embed=False)


# search ---------------------------------------------------------------------

def _search_payload(res, optimum):
    return {
        "value": res.value,
        "exact": res.exact,
        "optimum": optimum,
        "nodes": res.nodes_explored,
    }


def cmd_search_r(args):
    res = max_ap_free(args.k, args.n, _config(args))
    return _emit_result(
        args, _search_payload(res, list(res.optimum)), text=res.optimum.to_text(),
        exact=res.exact, seconds=round(res.elapsed, 6),
    )


def cmd_search_rtilde(args):
    res = max_grid_free(args.s, args.n, _config(args))
    return _emit_result(
        args, _search_payload(res, [list(p) for p in res.optimum]), text=res.optimum.to_text(),
        exact=res.exact, seconds=round(res.elapsed, 6),
    )


def cmd_search_bound(args):
    cb = certified_lower_bound(args.s, args.n, _config(args))
    payload = {
        "bound": cb.bound,
        "exact": cb.exact,
        "r": len(cb.optimum),
        "optimum": list(cb.optimum),
        "certificate": [list(p) for p in cb.certificate],
    }
    return _emit_result(args, payload, text=cb.certificate.to_text(), exact=cb.exact)


# analyze --------------------------------------------------------------------

def cmd_analyze_energy(args):
    B = _load(args.input, PointSet)
    rep = energy_partial(B)
    exact = None if rep.exact is None else fmt_fraction(rep.exact)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["points", "total", "exact"])
    w.writerow([rep.points, fmt_float(rep.total), exact or ""])
    payload = {"points": rep.points, "total": float(fmt_float(rep.total)), "exact": exact}
    return _emit_result(args, payload, csv_text=buf.getvalue())


def cmd_analyze_rowbound(args):
    if args.max < 1:
        raise DomainError(f"--max must be >= 1, got {args.max}")
    signs = [row_bound_sign(a) for a in range(1, args.max + 1)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "holds", "equality"])
    for a, sg in enumerate(signs, start=1):
        w.writerow([a, str(sg >= 0).lower(), str(sg == 0).lower()])
    payload = {
        "max": args.max,
        "all_hold": all(sg >= 0 for sg in signs),
        "equality_at": [a for a, sg in enumerate(signs, start=1) if sg == 0],
        "failures": [a for a, sg in enumerate(signs, start=1) if sg < 0],
    }
    return _emit_result(args, payload, csv_text=buf.getvalue())


def cmd_analyze_table(args):
    if args.nmax < 1:
        raise DomainError(f"--nmax must be >= 1, got {args.nmax}")
    rows = grid_bound_table(args.s, range(1, args.nmax + 1), args.c, _config(args))
    payload = {
        "s": args.s,
        "c": args.c,
        "rows": [
            {"N": r.N, "r": r.r, "lifted_bound": r.lifted,
             "behrend_form": float(fmt_float(r.behrend_form)), "exact": r.exact}
            for r in rows
        ],
    }
    return _emit_result(args, payload, csv_text=table_to_csv(rows),
                        exact=all(r.exact for r in rows))


# parser ---------------------------------------------------------------------

def _common(default_format: str, formats: tuple[str, ...]) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=formats, default=default_format)
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--no-manifest", action="store_true",
                   help="omit run metadata (timestamps, timings) from the output")
    p.add_argument("--workers", type=int, default=None,
                   help="search worker processes (capped by APFREE_THREADS)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apfree", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, default_format, formats, help_):
        p = sub.add_parser(name, parents=[_common(default_format, formats)], help=help_)
        p.set_defaults(func=func)
        return p

    construct = groups.add_parser("construct", help="build sets").add_subparsers(
        dest="command", required=True)
    p = leaf(construct, "greedy", cmd_construct_greedy, "text", ("text", "json"),
             "greedy k-AP-free subset of 1..N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = leaf(construct, "behrend", cmd_construct_behrend, "text", ("text", "json"),
             "Behrend 3-AP-free subset of 1..N")
    p.add_argument("--n", type=int, required=True)
    p = leaf(construct, "theta", cmd_construct_theta, "text", ("text", "json"),
             "lift a set to its diagonal band")
    p.add_argument("--input", required=True)
    p.add_argument("--rows", type=int, required=True)

    detect = groups.add_parser("detect", help="find patterns").add_subparsers(
        dest="command", required=True)
    p = leaf(detect, "ap", cmd_detect_ap, "json", ("json",), "find a k-term AP")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", required=True)
    p = leaf(detect, "grid", cmd_detect_grid, "json", ("json",), "find an s x s grid")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--input", required=True)

    search = groups.add_parser("search", help="extremal search").add_subparsers(
        dest="command", required=True)
    p = leaf(search, "r", cmd_search_r, "json", ("json", "text"), "compute r(k, N)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p = leaf(search, "rtilde", cmd_search_rtilde, "json", ("json", "text"),
             "compute the grid-free maximum in [1..N]^2")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p = leaf(search, "bound", cmd_search_bound, "json", ("json", "text"),
             "certified lower bound for the grid-free maximum in [1..2N]^2")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)

    analyze = groups.add_parser("analyze", help="exact checks and tables").add_subparsers(
        dest="command", required=True)
    p = leaf(analyze, "energy", cmd_analyze_energy, "json", ("json", "csv"),
             "energy sum of a point set")
    p.add_argument("--input", required=True)
    p = leaf(analyze, "rowbound", cmd_analyze_rowbound, "json", ("json", "csv"),
             "check the per-row energy inequality for a = 1..A")
    p.add_argument("--max", type=int, required=True)
    p = leaf(analyze, "table", cmd_analyze_table, "csv", ("csv", "json"),
             "lifted lower-bound table for N = 1..nmax")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.started_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        out = args.func(args)
    except CliError as exc:
        print(f"apfree: error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, OverflowError) as exc:
        print(f"apfree: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
