"""Command-line interface: ``spectral-moore <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from . import bounds, graphs, lp
from .errors import GraphError, SpectralMooreError, ThetaOutOfRange
from .orthopoly import DEFAULT_TOL
from .quotient import QuotientMatrixSpec, spectrum

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_THETA = 3
EXIT_DOMAIN = 4
EXIT_GRAPH = 5

TOL_ENV = "SPECTRAL_MOORE_TOL"
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


# -- parsing helpers -------------------------------------------------------------

_SQRT = re.compile(r"([+-]?)\s*sqrt\(\s*([0-9.]+)\s*\)")


def parse_real(text: str) -> float:
    """Decimal, ``p/q`` or ``sqrt(k)`` (optionally signed)."""
    s = text.strip()
    m = _SQRT.fullmatch(s)
    try:
        if m:
            value = math.sqrt(float(m.group(2)))
            return -value if m.group(1) == "-" else value
        if "/" in s:
            return float(Fraction(s))
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}") from exc


def parse_c(text: str):
    """Exact Fraction for ``p/q`` and integers, float otherwise."""
    s = text.strip()
    try:
        if re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            value = Fraction(s)
            return value.numerator if value.denominator == 1 else value
        return parse_real(s)
    except ZeroDivisionError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}") from exc


def tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError(f"{TOL_ENV} must be positive and finite")
    return tol


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


# -- commands --------------------------------------------------------------------
# Each returns (inputs, result, rows, exit_code); rows is an optional list of
# flat dicts used for text tables and CSV.

def cmd_moore(args):
    if args.r < 2 or args.d < 1:
        raise UsageError("moore needs r >= 2 and d >= 1")
    value = bounds.moore_bound(args.r, args.d)
    return {"r": args.r, "d": args.d}, {"r": args.r, "D": args.d, "moore_bound": value}, None, EXIT_OK


def _bound_cmd(fn):
    def run(args):
        result = fn(args.r, args.theta, tolerance())
        return {"r": args.r, "theta": args.theta}, result.as_dict(), None, EXIT_OK
    return run


cmd_vbound = _bound_cmd(bounds.v_upper)
cmd_bbound = _bound_cmd(bounds.b_upper)


def _window_record(w) -> dict:
    rec = w.as_dict()
    rec.update({
        "lower_5dp": bounds.round5(w.lower_threshold),
        "moore_5dp": bounds.round5(w.lambda_D),
        "upper_5dp": bounds.round5(w.beta_threshold),
    })
    return rec


def cmd_window(args):
    known = args.known
    if known is None:
        known = bounds.known_order(args.r, args.d)
        if known is None:
            raise UsageError(f"no shipped record order for (r={args.r}, D={args.d}); pass --known")
    w = bounds.search_window(args.r, args.d, known, tolerance())
    return {"r": args.r, "d": args.d, "known": known}, _window_record(w), None, EXIT_OK


def cmd_table1(args):
    rows = bounds.reproduce_table1(tolerance())
    flat = []
    for row in rows:
        flat.append({
            "r": row.r, "D": row.D, "known": row.known, "defect": row.defect,
            "lower": row.lower, "moore": row.moore, "upper": row.upper,
            "status": "ok" if not row.mismatches else
            "differs: " + ", ".join(f"{c} (published {row.published[c]})" for c in row.mismatches),
        })
    matched = sum(not row.mismatches for row in rows)
    result = {"rows": [row.as_dict() for row in rows], "matched": matched, "total": len(rows)}
    return {}, result, flat, EXIT_OK if matched == len(rows) else EXIT_MISMATCH


def _load_graph(args) -> graphs.LabeledGraph:
    if args.name:
        return graphs.build_named(args.name)
    return graphs.read_edge_list(args.file)


def cmd_graph(args):
    g = _load_graph(args)
    inputs = {"name": args.name, "file": args.file, "action": args.action}
    if args.action == "spectrum":
        return inputs, graphs.spectrum_json(g), [
            {"value": e["value"], "mult": e["mult"]} for e in graphs.spectrum_json(g)["eigenvalues"]
        ], EXIT_OK
    if args.action == "nbwalks":
        table = graphs.nonbacktracking_counts(g, args.len)
        try:
            oracle = graphs.enumerate_nonbacktracking_walks(g, args.len)
            agrees = bool(np.array_equal(oracle, table.counts))
        except GraphError:
            agrees = None
        inputs["len"] = args.len
        result = {"n": g.n, "length": args.len, "counts": table.counts.tolist(),
                  "oracle_agrees": agrees}
        rows = [{"vertex": i, **{str(j): int(v) for j, v in enumerate(row)}}
                for i, row in enumerate(table.counts)]
        return inputs, result, rows, EXIT_OK
    if args.action == "check":
        inputs["kind"] = args.kind
        return inputs, graphs.check_witness(g, args.kind).as_dict(), None, EXIT_OK
    # metrics
    diameter, girth = graphs.diameter_and_girth(g)
    result = {
        "name": g.name, "n": g.n, "edges": g.num_edges, "r": g.degree,
        "connected": graphs.is_connected(g), "bipartite": graphs.bipartition(g) is not None,
        "diameter": diameter, "girth": girth,
        "lambda2": g.spectrum.lambda2 if g.n > 1 else None,
    }
    if g.degree is not None and g.degree >= 1 and result["connected"]:
        rep = graphs.is_ramanujan(g)
        result.update(ramanujan=rep.ramanujan, ramanujan_witness=rep.witness)
    return inputs, result, None, EXIT_OK


def _read_coefficients(path: str, basis: str | None):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read coefficients from {path}: {exc}") from exc
    if isinstance(data, dict):
        coeffs = data.get("coeffs")
        basis = basis or data.get("basis")
    else:
        coeffs = data
    if not isinstance(coeffs, list) or not coeffs or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in coeffs):
        raise UsageError("coefficients must be a non-empty JSON array of numbers")
    basis = (basis or "F").lower()
    if basis not in ("f", "monomial"):
        raise UsageError(f"unknown basis {basis!r}; use F or monomial")
    return coeffs, basis


def cmd_certify(args):
    if args.bipartite and not args.f:
        raise UsageError("bipartite certification needs user coefficients via --f")
    if args.c is None:
        raise UsageError("certify needs --c")
    kind = "bipartite" if args.bipartite else "general"
    spec = QuotientMatrixSpec(args.r, args.t, args.c, kind)
    eig = spectrum(spec, tolerance())
    inputs = {"r": args.r, "t": args.t, "c": args.c, "bipartite": args.bipartite,
              "f": args.f, "basis": args.basis}
    if args.bipartite:
        coeffs, basis = _read_coefficients(args.f, args.basis)
        if basis == "monomial":
            even = [0] * (2 * len(coeffs) - 1)
            even[::2] = coeffs
            coeffs = list(lp.to_f_basis(args.r, even)[::2])
        f = lp.EvenBasisPolynomial(args.r, coeffs)
        squares = sorted({round(v * v, 9) for v in eig.distinct if v >= -1e-9}, reverse=True)
        report = lp.verify_bipartite_lp(f, squares)
        closed = bounds.bipartite_bound(args.r, args.t, args.c)
    else:
        if args.f:
            coeffs, basis = _read_coefficients(args.f, args.basis)
            f = (lp.FBasisPolynomial.from_monomial(args.r, coeffs) if basis == "monomial"
                 else lp.FBasisPolynomial(args.r, coeffs))
        else:
            f = lp.theorem5_certificate(args.r, args.t, args.c)
        report = lp.verify_general_lp(f, eig.distinct)
        closed = bounds.general_bound(args.r, args.t, args.c)
    result = report.as_dict()
    result["coefficients"] = [float(v) for v in f.coeffs]
    result["closed_form"] = float(closed)
    if isinstance(closed, (int, Fraction)):
        result["closed_form_exact"] = str(closed)
    rows = [{"name": c.name, "holds": c.holds, "value": c.value} for c in report.conditions]
    return inputs, result, rows, EXIT_OK


# -- output --------------------------------------------------------------------

def _scalar_text(v) -> str:
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(_jsonable(v))
    return str(v)


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _scalar_text(v) for k, v in row.items()})
    return buf.getvalue()


def _text_table(rows: list[dict]) -> str:
    cols = list(rows[0])
    cells = [[_scalar_text(row[c]) for c in cols] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def render(command: str, inputs: dict, result: dict, rows, fmt: str) -> str:
    if fmt == "json":
        envelope = {"command": command, "inputs": _jsonable(inputs),
                    "result": _jsonable(result), "format": "json"}
        return json.dumps(envelope, indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        if rows is None:
            rows = [{k: v for k, v in result.items() if not isinstance(v, (list, dict))}]
        return _csv_text(rows)
    if command == "moore":
        return f"{result['moore_bound']}\n"
    if rows is not None and command in ("table1", "graph", "certify"):
        head = ""
        if command == "table1":
            head = f"# {result['matched']}/{result['total']} rows match the published values\n"
        elif command == "certify":
            head = (f"applicable: {result['applicable']}\nbound: {_scalar_text(result['bound'])}\n"
                    f"closed_form: {_scalar_text(result['closed_form'])}\n")
        elif command == "graph" and "eigenvalues" in result:
            head = f"name: {result['name']}\nn: {result['n']}\nr: {result['r']}\n"
        elif command == "graph":
            head = f"length: {result['length']}\noracle_agrees: {result['oracle_agrees']}\n"
        return head + _text_table(rows)
    return "".join(f"{k}: {_scalar_text(v)}\n" for k, v in result.items())


def error_envelope(command: str, exc: BaseException) -> str:
    return json.dumps({"command": command, "format": "json",
                       "error": {"type": type(exc).__name__, "message": str(exc)}},
                      indent=2) + "\n"


# -- argument parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                     help="output format (default text)")

    p = argparse.ArgumentParser(prog="spectral-moore", parents=[fmt],
                                description="Spectral Moore bounds for regular graphs.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("moore", parents=[fmt], help="classical Moore bound m(r, D)")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(run=cmd_moore)

    for name, run, what in (("vbound", cmd_vbound, "connected"),
                            ("bbound", cmd_bbound, "bipartite")):
        s = sub.add_parser(name, parents=[fmt],
                           help=f"largest order of a {what} r-regular graph with lambda2 <= theta")
        s.add_argument("--r", type=int, required=True)
        s.add_argument("--theta", type=parse_real, required=True,
                       help="decimal, p/q or sqrt(k)")
        s.set_defaults(run=run)

    s = sub.add_parser("window", parents=[fmt], help="eigenvalue window for beating a record order")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--known", type=int, default=None,
                   help="record order (defaults to the shipped table)")
    s.set_defaults(run=cmd_window)

    s = sub.add_parser("table1", parents=[fmt], help="recompute the record-order table")
    s.set_defaults(run=cmd_table1)

    s = sub.add_parser("graph", parents=[fmt], help="inspect a named or edge-list graph")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", help="catalog name, e.g. petersen or cycle(7)")
    src.add_argument("--file", help="edge list with header 'n m'")
    acts = s.add_subparsers(dest="action", required=True, metavar="action")
    acts.add_parser("spectrum", parents=[fmt])
    a = acts.add_parser("nbwalks", parents=[fmt])
    a.add_argument("--len", type=int, required=True)
    a = acts.add_parser("check", parents=[fmt])
    a.add_argument("--kind", choices=("general", "bipartite"), default="general")
    acts.add_parser("metrics", parents=[fmt])
    s.set_defaults(run=cmd_graph)

    s = sub.add_parser("certify", parents=[fmt], help="build or verify an LP certificate")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--c", type=parse_c, default=None, help="integer, p/q or decimal")
    s.add_argument("--bipartite", action="store_true")
    s.add_argument("--f", default=None, help="JSON file of coefficients")
    s.add_argument("--basis", choices=("F", "monomial"), default=None,
                   help="basis of the --f coefficients (default F)")
    s.set_defaults(run=cmd_certify)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "text")
    try:
        inputs, result, rows, code = args.run(args)
    except UsageError as exc:
        code, err = EXIT_USAGE, exc
    except ThetaOutOfRange as exc:
        code, err = EXIT_THETA, exc
    except GraphError as exc:
        code, err = EXIT_GRAPH, exc
    except (SpectralMooreError, OverflowError) as exc:
        code, err = EXIT_DOMAIN, exc
    else:
        stdout.write(render(args.command, inputs, result, rows, fmt))
        return code
    if fmt == "json":
        stdout.write(error_envelope(args.command, err))
    stderr.write(f"spectral-moore {args.command}: error: {err}\n")
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
