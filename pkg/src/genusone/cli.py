"""Command-line front end.

Exit codes: 0 success, 1 identity failure, 2 usage or parse error,
3 mathematically invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from .alexform import (
    AlexFormData,
    D_abc,
    D_sigma,
    NotAlexanderForm,
    WrongConstantTerm,
    delta_AB,
    gamma_from_series,
    normalize_alexander_series,
    quad_of,
    raw_alexander_series,
)
from .invariants import (
    CurveLambdas,
    DegenerateLambda,
    SeifertMatrix,
    SurfaceTriple,
    W_s_2k,
    W_s_eval,
    alexander_from_seifert,
    lambda_prime_triple,
    seifert_from_triple,
    triple_from_seifert,
    w3,
    w_del_surface,
    w_del_triple,
    w_sl,
)
from .ring import as_fraction
from .series import NotDivisible, TruncSeries, format_series, series_terms_json

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}]}
_TAIL = {
    "type": "array",
    "items": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "prefixItems": [
            {"type": "integer", "minimum": 0},
            {
                "type": "array",
                "items": {
                    "type": "array",
                    "minItems": 3,
                    "maxItems": 3,
                    "prefixItems": [{"type": "integer", "minimum": 0}, {"type": "integer", "minimum": 0}, _RATIONAL],
                },
            },
        ],
    },
}
SURFACE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["h1", "abc", "ell", "lambda", "series"],
    "properties": {
        "h1": {"type": "integer", "minimum": 1},
        "abc": {"type": "array", "items": _RATIONAL, "minItems": 3, "maxItems": 3},
        "ell": _RATIONAL,
        "lambda": {
            "type": "object",
            "additionalProperties": False,
            "required": ["A", "B", "C", "E"],
            "properties": {k: _RATIONAL for k in "ABCE"},
        },
        "series": {
            "type": "object",
            "additionalProperties": False,
            "required": ["cap"],
            "properties": {"cap": {"type": "integer", "minimum": 6}, "even_tail": _TAIL, "gamma_tail": _TAIL},
        },
        "orders": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 3, "maxItems": 3},
        "strict_odd": {"type": "boolean"},
    },
}


class UsageError(Exception):
    pass


def q(x) -> str:
    return str(Fraction(x))


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(str(text).strip().replace(" ", ""))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _rationals(text: str, n: int) -> list[Fraction]:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated rationals, got {text!r}")
    return [_rational(p) for p in parts]


def _triple(values, strict: bool) -> SurfaceTriple:
    try:
        return SurfaceTriple(*values, strict_odd=strict)
    except ValueError as exc:
        raise UsageError(f"{exc} (pass --no-strict to allow arbitrary rationals)") from exc


def _emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _series_payload(s: TruncSeries, upto: int | None = None) -> dict:
    n = s.valid_to if upto is None else min(upto, s.valid_to)
    return {"text": format_series(s, n), "valid_to": n, "terms": series_terms_json(s, n)}


def _matrix_text(V: SeifertMatrix) -> str:
    return f"[[{V.v11}, {V.v12}], [{V.v21}, {V.v22}]]"


# subcommands


def cmd_pretzel(args) -> int:
    t = _triple([_rational(x) for x in (args.a, args.b, args.c)], not args.no_strict)
    lam = CurveLambdas(_rational(args.lA), _rational(args.lB), _rational(args.lC), _rational(args.lAB))
    V = seifert_from_triple(t)
    delta = alexander_from_seifert(V, args.h1)
    vals = {
        "abc": [q(x) for x in t.as_tuple()],
        "lambda_prime": q(lambda_prime_triple(t)),
        "w_delta_abc": q(w_del_triple(t)),
        "w_delta_surface": q(w_del_surface(t, lam)),
        "w_SL": q(w_sl(t, lam)),
        "w3": q(w3(t, lam)),
        "alexander": str(delta),
        "seifert_matrix": [[q(V.v11), q(V.v12)], [q(V.v21), q(V.v22)]],
    }
    lines = [
        f"triple (a,b,c) = {t}",
        f"lambda' = {vals['lambda_prime']}",
        f"w_delta(a,b,c) = {vals['w_delta_abc']}",
        f"w_delta(Sigma) = {vals['w_delta_surface']}",
        f"w_SL = {vals['w_SL']}",
        f"w3 = {vals['w3']}",
        f"Delta(t) = {delta}",
        f"Seifert matrix = {_matrix_text(V)}",
    ]
    _emit(args, vals, lines)
    return EXIT_OK


def cmd_seifert(args) -> int:
    vals = _rationals(args.matrix, 4)
    try:
        V = SeifertMatrix(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = triple_from_seifert(V)
    delta = alexander_from_seifert(V, args.h1)
    payload = {
        "abc": [q(x) for x in t.as_tuple()],
        "lambda_prime": q(lambda_prime_triple(t)),
        "det": q(V.det()),
        "alexander": str(delta),
    }
    lines = [f"triple (a,b,c) = {t}", f"lambda' = {payload['lambda_prime']}", f"Delta(t) = {delta}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_series(args) -> int:
    if args.degree < 0:
        raise UsageError("--degree must be >= 0")
    t = _triple(_rationals(args.abc, 3), not args.no_strict)
    s = D_abc(t, args.degree)
    if args.json:
        payload = {"abc": [q(x) for x in t.as_tuple()], "series": _series_payload(s)}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(format_series(s))
    return EXIT_OK


def _tail(entries) -> dict:
    out: dict = {}
    for degree, terms in entries or []:
        part = out.setdefault(degree, {})
        for i, j, c in terms:
            part[(i, j)] = part.get((i, j), Fraction(0)) + _rational(c)
    return out


def load_surface(path: str):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        jsonschema.validate(doc, SURFACE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid surface document: {exc.message}") from exc
    strict = doc.get("strict_odd", True)
    t = _triple([_rational(x) for x in doc["abc"]], strict)
    lam = doc["lambda"]
    try:
        data = AlexFormData(
            h1=doc["h1"],
            ell=_rational(doc["ell"]),
            lA=_rational(lam["A"]),
            lB=_rational(lam["B"]),
            lC=_rational(lam["C"]),
            lE=_rational(lam["E"]),
            even_tail=_tail(doc["series"].get("even_tail")),
            gamma_tail=_tail(doc["series"].get("gamma_tail")),
            cap=doc["series"]["cap"],
            orders=tuple(doc.get("orders", (1, 1, 1))),
            strict=False,  # shape problems surface during normalization
        )
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    return data, t


def cmd_surface(args) -> int:
    data, t = load_surface(args.input)
    raw = raw_alexander_series(data)
    v, A, (lA, lB, lC, lE) = normalize_alexander_series(raw, data.h1, data.ell)
    gamma = gamma_from_series(A)
    dab = delta_AB(A)
    Ds = D_sigma(A, t, gamma)
    lam = CurveLambdas(lA, lB, lC, lE, data.ell)
    D2 = quad_of(Ds)
    ws = {}
    for k in (1, 2):
        if 2 * k <= min(4, Ds.valid_to):
            part = {(i, 2 * k - i): c for i, c in Ds.part(2 * k).items()}
            ws[str(2 * k)] = q(W_s_2k(part, t, k))
    n = args.degree
    payload = {
        "abc": [q(x) for x in t.as_tuple()],
        "h1": data.h1,
        "ell": q(data.ell),
        "unit_exponent": [q(v.p), q(v.q)],
        "lambda": {"A": q(lA), "B": q(lB), "C": q(lC), "E": q(lE)},
        "alexander_series": _series_payload(A.series, n),
        "gamma": _series_payload(gamma, n),
        "delta_AB": _series_payload(dab, n),
        "D_sigma": _series_payload(Ds, n),
        "D2": str(D2),
        "W_s_D2": q(W_s_eval(D2, t)),
        "W_s_2k": ws,
        "w_SL": q(w_sl(t, lam)),
        "w_delta_surface": q(w_del_surface(t, lam)),
        "w3": q(w3(t, lam)),
    }
    lines = [
        f"triple (a,b,c) = {t}",
        f"unit exponent = {v}",
        f"lambda'(A), lambda'(B), lambda'(C), lambda'(E) = {q(lA)}, {q(lB)}, {q(lC)}, {q(lE)}",
        f"A = {payload['alexander_series']['text']}",
        f"Gamma = {payload['gamma']['text']}",
        f"Delta(A,B) = {payload['delta_AB']['text']}",
        f"D(Sigma) = {payload['D_sigma']['text']}",
        f"D_2 = {payload['D2']}",
        f"W_s(D_2) = {payload['W_s_D2']}",
        *(f"W_s,{k}(D_{k}) = {val}" for k, val in ws.items()),
        f"w_SL = {payload['w_SL']}",
        f"w_delta(Sigma) = {payload['w_delta_surface']}",
        f"w3 = {payload['w3']}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verify

    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.degree < 6:
        raise UsageError("--degree must be >= 6")
    if args.range < 1:
        raise UsageError("--range must be >= 1")
    report = run_verify(args.seed, args.trials, args.degree, args.range, fault=args.inject_fault)
    if args.json:
        payload = {
            "ok": report.ok,
            "identities": [
                {"name": r.name, "checked": r.checked, "failed": r.failed,
                 "first_counterexample": r.first_counterexample}
                for r in report.results.values()
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(report.lines()))
        print("PASS" if report.ok else "FAIL")
    return EXIT_OK if report.ok else EXIT_IDENTITY


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genusone", description="Invariants of genus one knots and Seifert surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("pretzel", help="invariants of the pretzel surface with twists a, b, c")
    pr.add_argument("a")
    pr.add_argument("b")
    pr.add_argument("c")
    for flag in ("lA", "lB", "lC", "lAB"):
        pr.add_argument(f"--{flag}", default="0", help=f"lambda' input {flag} (default 0)")
    pr.add_argument("--h1", type=int, default=1)
    pr.add_argument("--no-strict", action="store_true", help="allow non-odd rational triples")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_pretzel)

    se = sub.add_parser("seifert", help="triple and Alexander polynomial from a 2x2 Seifert matrix")
    se.add_argument("--matrix", required=True, help="v11,v12,v21,v22 with v12 - v21 = 1")
    se.add_argument("--h1", type=int, default=1)
    se.add_argument("--json", action="store_true")
    se.set_defaults(func=cmd_seifert)

    sr = sub.add_parser("series", help="print D(a,b,c) up to a degree")
    sr.add_argument("--abc", required=True)
    sr.add_argument("--degree", type=int, default=4)
    sr.add_argument("--no-strict", action="store_true")
    sr.add_argument("--json", action="store_true")
    sr.set_defaults(func=cmd_series)

    su = sub.add_parser("surface", help="full report for a surface JSON document")
    su.add_argument("--input", required=True)
    su.add_argument("--degree", type=int, default=4)
    su.add_argument("--json", action="store_true")
    su.set_defaults(func=cmd_surface)

    ve = sub.add_parser("verify", help="run the identity suite")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--trials", type=int, default=50)
    ve.add_argument("--degree", type=int, default=8)
    ve.add_argument("--range", type=int, default=5)
    ve.add_argument("--json", action="store_true")
    ve.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    ve.set_defaults(func=cmd_verify)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    # let "--abc -1,-1,1" through; argparse would read "-1,-1,1" as an option
    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok in ("--abc", "--matrix") and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotAlexanderForm, NotDivisible, WrongConstantTerm, DegenerateLambda) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
