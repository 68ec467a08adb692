"""Command-line front end.

    kmult <subcommand> --model <builtin:NAME|file:PATH> [flags]
          [--format text|json|plot] [--seed S]

Exit codes: 0 pass, 1 property failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from . import groebner
from .errors import (DegreeOverflow, IllConditioned, InvalidParams, KmultError,
                     NonCommutingTuple, NoStabilization, ParseError, UnknownModel,
                     ValidationError)
from .parsing import canonical_model_text, parse_model_file
from .report import RunReport, emit_report, fingerprint
from .util import INFINITE

INPUT_ERRORS = (ParseError, ValidationError, UnknownModel, InvalidParams,
                NonCommutingTuple)
RESOURCE_ERRORS = (DegreeOverflow, NoStabilization, IllConditioned)


def _load_model(spec: str, params: dict):
    from .models import build
    if spec.startswith("builtin:"):
        return build(spec.split(":", 1)[1], **params)
    if spec.startswith("file:"):
        return parse_model_file(spec.split(":", 1)[1])
    raise UnknownModel(f"model must be builtin:NAME or file:PATH, got {spec!r}")


def _parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InvalidParams(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = int(v)
        except ValueError:
            out[k] = v
    return out


def _powers(text, d):
    parts = [int(x) for x in text.split(",")]
    if len(parts) != d:
        raise InvalidParams(f"--powers needs {d} comma-separated integers")
    return tuple(parts)


def _report(args, op, params, values, certified, provenance=None, elapsed=None):
    model_text = canonical_model_text(args._model) if args._model is not None else ""
    rep = RunReport(command=" ".join(args._argv), model=fingerprint(model_text),
                    op=op, params=params, values=values,
                    provenance=provenance or [], certified=certified)
    if elapsed is not None:
        rep.timings["wall"] = elapsed
    sys.stdout.write(emit_report(rep, args.format))
    return 0


def _compare_expected(model_name, op, actual):
    """Provenance-tagged comparisons against catalog expected values."""
    from .models import CATALOG
    entry = CATALOG.get(model_name)
    if not entry:
        return []
    out = []
    for key, (value, prov) in entry.expected.items():
        if key == op and isinstance(value, int):
            out.append({"key": key, "expected": value, "actual": actual,
                        "provenance": prov, "match": value == actual})
    return out


def cmd_homology(args):
    from .koszul import homology_dims, homology_dims_windowed
    from .modules import FilteredModel, MatrixModule
    m = args._model
    if isinstance(m, (MatrixModule, FilteredModel)):
        window = args.window if args.window is not None else args.window_cap
        rep = homology_dims_windowed(m, _powers(args.powers, m.d), window)
    else:
        rep = homology_dims(m, _powers(args.powers, m.d))
    values = {"h": list(rep.h), "index": rep.index}
    return _report(args, "homology", {"powers": rep.powers}, values, rep.certified)


def cmd_h_seq(args):
    from .koszul import h_sequence
    m = args._model
    table = h_sequence(m, args.kmax)
    rows = [[k] + list(table["rows"][k]) for k in sorted(table["rows"])]
    values = {"rows": {k: list(v) for k, v in table["rows"].items()},
              "fitted": table["fitted"], "plot": rows}
    return _report(args, "h-seq", {"kmax": args.kmax}, values, True)


def cmd_h_grid(args):
    from .koszul import h_grid
    m = args._model
    table = h_grid(m, args.smax, args.tmax)
    rows = [[s, t] + list(table[(s, t)]) for (s, t) in sorted(table)]
    values = {"rows": {f"{s},{t}": list(v) for (s, t), v in sorted(table.items())},
              "plot": rows}
    return _report(args, "h-grid", {"smax": args.smax, "tmax": args.tmax}, values, True)


def cmd_index(args):
    from .koszul import fredholm_index
    m = args._model
    powers = _powers(args.powers, m.d) if args.powers else None
    idx = fredholm_index(m, powers)
    prov = _compare_expected(args._model_name, "index", idx)
    return _report(args, "index", {"powers": powers}, {"index": idx}, True, prov)


def cmd_samuel(args):
    from .hilbert import samuel_multiplicity
    rep = samuel_multiplicity(args._model)
    values = {"e": rep.e, "coefficients": list(rep.fit.coeffs),
              "onset": rep.fit.onset,
              "plot": [[k, v, rep.fit(k)] for k, v in rep.samples]}
    prov = _compare_expected(args._model_name, "samuel_e", rep.e)
    return _report(args, "samuel", {}, values, True, prov)


def cmd_lech(args):
    from .hilbert import lech_check
    rep = lech_check(args._model, args.kmax)
    values = {"e": rep.e, "box_limit": rep.box_limit,
              "envelope_constant": rep.envelope_constant,
              "envelope_ok": rep.envelope_ok,
              "rows": [{"k": r.k, "box": r.box, "phi": r.phi,
                        "box_ratio": r.box_ratio, "phi_ratio": r.phi_ratio,
                        "gap": r.gap} for r in rep.rows],
              "plot": [[r.k, r.box, r.phi] for r in rep.rows]}
    ok = rep.envelope_ok and rep.limits_agree
    _report(args, "lech", {"kmax": args.kmax}, values, True)
    return 0 if ok else 1


def cmd_sandwich(args):
    from .hilbert import theorem8_sandwich
    grid = None
    if args.grid:
        a, b = (int(x) for x in args.grid.split(","))
        grid = [(s, t) for s in range(1, a + 1) for t in range(1, b + 1)]
    rep = theorem8_sandwich(args._model, grid)
    values = {"e": rep.e, "c_hat": rep.c_hat,
              "cells": [{"powers": list(c.powers), "quotient": c.quotient,
                         "lower_ok": c.lower_ok, "slack": c.slack}
                        for c in rep.cells],
              "diagonal_growth": rep.diagonal_growth}
    _report(args, "sandwich", {"grid": args.grid}, values, True)
    ok = all(c.lower_ok for c in rep.cells) and not rep.diagonal_growth
    return 0 if ok else 1


def cmd_fock(args):
    from . import fock
    m = args._model
    if not isinstance(m, fock.FockSubmodule):
        raise ValidationError("fock operations need a submodule model")
    op = args.fock_op
    if op == "phi":
        values = {"phi": {k: fock.phi(m, k) for k in range(1, args.k + 1)},
                  "plot": [[k, fock.phi(m, k)] for k in range(1, args.k + 1)]}
    elif op == "sigma":
        values = {"sigma": fock.sigma(m)}
    elif op == "fd":
        values = {"fibre_dimension": fock.fibre_dimension(m, args.seed)}
    elif op == "curvature":
        values = {"curvature": fock.curvature(m)}
    elif op == "epsilon":
        fam = fock.occupying_family(m, args.seed)
        from .poly import format_polynomial, format_vector
        values = {"epsilon": fam.epsilon,
                  "components": list(fam.component_indices),
                  "det": format_polynomial(fam.det),
                  "diagonalizers": [format_vector(g) for g in fam.diagonalizers]}
    elif op == "dashboard":
        board = fock.dashboard(m, seed=args.seed)
        values = {"index": board.index, "samuel_e": board.samuel_e,
                  "line3_limit": board.line3_limit,
                  "localized_codim": board.localized_codim,
                  "rank_limit": board.rank_limit,
                  "trace_limit": board.trace_limit,
                  "fibre_dim": board.fibre_dim, "epsilon": board.epsilon,
                  "consistent": board.consistent}
    else:
        raise InvalidParams(f"unknown fock operation {op!r}")
    return _report(args, f"fock-{op}", {"k": getattr(args, "k", None)}, values, True)


def cmd_verify(args):
    from .verify import run_suite
    try:
        results = run_suite(args.suite, seed=args.seed, count=args.count)
    except KeyError:
        raise InvalidParams(f"unknown suite {args.suite!r}") from None
    failed = 0
    for suite in results:
        for check in suite.checks:
            status = "ok" if check.ok else "FAIL"
            line = f"[{suite.name}] {status:4} {check.desc}"
            if check.detail:
                line += f"  ({check.detail})"
            print(line[:120])
            failed += 0 if check.ok else 1
        print(f"[{suite.name}] {'PASSED' if suite.passed else 'FAILED'}")
    return 0 if failed == 0 else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="kmult",
                                 description="Koszul homology, Fredholm indices and "
                                             "Fock-space invariants, exactly.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, model=True):
        if model:
            p.add_argument("--model", required=True)
            p.add_argument("--param", action="append", default=[])
        p.add_argument("--format", default="text",
                       choices=["text", "json", "structured", "json-like", "plot"])
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--degree-cap", type=int,
                       default=int(os.environ.get("KMULT_DEGREE_CAP", "64")))
        p.add_argument("--window-cap", type=int, default=None)

    p = sub.add_parser("homology");  common(p)
    p.add_argument("--powers", required=True)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("h-seq");  common(p)
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(fn=cmd_h_seq)

    p = sub.add_parser("h-grid");  common(p)
    p.add_argument("--smax", type=int, default=3)
    p.add_argument("--tmax", type=int, default=3)
    p.set_defaults(fn=cmd_h_grid)

    p = sub.add_parser("index");  common(p)
    p.add_argument("--powers", default=None)
    p.set_defaults(fn=cmd_index)

    p = sub.add_parser("samuel");  common(p)
    p.set_defaults(fn=cmd_samuel)

    p = sub.add_parser("lech");  common(p)
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(fn=cmd_lech)

    p = sub.add_parser("sandwich");  common(p)
    p.add_argument("--grid", default="4,4")
    p.set_defaults(fn=cmd_sandwich)

    p = sub.add_parser("fock");  common(p)
    p.add_argument("fock_op", choices=["phi", "sigma", "fd", "curvature",
                                       "epsilon", "dashboard"])
    p.add_argument("--k", type=int, default=6)
    p.set_defaults(fn=cmd_fock)

    p = sub.add_parser("verify");  common(p, model=False)
    p.add_argument("suite")
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    groebner.DEFAULT_DEGREE_CAP = args.degree_cap
    args._argv = ["kmult"] + argv
    args._model = None
    args._model_name = None
    try:
        if hasattr(args, "model"):
            args._model = _load_model(args.model, _parse_params(args.param))
            if args.model.startswith("builtin:"):
                from .models import _ALIASES
                name = args.model.split(":", 1)[1]
                args._model_name = _ALIASES.get(name, name)
        return args.fn(args)
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except RESOURCE_ERRORS as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except KmultError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
