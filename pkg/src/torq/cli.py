"""``torq`` command line: run a pipeline on a problem file and emit a JSON report.

Exit codes: 0 computed and all asserted properties hold, 1 a checked
property failed, 2 invalid input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import __version__
from .amitsur import cohomology_table
from .equiv import certify_noneffective, effectivize, relation_new, verify_axioms
from .errors import (BudgetExceeded, InternalInvariantViolated, InvalidInput, NotToric,
                     TorqError)
from .gb.poly import to_str
from .problem import Problem, ProblemError, load_problem
from .quotient import quotient_compute

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
COMMANDS = ("verify", "effectivize", "quotient", "amitsur", "certify-noneffective")

log = logging.getLogger("torq")


def report_schema() -> dict:
    return json.loads(resources.files("torq").joinpath("report_schema.json").read_text())


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and v == float("inf"):
        return "infinite"
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    return str(v)


def _poly_terms(P: Problem, f: dict) -> list:
    """Polynomial on sigma x sigma as the problem-file term list."""
    out = []
    for e in sorted(f):
        x, y = P.ambient.degrees(e)
        out.append({"coeff": _jsonable(f[e]), "x": list(x), "y": list(y)})
    return out


def _presentation(gens: list, binomials: list) -> dict:
    if all(len(g) == 1 for g in gens):
        names = [f"z{g[0]}" if g[0] >= 0 else f"z_m{-g[0]}" for g in gens]
    else:
        names = [f"z{i + 1}" for i in range(len(gens))]
    return {"variables": [{"name": n, "degree": list(g)} for n, g in zip(names, gens)],
            "relations": sorted(to_str(b, names) for b in binomials)}


def _parse_degrees(text: str) -> list:
    """'0..10', '1,4,7' or ';'-separated vectors such as '1:2;0:3'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif ":" in part:
            out.append(tuple(int(a) for a in part.split(":")))
        elif part:
            out.append(int(part))
    return out


# -- pipelines ---------------------------------------------------------------------

def _verify(P: Problem, args) -> tuple[int, dict]:
    R = relation_new(P.sigma, P.generators, P.field, require_toric=False, **P.gb_budgets)
    ax = verify_axioms(R)
    keys = ("reflexive", "symmetric", "transitive", "finite")
    result = {k: ax[k] for k in keys}
    result["toric"] = R.toric
    result["errors"] = [str(e) for e in ax.get("errors", [])]
    return (EXIT_OK if all(result[k] for k in keys) else EXIT_FAILED), result


def _effectivize(P: Problem, args) -> tuple[int, dict]:
    R = relation_new(P.sigma, P.generators, P.field, **P.gb_budgets)
    M = effectivize(R)
    result = {"W": [list(w) for w in M.W],
              "tau_generators": [list(w) for w in M.tau_generators],
              "verified": M.verified,
              "difference_generators": [_poly_terms(P, R.difference(w)) for w in M.W]}
    if M.Y_presentation is not None:
        result["Y"] = _presentation(list(M.tau.generators), M.Y_presentation.binomials())
    for line in M.transcript:
        log.info("%s", line)
    return (EXIT_OK if M.verified else EXIT_FAILED), result


def _quotient(P: Problem, args) -> tuple[int, dict]:
    R = relation_new(P.sigma, P.generators, P.field, **P.gb_budgets)
    Q = quotient_compute(R, args.bound)
    result = {"verdict": Q.verdict,
              "invariant_generators": [list(g) for g in Q.generators],
              "bound": Q.bound, "stabilized": Q.stabilized,
              "finiteness": _jsonable(Q.finiteness),
              "certificate": _jsonable(Q.certificate),
              "effective_W": Q.effective_W, "effective_verified": Q.effective_verified}
    if Q.presentation is not None:
        result["Y"] = _presentation(Q.generators, Q.presentation)
    return (EXIT_OK if Q.effective_verified else EXIT_FAILED), result


def _amitsur(P: Problem, args) -> tuple[int, dict]:
    if P.hom is None:
        raise ProblemError("amitsur needs a hom block", "hom")
    degrees = _parse_degrees(args.degrees)
    T = cohomology_table(P.hom, args.levels, degrees, P.field, P.budgets["fiber"])
    rows = [{"degree": list(d), "h": [T.h[d][i] for i in sorted(T.h[d])]}
            for d in sorted(T.h)]
    nonzero = [{"degree": list(d), "i": i, "h": v} for d, i, v in T.nonzero()]
    result = {"n_max": args.levels, "table": rows, "nonzero": nonzero,
              "untested": [list(d) for d in T.untested], "d_squared_zero": True}
    return (EXIT_OK if not nonzero else EXIT_FAILED), result


def _certify(P: Problem, args) -> tuple[int, dict]:
    if not 0 <= args.element < len(P.generators):
        raise ProblemError(f"no ideal generator with index {args.element}", "--element")
    R = relation_new(P.sigma, P.generators, P.field, require_toric=False, **P.gb_budgets)
    g = P.generators[args.element]
    c = certify_noneffective(R, g, args.bound)
    result = {"element": _poly_terms(P, g), "degree": c["degree"], "holds": c["holds"],
              "invariant_basis": [[{"coeff": _jsonable(v), "s": list(s)}
                                   for s, v in f.items()] for f in c["basis"]]}
    return EXIT_OK, result


PIPELINES = {"verify": _verify, "effectivize": _effectivize, "quotient": _quotient,
             "amitsur": _amitsur, "certify-noneffective": _certify}


# -- driver ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torq", description="Toric equivalence relations, "
                                "effectivization and quotients, in exact arithmetic.")
    p.add_argument("--version", action="version", version=f"torq {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("problem")
        s.add_argument("--out")
        s.add_argument("--verbose", action="store_true")
        s.add_argument("--timing", action="store_true", help="add wall-clock seconds")
        s.add_argument("--field", help="Q or Fp:P")
        s.add_argument("--budget-gb", type=int, help="S-pair degree bound")
        s.add_argument("--budget-fiber", type=int, help="tensor fiber size bound")
        if name == "quotient":
            s.add_argument("--bound", type=int, help="l1 bound for invariant generators")
        if name == "amitsur":
            s.add_argument("--levels", type=int, default=4)
            s.add_argument("--degrees", default="0..10")
        if name == "certify-noneffective":
            s.add_argument("--element", type=int, required=True)
            s.add_argument("--bound", type=int, required=True)
    return p


def _echo(args) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("command", "problem", "out", "verbose", "timing") and v is not None}
    return {"name": args.command, "problem": args.problem, "flags": flags}


def run(args) -> tuple[int, dict]:
    t0 = time.perf_counter()
    status, code, result, error = "ok", EXIT_OK, {}, None
    budgets, P = {}, None
    try:
        P = load_problem(args.problem, args.field,
                         {"gb_degree": args.budget_gb, "fiber": args.budget_fiber})
        budgets = P.budgets
        code, result = PIPELINES[args.command](P, args)
        if code == EXIT_FAILED:
            status = "property_failed"
    except NotToric as exc:
        code, status = EXIT_INVALID, "invalid_input"
        error = {"type": "NotToric", "message": str(exc)}
        if exc.component is not None and P is not None:
            error["component"] = _poly_terms(P, exc.component)
    except InvalidInput as exc:
        code, status = EXIT_INVALID, "invalid_input"
        error = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "where", None):
            error["where"] = exc.where
    except BudgetExceeded as exc:
        code, status = EXIT_BUDGET, "budget_exceeded"
        error = {"type": type(exc).__name__, "message": str(exc), "limit": exc.limit}
    except (InternalInvariantViolated, TorqError) as exc:
        code, status = EXIT_FAILED, "property_failed"
        error = {"type": type(exc).__name__, "message": str(exc)}
    report = {"schema_version": SCHEMA_VERSION, "command": _echo(args), "status": status,
              "exit_code": code, "result": _jsonable(result), "budgets": budgets}
    if error is not None:
        report["error"] = error
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return code, report


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                            format="%(name)s: %(message)s")
    code, report = run(args)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
