"""Problem files: JSON documents describing sigma, the field, I and an optional hom.

Example::

    {"ambient_rank": 1,
     "monoid_generators": [[1]],
     "coefficient_field": "Q",
     "ideal_generators": [[{"coeff": "1", "x": [2], "y": [0]},
                           {"coeff": "-1", "x": [0], "y": [2]}]],
     "hom": {"tau_generators": [[2], [3]], "images": [[2], [3]]},
     "budgets": {"gb_degree": 40, "gb_size": 5000, "fiber": 100000}}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .errors import InvalidInput
from .gb.ideal import Ambient
from .gb.poly import GF, QQ
from .monoid import AffineMonoid, MonoidHom, hom_new

# the one place budget defaults live
DEFAULT_BUDGETS = {"gb_degree": 40, "gb_size": 5000, "fiber": 10 ** 5}


class ProblemError(InvalidInput):
    """Parse or validation failure, pointing at a line or a field path."""

    def __init__(self, message, where=None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class Problem:
    d: int
    sigma: AffineMonoid
    field: Any
    ambient: Ambient
    generators: list
    hom: Optional[MonoidHom] = None
    budgets: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)

    @property
    def gb_budgets(self) -> dict:
        return {"degree_budget": self.budgets["gb_degree"],
                "size_budget": self.budgets["gb_size"]}


def parse_field(spec):
    """'Q', 'Fp:7', {'Fp': 7} or 7."""
    if spec in (None, "Q", "QQ"):
        return QQ
    p = None
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        p = spec["Fp"]
    elif isinstance(spec, str) and spec.startswith("Fp:"):
        p = spec[3:]
    elif isinstance(spec, int) and not isinstance(spec, bool):
        p = spec
    try:
        p = int(p)
    except (TypeError, ValueError):
        raise ProblemError(f"unknown coefficient field {spec!r}", "coefficient_field")
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ProblemError(f"{p} is not prime", "coefficient_field")
    return GF(p)


def _int_vector(v, d, where) -> tuple:
    if not isinstance(v, list) or len(v) != d:
        raise ProblemError(f"expected a list of {d} integers", where)
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise ProblemError("entries must be integers", where)
    return tuple(v)


def _coeff(c, where) -> Fraction:
    if isinstance(c, bool) or not isinstance(c, (str, int)):
        raise ProblemError("coefficients are exact strings such as \"-3/4\"", where)
    try:
        return Fraction(c)
    except (ValueError, ZeroDivisionError):
        raise ProblemError(f"cannot parse coefficient {c!r}", where)


def _polynomial(terms, A: Ambient, sigma: AffineMonoid, where) -> dict:
    if not isinstance(terms, list):
        raise ProblemError("a polynomial is a list of terms", where)
    F = A.field
    out: dict = {}
    for t, term in enumerate(terms):
        w = f"{where}[{t}]"
        if not isinstance(term, dict) or not {"coeff", "x", "y"} <= set(term):
            raise ProblemError("term needs coeff, x and y", w)
        x = _int_vector(term["x"], sigma.d, w + ".x")
        y = _int_vector(term["y"], sigma.d, w + ".y")
        for name, v in (("x", x), ("y", y)):
            if sigma.contains(v) is None:
                raise ProblemError(f"{list(v)} is not in the monoid", f"{w}.{name}")
        c = F(_coeff(term["coeff"], w + ".coeff"))
        e = A.exponent([x, y])
        out[e] = F.norm(out.get(e, F.zero) + c)
        if not out[e]:
            del out[e]
    return out


def parse_problem(data: dict, field_override=None, budget_overrides=None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("top level must be an object")
    for key in ("ambient_rank", "monoid_generators"):
        if key not in data:
            raise ProblemError("missing field", key)
    d = data["ambient_rank"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ProblemError("must be a positive integer", "ambient_rank")
    gens = data["monoid_generators"]
    if not isinstance(gens, list) or not gens:
        raise ProblemError("need at least one generator", "monoid_generators")
    gens = [_int_vector(g, d, f"monoid_generators[{i}]") for i, g in enumerate(gens)]
    sigma = AffineMonoid(d, gens)
    F = parse_field(field_override if field_override is not None
                    else data.get("coefficient_field", "Q"))
    A = Ambient(sigma, 2, F)
    raw = data.get("ideal_generators", [])
    if not isinstance(raw, list):
        raise ProblemError("must be a list of polynomials", "ideal_generators")
    polys = [_polynomial(p, A, sigma, f"ideal_generators[{i}]") for i, p in enumerate(raw)]

    budgets = dict(DEFAULT_BUDGETS)
    fb = data.get("budgets", {})
    if not isinstance(fb, dict):
        raise ProblemError("must be an object", "budgets")
    for k, v in list(fb.items()) + list((budget_overrides or {}).items()):
        if k not in DEFAULT_BUDGETS:
            raise ProblemError(f"unknown budget {k!r}", "budgets")
        if v is None:
            continue
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ProblemError("budgets are positive integers", f"budgets.{k}")
        budgets[k] = v

    hom = None
    if "hom" in data:
        h = data["hom"]
        if not isinstance(h, dict) or "tau_generators" not in h:
            raise ProblemError("hom needs tau_generators", "hom")
        tg = h["tau_generators"]
        if not isinstance(tg, list) or not tg or not isinstance(tg[0], list):
            raise ProblemError("need a non-empty list of vectors", "hom.tau_generators")
        e = len(tg[0])
        tau = AffineMonoid(e, [_int_vector(g, e, f"hom.tau_generators[{i}]")
                               for i, g in enumerate(tg)])
        images = h.get("images")
        if images is not None:
            images = [_int_vector(v, d, f"hom.images[{i}]") for i, v in enumerate(images)]
        try:
            hom = hom_new(tau, sigma, images)
        except InvalidInput as exc:
            raise ProblemError(str(exc), "hom")
    return Problem(d, sigma, F, A, polys, hom, budgets, data)


def load_problem(path, field_override=None, budget_overrides=None) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError(str(exc), str(path))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(exc.msg, f"line {exc.lineno}, column {exc.colno}")
    return parse_problem(data, field_override, budget_overrides)
