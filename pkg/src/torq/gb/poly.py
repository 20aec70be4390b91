"""Sparse multivariate polynomials over Q or F_p.

A polynomial is a plain ``dict`` mapping exponent tuples to nonzero field
elements. Fields are tiny strategy objects so the same routines serve both
coefficient domains.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence


class RationalField:
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def norm(a):
        return a

    @staticmethod
    def inv(a):
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return "Q"

    def format(self, a) -> str:
        return str(a)


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if p < 2 or p >= 2 ** 31 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def norm(self, a):
        return a % self.characteristic

    def inv(self, a):
        return pow(a, -1, self.characteristic)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Fp", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"

    def to_json(self):
        return {"Fp": self.characteristic}

    def format(self, a) -> str:
        return str(a)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# -- monomial orders ---------------------------------------------------------

class MonomialOrder:
    """Order given by a key function on exponent tuples (larger key = larger monomial)."""

    def __init__(self, name: str, keyfunc: Callable[[tuple], tuple]):
        self.name = name
        self._keyfunc = keyfunc
        self._cache: dict = {}

    def key(self, e: tuple):
        k = self._cache.get(e)
        if k is None:
            k = self._keyfunc(e)
            self._cache[e] = k
        return k

    def __repr__(self):
        return f"MonomialOrder({self.name})"


def _grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def grevlex() -> MonomialOrder:
    return MonomialOrder("grevlex", _grevlex_key)


def lex() -> MonomialOrder:
    return MonomialOrder("lex", lambda e: e)


def block_order(blocks: Sequence[Sequence[int]]) -> MonomialOrder:
    """Elimination order: grevlex within each block, earlier blocks dominate."""
    blocks = [tuple(b) for b in blocks]

    def key(e):
        out = ()
        for b in blocks:
            sub = tuple(e[i] for i in b)
            out += (sum(sub),) + tuple(-a for a in reversed(sub))
        return out
    return MonomialOrder(f"block{[len(b) for b in blocks]}", key)


def weighted_grevlex(weights: Sequence[int]) -> MonomialOrder:
    w = tuple(weights)
    return MonomialOrder(f"wgrevlex{w}",
                         lambda e: (sum(a * b for a, b in zip(w, e)),) + _grevlex_key(e))


# -- arithmetic ----------------------------------------------------------------

def monomial(e: Sequence[int], F=QQ, c=None) -> dict:
    return {tuple(e): F.one if c is None else c}


def const(c, nvars: int, F=QQ) -> dict:
    c = F(c)
    return {tuple([0] * nvars): c} if c else {}


def add(f: dict, g: dict, F=QQ) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = F.norm(out.get(e, F.zero) + c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def sub(f: dict, g: dict, F=QQ) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = F.norm(out.get(e, F.zero) - c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def scale(f: dict, c, F=QQ) -> dict:
    if not c:
        return {}
    return {e: F.norm(a * c) for e, a in f.items()}


def mul_term(f: dict, e: Sequence[int], c, F=QQ) -> dict:
    if not c:
        return {}
    return {tuple(x + y for x, y in zip(k, e)): F.norm(a * c) for k, a in f.items()}


def mul(f: dict, g: dict, F=QQ) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = F.norm(out.get(e, F.zero) + c1 * c2)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def power(f: dict, n: int, nvars: int, F=QQ) -> dict:
    out = const(1, nvars, F)
    for _ in range(n):
        out = mul(out, f, F)
    return out


def leading(f: dict, order: MonomialOrder):
    e = max(f, key=order.key)
    return e, f[e]


def divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def total_degree(f: dict) -> int:
    return max((sum(e) for e in f), default=0)


def substitute_vars(f: dict, perm: Sequence[int], nvars: int) -> dict:
    """Move variable i to position perm[i]."""
    out = {}
    for e, c in f.items():
        ne = [0] * nvars
        for i, a in enumerate(e):
            if a:
                ne[perm[i]] += a
        out[tuple(ne)] = c
    return out


def embed(f: dict, positions: Sequence[int], nvars: int) -> dict:
    """Place the variables of f at ``positions`` inside a ring with nvars variables."""
    out = {}
    for e, c in f.items():
        ne = [0] * nvars
        for i, a in zip(positions, e):
            ne[i] += a
        out[tuple(ne)] = c
    return out


def convert(f: dict, F) -> dict:
    out = {}
    for e, c in f.items():
        v = F(c)
        if v:
            out[e] = v
    return out


def is_zero(f: dict) -> bool:
    return not f


def to_str(f: dict, names: Sequence[str] | None = None) -> str:
    if not f:
        return "0"
    parts = []
    for e in sorted(f, reverse=True):
        c = f[e]
        mono = "*".join((n if a == 1 else f"{n}^{a}")
                        for n, a in zip(names or [f"v{i}" for i in range(len(e))], e) if a)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def from_terms(terms: Iterable[tuple], F=QQ) -> dict:
    out: dict = {}
    for e, c in terms:
        e = tuple(e)
        v = F.norm(out.get(e, F.zero) + F(c))
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out
