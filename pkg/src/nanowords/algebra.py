"""Exact values of invariants.

``RingElem`` is a polynomial in a+ and a- with rational coefficients; it
models the quotient of the monoid algebra on {a+, a-, b+, b-} by
a+ + b+ = 0, a- + b- = 0 (b's are substituted away eagerly).  ``ParamExpr``
is an affine expression in named parameters with ``RingElem`` coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Scalar = Union[int, Fraction]
Monomial = tuple[int, int]  # exponents of (a+, a-)


class UnassignedError(KeyError):
    pass


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rationals are written as p/q, not decimals: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_str(m: Monomial) -> str:
    parts = []
    for var, e in zip(("a+", "a-"), m):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return " ".join(parts) or "1"


def _parse_monomial(text: str) -> Monomial:
    exps = {"a+": 0, "a-": 0}
    if text.strip() == "1":
        return (0, 0)
    for part in text.split():
        var, _, e = part.partition("^")
        if var not in exps:
            raise ValueError(f"unknown ring variable {var!r}")
        exps[var] += int(e) if e else 1
    return (exps["a+"], exps["a-"])


class RingElem:
    """Element of Q[a+, a-]; immutable, zero coefficients never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "RingElem":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, plus: int, minus: int, coeff: Scalar = 1) -> "RingElem":
        return cls({(plus, minus): coeff})

    @classmethod
    def coerce(cls, x) -> "RingElem":
        if isinstance(x, RingElem):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a ring element")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0, 0), Fraction(0))

    def __add__(self, other):
        other = RingElem.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElem(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other):
        return RingElem.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElem({m: c * other for m, c in self.terms.items()})
        other = RingElem.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                m = (p1 + p2, q1 + q2)
                out[m] = out.get(m, 0) + c1 * c2
        return RingElem(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RingElem.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem.const(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def evaluate(self, a_plus: Scalar, a_minus: Scalar) -> Fraction:
        return sum((c * Fraction(a_plus) ** p * Fraction(a_minus) ** q
                    for (p, q), c in self.terms.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        items = {_monomial_str(m): format_rational(c) for m, c in self.terms.items()}
        if not items:
            items = {"1": "0"}
        return dict(sorted(items.items()))

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "RingElem":
        return cls({_parse_monomial(k): parse_rational(v) for k, v in data.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = _monomial_str(m).replace(" ", "")
            if mono == "1":
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"RingElem({self})"


ZERO = RingElem()
ONE = RingElem.const(1)
A_PLUS = RingElem.monomial(1, 0)
A_MINUS = RingElem.monomial(0, 1)


class ParamExpr:
    """``constant + Σ coeff[name] * name`` with ring-valued coefficients."""

    __slots__ = ("constant", "coeffs")

    def __init__(self, constant=ZERO, coeffs: Mapping[str, object] | None = None):
        self.constant = RingElem.coerce(constant)
        self.coeffs: dict[str, RingElem] = {}
        for name, c in (coeffs or {}).items():
            c = RingElem.coerce(c)
            if not c.is_zero():
                self.coeffs[name] = c

    @classmethod
    def param(cls, name: str, coeff=1) -> "ParamExpr":
        return cls(ZERO, {name: coeff})

    @classmethod
    def coerce(cls, x) -> "ParamExpr":
        if isinstance(x, ParamExpr):
            return x
        if isinstance(x, str):
            return cls.param(x)
        return cls(RingElem.coerce(x))

    def params(self) -> set[str]:
        return set(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = ParamExpr.coerce(other)
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return ParamExpr(self.constant + other.constant, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-ParamExpr.coerce(other))

    def __rsub__(self, other):
        return ParamExpr.coerce(other) - self

    def scale(self, c) -> "ParamExpr":
        c = RingElem.coerce(c)
        return ParamExpr(c * self.constant, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, ParamExpr):
            if not other.is_constant() and not self.is_constant():
                raise ValueError("product of two parameter expressions is not affine")
            if self.is_constant():
                return other.scale(self.constant)
            return self.scale(other.constant)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RingElem)):
            other = ParamExpr.coerce(other)
        if not isinstance(other, ParamExpr):
            return NotImplemented
        return self.constant == other.constant and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.constant, frozenset(self.coeffs.items())))

    def subs(self, values: Mapping[str, object]) -> "ParamExpr":
        """Substitute parameters by numbers, ring elements or expressions;
        unmentioned parameters stay symbolic."""
        out = ParamExpr(self.constant)
        for k, c in self.coeffs.items():
            if k in values:
                out = out + ParamExpr.coerce(values[k]).scale(c)
            else:
                out = out + ParamExpr(ZERO, {k: c})
        return out

    def eval_ring(self, a_plus: Scalar, a_minus: Scalar) -> "ParamExpr":
        """Specialize the ring variables only."""
        ev = lambda r: RingElem.const(r.evaluate(a_plus, a_minus))
        return ParamExpr(ev(self.constant), {k: ev(c) for k, c in self.coeffs.items()})

    def specialize(self, params: Mapping[str, Scalar] | None = None,
                   ring_vals: Mapping[str, Scalar] | None = None) -> Fraction:
        params = params or {}
        ring_vals = ring_vals or {}
        missing = sorted(set(self.coeffs) - set(params))
        if missing:
            raise UnassignedError(f"unassigned parameters: {', '.join(missing)}")
        total = self.constant
        for k, c in self.coeffs.items():
            total = total + c * Fraction(params[k])
        if total.is_constant():
            return total.constant()
        for var in ("a+", "a-"):
            if var not in ring_vals:
                raise UnassignedError(f"unassigned ring variable {var}")
        return total.evaluate(ring_vals["a+"], ring_vals["a-"])

    def to_json(self) -> dict:
        return {"const": self.constant.to_json(),
                "coeffs": {k: self.coeffs[k].to_json() for k in sorted(self.coeffs)}}

    @classmethod
    def from_json(cls, data: Mapping) -> "ParamExpr":
        return cls(RingElem.from_json(data["const"]),
                   {k: RingElem.from_json(v) for k, v in data["coeffs"].items()})

    def __str__(self):
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if c == 1:
                parts.append(k)
            elif c == -1:
                parts.append(f"-{k}")
            elif len(c.terms) == 1:
                parts.append(f"{c}*{k}")
            else:
                parts.append(f"({c})*{k}")
        if not self.constant.is_zero() or not parts:
            parts.append(str(self.constant) if len(self.constant.terms) <= 1 else f"({self.constant})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ParamExpr({self})"
