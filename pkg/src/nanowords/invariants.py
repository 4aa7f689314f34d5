"""Named invariants of closed curves, long curves and fronts.

Every invariant is an :class:`InvariantPreset`: a list of (coefficient,
pattern) terms paired with the word, plus scalar terms in the counts
n, n+, n-, c, i and i^2.  Cyclic-class terms are expanded into their signed
patterns when the preset is built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ParamExpr
from .pairing import (FRONT_FLAVOR, MARKED, PLAIN, RHO, SIGN, Pattern, angle_bracket,
                      class_terms, cyclic_class, parse_pattern, pattern_pairing)
from .words import CLOSED, FRONT, LONG, EtaleWord, WordError

P = ParamExpr.param
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CountSummary:
    n: int
    n_plus: int
    n_minus: int
    c: int
    i: int
    mu: int


def counts(w: EtaleWord) -> CountSummary:
    cross = [w.projection(x) for x in w.crossings]
    cusps = [w.projection(x) for x in w.cusps]
    return CountSummary(
        n=len(cross),
        n_plus=sum(1 for p in cross if p.epsilon > 0),
        n_minus=sum(1 for p in cross if p.epsilon < 0),
        c=len(cusps) // 2,
        i=w.index,
        mu=sum(p.epsilon for p in cusps),
    )


def _scalar(name: str, cs: CountSummary) -> int:
    return {"1": 1, "n": cs.n, "n+": cs.n_plus, "n-": cs.n_minus,
            "c": cs.c, "i": cs.i, "i2": cs.i * cs.i}[name]


@dataclass(frozen=True)
class InvariantPreset:
    name: str
    curve_class: str
    params: tuple[str, ...]
    terms: tuple[tuple[ParamExpr, Pattern], ...]
    scalars: tuple[tuple[ParamExpr, str], ...] = ()
    mode: str = SIGN
    description: str = field(default="", compare=False)

    def evaluate(self, w: EtaleWord) -> ParamExpr:
        return evaluate(self, w)


def evaluate(preset: InvariantPreset, w: EtaleWord) -> ParamExpr:
    if w.curve_class != preset.curve_class:
        raise WordError(f"{preset.name} is defined on {preset.curve_class} words, got {w.curve_class}")
    cs = counts(w)
    out = angle_bracket(preset.terms, w, preset.mode)
    for coeff, name in preset.scalars:
        val = _scalar(name, cs)
        if val:
            out = out + coeff.scale(val)
    return out


def _terms(*pairs) -> list:
    """(coeff, literal) pairs for plain pairing terms."""
    return [(ParamExpr.coerce(c), parse_pattern(lit)) for c, lit in pairs]


def _classes(flavor: str, *pairs) -> list:
    out = []
    for c, lit in pairs:
        out += class_terms(c, cyclic_class(parse_pattern(lit), flavor))
    return out


def generic(name: str, curve_class: str, pairs, mode: str = SIGN) -> InvariantPreset:
    """I_n-style invariant from caller supplied (parameter, pattern) pairs."""
    terms = tuple((ParamExpr.coerce(c), v if isinstance(v, Pattern) else parse_pattern(v))
                  for c, v in pairs)
    params = sorted({p for c, _ in terms for p in c.params()})
    return InvariantPreset(name, curve_class, tuple(params), terms, (), mode)


LI3_PATTERNS = ("XYXYZZ", "XYXZZY", "XYZZXY", "XYYZXZ", "XXYZYZ", "XYZYZX", "XYYXZZ",
                "XXYZZY", "XYZZYX", "XYZYXZ", "XYXZYZ", "XYZXZY", "XYZXYZ", "XXYYZZ",
                "XYYZZX")
GLI3_EXTRA = ("X.X.YY", "X.YYX.", "XXY.Y.", "XY.Y.X", "XY.XY.", "X.YX.Y")


def _ci2():
    s, t, u = P("s"), P("t"), P("u")
    return InvariantPreset(
        "CI2", CLOSED, ("s", "t", "u"),
        tuple(_terms((t, "XXYY"), (-t, "XYYX"), (u, "XYXY"))),
        ((s, "n"), (t.scale(HALF), "1"), (t.scale(-HALF), "i2")))


def _ci3_terms(s="s", t="t"):
    return _classes(PLAIN, (s, "XYXYZZ"), (t, "XXYYZZ"))


def _ci3():
    return InvariantPreset("CI3", CLOSED, ("s", "t"), tuple(_ci3_terms()), ((ParamExpr(1), "i"),))


def _gci3_terms(s="s", t="t", u="u"):
    return _ci3_terms(s, t) + _classes(MARKED, (u, "X.X.YY"))


def _gci3():
    return InvariantPreset("GCI3", CLOSED, ("s", "t", "u"), tuple(_gci3_terms()),
                           ((ParamExpr(1), "i"),))


def _li2():
    s, t, u, v = P("s"), P("t"), P("u"), P("v")
    return InvariantPreset(
        "LI2", LONG, ("s", "t", "u", "v"),
        tuple(_terms((t, "XXYY"), (u, "XYYX"), (v, "XYXY"))),
        ((s, "n"), (t.scale(-HALF), "i2")))


def _li3_terms():
    return _terms(*((f"x_{k}", lit) for k, lit in enumerate(LI3_PATTERNS, start=1)))


def _li3():
    return InvariantPreset("LI3", LONG, tuple(f"x_{k}" for k in range(1, 16)),
                           tuple(_li3_terms()), ((ParamExpr(1), "i"),))


def _gli3():
    extra = _terms(*((f"x_{k}", lit) for k, lit in enumerate(GLI3_EXTRA, start=16)))
    return InvariantPreset("GLI3", LONG, tuple(f"x_{k}" for k in range(1, 22)),
                           tuple(_li3_terms() + extra), ((ParamExpr(1), "i"),))


def _fi2_shape(names):
    """Shared shape of FI2 and its ring-valued version.

    ``names`` gives the parameters in the roles
    (n+, n-, XXYY/XYYX, XYXY, cusp-crossing, KK, c).
    """
    p, q, r, s, t, u, v = (P(x) for x in names)
    terms = _terms((r, "XXYY"), (-r, "XYYX"), (s, "XYXY"),
                   (t, "KXX"), (t, "XXK"), (-t, "XKX"), (u, "KK"))
    scalars = ((p, "n+"), (q, "n-"), (v, "c"), (r.scale(HALF), "1"), (r.scale(-HALF), "i2"))
    return terms, scalars


def _fi2():
    names = ("p", "q", "r", "s", "t", "u", "v")
    terms, scalars = _fi2_shape(names)
    return InvariantPreset("FI2", FRONT, names, tuple(terms), scalars)


def _fi2_ring():
    # parameter order p, q, x, z, t, v, r; roles match FI2's p, q, r, s, t, u, v
    order = ("p", "q", "x", "z", "t", "v", "r")
    terms, scalars = _fi2_shape(order)
    return InvariantPreset("FI2~", FRONT, order, tuple(terms), scalars, RHO)


_FRONT3 = (("p", "XKXYY"), ("q", "KXXYY"), ("r", "XKYXY"))


def _fi3():
    terms = _ci3_terms("x", "y") + _classes(FRONT_FLAVOR, *_FRONT3, ("s", "XXKK"), ("t", "KKK"))
    return InvariantPreset("FI3", FRONT, ("x", "y", "z", "p", "q", "r", "s", "t"),
                           tuple(terms), ((ParamExpr(1), "i"),))


def _gfi3():
    terms = _gci3_terms("x", "y", "z") + _classes(
        FRONT_FLAVOR, *_FRONT3, ("s", "KKK"), ("t", "XXKK"),
        ("u", "K.XX"), ("v", "KX.X."), ("h", "K.K"))
    return InvariantPreset("GFI3", FRONT, ("x", "y", "z", "p", "q", "r", "s", "t", "u", "v", "h"),
                           tuple(terms), ((ParamExpr(1), "i"),))


PRESETS: dict[str, InvariantPreset] = {
    p.name: p for p in (_ci2(), _ci3(), _gci3(), _li2(), _li3(), _gli3(),
                        _fi2(), _fi3(), _gfi3(), _fi2_ring())
}


def get_preset(name: str) -> InvariantPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


# -- Arnold invariants -------------------------------------------------------

F = Fraction
ARNOLD_CLOSED = {
    "J+": {"s": F(-1, 2), "t": 1, "u": -3},
    "J-": {"s": F(-3, 2), "t": 1, "u": -3},
    "St": {"s": F(1, 4), "t": F(-1, 2), "u": F(1, 2)},
}
ARNOLD_LONG = {
    "J+": {"s": F(-1, 2), "t": 1, "u": -1, "v": -3},
    "J-": {"s": F(-3, 2), "t": 1, "u": -1, "v": -3},
    "St": {"s": F(1, 4), "t": F(-1, 2), "u": F(1, 2), "v": F(1, 2)},
}
_FI2_NAMES = ("p", "q", "r", "s", "t", "u", "v")
ARNOLD_FRONT = {
    "J+": dict(zip(_FI2_NAMES, (F(-1, 2), F(-3, 2), 1, -3, F(1, 2), F(1, 4), F(-3, 4)))),
    "J-": dict(zip(_FI2_NAMES, (F(-3, 2), F(-1, 2), 1, -3, F(1, 2), F(1, 4), F(1, 4)))),
    "St": dict(zip(_FI2_NAMES, (F(1, 4), F(1, 4), F(-1, 2), F(1, 2), F(-1, 4), F(-1, 8), F(3, 8)))),
}
ARNOLD_NAMES = ("J+", "J-", "St")
_ARNOLD = {CLOSED: ("CI2", ARNOLD_CLOSED), LONG: ("LI2", ARNOLD_LONG), FRONT: ("FI2", ARNOLD_FRONT)}


def _numeric_coeffs(preset: InvariantPreset, params: dict) -> tuple[list, list]:
    key = (preset.name, tuple(sorted(params.items())))
    if key not in _NUMERIC_CACHE:
        _NUMERIC_CACHE[key] = ([c.specialize(params) for c, _ in preset.terms],
                               [c.specialize(params) for c, _ in preset.scalars])
    return _NUMERIC_CACHE[key]


_NUMERIC_CACHE: dict = {}


def _raw_values(preset: InvariantPreset, w: EtaleWord) -> tuple[list[int], list[int]]:
    if preset.mode != SIGN:
        raise ValueError("numeric evaluation is for sign-mode presets")
    if w.curve_class != preset.curve_class:
        raise WordError(f"{preset.name} is defined on {preset.curve_class} words, got {w.curve_class}")
    cs = counts(w)
    return ([pattern_pairing(v, w, SIGN) for _, v in preset.terms],
            [_scalar(name, cs) for _, name in preset.scalars])


def _dot(coeffs, raw) -> Fraction:
    (ct, cs), (rt, rs) = coeffs, raw
    return sum((c * x for c, x in zip(ct, rt) if x), Fraction(0)) + \
        sum((c * x for c, x in zip(cs, rs) if x), Fraction(0))


def evaluate_at(preset: InvariantPreset, w: EtaleWord, params: dict) -> Fraction:
    """Numeric value of a sign-mode preset at fully assigned parameters.

    Same result as ``evaluate(preset, w).specialize(params)`` but without
    building symbolic intermediates.
    """
    return _dot(_numeric_coeffs(preset, params), _raw_values(preset, w))


@lru_cache(maxsize=16384)
def arnold(w: EtaleWord) -> tuple[Fraction, Fraction, Fraction]:
    """(J+, J-, St) of a closed curve, long curve or front."""
    name, table = _ARNOLD[w.curve_class]
    preset = PRESETS[name]
    raw = _raw_values(preset, w)
    return tuple(_dot(_numeric_coeffs(preset, table[k]), raw) for k in ARNOLD_NAMES)


def arnold_symbolic(w: EtaleWord) -> tuple[Fraction, Fraction, Fraction]:
    """Same as :func:`arnold`, through the symbolic value of the preset."""
    preset, table = _ARNOLD[w.curve_class]
    value = evaluate(PRESETS[preset], w)
    return tuple(value.specialize(table[k]) for k in ARNOLD_NAMES)


def _arnold_for(cls):
    def f(w: EtaleWord):
        if w.curve_class != cls:
            raise WordError(f"expected a {cls} word, got {w.curve_class}")
        return arnold(w)
    f.__name__ = f"arnold_{cls}"
    f.__doc__ = f"(J+, J-, St) of a {cls} word."
    return f


arnold_closed = _arnold_for(CLOSED)
arnold_long = _arnold_for(LONG)
arnold_front = _arnold_for(FRONT)


def _degree3_table():
    s, t, u, v = P("s"), P("t"), P("u"), P("v")
    jplus = (s + t - v, s - t + u, -s + t + v, -s + 3 * t - u, s + t - v,
             2 * t - v, s, s, t, u, 2 * t - v, -2 * s + 4 * t - u, -2 * s + 2 * t + v,
             s - t + v, t.scale(HALF), s.scale(HALF), v, s.scale(HALF), t.scale(HALF),
             -s + 2 * t - u.scale(HALF), u.scale(HALF))
    p, q, r, x, y, z = P("p"), P("q"), P("r"), P("x"), P("y"), P("z")
    st = (2 * u, p, 2 * s, q, 2 * x, 2 * y, 2 * u, 2 * x, 2 * y, 2 * z, r, 2 * z, 2 * z,
          s, t, u, v, x, y, z, z)
    name = lambda k: f"x_{k}"
    return {"J+3": {name(k): e for k, e in enumerate(jplus, start=1)},
            "St3": {name(k): e for k, e in enumerate(st, start=1)}}


DEGREE3 = _degree3_table()


def arnold_degree3(w: EtaleWord, which: str = "J+3") -> ParamExpr:
    """GLI3 at the degree-3 substitution, free parameters left symbolic."""
    if w.curve_class != LONG:
        raise WordError("degree-3 Arnold-type invariants are defined on long words")
    try:
        subst = DEGREE3[which]
    except KeyError:
        raise KeyError(f"unknown degree-3 invariant {which!r}") from None
    preset = PRESETS["GLI3"]
    raw_terms, raw_scalars = _raw_values(preset, w)
    const = sum((c.constant.constant() * x for (c, _), x in zip(preset.scalars, raw_scalars)), Fraction(0))
    coeffs: dict[str, Fraction] = {}
    for (c, _), x in zip(preset.terms, raw_terms):
        if not x:
            continue
        (name,) = c.coeffs  # each GLI3 term is a bare parameter
        e = subst[name]
        const += x * e.constant.constant()
        for k, v in e.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + x * v.constant()
    return ParamExpr(const, coeffs)


def arnold_degree3_symbolic(w: EtaleWord, which: str = "J+3") -> ParamExpr:
    """Reference route: symbolic GLI3 followed by substitution."""
    if w.curve_class != LONG:
        raise WordError("degree-3 Arnold-type invariants are defined on long words")
    return evaluate(PRESETS["GLI3"], w).subs(DEGREE3[which])
