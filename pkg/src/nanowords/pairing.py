"""Patterns, subword matching, the pairing <v, w> and cyclic classes.

A pattern is an abstract Gauss word whose roles carry a kind (crossing or
cusp) and a dimension (1, or 2 for dotted roles).  A match of a pattern in a
word is a set of letters whose restriction of the word is the pattern up to
renaming; each such subword is counted once.

The fast path in :func:`angle_bracket` uses the fact that the restriction of
a word to a letter set is fixed by the pairwise interleaving of its letters,
so each letter combination is summarized by a tuple of pairwise relations
and looked up in a histogram.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import ONE, ParamExpr, RingElem
from .words import CROSSING, CUSP, EtaleWord, Projection, WordError

SIGN, RHO = "sign", "rho"
PLAIN, MARKED, FRONT_FLAVOR = "plain", "marked", "front"
FLAVORS = (PLAIN, MARKED, FRONT_FLAVOR)

_CROSSING_NAMES = "XYZWVUTSRQPONMLJIHGFEDCBA"  # no K: reserved for cusps


@dataclass(frozen=True)
class Role:
    id: str
    kind: str
    dim: int = 1


@dataclass(frozen=True)
class Pattern:
    roles: tuple[Role, ...]
    sequence: tuple[str, ...]

    def __post_init__(self):
        ids = [r.id for r in self.roles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate role ids")
        counts = Counter(self.sequence)
        for r in self.roles:
            if r.dim not in (1, 2):
                raise ValueError(f"role {r.id}: dimension must be 1 or 2")
            want = 1 if r.kind == CUSP else 2
            if counts.get(r.id, 0) != want:
                raise ValueError(f"role {r.id} occurs {counts.get(r.id, 0)} times, expected {want}")
        if set(counts) - set(ids):
            raise ValueError("sequence uses undeclared roles")

    @property
    def role_map(self) -> dict[str, Role]:
        return {r.id: r for r in self.roles}

    @property
    def degree(self) -> int:
        return sum(r.dim for r in self.roles)

    def ordered_roles(self) -> tuple[Role, ...]:
        rm = self.role_map
        return tuple(rm[i] for i in dict.fromkeys(self.sequence))

    @property
    def key(self) -> tuple:
        """Isomorphism-class key: per position (kind, dim, rank of first occurrence)."""
        rank = {rid: k for k, rid in enumerate(dict.fromkeys(self.sequence))}
        rm = self.role_map
        return tuple((rm[i].kind, rm[i].dim, rank[i]) for i in self.sequence)

    def isomorphic(self, other: "Pattern") -> bool:
        return self.key == other.key

    def rotate(self) -> tuple[int, "Pattern"]:
        """Move the first occurrence to the end; returns (sign, pattern)."""
        head = self.role_map[self.sequence[0]]
        sign = -1 if head.kind == CROSSING and head.dim == 1 else 1
        return sign, Pattern(self.roles, self.sequence[1:] + self.sequence[:1])

    def canonical(self) -> "Pattern":
        names = iter(_CROSSING_NAMES)
        cusp_no = itertools.count(1)
        rename = {}
        for r in self.ordered_roles():
            rename[r.id] = f"K{next(cusp_no)}" if r.kind == CUSP else next(names)
        roles = tuple(Role(rename[r.id], r.kind, r.dim) for r in self.ordered_roles())
        return Pattern(roles, tuple(rename[i] for i in self.sequence))

    def __str__(self) -> str:
        c = self.canonical()
        rm = c.role_map
        out = []
        for i in c.sequence:
            r = rm[i]
            out.append(("K" if r.kind == CUSP else r.id) + ("." if r.dim == 2 else ""))
        return "".join(out)

    def __repr__(self) -> str:
        return f"Pattern({self})"


_PATTERN_TOKEN = re.compile(r"([A-Z])(\d*)(\.?)")


def parse_pattern(text: str) -> Pattern:
    """Parse a literal such as ``XYXYZZ``, ``X.X.YY``, ``XKXYY`` or ``K.K``.

    Capital letters are crossing roles (two occurrences), ``K`` or ``K<n>``
    are cusp roles (one occurrence; each bare ``K`` is a new cusp), and a
    trailing ``.`` marks a dimension-2 role.
    """
    text = text.strip()
    pos = 0
    seq: list[str] = []
    kinds: dict[str, str] = {}
    dims: dict[str, set] = {}
    bare_cusps = itertools.count(1)
    while pos < len(text):
        m = _PATTERN_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad pattern literal {text!r} at offset {pos}")
        pos = m.end()
        letter, num, dot = m.groups()
        if letter == "K":
            rid = f"K{num}" if num else f"K#{next(bare_cusps)}"
            if rid in kinds:
                raise ValueError(f"cusp role {rid} occurs twice in {text!r}")
            kind = CUSP
        else:
            rid = letter + num
            kind = CROSSING
        kinds[rid] = kind
        dims.setdefault(rid, set()).add(2 if dot else 1)
        seq.append(rid)
    if not seq:
        raise ValueError("empty pattern literal")
    roles = []
    for rid in dict.fromkeys(seq):
        if len(dims[rid]) > 1:
            raise ValueError(f"role {rid} is dotted on only some occurrences in {text!r}")
        roles.append(Role(rid, kinds[rid], dims[rid].pop()))
    return Pattern(tuple(roles), tuple(seq))


# -- matching ----------------------------------------------------------------

@dataclass(frozen=True)
class Match:
    assignment: tuple[tuple[str, str], ...]  # (role id, letter name)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


def _restriction_key(seq: Sequence[str], kind_of, dim_of=lambda _: 1) -> tuple:
    rank = {x: k for k, x in enumerate(dict.fromkeys(seq))}
    return tuple((kind_of(x), dim_of(x), rank[x]) for x in seq)


def find_matches(v: Pattern, w: EtaleWord) -> list[Match]:
    """All subwords of ``w`` isomorphic to ``v`` (ignoring dimensions).

    Straightforward enumeration over letter subsets; used directly for small
    inputs and as the reference for the histogram route.
    """
    ordered = v.ordered_roles()
    target = tuple(k[:1] + k[2:] for k in v.key)
    n_cross = sum(1 for r in ordered if r.kind == CROSSING)
    n_cusp = len(ordered) - n_cross
    if n_cross > len(w.crossings) or n_cusp > len(w.cusps):
        return []
    out = []
    for combo in itertools.combinations(w.ordered_letters, len(ordered)):
        chosen = set(combo)
        sub = [x for x in w.occurrences if x in chosen]
        key = tuple(k[:1] + k[2:] for k in _restriction_key(sub, w.kind))
        if key == target:
            firsts = list(dict.fromkeys(sub))
            out.append(Match(tuple((r.id, x) for r, x in zip(ordered, firsts))))
    out.sort(key=lambda m: sorted(p for _, x in m.assignment for p in w.positions[x]))
    return out


def ring_image(p: Projection) -> RingElem:
    """a_e -> a_e and b_e -> -a_e in Q[a+, a-]."""
    if not p.is_front:
        raise WordError("the ring map is only defined on the front alphabet")
    mono = RingElem.monomial(1, 0) if p.epsilon > 0 else RingElem.monomial(0, 1)
    return mono if p.letter == "a" else -mono


def _weight(projs: Sequence[Projection], dims: Sequence[int], mode: str):
    if mode == SIGN:
        s = 1
        for p, d in zip(projs, dims):
            if d == 1:
                s *= p.sign
        return s
    out = ONE
    for p, d in zip(projs, dims):
        out = out * ring_image(p) ** d
    return out


# Pairwise relation of letters i, j with first(i) < first(j).
_XXYY, _XYYX, _XYXY, _XKX, _XXK, _KXX, _KK = range(7)


def _relation(pi: tuple[int, ...], pj: tuple[int, ...]) -> int:
    if len(pi) == 2 and len(pj) == 2:
        if pi[1] < pj[0]:
            return _XXYY
        return _XYYX if pj[1] < pi[1] else _XYXY
    if len(pi) == 2:
        return _XKX if pj[0] < pi[1] else _XXK
    if len(pj) == 2:
        return _KXX
    return _KK


def _shape(kinds: Sequence[str], positions: Sequence[tuple[int, ...]]) -> tuple:
    m = len(positions)
    return tuple(kinds) + tuple(_relation(positions[a], positions[b])
                                for a in range(m) for b in range(a + 1, m))


def _pattern_shape(v: Pattern) -> tuple[tuple, tuple[int, ...]]:
    """(shape, role dimensions in first-occurrence order), cached on ``v``."""
    try:
        return v.__dict__["_shape"]
    except KeyError:
        pass
    ordered = v.ordered_roles()
    pos: dict[str, list[int]] = {}
    for k, rid in enumerate(v.sequence):
        pos.setdefault(rid, []).append(k)
    info = (_shape([r.kind for r in ordered], [tuple(pos[r.id]) for r in ordered]),
            tuple(r.dim for r in ordered))
    v.__dict__["_shape"] = info
    return info


@lru_cache(maxsize=8192)
def _histogram(w: EtaleWord, m: int) -> dict[tuple, Counter]:
    """shape -> Counter of projection tuples, over all m-letter combinations."""
    letters = w.ordered_letters
    kinds = [w.kind(x) for x in letters]
    projs = [w.projection(x) for x in letters]
    pos = [w.positions[x] for x in letters]
    n = len(letters)
    rel = [[_relation(pos[a], pos[b]) if a < b else None for b in range(n)] for a in range(n)]
    hist: dict[tuple, Counter] = {}
    for combo in itertools.combinations(range(n), m):
        rels = tuple(rel[a][b] for ai, a in enumerate(combo) for b in combo[ai + 1:])
        shape = tuple(kinds[a] for a in combo) + rels
        bucket = hist.get(shape)
        if bucket is None:
            bucket = hist[shape] = Counter()
        bucket[tuple(projs[a] for a in combo)] += 1
    return hist


def pattern_pairing(v: Pattern, w: EtaleWord, mode: str = SIGN):
    """<v, w> for a single pattern: an int in sign mode, a RingElem in rho mode."""
    if mode not in (SIGN, RHO):
        raise ValueError(f"unknown pairing mode {mode!r}")
    if mode == RHO and not w.is_front:
        raise WordError("rho mode is defined for fronts only")
    m = len(v.roles)
    shape, dims = _pattern_shape(v)
    total = 0 if mode == SIGN else RingElem()
    for projs, count in _histogram(w, m).get(shape, {}).items():
        total = total + _weight(projs, dims, mode) * count
    return total


def pattern_pairing_bruteforce(v: Pattern, w: EtaleWord, mode: str = SIGN):
    """Reference route through :func:`find_matches`."""
    if mode == RHO and not w.is_front:
        raise WordError("rho mode is defined for fronts only")
    rm = v.role_map
    total = 0 if mode == SIGN else RingElem()
    for match in find_matches(v, w):
        roles = [rm[r] for r, _ in match.assignment]
        projs = [w.projection(x) for _, x in match.assignment]
        total = total + _weight(projs, [r.dim for r in roles], mode)
    return total


def angle_bracket(terms: Iterable[tuple[object, Pattern]], w: EtaleWord, mode: str = SIGN) -> ParamExpr:
    """Sum of coeff * <v, w> over (coeff, pattern) terms; coeffs may be
    numbers, parameter names or ParamExprs."""
    out = ParamExpr()
    for coeff, v in terms:
        val = pattern_pairing(v, w, mode)
        if val:
            out = out + ParamExpr.coerce(coeff).scale(val)
    return out


# -- cyclic classes ------------------------------------------------------------

@dataclass(frozen=True)
class CyclicClass:
    flavor: str
    terms: tuple[tuple[int, Pattern], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        s = "".join(f"{'+' if c > 0 else '-'}{v}" for c, v in self.terms)
        return s[1:] if s.startswith("+") else s


def _check_flavor(v: Pattern, flavor: str):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown class flavor {flavor!r}")
    has_cusp = any(r.kind == CUSP for r in v.roles)
    has_dot = any(r.dim == 2 for r in v.roles)
    if has_cusp and flavor != FRONT_FLAVOR:
        raise ValueError("patterns with cusp roles need the front flavor")
    if has_dot and flavor == PLAIN:
        raise ValueError("dotted roles need the marked or front flavor")


def cyclic_class(v: Pattern, flavor: str = PLAIN) -> CyclicClass:
    """Orbit of ``v`` under rotation with sign bookkeeping.

    If the orbit comes back to a pattern isomorphic to ``v`` with sign -1
    the class is zero.
    """
    _check_flavor(v, flavor)
    terms: list[tuple[int, Pattern]] = []
    sign, cur = 1, v
    start = v.key
    for _ in range(len(v.sequence)):
        terms.append((sign, cur.canonical()))
        s, cur = cur.rotate()
        sign *= s
        if cur.key == start:
            break
    if sign == -1:
        return CyclicClass(flavor, ())
    return CyclicClass(flavor, tuple(terms))


def square_bracket(c: CyclicClass, w: EtaleWord, mode: str = SIGN) -> ParamExpr:
    return angle_bracket(c.terms, w, mode)


def class_terms(coeff, c: CyclicClass) -> list[tuple[ParamExpr, Pattern]]:
    """Expand ``coeff * [v]`` into (coefficient, pattern) terms."""
    coeff = ParamExpr.coerce(coeff)
    return [(coeff.scale(s), v) for s, v in c.terms]


def enumerate_patterns(n: int) -> list[Pattern]:
    """All Gauss patterns with n one-dimensional crossing roles, up to
    isomorphism; there are (2n-1)!! of them."""
    if n < 0 or n > 4:
        raise ValueError("enumeration is supported for 0 <= n <= 4")

    def matchings(points):
        if not points:
            yield []
            return
        a, rest = points[0], points[1:]
        for k, b in enumerate(rest):
            for m in matchings(rest[:k] + rest[k + 1:]):
                yield [(a, b)] + m

    out = []
    for m in matchings(list(range(2 * n))):
        seq = [None] * (2 * n)
        for k, (a, b) in enumerate(m):
            seq[a] = seq[b] = _CROSSING_NAMES[k]
        roles = tuple(Role(_CROSSING_NAMES[k], CROSSING) for k in range(n))
        out.append(Pattern(roles, tuple(seq)).canonical())
    return out
