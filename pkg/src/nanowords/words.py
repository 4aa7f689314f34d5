"""Etale words over the smooth alphabet {-1, 1} and the front alphabet
{a+, a-, b+, b-}, plus the Gauss-code text format and base curves.

A word is an immutable value.  Letters are named by arbitrary identifiers;
:meth:`EtaleWord.canonical` renames them ``A, B, C, ...`` in order of first
occurrence, which is also the naming used by :func:`serialize_word`.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

CLOSED, LONG, FRONT = "closed", "long", "front"
CURVE_CLASSES = (CLOSED, LONG, FRONT)
CROSSING, CUSP = "crossing", "cusp"


class WordError(ValueError):
    """A word violates the (fake) Gauss condition or its class rules."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class Projection(enum.Enum):
    MINUS = "-"
    PLUS = "+"
    A_PLUS = "a+"
    A_MINUS = "a-"
    B_PLUS = "b+"
    B_MINUS = "b-"

    @property
    def code(self) -> str:
        return self.value

    @property
    def is_front(self) -> bool:
        return self not in (Projection.MINUS, Projection.PLUS)

    @property
    def sign(self) -> int:
        return -1 if self in (Projection.MINUS, Projection.A_PLUS, Projection.A_MINUS) else 1

    @property
    def epsilon(self) -> int:
        """Subscript of a front projection (+1 for a+/b+); 0 on the smooth alphabet."""
        if self in (Projection.A_PLUS, Projection.B_PLUS):
            return 1
        if self in (Projection.A_MINUS, Projection.B_MINUS):
            return -1
        return 0

    @property
    def letter(self) -> str:
        """'a' or 'b' for front projections, '' otherwise."""
        return self.value[0] if self.is_front else ""

    @classmethod
    def from_code(cls, code: str) -> "Projection":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown projection code {code!r}") from None

    @classmethod
    def front(cls, letter: str, epsilon: int) -> "Projection":
        return cls(f"{letter}{'+' if epsilon > 0 else '-'}")


SMOOTH_ALPHABET = (Projection.MINUS, Projection.PLUS)
FRONT_ALPHABET = (Projection.A_PLUS, Projection.A_MINUS, Projection.B_PLUS, Projection.B_MINUS)

_TAU = {Projection.MINUS: Projection.PLUS, Projection.PLUS: Projection.MINUS}
_TAU1 = {
    Projection.A_PLUS: Projection.B_PLUS,
    Projection.B_PLUS: Projection.A_PLUS,
    Projection.A_MINUS: Projection.B_MINUS,
    Projection.B_MINUS: Projection.A_MINUS,
}
_TAU2 = {
    Projection.A_PLUS: Projection.B_MINUS,
    Projection.B_MINUS: Projection.A_PLUS,
    Projection.A_MINUS: Projection.B_PLUS,
    Projection.B_PLUS: Projection.A_MINUS,
}
INVOLUTIONS = {"tau": _TAU, "tau1": _TAU1, "tau2": _TAU2}


def tau(p: Projection) -> Projection:
    return _TAU[p]


def tau1(p: Projection) -> Projection:
    return _TAU1[p]


def tau2(p: Projection) -> Projection:
    return _TAU2[p]


def flip(p: Projection) -> Projection:
    """The base-point involution of the projection's alphabet (tau or tau1)."""
    return _TAU1[p] if p.is_front else _TAU[p]


@dataclass(frozen=True)
class LetterDecl:
    name: str
    kind: str
    projection: Projection

    def __post_init__(self):
        if self.kind not in (CROSSING, CUSP):
            raise WordError(f"unknown letter kind {self.kind!r}")


def letter_names() -> Iterable[str]:
    """A, B, ..., Z, AA, AB, ... (bijective base 26)."""
    k = 1
    while True:
        n, s = k, ""
        while n:
            n, r = divmod(n - 1, 26)
            s = chr(65 + r) + s
        yield s
        k += 1


@dataclass(frozen=True)
class EtaleWord:
    """A pointed curve encoded as a (fake) nanoword.

    ``occurrences`` lists letter names along the curve; crossing letters occur
    twice, cusp letters once.  ``index`` is required for closed curves and
    fronts and must be absent for long curves (their index is Σ sign).
    """

    curve_class: str
    letters: tuple[LetterDecl, ...]
    occurrences: tuple[str, ...]
    index_meta: int | None = None
    _decl: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "occurrences", tuple(self.occurrences))
        object.__setattr__(self, "_decl", {d.name: d for d in self.letters})
        self._validate()

    def _validate(self):
        if self.curve_class not in CURVE_CLASSES:
            raise WordError(f"unknown curve class {self.curve_class!r}")
        if len(self._decl) != len(self.letters):
            raise WordError("duplicate letter names in alphabet")
        if self.curve_class == LONG:
            if self.index_meta is not None:
                raise WordError("long words compute their index; index_meta must be absent")
        elif self.index_meta is None:
            raise WordError(f"{self.curve_class} words require an index")
        front = self.curve_class == FRONT
        counts = dict.fromkeys(self._decl, 0)
        for name in self.occurrences:
            if name not in counts:
                raise WordError(f"letter {name!r} is not declared")
            counts[name] += 1
        for d in self.letters:
            if d.projection.is_front != front:
                raise WordError(f"letter {d.name!r}: projection {d.projection.code} not allowed in a {self.curve_class} word")
            if d.kind == CUSP and not front:
                raise WordError(f"cusp letter {d.name!r} in a non-front word")
            want = 1 if d.kind == CUSP else 2
            if counts[d.name] != want:
                raise WordError(f"letter {d.name!r} occurs {counts[d.name]} times, expected {want}")
        if front and sum(1 for d in self.letters if d.kind == CUSP) % 2:
            raise WordError("a front has an even number of cusps")

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.curve_class, self.letters, self.occurrences, self.index_meta))
            self.__dict__["_hash"] = h
            return h

    # -- accessors ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.occurrences)

    def decl(self, name: str) -> LetterDecl:
        return self._decl[name]

    def projection(self, name: str) -> Projection:
        return self._decl[name].projection

    def kind(self, name: str) -> str:
        return self._decl[name].kind

    @cached_property
    def positions(self) -> dict[str, tuple[int, ...]]:
        pos: dict[str, list[int]] = {}
        for i, name in enumerate(self.occurrences):
            pos.setdefault(name, []).append(i)
        return {k: tuple(v) for k, v in pos.items()}

    @cached_property
    def ordered_letters(self) -> tuple[str, ...]:
        """Letter names sorted by first occurrence."""
        seen: dict[str, None] = {}
        for name in self.occurrences:
            seen.setdefault(name, None)
        return tuple(seen)

    @property
    def crossings(self) -> tuple[str, ...]:
        return tuple(n for n in self.ordered_letters if self._decl[n].kind == CROSSING)

    @property
    def cusps(self) -> tuple[str, ...]:
        return tuple(n for n in self.ordered_letters if self._decl[n].kind == CUSP)

    @property
    def is_front(self) -> bool:
        return self.curve_class == FRONT

    @property
    def index(self) -> int:
        if self.curve_class == LONG:
            return sum(d.projection.sign for d in self.letters)
        return self.index_meta

    # -- construction helpers ---------------------------------------------

    @classmethod
    def build(cls, curve_class: str, tokens: Sequence[tuple[str, Projection] | str],
              index: int | None = None, cusps: Iterable[str] = ()) -> "EtaleWord":
        """Build from a token list; ``(name, projection)`` declares a letter,
        a bare name repeats one.  Names in ``cusps`` are cusp letters."""
        cusps = set(cusps)
        decls: dict[str, LetterDecl] = {}
        occ = []
        for tok in tokens:
            if isinstance(tok, str):
                name = tok
                if name not in decls:
                    raise WordError(f"letter {name!r} used before its projection is given")
            else:
                name, proj = tok
                if name in decls and decls[name].projection != proj:
                    raise WordError(f"inconsistent projections for {name!r}")
                decls.setdefault(name, LetterDecl(name, CUSP if name in cusps else CROSSING, proj))
            occ.append(name)
        return cls(curve_class, tuple(decls.values()), tuple(occ), index)

    def replace(self, occurrences: Sequence[str], projections: dict[str, Projection] | None = None,
                new_letters: Iterable[LetterDecl] = (), index_meta: int | None | str = "keep") -> "EtaleWord":
        """Return a word with new occurrence order, optionally changed
        projections and extra letters; unused letters are dropped."""
        projections = projections or {}
        used = set(occurrences)
        decls = [LetterDecl(d.name, d.kind, projections.get(d.name, d.projection))
                 for d in self.letters if d.name in used]
        decls.extend(new_letters)
        idx = self.index_meta if index_meta == "keep" else index_meta
        return EtaleWord(self.curve_class, tuple(decls), tuple(occurrences), idx)

    def fresh_names(self, count: int) -> list[str]:
        out = []
        taken = set(self._decl)
        for name in letter_names():
            if name not in taken:
                out.append(name)
                if len(out) == count:
                    return out

    def canonical(self) -> "EtaleWord":
        rename = dict(zip(self.ordered_letters, letter_names()))
        decls = tuple(LetterDecl(rename[n], self._decl[n].kind, self._decl[n].projection)
                      for n in self.ordered_letters)
        return EtaleWord(self.curve_class, decls, tuple(rename[n] for n in self.occurrences), self.index_meta)

    @cached_property
    def key(self) -> tuple:
        """Hashable isomorphism-class key."""
        c = self.canonical()
        return (c.curve_class, c.index_meta, c.occurrences,
                tuple((d.kind, d.projection.code) for d in c.letters))

    def isomorphic(self, other: "EtaleWord") -> bool:
        return self.key == other.key

    def __str__(self) -> str:
        return serialize_word(self).replace("\n", "; ")


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"(\^)?([A-Za-z_][A-Za-z0-9_]*)(?::([ab]?[+-]))?$")


def parse_word(text: str) -> EtaleWord:
    """Parse a Gauss-code document (see README for the format)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, raw, body))
    if not lines:
        raise ParseError("empty document", 1)

    lineno, raw, body = lines[0]
    head = body.split()
    if head[0] != "class" or len(head) != 2 or head[1] not in CURVE_CLASSES:
        raise ParseError("expected 'class closed|long|front'", lineno, raw.find(head[0]) + 1)
    curve_class = head[1]
    rest = lines[1:]

    index = None
    if rest and rest[0][2].split()[0] == "index":
        lineno, raw, body = rest[0]
        parts = body.split()
        if curve_class == LONG:
            raise ParseError("long words must not carry an index header", lineno)
        if len(parts) != 2 or not re.fullmatch(r"[+-]?\d+", parts[1]):
            raise ParseError("expected 'index <integer>'", lineno, raw.find("index") + 1)
        index = int(parts[1])
        rest = rest[1:]
    elif curve_class != LONG:
        line = rest[0][0] if rest else lines[0][0] + 1
        raise ParseError(f"{curve_class} words require an 'index' line", line)

    if len(rest) != 1 or rest[0][2].split()[0] != "word":
        line = rest[1][0] if len(rest) > 1 else (rest[0][0] if rest else lines[-1][0] + 1)
        raise ParseError("expected a single final 'word' line", line)
    lineno, raw, body = rest[0]

    front = curve_class == FRONT
    decls: dict[str, LetterDecl] = {}
    occ: list[str] = []
    for m in list(re.finditer(r"\S+", body))[1:]:
        tok, col = m.group(), m.start() + 1
        tm = _TOKEN.match(tok)
        if not tm:
            raise ParseError(f"malformed token {tok!r}", lineno, col)
        caret, name, code = tm.groups()
        kind = CUSP if caret else CROSSING
        if code is not None:
            if front != (len(code) == 2):
                raise ParseError(f"projection {code!r} not allowed in a {curve_class} word", lineno, col)
            proj = Projection.from_code(code)
        if name in decls:
            d = decls[name]
            if d.kind != kind:
                raise ParseError(f"letter {name!r} used both as cusp and crossing", lineno, col)
            if code is not None and proj != d.projection:
                raise ParseError(f"inconsistent projection for {name!r}", lineno, col)
        else:
            if code is None:
                raise ParseError(f"first occurrence of {name!r} needs a projection code", lineno, col)
            if kind == CUSP and not front:
                raise ParseError(f"cusp {name!r} in a {curve_class} word", lineno, col)
            decls[name] = LetterDecl(name, kind, proj)
        occ.append(name)
    try:
        return EtaleWord(curve_class, tuple(decls.values()), tuple(occ), index)
    except WordError as e:
        raise ParseError(str(e), lineno) from None


def serialize_word(w: EtaleWord) -> str:
    c = w.canonical()
    out = [f"class {c.curve_class}"]
    if c.curve_class != LONG:
        out.append(f"index {c.index_meta}")
    seen = set()
    toks = []
    for name in c.occurrences:
        d = c.decl(name)
        prefix = "^" if d.kind == CUSP else ""
        if name in seen:
            toks.append(name)
        else:
            seen.add(name)
            toks.append(f"{prefix}{name}:{d.projection.code}")
    out.append(" ".join(["word"] + toks))
    return "\n".join(out)


# -- elementary symmetries ---------------------------------------------------

def base_point_move(w: EtaleWord) -> EtaleWord:
    """Slide the base point past the first letter.

    ``AxAy -> xAyA`` with the crossing's projection flipped by tau (tau1 for
    fronts); a leading cusp simply moves to the end.
    """
    if w.curve_class == LONG:
        raise WordError("long curves have no movable base point")
    if not w.occurrences:
        raise WordError("cannot move the base point of an empty word")
    first = w.occurrences[0]
    if w.kind(first) == CUSP:
        return w.replace(w.occurrences[1:] + (first,))
    j = w.positions[first][1]
    occ = w.occurrences
    new = occ[1:j] + (first,) + occ[j + 1:] + (first,)
    return w.replace(new, {first: flip(w.projection(first))})


def _negated_index(w: EtaleWord):
    return "keep" if w.curve_class == LONG else -w.index_meta


def reverse_orientation(w: EtaleWord) -> EtaleWord:
    """Reverse the traversal and apply tau to every projection."""
    if w.is_front:
        raise WordError("orientation reversal of fronts is not defined")
    proj = {d.name: tau(d.projection) for d in w.letters}
    return w.replace(w.occurrences[::-1], proj, index_meta=_negated_index(w))


def reflect(w: EtaleWord) -> EtaleWord:
    """Mirror image: same order, every projection flipped by tau."""
    if w.is_front:
        raise WordError("reflection of fronts is not defined")
    proj = {d.name: tau(d.projection) for d in w.letters}
    return w.replace(w.occurrences, proj, index_meta=_negated_index(w))


# -- base curves -------------------------------------------------------------

def _take(it, n):
    return list(itertools.islice(it, n))


def _kinks(count: int, proj: Projection) -> list:
    toks = []
    for name in _take(letter_names(), count):
        toks += [(name, proj), name]
    return toks


def base_curve(family: str, index: int, cusps: int | None = None) -> EtaleWord:
    """Base curves K_i (closed), L_i (long) and base fronts K_{i,k}.

    K_0 is the figure eight, K_1 the embedded circle and K_{i+1} a circle
    with i kinks.  L_i has |i| kinks of sign sgn(i).  K_{i,k} is K_i drawn
    as a front (all crossings a+) followed by 2k cusps alternating a+, b+.
    """
    family = family.upper()
    if family == "K":
        if index < 0:
            raise WordError("K_i needs i >= 0")
        if index == 0:
            return EtaleWord.build(CLOSED, [("A", Projection.PLUS), "A"], 0)
        return EtaleWord.build(CLOSED, _kinks(index - 1, Projection.PLUS), index)
    if family == "L":
        proj = Projection.PLUS if index > 0 else Projection.MINUS
        return EtaleWord.build(LONG, _kinks(abs(index), proj))
    if family == "KF":
        k = 0 if cusps is None else cusps
        if k < 0:
            raise WordError("number of cusp pairs must be nonnegative")
        if index < 0:
            raise WordError("K_{i,k} needs i >= 0")
        toks = _kinks(1 if index == 0 else index - 1, Projection.A_PLUS)
        names = _take(letter_names(), len(toks) // 2 + 2 * k)[len(toks) // 2:]
        for j, name in enumerate(names):
            toks.append((name, Projection.A_PLUS if j % 2 == 0 else Projection.B_PLUS))
        return EtaleWord.build(FRONT, toks, index, cusps=names)
    raise WordError(f"unknown base family {family!r}")
