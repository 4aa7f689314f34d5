"""Elementary moves on words, their expected effect on J+, J-, St, and a
seeded random walk that stays among realizable words.

Smooth words (closed and long) have the moves II+, II-, III.  Fronts have
SII+-, DII+-, III, PI+-, LAMBDA.  A site records everything needed to apply
one move; creation sites are gap pairs plus a projection choice, deletion
and III sites name the letters involved.

Front conventions (not visible in the plain word rewriting):

* the subscript of a crossing is fixed by the parity of the cusps between
  its two occurrences, eps = (-1)^(cusps inside), so whether an AB..AB or
  AB..BA pair is a safe or a dangerous tangency is decided by the word;
* in a cusp crossing the new crossing on the cusp's branch has sign equal
  to the cusp's sign when that branch comes first, and opposite otherwise;
  both AKB..BA shapes need sign|K| = -sign|A|;
* in LAMBDA the new kink has subscript + and sign opposite to the cusps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .genus import genus
from .words import (CLOSED, CROSSING, CUSP, FRONT, LONG, EtaleWord, LetterDecl, Projection,
                    WordError, tau, tau1, tau2)

SMOOTH_KINDS = ("II+", "II-", "III")
FRONT_KINDS = ("SII+", "SII-", "DII+", "DII-", "III", "PI+", "PI-", "LAMBDA")
POSITIVE, NEGATIVE = 1, -1
CREATE, DELETE, REWRITE = "create", "delete", "rewrite"

# front tangency moves: (shape, subscript, what the positive direction does)
_FRONT_II = {
    "DII+": ("ABAB", 1, CREATE),
    "SII+": ("ABAB", -1, DELETE),
    "SII-": ("ABBA", 1, CREATE),
    "DII-": ("ABBA", -1, DELETE),
}
_SMOOTH_II = {"II+": "ABAB", "II-": "ABBA"}

# Positive PI- is taken to be the creation of AKB..BA / AB..BKA; see README.
PI_MINUS_POSITIVE = CREATE


class StaleSiteError(WordError):
    """The site does not describe an applicable move on this word."""


@dataclass(frozen=True)
class MoveSite:
    kind: str
    direction: int
    positions: tuple[int, ...] = ()  # creation gaps, or a cusp position
    letters: tuple[str, ...] = ()  # letters consumed by deletion / III
    projection: Projection | None = None  # of created A (or K1 for LAMBDA)
    variant: int = 0  # which displayed shape of PI moves

    @property
    def action(self) -> str:
        return _action(self.kind, self.direction)

    def describe(self) -> str:
        d = "+" if self.direction > 0 else "-"
        bits = [f"{self.kind} dir {d}", self.action]
        if self.positions:
            bits.append("at " + ",".join(map(str, self.positions)))
        if self.letters:
            bits.append("letters " + "".join(self.letters))
        if self.projection is not None:
            bits.append(f"proj {self.projection.code}")
        if self.variant:
            bits.append(f"variant {self.variant}")
        return " ".join(bits)


def kinds_for(curve_class: str) -> tuple[str, ...]:
    return FRONT_KINDS if curve_class == FRONT else SMOOTH_KINDS


def _action(kind: str, direction: int) -> str:
    if kind == "III":
        return REWRITE
    if kind in _FRONT_II:
        pos = _FRONT_II[kind][2]
    elif kind == "PI-":
        pos = PI_MINUS_POSITIVE
    else:
        pos = CREATE
    if direction > 0:
        return pos
    return DELETE if pos == CREATE else CREATE


def _check_kind(w: EtaleWord, kind: str):
    if kind not in kinds_for(w.curve_class):
        raise WordError(f"move {kind} does not apply to {w.curve_class} words")


@lru_cache(maxsize=4096)
def _cusp_prefix(w: EtaleWord) -> tuple[int, ...]:
    out = [0]
    for x in w.occurrences:
        out.append(out[-1] + (w.kind(x) == CUSP))
    return tuple(out)


def _cusps_between(w: EtaleWord, lo: int, hi: int) -> int:
    if not w.is_front:
        return 0
    pre = _cusp_prefix(w)
    return pre[hi] - pre[lo]


def _parity(n: int) -> int:
    return -1 if n % 2 else 1


def _gaps(w: EtaleWord):
    L = len(w)
    for g1 in range(L + 1):
        for g2 in range(g1, L + 1):
            yield g1, g2


# -- site enumeration --------------------------------------------------------

def _two_options(w, kind, g1, g2) -> list[Projection]:
    """Allowed projections of A for a tangency created at gaps g1 <= g2."""
    if not w.is_front:
        return [Projection.PLUS, Projection.MINUS]
    eps = _parity(_cusps_between(w, g1, g2))
    if eps != _FRONT_II[kind][1]:
        return []
    return [Projection.front(l, eps) for l in "ab"]


def _two_creations(w, kind, direction, shape):
    return [MoveSite(kind, direction, (g1, g2), projection=p)
            for g1, g2 in _gaps(w) for p in _two_options(w, kind, g1, g2)]


def _pair_ok(w, a, b) -> bool:
    pa, pb = w.projection(a), w.projection(b)
    return (tau1(pa) == pb) if w.is_front else (tau(pa) == pb)


def _two_deletions(w, kind, direction, shape):
    out = []
    occ = w.occurrences
    for p in range(len(occ) - 1):
        a, b = occ[p], occ[p + 1]
        if a == b or w.kind(a) != CROSSING or w.kind(b) != CROSSING:
            continue
        pa, pb = w.positions[a], w.positions[b]
        if pa[0] != p or pb[0] != p + 1:
            continue
        q = pa[1]
        if shape == "ABAB":
            ok = pb[1] == q + 1
        else:
            ok = pb[1] == q - 1 and q - 1 > p + 1
        if not ok or not _pair_ok(w, a, b):
            continue
        if w.is_front:
            inner = _cusps_between(w, p + 2, min(pb[1], q))
            if _parity(inner) != _FRONT_II[kind][1] or w.projection(a).epsilon != _FRONT_II[kind][1]:
                continue
        out.append(MoveSite(kind, direction, letters=(a, b)))
    return out


def _iii_sites(w, kind, direction):
    """Triples with AB..AC..BC (positive) or BA..CA..CB (negative) adjacent."""
    out = []
    occ = w.occurrences
    n = len(occ)
    for p in range(n - 1):
        u, v = occ[p], occ[p + 1]
        if u == v or w.kind(u) != CROSSING or w.kind(v) != CROSSING:
            continue
        if w.positions[u][0] != p or w.positions[v][0] != p + 1:
            continue
        # positive: A=u, B=v; then A C at q, B C at r
        # negative: B=u, A=v; then C A at q, C B at r
        if direction > 0:
            A, B = u, v
            q = w.positions[A][1]
            if q + 1 >= n:
                continue
            C = occ[q + 1]
            if w.kind(C) != CROSSING or w.positions[C][0] != q + 1:
                continue
            r = w.positions[B][1]
            if not (r > q + 1 and r + 1 < n and occ[r + 1] == C):
                continue
        else:
            B, A = u, v
            q = w.positions[A][1]
            if q == 0:
                continue
            C = occ[q - 1]
            if w.kind(C) != CROSSING or w.positions[C][0] != q - 1 or q - 1 <= p + 1:
                continue
            r = w.positions[B][1]
            if not (r - 1 > q and occ[r - 1] == C):
                continue
        projs = [w.projection(x) for x in (A, B, C)]
        if w.is_front:
            ok = len({p_.letter for p_ in projs}) == 1
        else:
            ok = len({p_.sign for p_ in projs}) == 1
        if ok:
            out.append(MoveSite(kind, direction, letters=(A, B, C)))
    return out


def _pi_required_sign(kind: str, variant: int, cusp_sign: int) -> int:
    """Sign of the created letter A in a cusp crossing."""
    if kind == "PI+" and variant == 1:
        return cusp_sign
    return -cusp_sign


def _pi_layout(kind: str, variant: int):
    """Occurrence template around the cusp; 'K' marks the cusp, 'y' the gap."""
    if kind == "PI+":
        return ("A", "K", "B", "y", "A", "B") if variant == 1 else ("A", "B", "y", "A", "K", "B")
    return ("A", "K", "B", "y", "B", "A") if variant == 1 else ("A", "B", "y", "B", "K", "A")


def _pi_eps_a(kind: str, variant: int, inner_cusps: int) -> int:
    """Subscript of A given the cusps strictly inside the y segment."""
    layout = _pi_layout(kind, variant)
    first = layout.index("A")
    second = layout.index("A", first + 1)
    inside = list(layout[first + 1:second])
    count = inside.count("K") + (inner_cusps if "y" in inside else 0)
    return _parity(count)


def _pi_site(w, kind, direction, k, gap, variant) -> MoveSite:
    """The cusp-crossing creation at cusp position k and the other gap."""
    lo, hi = (k + 1, gap) if variant == 1 else (gap, k)
    eps = _pi_eps_a(kind, variant, _cusps_between(w, lo, hi))
    sign = _pi_required_sign(kind, variant, w.projection(w.occurrences[k]).sign)
    proj = Projection.front("a" if sign < 0 else "b", eps)
    return MoveSite(kind, direction, (k, gap), projection=proj, variant=variant)


def _pi_gaps(L: int, k: int, variant: int) -> range:
    return range(k + 1, L + 1) if variant == 1 else range(0, k + 1)


def _pi_creations(w, kind, direction):
    out = []
    for k, name in enumerate(w.occurrences):
        if w.kind(name) == CUSP:
            for variant in (1, 2):
                out += [_pi_site(w, kind, direction, k, g, variant)
                        for g in _pi_gaps(len(w), k, variant)]
    return out


def _match_template(w, template, start):
    """Bind template symbols to letters reading w from ``start``; returns dict or None."""
    occ = w.occurrences
    if start + len(template) > len(occ):
        return None
    env = {}
    for sym, name in zip(template, occ[start:start + len(template)]):
        if sym in env and env[sym] != name:
            return None
        if sym not in env and name in env.values():
            return None
        env[sym] = name
    return env


def _pi_deletions(w, kind, direction):
    out = []
    for variant in (1, 2):
        layout = _pi_layout(kind, variant)
        y = layout.index("y")
        head, tail = layout[:y], layout[y + 1:]
        for p in range(len(w)):
            env = _match_template(w, head, p)
            if env is None:
                continue
            A, B = env["A"], env["B"]
            if "K" in env:
                K = env["K"]
            else:
                K = None
            if A == B or w.kind(A) != CROSSING or w.kind(B) != CROSSING:
                continue
            pos_a, pos_b = w.positions[A], w.positions[B]
            if pos_a[0] != p and pos_b[0] != p:
                continue
            # tail starts at the second occurrence of its first symbol
            t0 = w.positions[env[tail[0]]][1] if tail[0] != "K" else None
            if t0 is None or t0 < p + len(head):
                continue
            env2 = _match_template(w, tail, t0)
            if env2 is None or env2.get("A") != A or env2.get("B") != B:
                continue
            K = K or env2.get("K")
            if K is None or w.kind(K) != CUSP:
                continue
            if tau2(w.projection(A)) != w.projection(B):
                continue
            kpos = w.positions[K][0]
            ks = w.projection(K).sign
            if w.projection(A).sign != _pi_required_sign(kind, variant, ks):
                continue
            lo = p + len(head)
            eps = _pi_eps_a(kind, variant, _cusps_between(w, lo, t0))
            if w.projection(A).epsilon != eps:
                continue
            out.append(MoveSite(kind, direction, (kpos,), letters=(A, B, K), variant=variant))
    return out


def _lambda_creations(w, direction):
    out = []
    for g in range(len(w) + 1):
        for p in (Projection.A_PLUS, Projection.A_MINUS, Projection.B_PLUS, Projection.B_MINUS):
            out.append(MoveSite("LAMBDA", direction, (g,), projection=p))
    return out


def _lambda_kink(k1: Projection) -> tuple[Projection, Projection]:
    """(|A|, |K2|) for a cusp birth with first cusp |K1|."""
    k2 = tau1(tau2(k1))
    a = Projection.front("b" if k1.sign < 0 else "a", 1)
    return a, k2


def _lambda_deletions(w, direction):
    out = []
    occ = w.occurrences
    for p in range(len(occ) - 3):
        A, K1, K2, A2 = occ[p:p + 4]
        if A != A2 or w.kind(A) != CROSSING or w.kind(K1) != CUSP or w.kind(K2) != CUSP:
            continue
        a, k2 = _lambda_kink(w.projection(K1))
        if w.projection(A) == a and w.projection(K2) == k2:
            out.append(MoveSite("LAMBDA", direction, (p,), letters=(A, K1, K2)))
    return out


def enumerate_sites(w: EtaleWord, kind: str, direction: int | None = None) -> list[MoveSite]:
    """All sites of ``kind`` (both directions unless one is given)."""
    _check_kind(w, kind)
    dirs = (POSITIVE, NEGATIVE) if direction is None else (direction,)
    out = []
    for d in dirs:
        action = _action(kind, d)
        if kind == "III":
            out += _iii_sites(w, kind, d)
        elif kind in _SMOOTH_II:
            shape = _SMOOTH_II[kind]
            out += (_two_creations if action == CREATE else _two_deletions)(w, kind, d, shape)
        elif kind in _FRONT_II:
            shape = _FRONT_II[kind][0]
            out += (_two_creations if action == CREATE else _two_deletions)(w, kind, d, shape)
        elif kind in ("PI+", "PI-"):
            out += (_pi_creations if action == CREATE else _pi_deletions)(w, kind, d)
        elif kind == "LAMBDA":
            out += (_lambda_creations if action == CREATE else _lambda_deletions)(w, d)
    return out


# -- application -------------------------------------------------------------

def _finish(w: EtaleWord, occ, new_letters=()) -> EtaleWord:
    return w.replace(occ, new_letters=new_letters).canonical()


def _creation_ok(w: EtaleWord, site: MoveSite) -> bool:
    L = len(w)
    if site.kind == "LAMBDA":
        return len(site.positions) == 1 and 0 <= site.positions[0] <= L and site.projection in (
            Projection.A_PLUS, Projection.A_MINUS, Projection.B_PLUS, Projection.B_MINUS)
    if site.kind in ("PI+", "PI-"):
        if len(site.positions) != 2 or site.variant not in (1, 2):
            return False
        k, gap = site.positions
        if not (0 <= k < L and w.kind(w.occurrences[k]) == CUSP and gap in _pi_gaps(L, k, site.variant)):
            return False
        return _pi_site(w, site.kind, site.direction, k, gap, site.variant) == site
    if len(site.positions) != 2:
        return False
    g1, g2 = site.positions
    return 0 <= g1 <= g2 <= L and site.projection in _two_options(w, site.kind, g1, g2)


def _is_valid(w: EtaleWord, site: MoveSite) -> bool:
    if site.action == CREATE:
        return _creation_ok(w, site)
    return site in enumerate_sites(w, site.kind, site.direction)


def apply_move(w: EtaleWord, site: MoveSite) -> EtaleWord:
    """Rewrite ``w`` at ``site``; the result is canonically renamed."""
    _check_kind(w, site.kind)
    if not _is_valid(w, site):
        raise StaleSiteError(f"site {site.describe()} does not apply to this word")
    return _apply(w, site)


def _apply(w: EtaleWord, site: MoveSite) -> EtaleWord:
    occ = list(w.occurrences)
    action = site.action

    if site.kind == "III":
        A, B, C = site.letters
        pa, pb, pc = w.positions[A], w.positions[B], w.positions[C]
        if site.direction > 0:  # AB..AC..BC -> BA..CA..CB
            for i, j in ((pa[0], pb[0]), (pa[1], pc[0]), (pb[1], pc[1])):
                occ[i], occ[j] = occ[j], occ[i]
        else:  # BA..CA..CB -> AB..AC..BC
            for i, j in ((pb[0], pa[0]), (pc[0], pa[1]), (pc[1], pb[1])):
                occ[i], occ[j] = occ[j], occ[i]
        return _finish(w, occ)

    if action == DELETE:
        drop = set(site.letters)
        if site.kind in ("PI+", "PI-"):
            drop.discard(site.letters[2])
        return _finish(w, [x for x in occ if x not in drop])

    # creations
    if site.kind == "LAMBDA":
        (g,) = site.positions
        A, K1, K2 = w.fresh_names(3)
        a, k2 = _lambda_kink(site.projection)
        new = [LetterDecl(A, CROSSING, a), LetterDecl(K1, CUSP, site.projection), LetterDecl(K2, CUSP, k2)]
        return _finish(w, occ[:g] + [A, K1, K2, A] + occ[g:], new)

    A, B = w.fresh_names(2)
    pa = site.projection
    if site.kind in ("PI+", "PI-"):
        pb = tau2(pa)
        k, gap = site.positions
        K = occ[k]
        layout = _pi_layout(site.kind, site.variant)
        y = layout.index("y")
        sub = {"A": A, "B": B, "K": K}
        head = [sub[s] for s in layout[:y]]
        tail = [sub[s] for s in layout[y + 1:]]
        if site.variant == 1:  # x [A K B] y [A B] z, cusp at k
            new_occ = occ[:k] + head + occ[k + 1:gap] + tail + occ[gap:]
        else:  # x [A B] y [A K B] z
            new_occ = occ[:gap] + head + occ[gap:k] + tail + occ[k + 1:]
        return _finish(w, new_occ, [LetterDecl(A, CROSSING, pa), LetterDecl(B, CROSSING, pb)])

    g1, g2 = site.positions
    pb = tau1(pa) if w.is_front else tau(pa)
    shape = _FRONT_II[site.kind][0] if w.is_front else _SMOOTH_II[site.kind]
    second = [A, B] if shape == "ABAB" else [B, A]
    new_occ = occ[:g1] + [A, B] + occ[g1:g2] + second + occ[g2:]
    return _finish(w, new_occ, [LetterDecl(A, CROSSING, pa), LetterDecl(B, CROSSING, pb)])


# -- expected deltas ---------------------------------------------------------

_SMOOTH_TABLE = {("II+", "J+"): 2, ("II-", "J-"): -2, ("III", "St"): 1}
_FRONT_TABLE = {("DII+", "J+"): 2, ("DII-", "J+"): 2, ("SII+", "J-"): -2, ("SII-", "J-"): -2,
                ("III", "St"): 1, ("PI+", "St"): Fraction(1, 2), ("PI-", "St"): Fraction(-1, 2)}


def expected_delta(kind: str, direction: int, invariant: str, curve_class: str) -> Fraction:
    table = _FRONT_TABLE if curve_class == FRONT else _SMOOTH_TABLE
    if kind not in kinds_for(curve_class):
        raise WordError(f"move {kind} does not apply to {curve_class} words")
    if invariant not in ("J+", "J-", "St"):
        raise KeyError(f"unknown basic invariant {invariant!r}")
    return Fraction(table.get((kind, invariant), 0)) * (1 if direction > 0 else -1)


# -- random walks ------------------------------------------------------------

@dataclass
class Trajectory:
    start: EtaleWord
    seed: int
    steps: list[tuple[MoveSite, EtaleWord]] = field(default_factory=list)
    truncated: str | None = None

    @property
    def words(self) -> list[EtaleWord]:
        return [self.start] + [w for _, w in self.steps]

    def edges(self) -> Iterable[tuple[EtaleWord, MoveSite, EtaleWord]]:
        prev = self.start
        for site, w in self.steps:
            yield prev, site, w
            prev = w


def _realizable(w: EtaleWord) -> bool:
    return genus(w, allow_long=True) == 0


def sample_site(w: EtaleWord, kind: str, direction: int, rng: random.Random) -> MoveSite | None:
    """One random site of the given kind and direction, or None.

    Creation sites are drawn directly (gap pair, then projection) instead of
    enumerating all of them; other sites are enumerated.
    """
    if _action(kind, direction) != CREATE:
        sites = enumerate_sites(w, kind, direction)
        return rng.choice(sites) if sites else None
    L = len(w)
    if kind == "LAMBDA":
        return MoveSite(kind, direction, (rng.randint(0, L),), projection=rng.choice(
            (Projection.A_PLUS, Projection.A_MINUS, Projection.B_PLUS, Projection.B_MINUS)))
    if kind in ("PI+", "PI-"):
        cusps = [k for k, x in enumerate(w.occurrences) if w.kind(x) == CUSP]
        if not cusps:
            return None
        k = rng.choice(cusps)
        variant = rng.choice((1, 2))
        return _pi_site(w, kind, direction, k, rng.choice(_pi_gaps(L, k, variant)), variant)
    g1, g2 = sorted((rng.randint(0, L), rng.randint(0, L)))
    options = _two_options(w, kind, g1, g2)
    return MoveSite(kind, direction, (g1, g2), projection=rng.choice(options)) if options else None


def random_walk(start: EtaleWord, steps: int, seed: int,
                kind_weights: Mapping[str, float] | None = None,
                max_letters: int = 14, tries: int = 400) -> Trajectory:
    """Seeded walk of elementary moves that keeps every word planar.

    Each step samples a (kind, direction) by weight, then a site; a site
    whose result is not planar is rejected and resampled.  Creations are
    suppressed once the word has ``max_letters`` letters.
    """
    rng = random.Random(seed)
    kinds = kinds_for(start.curve_class)
    weights = dict(kind_weights or {})
    choices = [(k, d) for k in kinds for d in (POSITIVE, NEGATIVE) if weights.get(k, 1) > 0]
    wts = [weights.get(k, 1) for k, _ in choices]
    traj = Trajectory(start, seed)
    w = start
    for _ in range(steps):
        moved = False
        for attempt in range(tries):
            kind, d = rng.choices(choices, wts)[0]
            # the letter cap is soft: it is lifted by 4 when nothing else applies
            cap = max_letters if attempt < tries // 2 else max_letters + 4
            if _action(kind, d) == CREATE and len(w.ordered_letters) >= cap:
                continue
            site = sample_site(w, kind, d, rng)
            if site is None:
                continue
            nxt = _apply(w, site)
            if not _realizable(nxt):
                continue
            traj.steps.append((site, nxt))
            w = nxt
            moved = True
            break
        if not moved:
            traj.truncated = f"no realizable site found after {tries} tries"
            break
    return traj
