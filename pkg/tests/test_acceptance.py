"""Acceptance criteria 1-10, exact rationals, each under its runtime limit.

Every test appends one PASS/FAIL line to the terminal summary.
"""
import functools
import itertools
import random
import time
from fractions import Fraction as F

from conftest import ACCEPTANCE, make_word
from test_genus import all_closed_words, oracle_genus, to_word
from nanowords.algebra import ParamExpr
from nanowords.genus import genus, is_planar
from nanowords.invariants import (ARNOLD_NAMES, DEGREE3, PRESETS, arnold, arnold_closed,
                                  arnold_degree3, arnold_front, arnold_long, counts, evaluate)
from nanowords.moves import expected_delta, random_walk
from nanowords.pairing import angle_bracket, cyclic_class, enumerate_patterns, parse_pattern
from nanowords.words import (CLOSED, CROSSING, CUSP, FRONT, FRONT_ALPHABET, LONG, EtaleWord,
                             LetterDecl, base_curve, base_point_move, parse_word, reflect,
                             reverse_orientation)

STEPS, TRIALS = 200, 100


def criterion(number, title, limit=None):
    """Time the test, check the limit and record one summary line."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                note = fn(*args, **kwargs)
                elapsed = time.perf_counter() - t0
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
            except AssertionError as e:
                elapsed = time.perf_counter() - t0
                first = str(e).splitlines()[0] if str(e) else "assertion failed"
                ACCEPTANCE.append(f"criterion {number}: FAIL ({elapsed:.1f}s) {title}: {first}")
                raise
            timing = f"{elapsed:.1f}s" + (f" < {limit}s" if limit else "")
            ACCEPTANCE.append(f"criterion {number}: PASS ({timing}) {title}"
                              + (f": {note}" if note else ""))
        return run
    return wrap


# -- shared trajectories ---------------------------------------------------------

def _start(family, t):
    if family == "K":
        return base_curve("K", t % 4)
    if family == "L":
        return base_curve("L", t % 5 - 2)
    return base_curve("KF", t % 3, (t // 3) % 3)


@functools.lru_cache(maxsize=None)
def trajectories(family):
    return tuple(random_walk(_start(family, t), STEPS, 10_000 + t, kind_weights={"III": 4})
                 for t in range(TRIALS))


def reachable_words(family, count, seed=0):
    rng = random.Random(seed)
    pool = [w for tr in trajectories(family) for w in tr.words[1:] if w.occurrences]
    return rng.sample(pool, count)


# -- criteria ------------------------------------------------------------------------

@criterion(1, "base-curve tables", 1)
def test_base_curve_tables():
    closed = [(0, -1, 0), (0, 0, 0), (-2, -3, 1), (-4, -6, 2), (-6, -9, 3)]
    for i, want in enumerate(closed):
        assert arnold_closed(base_curve("K", i)) == want, f"K{i}"
    for i in range(-3, 4):
        assert arnold_long(base_curve("L", i)) == (-abs(i), -2 * abs(i), F(abs(i), 2)), f"L{i}"
    for i in range(4):
        for k in range(3):
            j = i - 1
            want = (-k, -1, F(k, 2)) if i == 0 else (-2 * j - k, -3 * j, j + F(k, 2))
            assert arnold_front(base_curve("KF", i, k)) == want, f"K_{i},{k}"


def _signed(text):
    out, sign, tok = set(), 1, ""
    for ch in text + "+":
        if ch in "+-":
            if tok:
                out.add((sign, str(parse_pattern(tok))))
            sign, tok = (1 if ch == "+" else -1), ""
        else:
            tok += ch
    return out


@criterion(2, "cyclic-class expansions", 1)
def test_class_expansions():
    got = {(s, str(v)) for s, v in cyclic_class(parse_pattern("XYXYZZ")).terms}
    assert got == _signed("XYXYZZ-YXYZZX+XYZZXY-YZZXYX+ZZXYXY-ZXYXYZ")
    got = {(s, str(v)) for s, v in cyclic_class(parse_pattern("XXYYZZ")).terms}
    assert got == _signed("XXYYZZ-XYYZZX")
    li3 = {str(parse_pattern(lit)) for lit in (
        "XYXYZZ", "XYXZZY", "XYZZXY", "XYYZXZ", "XXYZYZ", "XYZYZX", "XYYXZZ", "XXYZZY",
        "XYZZYX", "XYZYXZ", "XYXZYZ", "XYZXZY", "XYZXYZ", "XXYYZZ", "XYYZZX")}
    pats = enumerate_patterns(3)
    assert len(pats) == 15 and {str(v) for v in pats} == li3


@criterion(3, "square-of-index identity", 5)
def test_square_identity():
    terms = [(1, parse_pattern("X.X.")), (2, parse_pattern("XXYY")),
             (2, parse_pattern("XYYX")), (2, parse_pattern("XYXY"))]
    rng = random.Random(3)
    for k in range(1000):
        cls = CLOSED if k % 2 else LONG
        w = make_word(cls, rng.randint(0, 8), rng=rng)
        total = sum(w.projection(x).sign for x in w.crossings)
        assert angle_bracket(terms, w) == total * total, str(w)
    half = {"s": F(1, 2), "t": 1, "u": 1, "v": 1}
    for t in range(20):
        for w in random_walk(base_curve("L", t % 5 - 2), 30, 300 + t).words:
            assert evaluate(PRESETS["LI2"], w).specialize(half) == 0, str(w)


@criterion(4, "delta laws on K, L and KF trajectories", 60)
def test_delta_laws():
    edges = 0
    for family in ("K", "L", "KF"):
        trs = trajectories(family)
        assert len(trs) >= 100
        for tr in trs:
            assert tr.truncated is None and len(tr.steps) == STEPS, tr.truncated
            for w, site, w2 in tr.edges():
                before, after = arnold(w), arnold(w2)
                for name, a, b in zip(ARNOLD_NAMES, before, after):
                    want = expected_delta(site.kind, site.direction, name, w.curve_class)
                    assert b - a == want, f"{name} {site.describe()}: {b - a} != {want} on {w}"
                edges += 1
    return f"{edges} edges"


@criterion(5, "degree-3 Arnold-type invariants constant on their moves", 60)
def test_degree3():
    checks = {"J+3": {"II-", "III"}, "St3": {"II+", "II-"}}
    tested = dict.fromkeys(checks, 0)
    failures = {k: [] for k in checks}
    for tr in trajectories("L"):
        for w, site, w2 in tr.edges():
            for name, kinds in checks.items():
                if site.kind in kinds:
                    tested[name] += 1
                    d = arnold_degree3(w2, name) - arnold_degree3(w, name)
                    if d != ParamExpr():
                        failures[name].append((site.kind, str(d)))
    msg = "; ".join(f"{k}: {len(v)}/{tested[k]} edges change, e.g. {v[0][0]} by {v[0][1]}"
                    for k, v in failures.items() if v)
    assert not msg, msg
    return ", ".join(f"{k} on {n} edges" for k, n in tested.items())


def _stable(name, w):
    ref = evaluate(PRESETS[name], w)
    cur = w
    for _ in range(len(w) - 1):
        cur = base_point_move(cur)
        val = evaluate(PRESETS[name], cur)
        if val != ref:
            return val - ref
    return None


@criterion(6, "base-point invariance")
def test_base_point_invariance():
    xyxy = [(1, parse_pattern("XYXY"))]
    failures = {}
    closed = reachable_words("K", 500, seed=6)
    for w in closed:
        cur, ref = w, angle_bracket(xyxy, w)
        for _ in range(len(w) - 1):
            cur = base_point_move(cur)
            assert angle_bracket(xyxy, cur) == ref, f"<XYXY> on {w}"
    fronts = reachable_words("KF", 500, seed=6)
    for names, words in ((("CI2", "CI3", "GCI3"), closed), (("FI2", "FI3", "GFI3", "FI2~"), fronts)):
        for name in names:
            for w in words:
                d = _stable(name, w)
                if d is not None:
                    failures.setdefault(name, []).append((w, d))
    msg = "; ".join(f"{n} changes on {len(v)}/500 words, e.g. by {v[0][1]} on {v[0][0]}"
                    for n, v in failures.items())
    assert not failures, msg


@criterion(7, "reversal and reflection symmetries")
def test_symmetries():
    for w in reachable_words("K", 300, seed=7):
        r = reverse_orientation(w)
        assert evaluate(PRESETS["CI2"], r) == evaluate(PRESETS["CI2"], w), str(w)
        assert evaluate(PRESETS["CI3"], r) == -evaluate(PRESETS["CI3"], w), str(w)
    for w in reachable_words("L", 300, seed=7):
        m = reflect(w)
        assert evaluate(PRESETS["LI2"], m) == evaluate(PRESETS["LI2"], w), str(w)
        assert evaluate(PRESETS["LI3"], m) == -evaluate(PRESETS["LI3"], w), str(w)


# FI2~ parameters in the roles of FI2's
FI2_ROLES = {"x": "r", "z": "s", "v": "u", "r": "v"}


def _as_fi2(e):
    e = e.eval_ring(-1, -1)
    return ParamExpr(e.constant, {FI2_ROLES.get(k, k): c for k, c in e.coeffs.items()})


def _front_realizable(w):
    # crossing subscript + iff an even number of cusps lies between its occurrences
    for x in w.crossings:
        p, q = w.positions[x]
        inner = sum(1 for y in w.occurrences[p + 1:q] if w.kind(y) == CUSP)
        if (-1) ** inner != w.projection(x).epsilon:
            return False
    return is_planar(w)


def _matchings(points):
    if not points:
        yield []
        return
    a, rest = points[0], points[1:]
    for j, b in enumerate(rest):
        for m in _matchings(rest[:j] + rest[j + 1:]):
            yield [(a, b)] + m


def small_fronts(max_crossings=3, max_cusps=2, index=1):
    """Every front up to the given letter counts, smallest first."""
    sizes = sorted(itertools.product(range(max_crossings + 1), range(0, max_cusps + 1, 2)), key=sum)
    for n, k in sizes:
        length = 2 * n + k
        for cusp_pos in itertools.combinations(range(length), k):
            rest = [p for p in range(length) if p not in cusp_pos]
            for m in _matchings(rest):
                seq = [None] * length
                for j, p in enumerate(cusp_pos):
                    seq[p] = f"K{j}"
                for j, (p, q) in enumerate(m):
                    seq[p] = seq[q] = f"X{j}"
                names = [f"X{j}" for j in range(n)] + [f"K{j}" for j in range(k)]
                for projs in itertools.product(FRONT_ALPHABET, repeat=n + k):
                    decls = tuple(LetterDecl(x, CUSP if x[0] == "K" else CROSSING, pr)
                                  for x, pr in zip(names, projs))
                    yield EtaleWord(FRONT, decls, tuple(seq), index)


def find_distinguished_pair():
    seen = {}
    for w in small_fronts():
        if not _front_realizable(w):
            continue
        # same index and Maslov index, same FI2
        fi2 = (counts(w).mu, evaluate(PRESETS["FI2"], w))
        ring = evaluate(PRESETS["FI2~"], w)
        for other, other_ring in seen.get(fi2, ()):
            if other_ring != ring:
                return other, w
        seen.setdefault(fi2, []).append((w, ring))
    return None


@criterion(8, "ring specialization and extra strength")
def test_ring_specialization():
    rng = random.Random(8)
    for _ in range(200):
        w = make_word(FRONT, rng.randint(0, 5), 2 * rng.randint(0, 2), rng, rng.randint(-2, 2))
        assert _as_fi2(evaluate(PRESETS["FI2~"], w)) == evaluate(PRESETS["FI2"], w), str(w)
    for w in reachable_words("KF", 200, seed=8):
        assert _as_fi2(evaluate(PRESETS["FI2~"], w)) == evaluate(PRESETS["FI2"], w), str(w)
    pair = find_distinguished_pair()
    assert pair is not None, "no pair of small fronts separated by FI2~ but not FI2"
    return f"separated pair: {pair[0]} vs {pair[1]}"


@criterion(9, "genus", 10)
def test_genus():
    total = 0
    for occ, signs in all_closed_words(3):
        assert genus(to_word(occ, signs)) == oracle_genus(occ, signs), (occ, signs)
        total += 1
    assert genus(parse_word("class closed\nindex 0\nword")) == 0
    assert genus(parse_word("class closed\nindex 0\nword A:+ A")) == 0
    assert genus(parse_word("class closed\nindex 0\nword A:- A")) == 0
    assert genus(parse_word("class closed\nindex 0\nword A:+ B:+ A B")) == 1
    visited = 0
    for tr in trajectories("K"):
        for w in tr.words:
            assert genus(w) == 0, str(w)
            visited += 1
    return f"{total} small words, {visited} trajectory words"


@criterion(10, "J+ - J- relations")
def test_relations():
    for family in ("K", "L"):
        for w in reachable_words(family, 500, seed=10):
            jp, jm, _ = arnold(w)
            assert jp - jm == counts(w).n, str(w)
    for w in reachable_words("KF", 500, seed=10):
        jp, jm, _ = arnold(w)
        cs = counts(w)
        assert jp - jm == cs.n_plus - cs.n_minus - cs.c, str(w)
