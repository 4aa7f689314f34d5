"""Property checks run along random move trajectories.

Each check returns ``None`` when the property holds and a :class:`Violation`
describing the first counterexample otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import format_rational
from .invariants import ARNOLD_NAMES, arnold, evaluate, get_preset
from .moves import MoveSite, Trajectory, expected_delta, random_walk
from .words import CLOSED, FRONT, LONG, EtaleWord, base_curve, base_point_move, reflect, \
    reverse_orientation, serialize_word

CHECKS = ("deltas", "symmetry", "basepoint")
FAMILY_CLASS = {"K": CLOSED, "L": LONG, "KF": FRONT}

BASEPOINT_PRESETS = {CLOSED: ("CI2", "CI3", "GCI3"), FRONT: ("FI2", "FI3", "GFI3", "FI2~")}


@dataclass
class Violation:
    check: str
    message: str
    word: EtaleWord
    site: MoveSite | None = None
    result: EtaleWord | None = None

    def render(self) -> str:
        lines = [f"violation ({self.check}): {self.message}", serialize_word(self.word)]
        if self.site is not None:
            lines.append(f"edge: {self.site.describe()}")
        if self.result is not None:
            lines.append(serialize_word(self.result))
        return "\n".join(lines)


def check_edge(w: EtaleWord, site: MoveSite, w2: EtaleWord) -> Violation | None:
    before, after = arnold(w), arnold(w2)
    for name, a, b in zip(ARNOLD_NAMES, before, after):
        want = expected_delta(site.kind, site.direction, name, w.curve_class)
        if b - a != want:
            msg = f"{name} changed by {format_rational(b - a)}, expected {format_rational(want)}"
            return Violation("deltas", msg, w, site, w2)
    return None


def check_deltas(traj: Trajectory) -> Violation | None:
    for w, site, w2 in traj.edges():
        v = check_edge(w, site, w2)
        if v:
            return v
    return None


def check_symmetry(w: EtaleWord) -> Violation | None:
    """Reversal/reflection rules for CI2, CI3 (closed) and LI2, LI3 (long)."""
    if w.curve_class == CLOSED:
        op, rules = reverse_orientation, (("CI2", 1), ("CI3", -1))
    elif w.curve_class == LONG:
        op, rules = reflect, (("LI2", 1), ("LI3", -1))
    else:
        raise ValueError("symmetry checks apply to closed and long words")
    w2 = op(w)
    for name, sign in rules:
        p = get_preset(name)
        a, b = evaluate(p, w), evaluate(p, w2)
        if b != a.scale(sign):
            return Violation("symmetry", f"{name}: {a} vs {b} after {op.__name__}", w)
    return None


def check_basepoint(w: EtaleWord, presets=None) -> Violation | None:
    """Presets are unchanged by every base point move around the word."""
    if w.curve_class not in BASEPOINT_PRESETS:
        raise ValueError("base point checks apply to closed words and fronts")
    names = presets or BASEPOINT_PRESETS[w.curve_class]
    ref = {n: evaluate(get_preset(n), w) for n in names}
    cur = w
    for step in range(1, len(w.occurrences)):
        cur = base_point_move(cur)
        for n in names:
            val = evaluate(get_preset(n), cur)
            if val != ref[n]:
                diff = val - ref[n]
                return Violation("basepoint", f"{n} changed by {diff} after {step} base point moves", w)
    return None


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def run(family: str, index: int, cusps: int | None, steps: int, trials: int, seed: int,
        check: str) -> tuple[dict, Violation | None]:
    """Run ``trials`` walks and the chosen check; returns (summary, violation)."""
    if check not in CHECKS:
        raise ValueError(f"unknown check {check!r}")
    start = base_curve(family, index, cusps)
    if check == "symmetry" and start.curve_class == FRONT:
        raise ValueError("symmetry checks apply to the K and L families")
    if check == "basepoint" and start.curve_class == LONG:
        raise ValueError("base point checks apply to the K and KF families")
    summary = {"family": family, "index": index, "trials": trials, "steps": steps,
               "seed": seed, "check": check, "edges": 0, "words": 0, "truncated": 0}
    for t in range(trials):
        traj = random_walk(start, steps, trial_seed(seed, t), kind_weights={"III": 4})
        summary["edges"] += len(traj.steps)
        summary["truncated"] += traj.truncated is not None
        if check == "deltas":
            v = check_deltas(traj)
        else:
            fn = check_symmetry if check == "symmetry" else check_basepoint
            v = None
            for w in traj.words:
                summary["words"] += 1
                v = fn(w)
                if v:
                    break
        if v:
            summary["failed_trial"] = t
            return summary, v
    return summary, None

