"""Genus of the closed oriented surface carried by a word.

Each crossing letter is a 4-valent vertex, each arc between consecutive
occurrences (cyclically) an edge.  The counterclockwise order of the four
darts at a vertex is fixed by the crossing's sign:

    sign +1: out1, out2, in1, in2
    sign -1: out1, in2, in1, out2

where in_k/out_k are the arcs entering/leaving the k-th occurrence.  Faces
are the orbits of "next dart counterclockwise after crossing the edge", and
g = (2 - V + E - F) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass

from .words import CROSSING, LONG, EtaleWord, WordError


@dataclass(frozen=True)
class GenusReport:
    genus: int
    faces: int
    vertices: int
    edges: int

    @property
    def planar(self) -> bool:
        return self.genus == 0

    def to_json(self) -> dict:
        return {"genus": self.genus, "planar": self.planar, "faces": self.faces}


def _crossing_sequence(w: EtaleWord) -> list[tuple[str, int]]:
    """(name, sign) along the curve with cusp letters dropped."""
    return [(x, w.projection(x).sign) for x in w.occurrences if w.kind(x) == CROSSING]


def surface(w: EtaleWord, allow_long: bool = False) -> GenusReport:
    if w.curve_class == LONG and not allow_long:
        raise WordError("genus is defined for closed words; pass allow_long to close a long word at infinity")
    seq = _crossing_sequence(w)
    m = len(seq)
    if m == 0:
        return GenusReport(0, 2, 0, 0)
    # darts: (arc, end) with end 0 = tail (leaving a vertex), 1 = head (entering)
    first: dict[str, int] = {}
    rotation = {}
    for pos, (name, sign) in enumerate(seq):
        if name not in first:
            first[name] = pos
            continue
        p1, p2 = first[name], pos
        out1, in1 = (p1, 0), ((p1 - 1) % m, 1)
        out2, in2 = (p2, 0), ((p2 - 1) % m, 1)
        order = (out1, out2, in1, in2) if sign > 0 else (out1, in2, in1, out2)
        for k, d in enumerate(order):
            rotation[d] = order[(k + 1) % 4]
    seen = set()
    faces = 0
    for start in rotation:
        if start in seen:
            continue
        faces += 1
        d = start
        while d not in seen:
            seen.add(d)
            arc, end = d
            d = rotation[(arc, 1 - end)]
    v, e = m // 2, m
    chi = v - e + faces
    if chi % 2:
        raise AssertionError(f"odd Euler characteristic {chi}")
    return GenusReport((2 - chi) // 2, faces, v, e)


def genus(w: EtaleWord, allow_long: bool = False) -> int:
    return surface(w, allow_long).genus


def is_planar(w: EtaleWord, allow_long: bool = False) -> bool:
    return surface(w, allow_long).genus == 0
