"""Exact integer geometry for axis-parallel segments and paths with at most 2 bends.

All coordinates are plain ints; there is no floating point anywhere in this
module. Segments are pairs of (x, y) points, paths are short tuples of
waypoints. Two intersection semantics are provided: CONTACT treats segments
as closed point sets (endpoint touches and collinear overlaps count),
PROPER_CROSS only accepts transversal crossings interior to both segments.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional, Sequence, Tuple

Point = Tuple[int, int]
Segment = Tuple[Point, Point]


class IntersectMode(enum.Enum):
    CONTACT = "contact"
    PROPER_CROSS = "proper-cross"


CONTACT = IntersectMode.CONTACT
PROPER_CROSS = IntersectMode.PROPER_CROSS


def seg_is_horizontal(seg: Segment) -> bool:
    (x1, y1), (x2, y2) = seg
    return y1 == y2


def seg_is_vertical(seg: Segment) -> bool:
    (x1, y1), (x2, y2) = seg
    return x1 == x2


def check_segment(seg: Segment) -> Optional[str]:
    """Return a diagnostic if *seg* is not a valid axis-parallel segment."""
    (x1, y1), (x2, y2) = seg
    if x1 == x2 and y1 == y2:
        return "zero-length segment"
    if x1 != x2 and y1 != y2:
        return "segment not axis-parallel"
    return None


def _ival(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def seg_intersect(s: Segment, t: Segment, mode: IntersectMode = CONTACT) -> bool:
    """Exact intersection test for two axis-parallel segments."""
    sh = seg_is_horizontal(s)
    th = seg_is_horizontal(t)
    if sh and th:
        if mode is PROPER_CROSS:
            return False
        if s[0][1] != t[0][1]:
            return False
        a1, a2 = _ival(s[0][0], s[1][0])
        b1, b2 = _ival(t[0][0], t[1][0])
        return a1 <= b2 and b1 <= a2
    if not sh and not th:
        if mode is PROPER_CROSS:
            return False
        if s[0][0] != t[0][0]:
            return False
        a1, a2 = _ival(s[0][1], s[1][1])
        b1, b2 = _ival(t[0][1], t[1][1])
        return a1 <= b2 and b1 <= a2
    # perpendicular: name them
    h, v = (s, t) if sh else (t, s)
    hy = h[0][1]
    vx = v[0][0]
    hx1, hx2 = _ival(h[0][0], h[1][0])
    vy1, vy2 = _ival(v[0][1], v[1][1])
    if mode is PROPER_CROSS:
        return hx1 < vx < hx2 and vy1 < hy < vy2
    return hx1 <= vx <= hx2 and vy1 <= hy <= vy2


class BendPath:
    """An axis-parallel lattice path with 1..3 segments (at most 2 bends).

    Waypoints are stored as a tuple of (x, y) int pairs. Consecutive
    waypoints span axis-parallel segments of nonzero length and consecutive
    segments alternate between horizontal and vertical, so every interior
    waypoint is a genuine bend.
    """

    __slots__ = ("waypoints", "_bbox")

    def __init__(self, waypoints: Iterable[Point]):
        pts = tuple((int(x), int(y)) for x, y in waypoints)
        diag = path_diagnostic(pts)
        if diag is not None:
            raise ValueError(diag)
        self.waypoints = pts
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self._bbox = (min(xs), min(ys), max(xs), max(ys))

    def segments(self) -> Tuple[Segment, ...]:
        w = self.waypoints
        return tuple((w[i], w[i + 1]) for i in range(len(w) - 1))

    @property
    def bends(self) -> int:
        return len(self.waypoints) - 2

    @property
    def bbox(self) -> Tuple[int, int, int, int]:
        return self._bbox

    def translate(self, dx: int, dy: int) -> "BendPath":
        return BendPath(tuple((x + dx, y + dy) for x, y in self.waypoints))

    def __eq__(self, other) -> bool:
        return isinstance(other, BendPath) and self.waypoints == other.waypoints

    def __hash__(self) -> int:
        return hash(self.waypoints)

    def __repr__(self) -> str:
        return f"BendPath({list(self.waypoints)!r})"


def path_diagnostic(waypoints: Sequence[Point]) -> Optional[str]:
    """First violated path invariant as a message, or None if valid."""
    n = len(waypoints)
    if n < 2:
        return "path needs at least 2 waypoints"
    if n > 4:
        return f"{n - 2} bends exceed the 2-bend limit"
    prev_horizontal = None
    for i in range(n - 1):
        seg = (waypoints[i], waypoints[i + 1])
        diag = check_segment(seg)
        if diag is not None:
            return f"segment {i}: {diag}"
        horizontal = seg_is_horizontal(seg)
        if prev_horizontal is not None and horizontal == prev_horizontal:
            return f"segments {i - 1} and {i} share an axis (not a bend)"
        prev_horizontal = horizontal
    return None


def path_valid(waypoints: Sequence[Point]) -> Tuple[bool, Optional[str]]:
    diag = path_diagnostic(tuple(waypoints))
    return diag is None, diag


def bends(p: BendPath) -> int:
    return p.bends


def paths_intersect(p: BendPath, q: BendPath, mode: IntersectMode = CONTACT) -> bool:
    """True iff some segment of p intersects some segment of q under *mode*."""
    pb = p._bbox
    qb = q._bbox
    if pb[0] > qb[2] or qb[0] > pb[2] or pb[1] > qb[3] or qb[1] > pb[3]:
        return False
    for s in p.segments():
        for t in q.segments():
            if seg_intersect(s, t, mode):
                return True
    return False


def path_points_scaled(p: BendPath) -> frozenset:
    """All lattice points of the path scaled by 2 (so midpoints are integral).

    Used as a brute-force rasterization oracle for CONTACT-mode intersection
    tests; two paths touch iff their scaled point sets overlap.
    """
    pts = set()
    for (x1, y1), (x2, y2) in p.segments():
        if y1 == y2:
            lo, hi = _ival(x1, x2)
            for x in range(2 * lo, 2 * hi + 1):
                pts.add((x, 2 * y1))
        else:
            lo, hi = _ival(y1, y2)
            for y in range(2 * lo, 2 * hi + 1):
                pts.add((2 * x1, y))
    return frozenset(pts)
