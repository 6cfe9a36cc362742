"""Vertex-to-path representations: the certificate type, its checker and renderers.

A representation maps every vertex of a target graph to a bend path. It
certifies membership when the paths' pairwise intersection pattern equals
the graph's edge set; `verify` reports the full symmetric difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .gadget import LabeledGraph
from .geometry import CONTACT, BendPath, IntersectMode, path_diagnostic, paths_intersect


class RepresentationError(ValueError):
    """Raised for malformed .rep input or invalid paths."""


@dataclass
class VerifyReport:
    ok: bool
    missing_edges: List[Tuple[int, int]]
    extra_edges: List[Tuple[int, int]]
    invalid_paths: List[Tuple[int, str]]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.invalid_paths:
            parts.append(f"{len(self.invalid_paths)} invalid paths")
        if self.missing_edges:
            parts.append(f"{len(self.missing_edges)} missing edges")
        if self.extra_edges:
            parts.append(f"{len(self.extra_edges)} extra edges")
        return "FAIL: " + ", ".join(parts)

    def detail_lines(self) -> List[str]:
        lines = [self.summary()]
        for vid, diag in self.invalid_paths:
            lines.append(f"invalid {vid}: {diag}")
        for u, v in self.missing_edges:
            lines.append(f"missing {u} {v}")
        for u, v in self.extra_edges:
            lines.append(f"extra {u} {v}")
        return lines


class Representation:
    """Map from vertex ids to bend paths (the NP certificate)."""

    def __init__(self, entries: Mapping[int, BendPath]):
        items = {}
        for vid, path in entries.items():
            vid = int(vid)
            if vid in items:
                raise RepresentationError(f"duplicate vertex id {vid}")
            if not isinstance(path, BendPath):
                path = BendPath(path)
            items[vid] = path
        self.entries: Dict[int, BendPath] = dict(sorted(items.items()))

    def __getitem__(self, vid: int) -> BendPath:
        return self.entries[vid]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def vertex_ids(self):
        return self.entries.keys()

    def translate(self, dx: int, dy: int) -> "Representation":
        return Representation({v: p.translate(dx, dy) for v, p in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.entries == other.entries


def verify(
    rep: Representation,
    graph: LabeledGraph,
    mode: IntersectMode = CONTACT,
) -> VerifyReport:
    """Compare the representation's intersection graph with the target graph.

    The vertex sets must agree exactly (checked before any geometry). For
    every unordered pair the intersection predicate is compared with the
    edge set; all discrepancies are listed in ascending pair order.
    """
    want = set(range(graph.num_vertices))
    got = set(rep.vertex_ids())
    if want != got:
        missing = sorted(want - got)
        extra = sorted(got - want)
        raise RepresentationError(
            f"vertex set mismatch: missing {missing[:5]}, unexpected {extra[:5]}"
        )
    invalid: List[Tuple[int, str]] = []
    for vid in sorted(got):
        diag = path_diagnostic(rep[vid].waypoints)
        if diag is not None:
            invalid.append((vid, diag))

    missing_edges: List[Tuple[int, int]] = []
    extra_edges: List[Tuple[int, int]] = []
    ids = sorted(got)
    paths = [rep[v] for v in ids]
    edges = graph.edges
    for i in range(len(ids)):
        pi = paths[i]
        for j in range(i + 1, len(ids)):
            touching = paths_intersect(pi, paths[j], mode)
            adjacent = (ids[i], ids[j]) in edges
            if adjacent and not touching:
                missing_edges.append((ids[i], ids[j]))
            elif touching and not adjacent:
                extra_edges.append((ids[i], ids[j]))
    ok = not (missing_edges or extra_edges or invalid)
    return VerifyReport(ok, missing_edges, extra_edges, invalid)


def serialize_representation(rep: Representation) -> str:
    """The `.rep` format: one line per vertex, coordinates flattened, sorted by id."""
    lines = []
    for vid in sorted(rep.vertex_ids()):
        coords = " ".join(f"{x} {y}" for x, y in rep[vid].waypoints)
        lines.append(f"{vid} {coords}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_representation(text: str) -> Representation:
    entries: Dict[int, BendPath] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise RepresentationError(f"line {lineno}: non-integer token") from None
        if len(nums) < 5 or (len(nums) - 1) % 2 != 0:
            raise RepresentationError(
                f"line {lineno}: expected `<id> x1 y1 x2 y2 [x3 y3 [x4 y4]]`"
            )
        vid = nums[0]
        if vid in entries:
            raise RepresentationError(f"line {lineno}: duplicate vertex id {vid}")
        pts = [(nums[i], nums[i + 1]) for i in range(1, len(nums), 2)]
        diag = path_diagnostic(pts)
        if diag is not None:
            raise RepresentationError(f"line {lineno}: {diag}")
        entries[vid] = BendPath(pts)
    return Representation(entries)


# Style table for the SVG renderer. Stroke colors keyed by role kind; the
# occurrence shade is darker than its variable per the figure idiom, clause
# paths are grey.
SVG_PALETTE = {
    "A": "#1b1b1b",
    "B": "#3a3a3a",
    "Var": "#3b6fd4",
    "Occ": "#1d3f86",
    "Clause": "#8c8c8c",
    "Obstr": "#c05030",
    "Plain": "#111111",
    None: "#111111",
}
SVG_STROKE_WIDTH = "0.30"
SVG_SCALE = 10


def render_svg(rep: Representation, graph: Optional[LabeledGraph] = None) -> str:
    """Deterministic SVG 1.1 text: one polyline per vertex, colored by role."""
    ids = sorted(rep.vertex_ids())
    if ids:
        xs = [x for v in ids for x, _ in rep[v].waypoints]
        ys = [y for v in ids for _, y in rep[v].waypoints]
        min_x, max_x = min(xs) - 1, max(xs) + 1
        min_y, max_y = min(ys) - 1, max(ys) + 1
    else:
        min_x, max_x, min_y, max_y = 0, 1, 0, 1
    width = max_x - min_x
    height = max_y - min_y
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{min_x} {-max_y} {width} {height}" '
        f'width="{width * SVG_SCALE}" height="{height * SVG_SCALE}">',
    ]
    for vid in ids:
        role = graph.roles[vid] if graph is not None and vid < graph.num_vertices else None
        color = SVG_PALETTE.get(role.kind if role else None, SVG_PALETTE[None])
        # y is negated so larger y renders upward
        pts = " ".join(f"{x},{-y}" for x, y in rep[vid].waypoints)
        title = role.tag() if role else str(vid)
        lines.append(
            f'  <polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{SVG_STROKE_WIDTH}" stroke-linecap="square">'
            f"<title>{vid}: {title}</title></polyline>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
