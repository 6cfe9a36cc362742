"""Constructive direction: explicit coordinates realizing a compiled gadget graph.

Given a formula and an NAE-satisfying assignment, emit a representation that
`verify` accepts against `compile_formula(formula, ...)` under CONTACT
semantics.

Layout scheme (one copy; copies tile diagonally, sharing A and B):

  * A is an L (plus an optional stub touching B): horizontal arm on y=0,
    vertical arm on x=0. B nests inside: horizontal arm on y=-2, vertical
    arm on x=2.
  * True variables are short rungs across the top corridor (first segment
    on A's horizontal arm, vertical middle, third on B's horizontal arm);
    false variables are short rungs across the left corridor. Middle
    orientation therefore encodes the assignment: vertical = True.
  * A true occurrence anchors inside its variable's first segment and drops
    a vertical wire south through B's horizontal arm into a clause band.
  * A false occurrence anchors inside its variable's first segment on the
    left wall, runs a horizontal row east through B's vertical arm (both
    walls are crossable: occurrences are adjacent to A and B), and raises a
    vertical riser from the row's east end up into its clause band.
  * Each clause owns a private horizontal band between y=-4 and the false
    rows; the clause path and its three obstruction paths are short
    horizontal segments at distinct levels of the band, touching exactly
    the wires and risers of that clause's occurrences.

The only cross-clause interactions are wires/risers passing through foreign
bands and risers passing foreign rows. Feasible orderings (variable order,
per-variable cell order, band depth order, riser parking, row depths) are
found by a small deterministic search; infeasible combinations raise
LayoutError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .formula import Assignment, Formula, expand_assignment, is_nae_satisfied, replicate
from .gadget import LabeledGraph, Role, SLOT_PAIRS, compile_formula, role_index
from .geometry import BendPath
from .representation import Representation

WEST, EAST = 0, 1
BLOCK_HEIGHT = 8
MEZZ_TOP = -4


class LayoutError(RuntimeError):
    """No feasible layout exists within the builder's placement family."""


@dataclass
class LayoutOptions:
    replication: int = 13
    ab_adjacent: bool = False
    row_pitch: int = 16
    col_pitch: int = 16

    def __post_init__(self):
        if self.replication < 1:
            raise ValueError("replication must be >= 1")
        if self.row_pitch < 8 or self.col_pitch < 8:
            raise ValueError("pitches must be at least 8 lattice units")


@dataclass
class _ClauseInfo:
    index: int                      # 1-based clause index within the copy
    true_slots: Tuple[int, ...]     # slots (1..3) whose variable is True
    false_slots: Tuple[int, ...]
    lits: Tuple[int, int, int]

    @property
    def wide(self) -> bool:
        return len(self.true_slots) == 2


@dataclass
class _CopySchedule:
    """Feasible per-copy placement decisions (shared by all copies)."""

    sigma_t: Tuple[int, ...]                 # true vars, west to east
    cell_order: Dict[int, List[Tuple[int, int]]]  # var -> [(clause, slot)] west..east
    park: Dict[int, int]                     # wide clause -> WEST or EAST
    tab_side: Dict[Tuple[int, int], int]     # (clause, false slot) -> WEST/EAST (narrow)
    block_rank: Dict[int, int]               # clause -> 0 (top) .. m-1
    fan_order: List[Tuple[int, int]]         # false occs (clause, slot), tab column asc
    wire_col: Dict[Tuple[int, int], int]     # (clause, slot) -> x of its wire
    tab_col: Dict[Tuple[int, int], int]      # (clause, false slot) -> x of its riser
    rung_col: Dict[int, int]                 # true var -> x of its rung
    first_west: Dict[int, int]               # true var -> west end of first segment
    copy_width: int


def _clause_infos(formula: Formula, assignment: Assignment) -> List[_ClauseInfo]:
    infos = []
    for j, clause in enumerate(formula.clauses, start=1):
        trues = tuple(s for s in (1, 2, 3) if assignment[clause[s - 1] - 1])
        falses = tuple(s for s in (1, 2, 3) if not assignment[clause[s - 1] - 1])
        if len(trues) not in (1, 2):
            raise LayoutError(
                f"clause {j} has {len(trues)} true literals; assignment is not NAE-satisfying"
            )
        infos.append(_ClauseInfo(j, trues, falses, clause))
    return infos


def _place_columns(
    trues: Sequence[int],
    infos: List[_ClauseInfo],
    sigma_t: Sequence[int],
    park: Dict[int, int],
    col_pitch: int,
    x_base: int,
):
    """Assign cells for a candidate true-var order; returns column maps."""
    pos = {v: i for i, v in enumerate(sigma_t)}
    # occurrences of each true var: (clause, slot)
    occs_of: Dict[int, List[Tuple[int, int]]] = {v: [] for v in sigma_t}
    for info in infos:
        for s in info.true_slots:
            occs_of[info.lits[s - 1]].append((info.index, s))

    def partner_pos(var: int, clause: int) -> int:
        info = infos[clause - 1]
        others = [info.lits[s - 1] for s in info.true_slots if info.lits[s - 1] != var]
        return pos[others[0]] if others else pos[var]

    cell_order: Dict[int, List[Tuple[int, int]]] = {}
    for v in sigma_t:
        max_enders, narrows, min_enders = [], [], []
        for (j, s) in occs_of[v]:
            info = infos[j - 1]
            if not info.wide:
                narrows.append((j, s))
            elif partner_pos(v, j) < pos[v]:
                max_enders.append((j, s))
            else:
                min_enders.append((j, s))
        max_enders.sort(key=lambda js: (partner_pos(v, js[0]), js[0]))
        narrows.sort()
        min_enders.sort(key=lambda js: (partner_pos(v, js[0]), js[0]))
        cell_order[v] = max_enders + narrows + min_enders

    wire_col: Dict[Tuple[int, int], int] = {}
    rung_col: Dict[int, int] = {}
    first_west: Dict[int, int] = {}
    x = x_base
    for v in sigma_t:
        start = x
        for (j, s) in cell_order[v]:
            wire_col[(j, s)] = x + 4
            x += col_pitch
        rung_col[v] = x + 4
        first_west[v] = start + 3 if cell_order[v] else x + 3
        x += col_pitch
    return cell_order, wire_col, rung_col, first_west, x - x_base


def _spans_and_verticals(
    infos: List[_ClauseInfo],
    assignment: Assignment,
    wire_col: Dict[Tuple[int, int], int],
    park: Dict[int, int],
):
    """Clause piece spans plus every vertical object's (column, kind, clause)."""
    spans: Dict[int, Tuple[int, int]] = {}
    tab_col: Dict[Tuple[int, int], int] = {}
    verticals: List[Tuple[int, str, int, Tuple[int, int]]] = []
    for info in infos:
        j = info.index
        wires = sorted(wire_col[(j, s)] for s in info.true_slots)
        if info.wide:
            w1, w2 = wires
            if park.get(j, WEST) == WEST:
                spans[j] = (w1 - 2, w2)
                t = w1 - 2
            else:
                spans[j] = (w1, w2 + 2)
                t = w2 + 2
            fs = info.false_slots[0]
            tab_col[(j, fs)] = t
        else:
            w = wires[0]
            spans[j] = (w - 2, w + 2)
            # tab columns w-2 / w+2; the side per false occ is chosen later
        for s in info.true_slots:
            verticals.append((wire_col[(j, s)], "wire", j, (j, s)))
    return spans, tab_col, verticals


def _feasible_blocks(
    infos: List[_ClauseInfo],
    spans: Dict[int, Tuple[int, int]],
    verticals,
    tab_candidates: Dict[int, List[int]],
) -> Optional[Dict[int, int]]:
    """Topologically order clause bands; None when the constraints cycle.

    Edge (u, v) means u's band must sit strictly above v's. A wire strictly
    inside a foreign span must stop above that band; a riser strictly inside
    must top out below it.
    """
    m = len(infos)
    above: Dict[int, set] = {info.index: set() for info in infos}
    for info in infos:
        j = info.index
        lo, hi = spans[j]
        for (col, kind, k, _key) in verticals:
            if k == j or not (lo < col < hi):
                continue
            if kind == "wire":
                above[k].add(j)  # k above j
            else:
                above[j].add(k)  # j above k
        for k, cols in tab_candidates.items():
            if k == j:
                continue
            for col in cols:
                if lo < col < hi:
                    above[j].add(k)
    # Kahn with smallest clause index first for determinism
    indeg = {j: 0 for j in above}
    for j, outs in above.items():
        for k in outs:
            indeg[k] += 1
    order: List[int] = []
    ready = sorted(j for j, d in indeg.items() if d == 0)
    while ready:
        j = ready.pop(0)
        order.append(j)
        for k in sorted(above[j]):
            indeg[k] -= 1
            if indeg[k] == 0:
                ready.append(k)
        ready.sort()
    if len(order) != m:
        return None
    return {j: rank for rank, j in enumerate(order)}


def _fan_assignment(
    infos: List[_ClauseInfo],
    assignment: Assignment,
    spans: Dict[int, Tuple[int, int]],
    wire_col,
    fixed_tabs: Dict[Tuple[int, int], int],
) -> Optional[Tuple[Dict[Tuple[int, int], int], List[Tuple[int, int]]]]:
    """Choose narrow-clause riser sides so riser columns group by variable.

    Rows on the west wall are grouped per false variable, and a riser may
    only pass over shorter rows, which forces riser columns (sorted) to list
    each variable's occurrences contiguously.
    """
    narrow = [info for info in infos if not info.wide]
    choices_list = []
    for info in narrow:
        w = wire_col[(info.index, info.true_slots[0])]
        a, b = info.false_slots
        choices_list.append(
            [
                {(info.index, a): w - 2, (info.index, b): w + 2},
                {(info.index, a): w + 2, (info.index, b): w - 2},
            ]
        )
    for combo in itertools.product(*choices_list) if choices_list else [()]:
        tabs = dict(fixed_tabs)
        for d in combo:
            tabs.update(d)
        items = sorted(tabs.items(), key=lambda kv: kv[1])
        seen: Dict[int, int] = {}
        ok = True
        last_var = None
        for (j, s), col in items:
            var = infos[j - 1].lits[s - 1]
            if var == last_var:
                continue
            if var in seen:
                ok = False
                break
            seen[var] = 1
            last_var = var
        if ok:
            return tabs, [key for key, _ in items]
    return None


def _solve_schedule(
    formula: Formula,
    assignment: Assignment,
    options: LayoutOptions,
) -> _CopySchedule:
    infos = _clause_infos(formula, assignment)
    trues = [v for v in range(1, formula.num_vars + 1) if assignment[v - 1]]
    wides = [info.index for info in infos if info.wide]

    perms = itertools.permutations(sorted(trues))
    park_profiles = list(itertools.product((WEST, EAST), repeat=len(wides)))
    if len(park_profiles) > 256:
        park_profiles = park_profiles[:256]

    for sigma_t in perms:
        for profile in park_profiles:
            park = {j: side for j, side in zip(wides, profile)}
            cell_order, wire_col, rung_col, first_west, width = _place_columns(
                trues, infos, sigma_t, park, options.col_pitch, 0
            )
            spans, fixed_tabs, verticals = _spans_and_verticals(
                infos, assignment, wire_col, park
            )
            # candidate riser columns per clause (both narrow sides considered
            # for band ordering: a riser forces the same edge either side).
            tab_candidates: Dict[int, List[int]] = {}
            for info in infos:
                j = info.index
                if info.wide:
                    tab_candidates[j] = [fixed_tabs[(j, info.false_slots[0])]]
                else:
                    w = wire_col[(j, info.true_slots[0])]
                    tab_candidates[j] = [w - 2, w + 2]
            blocks = _feasible_blocks(infos, spans, verticals, tab_candidates)
            if blocks is None:
                continue
            fan = _fan_assignment(infos, assignment, spans, wire_col, fixed_tabs)
            if fan is None:
                continue
            tabs, fan_order = fan
            tab_side: Dict[Tuple[int, int], int] = {}
            for info in infos:
                if info.wide:
                    continue
                w = wire_col[(info.index, info.true_slots[0])]
                for s in info.false_slots:
                    tab_side[(info.index, s)] = (
                        WEST if tabs[(info.index, s)] < w else EAST
                    )
            return _CopySchedule(
                sigma_t=tuple(sigma_t),
                cell_order=cell_order,
                park=park,
                tab_side=tab_side,
                block_rank=blocks,
                fan_order=fan_order,
                wire_col=wire_col,
                tab_col=tabs,
                rung_col=rung_col,
                first_west=first_west,
                copy_width=width,
            )
    raise LayoutError(
        "no feasible layout: the clauses' true-literal pattern cannot be "
        "scheduled by this builder (crossing wide-clause intervals)"
    )


@dataclass
class _CopyPaths:
    """Copy-local paths keyed by role (before translation and id mapping)."""

    paths: Dict[Role, BendPath] = field(default_factory=dict)
    depth: int = 0  # positive extent below y=0 used by this copy


def _emit_copy(
    formula: Formula,
    assignment: Assignment,
    schedule: _CopySchedule,
    options: LayoutOptions,
) -> _CopyPaths:
    """Coordinates for copy 1 with slots starting at x=6 and bands at y=-4."""
    infos = _clause_infos(formula, assignment)
    out = _CopyPaths()
    x0 = 6
    wire_x = {k: x0 + c for k, c in schedule.wire_col.items()}
    tab_x = {k: x0 + c for k, c in schedule.tab_col.items()}
    rung_x = {v: x0 + c for v, c in schedule.rung_col.items()}
    first_w = {v: x0 + c for v, c in schedule.first_west.items()}

    m = formula.num_clauses
    base_of = {j: MEZZ_TOP - BLOCK_HEIGHT * rank for j, rank in schedule.block_rank.items()}

    # clause bands: pieces and wire dive depths
    dive: Dict[Tuple[int, int], int] = {}
    for info in infos:
        j = info.index
        base = base_of[j]
        if info.wide:
            svars = sorted(info.true_slots, key=lambda s: wire_x[(j, s)])
            s1, s2 = svars
            w1, w2 = wire_x[(j, s1)], wire_x[(j, s2)]
            fs = info.false_slots[0]
            t = tab_x[(j, fs)]
            if schedule.park.get(j, WEST) == WEST:
                dive[(j, s1)], dive[(j, s2)] = base - 4, base - 6
                pieces = {
                    Role("Clause", copy=1, clause=j): ((t, base), (w2, base)),
                    _obstr_role(j, s1, s2): ((w1, base - 1), (w2, base - 1)),
                    _obstr_role(j, s1, fs): ((t, base - 2), (w1, base - 2)),
                    _obstr_role(j, s2, fs): ((t, base - 5), (w2, base - 5)),
                }
            else:
                dive[(j, s1)], dive[(j, s2)] = base - 6, base - 4
                pieces = {
                    Role("Clause", copy=1, clause=j): ((w1, base), (t, base)),
                    _obstr_role(j, s1, s2): ((w1, base - 1), (w2, base - 1)),
                    _obstr_role(j, s2, fs): ((w2, base - 2), (t, base - 2)),
                    _obstr_role(j, s1, fs): ((w1, base - 5), (t, base - 5)),
                }
        else:
            sw = info.true_slots[0]
            w = wire_x[(j, sw)]
            dive[(j, sw)] = base - 4
            fa = next(s for s in info.false_slots if tab_x[(j, s)] == w - 2)
            fb = next(s for s in info.false_slots if tab_x[(j, s)] == w + 2)
            pieces = {
                Role("Clause", copy=1, clause=j): ((w - 2, base), (w + 2, base)),
                _obstr_role(j, sw, fa): ((w - 2, base - 1), (w, base - 1)),
                _obstr_role(j, sw, fb): ((w, base - 2), (w + 2, base - 2)),
                _obstr_role(j, fa, fb): ((w - 2, base - 5), (w + 2, base - 5)),
            }
        for role, (p, q) in pieces.items():
            out.paths[role] = BendPath([p, q])

    # true vars and their occurrence wires
    trues = set(schedule.sigma_t)
    for v in schedule.sigma_t:
        xv = rung_x[v]
        out.paths[Role("Var", copy=1, var=v)] = BendPath(
            [(first_w[v] - 1, 0), (xv, 0), (xv, -2), (xv + 1, -2)]
        )
        for (j, s) in schedule.cell_order[v]:
            w = wire_x[(j, s)]
            bottom = dive[(j, s)]
            out.paths[Role("Occ", copy=1, var=v, clause=j, slot=s)] = BendPath(
                [(w - 1, 0), (w, 0), (w, bottom), (w + 1, bottom)]
            )

    # false vars: rows under the bands, ordered by the riser fan
    false_land_top = MEZZ_TOP - BLOCK_HEIGHT * m - 2
    occ_rows: Dict[Tuple[int, int], int] = {}
    var_blocks: List[Tuple[int, List[Tuple[int, int]]]] = []
    for (j, s) in schedule.fan_order:
        var = infos[j - 1].lits[s - 1]
        if var_blocks and var_blocks[-1][0] == var:
            var_blocks[-1][1].append((j, s))
        else:
            var_blocks.append((var, [(j, s)]))
    cursor = false_land_top
    placed_false = set()
    for var, occ_list in var_blocks:
        top = cursor
        for idx, key in enumerate(occ_list):
            occ_rows[key] = top - 2 * (idx + 1)
        yu = top - 2 * len(occ_list) - 4
        out.paths[Role("Var", copy=1, var=var)] = BendPath(
            [(0, top), (0, yu), (2, yu), (2, yu - 1)]
        )
        placed_false.add(var)
        cursor = yu - 4
        if top - cursor < options.row_pitch:
            cursor = top - options.row_pitch
    # false vars with no occurrences
    for var in range(1, formula.num_vars + 1):
        if assignment[var - 1] or var in placed_false:
            continue
        top = cursor
        yu = top - 4
        out.paths[Role("Var", copy=1, var=var)] = BendPath(
            [(0, top), (0, yu), (2, yu), (2, yu - 1)]
        )
        cursor = yu - 4
        if top - cursor < options.row_pitch:
            cursor = top - options.row_pitch

    for (j, s), row in occ_rows.items():
        var = infos[j - 1].lits[s - 1]
        t = tab_x[(j, s)]
        top = base_of[j]
        out.paths[Role("Occ", copy=1, var=var, clause=j, slot=s)] = BendPath(
            [(0, row + 1), (0, row), (t, row), (t, top)]
        )

    out.depth = -(cursor) + 2
    return out


def _obstr_role(clause: int, sa: int, sb: int) -> Role:
    lo, hi = min(sa, sb), max(sa, sb)
    return Role("Obstr", copy=1, clause=clause, slot=lo, slot2=hi)


def build_representation(
    formula: Formula,
    assignment: Assignment,
    options: Optional[LayoutOptions] = None,
) -> Representation:
    """Emit a verified-shape representation of compile_formula(formula, ...).

    The assignment is per-copy; the same values are reused for every copy of
    the replication. Raises LayoutError when the (rare) crossing pattern of
    wide clauses defeats the placement family, and ValueError when the
    assignment does not NAE-satisfy the formula.
    """
    options = options or LayoutOptions()
    if len(assignment) != formula.num_vars:
        raise ValueError("assignment length must equal num_vars")
    if not is_nae_satisfied(formula, assignment):
        raise ValueError("assignment does not NAE-satisfy the formula")

    schedule = _solve_schedule(formula, assignment, options)
    copy_paths = _emit_copy(formula, assignment, schedule, options)

    rep_paths: Dict[int, BendPath] = {}
    graph = compile_formula(
        formula, replication=options.replication, ab_adjacent=options.ab_adjacent
    )
    idx = role_index(graph)

    n = formula.num_vars
    copy_w = schedule.copy_width + 4
    copy_h = copy_paths.depth + BLOCK_HEIGHT
    for c in range(options.replication):
        dx, dy = c * copy_w, -c * copy_h
        for role, path in copy_paths.paths.items():
            shifted = Role(
                role.kind,
                copy=c + 1,
                var=role.var,
                clause=role.clause,
                slot=role.slot,
                slot2=role.slot2,
            )
            vid = idx.get(shifted)
            if vid is None:
                raise LayoutError(f"internal: no graph vertex for {shifted}")
            rep_paths[vid] = path.translate(dx, dy)

    total_depth = options.replication * copy_h
    y_bot = -total_depth - 4
    x_a = 6 + options.replication * copy_w + 2
    if options.ab_adjacent:
        a_path = BendPath([(x_a, 0), (0, 0), (0, y_bot), (2, y_bot)])
    else:
        a_path = BendPath([(x_a, 0), (0, 0), (0, y_bot)])
    b_path = BendPath([(x_a - 1, -2), (2, -2), (2, y_bot - 2)])
    rep_paths[idx[Role("A")]] = a_path
    rep_paths[idx[Role("B")]] = b_path

    if len(rep_paths) != graph.num_vertices:
        missing = [i for i in range(graph.num_vertices) if i not in rep_paths]
        raise LayoutError(f"internal: unplaced vertices {missing[:5]}")
    return Representation(rep_paths)


def layout_plan(
    formula: Formula,
    assignment: Assignment,
    options: Optional[LayoutOptions] = None,
) -> str:
    """Human-readable placement table (slots, rows and orientations)."""
    options = options or LayoutOptions()
    if not is_nae_satisfied(formula, assignment):
        raise ValueError("assignment does not NAE-satisfy the formula")
    schedule = _solve_schedule(formula, assignment, options)
    infos = _clause_infos(formula, assignment)
    lines = [
        "vertex            placement                     orientation",
        "----------------  ----------------------------  -----------",
    ]
    lines.append(f"{'a':<16}  {'top+left walls':<28}  -")
    lines.append(f"{'b':<16}  {'inner walls':<28}  -")
    for copy in range(1, options.replication + 1):
        for i, v in enumerate(schedule.sigma_t):
            name = f"v{v}[{copy}]"
            lines.append(f"{name:<16}  {'column slot %d' % i:<28}  vertical")
        rowpos = {key: i for i, key in enumerate(schedule.fan_order)}
        seen = []
        for (j, s) in schedule.fan_order:
            var = infos[j - 1].lits[s - 1]
            if var not in seen:
                seen.append(var)
        falses = [
            v
            for v in range(1, formula.num_vars + 1)
            if not assignment[v - 1]
        ]
        for v in falses:
            name = f"v{v}[{copy}]"
            r = seen.index(v) if v in seen else len(seen)
            lines.append(f"{name:<16}  {'row block %d' % r:<28}  horizontal")
        for info in infos:
            j = info.index
            for s in (1, 2, 3):
                var = info.lits[s - 1]
                name = f"occ{j}.{s}[{copy}]"
                if assignment[var - 1]:
                    place = f"wire cell of v{var}"
                    orient = "vertical"
                else:
                    place = f"row {rowpos[(j, s)]} + riser"
                    orient = "horizontal"
                lines.append(f"{name:<16}  {place:<28}  {orient}")
            name = f"clause{j}[{copy}]"
            lines.append(
                f"{name:<16}  {'band rank %d' % schedule.block_rank[j]:<28}  -"
            )
    return "\n".join(lines) + "\n"
