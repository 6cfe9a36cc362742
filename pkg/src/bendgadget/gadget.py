"""Gadget graphs: role-labeled vertices, the NAE reduction, and the .graph format.

The reduction maps a (replicated) formula to a simple graph whose vertices
carry roles: the two special vertices A and B, one Var vertex per variable,
one Occ vertex per (clause, slot), one Clause vertex per clause and three
Obstr vertices per clause (one per unordered slot pair). Vertex ids are
assigned in a fixed canonical order so compilation is byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .formula import Formula, replicate

SLOT_PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True, order=True)
class Role:
    """Tagged role of a gadget vertex.

    kind is one of "A", "B", "Var", "Occ", "Clause", "Obstr", "Plain".
    copy / var / clause are 1-based where applicable; slot and slot2 carry
    occurrence slots (1..3). Plain vertices carry no parameters and exist so
    hand-written graphs (e.g. C4 for the recognizer) fit the same container.
    """

    kind: str
    copy: int = 0
    var: int = 0
    clause: int = 0
    slot: int = 0
    slot2: int = 0

    def tag(self) -> str:
        k = self.kind
        if k in ("A", "B", "Plain"):
            return k
        if k == "Var":
            return f"Var {self.copy} {self.var}"
        if k == "Occ":
            return f"Occ {self.copy} {self.var} {self.clause} {self.slot}"
        if k == "Clause":
            return f"Clause {self.copy} {self.clause}"
        if k == "Obstr":
            return f"Obstr {self.copy} {self.clause} {self.slot} {self.slot2}"
        raise ValueError(f"unknown role kind {k!r}")

    @staticmethod
    def from_tokens(tokens: Sequence[str]) -> "Role":
        kind = tokens[0]
        args = [int(t) for t in tokens[1:]]
        if kind in ("A", "B", "Plain"):
            if args:
                raise ValueError(f"role {kind} takes no parameters")
            return Role(kind)
        if kind == "Var" and len(args) == 2:
            return Role("Var", copy=args[0], var=args[1])
        if kind == "Occ" and len(args) == 4:
            return Role("Occ", copy=args[0], var=args[1], clause=args[2], slot=args[3])
        if kind == "Clause" and len(args) == 2:
            return Role("Clause", copy=args[0], clause=args[1])
        if kind == "Obstr" and len(args) == 4:
            return Role("Obstr", copy=args[0], clause=args[1], slot=args[2], slot2=args[3])
        raise ValueError(f"malformed role tag {' '.join(tokens)!r}")


ROLE_A = Role("A")
ROLE_B = Role("B")


class GraphError(ValueError):
    """Raised for malformed .graph input or invalid graph structure."""


@dataclass
class LabeledGraph:
    """A simple undirected graph with role-labeled vertices.

    Vertices are consecutive ids 0..n-1; `roles[i]` labels vertex i. Edges
    are stored as a frozenset of ascending id pairs.
    """

    roles: Tuple[Role, ...]
    edges: FrozenSet[Tuple[int, int]]
    _adj: Optional[Tuple[FrozenSet[int], ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.roles)
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v < n):
                raise GraphError(f"bad edge ({u}, {v}) for {n} vertices")

    @property
    def num_vertices(self) -> int:
        return len(self.roles)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        if self._adj is None:
            adj: List[set] = [set() for _ in range(len(self.roles))]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges


def plain_graph(num_vertices: int, edges: Sequence[Tuple[int, int]]) -> LabeledGraph:
    es = frozenset((min(u, v), max(u, v)) for u, v in edges)
    return LabeledGraph(roles=tuple(Role("Plain") for _ in range(num_vertices)), edges=es)


def _gadget_vertices(num_vars_per_copy: int, clauses_per_copy: int, replication: int) -> List[Role]:
    """Canonical vertex order: A, B, Vars (copy-major), Occs, Clauses, Obstrs."""
    roles: List[Role] = [ROLE_A, ROLE_B]
    for copy in range(1, replication + 1):
        for var in range(1, num_vars_per_copy + 1):
            roles.append(Role("Var", copy=copy, var=var))
    # var field of Occ filled by the caller (depends on the clause literals)
    return roles


def compile_formula(
    formula: Formula,
    replication: int = 13,
    ab_adjacent: bool = False,
) -> LabeledGraph:
    """The reduction: compile a formula into its gadget graph.

    The formula is replicated `replication` times; each copy contributes its
    own Var/Occ/Clause/Obstr vertices. Edges follow the gadget rules exactly:
    A and B are adjacent to every Var and every Occ; each Occ is adjacent to
    its own Var; each Clause to its three Occs; each Obstr to the two Occs of
    its slot pair; A-B iff `ab_adjacent`.
    """
    if replication < 1:
        raise ValueError("replication must be >= 1")
    n = formula.num_vars
    m = formula.num_clauses
    roles = _gadget_vertices(n, m, replication)
    occ_ids: Dict[Tuple[int, int, int], int] = {}
    clause_ids: Dict[Tuple[int, int], int] = {}
    for copy in range(1, replication + 1):
        for j, clause in enumerate(formula.clauses, start=1):
            for slot in (1, 2, 3):
                occ_ids[(copy, j, slot)] = len(roles)
                roles.append(
                    Role("Occ", copy=copy, var=clause[slot - 1], clause=j, slot=slot)
                )
    for copy in range(1, replication + 1):
        for j in range(1, m + 1):
            clause_ids[(copy, j)] = len(roles)
            roles.append(Role("Clause", copy=copy, clause=j))
    obstr_ids: Dict[Tuple[int, int, Tuple[int, int]], int] = {}
    for copy in range(1, replication + 1):
        for j in range(1, m + 1):
            for pair in SLOT_PAIRS:
                obstr_ids[(copy, j, pair)] = len(roles)
                roles.append(Role("Obstr", copy=copy, clause=j, slot=pair[0], slot2=pair[1]))

    var_id = {
        (copy, var): 2 + (copy - 1) * n + (var - 1)
        for copy in range(1, replication + 1)
        for var in range(1, n + 1)
    }

    edges = set()

    def add(u: int, v: int):
        edges.add((min(u, v), max(u, v)))

    if ab_adjacent:
        add(0, 1)
    for (copy, var), vid in var_id.items():
        add(0, vid)
        add(1, vid)
    for copy in range(1, replication + 1):
        for j, clause in enumerate(formula.clauses, start=1):
            cid = clause_ids[(copy, j)]
            for slot in (1, 2, 3):
                oid = occ_ids[(copy, j, slot)]
                add(0, oid)
                add(1, oid)
                add(var_id[(copy, clause[slot - 1])], oid)
                add(cid, oid)
            for pair in SLOT_PAIRS:
                bid = obstr_ids[(copy, j, pair)]
                add(bid, occ_ids[(copy, j, pair[0])])
                add(bid, occ_ids[(copy, j, pair[1])])
    return LabeledGraph(roles=tuple(roles), edges=frozenset(edges))


def role_index(graph: LabeledGraph) -> Dict[Role, int]:
    return {role: i for i, role in enumerate(graph.roles)}


def expected_gadget_edges(graph: LabeledGraph) -> FrozenSet[Tuple[int, int]]:
    """Recompute the edge set the gadget rules dictate for graph's vertices.

    The A-B edge is optional; it is included iff present in the graph (the
    flag is not recoverable from the vertex roles alone).
    """
    idx = role_index(graph)
    edges = set()

    def add(u: int, v: int):
        edges.add((min(u, v), max(u, v)))

    occs = [(i, r) for i, r in enumerate(graph.roles) if r.kind == "Occ"]
    for i, r in enumerate(graph.roles):
        if r.kind == "Var":
            add(0, i)
            add(1, i)
    for i, r in occs:
        add(0, i)
        add(1, i)
        var = idx.get(Role("Var", copy=r.copy, var=r.var))
        if var is None:
            raise GraphError(f"Occ vertex {i} references missing Var {r.copy}.{r.var}")
        add(var, i)
        clause = idx.get(Role("Clause", copy=r.copy, clause=r.clause))
        if clause is None:
            raise GraphError(f"Occ vertex {i} references missing Clause {r.copy}.{r.clause}")
        add(clause, i)
    for i, r in enumerate(graph.roles):
        if r.kind == "Obstr":
            for slot in (r.slot, r.slot2):
                occ = None
                for j, rr in occs:
                    if rr.copy == r.copy and rr.clause == r.clause and rr.slot == slot:
                        occ = j
                        break
                if occ is None:
                    raise GraphError(
                        f"Obstr vertex {i} references missing Occ {r.copy}.{r.clause}.{slot}"
                    )
                add(i, occ)
    if (0, 1) in graph.edges:
        add(0, 1)
    return frozenset(edges)


_EDGE_RULES = (
    ("A-B", ("A", "B")),
    ("A-Var", ("A", "Var")),
    ("B-Var", ("B", "Var")),
    ("A-Occ", ("A", "Occ")),
    ("B-Occ", ("B", "Occ")),
    ("Var-Occ", ("Var", "Occ")),
    ("Clause-Occ", ("Clause", "Occ")),
    ("Obstr-Occ", ("Obstr", "Occ")),
)


def gadget_stats(graph: LabeledGraph) -> Dict[str, object]:
    """Role and per-rule edge counts, with structural validation.

    Raises GraphError naming the offending vertices when the edge set
    deviates from the gadget rules.
    """
    role_counts: Dict[str, int] = {}
    for r in graph.roles:
        role_counts[r.kind] = role_counts.get(r.kind, 0) + 1
    for special in ("A", "B"):
        if role_counts.get(special, 0) != 1:
            raise GraphError(f"expected exactly one {special} vertex")

    expected = expected_gadget_edges(graph)
    missing = sorted(expected - graph.edges)
    extra = sorted(graph.edges - expected)
    if missing or extra:
        parts = []
        for u, v in missing[:8]:
            parts.append(
                f"missing {graph.roles[u].tag()} -- {graph.roles[v].tag()}"
            )
        for u, v in extra[:8]:
            parts.append(f"unexpected {graph.roles[u].tag()} -- {graph.roles[v].tag()}")
        raise GraphError("; ".join(parts))

    rule_counts = {name: 0 for name, _ in _EDGE_RULES}
    for u, v in graph.edges:
        ku, kv = graph.roles[u].kind, graph.roles[v].kind
        for name, (ka, kb) in _EDGE_RULES:
            if (ku, kv) in ((ka, kb), (kb, ka)):
                rule_counts[name] += 1
                break
        else:
            raise GraphError(f"edge {u}-{v} with roles {ku}-{kv} matches no rule")
    return {
        "roles": role_counts,
        "edge_rules": rule_counts,
        "num_vertices": graph.num_vertices,
        "num_edges": graph.num_edges,
        "ab_adjacent": (0, 1) in graph.edges,
    }


def serialize_graph(graph: LabeledGraph) -> str:
    lines = [f"g {graph.num_vertices} {graph.num_edges}"]
    for i, role in enumerate(graph.roles):
        lines.append(f"v {i} {role.tag()}")
    for u, v in sorted(graph.edges):
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabeledGraph:
    header = None
    roles: Dict[int, Role] = {}
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "g":
            if header is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(tokens) != 3:
                raise GraphError(f"line {lineno}: malformed header")
            header = (int(tokens[1]), int(tokens[2]))
        elif tokens[0] == "v":
            try:
                vid = int(tokens[1])
                role = Role.from_tokens(tokens[2:])
            except (IndexError, ValueError) as exc:
                raise GraphError(f"line {lineno}: {exc}") from None
            if vid in roles:
                raise GraphError(f"line {lineno}: duplicate vertex {vid}")
            roles[vid] = role
        elif tokens[0] == "e":
            if len(tokens) != 3:
                raise GraphError(f"line {lineno}: malformed edge")
            u, v = int(tokens[1]), int(tokens[2])
            if u == v:
                raise GraphError(f"line {lineno}: loop at {u}")
            e = (min(u, v), max(u, v))
            if e in edges:
                raise GraphError(f"line {lineno}: duplicate edge {e}")
            edges.add(e)
        else:
            raise GraphError(f"line {lineno}: unknown record {tokens[0]!r}")
    if header is None:
        raise GraphError("missing `g` header")
    nv, ne = header
    if sorted(roles) != list(range(nv)):
        raise GraphError(f"vertex ids must be exactly 0..{nv - 1}")
    if ne != len(edges):
        raise GraphError(f"header declares {ne} edges but {len(edges)} were given")
    ordered = tuple(roles[i] for i in range(nv))
    return LabeledGraph(roles=ordered, edges=frozenset(edges))
