"""PURE-NAE-3-SAT formulas: parsing, evaluation, replication and a brute-force solver.

Clauses are ordered triples of distinct positive variable ids (1-based).
A clause is satisfied when its three values are not all equal; there are no
negated literals anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

Clause = Tuple[int, int, int]
Assignment = Tuple[bool, ...]

DEFAULT_SOLVE_LIMIT = 24


class FormulaError(ValueError):
    """Raised for malformed .nae input or invalid formula structure."""


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise FormulaError("num_vars must be nonnegative")
        for idx, cl in enumerate(self.clauses):
            if len(cl) != 3:
                raise FormulaError(f"clause {idx + 1} has {len(cl)} literals, expected 3")
            if len(set(cl)) != 3:
                raise FormulaError(f"clause {idx + 1} repeats a variable: {cl}")
            for v in cl:
                if not 1 <= v <= self.num_vars:
                    raise FormulaError(
                        f"clause {idx + 1}: variable {v} out of range 1..{self.num_vars}"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_formula(text: str) -> Formula:
    """Parse the `.nae` text format.

    Header line `p nae <num_vars> <num_clauses>`, then one clause per line as
    three space-separated positive ints terminated by `0`. Lines starting
    with `c` are comments. Errors carry the 1-based line number.
    """
    num_vars = None
    declared = None
    clauses: List[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise FormulaError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "nae":
                raise FormulaError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars = int(parts[2])
                declared = int(parts[3])
            except ValueError:
                raise FormulaError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or declared < 0:
                raise FormulaError(f"line {lineno}: negative counts in header")
            continue
        if num_vars is None:
            raise FormulaError(f"line {lineno}: clause before header")
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormulaError(f"line {lineno}: non-integer token in {line!r}") from None
        if len(nums) != 4 or nums[3] != 0:
            raise FormulaError(f"line {lineno}: clause must be three literals then 0")
        lits = nums[:3]
        for v in lits:
            if v <= 0:
                raise FormulaError(f"line {lineno}: literals must be positive, got {v}")
            if v > num_vars:
                raise FormulaError(f"line {lineno}: variable {v} out of range 1..{num_vars}")
        if len(set(lits)) != 3:
            raise FormulaError(f"line {lineno}: duplicate literal in clause {lits}")
        clauses.append((lits[0], lits[1], lits[2]))
    if num_vars is None:
        raise FormulaError("missing `p nae` header")
    if declared is not None and declared != len(clauses):
        raise FormulaError(
            f"header declares {declared} clauses but {len(clauses)} were given"
        )
    return Formula(num_vars=num_vars, clauses=tuple(clauses))


def serialize_formula(formula: Formula) -> str:
    lines = [f"p nae {formula.num_vars} {formula.num_clauses}"]
    for a, b, c in formula.clauses:
        lines.append(f"{a} {b} {c} 0")
    return "\n".join(lines) + "\n"


def eval_nae(clause: Clause, assignment: Assignment) -> bool:
    """A NAE clause holds iff the three assigned values are not all equal."""
    a, b, c = clause
    va, vb, vc = assignment[a - 1], assignment[b - 1], assignment[c - 1]
    return not (va == vb == vc)


def is_nae_satisfied(formula: Formula, assignment: Assignment) -> bool:
    if len(assignment) != formula.num_vars:
        raise ValueError(
            f"assignment length {len(assignment)} != num_vars {formula.num_vars}"
        )
    return all(eval_nae(cl, assignment) for cl in formula.clauses)


def solve_nae(formula: Formula, limit: int = DEFAULT_SOLVE_LIMIT) -> Optional[Assignment]:
    """Exhaustive NAE oracle.

    Returns the lexicographically first satisfying assignment (False < True,
    variable 1 most significant), or None after all 2^n assignments fail.
    """
    n = formula.num_vars
    if n > limit:
        raise ValueError(f"{n} variables exceed the exhaustion limit {limit}")
    clauses = [(a - 1, b - 1, c - 1) for a, b, c in formula.clauses]
    for code in range(1 << n):
        values = tuple(bool((code >> (n - 1 - k)) & 1) for k in range(n))
        ok = True
        for a, b, c in clauses:
            if values[a] == values[b] == values[c]:
                ok = False
                break
        if ok:
            return values
    return None


def replicate(formula: Formula, t: int) -> Formula:
    """Disjoint union of t copies; copy k uses ids (k-1)*n+1 .. k*n."""
    if t < 1:
        raise ValueError("replication count must be >= 1")
    n = formula.num_vars
    clauses: List[Clause] = []
    for k in range(t):
        off = k * n
        for a, b, c in formula.clauses:
            clauses.append((a + off, b + off, c + off))
    return Formula(num_vars=t * n, clauses=tuple(clauses))


def expand_assignment(assignment: Assignment, t: int) -> Assignment:
    """The same per-copy assignment repeated for each of the t copies."""
    return tuple(assignment) * t
