"""Exact rational simplex for covering LPs.

Every problem here has the same shape: minimize the sum of all variables
subject to rows a.x >= b or a.x = b and x >= 0. Because the objective is the
all-ones vector, the all-surplus starting basis is dual feasible, so the dual
simplex runs straight from it: no Phase-1 artificial variables, and appending
a cut row keeps the current basis dual feasible (cheap warm restarts in the
cutting-plane loop). With x >= 0 and a nonnegative objective the value is
bounded below by zero, so unboundedness cannot occur; infeasibility (possible
only with equality rows) is reported via InfeasibleError.

All arithmetic is exact; the pivot rule is Bland-style lowest-index on both
the leaving and the entering side, which rules out cycling and makes every
returned basic solution deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._rat import ONE, ZERO, Rat


class InfeasibleError(Exception):
    """The problem (typically after pinning a row to equality) is infeasible."""


class PivotLimitError(RuntimeError):
    """Safety cap on pivots exceeded; indicates a solver bug, not a hard input."""


@dataclass(frozen=True)
class LpRow:
    coeffs: tuple
    rel: str  # ">=" or "="
    rhs: object

    def __post_init__(self):
        if self.rel not in (">=", "="):
            raise ValueError(f"unsupported relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Rat(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Rat(self.rhs))


@dataclass(frozen=True)
class LpProblem:
    num_vars: int
    rows: tuple[LpRow, ...]

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row.coeffs) != self.num_vars:
                raise ValueError(
                    f"row {i} has width {len(row.coeffs)}, expected {self.num_vars}"
                )


def add_row(problem: LpProblem, coeffs: Sequence, rel: str, rhs) -> LpProblem:
    """New problem with one extra row; the original is untouched."""
    return LpProblem(problem.num_vars, problem.rows + (LpRow(tuple(coeffs), rel, rhs),))


@dataclass(frozen=True)
class BasicSolution:
    """A vertex of the feasible polyhedron, exactly.

    tight_rows are recomputed from the values rather than read off the basis
    bookkeeping; basis_witness lists the nonbasic identifiers (("var", j) for
    x_j = 0, ("row", i) for row i at equality) certifying vertex status.
    """

    values: tuple
    objective: object
    tight_rows: frozenset[int]
    basis_witness: frozenset[tuple[str, int]]


class CoveringSimplex:
    """Incremental dual-simplex engine over ">=" rows only.

    Column layout: x variables 0..num_vars-1, then one surplus column per row
    in insertion order. Rows are kept in basis-reduced form (each basic column
    is a unit column), so appending a reduced row keeps the invariant.
    """

    __slots__ = ("num_vars", "_rows", "_rhs", "_cost", "_basis", "_ncols", "pivots")

    def __init__(self, num_vars: int, rows: Iterable[tuple[Sequence, object]] = ()):
        self.num_vars = num_vars
        self._rows: list[list] = []
        self._rhs: list = []
        self._cost: list = [ONE] * num_vars
        self._basis: list[int] = []
        self._ncols = num_vars
        self.pivots = 0
        for coeffs, rhs in rows:
            self.add_ge_row(coeffs, rhs)

    def copy(self) -> "CoveringSimplex":
        dup = CoveringSimplex.__new__(CoveringSimplex)
        dup.num_vars = self.num_vars
        dup._rows = [list(row) for row in self._rows]
        dup._rhs = list(self._rhs)
        dup._cost = list(self._cost)
        dup._basis = list(self._basis)
        dup._ncols = self._ncols
        dup.pivots = self.pivots
        return dup

    def add_ge_row(self, coeffs: Sequence, rhs) -> None:
        """Append constraint coeffs . x >= rhs (reduced against the basis)."""
        surplus = self._ncols
        for row in self._rows:
            row.append(ZERO)
        self._cost.append(ZERO)
        self._ncols += 1

        new = [ZERO] * self._ncols
        for j, c in enumerate(coeffs):
            if c:
                new[j] = -Rat(c)
        new[surplus] = ONE
        new_rhs = -Rat(rhs)
        for i, basic in enumerate(self._basis):
            factor = new[basic]
            if factor:
                prow = self._rows[i]
                for k, c in enumerate(prow):
                    if c:
                        new[k] -= factor * c
                if self._rhs[i]:
                    new_rhs -= factor * self._rhs[i]
        self._rows.append(new)
        self._rhs.append(new_rhs)
        self._basis.append(surplus)

    def optimize(self, pivot_cap: int = 200_000) -> None:
        """Dual simplex to optimality; raises InfeasibleError when primal empty."""
        rows, rhs, cost, basis = self._rows, self._rhs, self._cost, self._basis
        while True:
            leave = -1
            leave_var = None
            for i, b in enumerate(rhs):
                if b < 0 and (leave_var is None or basis[i] < leave_var):
                    leave, leave_var = i, basis[i]
            if leave < 0:
                return
            prow = rows[leave]
            enter = -1
            best = None
            for j, a in enumerate(prow):
                if a < 0:
                    ratio = cost[j] / -a
                    if best is None or ratio < best:
                        best, enter = ratio, j
            if enter < 0:
                raise InfeasibleError("no feasible point exists")
            self._pivot(leave, enter)
            if self.pivots > pivot_cap:
                raise PivotLimitError(f"exceeded {pivot_cap} pivots")

    def _pivot(self, r: int, col: int) -> None:
        rows, rhs = self._rows, self._rhs
        prow = rows[r]
        piv = prow[col]
        if piv != ONE:
            inv = ONE / piv
            rows[r] = prow = [c * inv if c else c for c in prow]
            rhs[r] *= inv
        nz = [k for k, c in enumerate(prow) if c]
        pr = rhs[r]
        for i, row in enumerate(rows):
            if i == r:
                continue
            factor = row[col]
            if factor:
                for k in nz:
                    row[k] -= factor * prow[k]
                if pr:
                    rhs[i] -= factor * pr
        cost = self._cost
        factor = cost[col]
        if factor:
            for k in nz:
                cost[k] -= factor * prow[k]
        self._basis[r] = col
        self.pivots += 1

    def values(self) -> list:
        vals = [ZERO] * self.num_vars
        for i, basic in enumerate(self._basis):
            if basic < self.num_vars:
                vals[basic] = self._rhs[i]
        return vals

    def objective(self):
        total = ZERO
        for i, basic in enumerate(self._basis):
            if basic < self.num_vars:
                total += self._rhs[i]
        return total

    def nonbasic_indices(self) -> list[int]:
        basic = set(self._basis)
        return [j for j in range(self._ncols) if j not in basic]

    def debug_dump(self) -> str:
        """Human-readable tableau snapshot for debugging."""
        names = [f"x{j}" for j in range(self.num_vars)] + [
            f"s{j}" for j in range(self._ncols - self.num_vars)
        ]
        lines = [f"cost  {'  '.join(str(c) for c in self._cost)}"]
        for i, row in enumerate(self._rows):
            lines.append(
                f"{names[self._basis[i]]:>5} "
                f"{'  '.join(str(c) for c in row)} | {self._rhs[i]}"
            )
        return "\n".join(lines)


def finalize_solution(
    problem: LpProblem, engine: CoveringSimplex, row_owner: Sequence[int]
) -> BasicSolution:
    """Extract a BasicSolution and verify it exactly against the problem.

    row_owner maps each engine row to the index of the problem row it came
    from (equality rows expand to two engine rows with the same owner).
    """
    values = tuple(engine.values())
    objective = sum(values, ZERO)
    tight = set()
    for i, row in enumerate(problem.rows):
        lhs = _dot(row.coeffs, values)
        if row.rel == "=":
            if lhs != row.rhs:
                raise AssertionError(f"equality row {i} violated: {lhs} != {row.rhs}")
            tight.add(i)
        else:
            if lhs < row.rhs:
                raise AssertionError(f"row {i} violated: {lhs} < {row.rhs}")
            if lhs == row.rhs:
                tight.add(i)
    if any(v < 0 for v in values):
        raise AssertionError("negative variable in solution")
    witness = set()
    for j in engine.nonbasic_indices():
        if j < problem.num_vars:
            witness.add(("var", j))
        else:
            witness.add(("row", row_owner[j - problem.num_vars]))
    return BasicSolution(values, objective, frozenset(tight), frozenset(witness))


def _dot(coeffs, values):
    total = ZERO
    for c, v in zip(coeffs, values):
        if c and v:
            total += c * v
    return total


def _expand(problem: LpProblem):
    """Equality rows become a pair of opposing ">=" rows."""
    engine_rows = []
    owner = []
    for i, row in enumerate(problem.rows):
        engine_rows.append((row.coeffs, row.rhs))
        owner.append(i)
        if row.rel == "=":
            engine_rows.append((tuple(-c for c in row.coeffs), -row.rhs))
            owner.append(i)
    return engine_rows, owner


def solve(problem: LpProblem) -> BasicSolution:
    """Optimal basic solution of the covering LP; deterministic."""
    if problem.num_vars == 0:
        for i, row in enumerate(problem.rows):
            if row.rhs > 0 or (row.rel == "=" and row.rhs != 0):
                raise InfeasibleError(f"row {i} cannot be satisfied with no variables")
        return BasicSolution(
            (), ZERO, frozenset(i for i, r in enumerate(problem.rows) if r.rhs == 0),
            frozenset(),
        )
    engine_rows, owner = _expand(problem)
    engine = CoveringSimplex(problem.num_vars, engine_rows)
    engine.optimize()
    return finalize_solution(problem, engine, owner)


def solve_with_equality(problem: LpProblem, row_index: int) -> BasicSolution:
    """Re-solve with row row_index forced to equality.

    Raises InfeasibleError when no feasible point survives the pinning, which
    callers report as "no alternate optimum through this edge".
    """
    rows = list(problem.rows)
    pinned = rows[row_index]
    rows[row_index] = LpRow(pinned.coeffs, "=", pinned.rhs)
    return solve(LpProblem(problem.num_vars, tuple(rows)))
