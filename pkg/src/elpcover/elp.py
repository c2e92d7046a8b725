"""Odd-cycle-strengthened LP relaxation of minimum vertex cover.

The relaxation adds, on top of the edge inequalities x_i + x_j >= 1, one
inequality sum_{v in C} x_v >= s + 1 per odd cycle C of length 2s + 1. The
cycle family is exponential, so the optimum is computed by a cutting-plane
loop with an exact separation oracle: a most-violated odd cycle is found as a
minimum-weight odd closed walk in the bipartite double cover under edge
weights w(u,v) = x_u + x_v - 1, then shrunk to a simple odd cycle (discarding
closed sub-walks of even length never increases the weight).

The solution returned after the loop is a vertex of the cut-augmented
polytope; a final separation pass certifies it is feasible, hence optimal,
for the full relaxation. Whether it is also a vertex of the full-relaxation
polytope is not guaranteed and is surfaced as a diagnostic, not assumed.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ._rat import FOUR_THIRDS, ONE, ZERO, Rat
from .graph import Graph, OddCycle, normalize_edge
from .simplex import (
    BasicSolution,
    CoveringSimplex,
    InfeasibleError,
    LpProblem,
    LpRow,
    finalize_solution,
)

log = logging.getLogger("elpcover.elp")


class CutLoopLimitError(RuntimeError):
    """Cutting-plane round cap exceeded; signals a separation/extraction bug."""


@dataclass(frozen=True)
class CutRound:
    cycle: OddCycle
    violation: object
    objective_after: object


@dataclass(frozen=True, eq=False)
class ElpSolution:
    x: dict
    objective: object
    cycle_pool: tuple[OddCycle, ...]
    active_edges: tuple[tuple[int, int], ...]
    over_active_edges: tuple[tuple[int, int], ...]
    small_edges: tuple[tuple[int, int], ...]
    basic: Optional[BasicSolution]
    rounds: tuple[CutRound, ...] = field(default=())

    @property
    def zero_vertices(self) -> frozenset[int]:
        return frozenset(v for v, val in self.x.items() if val == 0)

    @property
    def one_vertices(self) -> frozenset[int]:
        return frozenset(v for v, val in self.x.items() if val == 1)


def edge_relaxation(g: Graph) -> LpProblem:
    """Plain vertex-cover LP: one x_u + x_v >= 1 row per edge, x >= 0."""
    order = g.vertices
    index = {v: j for j, v in enumerate(order)}
    rows = []
    for u, v in g.edges():
        coeffs = [ZERO] * g.n
        coeffs[index[u]] = ONE
        coeffs[index[v]] = ONE
        rows.append(LpRow(tuple(coeffs), ">=", ONE))
    return LpProblem(g.n, tuple(rows))


def cycle_row(cycle: OddCycle, order: tuple[int, ...]) -> LpRow:
    return LpRow(
        tuple(Rat(c) for c in cycle.incidence_vector(order)), ">=", Rat(cycle.rhs)
    )


def separate_odd_cycle(g: Graph, x: Mapping[int, object]):
    """Most-violated odd-cycle inequality at x, or None if all are satisfied.

    Requires x to satisfy every edge inequality so the weights
    w(u,v) = x_u + x_v - 1 are nonnegative. Returns (cycle, violation) where
    violation = (s+1) - sum_{v in cycle} x_v > 0 and the cycle has minimum
    weight among all odd cycles (so it is a most-violated one).
    """
    weights = {}
    for u, v in g.edges():
        w = Rat(x[u]) + Rat(x[v]) - ONE
        if w < 0:
            raise ValueError(f"edge inequality violated at ({u},{v}): {x[u]}+{x[v]} < 1")
        weights[(u, v)] = w

    best_dist = None
    best_walk = None
    for base in g.vertices:
        found = _shortest_odd_closed_walk(g, weights, base)
        if found is None:
            continue
        dist, walk = found
        if best_dist is None or dist < best_dist:
            best_dist, best_walk = dist, walk
    if best_dist is None or best_dist >= 1:
        # Cycle weight >= 1 is exactly the cycle inequality holding.
        return None
    cycle = OddCycle.in_graph(g, _extract_simple_odd_cycle(best_walk))
    total = sum((Rat(x[v]) for v in cycle.vertices), ZERO)
    violation = Rat(cycle.rhs) - total
    if violation <= 0:
        raise AssertionError("extracted cycle must be violated when walk weight < 1")
    return cycle, violation


def _shortest_odd_closed_walk(g: Graph, weights, base: int):
    """Dijkstra from (base, 0) to (base, 1) in the bipartite double cover."""
    src, dst = (base, 0), (base, 1)
    dist = {src: ZERO}
    parent = {}
    heap = [(ZERO, src)]
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist.get(node, d):
            continue
        if node == dst:
            walk = []
            while True:
                walk.append(node[0])
                if node == src:
                    break
                node = parent[node]
            walk.reverse()
            return d, walk
        v, side = node
        for u in g.neighbors(v):
            nd = d + weights[normalize_edge(u, v)]
            nxt = (u, 1 - side)
            old = dist.get(nxt)
            if old is None or nd < old:
                dist[nxt] = nd
                parent[nxt] = node
                heapq.heappush(heap, (nd, nxt))
    return None


def _extract_simple_odd_cycle(walk: list[int]) -> tuple[int, ...]:
    """Shrink a closed odd walk (walk[0] == walk[-1]) to a simple odd cycle.

    A repeated vertex splits the walk into two closed sub-walks of opposite
    parity; recurse on the odd one. Nonnegative weights mean the kept part
    never weighs more than the whole."""
    while True:
        seen = {}
        dup = None
        for idx, v in enumerate(walk[:-1]):
            if v in seen:
                dup = (seen[v], idx)
                break
            seen[v] = idx
        if dup is None:
            return tuple(walk[:-1])
        i, j = dup
        if (j - i) % 2 == 1:
            walk = walk[i : j + 1]  # closed at walk[i] == walk[j]
        else:
            walk = walk[: i + 1] + walk[j + 1 :]


def classify_edges(g: Graph, x: Mapping[int, object]):
    """(active, over-active, small) edge sets at x, all by exact comparison.

    active: x_u + x_v = 1; over-active: x_u + x_v >= 4/3 (boundary included);
    small: argmin over edges of x_u + x_v (empty only for edgeless graphs).
    """
    active = []
    over = []
    small: list[tuple[int, int]] = []
    best = None
    for u, v in g.edges():
        s = Rat(x[u]) + Rat(x[v])
        if s == ONE:
            active.append((u, v))
        if s >= FOUR_THIRDS:
            over.append((u, v))
        if best is None or s < best:
            best, small = s, [(u, v)]
        elif s == best:
            small.append((u, v))
    return tuple(active), tuple(over), tuple(small)


def _dedupe_pool(pool) -> list[OddCycle]:
    seen = set()
    out = []
    for cycle in pool:
        key = cycle.vertex_set
        if key not in seen:
            seen.add(key)
            out.append(cycle)
    return out


def _build_engine(g: Graph, pool) -> tuple[CoveringSimplex, list[LpRow]]:
    order = g.vertices
    base = edge_relaxation(g)
    rows = list(base.rows)
    engine = CoveringSimplex(g.n, [(r.coeffs, r.rhs) for r in rows])
    for cycle in pool:
        row = cycle_row(cycle, order)
        rows.append(row)
        engine.add_ge_row(row.coeffs, row.rhs)
    return engine, rows


def _assemble(g: Graph, engine, rows, pool, rounds) -> ElpSolution:
    order = g.vertices
    problem = LpProblem(g.n, tuple(rows))
    basic = finalize_solution(problem, engine, list(range(len(rows))))
    x = dict(zip(order, basic.values))
    active, over, small = classify_edges(g, x)
    return ElpSolution(
        x=x,
        objective=basic.objective,
        cycle_pool=tuple(pool),
        active_edges=active,
        over_active_edges=over,
        small_edges=small,
        basic=basic,
        rounds=tuple(rounds),
    )


def solve_elp(g: Graph, initial_pool=(), rounds_cap: Optional[int] = None) -> ElpSolution:
    """Cutting-plane optimum of the odd-cycle relaxation on g.

    The returned solution satisfies every edge row and every odd-cycle
    inequality of g (certified by a final separation pass), and its value is
    the exact optimum of the full relaxation. initial_pool seeds the cut pool
    (deduplicated by vertex set).
    """
    if g.n == 0:
        return ElpSolution({}, ZERO, (), (), (), (), None, ())
    cap = rounds_cap if rounds_cap is not None else 10 * g.n
    pool = _dedupe_pool(initial_pool)
    engine, rows = _build_engine(g, pool)
    order = g.vertices
    engine.optimize()
    rounds = []
    seen = {c.vertex_set for c in pool}
    while True:
        x = dict(zip(order, engine.values()))
        found = separate_odd_cycle(g, x)
        if found is None:
            break
        if len(rounds) >= cap:
            raise CutLoopLimitError(f"exceeded {cap} cutting-plane rounds on n={g.n}")
        cycle, violation = found
        if cycle.vertex_set in seen:
            raise AssertionError(f"separation returned pooled cycle {cycle.vertices}")
        seen.add(cycle.vertex_set)
        pool.append(cycle)
        row = cycle_row(cycle, order)
        rows.append(row)
        engine.add_ge_row(row.coeffs, row.rhs)
        engine.optimize()
        rounds.append(CutRound(cycle, violation, engine.objective()))
        log.debug(
            "cut round %d: cycle %s violation %s objective %s",
            len(rounds), cycle.vertices, violation, engine.objective(),
        )
    return _assemble(g, engine, rows, pool, rounds)


def explore_alternate_bfs(
    g: Graph, sol: ElpSolution, pin_cap: Optional[int] = None
) -> tuple[Optional[ElpSolution], int]:
    """Search for an alternate optimum with an active edge by pinning edges.

    For each edge in deterministic order, re-solve with that edge inequality
    forced to equality (adding x_u + x_v <= 1 on top keeps the engine in
    ">=" form). If some pinned optimum matches the unpinned value, return it:
    it has an active edge by construction. Returns (solution or None, number
    of pins tried). Requires sol to have no active edge and no unit value.
    """
    if sol.active_edges:
        raise ValueError("solution already has an active edge")
    if sol.one_vertices:
        raise ValueError("solution has a variable at 1; {0,1}-reduction applies")
    target = sol.objective
    engine, rows = _build_engine(g, sol.cycle_pool)
    engine.optimize()
    if engine.objective() != target:
        raise AssertionError("pool re-solve changed the optimum")
    order = g.vertices
    index = {v: j for j, v in enumerate(order)}
    base_count = len(rows)  # engine rows before the pin
    pins = 0
    for u, v in g.edges():
        if pin_cap is not None and pins >= pin_cap:
            break
        pins += 1
        trial = engine.copy()
        upper = [ZERO] * g.n
        upper[index[u]] = -ONE
        upper[index[v]] = -ONE
        trial.add_ge_row(upper, -ONE)
        pool = list(sol.cycle_pool)
        trial_rows = list(rows)
        seen = {c.vertex_set for c in pool}
        try:
            trial.optimize()
        except InfeasibleError:
            continue
        if trial.objective() != target:
            continue
        # Chase cuts under the pin so the alternate is full-relaxation feasible.
        ok = True
        while True:
            x = dict(zip(order, trial.values()))
            found = separate_odd_cycle(g, x)
            if found is None:
                break
            cycle, _ = found
            if cycle.vertex_set in seen:
                raise AssertionError("separation returned pooled cycle under pin")
            seen.add(cycle.vertex_set)
            pool.append(cycle)
            row = cycle_row(cycle, order)
            trial_rows.append(row)
            trial.add_ge_row(row.coeffs, row.rhs)
            try:
                trial.optimize()
            except InfeasibleError:
                ok = False
                break
            if trial.objective() != target:
                ok = False
                break
        if not ok:
            continue
        pin_row = LpRow(
            tuple(ONE if j in (index[u], index[v]) else ZERO for j in range(g.n)),
            "=",
            ONE,
        )
        alt = _assemble_pinned(g, trial, trial_rows, pin_row, base_count, pool)
        if not alt.active_edges:
            raise AssertionError("pinned alternate lost its active edge")
        return alt, pins
    return None, pins


def _assemble_pinned(
    g: Graph, engine, rows, pin_row, base_count: int, pool
) -> ElpSolution:
    # Engine row order is [base rows, pin, chased cuts]; the problem lists the
    # pin last, so map the engine surpluses back accordingly.
    order = g.vertices
    problem = LpProblem(g.n, tuple(rows) + (pin_row,))
    owner = (
        list(range(base_count)) + [len(rows)] + list(range(base_count, len(rows)))
    )
    basic = finalize_solution(problem, engine, owner)
    x = dict(zip(order, basic.values))
    active, over, small = classify_edges(g, x)
    return ElpSolution(
        x=x,
        objective=basic.objective,
        cycle_pool=tuple(pool),
        active_edges=active,
        over_active_edges=over,
        small_edges=small,
        basic=basic,
        rounds=(),
    )
