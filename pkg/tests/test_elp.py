import random
from fractions import Fraction

import pytest

from elpcover._rat import Rat
from elpcover.elp import (
    ElpSolution,
    classify_edges,
    explore_alternate_bfs,
    separate_odd_cycle,
    solve_elp,
)
from elpcover.graph import (
    Graph,
    OddCycle,
    complete_graph,
    cycle_graph,
    petersen_graph,
    torus_grid_graph,
)
from elpcover.oracles import enumerate_odd_cycles, exact_vc
from exact_oracles import (
    circulant,
    nx_min_odd_cycle_weight,
    nx_odd_cycles,
    random_connected_gnp,
)


def test_separation_c5_all_half():
    c5 = cycle_graph(5)
    x = {v: Rat(1, 2) for v in c5.vertices}
    cycle, violation = separate_odd_cycle(c5, x)
    assert cycle.vertex_set == frozenset(c5.vertices)
    assert violation == Rat(1, 2)  # 3 - 5/2


def test_separation_none_on_bipartite():
    c4 = cycle_graph(4)
    x = {v: Rat(1, 2) for v in c4.vertices}
    assert separate_odd_cycle(c4, x) is None


def test_separation_petersen_matches_bruteforce():
    pet = petersen_graph()
    x = {v: Rat(1, 2) for v in pet.vertices}
    cycle, violation = separate_odd_cycle(pet, x)
    assert cycle.length == 5 and violation == Rat(1, 2)
    # brute-force minimum over all odd cycles (networkx route)
    assert nx_min_odd_cycle_weight(pet, x) == 0
    weight = sum(x[u] + x[v] - 1 for u, v in cycle.cycle_edges())
    assert weight == 0


def test_separation_requires_edge_feasibility():
    with pytest.raises(ValueError):
        separate_odd_cycle(complete_graph(2), {1: Rat(0), 2: Rat(0)})


def test_separation_equivalence_random(subtests=None):
    # Verdict and minimum weight agree with full enumeration.
    rng = random.Random(99)
    values = [Rat(1, 2), Rat(1, 2), Rat(3, 5), Rat(2, 3), Rat(1)]
    for trial in range(60):
        g = random_connected_gnp(rng.randint(3, 9), rng.uniform(0.3, 0.7), rng)
        x = {v: values[rng.randrange(len(values))] for v in g.vertices}
        found = separate_odd_cycle(g, x)
        best = nx_min_odd_cycle_weight(g, x)
        if found is None:
            assert best is None or Fraction(str(best)) >= 1
        else:
            cycle, violation = found
            weight = sum(Rat(x[u]) + Rat(x[v]) - 1 for u, v in cycle.cycle_edges())
            assert Fraction(str(weight)) == Fraction(str(best))
            assert violation == (Rat(1) - weight) / 2
            assert violation > 0


def test_elp_values_on_odd_cycles():
    for s in range(1, 7):
        sol = solve_elp(cycle_graph(2 * s + 1))
        assert sol.objective == s + 1


def test_elp_k2_and_empty():
    sol = solve_elp(complete_graph(2))
    assert sol.objective == 1 and sorted(sol.x.values()) == [0, 1]
    empty = solve_elp(Graph.from_edges())
    assert empty.objective == 0 and empty.x == {}


def test_elp_torus_value_and_feasibility_of_uniform():
    t = torus_grid_graph(5, 5)
    sol = solve_elp(t)
    assert sol.objective <= 15  # all-3/5 is feasible with value 15
    three_fifths = {v: Rat(3, 5) for v in t.vertices}
    for u, v in t.edges():
        assert three_fifths[u] + three_fifths[v] >= 1
    for cycle in enumerate_odd_cycles(t, max_len=9, chordless_only=True):
        assert sum(three_fifths[v] for v in cycle.vertices) >= cycle.rhs
    assert sol.objective == exact_vc(t).opt_size == 15


def test_elp_final_x_satisfies_every_odd_cycle():
    # Dominance consequence: the certified solution satisfies all enumerated
    # odd-cycle inequalities, pooled or not.
    rng = random.Random(17)
    for _ in range(25):
        g = random_connected_gnp(rng.randint(4, 9), rng.uniform(0.3, 0.8), rng)
        sol = solve_elp(g)
        for members in nx_odd_cycles(g):
            # Every odd cycle on this vertex set imposes the same rhs.
            s = (len(members) - 1) // 2
            assert sum(sol.x[v] for v in members) >= s + 1


def test_elp_cut_objectives_monotone():
    rng = random.Random(71)
    for _ in range(20):
        g = random_connected_gnp(rng.randint(4, 10), rng.uniform(0.2, 0.5), rng)
        sol = solve_elp(g)
        objs = [r.objective_after for r in sol.rounds]
        assert objs == sorted(objs)


def test_elp_cycle_pool_dedupes_by_vertex_set():
    g = cycle_graph(5)
    cycle = OddCycle((1, 2, 3, 4, 5))
    sol = solve_elp(g, initial_pool=[cycle, OddCycle((2, 3, 4, 5, 1))])
    assert len(sol.cycle_pool) == 1
    assert sol.objective == 3


def test_elp_sandwich_bounds():
    from elpcover.elp import edge_relaxation
    from elpcover.simplex import solve

    rng = random.Random(13)
    for _ in range(30):
        g = random_connected_gnp(rng.randint(3, 9), rng.uniform(0.3, 0.8), rng)
        lp = solve(edge_relaxation(g)).objective
        elp = solve_elp(g).objective
        opt = exact_vc(g).opt_size
        assert lp <= elp <= opt
        assert 2 * lp >= opt


def test_classify_edges():
    k2 = complete_graph(2)
    active, over, small = classify_edges(k2, {1: Rat(1), 2: Rat(0)})
    assert active == ((1, 2),) and over == () and small == ((1, 2),)

    tri = complete_graph(3)
    x = {1: Rat(2, 3), 2: Rat(2, 3), 3: Rat(2, 3)}
    active, over, small = classify_edges(tri, x)
    assert active == ()
    assert over == ((1, 2), (1, 3), (2, 3))  # 4/3 boundary is over-active
    assert small == ((1, 2), (1, 3), (2, 3))

    t = torus_grid_graph(5, 5)
    x = {v: Rat(3, 5) for v in t.vertices}
    active, over, small = classify_edges(t, x)
    assert active == () and over == ()  # 6/5 < 4/3
    assert set(small) == set(t.edges())


def test_classify_active_edges_are_small():
    rng = random.Random(3)
    for _ in range(40):
        g = random_connected_gnp(rng.randint(3, 9), rng.uniform(0.3, 0.8), rng)
        sol = solve_elp(g)
        if sol.active_edges:
            assert set(sol.active_edges) <= set(sol.small_edges)


def test_explore_alternate_finds_active_edge_on_c5():
    # All-3/5 on C5 is optimal (value 3) with no active edge and no unit
    # value; pinning any edge keeps the optimum, giving an integral alternate.
    c5 = cycle_graph(5)
    base = solve_elp(c5)
    assert base.objective == 3
    uniform = {v: Rat(3, 5) for v in c5.vertices}
    active, over, small = classify_edges(c5, uniform)
    assert active == ()
    fake = ElpSolution(
        x=uniform,
        objective=Rat(3),
        cycle_pool=base.cycle_pool,
        active_edges=active,
        over_active_edges=over,
        small_edges=small,
        basic=None,
    )
    alt, pins = explore_alternate_bfs(c5, fake)
    assert alt is not None and pins == 1  # first pin already succeeds
    assert alt.objective == 3 and alt.active_edges


def test_explore_alternate_fails_on_hard_circulant():
    # C11(1,3): unique-value fractional optimum 33/5; every pin raises it.
    g = circulant(11, (1, 3))
    sol = solve_elp(g)
    assert sol.objective == Rat(33, 5)
    assert not sol.active_edges and not sol.one_vertices
    alt, pins = explore_alternate_bfs(g, sol)
    assert alt is None and pins == g.m


def test_explore_alternate_respects_pin_cap():
    g = circulant(11, (1, 3))
    sol = solve_elp(g)
    alt, pins = explore_alternate_bfs(g, sol, pin_cap=5)
    assert alt is None and pins == 5


def test_explore_alternate_precondition():
    sol = solve_elp(complete_graph(2))
    with pytest.raises(ValueError):
        explore_alternate_bfs(complete_graph(2), sol)
