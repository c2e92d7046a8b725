"""Undirected simple graphs with stable vertex labels, plus I/O and generators.

Vertex labels are plain ints and survive every surgery operation: a graph
derived by deleting vertices or rewiring an edge keeps the original labels of
all surviving vertices, and a deleted label never comes back in any later
graph of the same run. Graphs are immutable; surgery returns new instances.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

log = logging.getLogger("elpcover.graph")


class GraphFormatError(ValueError):
    """Malformed graph input: bad line, index out of range, or self-loop."""


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OddCycle:
    """A simple cycle of odd length, stored in canonical cyclic order.

    Canonical form: the smallest vertex first, continuing toward its smaller
    cyclic neighbor, so equal vertex sequences compare equal regardless of the
    rotation/direction they were discovered in.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.vertices)
        if len(seq) < 3 or len(seq) % 2 == 0:
            raise ValueError(f"odd cycle needs odd length >= 3, got {len(seq)}")
        if len(set(seq)) != len(seq):
            raise ValueError(f"cycle vertices must be distinct: {seq}")
        object.__setattr__(self, "vertices", _canonical_rotation(seq))

    @classmethod
    def in_graph(cls, g: "Graph", seq: Iterable[int]) -> "OddCycle":
        """Construct and verify that consecutive pairs (cyclically) are edges of g."""
        cycle = cls(tuple(seq))
        for u, v in cycle.cycle_edges():
            if not g.has_edge(u, v):
                raise ValueError(f"({u},{v}) is not an edge of the ambient graph")
        return cycle

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def s(self) -> int:
        return (len(self.vertices) - 1) // 2

    @property
    def rhs(self) -> int:
        """Right-hand side of the cycle's covering inequality, s + 1."""
        return self.s + 1

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def cycle_edges(self) -> tuple[tuple[int, int], ...]:
        seq = self.vertices
        return tuple(
            normalize_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))
        )

    def incidence_vector(self, vertex_order: Iterable[int]) -> tuple[int, ...]:
        members = self.vertex_set
        return tuple(1 if v in members else 0 for v in vertex_order)

    def has_chord_in(self, g: "Graph") -> bool:
        seq = self.vertices
        n = len(seq)
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # cyclically consecutive
                if g.has_edge(seq[i], seq[j]):
                    return True
        return False


def _canonical_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    n = len(seq)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + k) % n] for k in range(n))
    bwd = tuple(seq[(i - k) % n] for k in range(n))
    return min(fwd, bwd)


class Graph:
    """Immutable undirected simple graph over integer vertex labels."""

    __slots__ = ("_adj",)

    def __init__(self, adjacency: dict[int, tuple[int, ...]]):
        # Private; use from_edges / parse_graph / generators.
        self._adj = adjacency

    @classmethod
    def from_edges(
        cls, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()
    ) -> "Graph":
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls({v: tuple(sorted(nbrs)) for v, nbrs in sorted(adj.items())})

    # ------------------------------------------------------------- queries

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)  # insertion order is sorted

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self._adj.get(u)
        return nbrs is not None and v in nbrs

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.edges())

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        verts = self.vertices
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            u = stack.pop()
            for v in self._adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def find_triangle(self) -> Optional[OddCycle]:
        """Lexicographically smallest triangle, or None."""
        for u in self._adj:
            nbrs = self._adj[u]
            for a in range(len(nbrs)):
                v = nbrs[a]
                if v <= u:
                    continue
                for b in range(a + 1, len(nbrs)):
                    w = nbrs[b]
                    if self.has_edge(v, w):
                        return OddCycle((u, v, w))
        return None

    def has_triangle_through(self, i: int, j: int) -> bool:
        if not self.has_edge(i, j):
            return False
        nj = set(self._adj[j])
        return any(s in nj for s in self._adj[i])

    # ------------------------------------------------------------- surgery

    def delete_vertices(self, drop: Iterable[int]) -> "Graph":
        gone = set(drop)
        unknown = gone - self.vertex_set
        if unknown:
            raise KeyError(f"unknown vertices: {sorted(unknown)}")
        return Graph(
            {
                v: tuple(w for w in nbrs if w not in gone)
                for v, nbrs in self._adj.items()
                if v not in gone
            }
        )

    def rewire_active_edge(
        self, i: int, j: int
    ) -> tuple["Graph", frozenset[int], frozenset[int]]:
        """Connect every neighbor of i (except j) to every neighbor of j
        (except i), then delete i and j. Returns the new graph plus the two
        recorded neighbor sets needed later by the cover reconstruction.

        Pairs with s == t (possible only when a triangle runs through (i, j))
        would be self-loops and are skipped; callers that rely on the value
        accounting must rule that case out beforehand.
        """
        if not self.has_edge(i, j):
            raise ValueError(f"({i},{j}) is not an edge")
        d_i = frozenset(s for s in self._adj[i] if s != j)
        d_j = frozenset(t for t in self._adj[j] if t != i)
        survivors = [v for v in self._adj if v != i and v != j]
        edges = [
            (u, v) for (u, v) in self.edges() if u not in (i, j) and v not in (i, j)
        ]
        edges.extend((s, t) for s in d_i for t in d_j if s != t)
        return Graph.from_edges(survivors, edges), d_i, d_j

    # ------------------------------------------------------------- dunder

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, self.edge_list()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ------------------------------------------------------------------ parsing


def detect_format(text: str) -> str:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        return "dimacs" if stripped.startswith("p") else "edgelist"
    return "edgelist"


def parse_graph(text: str, format: str = "dimacs") -> Graph:
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown format {format!r}")


def _parse_dimacs(text: str) -> Graph:
    n = None
    declared_m = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4:
                raise GraphFormatError(f"line {lineno}: malformed problem line {line!r}")
            if fields[1] != "edge":
                log.warning("problem line declares %r, expected 'edge'", fields[1])
            try:
                n, declared_m = int(fields[2]), int(fields[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: {line!r}") from exc
        elif fields[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: {line!r}") from exc
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(
                    f"line {lineno}: vertex out of range 1..{n}: {line!r}"
                )
            edge = normalize_edge(u, v)
            if edge in edges:
                log.warning("duplicate edge %s deduplicated", edge)
            edges.add(edge)
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {line!r}")
    if n is None:
        raise GraphFormatError("missing problem line")
    if declared_m is not None and declared_m != len(edges):
        log.warning("problem line declares %d edges, found %d", declared_m, len(edges))
    return Graph.from_edges(range(1, n + 1), sorted(edges))


def _parse_edgelist(text: str) -> Graph:
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {line!r}") from exc
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        edge = normalize_edge(u, v)
        if edge in edges:
            log.warning("duplicate edge %s deduplicated", edge)
        edges.add(edge)
    return Graph.from_edges((), sorted(edges))


def to_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    """DIMACS rendering; vertices are relabeled 1..n in sorted label order."""
    order = g.vertices
    index = {v: i + 1 for i, v in enumerate(order)}
    lines = [f"c {c}" for c in comments]
    if any(index[v] != v for v in order):
        lines.append(f"c original labels: {' '.join(str(v) for v in order)}")
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {index[u]} {index[v]}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def to_edgelist(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# --------------------------------------------------------------- generators


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(
        range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)]
    )


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(
        range(1, n + 1),
        [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)],
    )


def petersen_graph() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(5 + i, 5 + (i + 1) % 5 + 1) for i in range(1, 6)]
    return Graph.from_edges(range(1, 11), outer + spokes + inner)


def torus_grid_graph(a: int, b: int) -> Graph:
    """a x b grid with wraparound in both directions: a*b vertices, 2ab edges."""
    if a < 3 or b < 3:
        raise ValueError("torus grid needs a, b >= 3")
    label = lambda i, j: i * b + j + 1
    edges = []
    for i in range(a):
        for j in range(b):
            edges.append((label(i, j), label((i + 1) % a, j)))
            edges.append((label(i, j), label(i, (j + 1) % b)))
    return Graph.from_edges(range(1, a * b + 1), edges)


def random_gnp_graph(n: int, p: float, seed: int) -> Graph:
    if n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1 and p in [0,1]")
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < p
    ]
    return Graph.from_edges(range(1, n + 1), edges)


def random_triangle_free_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p), then repeatedly delete one random edge of the lexicographically
    first remaining triangle until triangle-free. Deterministic for a seed."""
    rng = random.Random(seed)
    g = random_gnp_graph(n, p, seed)
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def first_triangle():
        for u in sorted(adj):
            for v in sorted(adj[u]):
                if v <= u:
                    continue
                for w in sorted(adj[u]):
                    if w > v and w in adj[v]:
                        return u, v, w
        return None

    while (tri := first_triangle()) is not None:
        u, v, w = tri
        a, b = rng.choice([(u, v), (u, w), (v, w)])
        adj[a].discard(b)
        adj[b].discard(a)
    return Graph.from_edges(
        adj, [(u, v) for u in adj for v in adj[u] if u < v]
    )


_GEN_SPEC = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([^()]*)\s*\))?\s*$")

GENERATORS = {
    "cycle": (cycle_graph, ("int",)),
    "path": (path_graph, ("int",)),
    "complete": (complete_graph, ("int",)),
    "petersen": (petersen_graph, ()),
    "torus_grid": (torus_grid_graph, ("int", "int")),
    "random_triangle_free": (random_triangle_free_graph, ("int", "float", "int")),
    "gnp": (random_gnp_graph, ("int", "float", "int")),
}


def generate(spec: str) -> tuple[Graph, str]:
    """Build a graph from a generator spec like "cycle(5)" or "petersen".

    Returns the graph and a normalized name for reports/filenames.
    """
    match = _GEN_SPEC.match(spec)
    if not match:
        raise ValueError(f"bad generator spec {spec!r}")
    name, arg_text = match.group(1), match.group(2)
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choices: {sorted(GENERATORS)}")
    factory, arg_kinds = GENERATORS[name]
    raw_args = [a.strip() for a in arg_text.split(",")] if arg_text else []
    if len(raw_args) != len(arg_kinds):
        raise ValueError(f"{name} expects {len(arg_kinds)} argument(s), got {len(raw_args)}")
    args = [int(a) if kind == "int" else float(a) for a, kind in zip(raw_args, arg_kinds)]
    canonical = name if not args else f"{name}({','.join(raw_args)})"
    return factory(*args), canonical
