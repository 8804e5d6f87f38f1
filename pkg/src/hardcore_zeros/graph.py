"""Immutable simple graphs on dense vertex indices ``0..n-1``.

Vertex sets are plain sorted tuples of ints.  Internally most algorithms
work on integer bitmasks (bit ``v`` set iff vertex ``v`` is a member);
``Graph.masks`` gives the adjacency bitmask of every vertex.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction, vertex index or edge-list input."""


class Graph:
    __slots__ = ("n", "adj", "_masks", "_hash")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        # Trusted constructor; use build_graph for validated input.
        self.n = n
        self.adj = tuple(tuple(a) for a in adj)
        self._masks = None
        self._hash = None

    @property
    def masks(self) -> tuple[int, ...]:
        if self._masks is None:
            self._masks = tuple(sum(1 << w for w in a) for a in self.adj)
        return self._masks

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(self.has_edge(u, v)) for v in range(self.n)] for u in range(self.n)]

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of ``G[mask]`` as bitmasks, ordered by least vertex."""
        if mask is None:
            mask = self.full_mask
        return components_of_mask(self.masks, mask)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def components_of_mask(masks: Sequence[int], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = masks[v] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validated constructor; duplicate edges collapse, loops are rejected."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs])


def vertex_set(G: Graph, U: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(U)))
    for v in out:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range for n={G.n}")
    return out


def boundary(G: Graph, U: Iterable[int]) -> tuple[int, ...]:
    """Vertices outside ``U`` adjacent to some vertex of ``U``."""
    U = vertex_set(G, U)
    um = mask_of(U)
    b = 0
    for u in U:
        b |= G.masks[u]
    return members(b & ~um)


def induced_subgraph(G: Graph, U: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``G[U]`` relabelled to ``0..|U|-1``; ``mapping[i]`` is the original vertex."""
    mapping = vertex_set(G, U)
    index = {v: i for i, v in enumerate(mapping)}
    adj = [[index[w] for w in G.adj[v] if w in index] for v in mapping]
    return Graph(len(mapping), adj), mapping


def induced_by_mask(G: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    return induced_subgraph(G, members(mask))


def lexicographic_blowup(G: Graph, s: int, mode: str = "clique") -> Graph:
    """``G[K_s]`` (mode ``"clique"``) or ``G[sK_1]`` (mode ``"independent"``).

    Vertex ``(i, j)`` gets index ``i*s + j``.
    """
    if s < 1:
        raise GraphError("blow-up size must be >= 1")
    if mode not in ("clique", "independent"):
        raise GraphError(f"unknown blow-up mode {mode!r}")
    edges = []
    for i in range(G.n):
        if mode == "clique":
            edges.extend((i * s + a, i * s + b) for a, b in combinations(range(s), 2))
        for i2 in G.adj[i]:
            if i < i2:
                edges.extend((i * s + a, i2 * s + b) for a in range(s) for b in range(s))
    return build_graph(G.n * s, edges)


def line_graph(G: Graph) -> Graph:
    es = G.edges()
    out = []
    for a, b in combinations(range(len(es)), 2):
        if set(es[a]) & set(es[b]):
            out.append((a, b))
    return build_graph(len(es), out)


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(n: int, p: float, rng: random.Random, max_degree: int | None = None) -> Graph:
    """Erdos-Renyi style sample, optionally dropping edges that would exceed ``max_degree``."""
    deg = [0] * n
    edges = []
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() >= p:
            continue
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            continue
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return build_graph(n, edges)


# -- edge-list text format -------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphError(f"bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphError(f"bad edge line {ln!r}") from exc
    return build_graph(n, edges)


def format_edge_list(G: Graph) -> str:
    es = G.edges()
    return "\n".join([f"{G.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(G: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(G))
