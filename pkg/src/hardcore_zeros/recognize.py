"""Graph-class recognition: induced subgraphs, claws, simplicial cliques, clique covers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, build_graph


@dataclass(frozen=True, order=True)
class SubdividedClawSpec:
    """Arm lengths ``i <= j <= k`` of ``S_{i,j,k}``; ``(1, 1, 1)`` is the claw."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j <= self.k:
            raise ValueError(f"need 1 <= i <= j <= k, got ({self.i}, {self.j}, {self.k})")

    @classmethod
    def symmetric(cls, t: int) -> SubdividedClawSpec:
        return cls(t, t, t)


CLAW = SubdividedClawSpec(1, 1, 1)


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple[tuple[int, ...], ...]

    @property
    def k0(self) -> int:
        """Size of the largest clique in the cover."""
        return max((len(c) for c in self.cliques), default=0)

    def is_valid_for(self, G: Graph) -> bool:
        count = [0] * G.n
        covered = set()
        for c in self.cliques:
            for u, v in combinations(c, 2):
                if not G.has_edge(u, v):
                    return False
                covered.add((u, v))
            for v in c:
                count[v] += 1
        return all(x <= 2 for x in count) and all(e in covered for e in G.edges())


def subdivided_claw(spec: SubdividedClawSpec) -> Graph:
    edges = []
    nxt = 1
    for arm in (spec.i, spec.j, spec.k):
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


# -- induced subgraph search -----------------------------------------------


def _search_order(H: Graph) -> list[int]:
    """BFS order from the highest-degree vertex so every later vertex has a mapped neighbour."""
    order: list[int] = []
    seen = set()
    for start in sorted(range(H.n), key=lambda v: (-H.degree(v), v)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(H.adj[v], key=lambda x: (-H.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def contains_induced(G: Graph, H: Graph) -> tuple[bool, dict[int, int] | None]:
    """Search for an induced copy of ``H`` in ``G``.

    Returns ``(found, embedding)`` with ``embedding[h] = g`` when found.
    """
    if H.n == 0:
        return True, {}
    if H.n > G.n:
        return False, None
    order = _search_order(H)
    hm, gm = H.masks, G.masks
    pos = {h: i for i, h in enumerate(order)}
    # for each h, the earlier-mapped vertices and whether they must be adjacent
    constraints = [[(order[j], bool(hm[h] >> order[j] & 1)) for j in range(pos[h])] for h in order]
    mapping: dict[int, int] = {}
    used = 0

    def extend(idx: int) -> bool:
        nonlocal used
        if idx == len(order):
            return True
        h = order[idx]
        cons = constraints[idx]
        anchor = next((m for m, adj in cons if adj), None)
        if anchor is not None:
            cand = gm[mapping[anchor]] & ~used
        else:
            cand = G.full_mask & ~used
        dh = H.degree(h)
        while cand:
            low = cand & -cand
            g = low.bit_length() - 1
            cand ^= low
            if G.degree(g) < dh:
                continue
            if all(bool(gm[g] >> mapping[m] & 1) == adj for m, adj in cons):
                mapping[h] = g
                used |= low
                if extend(idx + 1):
                    return True
                used &= ~low
                del mapping[h]
        return False

    if extend(0):
        return True, dict(mapping)
    return False, None


def is_subdivided_claw_free(G: Graph, spec: SubdividedClawSpec | tuple[int, int, int]) -> bool:
    if not isinstance(spec, SubdividedClawSpec):
        spec = SubdividedClawSpec(*spec)
    return not contains_induced(G, subdivided_claw(spec))[0]


def is_claw_free(G: Graph) -> bool:
    # direct check: no vertex has three pairwise non-adjacent neighbours
    gm = G.masks
    for v in range(G.n):
        nb = G.adj[v]
        if len(nb) < 3:
            continue
        for a, b, c in combinations(nb, 3):
            if not (gm[a] >> b & 1) and not (gm[a] >> c & 1) and not (gm[b] >> c & 1):
                return False
    return True


# -- cliques ---------------------------------------------------------------


def is_clique_mask(G: Graph, mask: int) -> bool:
    gm = G.masks
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if (mask & ~low) & ~gm[v]:
            return False
    return True


def max_clique_size(G: Graph) -> int:
    """Exact clique number by branch and bound on bitmasks."""
    gm = G.masks
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & gm[v])

    expand(0, G.full_mask)
    return best


def iter_cliques(G: Graph, mask: int | None = None, max_size: int | None = None):
    """All nonempty cliques inside ``mask`` as sorted tuples, in lexicographic order."""
    gm = G.masks
    if mask is None:
        mask = G.full_mask

    def rec(clique: tuple[int, ...], cand: int):
        yield clique
        if max_size is not None and len(clique) >= max_size:
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from rec(clique + (v,), cand & gm[v])

    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        # only larger vertices as extensions: each clique appears once, lexicographically
        yield from rec((v,), gm[v] & mask & ~((low << 1) - 1))


def is_simplicial_clique(G: Graph, K, within: int | None = None) -> bool:
    """``K`` is a clique and each member's neighbours outside ``K`` form a clique.

    ``within`` restricts the ambient graph to ``G[within]``.
    """
    if within is None:
        within = G.full_mask
    km = 0
    for v in K:
        km |= 1 << v
    if km & ~within or not is_clique_mask(G, km):
        return False
    return all(is_clique_mask(G, G.masks[v] & within & ~km) for v in K)


def find_simplicial_cliques(G: Graph, max_size: int | None = None, mask: int | None = None) -> list[tuple[int, ...]]:
    """Every simplicial clique (singletons included), lexicographically ordered.

    ``max_size`` defaults to the clique number.  ``mask`` restricts to ``G[mask]``.
    """
    if mask is None:
        mask = G.full_mask
    out = [K for K in iter_cliques(G, mask, max_size) if is_simplicial_clique(G, K, mask)]
    return sorted(out)


def first_simplicial_clique(G: Graph, mask: int) -> tuple[int, ...] | None:
    """Some simplicial clique of ``G[mask]`` (searched in lexicographic clique order)."""
    for K in iter_cliques(G, mask):
        if is_simplicial_clique(G, K, mask):
            return K
    return None


def in_class_cls(G: Graph, k: int) -> bool:
    """Claw-free, clique number at most ``k``, and a simplicial clique in every component."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_claw_free(G) or max_clique_size(G) > k:
        return False
    return all(first_simplicial_clique(G, comp) is not None for comp in G.components())


# -- line graphs of multigraphs --------------------------------------------


def multigraph_line_cover(G: Graph) -> CliqueCover | None:
    """Clique cover with every edge inside a clique and every vertex in at most two cliques.

    Such a cover exists iff ``G`` is the line graph of a multigraph.  Backtracking
    over the first uncovered edge; candidate cliques are tried largest first,
    then lexicographically.  Isolated vertices get singleton cliques.
    """
    all_cliques = [c for c in iter_cliques(G) if len(c) >= 2]
    by_edge: dict[tuple[int, int], list[tuple[int, ...]]] = {e: [] for e in G.edges()}
    for c in all_cliques:
        for e in combinations(c, 2):
            by_edge[e].append(c)
    for e in by_edge:
        by_edge[e].sort(key=lambda c: (-len(c), c))
    edges = G.edges()
    count = [0] * G.n
    chosen: list[tuple[int, ...]] = []
    covered: set[tuple[int, int]] = set()

    def saturated_ok(c: tuple[int, ...]) -> bool:
        # a vertex that has used both slots must have every incident edge covered
        for v in c:
            if count[v] == 2:
                for w in G.adj[v]:
                    if (min(v, w), max(v, w)) not in covered:
                        return False
        return True

    def solve(start: int) -> bool:
        i = start
        while i < len(edges) and edges[i] in covered:
            i += 1
        if i == len(edges):
            return True
        for c in by_edge[edges[i]]:
            if any(count[v] >= 2 for v in c):
                continue
            new = [e for e in combinations(c, 2) if e not in covered]
            for v in c:
                count[v] += 1
            covered.update(new)
            chosen.append(c)
            if saturated_ok(c) and solve(i + 1):
                return True
            chosen.pop()
            covered.difference_update(new)
            for v in c:
                count[v] -= 1
        return False

    if not solve(0):
        return None
    isolated = [(v,) for v in range(G.n) if not G.adj[v]]
    return CliqueCover(tuple(chosen) + tuple(isolated))


__all__ = [
    "CLAW",
    "CliqueCover",
    "SubdividedClawSpec",
    "contains_induced",
    "find_simplicial_cliques",
    "first_simplicial_clique",
    "in_class_cls",
    "is_claw_free",
    "is_clique_mask",
    "is_simplicial_clique",
    "is_subdivided_claw_free",
    "iter_cliques",
    "max_clique_size",
    "multigraph_line_cover",
    "subdivided_claw",
]
