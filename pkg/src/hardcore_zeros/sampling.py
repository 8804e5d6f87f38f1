"""Random instances for property tests and ensemble runs.

Every sampler takes an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .gaussian import GaussianRational
from .graph import Graph, build_graph, line_graph
from .recognize import (
    SubdividedClawSpec,
    contains_induced,
    in_class_cls,
    is_claw_free,
    max_clique_size,
    subdivided_claw,
)
from .regions import in_parabola


def _grow(n: int, rng: random.Random, accept, p: float, max_degree: int | None) -> Graph:
    """Add shuffled candidate edges one at a time, keeping each only if ``accept`` still holds."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    edges: list[tuple[int, int]] = []
    deg = [0] * n
    for u, v in pairs:
        if rng.random() >= p:
            continue
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            continue
        G = build_graph(n, edges + [(u, v)])
        if accept(G):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return build_graph(n, edges)


def random_claw_free_graph(n: int, rng: random.Random, p: float = 0.6,
                           max_degree: int | None = None, max_clique: int | None = None) -> Graph:
    def ok(G):
        return is_claw_free(G) and (max_clique is None or max_clique_size(G) <= max_clique)

    return _grow(n, rng, ok, p, max_degree)


def random_cls_graph(n: int, k: int, rng: random.Random, p: float = 0.6, tries: int = 100) -> Graph:
    """A random member of the claw-free, clique-bounded, simplicial class for ``k``."""
    for _ in range(tries):
        G = random_claw_free_graph(n, rng, p, max_clique=k)
        if in_class_cls(G, k):
            return G
    raise RuntimeError(f"no graph in the class found after {tries} tries (n={n}, k={k})")


def random_sttt_free_graph(n: int, t: int, rng: random.Random, max_degree: int = 3, p: float = 0.7) -> Graph:
    H = subdivided_claw(SubdividedClawSpec.symmetric(t))
    return _grow(n, rng, lambda G: not contains_induced(G, H)[0], p, max_degree)


def random_line_graph(rng: random.Random, base_vertices: int = 7, max_edges: int = 12, p: float = 0.4) -> Graph:
    """Line graph of a random simple graph with at most ``max_edges`` edges."""
    pairs = list(combinations(range(base_vertices), 2))
    rng.shuffle(pairs)
    edges = [e for e in pairs if rng.random() < p][:max_edges]
    return line_graph(build_graph(base_vertices, edges))


def random_rational(rng: random.Random, lo, hi, denominator: int = 1000) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    return lo + (hi - lo) * Fraction(rng.randrange(denominator + 1), denominator)


def random_gaussian(rng: random.Random, lo=-2, hi=2, denominator: int = 97) -> GaussianRational:
    return GaussianRational(random_rational(rng, lo, hi, denominator), random_rational(rng, lo, hi, denominator))


def random_weight_in_parabola(k, rng: random.Random, x_max=4, denominator: int = 10_000) -> GaussianRational:
    """A Gaussian rational strictly inside ``R(k)`` with real part at most ``x_max``."""
    k = Fraction(k)
    x_min = -1 / (4 * k)
    while True:
        x = random_rational(rng, x_min, x_max, denominator)
        bound = x / k + 1 / (4 * k * k)
        if bound <= 0:
            continue
        # |y| < sqrt(bound): draw y^2 below bound using a rational under-approximation
        y_max = Fraction(int(float(bound) ** 0.5 * denominator), denominator)
        y = random_rational(rng, -y_max, y_max, denominator)
        z = GaussianRational(x, y)
        if in_parabola(z, k):
            return z


__all__ = [
    "random_claw_free_graph",
    "random_cls_graph",
    "random_gaussian",
    "random_line_graph",
    "random_rational",
    "random_sttt_free_graph",
    "random_weight_in_parabola",
]
