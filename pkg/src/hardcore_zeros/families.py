"""Graph families whose zeros accumulate on region boundaries.

Alternating-weight cycles and their clique blow-ups, sparse (independent)
blow-ups of cycles, complete multipartite graphs ``K(a, b; n, m)`` and
subdivided binary trees with their occupation-ratio dynamics.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .gaussian import GaussianRational, format_pair
from .graph import Graph, GraphError, build_graph, cycle_graph, lexicographic_blowup
from .indpoly import PartitionFunction, cycle_eigenvalues, cycle_transfer_eval, poly_residual, poly_roots
from .recognize import SubdividedClawSpec, subdivided_claw

POLE_GUARD = 1e-13


# -- constructors ----------------------------------------------------------


def make_cycle(n2: int) -> Graph:
    if n2 < 4 or n2 % 2:
        raise GraphError(f"only even cycles of length >= 4 are supported, got {n2}")
    return cycle_graph(n2)


def make_path_power(nv: int, d: int) -> Graph:
    """Path on ``nv`` vertices with every pair at distance ``<= d`` joined."""
    if nv < 1 or d < 1:
        raise GraphError("need nv >= 1 and d >= 1")
    return build_graph(nv, [(i, j) for i in range(nv) for j in range(i + 1, min(nv, i + d + 1))])


@dataclass(frozen=True)
class MultipartiteSpec:
    """``K(a, b; n, m)``: ``a`` parts of size ``n`` and ``b`` parts of size ``m``, all parts joined."""

    a: int
    b: int
    n: int
    m: int

    def __post_init__(self):
        if min(self.a, self.b, self.n, self.m) < 1:
            raise ValueError("multipartite parameters must all be >= 1")

    @property
    def part_sizes(self) -> list[int]:
        return [self.n] * self.a + [self.m] * self.b


def make_multipartite(spec: MultipartiteSpec | tuple) -> Graph:
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(*spec)
    part = []
    for idx, size in enumerate(spec.part_sizes):
        part.extend([idx] * size)
    n = len(part)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def make_subdivided_claw(spec: SubdividedClawSpec | tuple) -> Graph:
    if not isinstance(spec, SubdividedClawSpec):
        spec = SubdividedClawSpec(*spec)
    return subdivided_claw(spec)


def tree_vertex_count(d: int, k: int) -> int:
    return 2 ** (d + 1) - 1 + 2 * k * (2 ** (d + 1) - 2)


def make_tree_T(d: int, k: int) -> Graph:
    """Complete binary tree of depth ``d`` with every edge subdivided ``2k`` times; root is 0."""
    if d < 0 or k < 0:
        raise GraphError("need d >= 0 and k >= 0")
    edges = []
    count = 1
    frontier = [0]
    for _ in range(d):
        nxt = []
        for parent in frontier:
            for _child in range(2):
                prev = parent
                for _ in range(2 * k + 1):
                    edges.append((prev, count))
                    prev = count
                    count += 1
                nxt.append(prev)
        frontier = nxt
    return build_graph(count, edges)


# -- weighted cycles -----------------------------------------------------------


@dataclass(frozen=True)
class CycleZeroSolution:
    """``lambda = a + bi`` on even vertices and ``mu = a - bi`` on odd vertices of ``C_{2n}``."""

    a: float
    n: int
    b: float
    b_squared: object  # Fraction when n == 2 and a is rational, else float

    @property
    def valid(self) -> bool:
        return 4 * self.b_squared > 4 * self.a + 1

    @property
    def lam(self) -> complex:
        return complex(self.a, self.b)

    @property
    def mu(self) -> complex:
        return complex(self.a, -self.b)

    def residual(self):
        return cycle_transfer_eval(self.n, self.lam, self.mu)

    def relative_residual(self) -> float:
        alpha, beta = cycle_eigenvalues(self.lam, self.mu)
        return abs(self.residual()) / max(abs(alpha), abs(beta)) ** self.n


def cycle_zero_weights(a, n: int) -> CycleZeroSolution:
    """Solve ``4b^2 = ((2a+1) tan(pi/2n))^2 + 4a + 1`` for ``b > 0``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if a < 0:
        raise ValueError("a must be >= 0")
    if n == 2 and isinstance(a, numbers.Rational):
        # tan(pi/4) = 1, so b^2 is rational
        a = Fraction(a)
        b2 = ((2 * a + 1) ** 2 + 4 * a + 1) / 4
        return CycleZeroSolution(float(a), n, math.sqrt(b2), b2)
    with mpmath.workprec(200):
        aa = mpmath.mpf(a)
        b2 = (((2 * aa + 1) * mpmath.tan(mpmath.pi / (2 * n))) ** 2 + 4 * aa + 1) / 4
        return CycleZeroSolution(float(aa), n, float(mpmath.sqrt(b2)), float(b2))


def cycle_b_sequence(a, ns) -> list[float]:
    return [cycle_zero_weights(a, n).b for n in ns]


# -- blow-ups ------------------------------------------------------------------


def blowup_reduce_clique(weights, s: int) -> list:
    """Per-class sums ``lambda'_i = sum_j lambda_{ij}`` for ``G[K_s]`` (index ``i*s + j``)."""
    weights = list(weights)
    if s < 1 or len(weights) % s:
        raise ValueError(f"weight vector of length {len(weights)} is not a multiple of s={s}")
    return [sum(weights[i * s:(i + 1) * s][1:], weights[i * s]) for i in range(len(weights) // s)]


def blowup_reduce_independent(weights, s: int) -> list:
    """Per-class ``prod_j (1 + lambda_{ij}) - 1`` for ``G[sK_1]``."""
    weights = list(weights)
    if s < 1 or len(weights) % s:
        raise ValueError(f"weight vector of length {len(weights)} is not a multiple of s={s}")
    out = []
    for i in range(len(weights) // s):
        prod = 1 + weights[i * s]
        for w in weights[i * s + 1:(i + 1) * s]:
            prod = prod * (1 + w)
        out.append(prod - 1)
    return out


def scale_weights_for_blowup(z, s: int):
    if s < 1:
        raise ValueError("s must be >= 1")
    if isinstance(z, (numbers.Rational, GaussianRational)):
        return GaussianRational.coerce(z) / s
    return z / s


def lift_clique_weights(base_weights, s: int) -> list:
    """Give each of the ``s`` copies of vertex ``i`` weight ``base_weights[i] / s``."""
    return [scale_weights_for_blowup(w, s) for w in base_weights for _ in range(s)]


# -- sparse blow-up counterexample ---------------------------------------------


@dataclass
class SparseCounterexample:
    eps: float
    W: int
    delta: float
    n: int
    a: int
    b: float
    graph: Graph = field(repr=False)
    weights: list = field(repr=False)

    @property
    def z(self) -> complex:
        """``z_delta = (2W+1) + (W+1) delta i``, the reduced weight on even cycle positions."""
        return complex(2 * self.W + 1, (self.W + 1) * self.delta)

    def transfer_residual(self) -> complex:
        return cycle_transfer_eval(self.n, self.z, self.z.conjugate())

    def relative_residual(self) -> float:
        alpha, beta = cycle_eigenvalues(self.z, self.z.conjugate())
        return abs(self.transfer_residual()) / max(abs(alpha), abs(beta)) ** self.n

    def to_text(self) -> str:
        head = (f"# sparse eps={self.eps!r} W={self.W} delta={self.delta!r} n={self.n} "
                f"a={self.a} b={self.b!r}\n")
        return head + "".join(f"{v} {format_pair(w, 17)}\n" for v, w in enumerate(self.weights))


def find_sparse_counterexample(eps: float, n_max: int = 100_000) -> SparseCounterexample:
    """Smallest ``W`` with ``eps^2 (W+1) > 2``, then the first ``n`` giving a feasible ``delta``.

    ``delta = b / (W+1)`` where ``b`` solves the cycle equation at ``a = 2W+1``;
    it must satisfy ``delta < eps`` and ``delta^2 (W+1) > 2``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    W = max(1, math.floor(2 / eps**2) - 2)
    while eps**2 * (W + 1) <= 2:
        W += 1
    a = 2 * W + 1
    tried = []
    for n in range(2, n_max + 1):
        sol = cycle_zero_weights(a, n)
        delta = sol.b / (W + 1)
        if delta * delta * (W + 1) <= 2:
            # b only decreases with n, so no later n can qualify
            tried.append((n, delta))
            break
        if delta < eps:
            G = lexicographic_blowup(cycle_graph(2 * n), 2, mode="independent")
            weights = []
            for i in range(2 * n):
                w = complex(1, delta if i % 2 == 0 else -delta)
                weights.extend([complex(W), w])
            return SparseCounterexample(eps, W, delta, n, a, sol.b, G, weights)
        tried.append((n, delta))
    raise ValueError(f"no feasible (n, delta) for eps={eps}, W={W}; last tried (n, delta)={tried[-3:]}")


# -- complete multipartite graphs ------------------------------------------------


def multipartite_z(spec: MultipartiteSpec | tuple, lam):
    """``a(1+lam)^n + b(1+lam)^m + (1-a-b)``."""
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(*spec)
    if isinstance(lam, (numbers.Rational, GaussianRational)):
        lam = GaussianRational.coerce(lam)
    x = 1 + lam
    return spec.a * x**spec.n + spec.b * x**spec.m + (1 - spec.a - spec.b)


def quadratic_root(A, B):
    """The more negative real root of ``A y^2 + B y + (1 - A - B)``."""
    with mpmath.workdps(60):
        A, B = mpmath.mpf(A), mpmath.mpf(B)
        disc = B * B - 4 * A * (1 - A - B)
        return (-B - mpmath.sqrt(disc)) / (2 * A)


@dataclass
class MultipartiteRoot:
    A: int
    B: int
    N: int
    root: complex
    residual: float

    @property
    def spec(self) -> MultipartiteSpec:
        """The graph ``K(A, B; 2N, N)``; ``root - 1`` is a zero of its independence polynomial."""
        return MultipartiteSpec(self.A, self.B, 2 * self.N, self.N)

    @property
    def coeffs(self) -> list[int]:
        c = [0] * (2 * self.N + 1)
        c[0] = 1 - self.A - self.B
        c[self.N] = self.B
        c[2 * self.N] = self.A
        return c


def multipartite_root_near(z, eps: float, degree_cap: int = 4000, tol: float = 1e-10) -> MultipartiteRoot:
    """A root of ``A x^{2N} + B x^N + (1-A-B)`` within ``3 eps`` of ``z``.

    ``N >= pi|z|/eps`` makes consecutive ``N``-th roots of a negative real
    at most ``eps`` apart in angle-arc; ``t = round(|z|^N) - 1`` puts the
    quadratic root ``~ -1-t`` on the right circle, and ``A = L``, ``B = tL``
    with ``L`` doubled until the root lands within ``3 eps``.  The candidate is
    confirmed against the numerical roots from ``poly_roots``.
    """
    z = complex(z)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if abs(z) <= 1 + eps:
        raise ValueError("need |z| > 1 + eps")
    N = math.ceil(math.pi * abs(z) / eps)
    if 2 * N > degree_cap:
        raise ValueError(f"degree 2N={2 * N} exceeds the cap {degree_cap}; use a larger eps or smaller |z|")
    theta = cmath.phase(z)
    # angles of N-th roots of a negative real: (2j+1) pi / N
    j = round((theta * N / math.pi - 1) / 2)
    with mpmath.workdps(60):
        t = int(mpmath.nint(mpmath.mpf(abs(z)) ** N)) - 1
        angle = (2 * j + 1) * mpmath.pi / N
        L = 10
        for _ in range(60):
            q = quadratic_root(L, t * L)
            cand = mpmath.root(-q, N) * mpmath.expj(angle)
            if abs(complex(cand) - z) <= 3 * eps:
                break
            L *= 2
        else:
            raise ValueError("quadratic root never reached the target annulus")
    res = MultipartiteRoot(L, t * L, N, complex(cand), 0.0)
    coeffs = res.coeffs
    roots = poly_roots(coeffs)
    best = min(roots, key=lambda r: abs(r - res.root))
    if abs(best - res.root) > eps:
        raise ValueError(f"root finder did not confirm the candidate at degree {2 * N}; try a smaller eps")
    res.root = best
    res.residual = poly_residual(coeffs, best)
    if res.residual >= tol or abs(best - z) > 3 * eps:
        raise ValueError(f"no verified root: residual {res.residual:.3g}, distance {abs(best - z):.3g}")
    return res


# -- subdivided binary trees -------------------------------------------------------


class TreePoleError(ZeroDivisionError):
    def __init__(self, iteration: int):
        super().__init__(f"1 + z vanished at iteration {iteration}")
        self.iteration = iteration


def _is_pole(w) -> bool:
    if isinstance(w, (numbers.Rational, GaussianRational)):
        return w == 0
    return abs(w) <= POLE_GUARD


def _common(lam, z):
    """Both exact (GaussianRational) when both are rational, else plain floating values."""
    exact = (numbers.Rational, GaussianRational)
    if isinstance(lam, exact) and isinstance(z, exact):
        return GaussianRational.coerce(lam), GaussianRational.coerce(z)
    if isinstance(lam, GaussianRational):
        lam = complex(lam)
    if isinstance(z, GaussianRational):
        z = complex(z)
    return lam, z


def tree_f1(lam, z):
    return lam / (1 + z)


def tree_f2(lam, z):
    return lam / ((1 + z) * (1 + z))


def tree_g(lam, k: int, z, _iteration: int = 0):
    """``f2 o f1^(2k)`` evaluated at ``z``."""
    lam, z = _common(lam, z)
    for _ in range(2 * k):
        if _is_pole(1 + z):
            raise TreePoleError(_iteration)
        z = lam / (1 + z)
    if _is_pole(1 + z):
        raise TreePoleError(_iteration)
    return tree_f2(lam, z)


def tree_g_iter(lam, k: int, d: int):
    """``g^(d)(lam)``: the root occupation ratio of ``T_d`` under constant weight ``lam``."""
    lam, z = _common(lam, lam)
    for i in range(d):
        z = tree_g(lam, k, z, i)
    return z


def tree_root_ratio(d: int, k: int, lam):
    """Occupation ratio of the root of ``make_tree_T(d, k)`` by direct evaluation."""
    G = make_tree_T(d, k)
    Z = PartitionFunction(G, lam)
    full = G.full_mask
    lam = Z.weights[0]
    return lam * Z(full & ~G.masks[0] & ~1) / Z(full & ~1)


def tree_g_prime(lam, k: int, z):
    """``g'(z)`` by the chain rule."""
    lam, z = _common(lam, z)
    der = 1
    for _ in range(2 * k):
        if _is_pole(1 + z):
            raise TreePoleError(0)
        der = der * (-lam / ((1 + z) * (1 + z)))
        z = lam / (1 + z)
    if _is_pole(1 + z):
        raise TreePoleError(0)
    return der * (-2 * lam / ((1 + z) ** 3))


def tree_fixed_point(lam: float, k: int, tol: float = 1e-14) -> float:
    """The unique fixed point of ``g`` on ``[0, inf)`` by bisection on ``[0, g(0)]``."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    lam = float(lam)
    if lam == 0:
        return 0.0
    lo, hi = 0.0, float(tree_g(lam, k, 0.0))
    for _ in range(400):
        if hi - lo <= tol * max(1.0, hi):
            break
        mid = (lo + hi) / 2
        if tree_g(lam, k, mid) > mid:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def indifference_gap(lam: float, k: int) -> float:
    """``h(lam) = |g'(z_lam)| - 1``."""
    return abs(tree_g_prime(lam, k, tree_fixed_point(lam, k))) - 1


def find_indifferent_lambda(k: int, lo: float = 0.01, hi: float = 1.0, cap: float = 2.0**40,
                            tol: float = 1e-10) -> float:
    """Bisection on ``h`` between a point with ``h < 0`` and one with ``h > 0``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if indifference_gap(lo, k) >= 0:
        raise ValueError(f"h({lo}) is not negative")
    while indifference_gap(hi, k) <= 0:
        hi *= 2
        if hi > cap:
            raise ValueError("no lambda with |g'| > 1 found below the doubling cap")
    mid = (lo + hi) / 2
    for _ in range(200):
        mid = (lo + hi) / 2
        h = indifference_gap(mid, k)
        if abs(h) < tol / 10 or hi - lo < 1e-15 * hi:
            break
        if h < 0:
            lo = mid
        else:
            hi = mid
    return mid


def _tree_iter_with_derivative(lam: complex, k: int, d: int) -> tuple[complex, complex]:
    """``g^(d)(lam)`` and its derivative in ``lam`` (forward mode, exact)."""
    z, dz = lam, 1.0
    for i in range(d):
        for _ in range(2 * k):
            w = 1 + z
            if abs(w) <= POLE_GUARD:
                raise TreePoleError(i)
            dz = 1 / w - lam * dz / (w * w)
            z = lam / w
        w = 1 + z
        if abs(w) <= POLE_GUARD:
            raise TreePoleError(i)
        dz = 1 / (w * w) - 2 * lam * dz / (w * w * w)
        z = lam / (w * w)
    return z, dz


@dataclass
class TreeZeroResult:
    k: int
    d: int
    lam: complex
    residual: float
    converged: bool
    trajectory: list[complex]

    def to_csv_row(self) -> str:
        return f"{self.d},{self.lam.real!r},{self.lam.imag!r},{self.residual!r}"


def tree_zero_search(k: int, d: int, seed: complex | None = None, steps: int = 200,
                     tol: float = 1e-10, max_step: float = 5.0) -> TreeZeroResult:
    """Damped Newton on ``g^(d)(lam) + 1`` starting at ``seed`` (default ``lam0 + 0.1i``)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if seed is None:
        seed = complex(find_indifferent_lambda(k), 0.1)
    lam = complex(seed)
    traj = [lam]
    resid = math.inf
    for _ in range(steps):
        try:
            val, der = _tree_iter_with_derivative(lam, k, d)
        except (TreePoleError, OverflowError, ZeroDivisionError):
            break
        resid = abs(val + 1)
        if resid < tol:
            return _polish(TreeZeroResult(k, d, lam, resid, True, traj))
        if der == 0 or not cmath.isfinite(der):
            break
        step = (val + 1) / der
        if abs(step) > max_step:
            step *= max_step / abs(step)
        lam -= step
        traj.append(lam)
    return TreeZeroResult(k, d, lam, resid, False, traj)


def _polish(res: TreeZeroResult, extra: int = 3) -> TreeZeroResult:
    # a few more Newton steps, keeping whichever iterate has the smallest residual
    lam = res.lam
    for _ in range(extra):
        try:
            val, der = _tree_iter_with_derivative(lam, res.k, res.d)
            lam = lam - (val + 1) / der
            val, _ = _tree_iter_with_derivative(lam, res.k, res.d)
        except (TreePoleError, OverflowError, ZeroDivisionError):
            break
        if abs(val + 1) < res.residual:
            res.lam, res.residual = lam, abs(val + 1)
            res.trajectory.append(lam)
    return res


def tree_orbit_margin(lam: complex, k: int, d: int) -> float:
    """Smallest ``|1 + z|`` met while evaluating ``g^(d)(lam)``; tiny values flag pole artefacts."""
    z = complex(lam)
    margin = math.inf
    for _ in range(d):
        for _ in range(2 * k):
            margin = min(margin, abs(1 + z))
            z = lam / (1 + z)
        margin = min(margin, abs(1 + z))
        z = lam / (1 + z) ** 2
    return margin


def tree_zero_nearest(k: int, d: int, target: complex, seeds=None, min_margin: float = 1e-6,
                      **kw) -> TreeZeroResult:
    """Run ``tree_zero_search`` from a grid of seeds; keep the converged zero closest to ``target``.

    Limits that sit on a pole of the iteration (``|1 + z| < min_margin``
    somewhere along the orbit) are discarded.
    """
    target = complex(target)
    if seeds is None:
        scale = max(abs(target), 1.0)
        seeds = [complex(scale * (0.45 + 0.05 * i), im)
                 for i in range(27) for im in (0.01, 0.1, 0.5, 1, 2, 4, 8, 15)]
    best = None
    for s in seeds:
        res = tree_zero_search(k, d, s, **kw)
        if not res.converged or tree_orbit_margin(res.lam, k, d) < min_margin:
            continue
        if best is None or abs(res.lam - target) < abs(best.lam - target):
            best = res
    if best is None:
        raise ValueError(f"no seed converged for d={d}")
    return best


def format_zero_csv(results) -> str:
    return "param,re,im,residual\n" + "".join(r.to_csv_row() + "\n" for r in results)


__all__ = [
    "CycleZeroSolution",
    "MultipartiteRoot",
    "MultipartiteSpec",
    "SparseCounterexample",
    "TreePoleError",
    "TreeZeroResult",
    "blowup_reduce_clique",
    "blowup_reduce_independent",
    "cycle_b_sequence",
    "cycle_zero_weights",
    "find_indifferent_lambda",
    "find_sparse_counterexample",
    "format_zero_csv",
    "indifference_gap",
    "lift_clique_weights",
    "make_cycle",
    "make_multipartite",
    "make_path_power",
    "make_subdivided_claw",
    "make_tree_T",
    "multipartite_root_near",
    "multipartite_z",
    "quadratic_root",
    "scale_weights_for_blowup",
    "tree_fixed_point",
    "tree_g",
    "tree_g_iter",
    "tree_g_prime",
    "tree_orbit_margin",
    "tree_root_ratio",
    "tree_vertex_count",
    "tree_zero_nearest",
    "tree_zero_search",
]
