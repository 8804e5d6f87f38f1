"""Instance-level non-vanishing certificates.

Both inductions evaluate ratios ``Z(U) / Z(U - N)`` where ``N`` is the part
of the current front's neighbourhood still inside ``U``:

* ``sttt`` (subdivided-claw-free, bounded degree): the front is an admissible
  pair ``(L, U)`` and ``N = boundary(L) & U``; children are the nonempty
  independent ``S`` inside ``N``.
* ``clawfree``: the front is the end ``x`` of a path grown from an artificial
  vertex attached to a simplicial clique; ``N = neighbours(x) & U`` must be a
  clique, and children are its single vertices.

In both cases ``ratio(U, N) = 1 + sum_S lambda_S / ratio(U - N, nbhd(S) & (U - N))``.
The value depends only on ``(U, N)``, so contexts are memoised on that pair.
A run is *certified* when every ratio lies in the closed half-plane
``Re >= 1/2``; each such ratio is nonzero, and chaining them down to the
empty set shows ``Z(V) != 0``.  Whenever ``N`` is empty but ``U`` is not,
``Z(U)`` is certified afresh from a new root (sttt) or a simplicial clique of
``G[U]`` (clawfree).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import mpmath

from .gaussian import GaussianRational, format_pair
from .graph import Graph, members
from .indpoly import normalize_weights, z_eval
from .recognize import (
    SubdividedClawSpec,
    first_simplicial_clique,
    is_claw_free,
    is_clique_mask,
    is_simplicial_clique,
    is_subdivided_claw_free,
    max_clique_size,
)
from .regions import effective_degree, in_parabola, r_bound, sttt_parabola_k

CERTIFIED = "certified"
PRECONDITION_FAILED = "precondition-failed"
RATIO_ESCAPED = "ratio-escaped"

RATIO_PREC = 160


class StructuralViolation(Exception):
    """The graph (or the supplied clique) is outside the class the induction needs."""


# -- admissible pairs --------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePair:
    L: tuple[int, ...]
    U: tuple[int, ...]
    parent: AdmissiblePair | None = field(default=None, compare=False, repr=False)


def _independent_subsets(G: Graph, mask: int) -> Iterator[int]:
    """Nonempty independent subsets of ``mask`` as bitmasks, lexicographic by member tuple."""
    verts = members(mask)
    gm = G.masks

    def rec(start: int, chosen: int, forbidden: int):
        for i in range(start, len(verts)):
            v = verts[i]
            if forbidden >> v & 1:
                continue
            s = chosen | (1 << v)
            yield s
            yield from rec(i + 1, s, forbidden | gm[v])

    yield from rec(0, 0, 0)


def _closed_boundary(G: Graph, S: int) -> int:
    out = 0
    rest = S
    gm = G.masks
    while rest:
        low = rest & -rest
        out |= gm[low.bit_length() - 1]
        rest ^= low
    return out & ~S


def iter_admissible_pairs(G: Graph, u: int) -> Iterator[tuple[int, int, tuple | None]]:
    """Depth-first ``(L_mask, U_mask, parent_key)`` from ``(0, V)``; each pair once.

    Uses the convention that the boundary of the empty set is ``{u}``.
    """
    if not 0 <= u < G.n:
        raise ValueError(f"root {u} out of range")
    seen = set()
    stack = [(0, G.full_mask, None)]
    while stack:
        L, U, parent = stack.pop()
        if (L, U) in seen:
            continue
        seen.add((L, U))
        yield L, U, parent
        dL = (1 << u) if L == 0 else _closed_boundary(G, L)
        front = dL & U
        child_U = U & ~dL
        kids = list(_independent_subsets(G, front))
        for S in reversed(kids):
            stack.append((S, child_U, (L, U)))


def admissible_enumerate(G: Graph, u: int, cap: int = 100_000) -> tuple[list[AdmissiblePair], bool]:
    """Up to ``cap`` admissible pairs rooted at ``u``; the flag reports truncation."""
    out: list[AdmissiblePair] = []
    by_key: dict[tuple[int, int], AdmissiblePair] = {}
    for L, U, parent in iter_admissible_pairs(G, u):
        if len(out) >= cap:
            return out, True
        pair = AdmissiblePair(members(L), members(U), by_key.get(parent) if parent else None)
        by_key[(L, U)] = pair
        out.append(pair)
    return out, False


def check_L_bound(G: Graph, u: int, t: int, cap: int = 200_000) -> tuple[int, int, bool]:
    """``(max |L| seen, 2 vol(D, 2t), ok)`` over the admissible pairs rooted at ``u``."""
    if not is_subdivided_claw_free(G, SubdividedClawSpec.symmetric(t)):
        raise StructuralViolation(f"graph contains an induced S_{{{t},{t},{t}}}")
    bound = r_bound(effective_degree(G.max_degree), t)
    worst = 0
    for count, (L, _U, _p) in enumerate(iter_admissible_pairs(G, u)):
        if count >= cap:
            break
        worst = max(worst, bin(L).count("1"))
    return worst, bound, worst <= bound


# -- rooted paths (clawfree induction) -------------------------------------------


@dataclass(frozen=True)
class RootedPath:
    """A path ``u_K, v_1, ..., x`` in ``G + u_K``; ``vertices`` omits the artificial ``u_K``."""

    K: tuple[int, ...]
    vertices: tuple[int, ...] = ()

    @property
    def active(self) -> int | None:
        """The endpoint ``x``; ``None`` while the path is just ``u_K``."""
        return self.vertices[-1] if self.vertices else None

    def extend(self, y: int) -> RootedPath:
        return RootedPath(self.K, self.vertices + (y,))

    def U_mask(self, G: Graph) -> int:
        """``V minus (V(P) union boundary(V(P) - {x}))`` as a bitmask of ``G``."""
        A = 0
        for v in self.vertices:
            A |= 1 << v
        # u_K is always a non-active path vertex once the path has grown; its boundary is K
        inner = self.vertices[:-1]
        if self.vertices:
            for v in self.K:
                A |= 1 << v
        for v in inner:
            A |= G.masks[v]
        return G.full_mask & ~A

    def front_mask(self, G: Graph) -> int:
        """``U_{Px} & boundary(x)``."""
        nb = sum(1 << v for v in self.K) if not self.vertices else G.masks[self.active]
        return self.U_mask(G) & nb


def iter_rooted_paths(G: Graph, K) -> Iterator[RootedPath]:
    """Every path the clawfree recursion visits before a restart, depth first."""
    stack = [RootedPath(tuple(sorted(K)))]
    while stack:
        P = stack.pop()
        yield P
        for y in reversed(members(P.front_mask(G))):
            stack.append(P.extend(y))


# -- certificates --------------------------------------------------------------


@dataclass
class Step:
    context: str
    ratio: object
    U: int
    N: int


@dataclass
class Certificate:
    mode: str
    params: dict
    outcome: str
    steps: list[Step] = field(default_factory=list)
    final_z: object = None
    message: str = ""
    max_terms: int = 0
    max_front: int = 0

    @property
    def certified(self) -> bool:
        return self.outcome == CERTIFIED

    def ratios(self) -> list:
        return [s.ratio for s in self.steps]

    def to_text(self, digits: int = 30) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.mode} {params} {self.outcome}"]
        lines += [f"{s.context} {format_pair(s.ratio, digits)}" for s in self.steps]
        if self.final_z is not None:
            lines.append(f"FINAL {format_pair(self.final_z, digits)}")
        return "\n".join(lines) + "\n"


def context_hash(U: int, N: int) -> str:
    return hashlib.blake2b(f"{U:x}:{N:x}".encode(), digest_size=8).hexdigest()


class _Escape(Exception):
    def __init__(self, chain, value):
        super().__init__("ratio left the half-plane Re >= 1/2")
        self.chain = chain
        self.value = value


class _Precondition(Exception):
    pass


class _RatioEngine:
    """Shared memoised ratio recursion; subclasses choose children and restarts."""

    def __init__(self, G: Graph, weights):
        self.G = G
        w, self.exact = normalize_weights(weights, G.n)
        if self.exact:
            self.w = w
            self.one = GaussianRational(1)
            self.half = Fraction(1, 2)
        else:
            self.w = [mpmath.mpc(x) for x in w]
            self.one = mpmath.mpc(1)
            self.half = mpmath.mpf(1) / 2
        self.memo: dict[tuple[int, int], object] = {}
        self.steps: list[Step] = []
        self.chain: list[str] = []
        self.max_terms = 0
        self.max_front = 0

    def children(self, U: int, N: int):
        raise NotImplementedError

    def restart_front(self, U: int) -> int:
        raise NotImplementedError

    def ratio(self, U: int, N: int):
        key = (U, N)
        if key in self.memo:
            return self.memo[key]
        ctx = context_hash(U, N)
        self.chain.append(ctx)
        if U == 0:
            value = self.one
        elif N == 0:
            # Z(U)/Z(U) = 1, but Z(U) != 0 still has to be shown from a fresh front
            self.ratio(U, self.restart_front(U))
            value = self.one
        else:
            child_U = U & ~N
            value = self.one
            terms = 0
            for weight, child_N in self.children(U, N):
                value = value + weight / self.ratio(child_U, child_N)
                terms += 1
            self.max_terms = max(self.max_terms, terms)
        if not value.real >= self.half:
            raise _Escape(list(self.chain), value)
        self.chain.pop()
        self.memo[key] = value
        self.steps.append(Step(ctx, value, U, N))
        return value

    def run(self, U: int, N: int):
        with mpmath.workprec(RATIO_PREC):
            return self.ratio(U, N)


class _SttEngine(_RatioEngine):
    def __init__(self, G, weights, r: int, k: int):
        super().__init__(G, weights)
        self.r = r
        self.k = k
        self.nonnegative = all(x.imag == 0 and x.real >= 0 for x in self.w)
        self.checked: dict[int, object] = {}

    def weight_of(self, S: int):
        if S in self.checked:
            return self.checked[S]
        size = bin(S).count("1")
        if size > self.r:
            raise StructuralViolation(f"front of size {size} exceeds r={self.r}")
        prod = self.one
        for v in members(S):
            prod = prod * self.w[v]
        if not self.nonnegative:
            kk = self.k if self.exact else mpmath.mpf(self.k)
            if not in_parabola(prod, kk):
                raise _Precondition(f"lambda_S outside R(2^(Delta r)) for S={list(members(S))}")
        self.checked[S] = prod
        return prod

    def children(self, U, N):
        child_U = U & ~N
        self.max_front = max(self.max_front, bin(N).count("1"))
        for S in _independent_subsets(self.G, N):
            self.max_front = max(self.max_front, bin(S).count("1"))
            yield self.weight_of(S), _closed_boundary(self.G, S) & child_U

    def restart_front(self, U):
        return U & -U


class _ClawFreeEngine(_RatioEngine):
    def __init__(self, G, weights, k: int):
        super().__init__(G, weights)
        self.k = k

    def children(self, U, N):
        if not is_clique_mask(self.G, N):
            raise StructuralViolation(
                f"front {list(members(N))} is not a clique (graph not claw-free or clique not simplicial)")
        size = bin(N).count("1")
        if size > self.k:
            raise StructuralViolation(f"front clique of size {size} exceeds k={self.k}")
        self.max_front = max(self.max_front, size)
        child_U = U & ~N
        for y in members(N):
            yield self.w[y], self.G.masks[y] & child_U

    def restart_front(self, U):
        comp = self.G.components(U)[0]
        K = first_simplicial_clique(self.G, comp)
        if K is None:
            raise StructuralViolation("a component has no simplicial clique")
        return sum(1 << v for v in K)


def _finish(engine: _RatioEngine, cert: Certificate, G: Graph, weights, start_U: int, start_N: int) -> Certificate:
    try:
        engine.run(start_U, start_N)
    except _Escape as esc:
        cert.outcome = RATIO_ESCAPED
        cert.message = f"ratio {complex(esc.value)} escaped; context chain {' > '.join(esc.chain)}"
    except _Precondition as exc:
        cert.outcome = PRECONDITION_FAILED
        cert.message = str(exc)
    cert.steps = engine.steps
    cert.max_terms = engine.max_terms
    cert.max_front = engine.max_front
    if cert.outcome == CERTIFIED:
        cert.final_z = z_eval(G, weights)
    return cert


def certify_sttt(G: Graph, weights, t: int, root: int = 0, check_class: bool = True) -> Certificate:
    """Run the admissible-pair induction for an ``S_{t,t,t}``-free graph.

    Degrees below 3 use the degree-3 values of ``r`` and ``2^(Delta r)``.
    Weight products ``lambda_S`` are tested against ``R(2^(Delta r))`` for every
    ``S`` the recursion meets.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if check_class and not is_subdivided_claw_free(G, SubdividedClawSpec.symmetric(t)):
        raise StructuralViolation(f"graph contains an induced S_{{{t},{t},{t}}}")
    delta = effective_degree(G.max_degree)
    r = r_bound(delta, t)
    k = sttt_parabola_k(delta, t)
    cert = Certificate("STTT", {"Delta": delta, "t": t, "r": r}, CERTIFIED)
    if G.n == 0:
        cert.final_z = GaussianRational(1)
        return cert
    engine = _SttEngine(G, weights, r, k)
    return _finish(engine, cert, G, weights, G.full_mask, 1 << root)


def certify_clawfree(G: Graph, K, weights, k: int, check_class: bool = True) -> Certificate:
    """Run the path induction from an artificial vertex attached to the simplicial clique ``K``.

    ``K=None`` picks the first simplicial clique of the component of vertex 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if check_class:
        if not is_claw_free(G):
            raise StructuralViolation("graph is not claw-free")
        if max_clique_size(G) > k:
            raise StructuralViolation(f"graph has a clique larger than k={k}")
    cert = Certificate("CLAWFREE", {"k": k}, CERTIFIED)
    if G.n == 0:
        cert.final_z = GaussianRational(1)
        return cert
    if K is None:
        K = first_simplicial_clique(G, G.components()[0])
    K = tuple(sorted(K))
    comp = next(c for c in G.components() if c >> K[0] & 1)
    if not is_simplicial_clique(G, K, comp):
        raise StructuralViolation(f"{list(K)} is not a simplicial clique")
    cert.params["K"] = ",".join(map(str, K))
    engine = _ClawFreeEngine(G, weights, k)
    for v, lam in enumerate(engine.w):
        kk = Fraction(k) if engine.exact else mpmath.mpf(k)
        if not in_parabola(lam, kk):
            cert.outcome = PRECONDITION_FAILED
            cert.message = f"weight of vertex {v} is outside R({k})"
            return cert
    return _finish(engine, cert, G, weights, G.full_mask, sum(1 << v for v in K))


__all__ = [
    "AdmissiblePair",
    "CERTIFIED",
    "Certificate",
    "PRECONDITION_FAILED",
    "RootedPath",
    "RATIO_ESCAPED",
    "Step",
    "StructuralViolation",
    "admissible_enumerate",
    "certify_clawfree",
    "certify_sttt",
    "check_L_bound",
    "context_hash",
    "iter_admissible_pairs",
    "iter_rooted_paths",
]
