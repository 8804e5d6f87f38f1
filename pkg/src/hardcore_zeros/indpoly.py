"""Independence polynomial evaluation, cycle transfer matrices and root finding."""

from __future__ import annotations

import cmath
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gaussian import GaussianRational, is_exact
from .graph import Graph, components_of_mask, cycle_graph

BRUTE_FORCE_LIMIT = 30


# -- weights ---------------------------------------------------------------


def normalize_weights(weights, n: int) -> tuple[list, bool]:
    """Return ``(weights, exact)``.

    A scalar is broadcast to all ``n`` vertices.  The assignment is exact when
    every entry is rational or Gaussian-rational; those entries become
    ``GaussianRational``.  Otherwise everything is cast to ``complex``.
    """
    if isinstance(weights, (numbers.Number, GaussianRational)):
        weights = [weights] * n
    weights = list(weights)
    if len(weights) != n:
        raise ValueError(f"weight vector has length {len(weights)}, graph has {n} vertices")
    if all(is_exact(w) for w in weights):
        return [GaussianRational.coerce(w) for w in weights], True
    return [complex(w) for w in weights], False


def weight_scale(G: Graph, weights) -> float:
    """``sum_S |lambda_S|``, the all-``|lambda|`` evaluation used as the zero-test scale."""
    w, _ = normalize_weights(weights, G.n)
    return PartitionFunction(G, [abs(complex(x)) for x in w]).total().real


def is_zero(value, scale: float = 1.0, rtol: float = 1e-12) -> bool:
    if isinstance(value, GaussianRational):
        return not value
    return abs(value) < rtol * scale


# -- evaluation ------------------------------------------------------------


def z_brute(G: Graph, weights) -> complex | GaussianRational:
    """Sum of ``lambda_S`` over all independent sets by explicit enumeration."""
    if G.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"z_brute is limited to {BRUTE_FORCE_LIMIT} vertices, got {G.n}")
    w, exact = normalize_weights(weights, G.n)
    one = GaussianRational(1) if exact else 1 + 0j
    total = one
    # (last vertex, forbidden mask, product) for every nonempty independent set
    stack = [(v, G.masks[v] | (1 << v), w[v]) for v in range(G.n)]
    while stack:
        last, forbidden, prod = stack.pop()
        total = total + prod
        for v in range(last + 1, G.n):
            if not forbidden >> v & 1:
                stack.append((v, forbidden | G.masks[v] | (1 << v), prod * w[v]))
    return total


class PartitionFunction:
    """Memoised ``Z(U)`` for vertex subsets ``U`` (bitmasks) of a fixed weighted graph.

    Uses ``Z(U) = Z(U - v) + lambda_v Z(U - N[v])`` with the highest-degree
    vertex of ``G[U]`` as pivot, and factorises over connected components.
    """

    def __init__(self, G: Graph, weights):
        self.G = G
        self.weights, self.exact = normalize_weights(weights, G.n)
        self.one = GaussianRational(1) if self.exact else 1 + 0j
        self.memo: dict[int, object] = {0: self.one}

    def __call__(self, mask: int):
        memo = self.memo
        if mask in memo:
            return memo[mask]
        masks = self.G.masks
        comps = components_of_mask(masks, mask)
        if len(comps) > 1:
            value = self.one
            for c in comps:
                value = value * self(c)
        else:
            best, pivot = -1, -1
            rest = mask
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                d = bin(masks[v] & mask).count("1")
                if d > best:
                    best, pivot = d, v
            bit = 1 << pivot
            value = self(mask & ~bit) + self.weights[pivot] * self(mask & ~(bit | masks[pivot]))
        memo[mask] = value
        return value

    def total(self):
        return self(self.G.full_mask)


def z_eval(G: Graph, weights):
    """``Z_{G,lambda}``; exact (GaussianRational) for rational input, else complex."""
    return PartitionFunction(G, weights).total()


# -- univariate polynomials ------------------------------------------------


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Coefficients ``c_0..c_d`` in ascending order."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self) -> int:
        c = _trim(self.coeffs)
        return len(c) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def _poly_add(p: list[int], q: list[int]) -> list[int]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def univariate_coeffs(G: Graph) -> UnivariatePolynomial:
    """Independent-set counts by size, via the same deletion recursion on integer polynomials."""
    masks = G.masks
    memo: dict[int, list[int]] = {0: [1]}

    def rec(mask: int) -> list[int]:
        if mask in memo:
            return memo[mask]
        comps = components_of_mask(masks, mask)
        if len(comps) > 1:
            value = [1]
            for c in comps:
                value = _int_poly_mul(value, rec(c))
        else:
            pivot = max(_bits(mask), key=lambda v: (bin(masks[v] & mask).count("1"), -v))
            bit = 1 << pivot
            value = _poly_add(rec(mask & ~bit), [0] + rec(mask & ~(bit | masks[pivot])))
        memo[mask] = value
        return value

    return UnivariatePolynomial(tuple(rec(G.full_mask)))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _int_poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


# -- cycle transfer matrix -------------------------------------------------


@dataclass(frozen=True)
class TransferMatrix:
    m00: object
    m01: object
    m10: object
    m11: object

    @classmethod
    def for_cycle(cls, lam, mu) -> TransferMatrix:
        """``((mu+1, 1), (lam, lam))``: one (mu, lam) period of the alternating cycle."""
        return cls(mu + 1, 1, lam, lam)

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        a, b, c, d = self.m00, self.m01, self.m10, self.m11
        e, f, g, h = other.m00, other.m01, other.m10, other.m11
        return TransferMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def power(self, n: int) -> TransferMatrix:
        if n < 1:
            raise ValueError("matrix power needs n >= 1")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def trace(self):
        return self.m00 + self.m11

    @property
    def det(self):
        return self.m00 * self.m11 - self.m01 * self.m10


def _as_scalar(x):
    return GaussianRational.coerce(x) if is_exact(x) else complex(x)


def cycle_transfer_eval(n: int, lam, mu):
    """``Tr(M^n)`` = Z of ``C_{2n}`` with even vertices weighted ``lam`` and odd ``mu``."""
    if n < 2:
        raise ValueError("C_{2n} needs n >= 2")
    lam, mu = _as_scalar(lam), _as_scalar(mu)
    if isinstance(lam, GaussianRational) != isinstance(mu, GaussianRational):
        lam, mu = complex(lam), complex(mu)
    return TransferMatrix.for_cycle(lam, mu).power(n).trace


def alternating_cycle(n: int, lam, mu) -> tuple[Graph, list]:
    """``C_{2n}`` with its alternating weighting, for cross-checks against the recursion."""
    return cycle_graph(2 * n), [lam if i % 2 == 0 else mu for i in range(2 * n)]


def cycle_eigenvalues(lam, mu) -> tuple[complex, complex]:
    """Eigenvalues of the cycle transfer matrix; ``alpha`` takes the ``+`` branch."""
    lam, mu = complex(lam), complex(mu)
    s = lam + mu + 1
    root = cmath.sqrt(s * s - 4 * lam * mu)
    return (s + root) / 2, (s - root) / 2


# -- root finding ----------------------------------------------------------


def _trim(coeffs) -> list:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_residual(coeffs: Sequence, z: complex) -> float:
    """Backward error ``|p(z)| / sum_i |c_i| |z|^i``."""
    den = 0.0
    az = abs(z)
    num = complex(np.polyval(np.asarray([complex(c) for c in reversed(coeffs)]), z))
    for c in reversed(coeffs):
        den = den * az + abs(complex(c))
    return abs(num) / den if den else abs(num)


def _fraction_poly(coeffs) -> list[Fraction]:
    return [Fraction(c) for c in coeffs]


def _fpoly_divmod(p: list[Fraction], q: list[Fraction]):
    p = list(p)
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return [Fraction(0)], p
    quot = [Fraction(0)] * (len(p) - dq)
    lead = q[-1]
    for i in range(len(p) - 1, dq - 1, -1):
        coef = p[i] / lead
        quot[i - dq] = coef
        if coef:
            for j in range(dq + 1):
                p[i - dq + j] -= coef * q[j]
    rem = _trim(p[:dq]) or [Fraction(0)]
    return quot, rem


def _fpoly_gcd(p, q):
    p, q = _trim(p), _trim(q)
    while q and any(q):
        _, r = _fpoly_divmod(p, q)
        p, q = q, _trim(r)
    lead = p[-1]
    return [c / lead for c in p]


def _fpoly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:] or [Fraction(0)]


def squarefree_decomposition(coeffs) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm over Q: ``[(factor, multiplicity), ...]`` with monic factors."""
    f = _trim(_fraction_poly(coeffs))
    out = []
    a = _fpoly_gcd(f, _fpoly_deriv(f))
    b, _ = _fpoly_divmod(f, a)
    c, _ = _fpoly_divmod(_fpoly_deriv(f), a)
    d = [ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_fpoly_deriv(b), len(b)))]
    i = 1
    while len(_trim(b)) > 1:
        a = _fpoly_gcd(b, d)
        b, _ = _fpoly_divmod(b, a)
        c, _ = _fpoly_divmod(d, a)
        if len(_trim(a)) > 1:
            out.append((a, i))
        d = [ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_fpoly_deriv(b), len(b)))]
        i += 1
    return out


def _pad(p, n):
    return list(p) + [Fraction(0)] * (n - len(p))


def aberth(coeffs: Sequence, max_iter: int = 500, tol: float = 1e-15) -> np.ndarray:
    """Aberth-Ehrlich simultaneous iteration; ``coeffs`` ascending, nonzero constant term."""
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    monic = c / c[-1]
    desc = monic[::-1]
    ddesc = np.polyder(desc)
    # initial circle radius: geometric mean of root moduli
    radius = abs(monic[0]) ** (1.0 / d) if monic[0] != 0 else 1.0
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    for _ in range(max_iter):
        p = np.polyval(desc, z)
        dp = np.polyval(ddesc, z)
        with np.errstate(all="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr[~np.isfinite(corr)] = 0.0
        z = z - corr
        if np.all(np.abs(corr) <= tol * np.maximum(np.abs(z), 1.0)):
            break
    # one Newton pass
    with np.errstate(all="ignore"):
        step = np.polyval(desc, z) / np.polyval(ddesc, z)
    step[~np.isfinite(step)] = 0.0
    return z - step


def _roots_squarefree(coeffs: Sequence, tol: float) -> list[complex]:
    c = list(coeffs)
    zeros = 0
    while c and c[0] == 0:
        c.pop(0)
        zeros += 1
    roots = [0j] * zeros
    if len(c) <= 1:
        return roots
    if len(c) == 2:
        return roots + [-complex(c[0]) / complex(c[1])]
    z = aberth(c)
    if max(poly_residual(c, r) for r in z) >= tol:
        # companion-matrix fallback, Newton polished
        alt = np.roots([complex(x) for x in reversed(c)])
        desc = np.asarray([complex(x) for x in reversed(c)])
        alt = alt - np.polyval(desc, alt) / np.polyval(np.polyder(desc), alt)
        if max(poly_residual(c, r) for r in alt) < max(poly_residual(c, r) for r in z):
            z = alt
    return roots + [complex(r) for r in z]


def poly_roots(p, tol: float = 1e-9, squarefree_limit: int = 64) -> list[complex]:
    """All complex roots (with multiplicity) of ``p`` (ascending coefficients).

    Exact integer/rational input of moderate degree is split by square-free
    decomposition first so repeated roots are found as simple roots.
    """
    coeffs = p.coeffs if isinstance(p, UnivariatePolynomial) else tuple(p)
    coeffs = _trim(coeffs)
    if not coeffs:
        raise ValueError("the zero polynomial has no well-defined roots")
    if len(coeffs) == 1:
        return []
    exact = all(isinstance(c, numbers.Rational) for c in coeffs)
    if exact and len(coeffs) - 1 <= squarefree_limit:
        out: list[complex] = []
        for factor, mult in squarefree_decomposition(coeffs):
            for r in _roots_squarefree(factor, tol):
                out.extend([r] * mult)
        return sorted(out, key=lambda z: (z.real, z.imag))
    return sorted(_roots_squarefree(coeffs, tol), key=lambda z: (z.real, z.imag))


def format_roots_csv(roots) -> str:
    return "".join(f"{r.real!r},{r.imag!r}\n" for r in roots)


def is_real_negative_rooted(p, imag_tol: float = 1e-8) -> bool:
    return all(abs(r.imag) < imag_tol and r.real < 0 for r in poly_roots(p))


__all__ = [
    "PartitionFunction",
    "TransferMatrix",
    "UnivariatePolynomial",
    "aberth",
    "alternating_cycle",
    "cycle_eigenvalues",
    "cycle_transfer_eval",
    "format_roots_csv",
    "is_real_negative_rooted",
    "is_zero",
    "normalize_weights",
    "poly_residual",
    "poly_roots",
    "squarefree_decomposition",
    "univariate_coeffs",
    "weight_scale",
    "z_brute",
    "z_eval",
]

