"""Zero-free region geometry.

Parabolas ``R(k) = {Im(z)^2 < Re(z)/k + 1/(4k^2)}``, closed half-planes
``H(t) = {Re(z) >= t}``, the univariate regions ``F`` / ``F*`` built from
``r = 2 vol(Delta, 2t)``, bounded sectors around ``[0, lambda0]`` and the
boundary of the line-graph region ``R(k0^2/4)``.

Predicates accept ``complex``, ``GaussianRational``, rationals or mpmath
numbers.  Exact inputs are tested exactly; floating inputs that have to be
raised to the ``r``-th power are handled in mpmath at ``EXTENDED_PREC`` bits,
because ``R(2^(Delta r))`` is far too thin near the real axis for doubles.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .gaussian import GaussianRational, is_exact

EXTENDED_PREC = 320


# -- basic predicates ------------------------------------------------------


def _exact_parts(z):
    z = GaussianRational.coerce(z)
    return z.real, z.imag


def in_parabola(z, k) -> bool:
    """Strict membership in ``R(k)``."""
    if k <= 0:
        raise ValueError(f"parabola parameter must be positive, got {k}")
    if is_exact(z) and isinstance(k, numbers.Rational):
        x, y = _exact_parts(z)
        k = Fraction(k)
        return y * y < x / k + 1 / (4 * k * k)
    if isinstance(z, (mpmath.mpc, mpmath.mpf)) or isinstance(k, mpmath.mpf):
        with mpmath.workprec(EXTENDED_PREC):
            z = mpmath.mpc(z)
            k = mpmath.mpf(k)
            return z.imag**2 < z.real / k + 1 / (4 * k * k)
    z = complex(z)
    k = float(k)
    return z.imag**2 < z.real / k + 1 / (4 * k * k)


def in_halfplane(z, t) -> bool:
    """Closed half-plane ``Re(z) >= t``."""
    if is_exact(z) and isinstance(t, numbers.Rational):
        return GaussianRational.coerce(z).real >= t
    return z.real >= t


def parabola_boundary_gap(z, k) -> float:
    """``Re(z)/k + 1/(4k^2) - Im(z)^2``: positive inside ``R(k)``, zero on its boundary."""
    z = complex(z)
    return z.real / k + 1 / (4 * k * k) - z.imag**2


# -- the admissible-pair size bound ----------------------------------------


def vol(max_degree: int, t: int) -> int:
    """``1 + D((D-1)^t - 1)/(D-2)``, an integer for every ``D >= 3``."""
    if max_degree < 3:
        raise ValueError("vol(D, t) needs D >= 3 (the formula divides by D - 2)")
    if t < 0:
        raise ValueError("t must be >= 0")
    num = max_degree * ((max_degree - 1) ** t - 1)
    q, rem = divmod(num, max_degree - 2)
    assert rem == 0
    return 1 + q


def effective_degree(max_degree: int) -> int:
    """Degrees below 3 use the degree-3 bounds, which remain valid upper bounds."""
    return max(max_degree, 3)


def r_bound(max_degree: int, t: int) -> int:
    """``r = 2 vol(D, 2t)``."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return 2 * vol(max_degree, 2 * t)


def sttt_parabola_k(max_degree: int, t: int) -> int:
    """The parabola parameter ``2^(D r)`` used for the weight products."""
    return 2 ** (max_degree * r_bound(max_degree, t))


# -- univariate regions F and F* -------------------------------------------


def _check_dt(max_degree: int, t: int) -> None:
    if max_degree < 3 or t < 1:
        raise ValueError(f"need Delta >= 3 and t >= 1, got Delta={max_degree}, t={t}")


def in_region_F(lam, max_degree: int, t: int) -> bool:
    """``Re(lam) >= 0`` and ``lam^r`` in ``R(2^(D r))``."""
    _check_dt(max_degree, t)
    r = r_bound(max_degree, t)
    k = sttt_parabola_k(max_degree, t)
    if is_exact(lam):
        lam = GaussianRational.coerce(lam)
        if lam.real < 0:
            return False
        return in_parabola(lam**r, k)
    with mpmath.workprec(EXTENDED_PREC):
        z = mpmath.mpc(lam)
        if z.real < 0:
            return False
        return in_parabola(z**r, mpmath.mpf(k))


def in_region_Fstar(lam, max_degree: int, t: int) -> bool:
    """``|y| <= 2^(-(D+3) r / 2) x^(1 - r/2)`` and ``x >= 2^-D`` for ``lam = x + iy``."""
    _check_dt(max_degree, t)
    r = r_bound(max_degree, t)
    with mpmath.workprec(EXTENDED_PREC):
        if is_exact(lam):
            g = GaussianRational.coerce(lam)
            x = mpmath.mpf(g.real.numerator) / g.real.denominator
            y = mpmath.mpf(g.imag.numerator) / g.imag.denominator
        else:
            z = mpmath.mpc(lam)
            x, y = z.real, z.imag
        if x < mpmath.mpf(2) ** (-max_degree):
            return False
        bound = mpmath.mpf(2) ** (-mpmath.mpf((max_degree + 3) * r) / 2) * x ** (1 - mpmath.mpf(r) / 2)
        return abs(y) <= bound


# -- bounded sector for the interval theorem -------------------------------


@dataclass(frozen=True)
class Sector:
    """``{z : |z| < radius, |arg z| < psi}``."""

    radius: float
    psi: float

    def contains(self, z) -> bool:
        z = complex(z)
        return abs(z) < self.radius and (z == 0 or abs(math.atan2(z.imag, z.real)) < self.psi)

    def boundary_samples(self, count: int = 512, shrink: float = 0.0):
        """Points on the two rays and the arc; ``shrink`` pulls them slightly inside."""
        with mpmath.workprec(EXTENDED_PREC):
            R = mpmath.mpf(self.radius) * (1 - mpmath.mpf(shrink))
            psi = mpmath.mpf(self.psi) * (1 - mpmath.mpf(shrink))
            n_ray = count // 4
            n_arc = count - 2 * n_ray
            pts = []
            for i in range(1, n_ray + 1):
                rho = R * i / n_ray
                pts.append(mpmath.mpc(rho * mpmath.cos(psi), rho * mpmath.sin(psi)))
                pts.append(mpmath.mpc(rho * mpmath.cos(psi), -rho * mpmath.sin(psi)))
            for j in range(n_arc):
                th = -psi + 2 * psi * j / (n_arc - 1)
                pts.append(mpmath.mpc(R * mpmath.cos(th), R * mpmath.sin(th)))
            return pts


def _sector_ok(radius, psi, r: int, k: int, samples: int) -> bool:
    with mpmath.workprec(EXTENDED_PREC):
        kk = mpmath.mpf(k)
        return all(in_parabola(z**r, kk) for z in Sector(radius, psi).boundary_samples(samples))


def sector_for_interval(lam0: float, eps: float, max_degree: int, t: int,
                        iterations: int = 20, samples: int = 512) -> float:
    """Largest verified half-angle ``psi`` with ``{z^r : z in sector} in R(2^(D r))``.

    The sector is ``{|z| < lam0 + eps, |arg z| < psi}``.  ``psi`` is first
    halved from ``pi/2`` until the sampled boundary passes, then refined by
    ``iterations`` bisection steps between the passing and failing angle.
    """
    _check_dt(max_degree, t)
    if lam0 <= 0 or eps <= 0:
        raise ValueError("lam0 and eps must be positive")
    r = r_bound(max_degree, t)
    k = sttt_parabola_k(max_degree, t)
    radius = lam0 + eps
    hi = mpmath.pi / 2
    if _sector_ok(radius, hi, r, k, samples):
        return float(hi)
    lo = hi / 2
    for _ in range(4000):
        if _sector_ok(radius, lo, r, k, samples):
            break
        hi, lo = lo, lo / 2
    else:
        raise RuntimeError("no positive sector angle found")
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if _sector_ok(radius, mid, r, k, samples):
            lo = mid
        else:
            hi = mid
    return float(lo)


# -- invariant map ----------------------------------------------------------


def invariant_map(a, z):
    """``1 + sum_j a_j / z_j``.

    Works on scalars in sequences or on numpy arrays whose last axis runs
    over ``j`` (batched evaluation).
    """
    if isinstance(a, np.ndarray) or isinstance(z, np.ndarray):
        a = np.asarray(a)
        z = np.asarray(z)
        if a.shape != z.shape:
            raise ValueError("a and z must have the same shape")
        if np.any(z == 0):
            raise ZeroDivisionError("invariant map needs nonzero z_j")
        return 1 + np.sum(a / z, axis=-1)
    a = list(a)
    z = list(z)
    if len(a) != len(z):
        raise ValueError("a and z must have equal length")
    total = 1
    for aj, zj in zip(a, z):
        if zj == 0:
            raise ZeroDivisionError("invariant map needs nonzero z_j")
        total = total + aj / zj
    return total


# -- Asano parabola ----------------------------------------------------------


@dataclass(frozen=True)
class AsanoRegion:
    """``R(k0^2/4)``, the region for line graphs of multigraphs with cover clique bound ``k0``."""

    k0: int

    def __post_init__(self):
        if self.k0 < 2:
            raise ValueError("k0 must be >= 2")

    @property
    def k(self) -> Fraction:
        return Fraction(self.k0 * self.k0, 4)

    def contains(self, z) -> bool:
        return in_parabola(z, self.k)

    def boundary_point(self, y: float) -> complex:
        return asano_boundary_point(self.k0, y)


def asano_boundary_point(k0: int, y):
    """``(y^2 - 1/k0^2) + (2 y / k0) i``, a point on the boundary of ``R(k0^2/4)``."""
    if k0 < 2:
        raise ValueError("k0 must be >= 2")
    if isinstance(y, numbers.Rational):
        y = Fraction(y)
        return GaussianRational(y * y - Fraction(1, k0 * k0), 2 * y / k0)
    return complex(y * y - 1 / (k0 * k0), 2 * y / k0)


# -- region descriptors ------------------------------------------------------


@dataclass(frozen=True)
class RegionSpec:
    """Tagged region description; ``params`` depend on ``variant``.

    ``parabola: (k,)``, ``halfplane: (t,)``, ``F``/``Fstar: (Delta, t)``,
    ``sector: (lam0, eps, psi)``, ``asano: (k0,)``.
    """

    variant: str
    params: tuple

    def __post_init__(self):
        v, p = self.variant, self.params
        if v == "parabola" and p[0] <= 0:
            raise ValueError("Parabola requires k > 0")
        if v in ("F", "Fstar") and (p[0] < 3 or p[1] < 1):
            raise ValueError("F/F* require Delta >= 3 and t >= 1")
        if v == "sector" and not (0 < p[2] <= math.pi / 2):
            raise ValueError("sector requires 0 < psi <= pi/2")
        if v not in ("parabola", "halfplane", "F", "Fstar", "sector", "asano"):
            raise ValueError(f"unknown region variant {v!r}")

    def contains(self, z) -> bool:
        v, p = self.variant, self.params
        if v == "parabola":
            return in_parabola(z, p[0])
        if v == "halfplane":
            return in_halfplane(z, p[0])
        if v == "F":
            return in_region_F(z, *p)
        if v == "Fstar":
            return in_region_Fstar(z, *p)
        if v == "sector":
            return Sector(p[0] + p[1], p[2]).contains(z)
        return AsanoRegion(p[0]).contains(z)
