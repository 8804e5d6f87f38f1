import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from hardcore_zeros.gaussian import GaussianRational
from hardcore_zeros.regions import (
    AsanoRegion,
    RegionSpec,
    Sector,
    asano_boundary_point,
    in_halfplane,
    in_parabola,
    in_region_F,
    in_region_Fstar,
    invariant_map,
    r_bound,
    sector_for_interval,
    sttt_parabola_k,
    vol,
)
from hardcore_zeros.sampling import random_weight_in_parabola


def test_parabola_examples():
    for k in (Fraction(1, 3), 1, 7):
        assert in_parabola(0, k)
        assert not in_parabola(-1 / (4 * Fraction(k)), k)
    assert in_parabola(complex(1, 1), 1)
    assert not in_parabola(complex(1, 1.2), 1)
    with pytest.raises(ValueError):
        in_parabola(0, 0)


def test_parabola_strict_on_exact_boundary():
    z = asano_boundary_point(2, Fraction(1))
    assert z == GaussianRational(Fraction(3, 4), 1)
    assert not in_parabola(z, 1)


def test_halfplane_examples():
    assert in_halfplane(Fraction(1, 2), Fraction(1, 2))
    assert not in_halfplane(0.4999, 0.5)
    assert in_halfplane(complex(3, -7), 0.5)


def test_vol_and_r():
    assert (vol(3, 1), vol(3, 2), vol(4, 1)) == (4, 10, 5)
    assert (r_bound(3, 1), r_bound(3, 2), r_bound(4, 1)) == (20, 92, 34)
    assert sttt_parabola_k(3, 1) == 2**60
    with pytest.raises(ValueError):
        vol(2, 1)


def test_region_F_examples():
    assert in_region_F(0.7, 3, 1)
    assert not in_region_F(-0.1, 3, 1)
    assert in_region_F(mpmath.mpc("0.5", "1e-25"), 3, 1)
    assert in_region_F(GaussianRational(Fraction(1, 2), Fraction(1, 10**25)), 3, 1)
    assert not in_region_F(complex(1, 0.01), 3, 1)


def test_region_Fstar_examples():
    assert in_region_Fstar(1, 3, 1)
    assert not in_region_Fstar(0.05, 3, 1)
    assert in_region_Fstar(mpmath.mpc(1, mpmath.mpf(2) ** -63), 3, 1)
    assert not in_region_Fstar(mpmath.mpc(1, mpmath.mpf(2) ** -59), 3, 1)


def test_Fstar_subset_of_F():
    with mpmath.workprec(320):
        lo = mpmath.mpf(2) ** -3
        ymax = mpmath.mpf(2) ** -55
        for i in range(0, 200, 7):
            for j in range(0, 200, 7):
                z = mpmath.mpc(lo + (2 - lo) * i / 199, -ymax + 2 * ymax * j / 199)
                if in_region_Fstar(z, 3, 1):
                    assert in_region_F(z, 3, 1)


def test_sector():
    psi1 = sector_for_interval(1.0, 0.1, 3, 1)
    psi2 = sector_for_interval(2.0, 0.1, 3, 1)
    assert psi1 > 0 and psi2 <= psi1
    sec = Sector(1.1, psi1)
    assert all(sec.contains(x) for x in np.linspace(0, 1, 64))
    r, k = r_bound(3, 1), sttt_parabola_k(3, 1)
    with mpmath.workprec(320):
        assert all(in_parabola(z**r, mpmath.mpf(k)) for z in sec.boundary_samples(512))


def test_invariant_map_examples(rng):
    assert invariant_map([0, 0, 0], [1, 2, 3]) == 1
    assert invariant_map([1], [1]) == 2
    with pytest.raises(ZeroDivisionError):
        invariant_map([1], [0])
    for _ in range(200):
        a = [complex(random_weight_in_parabola(2, rng)) for _ in range(2)]
        z = [complex(rng.uniform(0.5, 5), rng.uniform(-5, 5)) for _ in range(2)]
        assert invariant_map(a, z).real >= 0.5 - 1e-12


def test_invariant_map_batched():
    a = np.array([[1.0, 2.0], [0.5, 0.5]])
    z = np.array([[1.0, 1.0], [2.0, 0.5]])
    assert np.allclose(invariant_map(a, z), [4.0, 2.25])


def test_asano_points():
    assert asano_boundary_point(2, 0) == Fraction(-1, 4)
    assert asano_boundary_point(3, Fraction(1, 3)) == GaussianRational(0, Fraction(2, 9))
    rnd = random.Random(5)
    for k0 in (2, 3, 5):
        k = k0 * k0 / 4
        for _ in range(100):
            z = asano_boundary_point(k0, rnd.uniform(-10, 10))
            assert abs(z.imag**2 - (z.real / k + 1 / (4 * k * k))) < 1e-12 * max(1.0, z.imag**2)
    assert AsanoRegion(2).k == 1 and AsanoRegion(2).contains(0)
    with pytest.raises(ValueError):
        AsanoRegion(1)


def test_parabola_nesting(rng):
    for _ in range(500):
        z = complex(rng.uniform(-1, 3), rng.uniform(-2, 2))
        k1 = rng.uniform(0.1, 4)
        k2 = k1 + rng.uniform(0, 4)
        if in_parabola(z, k2):
            assert in_parabola(z, k1)


def test_region_spec():
    assert RegionSpec("parabola", (1,)).contains(0.5)
    assert RegionSpec("halfplane", (0.5,)).contains(0.5)
    assert RegionSpec("F", (3, 1)).contains(1)
    assert RegionSpec("sector", (1.0, 0.1, 0.5)).contains(0.5 + 0.1j)
    for bad in (("parabola", (0,)), ("F", (2, 1)), ("sector", (1, 0.1, 2.0)), ("nope", ())):
        with pytest.raises(ValueError):
            RegionSpec(*bad)
