import math
import random
from fractions import Fraction

import pytest

from hardcore_zeros.gaussian import GaussianRational
from hardcore_zeros.graph import GraphError, cycle_graph, lexicographic_blowup, path_graph
from hardcore_zeros.indpoly import cycle_eigenvalues, cycle_transfer_eval, weight_scale, z_brute, z_eval
from hardcore_zeros.families import (
    MultipartiteSpec,
    blowup_reduce_clique,
    blowup_reduce_independent,
    cycle_b_sequence,
    cycle_zero_weights,
    find_indifferent_lambda,
    find_sparse_counterexample,
    format_zero_csv,
    indifference_gap,
    lift_clique_weights,
    make_cycle,
    make_multipartite,
    make_path_power,
    make_subdivided_claw,
    make_tree_T,
    multipartite_root_near,
    multipartite_z,
    quadratic_root,
    scale_weights_for_blowup,
    tree_fixed_point,
    tree_g,
    tree_g_iter,
    tree_g_prime,
    tree_root_ratio,
    tree_vertex_count,
    tree_zero_nearest,
    tree_zero_search,
)
from hardcore_zeros.regions import in_parabola, parabola_boundary_gap
from hardcore_zeros.sampling import random_gaussian


def test_constructors():
    T = make_tree_T(1, 1)
    assert T.n == 7 and T.degree(0) == 2
    for d, k in ((0, 1), (2, 1), (3, 2)):
        G = make_tree_T(d, k)
        assert G.n == tree_vertex_count(d, k) and G.max_degree <= 3 and G.m == G.n - 1
    assert [make_path_power(7, 2).degree(v) for v in range(7)] == [2, 3, 4, 4, 4, 3, 2]
    assert make_multipartite((1, 1, 1, 1)).edges() == [(0, 1)]
    assert make_subdivided_claw((1, 1, 1)).n == 4
    assert make_cycle(6) == cycle_graph(6)
    with pytest.raises(GraphError):
        make_cycle(5)
    with pytest.raises(ValueError):
        MultipartiteSpec(0, 1, 1, 1)


def test_cycle_zero_exact_c4():
    sol = cycle_zero_weights(0, 2)
    assert sol.b_squared == Fraction(1, 2) and sol.valid
    assert 1 - 2 * sol.b_squared == 0
    assert abs(sol.b - 1 / math.sqrt(2)) < 1e-15


@pytest.mark.parametrize("a", [0, 0.5, 1, 2])
def test_cycle_zero_residuals(a):
    for n in range(2, 31):
        sol = cycle_zero_weights(a, n)
        assert sol.valid
        alpha, beta = cycle_eigenvalues(sol.lam, sol.mu)
        assert abs(sol.residual()) < 1e-8 * max(abs(alpha), abs(beta)) ** n
        assert abs(abs(alpha) - abs(beta)) <= 1e-10 * abs(alpha)


def test_cycle_b_tends_to_boundary():
    bs = cycle_b_sequence(1, range(2, 120))
    assert all(x > y for x, y in zip(bs, bs[1:]))
    assert all(b > math.sqrt(1.25) for b in bs)
    assert abs(bs[-1] - math.sqrt(1.25)) < 1e-3


def test_cycle_zero_n10():
    sol = cycle_zero_weights(1, 10)
    alpha, _ = cycle_eigenvalues(sol.lam, sol.mu)
    assert abs(sol.residual()) < 1e-9 * abs(alpha) ** 10


def test_blowup_examples():
    G = lexicographic_blowup(cycle_graph(4), 2, "clique")
    red = blowup_reduce_clique([1] * 8, 2)
    assert red == [2, 2, 2, 2]
    assert z_eval(G, [1] * 8) == z_eval(cycle_graph(4), red) == 17
    w = [3, 5, 7]
    assert blowup_reduce_clique(w, 1) == w
    assert blowup_reduce_clique([4, 0, 6, 0, 8, 0, 9, 0], 2) == [4, 6, 8, 9]
    with pytest.raises(ValueError):
        blowup_reduce_clique([1, 2, 3], 2)


@pytest.mark.parametrize("base", [cycle_graph(4), cycle_graph(6), path_graph(5)])
@pytest.mark.parametrize("s", [2, 3])
def test_clique_blowup_identity(base, s):
    rnd = random.Random(base.n * 10 + s)
    G = lexicographic_blowup(base, s, "clique")
    for _ in range(10):
        w = [random_gaussian(rnd) for _ in range(G.n)]
        assert z_eval(G, w) == z_eval(base, blowup_reduce_clique(w, s))


def test_sparse_grouping_identity(rng):
    for n in (2, 3, 4):
        G = lexicographic_blowup(cycle_graph(2 * n), 2, "independent")
        for _ in range(10):
            w = [random_gaussian(rng) for _ in range(G.n)]
            mu = blowup_reduce_independent(w, 2)
            assert mu[0] == (w[0] + 1) * (w[1] + 1) - 1
            assert z_eval(G, w) == z_eval(cycle_graph(2 * n), mu)


def test_scale_weights():
    z = complex(3 / 4, 1)  # on the boundary of R(1)
    assert abs(parabola_boundary_gap(z, 1)) < 1e-15
    assert abs(parabola_boundary_gap(scale_weights_for_blowup(z, 2), 2)) < 1e-15
    assert scale_weights_for_blowup(1, 4) == Fraction(1, 4)


def test_lifted_cycle_zero():
    sol = cycle_zero_weights(0.5, 3)
    base = [sol.lam if i % 2 == 0 else sol.mu for i in range(6)]
    for s in (2, 3):
        G = lexicographic_blowup(cycle_graph(6), s, "clique")
        w = lift_clique_weights(base, s)
        assert abs(z_eval(G, w)) < 1e-12 * weight_scale(G, w)


def test_sparse_counterexample():
    ce = find_sparse_counterexample(0.5)
    assert (ce.W, ce.a, ce.n) == (8, 17, 16)
    assert ce.delta < 0.5 and ce.delta**2 * 9 > 2
    assert not in_parabola(ce.z, 1)
    assert ce.b**2 > 17.25
    assert ce.relative_residual() < 1e-8
    assert abs(z_eval(ce.graph, ce.weights)) < 1e-8 * weight_scale(ce.graph, ce.weights)
    text = ce.to_text()
    assert text.startswith("# sparse eps=0.5 W=8") and len(text.splitlines()) == 1 + 4 * ce.n


def test_sparse_window():
    # feasible n for eps=0.5 are 16..31: check the two ends by hand
    for n, ok in ((15, False), (16, True), (31, True), (32, False)):
        b = cycle_zero_weights(17, n).b
        delta = b / 9
        assert (delta < 0.5 and delta**2 * 9 > 2) == ok


def test_multipartite_closed_form(rng):
    assert multipartite_z((2, 1, 3, 2), 0) == 1
    lam = GaussianRational(Fraction(1, 7), Fraction(2, 3))
    assert multipartite_z((1, 1, 1, 1), lam) == 1 + 2 * lam
    assert multipartite_z((1, 1, 2, 1), -1) == -1
    for a in (1, 2):
        for b in (1, 2):
            for n in (1, 2, 3):
                for m in (1, 2, 3):
                    G = make_multipartite((a, b, n, m))
                    for _ in range(3):
                        lam = random_gaussian(rng)
                        assert multipartite_z((a, b, n, m), lam) == z_eval(G, lam)


def test_quadratic_root():
    q = quadratic_root(100, 100)
    assert abs(float(q) - (-100 - math.sqrt(89600)) / 200) < 1e-12
    assert abs(float(q) + 2) < 0.01


@pytest.mark.parametrize("z,eps", [(2 + 2j, 0.1), (-3, 0.25), (3j, 0.25)])
def test_multipartite_root_near(z, eps):
    res = multipartite_root_near(z, eps)
    assert abs(res.root - z) <= 3 * eps and res.residual < 1e-10
    assert res.N >= math.pi * abs(z) / eps
    assert res.spec == MultipartiteSpec(res.A, res.B, 2 * res.N, res.N)


def test_multipartite_root_errors():
    with pytest.raises(ValueError):
        multipartite_root_near(1.05, 0.1)
    with pytest.raises(ValueError):
        multipartite_root_near(50, 0.01, degree_cap=100)


def test_tree_g_examples():
    assert tree_g_iter(5, 1, 0) == 5
    assert tree_g(Fraction(1), 1, Fraction(0)) == Fraction(4, 9)
    with pytest.raises(ZeroDivisionError):
        tree_g(1, 1, -1)


def test_tree_ratio_matches_explicit_tree(rng):
    for d in range(4):
        for k in (1, 2):
            if tree_vertex_count(d, k) > 70:
                continue
            for _ in range(3):
                lam = GaussianRational(Fraction(rng.randint(1, 40), 10), Fraction(rng.randint(-20, 20), 10))
                assert tree_g_iter(lam, k, d) == tree_root_ratio(d, k, lam)


def test_tree_fixed_point():
    assert tree_fixed_point(0, 1) == 0
    z = tree_fixed_point(1, 1)
    assert 0 < z < 1 and abs(tree_g(1, 1, z) - z) < 1e-12
    rnd = random.Random(3)
    for _ in range(100):
        lam = rnd.uniform(1e-3, 100)
        z = tree_fixed_point(lam, 1)
        assert z >= 0 and abs(tree_g(lam, 1, z) - z) < 1e-12
    big = 1e9
    assert abs(tree_fixed_point(big, 1) / big ** (1 / 3) - 1) < 0.01


def test_tree_g_prime(rng):
    assert tree_g_prime(0, 1, 0.3) == 0
    for _ in range(20):
        lam = complex(rng.uniform(0.1, 5), rng.uniform(-1, 1))
        z = complex(rng.uniform(0, 2), rng.uniform(-0.5, 0.5))
        h = 1e-6
        fd = (tree_g(lam, 1, z + h) - tree_g(lam, 1, z - h)) / (2 * h)
        assert abs(tree_g_prime(lam, 1, z) - fd) < 1e-6
    big = 1e8
    assert abs(tree_g_prime(big, 1, tree_fixed_point(big, 1)) + 2) < 0.01


def test_indifferent_lambda():
    assert indifference_gap(0.01, 1) < 0
    assert indifference_gap(1e6, 1) > 0
    lam0 = find_indifferent_lambda(1)
    assert abs(indifference_gap(lam0, 1)) < 1e-10
    assert abs(lam0 - 42.8591236) < 1e-5


def test_tree_zero_search_and_cross_check():
    lam0 = find_indifferent_lambda(1)
    for d in (1, 2):
        res = tree_zero_nearest(1, d, complex(lam0, 0))
        assert res.converged and res.residual < 1e-10
        G = make_tree_T(d, 1)
        assert abs(z_eval(G, res.lam)) < 1e-9 * weight_scale(G, res.lam)


def test_tree_zero_search_failure_carries_trajectory():
    res = tree_zero_search(1, 3, complex(1e6, 1e6), steps=5)
    assert not res.converged and len(res.trajectory) >= 1
    with pytest.raises(ValueError):
        tree_zero_search(1, 0)


def test_tree_zeros_move_toward_axis():
    lam0 = find_indifferent_lambda(1)
    ims = [abs(tree_zero_nearest(1, d, complex(lam0, 0)).lam.imag) for d in (5, 10, 20, 40)]
    assert all(x > y for x, y in zip(ims, ims[1:]))


def test_zero_csv():
    res = tree_zero_search(1, 2, complex(-2.5, 0.1))
    text = format_zero_csv([res])
    assert text.splitlines()[0] == "param,re,im,residual"
    assert text.splitlines()[1].startswith("2,")
