from fractions import Fraction

import pytest

from hardcore_zeros.certify import (
    CERTIFIED,
    PRECONDITION_FAILED,
    admissible_enumerate,
    certify_clawfree,
    certify_sttt,
    check_L_bound,
    iter_admissible_pairs,
    iter_rooted_paths,
)
from hardcore_zeros.certify import StructuralViolation
from hardcore_zeros.gaussian import GaussianRational
from hardcore_zeros.graph import build_graph, complete_graph, cycle_graph, path_graph, star_graph
from hardcore_zeros.indpoly import PartitionFunction, z_brute, z_eval
from hardcore_zeros.recognize import first_simplicial_clique
from hardcore_zeros.regions import in_halfplane
from hardcore_zeros.sampling import random_cls_graph, random_sttt_free_graph, random_weight_in_parabola


def test_admissible_single_vertex_and_edge():
    pairs, truncated = admissible_enumerate(build_graph(1, []), 0)
    assert [(p.L, p.U) for p in pairs] == [((), (0,)), ((0,), ())] and not truncated
    pairs, _ = admissible_enumerate(build_graph(2, [(0, 1)]), 0)
    assert [(p.L, p.U) for p in pairs] == [((), (0, 1)), ((0,), (1,)), ((1,), ())]
    assert pairs[2].parent == pairs[1] and pairs[1].parent == pairs[0]


def test_admissible_structure(rng):
    for _ in range(20):
        G = random_sttt_free_graph(rng.randint(2, 9), 1, rng)
        pairs, _ = admissible_enumerate(G, 0)
        for p in pairs:
            assert not set(p.L) & set(p.U)
            if p.U == tuple(range(G.n)):
                assert p.L == ()


def test_admissible_cap():
    pairs, truncated = admissible_enumerate(cycle_graph(8), 0, cap=3)
    assert len(pairs) == 3 and truncated


def test_check_L_bound_examples():
    assert check_L_bound(cycle_graph(6), 0, 1) == (2, 20, True)
    worst, bound, ok = check_L_bound(path_graph(10), 0, 1)
    assert worst <= 2 and bound == 20 and ok
    assert check_L_bound(complete_graph(4), 0, 1)[2]
    with pytest.raises(StructuralViolation):
        check_L_bound(star_graph(3), 0, 1)


def test_sttt_examples():
    G = build_graph(2, [(0, 1)])
    c = certify_sttt(G, Fraction(1, 10), 1)
    assert c.outcome == CERTIFIED and c.final_z == Fraction(6, 5)
    c = certify_sttt(cycle_graph(6), 0.3, 1)
    assert c.certified and all(s.ratio.real >= 0.5 for s in c.steps)
    assert abs(c.final_z - z_brute(cycle_graph(6), 0.3)) < 1e-12
    c = certify_sttt(G, complex(10, 10), 1)
    assert c.outcome == PRECONDITION_FAILED and "S=[0]" in c.message
    with pytest.raises(StructuralViolation):
        certify_sttt(star_graph(3), 1, 1)


def test_clawfree_examples():
    c = certify_clawfree(build_graph(1, []), [0], Fraction(1, 5), 1)
    assert c.certified and c.ratios()[-1] == Fraction(6, 5)
    c = certify_clawfree(cycle_graph(4), [0, 1], 1, 2)
    assert c.certified and c.final_z == 7
    c = certify_clawfree(cycle_graph(4), [0, 1], 2j, 2)
    assert c.outcome == PRECONDITION_FAILED
    with pytest.raises(StructuralViolation):
        certify_clawfree(star_graph(3), None, 1, 3)
    with pytest.raises(StructuralViolation):
        certify_clawfree(cycle_graph(5), [0], 1, 2)  # {0} is not simplicial in C5


def test_ratios_are_true_partition_ratios(rng):
    for _ in range(20):
        k = rng.randint(1, 3)
        G = random_cls_graph(rng.randint(2, 9), k, rng)
        w = [random_weight_in_parabola(k, rng) for _ in range(G.n)]
        c = certify_clawfree(G, None, w, k)
        Z = PartitionFunction(G, w)
        for s in c.steps:
            assert s.ratio == Z(s.U) / Z(s.U & ~s.N)
            if s.U == 0:
                assert s.ratio == 1


def test_clawfree_contexts_cover_rooted_paths(rng):
    for _ in range(20):
        G = random_cls_graph(rng.randint(2, 9), 3, rng)
        if not G.is_connected():
            continue
        K = first_simplicial_clique(G, G.full_mask)
        c = certify_clawfree(G, K, Fraction(1, 10), 3)
        contexts = {(s.U, s.N) for s in c.steps}
        for P in iter_rooted_paths(G, K):
            assert (P.U_mask(G), P.front_mask(G)) in contexts


def test_sttt_soundness_exact(rng):
    for _ in range(30):
        G = random_sttt_free_graph(rng.randint(2, 10), 1, rng)
        w = [GaussianRational(Fraction(rng.randint(1, 20), 10)) for _ in range(G.n)]
        c = certify_sttt(G, w, 1)
        assert c.certified and z_eval(G, w) != 0
        assert all(in_halfplane(s.ratio, Fraction(1, 2)) for s in c.steps)
        assert c.final_z == z_eval(G, w)


def test_sttt_t2(rng):
    for _ in range(5):
        G = random_sttt_free_graph(rng.randint(4, 9), 2, rng, max_degree=3)
        c = certify_sttt(G, Fraction(1, 2), 2)
        assert c.certified


def test_certificate_text():
    c = certify_clawfree(cycle_graph(4), [0, 1], 1, 2)
    lines = c.to_text().splitlines()
    assert lines[0] == "CLAWFREE k=2 K=0,1 certified"
    assert lines[-1] == "FINAL 7 0"
    assert len(lines) == len(c.steps) + 2
    ratio_line = next(ln for ln in lines if ln.split()[1].startswith("2.33"))
    assert ratio_line.split()[1] == "2.33333333333333333333333333333"


def test_admissible_dfs_children_unique():
    G = cycle_graph(6)
    seen = set()
    for L, U, _ in iter_admissible_pairs(G, 0):
        assert (L, U) not in seen
        seen.add((L, U))
