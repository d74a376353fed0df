import random

import pytest

from surfpoly.errors import TooManyEdges
from surfpoly.homology import SurfaceHomology
from surfpoly.laurent import LaurentPolynomial as L
from surfpoly.maps import EmbeddedSubgraph, random_map
from surfpoly.polynomials import (
    abstract_graph,
    bollobas_riordan,
    component_maps,
    p_bruteforce,
    p_prime,
    p_recursive,
    tutte,
    verify_duality,
    verify_specializations,
)


def test_p_figure2_values(tb2, fig2):
    # single essential loop marked on the torus
    g1 = EmbeddedSubgraph(tb2, frozenset({1}), frozenset({1}))
    assert p_bruteforce(g1).to_canonical_string() == "1 + B"
    # two disjoint essential loops on one torus
    assert p_bruteforce(fig2).to_canonical_string() == "2 + B + Y"


def test_p_tb2_by_hand(tb2):
    assert p_bruteforce(tb2).to_canonical_string() == "2 + A + B"


def test_cap_enforced():
    rng = random.Random(0)
    m = random_map(6, rng)
    with pytest.raises(TooManyEdges):
        p_bruteforce(m, cap=5)


def test_p_recursive_base_cases(sb, sl, tb2):
    assert p_recursive(sb).to_canonical_string() == "1 + X"
    assert p_recursive(sl).to_canonical_string() == "1 + Y"
    assert p_recursive(tb2) == p_bruteforce(tb2)


def test_p_recursive_matches_bruteforce_random():
    rng = random.Random(51)
    for _ in range(25):
        m = random_map(rng.randint(1, 8), rng)
        assert p_recursive(m) == p_bruteforce(m)


def test_p_recursive_on_marked_subgraphs(fig2):
    assert p_recursive(fig2) == p_bruteforce(fig2)


def test_contraction_deletion_rules():
    rng = random.Random(53)
    x = L.variable("X")
    y = L.variable("Y")
    checked_cd = checked_bridge = checked_loop = 0
    while min(checked_cd, checked_bridge, checked_loop) < 10:
        m = random_map(rng.randint(2, 6), rng)
        g = EmbeddedSubgraph.full(m)
        hom = SurfaceHomology(m)
        p = p_bruteforce(g)
        for e in g.sorted_edges:
            if g.is_loop(e):
                # rule (3) applies only to loops trivial in H1 of the surface
                if hom.is_trivial({e: 1}):
                    assert p == (1 + y) * p_bruteforce(g.delete_edge(e))
                    checked_loop += 1
            elif e in g.bridges:
                assert p == (1 + x) * p_bruteforce(g.contract_edge(e))
                checked_bridge += 1
            else:
                assert p == p_bruteforce(g.delete_edge(e)) + p_bruteforce(
                    g.contract_edge(e)
                )
                checked_cd += 1


def test_tutte_examples(tb2, sb, theta):
    assert tutte(*abstract_graph(tb2)).to_canonical_string() == "1 + 2*Y + Y^2"
    assert tutte(*abstract_graph(sb)).to_canonical_string() == "1 + X"
    # triangle: verify T = Y^g P(X,Y,Y,1/Y) with g = 0
    tri = theta.dual()
    t = tutte(*abstract_graph(tri))
    y = L.variable("Y")
    assert t == p_bruteforce(tri).substitute({"A": y, "B": y ** -1})


def test_bollobas_riordan_examples(tb2, sl, sb):
    assert bollobas_riordan(tb2) == 1 + 2 * L.variable("Y") + L.monomial(
        1, {"Y": 2, "Z": 2}
    )
    assert bollobas_riordan(sl).to_canonical_string() == "1 + Y"
    assert bollobas_riordan(sb).to_canonical_string() == "X"


def test_br_z_exponent_is_s():
    from surfpoly.invariants import scanner_for

    rng = random.Random(55)
    for _ in range(10):
        m = random_map(rng.randint(1, 6), rng)
        g = EmbeddedSubgraph.full(m)
        sc = scanner_for(g)
        for mask in range(1 << m.n_edges):
            inv = sc.invariants_of_mask(mask)
            assert inv.c - inv.bc + inv.n == inv.s


def test_p_prime_examples(tb2, sl):
    assert p_prime(tb2) == L.monomial(1, {"B": 2}) + 2 * L.variable("Y") + L.monomial(
        1, {"A": 2, "Y": 2}
    )
    assert p_prime(sl).to_canonical_string() == "1 + Y"


def test_duality_examples(tb2, theta, sb, sl):
    for m in (tb2, theta, sb, sl, theta.dual()):
        assert verify_duality(m).all_passed


def test_theta_triangle_duality_by_hand(theta):
    p_theta = p_bruteforce(theta)
    p_tri = p_bruteforce(theta.dual())
    assert p_theta == p_tri.rename({"X": "Y", "Y": "X", "A": "B", "B": "A"})


def test_specializations_tb2(tb2):
    rep = verify_specializations(tb2)
    assert rep.all_passed, rep.lines()
    y = L.variable("Y")
    z = L.variable("Z")
    p = p_bruteforce(tb2)
    assert y * p.substitute({"A": y, "B": y ** -1}) == tutte(*abstract_graph(tb2))
    assert y * p.substitute(
        {"X": L.variable("X") - 1, "A": y * z * z, "B": y ** -1}
    ) == bollobas_riordan(tb2)


def test_specializations_random():
    rng = random.Random(57)
    for _ in range(12):
        m = random_map(rng.randint(1, 6), rng)
        rep = verify_specializations(m)
        assert rep.all_passed, rep.lines()


def test_ribbon_multiplicativity_vs_embedded_counterexample(tb2, sl, fig2):
    # ribbon graphs: P multiplies over disjoint unions
    union = tb2.disjoint_union(sl)
    assert p_bruteforce(union) == p_bruteforce(tb2) * p_bruteforce(sl)
    # embedded (non-ribbon) mode: the two-loop torus configuration fails it
    g1 = EmbeddedSubgraph(fig2.host, frozenset({1}), frozenset({1}))
    p1 = p_bruteforce(g1)
    assert p_bruteforce(fig2) != p1 * p1
    assert p1 * p1 == (1 + L.variable("B")) ** 2


def test_component_maps(tb2, sl):
    union = tb2.disjoint_union(sl)
    comps = component_maps(union)
    assert len(comps) == 2
    assert sorted(c.n_edges for c in comps) == [1, 2]


def test_threads_match_sequential(theta):
    big = theta
    for _ in range(2):
        big = big.disjoint_union(theta)  # 9 edges total
    seq = p_bruteforce(big)
    par = p_bruteforce(big, threads=2)
    assert seq == par

    import surfpoly.polynomials as pol

    old = pol._PARALLEL_THRESHOLD
    pol._PARALLEL_THRESHOLD = 1 << 6
    try:
        par2 = p_bruteforce(big, threads=2)
    finally:
        pol._PARALLEL_THRESHOLD = old
    assert par2 == seq
