import random

import pytest
import sympy as sp

from classical_oracle import bracket as oracle_bracket, jones as oracle_jones, writhe as oracle_writhe
from surfpoly.errors import (
    LinkFormatError,
    MissingOrientation,
    NonLaurentResult,
    NotAlternating,
    NotFourValent,
    OverPairNotOpposite,
)
from surfpoly.homology import SurfaceHomology, Subspace, orthogonal_complement
from surfpoly.laurent import LaurentPolynomial as L
from surfpoly.links import (
    LinkDiagram,
    _curve_chain,
    classical_bracket,
    jones,
    kauffman,
    medial_diagram,
    parse_diagram,
    serialize_diagram,
    states,
    tait_cycle_classes,
    tait_graph,
    tilde_kauffman,
    verify_thistlethwaite,
)
from surfpoly.maps import canonical_code, random_map
from surfpoly.polynomials import p_bruteforce

UNKNOT = "freeloop:\n"
ESSENTIAL = "surface_sigma: (1 3 2 4)\nsurface_alpha: (1 2)(3 4)\nfreeloop: 1\n"
KINK_TORUS = "crossing 1: darts (1 2 3 4) over (1 3)\nalpha: (1 3)(2 4)\norient: 1\n"
KINK_SPHERE = "crossing 1: darts (1 2 3 4) over (1 3)\nalpha: (1 4)(2 3)\norient: 1\n"


def sympy_of(poly, subs):
    expr = sp.Integer(0)
    for exps, c in poly.terms.items():
        mono = sp.Integer(c)
        for v, e in zip(poly.variables, exps):
            mono *= subs[v] ** e
        expr += mono
    return sp.expand(expr)


def test_parse_unknot():
    d = parse_diagram(UNKNOT)
    assert d.n_crossings == 0 and d.genus == 0
    assert len(d.free_loops) == 1


def test_parse_trefoil(data_dir):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    assert d.n_crossings == 3
    assert (d.base.n_vertices, d.base.n_edges, d.base.n_faces) == (3, 6, 5)
    assert d.genus == 0
    assert len(d.strand_components) == 1


def test_parse_virtual_trefoil(data_dir):
    d = parse_diagram((data_dir / "vtrefoil.vlk").read_text())
    assert d.n_crossings == 2 and d.genus == 1


def test_parse_rejects_bad_diagrams():
    with pytest.raises(NotFourValent):
        parse_diagram("crossing 1: darts (1 2 3) over (1 2)\nalpha: (1 2)\n")
    with pytest.raises(OverPairNotOpposite):
        parse_diagram("crossing 1: darts (1 2 3 4) over (1 2)\nalpha: (1 3)(2 4)\n")
    with pytest.raises(LinkFormatError):
        parse_diagram("crossing 1: darts (1 2 3 4) over (1 3)\n")  # no alpha
    with pytest.raises(LinkFormatError):
        # free-loop walks need a crossingless diagram
        parse_diagram(
            "crossing 1: darts (1 2 3 4) over (1 3)\nalpha: (1 3)(2 4)\nfreeloop: 1\n"
        )


def test_serialize_round_trip(data_dir):
    for name in ("trefoil.vlk", "vtrefoil.vlk", "torus-alt.vlk"):
        text = (data_dir / name).read_text()
        d = parse_diagram(text)
        again = parse_diagram(serialize_diagram(d))
        assert again.base == d.base and again.over == d.over


def test_states_examples(tb2):
    st = list(states(parse_diagram(UNKNOT)))
    assert len(st) == 1 and (st[0].c, st[0].r, st[0].k) == (1, 0, 1)
    st = list(states(parse_diagram(ESSENTIAL)))
    assert len(st) == 1 and (st[0].c, st[0].r, st[0].k) == (1, 1, 0)


def test_states_trefoil_classical(data_dir):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    for st in states(d):
        assert st.r == 0 and st.k == st.c  # genus 0 forces r = 0


def test_k_plus_r_equals_c_everywhere(data_dir):
    rng = random.Random(71)
    diagrams = [
        parse_diagram((data_dir / n).read_text())
        for n in ("trefoil.vlk", "vtrefoil.vlk", "torus-alt.vlk")
    ]
    diagrams += [medial_diagram(random_map(rng.randint(1, 4), rng)) for _ in range(8)]
    for d in diagrams:
        for st in states(d):
            assert st.k + st.r == st.c
            assert st.alpha_count + st.beta_count == d.n_crossings


def test_kauffman_examples(tb2):
    assert kauffman(parse_diagram(UNKNOT)) == L.variable("d")
    assert kauffman(parse_diagram(ESSENTIAL)) == L.variable("Z")
    kink = parse_diagram(KINK_TORUS)
    assert kauffman(kink) == (L.variable("A") + L.variable("B")) * L.variable("Z")


def test_classical_specialization_is_bracket(data_dir):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    A = sp.Symbol("A")
    mine = sympy_of(
        classical_bracket(d), {"A": A, "B": A ** -1, "d": -(A ** 2) - A ** -2}
    )
    theirs = oracle_bracket((data_dir / "trefoil.vlk").read_text())
    assert sp.expand(mine - theirs) == 0


def test_genus0_diagrams_match_oracle():
    rng = random.Random(73)
    A, t, u = sp.Symbol("A"), sp.Symbol("t"), sp.Symbol("u")
    done = 0
    while done < 12:
        m = random_map(rng.randint(1, 5), rng)
        if m.total_genus != 0:
            continue
        d = medial_diagram(m)
        text = serialize_diagram(d)
        k = kauffman(d)
        assert "Z" not in k.variables  # genus 0: Z never appears
        mine = sympy_of(
            classical_bracket(d), {"A": A, "B": A ** -1, "d": -(A ** 2) - A ** -2}
        )
        assert sp.expand(mine - oracle_bracket(text)) == 0
        mj = sympy_of(jones(d), {"u": u, "Z": sp.Symbol("Z")})
        assert sp.expand(mj.subs(u, t ** sp.Rational(1, 4)) - oracle_jones(text)) == 0
        done += 1


def test_jones_unknot_and_essential():
    assert jones(parse_diagram(UNKNOT)) == 1
    with pytest.raises(NonLaurentResult):
        jones(parse_diagram(ESSENTIAL))
    assert jones(parse_diagram(ESSENTIAL), normalized=False) == L.variable("Z")


def test_jones_right_trefoil(data_dir):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    assert jones(d).to_canonical_string() == "-u^-16 + u^-12 + u^-4"


def test_jones_needs_orientation(data_dir):
    text = (data_dir / "trefoil.vlk").read_text()
    d = parse_diagram("\n".join(l for l in text.splitlines() if not l.startswith("orient")))
    with pytest.raises(MissingOrientation):
        jones(d)


def test_writhe_matches_oracle():
    rng = random.Random(79)
    for _ in range(10):
        m = random_map(rng.randint(1, 5), rng)
        d = medial_diagram(m)
        assert d.writhe() == oracle_writhe(serialize_diagram(d))


def test_kink_jones_invariance_direction(tb2):
    # writhe of the positive kink is +-1 and flips with the mirror
    k1 = parse_diagram(KINK_SPHERE)
    base = k1.base
    over_m = {
        v: frozenset((base.sigma[min(p)], base.sigma[max(p)])) for v, p in k1.over.items()
    }
    k2 = LinkDiagram(base=base, over=over_m, orientation=k1.orientation)
    assert k1.writhe() == -k2.writhe() and abs(k1.writhe()) == 1
    # both reduce to the unknot's Jones polynomial
    assert jones(k1) == 1 and jones(k2) == 1


def test_tait_graph_trefoil(data_dir, theta):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    t = tait_graph(d)
    tri = theta.dual()
    code = canonical_code(t.map)
    assert code in (canonical_code(theta), canonical_code(tri))
    # shading swap gives the dual Tait graph: mirror the diagram
    base = d.base
    over_m = {
        v: frozenset((base.sigma[min(p)], base.sigma[max(p)])) for v, p in d.over.items()
    }
    t2 = tait_graph(LinkDiagram(base=base, over=over_m))
    assert {code, canonical_code(t2.map)} == {
        canonical_code(theta),
        canonical_code(tri),
    }


def test_tait_graph_torus_diagram(data_dir, tb2):
    d = parse_diagram((data_dir / "torus-alt.vlk").read_text())
    t = tait_graph(d)
    assert t.map.total_genus == 1
    assert canonical_code(t.map) == canonical_code(tb2)


def test_tait_graph_one_crossing_kink(sl, sb):
    # the two shadings of the 1-crossing sphere diagram give the single
    # bridge and the single loop, with P = 1+X and 1+Y side by side
    k1 = parse_diagram(KINK_SPHERE)
    base = k1.base
    over_m = {
        v: frozenset((base.sigma[min(p)], base.sigma[max(p)])) for v, p in k1.over.items()
    }
    k2 = LinkDiagram(base=base, over=over_m, orientation=k1.orientation)
    polys = set()
    for d in (k1, k2):
        t = tait_graph(d)
        assert canonical_code(t.map) in (canonical_code(sl), canonical_code(sb))
        assert verify_thistlethwaite(d).all_passed
        polys.add(p_bruteforce(t.graph).to_canonical_string())
    assert polys == {"1 + X", "1 + Y"}


def test_tait_rejects_non_alternating(data_dir):
    d = parse_diagram((data_dir / "vtrefoil.vlk").read_text())
    if not d.is_alternating():
        with pytest.raises(NotAlternating):
            tait_graph(d)


def test_medial_inverts_tait():
    rng = random.Random(83)
    for _ in range(10):
        m = random_map(rng.randint(1, 5), rng)
        d = medial_diagram(m)
        assert d.is_alternating()
        assert d.genus == m.total_genus
        t = tait_graph(d)
        assert canonical_code(t.map) == canonical_code(m)


def test_tilde_kauffman_specializes(data_dir, tb2):
    d = medial_diagram(tb2)
    parts = tilde_kauffman(d)
    spec = sum(
        (poly * L.monomial(1, {"Z": v.dim}) for v, poly in parts), L.zero()
    )
    assert spec == kauffman(d)
    # sphere diagrams: every coefficient is the zero subspace
    tre = parse_diagram((data_dir / "trefoil.vlk").read_text())
    assert all(v.dim == 0 for v, _ in tilde_kauffman(tre))
    # essential loop: single coefficient, the line it spans
    parts = tilde_kauffman(parse_diagram(ESSENTIAL))
    assert len(parts) == 1 and parts[0][0].dim == 1 and parts[0][1] == 1


def test_tilde_kauffman_remark1_tait_correspondence():
    # state subspace = V(H) ∩ V(H)^perp for the matching Tait subgraph
    rng = random.Random(89)
    done = 0
    while done < 6:
        m = random_map(rng.randint(1, 4), rng)
        if m.total_genus < 1:
            continue
        d = medial_diagram(m)
        tait = tait_graph(d)
        hom = SurfaceHomology(d.base)
        for st in states(d):
            h = [
                tait.crossing_edge[v]
                for i, v in enumerate(d.crossings)
                if st.choices[i]
            ]
            vh = tait_cycle_classes(d, tait, h, hom)
            expected = vh.intersection(orthogonal_complement(vh, hom.form))
            got = Subspace.from_vectors(
                [hom.project_chain(_curve_chain(d.base, c)) for c in st.curves],
                hom.dim,
            )
            assert got == expected
        done += 1


def test_thistlethwaite_trefoil(data_dir):
    d = parse_diagram((data_dir / "trefoil.vlk").read_text())
    assert verify_thistlethwaite(d).all_passed


def test_thistlethwaite_shading_swap_duality(data_dir):
    from surfpoly.polynomials import verify_duality

    d = parse_diagram((data_dir / "torus-alt.vlk").read_text())
    t = tait_graph(d)
    assert verify_duality(t.map).all_passed
    assert verify_duality(t.map.dual()).all_passed


def test_thistlethwaite_random_surfaces():
    rng = random.Random(97)
    done = 0
    while done < 8:
        m = random_map(rng.randint(2, 5), rng)
        if m.total_genus not in (1, 2):
            continue
        assert verify_thistlethwaite(medial_diagram(m)).all_passed
        done += 1
