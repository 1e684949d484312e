import itertools
import random

import pytest
from hypothesis import given, settings

from dgh.core import (
    Digraph,
    DigraphMap,
    cartesian_product,
    constant_map,
    identity_map,
    induced_subdigraph,
    iter_maps,
    point,
    validate_map,
)
from dgh.errors import SizeOverflow, TruncationMismatch
from dgh.homotopy import pi0
from dgh.lines import LineDigraph, PathMap, constant_class, enumerate_subdivisions, subdivide
from dgh.spaces import (
    all_loops,
    all_mediating_maps,
    boundary,
    build_hf,
    build_mapping_path_digraph,
    build_reduced_loop_digraph,
    build_reduced_path_digraph,
    build_unreduced_loop_digraph,
    check_pi0_exactness,
    class_subdigraph,
    component_bijection,
    evaluation,
    example_417_digraph,
    iota,
    iterated_mapping_path,
    mapping_path_components,
    mediating_map,
    minimal_paths,
    projection_to_reduced,
    pullback,
    puppe_maps,
    q_after_j,
    verify_example_417,
)
from dgh.homotopy import SearchBudget

from oracles import one_step_brute, weak_components
from samplers import digraphs, fixture_suite, paths, rand_based_map, rand_digraph_arrows

STAR_A = Digraph("*a", [("*", "a")], basepoint="*")
SQUARE = Digraph([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0)], basepoint=0)


def brute_minimal(G, L, loops):
    """Reduced value sequences from the basepoint with every valid orientation."""
    out = set()
    base = G.basepoint
    for k in range(L + 1):
        for tail in itertools.product(G.vertices, repeat=k):
            seq = (base,) + tail
            if any(a == b for a, b in zip(seq, seq[1:])) or (loops and seq[-1] != base):
                continue
            for o in itertools.product((True, False), repeat=k):
                if all(G.has_arrow(a, b) if fwd else G.has_arrow(b, a)
                       for (a, b), fwd in zip(zip(seq, seq[1:]), o)):
                    out.add((seq, o))
    return out


def test_point_has_one_class():
    for build in (build_reduced_path_digraph, build_reduced_loop_digraph):
        P = build(point(), 3)
        assert len(P) == 1 and not P.digraph.arrows


def test_single_arrow():
    P = build_reduced_path_digraph(STAR_A, 1)
    assert [c.values for c in P.vertices] == [("*",), ("*", "a")]
    assert P.digraph.arrows == {(constant_class("*"), P.vertices[1])}


@settings(max_examples=30, deadline=None)
@given(digraphs(4))
def test_enumeration_matches_brute_force(G):
    for loops in (False, True):
        got = {(c.values, c.orientation) for c in minimal_paths(G, 3, loops=loops)}
        assert got == brute_minimal(G, 3, loops)


@settings(max_examples=30, deadline=None)
@given(digraphs(4))
def test_every_class_reaches_the_constant_one(G):
    P = build_reduced_path_digraph(G, 3)
    assert len(pi0(P.digraph)) == 1


def test_directed_square():
    Lb = build_reduced_loop_digraph(SQUARE, 4)
    assert {(c.values, c.orientation) for c in Lb.vertices} == brute_minimal(SQUARE, 4, True)
    assert len(Lb) == 11 and len(Lb.digraph.arrows) == 28
    assert any(c.values == (0, 1, 2, 3, 0) for c in Lb.vertices)
    for c in Lb.vertices:
        for d in Lb.vertices:
            if c != d:
                brute = one_step_brute(c.values, c.orientation, d.values, d.orientation, SQUARE.related, 1)
                assert ((c, d) in Lb.digraph.arrows) == (brute is not None)


@pytest.mark.parametrize("L,counts", [(1, (1, 0)), (2, (9, 16)), (3, (25, 144))])
def test_grid_example_counts(L, counts):
    Lb = build_reduced_loop_digraph(example_417_digraph(), L)
    assert (len(Lb), len(Lb.digraph.arrows)) == counts


@pytest.mark.parametrize("seed", range(5))
def test_arrow_methods_agree(seed):
    rng = random.Random(seed)
    G = rand_digraph_arrows(rng, 4, rng.randint(2, 6), "g")
    for build in (build_reduced_path_digraph, build_reduced_loop_digraph):
        ds = [build(G, 3, method=m).digraph for m in ("matrix", "neighbours", "pairwise")]
        assert ds[0] == ds[1] == ds[2]


def test_class_subdigraph_is_induced():
    P = build_reduced_path_digraph(SQUARE, 4)
    keep = [c for c in P.vertices if c.length % 2 == 0]
    assert class_subdigraph(SQUARE, keep) == induced_subdigraph(P.digraph, set(keep))


def test_size_cap():
    with pytest.raises(SizeOverflow):
        build_reduced_path_digraph(example_417_digraph(), 6, max_vertices=100)


def test_evaluation():
    assert evaluation(constant_class("*")) == "*"
    assert evaluation(PathMap(LineDigraph([True]), STAR_A, "*a")) == "a"


@given(paths())
def test_evaluation_ignores_subdivision(f):
    h = enumerate_subdivisions(f.domain, 2 * f.length + 2)[-1]
    assert evaluation(subdivide(f, h)) == evaluation(f) == evaluation(f.key())


# -- LG

def test_loops_on_a_point():
    LG = build_unreduced_loop_digraph(point(), 2)
    assert sorted(f.length for f in LG.vertices) == [0, 1, 1, 2, 2, 2, 2]
    assert LG.basepoint.length == 0
    # every constant loop on a point is related to the shorter ones it shrinks onto
    assert len(pi0(LG)) == 1


@pytest.mark.parametrize("seed", range(5))
def test_projection_and_components(seed):
    rng = random.Random(seed)
    G = rand_digraph_arrows(rng, 3, rng.randint(1, 4), "g")
    LG = build_unreduced_loop_digraph(G, 4)
    assert len(LG) == len(all_loops(G, 4))
    p = projection_to_reduced(LG, build_reduced_loop_digraph(G, 4))
    ok, induced = component_bijection(p)
    assert ok


# -- pullbacks

def test_pullback_against_identity():
    rng = random.Random(1)
    X = rand_digraph_arrows(rng, 4, 4, "x")
    G = rand_digraph_arrows(rng, 3, 3, "g")
    f = rand_based_map(rng, X, G)
    P, p1, p2 = pullback(f, identity_map(G))
    assert len(P) == len(X)
    assert {(p1(v), p2(v)) for v in P.vertices} == {(x, f(x)) for x in X.vertices}
    assert {(p1(u), p1(w)) for u, w in P.arrows} == set(X.arrows)


def test_pullback_over_a_point_is_the_product():
    rng = random.Random(2)
    X = rand_digraph_arrows(rng, 3, 3, "x")
    Y = rand_digraph_arrows(rng, 3, 3, "y")
    P, _, _ = pullback(constant_map(X, point()), constant_map(Y, point()))
    assert P == cartesian_product(X, Y)


@pytest.mark.parametrize("seed", range(10))
def test_mediating_map_is_unique(seed):
    rng = random.Random(seed)
    X = rand_digraph_arrows(rng, 3, 3, "x")
    Y = rand_digraph_arrows(rng, 3, 3, "y")
    Z = rand_digraph_arrows(rng, 3, 3, "z")
    W = rand_digraph_arrows(rng, 3, 2, "w")
    f, g = rand_based_map(rng, X, Z), rand_based_map(rng, Y, Z)
    P, p1, p2 = pullback(f, g)
    for a in iter_maps(W, X):
        l1 = DigraphMap(W, X, a, False)
        for b in iter_maps(W, Y):
            if all(f(a[w]) == g(b[w]) for w in W.vertices):
                l2 = DigraphMap(W, Y, b, False)
                found = all_mediating_maps(P, p1, p2, l1, l2)
                assert found == [mediating_map(P, l1, l2)]


# -- mapping path digraph, H_f and the Puppe maps

def test_mapping_path_of_the_identity_on_a_point():
    Pf = build_mapping_path_digraph(identity_map(point()), 2)
    assert len(Pf) == 1


def test_mapping_path_of_an_inclusion():
    i = validate_map({"*": "*"}, point(), STAR_A, based=True)
    Pf = build_mapping_path_digraph(i, 1)
    assert set(Pf.digraph.vertices) == {("*", constant_class("*"))}
    Pf2 = build_mapping_path_digraph(i, 2)
    assert {c.values for _, c in Pf2.digraph.vertices} == {("*",), ("*", "a", "*")}


@pytest.mark.parametrize("f", fixture_suite()[:8], ids=lambda f: f"{len(f.source)}-{len(f.target)}")
def test_components_without_arrows_match_the_digraph(f):
    verts, labels = mapping_path_components(f, 3)
    Pf = build_mapping_path_digraph(f, 3)
    assert set(verts) == set(Pf.digraph.vertices)
    blocks = {}
    for v, lab in zip(verts, labels.tolist()):
        blocks.setdefault(lab, set()).add(v)
    assert {frozenset(b) for b in blocks.values()} == weak_components(Pf.digraph.vertices, Pf.digraph.arrows)


def test_iota_on_a_point():
    f = identity_map(point())
    assert len(iota(iterated_mapping_path(f, 2), build_hf(f, 2)).assignment) == 1


@pytest.mark.parametrize("f", fixture_suite()[:10], ids=lambda f: f"{len(f.source)}-{len(f.target)}")
def test_iota_is_an_isomorphism(f):
    P2, H = iterated_mapping_path(f, 2), build_hf(f, 2)
    assert len(P2) == len(H)
    assert iota(P2, H).based


def test_iota_needs_matching_windows():
    f = fixture_suite()[0]
    with pytest.raises(TruncationMismatch):
        iota(iterated_mapping_path(f, 1), build_hf(f, 2))


@pytest.mark.parametrize("f", fixture_suite()[:10], ids=lambda f: f"{len(f.source)}-{len(f.target)}")
def test_q_after_j(f):
    assert all(a == b for a, b in q_after_j(f, 4).items())
    pm = puppe_maps(f, 2)
    assert pm.q_after_j_is_identity()
    star = constant_class(f.target.basepoint)
    assert pm.q(pm.j(star)) == star


def test_boundary_of_the_unit_loop():
    G = Digraph("*a", [("*", "a")], basepoint="*")
    f = identity_map(G)
    e = PathMap(LineDigraph.standard(2), G, "***", "loop")
    assert boundary(f, 2, e) == ("*", constant_class("*"))


# -- exactness

def test_identity_is_exact():
    G = Digraph("*ab", [("*", "a")], basepoint="*")
    r = check_pi0_exactness(identity_map(G), 2)
    assert r.passed and r.image == r.kernel == frozenset({"*"})


def test_constant_map_from_a_disconnected_source():
    X = Digraph("*bc", [("b", "c")], basepoint="*")
    r = check_pi0_exactness(constant_map(X, point()), 2)
    assert r.kernel == frozenset({"*", "b"})
    assert r.passed


def test_inclusion_of_the_basepoint():
    f = validate_map({"*": 0}, point(), SQUARE, based=True)
    r = check_pi0_exactness(f, 2)
    assert r.passed and r.kernel == r.image == frozenset({"*"})


@pytest.mark.parametrize("f", fixture_suite(), ids=lambda f: f"{len(f.source)}-{len(f.target)}")
def test_exactness_fixtures(f):
    r = check_pi0_exactness(f, 2)
    assert r.passed and r.stable


# -- the 3x3 example

def test_example_417_with_a_small_budget():
    r = verify_example_417(SearchBudget(max_states=5000))
    assert r.valid and r.centre_neighbours_are_bold and r.bold_pairwise_nonadjacent
    assert r.base_not_adjacent_to_centre and not r.constant_reached
    assert r.search["states"] == 5000


def test_example_digraph_size():
    G = example_417_digraph()
    assert (len(G), len(G.arrows)) == (10, 20)
    assert pi0(G).blocks == [tuple(G.vertices)]
    assert weak_components(G.vertices, G.arrows) == {frozenset(G.vertices)}
