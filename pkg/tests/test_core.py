import pytest
from hypothesis import given, settings

from dgh.core import (
    Digraph,
    LineDigraph,
    box_product,
    cartesian_product,
    constant_map,
    identity_map,
    induced_subdigraph,
    is_isomorphism,
    iter_maps,
    point,
    relative_box_product,
    validate_map,
)
from dgh.errors import BasepointDropped, MapViolation, MissingVertex, SelfLoop, UnknownVertex

from oracles import all_vertex_maps
from samplers import digraphs

J1 = LineDigraph.standard(1).digraph()
J2 = LineDigraph.standard(2).digraph()
J3 = LineDigraph.standard(3).digraph()


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        Digraph(["a"], [("a", "a")])


def test_unknown_vertex_rejected():
    with pytest.raises(UnknownVertex):
        Digraph(["a"], [("a", "b")])
    with pytest.raises(UnknownVertex):
        Digraph(["a"], [], basepoint="b")


def test_equality_ignores_input_order():
    assert Digraph("ba", [("a", "b")]) == Digraph("ab", [("a", "b"), ("a", "b")])
    assert Digraph("ab", [("a", "b")]) != Digraph("ab", [("b", "a")])


@given(digraphs())
def test_identity_is_a_map(G):
    assert identity_map(G).assignment == {v: v for v in G.vertices}


def test_constant_from_standard_line_to_point():
    f = constant_map(J2, point())
    assert set(f.assignment.values()) == {"*"}


def test_reversed_arrow_is_named():
    src = Digraph([0, 1], [(0, 1)])
    tgt = Digraph("ab", [("b", "a")])
    with pytest.raises(MapViolation) as exc:
        validate_map({0: "a", 1: "b"}, src, tgt)
    assert exc.value.arrow == (0, 1)


def test_partial_assignment():
    with pytest.raises(MissingVertex):
        validate_map({0: "a"}, Digraph([0, 1]), Digraph("a"))


def test_basepoint_must_be_kept():
    G = Digraph("ab", [("a", "b")], basepoint="a")
    with pytest.raises(MapViolation):
        validate_map({"a": "b", "b": "b"}, G, G, based=True)


def test_square():
    S = box_product(J1, J1)
    assert len(S) == 4
    assert S.arrows == {((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 1))}


def test_box_counts():
    B = box_product(J3, J2)
    assert (len(B), len(B.arrows)) == (12, 17)


@given(digraphs())
def test_point_is_a_unit(G):
    for prod in (box_product, cartesian_product):
        P = prod(G, point())
        assert is_isomorphism({v: v[0] for v in P.vertices}, P, G.unbased())


def test_boundary_frame():
    p = relative_box_product(LineDigraph.standard(3).boundary_pair(), LineDigraph.standard(2).boundary_pair())
    assert len(p.ambient) == 12
    assert len(p.sub) == 10
    assert set(p.ambient.vertices) - set(p.sub.vertices) == {(1, 1), (2, 1)}


def test_frame_of_the_square_is_everything():
    p = relative_box_product(LineDigraph.standard(1).boundary_pair(), LineDigraph.standard(1).boundary_pair())
    assert p.sub.vertices == p.ambient.vertices
    assert p.sub.arrows == p.ambient.arrows


def test_empty_boundary():
    from dgh.core import DigraphPair
    p = relative_box_product(DigraphPair(J1, Digraph([])), DigraphPair(J2, Digraph([])))
    assert len(p.sub) == 0


def test_cartesian_counts():
    C = cartesian_product(J1, J1)
    assert len(C.arrows) == 5 and ((0, 0), (1, 1)) in C.arrows
    C2 = cartesian_product(J2, J2)
    assert (len(C2), len(C2.arrows)) == (9, 16)


def test_induced():
    C = cartesian_product(J1, J1)
    D = induced_subdigraph(C, lambda v: v[0] == v[1])
    assert D.vertices == ((0, 0), (1, 1))
    assert D.arrows == {((0, 0), (1, 1))}
    assert induced_subdigraph(J3, J3.vertices) == J3
    assert len(induced_subdigraph(J3, {2})) == 1


def test_induced_keeps_basepoint():
    G = J2.with_basepoint(0)
    with pytest.raises(BasepointDropped):
        induced_subdigraph(G, {1, 2})


@settings(max_examples=60)
@given(digraphs(4), digraphs(3))
def test_iter_maps_matches_brute_force(X, G):
    got = sorted(tuple(m[v] for v in X.vertices) for m in iter_maps(X, G))
    want = sorted(tuple(m[v] for v in X.vertices)
                  for m in all_vertex_maps(X.vertices, X.arrows, G.vertices, G.related))
    assert got == want


def test_line_reversal():
    L = LineDigraph([True, True, False])
    assert L.reversed().orientation == (True, False, False)
    assert L.reversed().reversed() == L
