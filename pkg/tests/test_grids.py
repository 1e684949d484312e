import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dgh.core import Digraph, LineDigraph
from dgh.errors import BoundaryViolation, MapViolation, ParityViolation
from dgh.grids import (
    GridShrinkingMap,
    LoopClassGridMap,
    constant_grid,
    curry,
    curry_loop,
    grid_from_loop,
    invert_axis,
    loop_from_grid,
    multiply,
    reduce_grid,
    runs_to_keep,
    subdivide_axis,
    subdivide_grid,
    uncurry,
    unit,
    validate_grid,
)
from dgh.homotopy import f_homotopic
from dgh.lines import PathMap, constant_class, enumerate_subdivisions, invert
from dgh.spaces import example_417_digraph, example_417_map

from samplers import rand_digraph, rand_grid

STAR_A = Digraph("*a", [("*", "a")], basepoint="*")


def grid_subdivisions(m, top):
    return enumerate_subdivisions(LineDigraph.standard(m), top)


def test_constant_grid_validates():
    f = validate_grid([["*"] * 3] * 3, STAR_A)
    assert f.is_constant() and f == unit(STAR_A, 2)


def test_example_grid_validates_and_breaks_when_mutated():
    G = example_417_digraph()
    f = example_417_map(G)
    assert f.lengths == (4, 4)
    rows = f.to_lists()
    rows[1][1] = rows[3][3]
    with pytest.raises(MapViolation):
        validate_grid(rows, G)


def test_frame_must_sit_at_the_basepoint():
    with pytest.raises(BoundaryViolation):
        validate_grid([["*", "*", "*"], ["a", "*", "*"], ["*", "*", "*"]], STAR_A)


def test_axis_subdivision_repeats_rows():
    f = validate_grid([["*", "*", "*"], ["*", "a", "*"], ["*", "*", "*"]], STAR_A)
    h = grid_subdivisions(2, 4)[3]
    g = subdivide_axis(f, 1, h)
    assert g.lengths == (2, h.source.length)
    for row_f, row_g in zip(f.to_lists(), g.to_lists()):
        assert row_g == [row_f[x] for x in h.values]


def test_identity_subdivision_is_a_no_op():
    f = example_417_map()
    assert subdivide_grid(f, GridShrinkingMap.identity(f.lengths)) == f


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_two_subdivisions_compose(data):
    f = example_417_map()
    h1 = GridShrinkingMap([data.draw(st.sampled_from(grid_subdivisions(4, 6))) for _ in range(2)])
    h0 = GridShrinkingMap([data.draw(st.sampled_from(grid_subdivisions(m, m + 2))) for m in h1.source_lengths])
    assert subdivide_grid(subdivide_grid(f, h1), h0) == subdivide_grid(f, h0.then(h1))


def test_unit_times_unit():
    e = unit(STAR_A, 2)
    ee = multiply(e, e, axis=1)
    assert ee.lengths == (2, 4) and ee.is_constant()
    assert reduce_grid(ee)[0] == reduce_grid(e)[0]


def test_lengths_add_along_the_axis():
    f = validate_grid([["*", "*", "*"], ["*", "a", "*"], ["*", "*", "*"]], STAR_A)
    g = constant_grid(STAR_A, (4, 2))
    assert multiply(f, g, axis=0).lengths == (6, 2)
    assert multiply(f, g, axis=1).lengths == (4, 4)


def test_odd_lengths_refused():
    with pytest.raises(ParityViolation):
        multiply(constant_grid(STAR_A, (3, 2)), unit(STAR_A, 2))
    with pytest.warns(UserWarning):
        assert multiply(constant_grid(STAR_A, (3, 2)), unit(STAR_A, 2), strict=False).lengths == (6, 2)


def test_product_with_the_unit_is_homotopic():
    G = example_417_digraph()
    f = validate_grid([["*"] * 3, ["*", "(v1,v1)", "*"], ["*"] * 3], G)
    c = f_homotopic(multiply(f, unit(G, 2)), f)
    assert c and c.verify()


def test_inversion():
    f = example_417_map()
    assert invert_axis(invert_axis(f, 1), 1) == f
    e = unit(STAR_A, 2)
    assert invert_axis(e) == e


def test_inversion_in_dimension_one():
    loop = PathMap(LineDigraph.standard(4), STAR_A, "*a***", "loop")
    assert loop_from_grid(invert_axis(grid_from_loop(loop))) == invert(loop)


def test_reduction_keeps_runs():
    # four equal slabs at the far end become one
    assert runs_to_keep([False, True, True, True]) == ([0, 1], [0, 1, 1, 1, 1])
    e, h = reduce_grid(constant_grid(STAR_A, (6, 4)))
    assert e.is_constant() and subdivide_grid(e, h) == constant_grid(STAR_A, (6, 4))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_reduction_is_a_subdivision(seed):
    rng = random.Random(seed)
    G = rand_digraph(rng, rng.randint(2, 4), names="*abc")
    f = rand_grid(rng, G, (rng.choice([2, 4, 6]), rng.choice([2, 4])))
    if f is None:
        return
    r, h = reduce_grid(f)
    assert subdivide_grid(r, h) == f
    assert reduce_grid(r)[0] == r


# -- currying

def test_constant_grid_curries_to_the_constant_class():
    w = curry(constant_grid(STAR_A, (2, 4)))
    assert set(w.classes.values()) == {constant_class("*")}
    assert w.lengths == (2,)


def test_example_rows():
    G = example_417_digraph()
    w = curry(example_417_map(G))
    for i in (1, 2, 3):
        cls = w[(i,)]
        row = [f"(v{i},v{j})" for j in (1, 2, 3)]
        assert [v for v in cls.values if v != "*"] == row


def test_a_loop_is_its_own_class():
    loop = PathMap(LineDigraph.standard(2), STAR_A, "*a*", "loop")
    assert curry_loop(loop) == loop.key()


def test_constant_uncurries_to_constant():
    w = LoopClassGridMap({(i,): constant_class("*") for i in range(3)}, (2,))
    assert uncurry(w, STAR_A).is_constant()


def test_two_adjacent_classes_become_related_rows():
    G = Digraph("*ab", [("*", "a"), ("*", "b"), ("b", "a")], basepoint="*")
    ga = PathMap(LineDigraph.standard(2), G, "*a*", "loop").key()
    gb = PathMap(LineDigraph.standard(2), G, "*b*", "loop").key()
    star = constant_class("*")
    w = LoopClassGridMap({(0,): star, (1,): ga, (2,): gb, (3,): gb, (4,): star}, (4,))
    f = uncurry(w, G)
    assert curry(f) == w
    rows = f.to_lists()
    assert all(G.related(a, b) for a, b in zip(rows[2], rows[1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_curry_round_trip(seed):
    rng = random.Random(seed)
    G = rand_digraph(rng, rng.randint(2, 4), p=0.45, names="*abc")
    f = rand_grid(rng, G, (rng.choice([2, 4]), rng.choice([2, 4])))
    if f is None:
        return
    w = curry(f)
    g = uncurry(w, G)
    assert curry(g) == w
    assert np.array_equal(np.array(g.lengths[:-1]), np.array(f.lengths[:-1]))
