from __future__ import annotations

import math
import random

from hypothesis import given, settings, strategies as st

from corpus import random_cubical, random_simplicial
from shapes import circle, square
from oracles import brute_bottleneck
from phsimplify import (
    INF,
    FilteredComplex,
    Interval,
    PersistenceDiagram,
    bottleneck,
    compute_diagram,
    diagrams_equal,
    simplicial_complex,
    zero_dim_unionfind,
)
from phsimplify.persistence import BoundaryMatrix, reduce_matrix


def D(*intervals):
    return PersistenceDiagram([Interval(*iv) for iv in intervals])


def test_square_diagram():
    assert compute_diagram(square()) == D((0, 0, INF), (1, 0, 10))


def test_single_vertex():
    cx = FilteredComplex()
    cx.add_cell(0, 3)
    assert compute_diagram(cx) == D((0, 3, INF))


def test_circle_has_two_essential_classes():
    assert compute_diagram(circle()) == D((0, 0, INF), (1, 0, INF))


def test_zero_length_intervals_are_dropped():
    assert D((0, 2, 2), (1, 1, 3)).intervals == [Interval(1, 1, 3)]


def test_matrix_columns_precede_their_rows():
    matrix = BoundaryMatrix.from_complex(square())
    for j, col in enumerate(matrix.columns):
        assert all(i < j for i in col)
        assert col == sorted(col)


def test_clearing_matches_standard_reduction():
    rng = random.Random(3)
    for _ in range(50):
        cx = random_cubical(rng)
        matrix = BoundaryMatrix.from_complex(cx)
        assert reduce_matrix(matrix) == reduce_matrix(matrix, clearing=True)


def test_unionfind_elder_rule():
    cx = simplicial_complex([0, 1], [[0, 1]])
    cx.set_filt(2, 5)
    assert zero_dim_unionfind(cx) == D((0, 0, INF), (0, 1, 5))


def test_unionfind_empty():
    assert len(zero_dim_unionfind(FilteredComplex())) == 0


def test_unionfind_ignores_higher_cells():
    assert zero_dim_unionfind(square()) == compute_diagram(square()).restrict([0])


def test_equal_diagrams():
    d = compute_diagram(square())
    assert diagrams_equal(d, d)
    assert diagrams_equal(D(), D())


def test_illegal_collapse_changes_diagram():
    before = compute_diagram(square())
    cx = square()
    cx.remove_pair(4, 8)
    result = diagrams_equal(before, compute_diagram(cx))
    assert not result
    assert result.witness == Interval(1, 0, 10)


def test_diagrams_equal_restricted_to_dims():
    assert diagrams_equal(D((0, 0, INF), (1, 0, 3)), D((0, 0, INF)), dims=[0])


def test_bottleneck_examples():
    d = D((1, 0, 10))
    assert bottleneck(d, d, 1) == 0
    assert bottleneck(d, D(), 1) == 5
    assert bottleneck(d, D((1, 1, 10)), 1) == 1


def test_bottleneck_essential_classes():
    assert bottleneck(D((1, 0, INF)), D((1, 3, INF)), 1) == 3
    assert bottleneck(D((1, 0, INF)), D(), 1) == INF
    assert bottleneck(D((1, 0, INF), (1, 0, 4)), D((1, 1, INF)), 1) == 2


def test_bottleneck_other_dimension_is_ignored():
    assert bottleneck(D((0, 0, 9)), D(), 1) == 0


finite_point = st.tuples(st.integers(0, 8), st.integers(1, 6)).map(lambda p: (1, p[0], p[0] + p[1]))
diagram = st.lists(
    st.one_of(finite_point, st.integers(0, 8).map(lambda b: (1, b, INF))), max_size=4
).map(lambda ivs: D(*ivs))


@settings(max_examples=200, deadline=None)
@given(diagram, diagram)
def test_bottleneck_matches_brute_force(a, b):
    assert bottleneck(a, b, 1) == brute_bottleneck(a, b, 1)


@settings(max_examples=200, deadline=None)
@given(diagram, diagram, diagram)
def test_bottleneck_is_a_metric(a, b, c):
    ab, bc, ac = bottleneck(a, b, 1), bottleneck(b, c, 1), bottleneck(a, c, 1)
    assert ab == bottleneck(b, a, 1)
    assert bottleneck(a, a, 1) == 0
    assert ac <= ab + bc or math.isinf(ab + bc)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_unionfind_matches_matrix_reduction(seed):
    rng = random.Random(seed)
    cx = random_cubical(rng) if seed % 2 else random_simplicial(rng)
    assert zero_dim_unionfind(cx) == compute_diagram(cx).restrict([0])


def test_interval_text():
    assert str(Interval(1, 0, INF)) == "1 0 inf"
    assert D((1, 0, 10), (0, 0, INF)).to_text() == "0 0 inf\n1 0 10\n"
