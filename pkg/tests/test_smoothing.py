from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_cubical, random_grid, random_simplicial
from shapes import concentric_rings, square
from phsimplify import (
    INF,
    Interval,
    PerturbedFiltration,
    bottleneck,
    build_cubical_lower_star,
    collapse_reduce,
    compute_diagram,
    coreduce,
    cubical_complex,
    excise,
    grow_acyclic,
    quantize_levels,
    simplicial_complex,
    smooth_collapse,
    smooth_coreduce,
    validate,
)
from phsimplify.formats import format_complex
from phsimplify.reductions import ReductionLog, run_collapses
from phsimplify.smoothing import SmoothingError, _raise_allowed


def forgetful_collapse(cx, eps):
    """Smoothing that only looks at live cofaces, i.e. forgets removed cells."""

    def rule(k, b):
        cell = k[b]
        if len(cell.cofaces) != 1:
            return None
        (a,) = cell.cofaces
        return a if k[a].filt - cell.filt < eps or k[a].filt == cell.filt else None

    def raise_face(a, b):
        cx.set_filt(b, cx[a].filt)

    run_collapses(cx, rule, ReductionLog(), on_remove=raise_face)


def essential_loops(cx):
    return [iv for iv in compute_diagram(cx, check=False).in_dim(1) if iv.death == INF]


def _random(seed):
    rng = random.Random(seed)
    return random_cubical(rng) if seed % 2 else random_simplicial(rng)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_zero_epsilon_matches_plain_reductions(seed):
    cx = _random(seed)
    a, b = cx.copy(), cx.copy()
    assert smooth_collapse(a, 0)[0].events == collapse_reduce(b).events
    assert format_complex(a) == format_complex(b)
    a, b = cx.copy(), cx.copy()
    log, pf = smooth_coreduce(a, 0)
    assert log.events == coreduce(b).events
    assert format_complex(a) == format_complex(b)
    assert pf.changed() == []


def test_large_epsilon_collapses_square():
    cx = square(10)
    truth = compute_diagram(cx)
    log, pf = smooth_collapse(cx, 11)
    assert len(cx) == 1
    assert pf.changed() == [(4, 0, 10)]
    assert compute_diagram(cx).in_dim(1) == []
    assert bottleneck(truth, compute_diagram(cx), 1) == 5


def test_large_epsilon_coreduces_square():
    cx = square(10)
    truth = compute_diagram(cx)
    smooth_coreduce(cx, 11)
    assert len(cx) == 0
    assert bottleneck(truth, compute_diagram(cx, check=False), 1) <= 11


def test_constant_complex_needs_no_perturbation():
    cx = cubical_complex({(i, j): 2 for i in range(3) for j in range(2)})
    a, b = cx.copy(), cx.copy()
    log, pf = smooth_coreduce(a, 4)
    assert log.events == coreduce(b).events and pf.changed() == []


def test_unit_epsilon_moves_nothing():
    # the guard is strict, so with integer values epsilon 1 forbids any change
    cx = concentric_rings(5)
    log, pf = smooth_collapse(cx, 1)
    assert pf.changed() == []
    assert essential_loops(cx) == [Interval(1, 1, INF)]


@pytest.mark.parametrize("eps, forgetful_birth", [(2, 3), (3, 5)])
def test_removed_cofaces_block_drift(eps, forgetful_birth):
    base = concentric_rings(5, step=eps - 1)
    assert essential_loops(base) == [Interval(1, 1, INF)]
    forgetful = base.copy()
    forgetful_collapse(forgetful, eps)
    assert essential_loops(forgetful) == [Interval(1, forgetful_birth, INF)]
    ours = base.copy()
    log, pf = smooth_collapse(ours, eps)
    assert essential_loops(ours) == [Interval(1, 1, INF)]
    assert pf.max_shift() < eps and pf.is_monotone()


def test_moved_cell_never_moves_again():
    cx = square(2)
    pf = PerturbedFiltration.from_complex(cx, 3)
    assert _raise_allowed(pf, cx, 4, 2)
    pf.current[4] = 1
    assert not _raise_allowed(pf, cx, 4, 2)


def test_epsilon_mismatch_and_negative_epsilon():
    cx = square()
    pf = PerturbedFiltration.from_complex(cx, 2)
    with pytest.raises(SmoothingError):
        smooth_collapse(cx, 3, perturbation=pf)
    with pytest.raises(SmoothingError):
        smooth_collapse(cx, -1)


def _top_values(cx, pf):
    return sorted({pf.current[c.id] for c in cx if not c.cofaces})


def test_quantize_merges_close_levels():
    cx = cubical_complex({(0, 0): 0, (1, 0): 1, (2, 0): 2})
    pf = quantize_levels(cx, 1)
    assert _top_values(cx, pf) == [1]
    assert pf.max_shift() == 1


def test_quantize_keeps_distant_levels():
    cx = cubical_complex({(0, 0): 0, (1, 0): 10})
    pf = quantize_levels(cx, 1)
    assert pf.changed() == []


def test_quantize_rejects_non_lower_star_input():
    with pytest.raises(SmoothingError):
        quantize_levels(simplicial_complex([0, 5], [[0, 1]]), 1)
    with pytest.raises(SmoothingError):
        quantize_levels(simplicial_complex([0, 0, 0, 0], [[0, 1, 2], [2, 3]]), 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0, 1, 2, 5]))
def test_quantized_filtration_is_valid(seed, eps):
    cx = build_cubical_lower_star(random_grid(random.Random(seed)))
    pf = quantize_levels(cx, eps)
    assert pf.max_shift() <= eps and pf.is_monotone()
    pf.apply_to(cx)
    assert validate(cx).valid


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, 2, 5]))
def test_chained_pipeline_stays_within_epsilon(seed, eps):
    cx = random_cubical(random.Random(seed))
    truth = compute_diagram(cx)
    try:
        pf = quantize_levels(cx, eps)
    except SmoothingError:  # vertex-valued grids are not lower-star
        pf = None
    else:
        pf.apply_to(cx)
        excise(cx, grow_acyclic(cx))
    _, pf = smooth_collapse(cx, eps, perturbation=pf)
    _, pf = smooth_coreduce(cx, eps, perturbation=pf)
    reduced = compute_diagram(cx, check=False)
    assert pf.max_shift() <= eps and pf.is_monotone()
    for dim in truth.dims() | reduced.dims():
        if dim >= 1:
            assert bottleneck(truth, reduced, dim) <= eps
