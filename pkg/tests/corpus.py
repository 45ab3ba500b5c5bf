"""Random filtered complexes shared by the property and acceptance tests."""

from __future__ import annotations

import random

from phsimplify import VoxelGrid, build_cubical_lower_star, simplicial_complex

MAX_SHAPE = (6, 6, 3)
MAX_VALUE = 7


def random_grid(rng: random.Random, *, max_shape=MAX_SHAPE, max_value=MAX_VALUE) -> VoxelGrid:
    ndim = rng.randint(1, len(max_shape))
    shape = tuple(rng.randint(1, n) for n in max_shape[:ndim])
    size = 1
    for n in shape:
        size *= n
    return VoxelGrid(shape, [rng.randint(0, max_value) for _ in range(size)])


def random_cubical(rng: random.Random, **kw):
    grid = random_grid(rng, **kw)
    return build_cubical_lower_star(grid, vertex_values=rng.random() < 0.25)


def random_simplicial(rng: random.Random, *, max_vertices=8, max_value=MAX_VALUE, pure=False):
    n = rng.randint(1, max_vertices)
    values = [rng.randint(0, max_value) for _ in range(n)]
    top = rng.randint(0, min(3, n - 1))
    simplices = []
    for _ in range(rng.randint(1, 6)):
        size = top + 1 if pure else rng.randint(1, min(4, n))
        simplices.append(rng.sample(range(n), size))
    return simplicial_complex(values, simplices)


def corpus(count: int = 500, seed: int = 20240601):
    """Half cubical grids (some vertex-valued), half simplicial complexes filtered by maxima."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        if k % 2 == 0:
            out.append(random_cubical(rng))
        else:
            out.append(random_simplicial(rng, pure=rng.random() < 0.5))
    return out


def small_complexes(count: int = 100, seed: int = 7, max_cells: int = 12):
    """Random valid complexes with at most ``max_cells`` cells."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.5:
            cx = random_simplicial(rng, max_vertices=4)
        else:
            cx = random_cubical(rng, max_shape=(2, 1))
        if len(cx) <= max_cells:
            out.append(cx)
    return out
