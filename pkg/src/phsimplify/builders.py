"""Builders for cubical and simplicial filtered complexes.

Cubical cells use doubled ("Khalimsky") coordinates: along each axis an even
coordinate is a vertex slice and an odd coordinate an interval, so the cell
dimension is the number of odd coordinates and faces are found by moving one
odd coordinate by +-1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .complex import ComplexError, FilteredComplex

Coords = tuple[int, ...]


@dataclass
class VoxelGrid:
    shape: tuple[int, ...]
    values: list[int]

    def __post_init__(self) -> None:
        self.shape = tuple(int(n) for n in self.shape)
        self.values = [int(v) for v in self.values]
        if not self.shape:
            raise ComplexError("voxel grid needs at least one axis")
        if any(n < 1 for n in self.shape):
            raise ComplexError(f"empty voxel grid {self.shape}")
        if len(self.values) != math.prod(self.shape):
            raise ComplexError(f"expected {math.prod(self.shape)} values for shape {self.shape}, got {len(self.values)}")

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def items(self):
        """Yield (index tuple, value) in row-major order, last axis fastest."""
        for idx, value in zip(itertools.product(*(range(n) for n in self.shape)), self.values):
            yield idx, value


@dataclass
class SimplexSpec:
    vertex_values: list[int]
    maximal_simplices: list[list[int]]

    def __post_init__(self) -> None:
        n = len(self.vertex_values)
        for simplex in self.maximal_simplices:
            if not simplex:
                raise ComplexError("empty simplex")
            if len(set(simplex)) != len(simplex):
                raise ComplexError(f"duplicate vertex in simplex {list(simplex)}")
            for v in simplex:
                if not 0 <= v < n:
                    raise ComplexError(f"vertex {v} out of range 0..{n - 1}")


def _cube_faces(x: Coords) -> list[Coords]:
    out = []
    for k, xk in enumerate(x):
        if xk % 2:
            out.append(x[:k] + (xk - 1,) + x[k + 1 :])
            out.append(x[:k] + (xk + 1,) + x[k + 1 :])
    return out


def _cube_dim(x: Coords) -> int:
    return sum(xk % 2 for xk in x)


def _assemble(values: Mapping[Coords, int], faces_of) -> FilteredComplex:
    # canonical order (filt, dim, key) puts every face before its cofaces
    order = sorted(values, key=lambda key: (values[key], len(key) if faces_of is None else _cube_dim(key), key))
    complex_ = FilteredComplex()
    index: dict = {}
    for key in order:
        if faces_of is None:
            dim = len(key) - 1
            faces = [index[key[:i] + key[i + 1 :]] for i in range(len(key))] if dim else []
        else:
            dim = _cube_dim(key)
            faces = [index[f] for f in faces_of(key)]
        index[key] = complex_.add_cell(dim, values[key], faces, label=key)
    return complex_


def cubical_complex(top_values: Mapping[Coords, int]) -> FilteredComplex:
    """Lower-star cubical complex spanned by the given top cells.

    Keys are top-cell indices (one integer per axis); a cell of the closure
    gets the minimum value of the top cells containing it.  Cells need not
    fill a box, which allows holes.
    """
    values: dict[Coords, int] = {}
    for idx, value in top_values.items():
        centre = tuple(2 * i + 1 for i in idx)
        for offsets in itertools.product((-1, 0, 1), repeat=len(centre)):
            key = tuple(c + o for c, o in zip(centre, offsets))
            old = values.get(key)
            values[key] = value if old is None else min(old, value)
    return _assemble(values, _cube_faces)


def build_cubical_lower_star(grid: VoxelGrid, *, vertex_values: bool = False) -> FilteredComplex:
    """Full cubical complex of a voxel grid.

    By default each grid value sits on a top cell and lower cells take the
    minimum over incident top cells.  With ``vertex_values=True`` the grid
    holds vertex values instead and every cell takes the maximum over its
    vertices.
    """
    if not vertex_values:
        return cubical_complex(dict(grid.items()))
    vert = {tuple(2 * i for i in idx): value for idx, value in grid.items()}
    extent = [2 * (n - 1) for n in grid.shape]
    values: dict[Coords, int] = {}
    for key in itertools.product(*(range(e + 1) for e in extent)):
        corners = itertools.product(*((k,) if k % 2 == 0 else (k - 1, k + 1) for k in key))
        values[key] = max(vert[c] for c in corners)
    return _assemble(values, _cube_faces)


def build_simplicial_max(spec: SimplexSpec) -> FilteredComplex:
    """All faces of the maximal simplices, filtered by the maximum vertex value."""
    values: dict[tuple[int, ...], int] = {}
    for simplex in spec.maximal_simplices:
        simplex = tuple(sorted(simplex))
        for k in range(1, len(simplex) + 1):
            for face in itertools.combinations(simplex, k):
                if face not in values:
                    values[face] = max(spec.vertex_values[v] for v in face)
    return _assemble(values, None)


def simplicial_complex(vertex_values: Sequence[int], maximal_simplices: Sequence[Sequence[int]]) -> FilteredComplex:
    return build_simplicial_max(SimplexSpec(list(vertex_values), [list(s) for s in maximal_simplices]))
