"""Small hand-built complexes that pin down the guard conditions."""

from __future__ import annotations

from phsimplify import FilteredComplex, cubical_complex, simplicial_complex


def square(square_filt: int = 10, rest: int = 0) -> FilteredComplex:
    """Four vertices, four edges and the square they bound.

    Returns the complex; the square is the last cell (id 8).
    """
    cx = FilteredComplex()
    v = [cx.add_cell(0, rest) for _ in range(4)]
    e = [cx.add_cell(1, rest, (v[i], v[(i + 1) % 4])) for i in range(4)]
    cx.add_cell(2, square_filt, e)
    return cx


def circle(filt: int = 0) -> FilteredComplex:
    cx = square(filt, filt)
    cx.remove_cell(8)
    cx, _ = cx.compact()
    return cx


def ring_with_center(ring: int = 0, center: int = 1):
    """3x3 grid of squares: the outer eight at ``ring``, the middle at ``center``."""
    values = {(i, j): ring for i in range(3) for j in range(3)}
    values[(1, 1)] = center
    return cubical_complex(values)


def path(values: list[int]) -> FilteredComplex:
    return simplicial_complex(values, [[i, i + 1] for i in range(len(values) - 1)])


def staircase(width: int = 4) -> FilteredComplex:
    """Lattice graph under a staircase, filtered by height; edges take maxima."""
    pts = [(x, y) for x in range(width) for y in range(width - x)]
    idx = {p: i for i, p in enumerate(pts)}
    edges = []
    for x, y in pts:
        for q in ((x + 1, y), (x, y + 1)):
            if q in idx:
                edges.append([idx[(x, y)], idx[q]])
    return simplicial_complex([y for _, y in pts], edges)


def concentric_rings(layers: int, step: int = 1) -> FilteredComplex:
    """Square annuli around a one-cell hole; layer d has value 1 + (d - 1) * step.

    The true essential loop is born at 1 on the innermost ring.  Raising
    faces without remembering removed cofaces lets the loop drift outwards
    one layer at a time.
    """
    n = 2 * layers + 1
    values = {}
    for i in range(n):
        for j in range(n):
            d = max(abs(i - layers), abs(j - layers))
            if d:
                values[(i, j)] = 1 + (d - 1) * step
    return cubical_complex(values)
