"""Reference persistence computations over Z2.

``compute_diagram`` is the standard left-to-right column reduction of the
boundary matrix; it is the oracle every reduction is checked against.
``zero_dim_unionfind`` recomputes dimension 0 with the elder rule, and
``bottleneck`` measures how far two diagrams are apart.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .complex import FilteredComplex, require_valid

INF = math.inf


class Interval(NamedTuple):
    dim: int
    birth: int
    death: float  # an int, or INF for essential classes

    @property
    def finite(self) -> bool:
        return self.death != INF

    def __str__(self) -> str:
        death = "inf" if self.death == INF else str(int(self.death))
        return f"{self.dim} {self.birth} {death}"


@dataclass
class PersistenceDiagram:
    intervals: list[Interval] = field(default_factory=list)

    def __post_init__(self) -> None:
        cleaned = []
        for iv in self.intervals:
            iv = Interval(int(iv[0]), int(iv[1]), iv[2] if iv[2] == INF else int(iv[2]))
            if iv.birth < iv.death:
                cleaned.append(iv)
        self.intervals = sorted(cleaned)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def dims(self) -> set[int]:
        return {iv.dim for iv in self.intervals}

    def in_dim(self, dim: int) -> list[Interval]:
        return [iv for iv in self.intervals if iv.dim == dim]

    def restrict(self, dims: Iterable[int]) -> PersistenceDiagram:
        keep = set(dims)
        return PersistenceDiagram([iv for iv in self.intervals if iv.dim in keep])

    def drop(self, dims: Iterable[int]) -> PersistenceDiagram:
        skip = set(dims)
        return PersistenceDiagram([iv for iv in self.intervals if iv.dim not in skip])

    def to_text(self) -> str:
        return "".join(f"{iv}\n" for iv in self.intervals)


@dataclass
class BoundaryMatrix:
    order: list[int]  # cell ids, filtration order
    columns: list[list[int]]  # sorted row positions per column
    dims: list[int]
    filts: list[int]

    @classmethod
    def from_complex(cls, complex_: FilteredComplex) -> BoundaryMatrix:
        order = sorted((c.id for c in complex_), key=lambda cid: (complex_[cid].filt, complex_[cid].dim, cid))
        pos = {cid: i for i, cid in enumerate(order)}
        columns = [sorted(pos[f] for f in complex_[cid].faces) for cid in order]
        return cls(order, columns, [complex_[c].dim for c in order], [complex_[c].filt for c in order])


def reduce_matrix(matrix: BoundaryMatrix, *, clearing: bool = False) -> dict[int, int]:
    """Reduce columns over Z2; return the pairing {death column: birth row}.

    Columns are bit masks while reducing.  With ``clearing`` the columns are
    processed by decreasing dimension and every birth row found is zeroed
    before its own column is visited.
    """
    cols = [sum(1 << r for r in rows) for rows in matrix.columns]
    owner: dict[int, int] = {}  # lowest row -> column holding it
    pairs: dict[int, int] = {}
    if clearing:
        top = max(matrix.dims, default=0)
        sweeps = [[j for j, d in enumerate(matrix.dims) if d == dim] for dim in range(top, 0, -1)]
    else:
        sweeps = [range(len(cols))]
    cleared: set[int] = set()
    for sweep in sweeps:
        for j in sweep:
            if j in cleared:
                continue
            col = cols[j]
            while col:
                low = col.bit_length() - 1
                other = owner.get(low)
                if other is None:
                    owner[low] = j
                    pairs[j] = low
                    if clearing:
                        cleared.add(low)
                    break
                col ^= cols[other]
            cols[j] = col
    return pairs


def compute_diagram(complex_: FilteredComplex, *, clearing: bool = False, check: bool = True) -> PersistenceDiagram:
    if check:
        require_valid(complex_)
    matrix = BoundaryMatrix.from_complex(complex_)
    pairs = reduce_matrix(matrix, clearing=clearing)
    births = set(pairs.values())
    intervals = []
    for j, i in pairs.items():
        intervals.append(Interval(matrix.dims[i], matrix.filts[i], matrix.filts[j]))
    for k in range(len(matrix.order)):
        if k not in births and k not in pairs:
            intervals.append(Interval(matrix.dims[k], matrix.filts[k], INF))
    return PersistenceDiagram(intervals)


class UnionFind:
    """Disjoint sets keyed by hashable items, union by rank, path halving."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.rank: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra


_GROUND = -1


def zero_dim_unionfind(complex_: FilteredComplex) -> PersistenceDiagram:
    """Dimension-0 persistence from vertices and edges only (elder rule).

    An edge that lost one endpoint during reduction behaves as an edge to a
    virtual vertex older than everything, so the result matches the matrix
    reduction on S-complexes as well as on ordinary complexes.
    """
    cells = [c for c in complex_ if c.dim <= 1]
    cells.sort(key=lambda c: (c.filt, c.dim, c.id))
    rank_of = {c.id: k for k, c in enumerate(cells)}
    uf = UnionFind()
    uf.add(_GROUND)
    oldest: dict[int, int] = {_GROUND: _GROUND}  # root -> eldest vertex of the set
    intervals = []

    def age(v: int) -> int:
        return -1 if v == _GROUND else rank_of[v]

    for c in cells:
        if c.dim == 0:
            uf.add(c.id)
            oldest[c.id] = c.id
            continue
        ends = list(c.faces)
        if len(ends) == 1:
            ends.append(_GROUND)
        if len(ends) != 2:
            continue
        ra, rb = uf.find(ends[0]), uf.find(ends[1])
        if ra == rb:
            continue
        ea, eb = oldest[ra], oldest[rb]
        younger, elder = (ea, eb) if age(ea) > age(eb) else (eb, ea)
        intervals.append(Interval(0, complex_[younger].filt, c.filt))
        root = uf.union(ra, rb)
        oldest[root] = elder
    ground = uf.find(_GROUND)
    roots = {uf.find(c.id) for c in cells if c.dim == 0}
    for root in roots - {ground}:
        intervals.append(Interval(0, complex_[oldest[root]].filt, INF))
    return PersistenceDiagram(intervals)


class Comparison(NamedTuple):
    equal: bool
    witness: Interval | None = None

    def __bool__(self) -> bool:
        return self.equal


def diagrams_equal(d1: PersistenceDiagram, d2: PersistenceDiagram, dims: Iterable[int] | None = None) -> Comparison:
    """Multiset equality on the requested dimensions (all if ``dims`` is None).

    The witness is the smallest interval whose multiplicity differs.
    """
    if dims is not None:
        d1, d2 = d1.restrict(dims), d2.restrict(dims)
    c1, c2 = Counter(d1.intervals), Counter(d2.intervals)
    diff = sorted(iv for iv in set(c1) | set(c2) if c1[iv] != c2[iv])
    return Comparison(not diff, diff[0] if diff else None)


# bottleneck distance --------------------------------------------------


def _linf(p: Interval, q: Interval) -> float:
    return max(abs(p.birth - q.birth), abs(p.death - q.death))


def _perfect_matching_exists(adj: list[list[int]], n_right: int) -> bool:
    """Whether the bipartite graph given by left-side adjacency lists has a perfect matching."""
    indptr = np.cumsum([0] + [len(row) for row in adj])
    indices = np.fromiter((v for row in adj for v in row), dtype=np.int32, count=int(indptr[-1]))
    graph = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(len(adj), n_right))
    return bool((maximum_bipartite_matching(graph, perm_type="column") >= 0).all())


def _finite_bottleneck(a: list[Interval], b: list[Interval]) -> float:
    if not a and not b:
        return 0.0
    n, m = len(a), len(b)
    half_a = [(p.death - p.birth) / 2 for p in a]
    half_b = [(q.death - q.birth) / 2 for q in b]
    candidates = {0.0, *half_a, *half_b}
    candidates.update(_linf(p, q) for p in a for q in b)
    candidates = sorted(candidates)

    # left: points of a, then diagonal slots for b; right: points of b, then diagonal slots for a
    def feasible(r: float) -> bool:
        adj: list[list[int]] = []
        for i, p in enumerate(a):
            row = [j for j, q in enumerate(b) if _linf(p, q) <= r]
            if half_a[i] <= r:
                row.append(m + i)
            adj.append(row)
        for j in range(m):
            row = [j] if half_b[j] <= r else []
            row.extend(m + i for i in range(n))
            adj.append(row)
        return _perfect_matching_exists(adj, m + n)

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram, dim: int) -> float:
    """Exact bottleneck distance in one dimension (L-infinity ground metric).

    Essential intervals can only be matched with each other; if their counts
    differ the distance is infinite.
    """
    a, b = d1.in_dim(dim), d2.in_dim(dim)
    ess_a = sorted(iv.birth for iv in a if not iv.finite)
    ess_b = sorted(iv.birth for iv in b if not iv.finite)
    if len(ess_a) != len(ess_b):
        return INF
    essential = max((abs(x - y) for x, y in zip(ess_a, ess_b)), default=0)
    finite = _finite_bottleneck([iv for iv in a if iv.finite], [iv for iv in b if iv.finite])
    return max(float(essential), finite)
