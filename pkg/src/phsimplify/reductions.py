"""Persistence-preserving elementary collapses and coreductions.

A pair is only removed when both cells carry the same filtration value.
For collapses the free-face test is done in the whole current complex; a
face with a single coface there has a single coface in every sublevel set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .complex import FilteredComplex, require_valid
from .persistence import UnionFind

COLLAPSE = "collapse"
COREDUCTION = "coreduction"
VERTEX = "vertex-removal"
EXCISE = "excise"


@dataclass(frozen=True)
class Event:
    rule: str
    cells: tuple[int, ...]
    filt: int

    def __str__(self) -> str:
        return " ".join([self.rule, *map(str, self.cells), str(self.filt)])


@dataclass
class ReductionLog:
    events: list[Event] = field(default_factory=list)
    removed_count: int = 0

    def record(self, rule: str, cells: tuple[int, ...], filt: int) -> None:
        self.events.append(Event(rule, cells, filt))
        self.removed_count += len(cells)

    def count(self, rule: str) -> int:
        return sum(1 for e in self.events if e.rule == rule)

    def extend(self, other: ReductionLog) -> None:
        self.events.extend(other.events)
        self.removed_count += other.removed_count

    def to_text(self) -> str:
        return "".join(f"{e}\n" for e in self.events)

    def __len__(self) -> int:
        return len(self.events)


# A pair predicate returns the partner cell when ``cid`` may be removed.
PairRule = Callable[[FilteredComplex, int], Optional[int]]


def free_coface(complex_: FilteredComplex, b: int) -> int | None:
    """The coface A of ``b`` when (A, b) is a filtration-preserving collapse pair."""
    cell = complex_[b]
    if len(cell.cofaces) != 1:
        return None
    (a,) = cell.cofaces
    return a if complex_[a].filt == cell.filt else None


def sole_face(complex_: FilteredComplex, b: int) -> int | None:
    """The face a of ``b`` when (b, a) is a filtration-preserving coreduction pair."""
    cell = complex_[b]
    if len(cell.faces) != 1:
        return None
    (a,) = cell.faces
    return a if complex_[a].filt == cell.filt else None


def run_collapses(complex_: FilteredComplex, rule: PairRule, log: ReductionLog,
                  on_remove: Callable[[int, int], None] | None = None) -> None:
    """FIFO work queue over free faces; neighbours are re-queued after each removal."""
    queue = deque(cid for cid in complex_.live_ids() if rule(complex_, cid) is not None)
    while queue:
        b = queue.popleft()
        if not complex_.is_alive(b):
            continue
        a = rule(complex_, b)
        if a is None:
            continue
        if on_remove is not None:
            on_remove(a, b)
        touched = sorted(complex_[a].faces - {b}) + sorted(complex_[b].faces)
        filt = complex_[a].filt
        complex_.remove_pair(b, a)
        log.record(COLLAPSE, (a, b), filt)
        queue.extend(c for c in touched if rule(complex_, c) is not None)


def run_coreductions(complex_: FilteredComplex, rule: PairRule, log: ReductionLog,
                     on_remove: Callable[[int, int], None] | None = None) -> None:
    queue = deque(cid for cid in complex_.live_ids() if rule(complex_, cid) is not None)
    while queue:
        upper = queue.popleft()
        if not complex_.is_alive(upper):
            continue
        a = rule(complex_, upper)
        if a is None:
            continue
        if on_remove is not None:
            on_remove(upper, a)
        touched = sorted(complex_[a].cofaces - {upper}) + sorted(complex_[upper].cofaces)
        filt = complex_[upper].filt
        complex_.remove_pair(a, upper)
        log.record(COREDUCTION, (upper, a), filt)
        queue.extend(c for c in touched if rule(complex_, c) is not None)


def collapse_reduce(complex_: FilteredComplex) -> ReductionLog:
    """Remove elementary collapse pairs (A, b) with g(A) == g(b) until none is left."""
    require_valid(complex_)
    log = ReductionLog()
    run_collapses(complex_, free_coface, log)
    return log


def coreduction_seeds(complex_: FilteredComplex) -> list[int]:
    """One vertex per component whose class is not already a boundary.

    Vertices are grouped by live edges with two live endpoints.  A group that
    touches an edge with a single live endpoint is already "based" (a vertex
    was removed earlier, or a piece of the complex was excised), and removing
    another vertex there would change higher-dimensional persistence.  For
    an unreduced complex the groups are exactly the connected components.
    """
    uf = UnionFind()
    vertices = [c for c in complex_ if c.dim == 0]
    for v in vertices:
        uf.add(v.id)
    half_edges: list[int] = []
    for e in complex_:
        if e.dim != 1:
            continue
        ends = list(e.faces)
        if len(ends) == 2:
            uf.union(*ends)
        elif len(ends) == 1:
            half_edges.append(ends[0])
    grounded = {uf.find(v) for v in half_edges}
    best: dict[int, tuple[int, int]] = {}
    for v in vertices:
        root = uf.find(v.id)
        if root in grounded:
            continue
        key = (v.filt, v.id)
        if root not in best or key < best[root]:
            best[root] = key
    return sorted(vid for _, vid in best.values())


def remove_seed_vertices(complex_: FilteredComplex, log: ReductionLog, seeds: Iterable[int] | None = None) -> None:
    for v in coreduction_seeds(complex_) if seeds is None else seeds:
        filt = complex_[v].filt
        complex_.remove_cell(v)
        log.record(VERTEX, (v,), filt)


def coreduce(complex_: FilteredComplex) -> ReductionLog:
    """Remove a seed vertex per component, then coreduction pairs (B, a) with g(B) == g(a).

    Dimension-0 persistence of the result is meaningless; recompute it from
    the original complex with :func:`~phsimplify.persistence.zero_dim_unionfind`.
    """
    require_valid(complex_)
    log = ReductionLog()
    remove_seed_vertices(complex_, log)
    run_coreductions(complex_, sole_face, log)
    return log
