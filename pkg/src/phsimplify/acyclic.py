"""Acyclic subcomplexes compatible with a filtration, and their excision.

The subcomplex is grown from top-dimensional cells, level by level.  A top
cell T at level i is admitted when its closure meets the current subcomplex
in an acyclic set and every cell of its closure that is not yet in the
subcomplex sits exactly at level i.  The second condition keeps the part of
the subcomplex below level i unchanged, so every sublevel slice stays
acyclic.  Removing the closed subcomplex keeps persistence in dimensions
>= 1; dimension 0 has to be recomputed from the original complex.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable

from .complex import ComplexError, FilteredComplex, _component_labels, closure, require_valid
from .reductions import EXCISE, ReductionLog


class AcyclicError(ComplexError):
    pass


@dataclass
class AcyclicSubcomplex:
    top_cells: set[int] = field(default_factory=set)
    closed_cells: set[int] = field(default_factory=set)
    admitted_per_level: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.closed_cells)

    def log_lines(self) -> list[str]:
        lines = [f"acyclic size {len(self.top_cells)} {len(self.closed_cells)}"]
        lines += [f"acyclic level {lvl} {n}" for lvl, n in sorted(self.admitted_per_level.items())]
        return lines


def _rank_z2(columns: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for col in columns:
        while col:
            top = col.bit_length() - 1
            if top not in basis:
                basis[top] = col
                break
            col ^= basis[top]
    return len(basis)


def is_acyclic(complex_: FilteredComplex, cells: Iterable[int]) -> bool:
    """True iff the closed set ``cells`` has trivial reduced Z2 homology.

    The total Betti number of a complex is ``n - 2 * sum(rank of boundary
    maps)``; a non-empty closed set is acyclic exactly when that is 1.
    """
    cells = set(cells)
    if not cells:
        return False
    pos: dict[int, int] = {}
    by_dim: dict[int, list[int]] = defaultdict(list)
    for cid in sorted(cells):
        cell = complex_[cid]
        if not cell.alive:
            raise ComplexError(f"cell {cid} is dead")
        if not cell.faces <= cells:
            raise ComplexError(f"cell set is not closed: faces of {cid} missing")
        pos[cid] = len(pos)
        by_dim[cell.dim].append(cid)
    total_rank = 0
    for dim, members in by_dim.items():
        if dim == 0:
            continue
        total_rank += _rank_z2(sum(1 << pos[f] for f in complex_[cid].faces) for cid in members)
    return len(cells) - 2 * total_rank == 1


def top_cells(complex_: FilteredComplex) -> list[int]:
    return [c.id for c in complex_ if not c.cofaces]


def grow_acyclic(complex_: FilteredComplex) -> AcyclicSubcomplex:
    """Greedily grow an acyclic subcomplex compatible with the filtration.

    One piece is seeded per connected component at its lowest top cell (ties
    by id) whose closure lies entirely on the cell's own level.  Levels are
    processed in increasing order; within a level candidates are flooded
    through top cells sharing at least one face, first-in first-out.
    """
    require_valid(complex_)
    if not complex_.closed:
        raise AcyclicError("acyclic subspace growth needs a closed complex (run it before other reductions)")
    tops = top_cells(complex_)
    if len({complex_[t].dim for t in tops}) > 1:
        raise AcyclicError("top cells of mixed dimensions")
    result = AcyclicSubcomplex()
    if not tops:
        return result

    filt = {t: complex_[t].filt for t in tops}
    hull = {t: frozenset(closure(complex_, [t])) for t in tops}
    tops_at_vertex: dict[int, list[int]] = defaultdict(list)
    for t in tops:
        for c in hull[t]:
            if complex_[c].dim == 0:
                tops_at_vertex[c].append(t)

    def neighbours(t: int) -> list[int]:
        found = set()
        for c in hull[t]:
            if complex_[c].dim == 0:
                found.update(tops_at_vertex[c])
        found.discard(t)
        return sorted(found)

    members = result.closed_cells
    level_count = result.admitted_per_level

    def admit(t: int) -> None:
        result.top_cells.add(t)
        members.update(hull[t])
        level_count[filt[t]] = level_count.get(filt[t], 0) + 1

    def on_level(t: int, level: int) -> bool:
        return all(complex_[c].filt == level for c in hull[t] - members)

    def admissible(t: int, level: int) -> bool:
        return on_level(t, level) and is_acyclic(complex_, hull[t] & members)

    labels = _component_labels(complex_)
    by_component: dict[int, list[int]] = defaultdict(list)
    for t in tops:
        by_component[labels[t]].append(t)
    for root in sorted(by_component):
        for t in sorted(by_component[root], key=lambda t: (filt[t], t)):
            if on_level(t, filt[t]):
                admit(t)
                break

    for level in sorted(set(filt.values())):
        queue = deque(
            t for t in sorted(tops) if filt[t] == level and t not in result.top_cells and admissible(t, level)
        )
        while queue:
            t = queue.popleft()
            if t in result.top_cells or not admissible(t, level):
                continue
            admit(t)
            for other in neighbours(t):
                if filt[other] == level and other not in result.top_cells and admissible(other, level):
                    queue.append(other)
    return result


def is_compatible(complex_: FilteredComplex, acyclic: AcyclicSubcomplex) -> bool:
    """Check that every sublevel slice of the subcomplex is acyclic per component.

    Empty slices are allowed.  Components are those of the live complex.
    """
    labels = _component_labels(complex_)
    pieces: dict[int, list[int]] = defaultdict(list)
    for cid in acyclic.closed_cells:
        pieces[labels[cid]].append(cid)
    for cells in pieces.values():
        for level in sorted({complex_[c].filt for c in cells}):
            if not is_acyclic(complex_, [c for c in cells if complex_[c].filt <= level]):
                return False
    return True


def excise(complex_: FilteredComplex, acyclic: AcyclicSubcomplex) -> ReductionLog:
    """Remove the closed acyclic subcomplex from the complex."""
    if acyclic.closed_cells != closure(complex_, acyclic.top_cells):
        raise AcyclicError("subcomplex is not finalized: closed cells differ from the closure of its top cells")
    log = ReductionLog()
    for cid in sorted(acyclic.closed_cells, key=lambda c: (-complex_[c].dim, c)):
        filt = complex_[cid].filt
        complex_.remove_cell(cid)
        log.record(EXCISE, (cid,), filt)
    return log
