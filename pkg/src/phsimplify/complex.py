"""Filtered chain complexes with a fixed cell basis and Z2 coefficients.

Incidence is pure set membership: ``b in cell.faces`` means the boundary
coefficient of ``b`` in ``cell`` is 1.  Cells are never renumbered while a
complex is being reduced; removed cells are tombstoned and dropped from the
incidence sets of their neighbours.  :meth:`FilteredComplex.compact` produces
a renumbered copy holding only the live cells.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator


class ComplexError(ValueError):
    """Base class for structural errors raised by the complex model."""


class NotIncidentError(ComplexError):
    pass


class DeadCellError(ComplexError):
    pass


class InvalidComplexError(ComplexError):
    pass


@dataclass(slots=True, eq=False)
class Cell:
    id: int
    dim: int
    filt: int
    faces: set[int] = field(default_factory=set)
    cofaces: set[int] = field(default_factory=set)
    alive: bool = True
    label: Hashable | None = None


@dataclass
class ValidationReport:
    # (face, cell) pairs with filt(face) > filt(cell)
    monotonicity: list[tuple[int, int]] = field(default_factory=list)
    # (cell, codimension-2 face) reached an odd number of times
    boundary: list[tuple[int, int]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.monotonicity and not self.boundary

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        lines = [f"filtration decreases from face {b} to cell {a}" for b, a in self.monotonicity]
        lines += [f"boundary of boundary of cell {a} hits {c} an odd number of times" for a, c in self.boundary]
        return "\n".join(lines) or "valid"


class FilteredComplex:
    """A filtered S-complex: cells, Z2 incidence, integer filtration values.

    ``closed`` stays true while every removal took out a cell without live
    cofaces, i.e. while the live cells still form a subcomplex of the input.
    Coreductions and excision turn it off.
    """

    def __init__(self) -> None:
        self.cells: list[Cell] = []
        self.live_count = 0
        self.closed = True

    # construction -----------------------------------------------------

    def add_cell(self, dim: int, filt: int, faces: Iterable[int] = (), label: Hashable | None = None) -> int:
        if dim < 0:
            raise ComplexError(f"negative dimension {dim}")
        faces = set(faces)
        for f in faces:
            if not 0 <= f < len(self.cells):
                raise ComplexError(f"face {f} does not exist yet")
            face = self.cells[f]
            if not face.alive:
                raise DeadCellError(f"face {f} is dead")
            if face.dim != dim - 1:
                raise ComplexError(f"face {f} has dimension {face.dim}, expected {dim - 1}")
        cid = len(self.cells)
        self.cells.append(Cell(cid, dim, int(filt), faces, set(), True, label))
        for f in faces:
            self.cells[f].cofaces.add(cid)
        self.live_count += 1
        return cid

    def copy(self) -> FilteredComplex:
        other = FilteredComplex()
        other.cells = [
            Cell(c.id, c.dim, c.filt, set(c.faces), set(c.cofaces), c.alive, c.label) for c in self.cells
        ]
        other.live_count = self.live_count
        other.closed = self.closed
        return other

    def compact(self) -> tuple[FilteredComplex, dict[int, int]]:
        """Renumber live cells densely, preserving their relative order."""
        out = FilteredComplex()
        remap: dict[int, int] = {}
        for c in self.cells:
            if c.alive:
                remap[c.id] = out.add_cell(c.dim, c.filt, (remap[f] for f in c.faces), c.label)
        out.closed = self.closed
        return out, remap

    # queries ------------------------------------------------------------

    def __len__(self) -> int:
        return self.live_count

    def __getitem__(self, cid: int) -> Cell:
        return self.cells[cid]

    def __iter__(self) -> Iterator[Cell]:
        return (c for c in self.cells if c.alive)

    def live_ids(self) -> list[int]:
        return [c.id for c in self.cells if c.alive]

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self), default=-1)

    def counts_by_dim(self) -> dict[int, int]:
        counts: dict[int, int] = defaultdict(int)
        for c in self:
            counts[c.dim] += 1
        return dict(sorted(counts.items()))

    def filtration(self) -> dict[int, int]:
        return {c.id: c.filt for c in self}

    def is_alive(self, cid: int) -> bool:
        return 0 <= cid < len(self.cells) and self.cells[cid].alive

    def find(self, label: Hashable) -> int:
        """Id of the live cell carrying ``label`` (builders attach coordinates)."""
        for c in self:
            if c.label == label:
                return c.id
        raise KeyError(label)

    # removal --------------------------------------------------------------

    def _kill(self, cid: int) -> None:
        cell = self.cells[cid]
        if cell.cofaces:
            self.closed = False
        for f in cell.faces:
            self.cells[f].cofaces.discard(cid)
        for f in cell.cofaces:
            self.cells[f].faces.discard(cid)
        cell.faces = set()
        cell.cofaces = set()
        cell.alive = False
        self.live_count -= 1

    def _require_alive(self, cid: int) -> Cell:
        if not 0 <= cid < len(self.cells):
            raise ComplexError(f"no cell {cid}")
        cell = self.cells[cid]
        if not cell.alive:
            raise DeadCellError(f"cell {cid} was already removed")
        return cell

    def remove_pair(self, face: int, coface: int) -> None:
        """Remove ``face`` together with ``coface``; ``face`` must lie in its boundary."""
        self._require_alive(face)
        upper = self._require_alive(coface)
        if face not in upper.faces:
            raise NotIncidentError(f"cell {face} is not a face of cell {coface}")
        self._kill(coface)
        self._kill(face)

    def remove_cell(self, cid: int) -> None:
        self._require_alive(cid)
        self._kill(cid)

    def set_filt(self, cid: int, value: int) -> None:
        self.cells[cid].filt = int(value)


def validate(complex_: FilteredComplex) -> ValidationReport:
    report = ValidationReport()
    cells = complex_.cells
    for a in complex_:
        for b in sorted(a.faces):
            if cells[b].filt > a.filt:
                report.monotonicity.append((b, a.id))
        if a.dim < 2:
            continue
        parity: dict[int, int] = defaultdict(int)
        for b in a.faces:
            for c in cells[b].faces:
                parity[c] ^= 1
        report.boundary.extend((a.id, c) for c in sorted(parity) if parity[c])
    return report


def require_valid(complex_: FilteredComplex) -> None:
    report = validate(complex_)
    if not report.valid:
        raise InvalidComplexError(report.describe())


def _component_labels(complex_: FilteredComplex) -> dict[int, int]:
    """Map every live cell to the smallest live cell id of its component."""
    parent = {c.id: c.id for c in complex_}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for c in complex_:
        for f in c.faces:
            ra, rb = find(c.id), find(f)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return {cid: find(cid) for cid in parent}


def cell_components(complex_: FilteredComplex) -> list[list[int]]:
    """Connected components of the live cells, each sorted, ordered by smallest id."""
    groups: dict[int, list[int]] = defaultdict(list)
    for cid, root in _component_labels(complex_).items():
        groups[root].append(cid)
    return [sorted(groups[r]) for r in sorted(groups)]


def connected_components(complex_: FilteredComplex) -> dict[int, int]:
    """Label live vertices by component; labels are 0, 1, ... in order of smallest vertex id."""
    labels = _component_labels(complex_)
    renumber: dict[int, int] = {}
    out: dict[int, int] = {}
    for c in complex_:
        if c.dim == 0:
            root = labels[c.id]
            out[c.id] = renumber.setdefault(root, len(renumber))
    return out


def closure(complex_: FilteredComplex, seed: Iterable[int]) -> set[int]:
    result: set[int] = set()
    stack = []
    for cid in seed:
        complex_._require_alive(cid)
        stack.append(cid)
    cells = complex_.cells
    while stack:
        cid = stack.pop()
        if cid in result:
            continue
        result.add(cid)
        stack.extend(f for f in cells[cid].faces if f not in result)
    return result
