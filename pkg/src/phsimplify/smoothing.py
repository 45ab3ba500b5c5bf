"""Epsilon-smoothing: trade a bounded filtration change for more reductions.

A pair whose filtration values differ is made removable by raising the
lower cell to the value of its partner.  Every move is checked against the
original values and against the cofaces the cell had in the complex before
any reduction, so the perturbed values still form a filtration of the
original complex and the bottleneck distance to the true diagram is at most
epsilon.  A raised cell is removed immediately, so no cell moves twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import ComplexError, FilteredComplex, closure, require_valid
from .reductions import ReductionLog, remove_seed_vertices, run_collapses, run_coreductions


class SmoothingError(ComplexError):
    pass


@dataclass
class PerturbedFiltration:
    original: dict[int, int]
    current: dict[int, int]
    epsilon: int
    # coface sets of the complex the perturbation started from
    initial_cofaces: dict[int, frozenset[int]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_complex(cls, complex_: FilteredComplex, epsilon: int) -> PerturbedFiltration:
        if epsilon < 0:
            raise SmoothingError(f"epsilon must be non-negative, got {epsilon}")
        values = complex_.filtration()
        cofaces = {c.id: frozenset(c.cofaces) for c in complex_}
        return cls(values, dict(values), int(epsilon), cofaces)

    def changed(self) -> list[tuple[int, int, int]]:
        return [(cid, self.original[cid], new) for cid, new in sorted(self.current.items()) if new != self.original[cid]]

    def max_shift(self) -> int:
        return max((abs(self.current[c] - self.original[c]) for c in self.original), default=0)

    def is_monotone(self) -> bool:
        """Whether the current values filter the initial complex."""
        cur = self.current
        return all(cur[b] <= cur[a] for b, cofaces in self.initial_cofaces.items() for a in cofaces)

    def apply_to(self, complex_: FilteredComplex) -> None:
        for c in complex_:
            c.filt = self.current[c.id]

    def log_lines(self) -> list[str]:
        return [f"perturb {cid} {old} {new}" for cid, old, new in self.changed()]


def _start(complex_: FilteredComplex, epsilon: int, perturbation: PerturbedFiltration | None) -> PerturbedFiltration:
    require_valid(complex_)
    if perturbation is None:
        return PerturbedFiltration.from_complex(complex_, epsilon)
    if perturbation.epsilon != epsilon:
        raise SmoothingError(f"perturbation was started with epsilon {perturbation.epsilon}, not {epsilon}")
    return perturbation


def _raise_allowed(pf: PerturbedFiltration, complex_: FilteredComplex, cell: int, target: int) -> bool:
    # strict on purpose: |f(cell) - target| < epsilon
    if abs(target - pf.original[cell]) >= pf.epsilon:
        return False
    # a cell moves at most once, even across chained stages
    if pf.current[cell] != pf.original[cell]:
        return False
    cur = complex_.cells
    return all(pf.original[up] >= target and cur[up].filt >= target for up in pf.initial_cofaces[cell])


def smooth_collapse(
    complex_: FilteredComplex, epsilon: int, *, perturbation: PerturbedFiltration | None = None
) -> tuple[ReductionLog, PerturbedFiltration]:
    """Elementary collapses where a free face may be raised to its coface's value.

    Pass ``perturbation`` to continue a perturbation started on the original
    complex (for example by :func:`quantize_levels`); the bound then holds for
    the combined change.
    """
    pf = _start(complex_, epsilon, perturbation)

    def rule(cx: FilteredComplex, b: int) -> int | None:
        cell = cx[b]
        if len(cell.cofaces) != 1:
            return None
        (a,) = cell.cofaces
        target = cx[a].filt
        if target == cell.filt or _raise_allowed(pf, cx, b, target):
            return a
        return None

    def raise_face(a: int, b: int) -> None:
        target = complex_[a].filt
        if complex_[b].filt != target:
            complex_.set_filt(b, target)
            pf.current[b] = target

    log = ReductionLog()
    run_collapses(complex_, rule, log, on_remove=raise_face)
    return log, pf


def smooth_coreduce(
    complex_: FilteredComplex, epsilon: int, *, perturbation: PerturbedFiltration | None = None
) -> tuple[ReductionLog, PerturbedFiltration]:
    """Coreductions where the sole face may be raised to its coface's value.

    Only dimensions >= 1 keep the epsilon bound; dimension 0 is lost as
    with plain coreduction.
    """
    pf = _start(complex_, epsilon, perturbation)

    def rule(cx: FilteredComplex, upper: int) -> int | None:
        cell = cx[upper]
        if len(cell.faces) != 1:
            return None
        (a,) = cell.faces
        if cx[a].filt == cell.filt or _raise_allowed(pf, cx, a, cell.filt):
            return a
        return None

    def raise_face(upper: int, a: int) -> None:
        target = complex_[upper].filt
        if complex_[a].filt != target:
            complex_.set_filt(a, target)
            pf.current[a] = target

    log = ReductionLog()
    remove_seed_vertices(complex_, log)
    run_coreductions(complex_, rule, log, on_remove=raise_face)
    return log, pf


def _buckets(values: list[int], epsilon: int) -> dict[int, int]:
    """Map each value to its bucket representative; buckets span at most 2*epsilon."""
    rep: dict[int, int] = {}
    values = sorted(set(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[j + 1] - values[i] <= 2 * epsilon:
            j += 1
        lo, hi = values[i], values[j]
        for v in values[i : j + 1]:
            rep[v] = lo + (hi - lo) // 2
        i = j + 1
    return rep


def quantize_levels(complex_: FilteredComplex, epsilon: int) -> PerturbedFiltration:
    """Merge nearby top-cell values into fewer levels, then re-extend by minima.

    The complex must be lower-star filtered from its top cells.  The
    returned perturbation is not applied; call ``apply_to``.
    """
    pf = PerturbedFiltration.from_complex(complex_, epsilon)
    if not complex_.closed:
        raise SmoothingError("level quantization needs a closed complex")
    tops = [c.id for c in complex_ if not c.cofaces]
    if len({complex_[t].dim for t in tops}) > 1:
        raise SmoothingError("top cells of mixed dimensions")
    star_min: dict[int, int] = {}
    hulls = {t: closure(complex_, [t]) for t in tops}
    for t in tops:
        for c in hulls[t]:
            star_min[c] = min(star_min.get(c, complex_[t].filt), complex_[t].filt)
    for c in complex_:
        if star_min[c.id] != c.filt:
            raise SmoothingError(f"cell {c.id} is not lower-star filtered from its top cells")
    rep = _buckets([complex_[t].filt for t in tops], epsilon)
    new_min: dict[int, int] = {}
    for t in tops:
        value = rep[complex_[t].filt]
        for c in hulls[t]:
            new_min[c] = min(new_min.get(c, value), value)
    pf.current.update(new_min)
    return pf
