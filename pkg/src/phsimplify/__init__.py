"""Reduce filtered cell complexes before computing persistent homology."""

from .acyclic import AcyclicSubcomplex, excise, grow_acyclic, is_acyclic
from .builders import (
    SimplexSpec,
    VoxelGrid,
    build_cubical_lower_star,
    build_simplicial_max,
    cubical_complex,
    simplicial_complex,
)
from .complex import (
    Cell,
    ComplexError,
    DeadCellError,
    FilteredComplex,
    InvalidComplexError,
    NotIncidentError,
    ValidationReport,
    closure,
    connected_components,
    validate,
)
from .formats import load_complex, save_complex
from .persistence import (
    INF,
    Interval,
    PersistenceDiagram,
    bottleneck,
    compute_diagram,
    diagrams_equal,
    zero_dim_unionfind,
)
from .reductions import ReductionLog, collapse_reduce, coreduce
from .smoothing import PerturbedFiltration, quantize_levels, smooth_collapse, smooth_coreduce

__all__ = [
    "AcyclicSubcomplex",
    "Cell",
    "ComplexError",
    "DeadCellError",
    "FilteredComplex",
    "INF",
    "Interval",
    "InvalidComplexError",
    "NotIncidentError",
    "PersistenceDiagram",
    "PerturbedFiltration",
    "ReductionLog",
    "SimplexSpec",
    "ValidationReport",
    "VoxelGrid",
    "bottleneck",
    "build_cubical_lower_star",
    "build_simplicial_max",
    "closure",
    "collapse_reduce",
    "compute_diagram",
    "connected_components",
    "coreduce",
    "cubical_complex",
    "diagrams_equal",
    "excise",
    "grow_acyclic",
    "is_acyclic",
    "load_complex",
    "quantize_levels",
    "save_complex",
    "simplicial_complex",
    "smooth_collapse",
    "smooth_coreduce",
    "validate",
    "zero_dim_unionfind",
]
