"""Command line front end: ``reduce``, ``persist`` and ``diff``.

Exit codes: 0 success (or equal diagrams), 1 diagrams differ, 2 usage
error, 3 data error (I/O, malformed input, invalid complex).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .acyclic import excise, grow_acyclic
from .complex import ComplexError, FilteredComplex, require_valid
from .formats import format_complex, load_diagram, read_input
from .persistence import INF, bottleneck, compute_diagram, diagrams_equal, zero_dim_unionfind
from .reductions import collapse_reduce, coreduce
from .smoothing import quantize_levels, smooth_collapse, smooth_coreduce

PIPELINE = ("acyclic", "collapse", "coreduce")

EXIT_OK, EXIT_DIFFER, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    inputs: list[str]
    fmt: str | None = None
    vertex_max: bool = False
    methods: list[str] = field(default_factory=list)
    epsilon: int | None = None
    out: str | None = None
    log: str | None = None
    diagram: str | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        expanded: list[str] = []
        for m in self.methods:
            expanded.extend(PIPELINE if m == "all" else [m])
        self.methods = expanded
        if self.epsilon is not None and self.epsilon < 0:
            raise UsageError("--epsilon must be non-negative")


@dataclass
class ReduceResult:
    reduced: str
    log: str
    stats: str
    dim0: str | None


def _boundary_nonzeros(complex_: FilteredComplex) -> int:
    return sum(len(c.faces) for c in complex_)


def _counts(complex_: FilteredComplex) -> str:
    counts = complex_.counts_by_dim()
    per_dim = " ".join(f"d{d}={n}" for d, n in counts.items())
    return f"{len(complex_)}" + (f" ({per_dim})" if per_dim else "")


def reduce_one(path: str, config: RunConfig) -> ReduceResult:
    complex_ = read_input(path, config.fmt, vertex_values=config.vertex_max)
    require_valid(complex_)
    original = complex_.copy()
    before = _counts(complex_)
    nnz_before = _boundary_nonzeros(complex_)
    eps = config.epsilon
    pf = None
    log_lines: list[str] = []
    removed: dict[str, int] = {}
    for method in config.methods:
        if method == "acyclic":
            if eps is not None:
                if pf is not None:
                    raise UsageError("with --epsilon, acyclic must run before the other methods")
                pf = quantize_levels(complex_, eps)
                pf.apply_to(complex_)
            acyclic = grow_acyclic(complex_)
            log_lines += acyclic.log_lines()
            log = excise(complex_, acyclic)
        elif method == "collapse":
            if eps is None:
                log = collapse_reduce(complex_)
            else:
                log, pf = smooth_collapse(complex_, eps, perturbation=pf)
        elif method == "coreduce":
            if eps is None:
                log = coreduce(complex_)
            else:
                log, pf = smooth_coreduce(complex_, eps, perturbation=pf)
        else:
            raise UsageError(f"unknown method {method!r}")
        log_lines += [str(e) for e in log.events]
        removed[method] = removed.get(method, 0) + log.removed_count
    if pf is not None:
        log_lines += pf.log_lines()

    reduced, _ = complex_.compact()
    total = len(original)
    gone = total - len(reduced)
    stats = [
        f"input: {path}",
        f"cells before: {before}",
        f"cells after: {_counts(reduced)}",
        f"removed: {gone} ({100.0 * gone / total if total else 0.0:.1f}%)",
    ]
    stats += [f"removed by {m}: {n}" for m, n in removed.items()]
    stats.append(f"boundary nonzeros: {nnz_before} -> {_boundary_nonzeros(reduced)}")
    if eps is not None:
        stats.append(f"max filtration change: {pf.max_shift() if pf else 0} (epsilon {eps})")
    dim0 = None
    if {"coreduce", "acyclic"} & set(config.methods):
        dim0 = zero_dim_unionfind(original).to_text()
    return ReduceResult(format_complex(reduced), "".join(l + "\n" for l in log_lines), "\n".join(stats) + "\n", dim0)


def _target(base: str | None, path: str, suffix: str, many: bool) -> Path | None:
    if base is None:
        return None
    if not many:
        return Path(base)
    Path(base).mkdir(parents=True, exist_ok=True)
    return Path(base) / (Path(path).stem + suffix)


def _map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _reduce_task(args: tuple[str, RunConfig]) -> ReduceResult:
    return reduce_one(*args)


def cmd_reduce(config: RunConfig) -> int:
    if not config.methods:
        raise UsageError("reduce needs at least one --method")
    many = len(config.inputs) > 1
    results = _map(_reduce_task, [(p, config) for p in config.inputs], config.jobs)
    for path, res in zip(config.inputs, results):
        sys.stdout.write(res.stats)
        out = _target(config.out, path, ".complex", many)
        if out is not None:
            out.write_text(res.reduced)
        log = _target(config.log, path, ".log", many)
        if log is not None:
            log.write_text(res.log)
        dgm = _target(config.diagram, path, ".dgm", many)
        if dgm is not None and res.dim0 is not None:
            dgm.write_text(res.dim0)
    return EXIT_OK


def persist_one(path: str, config: RunConfig, dim0_unionfind: bool, clearing: bool) -> str:
    complex_ = read_input(path, config.fmt, vertex_values=config.vertex_max)
    diagram = compute_diagram(complex_, clearing=clearing)
    if dim0_unionfind:
        diagram = diagram.drop([0])
        diagram.intervals = sorted(diagram.intervals + zero_dim_unionfind(complex_).intervals)
    return diagram.to_text()


def _persist_task(args) -> str:
    return persist_one(*args)


def cmd_persist(config: RunConfig, dim0_unionfind: bool = False, clearing: bool = False) -> int:
    many = len(config.inputs) > 1
    texts = _map(_persist_task, [(p, config, dim0_unionfind, clearing) for p in config.inputs], config.jobs)
    for path, text in zip(config.inputs, texts):
        out = _target(config.out, path, ".dgm", many)
        if out is None:
            sys.stdout.write(text)
        else:
            out.write_text(text)
    return EXIT_OK


def _fmt_distance(value: float) -> str:
    if value == INF:
        return "inf"
    return str(int(value)) if value == int(value) else str(value)


def cmd_diff(first: str, second: str, *, use_bottleneck: bool = False, dims: Sequence[int] | None = None,
             tolerance: float | None = None) -> int:
    d1, d2 = load_diagram(first), load_diagram(second)
    if use_bottleneck:
        wanted = sorted(dims) if dims else sorted(d1.dims() | d2.dims())
        worst = 0.0
        for dim in wanted:
            dist = bottleneck(d1, d2, dim)
            worst = max(worst, dist)
            print(f"dim {dim} bottleneck {_fmt_distance(dist)}")
        if tolerance is not None and worst > tolerance:
            return EXIT_DIFFER
        return EXIT_OK
    result = diagrams_equal(d1, d2, dims)
    if result.equal:
        print("equal")
        return EXIT_OK
    print(f"differ: first mismatch {result.witness}")
    return EXIT_DIFFER


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phsimplify", description="Reduce filtered cell complexes and compute persistence diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def input_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("inputs", nargs="+", help="input file(s)")
        p.add_argument("--format", dest="fmt", choices=["complex", "voxel", "simplicial"],
                       help="input format (default: detect from the header)")
        p.add_argument("--vertex-max", action="store_true",
                       help="voxel values sit on grid vertices; cells take the maximum")
        p.add_argument("--out", help="output file, or directory when several inputs are given")
        p.add_argument("--jobs", type=int, default=1, help="process independent input files in parallel")

    red = sub.add_parser("reduce", help="reduce a complex before persistence computation")
    input_args(red)
    red.add_argument("--method", action="append", default=[], choices=[*PIPELINE, "all"],
                     help="reduction to apply; repeat to chain, 'all' = acyclic, collapse, coreduce")
    red.add_argument("--epsilon", type=int, help="allow filtration changes below this bound")
    red.add_argument("--log", help="write the reduction log here")
    red.add_argument("--diagram", help="write the dimension-0 diagram of the input here")

    per = sub.add_parser("persist", help="compute a persistence diagram")
    input_args(per)
    per.add_argument("--dim0-unionfind", action="store_true", help="compute dimension 0 with union-find")
    per.add_argument("--clearing", action="store_true", help="use the clearing optimization")

    dif = sub.add_parser("diff", help="compare two diagram files")
    dif.add_argument("first")
    dif.add_argument("second")
    dif.add_argument("--bottleneck", action="store_true", help="print bottleneck distances per dimension")
    dif.add_argument("--dims", type=int, nargs="+", help="only compare these dimensions")
    dif.add_argument("--tolerance", type=float, help="with --bottleneck, exit 1 if a distance exceeds this")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "diff":
            return cmd_diff(args.first, args.second, use_bottleneck=args.bottleneck, dims=args.dims,
                            tolerance=args.tolerance)
        config = RunConfig(
            inputs=args.inputs,
            fmt=args.fmt,
            vertex_max=args.vertex_max,
            methods=getattr(args, "method", []),
            epsilon=getattr(args, "epsilon", None),
            out=args.out,
            log=getattr(args, "log", None),
            diagram=getattr(args, "diagram", None),
            jobs=args.jobs,
        )
        if args.command == "reduce":
            return cmd_reduce(config)
        return cmd_persist(config, args.dim0_unionfind, args.clearing)
    except UsageError as exc:
        print(f"phsimplify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ComplexError) as exc:
        print(f"phsimplify: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
