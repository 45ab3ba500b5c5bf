"""Plain-text file formats.

complex     one cell per line, ids implicit by line order:
            ``<dim> <filt> <k> <face_1> ... <face_k>``
voxel       ``voxel <d> <n1> ... <nd>`` then prod(n) integers, last axis fastest
simplicial  ``simplicial <num_vertices>``, a line of vertex values, then one
            maximal simplex per line
diagram     ``<dim> <birth> <death|inf>`` per line

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

import os
from pathlib import Path

from .builders import SimplexSpec, VoxelGrid, build_cubical_lower_star, build_simplicial_max
from .complex import ComplexError, FilteredComplex
from .persistence import INF, Interval, PersistenceDiagram


class FormatError(ComplexError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_complex(text: str) -> FilteredComplex:
    complex_ = FilteredComplex()
    for lineno, line in _lines(text):
        nums = _ints(line.split(), lineno)
        if len(nums) < 3 or nums[2] < 0 or len(nums) != 3 + nums[2]:
            raise FormatError(f"line {lineno}: malformed cell {line!r}")
        dim, filt, _, *faces = nums
        cid = len(complex_.cells)
        for f in faces:
            if f >= cid:
                raise FormatError(f"line {lineno}: face {f} does not precede cell {cid}")
            if f < 0:
                raise FormatError(f"line {lineno}: dangling face id {f}")
        if len(set(faces)) != len(faces):
            raise FormatError(f"line {lineno}: repeated face id")
        try:
            complex_.add_cell(dim, filt, faces)
        except ComplexError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    return complex_


def format_complex(complex_: FilteredComplex) -> str:
    if complex_.live_count != len(complex_.cells):
        complex_, _ = complex_.compact()
    out = []
    for c in complex_:
        faces = sorted(c.faces)
        out.append(" ".join(map(str, [c.dim, c.filt, len(faces), *faces])))
    return "".join(line + "\n" for line in out)


def load_complex(path: str | os.PathLike) -> FilteredComplex:
    return parse_complex(Path(path).read_text())


def save_complex(complex_: FilteredComplex, path: str | os.PathLike) -> None:
    Path(path).write_text(format_complex(complex_))


def parse_voxel(text: str) -> VoxelGrid:
    tokens: list[tuple[int, str]] = []
    for lineno, line in _lines(text):
        tokens.extend((lineno, t) for t in line.split())
    if not tokens or tokens[0][1] != "voxel":
        raise FormatError("voxel file must start with 'voxel <d> <n1> ... <nd>'")
    values = _ints([t for _, t in tokens[1:]], tokens[0][0])
    if not values:
        raise FormatError("missing voxel dimension")
    d = values[0]
    if d < 1 or len(values) < 1 + d:
        raise FormatError("malformed voxel header")
    return VoxelGrid(tuple(values[1 : 1 + d]), values[1 + d :])


def parse_simplicial(text: str) -> SimplexSpec:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty simplicial file")
    lineno, head = lines[0]
    parts = head.split()
    if parts[0] != "simplicial" or len(parts) != 2:
        raise FormatError(f"line {lineno}: expected 'simplicial <num_vertices>'")
    n = _ints(parts[1:], lineno)[0]
    if n == 0:
        return SimplexSpec([], [])
    if len(lines) < 2:
        raise FormatError("missing vertex values")
    values = _ints(lines[1][1].split(), lines[1][0])
    if len(values) != n:
        raise FormatError(f"line {lines[1][0]}: expected {n} vertex values, got {len(values)}")
    simplices = [_ints(line.split(), ln) for ln, line in lines[2:]]
    return SimplexSpec(values, simplices)


def sniff_format(text: str) -> str:
    for _, line in _lines(text):
        head = line.split()[0]
        return head if head in ("voxel", "simplicial") else "complex"
    return "complex"


def read_input(path: str | os.PathLike, fmt: str | None = None, *, vertex_values: bool = False) -> FilteredComplex:
    """Load any supported input file into a filtered complex."""
    text = Path(path).read_text()
    fmt = fmt or sniff_format(text)
    if fmt == "complex":
        return parse_complex(text)
    if fmt == "voxel":
        return build_cubical_lower_star(parse_voxel(text), vertex_values=vertex_values)
    if fmt == "simplicial":
        return build_simplicial_max(parse_simplicial(text))
    raise FormatError(f"unknown format {fmt!r}")


def parse_diagram(text: str) -> PersistenceDiagram:
    intervals = []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected '<dim> <birth> <death|inf>'")
        dim, birth = _ints(parts[:2], lineno)
        death = INF if parts[2] == "inf" else _ints(parts[2:], lineno)[0]
        intervals.append(Interval(dim, birth, death))
    return PersistenceDiagram(intervals)


def load_diagram(path: str | os.PathLike) -> PersistenceDiagram:
    return parse_diagram(Path(path).read_text())


def save_diagram(diagram: PersistenceDiagram, path: str | os.PathLike) -> None:
    Path(path).write_text(diagram.to_text())
