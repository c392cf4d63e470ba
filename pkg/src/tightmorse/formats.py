"""Text formats: facets v1, geom v1, morse v1, and drilling paths.

All formats are line-oriented with ``#`` comments.  Numbers written as
fractions or decimal strings are parsed exactly into Fraction; plain
integers stay integers.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .complex_core import SimplicialComplex, from_facets
from .constructions import LatticePath
from .errors import FormatError
from .geometry import GeometricRealization
from .morse import MorseMatching, critical_faces

Number = int | float | Fraction


def parse_number(token: str) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return Fraction(token)  # handles "3/4" and "0.25" exactly
    except ValueError as exc:
        raise FormatError(f"cannot parse number {token!r}") from exc


def format_number(x: Number) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(x) if isinstance(x, float) else str(x)


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


# -- facets v1 ---------------------------------------------------------------

def parse_facets(text: str) -> SimplicialComplex:
    lines = _content_lines(text)
    if not lines or not lines[0].startswith("facets"):
        raise FormatError("expected 'facets <n>' header")
    try:
        count = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("malformed facets header") from exc
    body = lines[1:]
    if len(body) != count:
        raise FormatError(f"header says {count} facets, found {len(body)}")
    facets = []
    for line in body:
        try:
            facets.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise FormatError(f"bad facet line {line!r}") from exc
    return from_facets(facets)


def dump_facets(c: SimplicialComplex) -> str:
    facets = c.facets
    lines = [f"facets {len(facets)}"]
    lines.extend(" ".join(str(v) for v in f) for f in facets)
    return "\n".join(lines) + "\n"


# -- geom v1 -----------------------------------------------------------------

def parse_geom(text: str) -> GeometricRealization:
    lines = _content_lines(text)
    if not lines or not lines[0].startswith("geom"):
        raise FormatError("expected 'geom <k>' header")
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("malformed geom header") from exc
    coords: dict[int, tuple[Number, ...]] = {}
    idx = 1
    while idx < len(lines) and lines[idx].startswith("v "):
        parts = lines[idx].split()
        if len(parts) != 2 + k:
            raise FormatError(f"vertex line has wrong arity: {lines[idx]!r}")
        coords[int(parts[1])] = tuple(parse_number(tok) for tok in parts[2:])
        idx += 1
    complex_ = parse_facets("\n".join(lines[idx:]))
    return GeometricRealization(complex_, coords, k)


def dump_geom(g: GeometricRealization) -> str:
    lines = [f"geom {g.ambient_dim}"]
    for v in sorted(g.coords):
        lines.append("v " + str(v) + " " + " ".join(format_number(x) for x in g.coords[v]))
    return "\n".join(lines) + "\n" + dump_facets(g.complex)


# -- morse v1 ----------------------------------------------------------------

def parse_morse(text: str, c: SimplicialComplex) -> MorseMatching:
    pairs = []
    criticals = []
    for line in _content_lines(text):
        if line.startswith("pair"):
            body = line[len("pair"):]
            if ";" not in body:
                raise FormatError(f"pair line without ';': {line!r}")
            left, right = body.split(";", 1)
            pairs.append((
                tuple(sorted(int(t) for t in left.split())),
                tuple(sorted(int(t) for t in right.split())),
            ))
        elif line.startswith("critical"):
            criticals.append(tuple(sorted(int(t) for t in line.split()[1:])))
        else:
            raise FormatError(f"unrecognized morse line {line!r}")
    matching = MorseMatching(c, frozenset(pairs))
    if criticals and sorted(criticals) != sorted(critical_faces(matching)):
        raise FormatError("critical lines disagree with the pairs")
    return matching


def dump_morse(m: MorseMatching) -> str:
    lines = []
    for s, t in sorted(m.pairs):
        lines.append("pair " + " ".join(map(str, s)) + " ; " + " ".join(map(str, t)))
    for f in critical_faces(m):
        lines.append("critical " + " ".join(map(str, f)))
    return "\n".join(lines) + "\n"


# -- drilling paths ------------------------------------------------------------

def parse_path(text: str) -> LatticePath:
    cubes = []
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"path line needs three integers: {line!r}")
        cubes.append(tuple(int(t) for t in parts))
    if not cubes:
        raise FormatError("empty path")
    return LatticePath(tuple(cubes))


def dump_path(path: LatticePath) -> str:
    return "\n".join(" ".join(map(str, cube)) for cube in path.cubes) + "\n"


# -- file helpers ----------------------------------------------------------------

def read_complex(path: str | Path) -> SimplicialComplex:
    """Read a facets file, or the facets section of a geom file."""
    text = Path(path).read_text()
    if text.lstrip().startswith("geom"):
        return parse_geom(text).complex
    return parse_facets(text)


def read_geom(path: str | Path) -> GeometricRealization:
    return parse_geom(Path(path).read_text())


def read_path_file(path: str | Path) -> LatticePath:
    return parse_path(Path(path).read_text())


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
