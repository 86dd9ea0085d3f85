"""Plain-text file formats: temporal graphs, DIMACS CNF, colored graphs.

Graph files are line oriented and diffable::

    # comment
    temporal <n> <m>
    arc <src> <dst> <t> <lambda>     (m lines, serialized in input order)
    name <id> <string>               (optional vertex names)

Query files hold ``key value`` pairs (s, z, x, delta, kind).  CNF input is
standard DIMACS; colored graphs use a ``parts`` line with one class size per
color (vertices are numbered consecutively partition by partition) followed
by ``edge u v`` lines.
"""

from __future__ import annotations

from pathlib import Path

from .reductions import CnfInstance, MulticoloredGraph
from .temporal_graph import TemporalGraph, TimeArc, ValidationError, build_graph


class FormatError(ValidationError):
    """Malformed input file; the message names the offending line."""


def _tokens(path: Path) -> list[tuple[int, list[str]]]:
    lines = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line.split()))
    return lines


def _int(value: str, lineno: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"line {lineno}: {what} is not an integer: {value!r}") from None


def read_graph(path: str | Path) -> tuple[TemporalGraph, dict[int, str]]:
    """Parse a graph file; returns the graph and its (possibly empty) names."""
    path = Path(path)
    rows = _tokens(path)
    if not rows:
        raise FormatError(f"line 1: missing 'temporal <n> <m>' header in {path}")
    lineno, head = rows[0]
    if head[0] != "temporal" or len(head) != 3:
        raise FormatError(f"line {lineno}: expected 'temporal <n> <m>', got {' '.join(head)!r}")
    n = _int(head[1], lineno, "vertex count")
    m = _int(head[2], lineno, "arc count")

    arcs: list[TimeArc] = []
    names: dict[int, str] = {}
    for lineno, parts in rows[1:]:
        if parts[0] == "arc":
            if len(parts) != 5:
                raise FormatError(f"line {lineno}: expected 'arc <src> <dst> <t> <lambda>'")
            src, dst, t, trav = (_int(p, lineno, "arc field") for p in parts[1:])
            try:
                arcs.append(TimeArc(src, dst, t, trav))
            except ValidationError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
        elif parts[0] == "name":
            if len(parts) < 3:
                raise FormatError(f"line {lineno}: expected 'name <id> <string>'")
            vid = _int(parts[1], lineno, "vertex id")
            if not 0 <= vid < n:
                raise FormatError(f"line {lineno}: vertex id {vid} out of range [0, {n})")
            names[vid] = " ".join(parts[2:])
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    if len(arcs) != m:
        raise FormatError(
            f"line {rows[0][0]}: header declares {m} arcs but file contains {len(arcs)}"
        )
    try:
        graph = build_graph(n, arcs)
    except ValidationError as exc:
        raise FormatError(f"line {rows[0][0]}: {exc}") from None
    return graph, names


def write_graph(path: str | Path, g: TemporalGraph, names: dict[int, str] | None = None) -> None:
    """Serialize a graph; arcs keep their input order."""
    lines = [f"temporal {g.vertex_count} {len(g.arcs)}"]
    lines.extend(f"arc {a.src} {a.dst} {a.t} {a.trav}" for a in g.arcs)
    if names:
        lines.extend(f"name {vid} {names[vid]}" for vid in sorted(names))
    Path(path).write_text("\n".join(lines) + "\n")


def read_query(path: str | Path) -> dict[str, str]:
    """Parse a ``key value`` query file (keys: s, z, x, delta, kind)."""
    allowed = {"s", "z", "x", "delta", "kind"}
    out: dict[str, str] = {}
    for lineno, parts in _tokens(Path(path)):
        if len(parts) != 2 or parts[0] not in allowed:
            raise FormatError(
                f"line {lineno}: expected '<key> <value>' with key in {sorted(allowed)}"
            )
        out[parts[0]] = parts[1]
    return out


def read_cnf(path: str | Path) -> CnfInstance:
    """Parse DIMACS CNF: 'c' comments, 'p cnf <n> <m>', 0-terminated clauses."""
    path = Path(path)
    variables: int | None = None
    declared = 0
    literals: list[int] = []
    clauses: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            variables = _int(parts[2], lineno, "variable count")
            declared = _int(parts[3], lineno, "clause count")
            continue
        if variables is None:
            raise FormatError(f"line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            lit = _int(token, lineno, "literal")
            if lit == 0:
                if not literals:
                    raise FormatError(f"line {lineno}: empty clause")
                clauses.append(tuple(literals))
                literals = []
            else:
                literals.append(lit)
    if variables is None:
        raise FormatError("line 1: missing 'p cnf' header")
    if literals:
        raise FormatError("line 1: last clause is not 0-terminated")
    if len(clauses) != declared:
        raise FormatError(
            f"line 1: header declares {declared} clauses but file contains {len(clauses)}"
        )
    try:
        return CnfInstance(variables, tuple(clauses))
    except ValidationError as exc:
        raise FormatError(f"line 1: {exc}") from None


def read_mcc(path: str | Path) -> MulticoloredGraph:
    """Parse a colored graph: 'parts <s1> .. <sk>' then 'edge <u> <v>' lines."""
    rows = _tokens(Path(path))
    if not rows or rows[0][1][0] != "parts":
        raise FormatError("line 1: expected 'parts <size> ...' header")
    lineno, head = rows[0]
    sizes = [_int(p, lineno, "partition size") for p in head[1:]]
    if not sizes:
        raise FormatError(f"line {lineno}: need at least one partition size")
    partitions: list[tuple[int, ...]] = []
    start = 0
    for size in sizes:
        partitions.append(tuple(range(start, start + size)))
        start += size
    edges: set[tuple[int, int]] = set()
    for lineno, parts in rows[1:]:
        if parts[0] != "edge" or len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'edge <u> <v>'")
        u = _int(parts[1], lineno, "vertex")
        v = _int(parts[2], lineno, "vertex")
        if not (0 <= u < start and 0 <= v < start) or u == v:
            raise FormatError(f"line {lineno}: bad edge ({u}, {v})")
        edges.add((min(u, v), max(u, v)))
    try:
        return MulticoloredGraph(tuple(partitions), frozenset(edges))
    except ValidationError as exc:
        raise FormatError(f"line 1: {exc}") from None
