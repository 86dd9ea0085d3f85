"""Instance generators: satisfiability and clique problems as route queries.

The pivot format is choice-constrained positive SAT: variables are grouped
into classes, exactly one variable per class is set true, and the formula
uses only positive literals under AND/OR.  Plain 3-CNF instances map into it
by giving every variable a two-element class (the positive and the negated
twin), and multicolored clique instances by one class per color with one
variable per vertex.

A choice-constrained instance then compiles into a temporal graph in which
an x-delay-robust route from the first selection anchor to the last
finalization anchor exists exactly when the instance is satisfiable.  The
graph chains three kinds of gadget:

* selection gadgets, one per class, whose parallel branches pick a variable
  and encode the pick in the worst-case arrival times (branch a of gadget i
  arrives at o_i + a under 2(i-1) delays and at o_{i+1} - a under one more,
  with offsets o_i = (2m+1)(i-1));
* a validation gadget mirroring the formula, ANDs chaining sub-gadgets in a
  row and ORs placing them in parallel, whose literal gadgets only pass
  unharmed if the selection matches;
* finalization gadgets that exhaust the remaining delay budget against any
  mismatch that slipped through.

Dummy arcs at early (and, outside a gadget's active window, late) time steps
make delays spent in the wrong place worthless.  All arcs have traversal
time 0; the delay magnitude is fixed to 1 and the budget to 2n - 1 for n
classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .temporal_graph import (
    DRPInstance,
    Route,
    TimeArc,
    ValidationError,
    build_graph,
    underlying_graph,
)


@dataclass(frozen=True)
class Lit:
    """Positive literal: variable ``var`` of class ``cls`` (both 1-based)."""

    cls: int
    var: int


@dataclass(frozen=True)
class And:
    children: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Formula", ...]


Formula = Union[Lit, And, Or]


def _literals(phi: Formula):
    if isinstance(phi, Lit):
        yield phi
    else:
        for child in phi.children:
            yield from _literals(child)


@dataclass(frozen=True)
class MCPSatInstance:
    """Variable classes plus a positive AND/OR formula over them."""

    classes: tuple[tuple[str, ...], ...]
    formula: Formula

    def __post_init__(self) -> None:
        names = [name for cls in self.classes for name in cls]
        if len(set(names)) != len(names):
            raise ValidationError("variable classes must be disjoint")
        for lit in _literals(self.formula):
            if not 1 <= lit.cls <= len(self.classes):
                raise ValidationError(f"literal {lit} references unknown class")
            if not 1 <= lit.var <= len(self.classes[lit.cls - 1]):
                raise ValidationError(f"literal {lit} references unknown variable")

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(cls) for cls in self.classes)


@dataclass(frozen=True)
class CnfInstance:
    """A CNF formula: signed 1-based variable indices, no empty clauses."""

    variables: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for idx, clause in enumerate(self.clauses):
            if not clause:
                raise ValidationError(f"clause {idx} is empty")
            for lit in clause:
                if lit == 0 or not 1 <= abs(lit) <= self.variables:
                    raise ValidationError(f"clause {idx}: bad literal {lit}")


@dataclass(frozen=True)
class MulticoloredGraph:
    """Vertex partition into color classes plus undirected edges."""

    partitions: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for part in self.partitions:
            for v in part:
                if v in seen:
                    raise ValidationError(f"vertex {v} in two partitions")
                seen.add(v)
        for u, v in self.edges:
            if u not in seen or v not in seen:
                raise ValidationError(f"edge ({u}, {v}) uses unknown vertex")


@dataclass
class GadgetInstance:
    """A generated route query with layout and provenance by-products.

    ``layout`` is a vertex ordering witnessing small bandwidth for instances
    coming from CNF input; ``provenance`` labels each vertex with its gadget
    role.  The anchor/node maps let tests address specific gadget vertices:
    ``selection_nodes[(i, a)]`` are the two interior vertices of branch a of
    selection gadget i, and similarly for finalization gadgets.
    """

    drp: DRPInstance
    layout: tuple[int, ...]
    provenance: dict[int, str]
    selection_anchors: tuple[int, ...] = ()
    selection_nodes: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    finalization_anchors: tuple[int, ...] = ()
    finalization_nodes: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)


def eval_mcpsat(inst: MCPSatInstance, choice: Sequence[int]) -> bool:
    """Evaluate the formula with variable ``choice[i-1]`` of class i true."""
    if len(choice) != inst.n:
        raise ValidationError(f"need one chosen variable per class ({inst.n})")
    for k, pick in enumerate(choice):
        if not 1 <= pick <= len(inst.classes[k]):
            raise ValidationError(f"choice for class {k + 1} out of range: {pick}")

    def ev(phi: Formula) -> bool:
        if isinstance(phi, Lit):
            return choice[phi.cls - 1] == phi.var
        if isinstance(phi, And):
            return all(ev(c) for c in phi.children)
        return any(ev(c) for c in phi.children)

    return ev(inst.formula)


def threesat_to_mcpsat(cnf: CnfInstance) -> MCPSatInstance:
    """Two-variable classes (variable and its negated twin) per CNF variable;
    negative literals become the positive twin."""
    classes = tuple((f"x{v}", f"~x{v}") for v in range(1, cnf.variables + 1))
    clauses = tuple(
        Or(tuple(Lit(abs(lit), 1 if lit > 0 else 2) for lit in clause))
        for clause in cnf.clauses
    )
    return MCPSatInstance(classes, And(clauses))


def mcc_to_mcpsat(g: MulticoloredGraph) -> MCPSatInstance:
    """One class per color, one variable per vertex; the formula requires an
    edge between the picks of every color pair (an empty OR when a pair has
    no edges, which is unsatisfiable, mirroring that no clique exists)."""
    k = len(g.partitions)
    if k < 2:
        raise ValidationError("multicolored clique needs at least two partitions")
    classes = tuple(tuple(f"v{v}" for v in part) for part in g.partitions)
    position = {
        v: (i + 1, a + 1)
        for i, part in enumerate(g.partitions)
        for a, v in enumerate(part)
    }
    conj = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            options = []
            for u, v in sorted(g.edges):
                (ci, ai), (cj, aj) = position[u], position[v]
                if (ci, cj) == (i, j):
                    options.append(And((Lit(ci, ai), Lit(cj, aj))))
                elif (cj, ci) == (i, j):
                    options.append(And((Lit(cj, aj), Lit(ci, ai))))
            conj.append(Or(tuple(options)))
    return MCPSatInstance(classes, And(tuple(conj)))


def _interleave(blocks: list[list[int]]) -> list[int]:
    out: list[int] = []
    depth = 0
    while any(depth < len(b) for b in blocks):
        for b in blocks:
            if depth < len(b):
                out.append(b[depth])
        depth += 1
    return out


class _Builder:
    def __init__(self) -> None:
        self.labels: list[str] = []
        self.arcs: list[TimeArc] = []

    def vertex(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def hop(self, u: int, v: int, times: Iterable[int]) -> None:
        for t in sorted(times):
            self.arcs.append(TimeArc(u, v, t, 0))


def mcpsat_to_drp(inst: MCPSatInstance) -> GadgetInstance:
    """Compile a choice-constrained SAT instance into a route query.

    The query uses delay magnitude 1 and budget 2n - 1; it is a yes-instance
    exactly when the SAT instance is satisfiable.  Empty disjunctions are
    allowed (they produce a dead end); empty conjunctions are rejected, as
    they would need an unconditionally traversable wire.
    """
    n = inst.n
    if n < 1:
        raise ValidationError("need at least one variable class")
    m = max(inst.sizes, default=0)
    offs = [0] * (n + 2)
    for i in range(1, n + 2):
        offs[i] = (2 * m + 1) * (i - 1)
    horizon = offs[n + 1]  # largest offset; dummy windows live below it

    b = _Builder()
    layout: list[int] = []

    def window_dummies(i: int) -> range:
        # early time steps a schedule that is ahead can zip through
        return range(1, offs[i])

    def outside_window(i: int) -> list[int]:
        # every step below the horizon except the gadget's active window
        return list(range(1, offs[i])) + list(range(offs[i + 1], horizon))

    # selection gadgets: pick one variable per class
    sel_anchor = [b.vertex(f"selection {i} anchor") for i in range(1, n + 2)]
    sel_nodes: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(1, n + 1):
        layout.append(sel_anchor[i - 1])
        blocks: list[list[int]] = []
        for a in range(1, inst.sizes[i - 1] + 1):
            v1 = b.vertex(f"selection {i} var {a} node 1")
            v2 = b.vertex(f"selection {i} var {a} node 2")
            sel_nodes[(i, a)] = (v1, v2)
            blocks.append([v1, v2])
            dummies = window_dummies(i)
            b.hop(sel_anchor[i - 1], v1, [offs[i] + a, *dummies])
            b.hop(v1, v2, [offs[i] + a, offs[i + 1] - a, *dummies])
            b.hop(v2, sel_anchor[i], [offs[i] + a, offs[i + 1] - a, offs[i + 1], *dummies])
        layout.extend(_interleave(blocks))
    layout.append(sel_anchor[n])

    # validation gadget: the formula as a series/parallel wiring diagram
    val_end = b.vertex("validation exit")

    def build(phi: Formula, v: int, w: int) -> list[int]:
        if isinstance(phi, Lit):
            i, a = phi.cls, phi.var
            l1 = b.vertex(f"literal {i},{a} node 1")
            l2 = b.vertex(f"literal {i},{a} node 2")
            times = [offs[i] + a, offs[i + 1] - a, *outside_window(i)]
            b.hop(v, l1, times)
            b.hop(l1, l2, times)
            b.hop(l2, w, times)
            return [l1, l2]
        if isinstance(phi, And):
            if not phi.children:
                raise ValidationError(
                    "empty conjunction has no gadget (no always-true wire exists)"
                )
            points = [v]
            for j in range(len(phi.children) - 1):
                points.append(b.vertex(f"and connector {j + 1}"))
            points.append(w)
            ordering: list[int] = []
            for child, (a, c) in zip(phi.children, zip(points, points[1:])):
                ordering.extend(build(child, a, c))
                if c != w:
                    ordering.append(c)
            return ordering
        return _interleave([build(child, v, w) for child in phi.children])

    layout.extend(build(inst.formula, sel_anchor[n], val_end))
    layout.append(val_end)

    # finalization gadgets for classes 2..n, chained after the validation exit
    fin_anchor = [val_end]
    fin_nodes: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(2, n + 1):
        nxt = b.vertex(f"finalization {i} anchor")
        blocks = []
        for a in range(1, inst.sizes[i - 1] + 1):
            v1 = b.vertex(f"finalization {i} var {a} node 1")
            v2 = b.vertex(f"finalization {i} var {a} node 2")
            fin_nodes[(i, a)] = (v1, v2)
            blocks.append([v1, v2])
            times = [offs[i] + a, offs[i + 1] - a, *outside_window(i)]
            b.hop(fin_anchor[-1], v1, times)
            b.hop(v1, v2, times)
            b.hop(v2, nxt, times)
        fin_anchor.append(nxt)
        layout.extend(_interleave(blocks))
        layout.append(nxt)

    graph = build_graph(len(b.labels), b.arcs)
    drp = DRPInstance(graph, s=sel_anchor[0], z=fin_anchor[-1], x=2 * n - 1, delta=1)
    provenance = dict(enumerate(b.labels))
    return GadgetInstance(
        drp=drp,
        layout=tuple(layout),
        provenance=provenance,
        selection_anchors=tuple(sel_anchor),
        selection_nodes=sel_nodes,
        finalization_anchors=tuple(fin_anchor),
        finalization_nodes=fin_nodes,
    )


def verify_layout(inst: GadgetInstance, bound: int) -> bool:
    """True iff every underlying edge spans at most ``bound`` layout slots."""
    n = inst.drp.graph.vertex_count
    if sorted(inst.layout) != list(range(n)):
        raise ValidationError("layout must be a permutation of all vertices")
    pos = {v: k for k, v in enumerate(inst.layout)}
    return all(
        abs(pos[u] - pos[v]) <= bound
        for u, v in underlying_graph(inst.drp.graph).edges
    )
