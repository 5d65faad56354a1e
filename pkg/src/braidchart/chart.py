"""Oriented braid charts stored as labelled rotation systems.

A chart is a planar graph whose edges carry braid-generator labels and an
orientation.  Vertices are univalent (black), 6-valent (white), 4-valent
crossings, or 2-valent singular points.  The planar embedding is kept as a
counterclockwise cyclic order of edge ends at every vertex; everything else
(faces, arcs, indices, signs) is derived from that combinatorial data.

Charts are immutable.  Transforms return new charts.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import _accel
from .errors import (
    ArityError,
    ChartError,
    ChartSyntaxError,
    DanglingReferenceError,
    DuplicateIdError,
    EndMismatchError,
    LabelRangeError,
)

ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")

TAIL = "t"
HEAD = "h"


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, text: str) -> "Sign":
        if text in ("+", "+1", "plus"):
            return cls.PLUS
        if text in ("-", "-1", "minus", "−"):
            return cls.MINUS
        raise ValueError(f"not a sign: {text!r}")

    def __neg__(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class VertexKind(str, enum.Enum):
    BLACK = "black"
    WHITE = "white"
    CROSSING = "crossing"
    SINGULAR = "singular"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    VertexKind.BLACK: 1,
    VertexKind.WHITE: 6,
    VertexKind.CROSSING: 4,
    VertexKind.SINGULAR: 2,
}


class EdgeEnd(NamedTuple):
    edge: str
    side: str  # TAIL or HEAD

    def __str__(self) -> str:
        return f"{self.edge}:{self.side}"

    @property
    def incoming(self) -> bool:
        """True when the edge points into the vertex holding this end."""
        return self.side == HEAD

    def flipped(self) -> "EdgeEnd":
        return EdgeEnd(self.edge, HEAD if self.side == TAIL else TAIL)

    @classmethod
    def parse(cls, text: str) -> "EdgeEnd":
        eid, sep, side = text.partition(":")
        if not sep or side not in (TAIL, HEAD) or not ID_RE.match(eid):
            raise ValueError(f"bad edge end {text!r}")
        return cls(eid, side)


@dataclass(frozen=True)
class Edge:
    id: str
    label: int
    tail: str
    head: str


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    rotation: tuple[EdgeEnd, ...]


Coord = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Chart:
    """Use :func:`build_chart` to construct one from raw specs."""

    degree: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    coords: tuple[tuple[str, Fraction, Fraction], ...] | None = None

    @cached_property
    def vertex_map(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def coord_map(self) -> dict[str, Coord] | None:
        if self.coords is None:
            return None
        return {vid: (x, y) for vid, x, y in self.coords}

    def vertex(self, vid: str) -> Vertex:
        return self.vertex_map[vid]

    def edge(self, eid: str) -> Edge:
        return self.edge_map[eid]

    def end_label(self, end: EdgeEnd) -> int:
        return self.edge_map[end.edge].label

    def vertices_of_kind(self, kind: VertexKind) -> list[Vertex]:
        return [v for v in self.vertices if v.kind is kind]

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    # dart arrays: edge k has tail dart 2k and head dart 2k + 1
    @cached_property
    def _dart_index(self) -> dict[EdgeEnd, int]:
        index = {}
        for k, e in enumerate(self.edges):
            index[EdgeEnd(e.id, TAIL)] = 2 * k
            index[EdgeEnd(e.id, HEAD)] = 2 * k + 1
        return index

    @cached_property
    def _darts(self) -> tuple[np.ndarray, np.ndarray]:
        n = 2 * len(self.edges)
        alpha = np.arange(n, dtype=np.int64) ^ 1
        sigma = np.arange(n, dtype=np.int64)
        index = self._dart_index
        for v in self.vertices:
            rot = v.rotation
            m = len(rot)
            for i in range(m):
                sigma[index[rot[i]]] = index[rot[(i + 1) % m]]
        return alpha, sigma

    def dart_end(self, dart: int) -> EdgeEnd:
        e = self.edges[dart >> 1]
        return EdgeEnd(e.id, HEAD if dart & 1 else TAIL)

    @cached_property
    def face_count(self) -> int:
        alpha, sigma = self._darts
        if alpha.size == 0:
            return 0
        labels = _accel.orbit_labels(sigma[alpha])
        return int(labels.max()) + 1

    @cached_property
    def component_count(self) -> int:
        """Connected components; every vertex carries at least one end."""
        alpha, sigma = self._darts
        if alpha.size == 0:
            return len(self.vertices)
        labels = _accel.component_labels(alpha, sigma)
        return int(labels.max()) + 1

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.face_count

    @property
    def is_sphere_planar(self) -> bool:
        """Every connected component has V - E + F = 2."""
        return self.euler_characteristic == 2 * self.component_count

    def __repr__(self) -> str:
        return f"Chart(degree={self.degree}, V={self.num_vertices}, E={self.num_edges})"


def _as_end(item) -> EdgeEnd:
    if isinstance(item, EdgeEnd):
        return item
    if isinstance(item, str):
        return EdgeEnd.parse(item)
    eid, side = item
    return EdgeEnd(str(eid), str(side))


def _check_id(ident: str, what: str) -> None:
    if not isinstance(ident, str) or not ID_RE.match(ident):
        raise ChartSyntaxError(f"invalid {what} identifier {ident!r}", ident=str(ident))


def build_chart(
    degree: int,
    vertices: Iterable,
    edges: Iterable,
    rotations: Mapping | Iterable,
    coords: Mapping | None = None,
) -> Chart:
    """Assemble a chart from raw specs, resolving every reference.

    ``vertices`` holds ``(id, kind)`` pairs, ``edges`` holds
    ``(id, label, tail, head)`` tuples and ``rotations`` maps a vertex id to
    its counterclockwise ends, each given as an :class:`EdgeEnd`, an
    ``(edge, side)`` pair or an ``"edge:t"`` string.  Template and planarity
    rules are left to :func:`validate`.
    """
    if not isinstance(degree, int) or degree < 1:
        raise ChartError(f"degree must be a positive integer, got {degree!r}")

    vmap: dict[str, VertexKind] = {}
    for vid, kind in vertices:
        _check_id(vid, "vertex")
        if vid in vmap:
            raise DuplicateIdError(f"duplicate vertex id {vid!r}", ident=vid)
        vmap[vid] = VertexKind(kind)

    emap: dict[str, Edge] = {}
    for eid, label, tail, head in edges:
        _check_id(eid, "edge")
        if eid in emap:
            raise DuplicateIdError(f"duplicate edge id {eid!r}", ident=eid)
        for vid in (tail, head):
            if vid not in vmap:
                raise DanglingReferenceError(
                    f"edge {eid!r} references undeclared vertex {vid!r}", ident=eid
                )
        if isinstance(label, bool) or not isinstance(label, int):
            raise ChartError(f"edge {eid!r} label must be an integer", ident=eid)
        emap[eid] = Edge(eid, label, tail, head)

    rot_items = rotations.items() if isinstance(rotations, Mapping) else rotations
    rmap: dict[str, tuple[EdgeEnd, ...]] = {}
    for vid, ends in rot_items:
        if vid not in vmap:
            raise DanglingReferenceError(f"rotation for undeclared vertex {vid!r}", ident=vid)
        if vid in rmap:
            raise DuplicateIdError(f"second rotation for vertex {vid!r}", ident=vid)
        rmap[vid] = tuple(_as_end(x) for x in ends)

    seen: set[EdgeEnd] = set()
    for vid, kind in vmap.items():
        rot = rmap.get(vid, ())
        if len(rot) != kind.arity:
            raise ArityError(
                f"{kind.value} vertex {vid!r} needs {kind.arity} ends, rotation has {len(rot)}",
                ident=vid,
            )
        for end in rot:
            edge = emap.get(end.edge)
            if edge is None:
                raise DanglingReferenceError(
                    f"rotation of {vid!r} references undeclared edge {end.edge!r}", ident=vid
                )
            owner = edge.tail if end.side == TAIL else edge.head
            if owner != vid:
                raise EndMismatchError(f"end {end} belongs to vertex {owner!r}, not {vid!r}", ident=vid)
            if end in seen:
                raise EndMismatchError(f"end {end} listed twice", ident=vid)
            seen.add(end)
    for e in emap.values():
        for side in (TAIL, HEAD):
            if EdgeEnd(e.id, side) not in seen:
                raise EndMismatchError(f"end {e.id}:{side} is missing from every rotation", ident=e.id)

    coord_tuple = None
    if coords is not None:
        items = []
        for vid, (x, y) in coords.items():
            if vid not in vmap:
                raise DanglingReferenceError(f"coordinate for undeclared vertex {vid!r}", ident=vid)
            items.append((vid, Fraction(x), Fraction(y)))
        coord_tuple = tuple(sorted(items))

    vertex_tuple = tuple(Vertex(vid, vmap[vid], rmap[vid]) for vid in sorted(vmap))
    edge_tuple = tuple(emap[eid] for eid in sorted(emap))
    return Chart(degree, vertex_tuple, edge_tuple, coord_tuple)


# --- validation -----------------------------------------------------------------


class Violation(NamedTuple):
    ident: str
    rule: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok


def _cyclic_block(flags: list[bool], size: int) -> int | None:
    """Start of the unique cyclic run of ``size`` True flags, if the True flags form one."""
    n = len(flags)
    if sum(flags) != size:
        return None
    for s in range(n):
        if all(flags[(s + i) % n] for i in range(size)):
            return s
    return None


def white_template_error(labels: list[int], incoming: list[bool]) -> str | None:
    if _cyclic_block(incoming, 3) is None:
        return "incoming ends are not three cyclically consecutive ends"
    lo = min(labels)
    if set(labels) != {lo, lo + 1}:
        return f"labels {labels} are not two consecutive integers"
    if any(labels[i] == labels[(i + 1) % 6] for i in range(6)):
        return f"labels {labels} do not alternate around the vertex"
    return None


def validate(chart: Chart) -> ValidationReport:
    out: list[Violation] = []
    emap = chart.edge_map
    n = chart.degree

    for e in chart.edges:
        if not 1 <= e.label <= n - 1:
            out.append(Violation(e.id, "label range", f"label {e.label} outside [1, {n - 1}]"))

    counts: dict[EdgeEnd, int] = {}
    for v in chart.vertices:
        if len(v.rotation) != v.kind.arity:
            out.append(Violation(v.id, "arity", f"{len(v.rotation)} ends, {v.kind.arity} required"))
            continue
        for end in v.rotation:
            counts[end] = counts.get(end, 0) + 1
            e = emap.get(end.edge)
            if e is None or (e.tail if end.side == TAIL else e.head) != v.id:
                out.append(Violation(v.id, "end coverage", f"end {end} is not attached here"))
        labels = [emap[x.edge].label for x in v.rotation if x.edge in emap]
        if len(labels) != len(v.rotation):
            continue
        incoming = [x.incoming for x in v.rotation]
        if v.kind is VertexKind.WHITE:
            msg = white_template_error(labels, incoming)
            if msg:
                out.append(Violation(v.id, "white template", msg))
        elif v.kind is VertexKind.CROSSING:
            if labels[0] != labels[2] or labels[1] != labels[3]:
                out.append(Violation(v.id, "crossing template", f"opposite labels differ: {labels}"))
            elif abs(labels[0] - labels[1]) < 2:
                out.append(Violation(v.id, "|i−j| ≥ 2", f"labels {labels[0]} and {labels[1]} cannot cross"))
            if incoming[0] == incoming[2] or incoming[1] == incoming[3]:
                out.append(Violation(v.id, "crossing template", "a strand does not pass straight through"))
        elif v.kind is VertexKind.SINGULAR:
            if labels[0] != labels[1]:
                out.append(Violation(v.id, "singular template", f"labels differ: {labels}"))
            if incoming[0] != incoming[1]:
                out.append(Violation(v.id, "singular template", "one end incoming, one outgoing"))
            if v.rotation[0].edge == v.rotation[1].edge:
                out.append(Violation(v.id, "self-loop", "singular vertex with a self-loop"))

    for e in chart.edges:
        for side in (TAIL, HEAD):
            c = counts.get(EdgeEnd(e.id, side), 0)
            if c != 1:
                out.append(Violation(e.id, "end coverage", f"end {e.id}:{side} appears {c} times"))

    if not any(v.rule in ("arity", "end coverage") for v in out) and not chart.is_sphere_planar:
        out.append(
            Violation(
                "",
                "planarity",
                f"V - E + F = {chart.euler_characteristic} with {chart.component_count} "
                "component(s); not every component is a sphere",
            )
        )
    return ValidationReport(tuple(out))


# --- faces ----------------------------------------------------------------------


def trace_faces(chart: Chart) -> list[tuple[EdgeEnd, ...]]:
    """Faces of the rotation system as cyclic sequences of departing edge ends.

    The successor of a dart is the counterclockwise-next end at the vertex the
    dart arrives at, so every dart lies on exactly one face.
    """
    alpha, sigma = chart._darts
    phi = sigma[alpha]
    n = phi.shape[0]
    seen = np.zeros(n, dtype=bool)
    faces = []
    for start in range(n):
        if seen[start]:
            continue
        face = []
        h = start
        while not seen[h]:
            seen[h] = True
            face.append(chart.dart_end(h))
            h = int(phi[h])
        faces.append(tuple(face))
    return faces


# --- transforms -----------------------------------------------------------------


def translate_labels(chart: Chart, shift: int, degree: int | None = None) -> Chart:
    degree = chart.degree if degree is None else degree
    edges = []
    for e in chart.edges:
        label = e.label + shift
        if not 1 <= label <= degree - 1:
            raise LabelRangeError(
                f"edge {e.id!r}: label {e.label} shifted by {shift} leaves [1, {degree - 1}]",
                ident=e.id,
            )
        edges.append(Edge(e.id, label, e.tail, e.head))
    return Chart(degree, chart.vertices, tuple(edges), chart.coords)


def reverse_orientation(chart: Chart) -> Chart:
    edges = tuple(Edge(e.id, e.label, e.head, e.tail) for e in chart.edges)
    vertices = tuple(
        Vertex(v.id, v.kind, tuple(x.flipped() for x in v.rotation)) for v in chart.vertices
    )
    return Chart(chart.degree, vertices, edges, chart.coords)


def with_coords(chart: Chart, coords: Mapping[str, tuple] | None) -> Chart:
    if coords is None:
        return Chart(chart.degree, chart.vertices, chart.edges, None)
    items = tuple(sorted((vid, Fraction(x), Fraction(y)) for vid, (x, y) in coords.items()))
    return Chart(chart.degree, chart.vertices, chart.edges, items)


def rename(chart: Chart, prefix: str) -> Chart:
    """Prefix every vertex and edge id."""
    _check_id(prefix + "x", "prefix")
    edges = tuple(Edge(prefix + e.id, e.label, prefix + e.tail, prefix + e.head) for e in chart.edges)
    vertices = tuple(
        Vertex(prefix + v.id, v.kind, tuple(EdgeEnd(prefix + x.edge, x.side) for x in v.rotation))
        for v in chart.vertices
    )
    coords = None
    if chart.coords is not None:
        coords = tuple((prefix + vid, x, y) for vid, x, y in chart.coords)
    return Chart(chart.degree, vertices, edges, coords)


def disjoint_union(charts: Iterable[Chart], degree: int | None = None, prefixes: Iterable[str] | None = None) -> Chart:
    """Union of charts drawn side by side; ids are prefixed ``g0_``, ``g1_``, ... by default."""
    charts = list(charts)
    if prefixes is None:
        prefixes = [f"g{i}_" for i in range(len(charts))]
    prefixes = list(prefixes)
    if degree is None:
        degree = max((c.degree for c in charts), default=1)
    vertices: list[Vertex] = []
    edges: list[Edge] = []
    for c, pre in zip(charts, prefixes):
        r = rename(c, pre) if pre else c
        vertices.extend(r.vertices)
        edges.extend(r.edges)
    if len({v.id for v in vertices}) != len(vertices) or len({e.id for e in edges}) != len(edges):
        raise DuplicateIdError("disjoint union produced clashing ids")
    vertices.sort(key=lambda v: v.id)
    edges.sort(key=lambda e: e.id)
    return Chart(degree, tuple(vertices), tuple(edges), None)


class ChartBuilder:
    """Mutable working copy of a chart for multi-step surgery.

    Only the local operations used by the generator and the realizer live
    here; :meth:`freeze` returns an immutable :class:`Chart`.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.kinds: dict[str, VertexKind] = {}
        self.rot: dict[str, list[EdgeEnd]] = {}
        self.edges: dict[str, list] = {}  # id -> [label, tail, head]

    @classmethod
    def from_chart(cls, chart: Chart) -> "ChartBuilder":
        b = cls(chart.degree)
        for v in chart.vertices:
            b.kinds[v.id] = v.kind
            b.rot[v.id] = list(v.rotation)
        for e in chart.edges:
            b.edges[e.id] = [e.label, e.tail, e.head]
        return b

    def add_chart(self, chart: Chart, prefix: str = "") -> None:
        src = rename(chart, prefix) if prefix else chart
        for v in src.vertices:
            if v.id in self.kinds:
                raise DuplicateIdError(f"duplicate vertex id {v.id!r}", ident=v.id)
            self.kinds[v.id] = v.kind
            self.rot[v.id] = list(v.rotation)
        for e in src.edges:
            if e.id in self.edges:
                raise DuplicateIdError(f"duplicate edge id {e.id!r}", ident=e.id)
            self.edges[e.id] = [e.label, e.tail, e.head]

    def _replace_end(self, vid: str, old: EdgeEnd, new: EdgeEnd) -> None:
        rot = self.rot[vid]
        rot[rot.index(old)] = new

    def fuse_blacks(self, bp: str, bm: str) -> str:
        """Remove a positive and a negative black and join their edges into one.

        The surviving edge keeps the id of the negative black's edge and runs
        from that edge's tail to the head of the positive black's edge.
        """
        (e1_end,) = self.rot[bp]
        (e2_end,) = self.rot[bm]
        e1, e2 = e1_end.edge, e2_end.edge
        if e1 == e2:
            raise ChartError("blacks share one edge; fusing would leave a vertex-free loop", ident=bp)
        _, _, u = self.edges[e1]
        self._replace_end(u, EdgeEnd(e1, HEAD), EdgeEnd(e2, HEAD))
        self.edges[e2][2] = u
        del self.edges[e1]
        for vid in (bp, bm):
            del self.kinds[vid]
            del self.rot[vid]
        return e2

    def swap_heads(self, e1: str, e2: str) -> None:
        """Exchange the heads of two edges, keeping each end's rotation slot."""
        h1, h2 = self.edges[e1][2], self.edges[e2][2]
        r1, r2 = self.rot[h1], self.rot[h2]
        i1 = r1.index(EdgeEnd(e1, HEAD))
        i2 = r2.index(EdgeEnd(e2, HEAD))
        r1[i1] = EdgeEnd(e2, HEAD)
        r2[i2] = EdgeEnd(e1, HEAD)
        self.edges[e1][2], self.edges[e2][2] = h2, h1

    def freeze(self, coords: Mapping | None = None) -> Chart:
        vertices = tuple(Vertex(vid, self.kinds[vid], tuple(self.rot[vid])) for vid in sorted(self.kinds))
        edges = tuple(Edge(eid, *self.edges[eid]) for eid in sorted(self.edges))
        chart = Chart(self.degree, vertices, edges, None)
        return with_coords(chart, coords) if coords is not None else chart
