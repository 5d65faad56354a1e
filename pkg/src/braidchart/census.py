"""Indices and signs of chart vertices, double-arc tracing, and count tables.

Labels are used directly as indices: in braid form the Alexander number of a
branch, double or triple point equals the braid index read off the chart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple

from .chart import HEAD, TAIL, Chart, EdgeEnd, Sign, Vertex, VertexKind
from .errors import NoIndexError

PlusMinus = tuple[int, int]


def _vertex(chart: Chart, v: str | Vertex) -> Vertex:
    return v if isinstance(v, Vertex) else chart.vertex(v)


def vertex_index(chart: Chart, v: str | Vertex) -> int:
    """Braid index: the label at a black or singular vertex, the larger label at a white one."""
    vert = _vertex(chart, v)
    if vert.kind is VertexKind.CROSSING:
        raise NoIndexError(f"no index for crossing vertex {vert.id!r}", ident=vert.id)
    labels = [chart.end_label(x) for x in vert.rotation]
    return max(labels)


def middle_incoming(chart: Chart, v: str | Vertex) -> EdgeEnd:
    """The incoming end of a white vertex whose two cyclic neighbours are incoming."""
    vert = _vertex(chart, v)
    rot = vert.rotation
    n = len(rot)
    for i, end in enumerate(rot):
        if end.incoming and rot[i - 1].incoming and rot[(i + 1) % n].incoming:
            return end
    raise NoIndexError(f"white vertex {vert.id!r} has no middle incoming end", ident=vert.id)


def vertex_sign(chart: Chart, v: str | Vertex) -> Sign:
    vert = _vertex(chart, v)
    kind = vert.kind
    if kind is VertexKind.BLACK:
        # the double arc leaves a positive branch point
        return Sign.PLUS if vert.rotation[0].side == TAIL else Sign.MINUS
    if kind is VertexKind.WHITE:
        mid = middle_incoming(chart, vert)
        return Sign.PLUS if chart.end_label(mid) == vertex_index(chart, vert) else Sign.MINUS
    if kind is VertexKind.SINGULAR:
        return Sign.MINUS if vert.rotation[0].side == HEAD else Sign.PLUS
    raise NoIndexError(f"no sign for crossing vertex {vert.id!r}", ident=vert.id)


class ArcEnd(NamedTuple):
    vertex: str
    end: EdgeEnd


@dataclass(frozen=True)
class Arc:
    label: int
    edges: tuple[str, ...]
    kind: str  # "chain" or "loop"
    start: ArcEnd | None = None
    end: ArcEnd | None = None


def trace_arcs(chart: Chart) -> list[Arc]:
    """Split the edges into double arcs that run straight through crossings."""
    emap = chart.edge_map
    vmap = chart.vertex_map
    used: set[str] = set()
    arcs: list[Arc] = []

    def through(end: EdgeEnd) -> EdgeEnd:
        # end is the head end of an edge arriving at a crossing
        rot = vmap[emap[end.edge].head].rotation
        return rot[(rot.index(end) + 2) % 4]

    for v in chart.vertices:
        if v.kind is VertexKind.CROSSING:
            continue
        for start in v.rotation:
            if start.side != TAIL:
                continue
            path = []
            eid = start.edge
            while True:
                path.append(eid)
                used.add(eid)
                e = emap[eid]
                if vmap[e.head].kind is not VertexKind.CROSSING:
                    break
                eid = through(EdgeEnd(eid, HEAD)).edge
            last = emap[path[-1]]
            arcs.append(
                Arc(
                    emap[start.edge].label,
                    tuple(path),
                    "chain",
                    ArcEnd(v.id, start),
                    ArcEnd(last.head, EdgeEnd(last.id, HEAD)),
                )
            )

    for e in chart.edges:
        if e.id in used:
            continue
        path = []
        eid = e.id
        while eid not in used:
            path.append(eid)
            used.add(eid)
            eid = through(EdgeEnd(eid, HEAD)).edge
        arcs.append(Arc(e.label, tuple(path), "loop"))
    return arcs


def _clean(table: Mapping[int, PlusMinus]) -> dict[int, PlusMinus]:
    return {p: (int(a), int(b)) for p, (a, b) in sorted(table.items()) if a or b}


def _clean_int(table: Mapping[int, int]) -> dict[int, int]:
    return {p: int(c) for p, c in sorted(table.items()) if c}


@dataclass(frozen=True)
class Census:
    """Exact count tables keyed by index; absent keys mean zero.

    ``B``, ``T`` and ``D`` map an index to ``(plus count, minus count)`` for
    branch points, triple points and singular points.  ``E`` counts double
    arcs with endpoints and ``L`` closed double curves, per label.
    """

    B: dict[int, PlusMinus] = field(default_factory=dict)
    T: dict[int, PlusMinus] = field(default_factory=dict)
    D: dict[int, PlusMinus] = field(default_factory=dict)
    E: dict[int, int] = field(default_factory=dict)
    L: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("B", "T", "D"):
            object.__setattr__(self, name, _clean(getattr(self, name)))
        for name in ("E", "L"):
            object.__setattr__(self, name, _clean_int(getattr(self, name)))

    def count(self, table: str, p: int, sign: Sign | int) -> int:
        plus, minus = getattr(self, table).get(p, (0, 0))
        return plus if Sign(sign) is Sign.PLUS else minus

    def diff(self, table: str, p: int) -> int:
        plus, minus = getattr(self, table).get(p, (0, 0))
        return plus - minus

    def support(self) -> list[int]:
        """Indices carrying a nonzero B, T or D count."""
        return sorted(set(self.B) | set(self.T) | set(self.D))

    def signed_items(self, table: str) -> Iterator[tuple[int, int, int]]:
        """(index, sign, count) triples with nonzero count."""
        for p, (plus, minus) in getattr(self, table).items():
            if plus:
                yield p, 1, plus
            if minus:
                yield p, -1, minus

    def shifted(self, k: int) -> "Census":
        return Census(
            {p + k: c for p, c in self.B.items()},
            {p + k: c for p, c in self.T.items()},
            {p + k: c for p, c in self.D.items()},
            {p + k: c for p, c in self.E.items()},
            {p + k: c for p, c in self.L.items()},
        )

    def sign_swapped(self) -> "Census":
        swap = lambda t: {p: (m, pl) for p, (pl, m) in t.items()}  # noqa: E731
        return Census(swap(self.B), swap(self.T), swap(self.D), dict(self.E), dict(self.L))

    def __add__(self, other: "Census") -> "Census":
        def add_pm(x, y):
            out = dict(x)
            for p, (a, b) in y.items():
                c = out.get(p, (0, 0))
                out[p] = (c[0] + a, c[1] + b)
            return out

        def add_int(x, y):
            out = dict(x)
            for p, c in y.items():
                out[p] = out.get(p, 0) + c
            return out

        return Census(
            add_pm(self.B, other.B),
            add_pm(self.T, other.T),
            add_pm(self.D, other.D),
            add_int(self.E, other.E),
            add_int(self.L, other.L),
        )

    def points(self) -> "Census":
        """Only the B, T, D tables."""
        return Census(self.B, self.T, self.D)

    def as_dict(self) -> dict:
        pm = lambda t: {str(p): [a, b] for p, (a, b) in t.items()}  # noqa: E731
        return {
            "B": pm(self.B),
            "T": pm(self.T),
            "D": pm(self.D),
            "E": {str(p): c for p, c in self.E.items()},
            "L": {str(p): c for p, c in self.L.items()},
        }


def census(chart: Chart) -> Census:
    tables: dict[VertexKind, dict[int, list[int]]] = {
        VertexKind.BLACK: {},
        VertexKind.WHITE: {},
        VertexKind.SINGULAR: {},
    }
    for v in chart.vertices:
        if v.kind is VertexKind.CROSSING:
            continue
        p = vertex_index(chart, v)
        slot = tables[v.kind].setdefault(p, [0, 0])
        slot[0 if vertex_sign(chart, v) is Sign.PLUS else 1] += 1
    E: dict[int, int] = {}
    L: dict[int, int] = {}
    for arc in trace_arcs(chart):
        tab = E if arc.kind == "chain" else L
        tab[arc.label] = tab.get(arc.label, 0) + 1
    as_pm = lambda t: {p: (a, b) for p, (a, b) in t.items()}  # noqa: E731
    return Census(
        as_pm(tables[VertexKind.BLACK]),
        as_pm(tables[VertexKind.WHITE]),
        as_pm(tables[VertexKind.SINGULAR]),
        E,
        L,
    )


def edge_count_starts(c: Census, p: int) -> int:
    """Double arcs of index p counted at their starting points."""
    B = lambda q, s: c.count("B", q, s)  # noqa: E731
    T = lambda q, s: c.count("T", q, s)  # noqa: E731
    D = lambda q, s: c.count("D", q, s)  # noqa: E731
    return B(p, 1) + 2 * T(p, 1) + T(p, -1) + T(p + 1, 1) + 2 * T(p + 1, -1) + 2 * D(p, 1)


def edge_count_ends(c: Census, p: int) -> int:
    """Double arcs of index p counted at their terminal points."""
    B = lambda q, s: c.count("B", q, s)  # noqa: E731
    T = lambda q, s: c.count("T", q, s)  # noqa: E731
    D = lambda q, s: c.count("D", q, s)  # noqa: E731
    return B(p, -1) + 2 * T(p, -1) + T(p, 1) + T(p + 1, -1) + 2 * T(p + 1, 1) + 2 * D(p, -1)


def check_edge_count(c: Census) -> bool:
    return all(edge_count_by_index(c).values())


def edge_count_by_index(c: Census) -> dict[int, bool]:
    support = set(c.support()) | set(c.E)
    if not support:
        return {}
    lo, hi = min(support) - 1, max(support)
    return {
        p: c.E.get(p, 0) == edge_count_starts(c, p) == edge_count_ends(c, p)
        for p in range(lo, hi + 1)
    }
