"""Text formats: chart documents and target tables.

Chart grammar, one record per line::

    %chart 1
    # free comment (``# name: ...`` sets the document name)
    degree <n>
    vertex <id> black|white|crossing|singular
    edge <id> <label> <tail vertex> <head vertex>
    rot <vertex> <edge>:t|h[,<edge>:t|h...]        counterclockwise
    coord <vertex> <x> <y>                           decimal or p/q

The canonical serialization orders records as header, comments, degree,
vertices, edges, rotations and coordinates, each sorted by id, with every
rotation cycled to start at its lexicographically least end.  Ids are
significant: charts equal up to renaming serialize differently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chart import Chart, EdgeEnd, VertexKind, build_chart
from .errors import ChartError, ChartSyntaxError, DuplicateIdError, UnknownKindError
from .realize import TargetCounts

CHART_HEADER = "%chart 1"
TARGETS_HEADER = "%targets 1"


@dataclass(frozen=True)
class ChartDocument:
    chart: Chart
    name: str | None = None
    comments: tuple[str, ...] = field(default=())
    version: int = 1


def format_number(x: Fraction) -> str:
    """Exact decimal when the denominator allows one, ``p/q`` otherwise."""
    x = Fraction(x)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    if x.denominator == 1:
        return str(x.numerator)
    places = max(twos, fives)
    scaled = abs(x.numerator) * (10**places // x.denominator)
    digits = str(scaled).rjust(places + 1, "0")
    text = f"{digits[:-places]}.{digits[-places:]}".rstrip("0")
    return ("-" if x < 0 else "") + text


def canonical_rotation(rotation) -> tuple[EdgeEnd, ...]:
    rot = tuple(rotation)
    if not rot:
        return rot
    k = min(range(len(rot)), key=lambda i: str(rot[i]))
    return rot[k:] + rot[:k]


def serialize_chart(doc: ChartDocument | Chart) -> str:
    if isinstance(doc, Chart):
        doc = ChartDocument(doc)
    c = doc.chart
    lines = [f"%chart {doc.version}"]
    if doc.name is not None:
        lines.append(f"# name: {doc.name}")
    lines.extend(f"# {text}".rstrip() for text in doc.comments)
    lines.append(f"degree {c.degree}")
    lines.extend(f"vertex {v.id} {v.kind.value}" for v in c.vertices)
    lines.extend(f"edge {e.id} {e.label} {e.tail} {e.head}" for e in c.edges)
    lines.extend(f"rot {v.id} {','.join(map(str, canonical_rotation(v.rotation)))}" for v in c.vertices)
    if c.coords is not None:
        lines.extend(f"coord {vid} {format_number(x)} {format_number(y)}" for vid, x, y in c.coords)
    return "\n".join(lines) + "\n"


def _int(tok: str, what: str, n: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ChartSyntaxError(f"{what} must be an integer, got {tok!r}", line=n) from None


def _records(text: str, header: str):
    """(line number, tokens) pairs after the header; comment texts separately."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].rstrip("\r").strip() != header:
        found = lines[0].strip() if lines else ""
        if found.startswith(header.split()[0]) and found != header:
            raise ChartSyntaxError(f"unsupported format version {found!r}", line=1)
        raise ChartSyntaxError(f"expected header {header!r}", line=1)
    records, comments = [], []
    for n, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r").strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append((n, line[1:].strip()))
            continue
        records.append((n, line.split()))
    return records, comments


def parse_chart(text: str) -> ChartDocument:
    """Parse a chart document.  Only structure is checked; call ``validate``
    for the vertex templates and planarity."""
    records, comments = _records(text, CHART_HEADER)
    name = None
    notes = []
    for _, body in comments:
        if body.startswith("name:") and name is None:
            name = body[len("name:"):].strip()
        else:
            notes.append(body)

    degree = None
    vertices, vline = [], {}
    edges, eline = [], {}
    rots, rline = {}, {}
    coords, cline = {}, {}
    for n, tok in records:
        key, args = tok[0], tok[1:]
        if key == "degree":
            if len(args) != 1:
                raise ChartSyntaxError("usage: degree <n>", line=n)
            if degree is not None:
                raise ChartSyntaxError("degree declared twice", line=n)
            degree = _int(args[0], "degree", n)
        elif key == "vertex":
            if len(args) != 2:
                raise ChartSyntaxError("usage: vertex <id> <kind>", line=n)
            vid, kind = args
            try:
                kind = VertexKind(kind)
            except ValueError:
                raise UnknownKindError(f"unknown vertex kind {kind!r}", ident=vid, line=n) from None
            if vid in vline:
                raise DuplicateIdError(f"duplicate vertex id {vid!r}", ident=vid, line=n)
            vline[vid] = n
            vertices.append((vid, kind))
        elif key == "edge":
            if len(args) != 4:
                raise ChartSyntaxError("usage: edge <id> <label> <tail> <head>", line=n)
            eid, label, tail, head = args
            if eid in eline:
                raise DuplicateIdError(f"duplicate edge id {eid!r}", ident=eid, line=n)
            eline[eid] = n
            edges.append((eid, _int(label, "edge label", n), tail, head))
        elif key == "rot":
            if len(args) != 2:
                raise ChartSyntaxError("usage: rot <vertex> <edge>:t|h,...", line=n)
            vid = args[0]
            if vid in rline:
                raise DuplicateIdError(f"second rotation for vertex {vid!r}", ident=vid, line=n)
            try:
                rots[vid] = [EdgeEnd.parse(x) for x in args[1].split(",")]
            except ValueError as exc:
                raise ChartSyntaxError(str(exc), ident=vid, line=n) from None
            rline[vid] = n
        elif key == "coord":
            if len(args) != 3:
                raise ChartSyntaxError("usage: coord <vertex> <x> <y>", line=n)
            vid = args[0]
            if vid in cline:
                raise DuplicateIdError(f"second coordinate for vertex {vid!r}", ident=vid, line=n)
            try:
                coords[vid] = (Fraction(args[1]), Fraction(args[2]))
            except (ValueError, ZeroDivisionError):
                raise ChartSyntaxError(f"bad coordinate {args[1]!r} {args[2]!r}", ident=vid, line=n) from None
            cline[vid] = n
        else:
            raise ChartSyntaxError(f"unknown record {key!r}", line=n)
    if degree is None:
        raise ChartSyntaxError("missing degree line", line=records[-1][0] if records else 1)

    try:
        chart = build_chart(degree, vertices, edges, rots, coords if coords else None)
    except ChartError as exc:
        if exc.line is not None:
            raise
        ident = exc.ident
        line = rline.get(ident) or eline.get(ident) or vline.get(ident) or cline.get(ident)
        raise type(exc)(str(exc), ident=ident, line=line) from None
    return ChartDocument(chart, name, tuple(notes))


def canonicalize(text: str) -> str:
    return serialize_chart(parse_chart(text))


# --- targets ------------------------------------------------------------------------


def parse_targets(text: str) -> TargetCounts:
    records, _ = _records(text, TARGETS_HEADER)
    tables: dict[str, dict[int, list[int]]] = {"B": {}, "T": {}, "D": {}}
    seen = set()
    for n, tok in records:
        if len(tok) != 4 or tok[0] not in tables or tok[2] not in ("+", "-"):
            raise ChartSyntaxError("usage: B|T|D <index> +|- <count>", line=n)
        table, sign = tok[0], tok[2]
        index = _int(tok[1], "index", n)
        count = _int(tok[3], "count", n)
        if count < 0:
            raise ChartSyntaxError("counts must be nonnegative", line=n)
        if (table, index, sign) in seen:
            raise DuplicateIdError(f"{table} {index} {sign} given twice", line=n)
        seen.add((table, index, sign))
        tables[table].setdefault(index, [0, 0])[0 if sign == "+" else 1] = count
    return TargetCounts(*({p: tuple(pm) for p, pm in tables[k].items()} for k in ("B", "T", "D")))


def serialize_targets(t: TargetCounts) -> str:
    lines = [TARGETS_HEADER]
    for name in ("B", "T", "D"):
        for p, (plus, minus) in getattr(t, name).items():
            if plus:
                lines.append(f"{name} {p} + {plus}")
            if minus:
                lines.append(f"{name} {p} - {minus}")
    return "\n".join(lines) + "\n"
