"""Alexander numbering of the regions of an oriented classical link diagram.

Diagrams are read in PD form: one ``X a b c d`` line per crossing listing
the four incident arcs counterclockwise, starting from the incoming
under-arc.  ``A k [ccw|cw]`` declares a crossing-free round component, and
``outer k left|right`` names the unbounded region as the face on that side
of arc ``k`` (a PD code alone fixes the diagram only up to the choice of
unbounded face on the sphere).  ``in a i`` states that arc ``a`` enters the
``i``-th crossing line (counting from 1); it is only needed for a component
that never passes under anything, whose direction the crossings cannot
reveal.

Numbers grow by one across an arc from right to left of its direction of
travel, so each region's number is the winding number of the diagram
around it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PDError

LEFT, RIGHT = "L", "R"


@dataclass(frozen=True)
class PDDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    circles: tuple[tuple[int, bool], ...] = ()  # (arc, counterclockwise)
    outer: tuple[tuple[int, str], ...] = ()  # (arc, LEFT | RIGHT)
    over_in: tuple[int, ...] = ()  # slot (1 or 3) of the incoming over-arc per crossing
    entries: tuple[tuple[int, int], ...] = ()  # (arc, 1-based crossing it enters) hints

    @property
    def arcs(self) -> list[int]:
        found = {a for x in self.crossings for a in x} | {a for a, _ in self.circles}
        return sorted(found)

    def to_text(self) -> str:
        lines = [f"X {a} {b} {c} {d}" for a, b, c, d in self.crossings]
        lines += [f"A {k} {'ccw' if ccw else 'cw'}" for k, ccw in self.circles]
        lines += [f"outer {k} {'left' if s == LEFT else 'right'}" for k, s in self.outer]
        lines += [f"in {a} {i}" for a, i in self.entries]
        return "\n".join(lines) + "\n"


def _over_orientation(crossings, err_line, entries=()) -> tuple[int, ...]:
    """Direction of every over-strand, propagated along arcs.

    Each arc has exactly one incoming and one outgoing end.  Under-strand
    slots are fixed by the PD convention; over-strand slots follow from the
    arcs they share with already oriented slots.  A component that never
    passes under anything is anchored by ``in`` hints, or failing those is
    oriented along increasing arc numbers.
    """
    where: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        for s, a in enumerate(x):
            where.setdefault(a, []).append((i, s))
    state: dict[tuple[int, int], bool] = {}  # slot -> incoming?

    def setslot(slot, inc):
        old = state.get(slot)
        if old is None:
            state[slot] = inc
            return True
        if old != inc:
            raise PDError(f"inconsistent orientation at crossing {slot[0] + 1}", line=err_line(slot[0]))
        return False

    queue = deque()
    for i in range(len(crossings)):
        for s, inc in ((0, True), (2, False)):
            setslot((i, s), inc)
            queue.append((i, s))

    def drain():
        while queue:
            i, s = queue.popleft()
            inc = state[(i, s)]
            a = crossings[i][s]
            ends = where[a]
            other = ends[1] if ends[0] == (i, s) else ends[0]
            if setslot(other, not inc):
                queue.append(other)
            if s in (1, 3):
                opp = (i, 4 - s)
                if setslot(opp, not inc):
                    queue.append(opp)

    for a, i in entries:
        if not 1 <= i <= len(crossings) or a not in crossings[i - 1]:
            raise PDError(f"arc {a} does not meet crossing {i}")
        slots = [k for k, b in enumerate(crossings[i - 1]) if b == a]
        if len(slots) == 2:
            # an arc returning to its own crossing enters at the slot that is not
            # the outgoing under-slot
            slots = [k for k in slots if k != 2][:1]
        slot = (i - 1, slots[0])
        setslot(slot, True)
        queue.append(slot)
    drain()
    for i, (_, j, _, l) in enumerate(crossings):
        if (i, 1) in state:
            continue
        if l == j + 1:
            j_in = True
        elif j == l + 1:
            j_in = False
        else:
            j_in = j > l  # wrap-around from the last arc back to the first
        setslot((i, 1), j_in)
        queue.append((i, 1))
        drain()
    return tuple(1 if state[(i, 1)] else 3 for i in range(len(crossings)))


def parse_pd(text: str) -> PDDiagram:
    crossings = []
    xlines = []
    circles = []
    outer = []
    entries = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "X" and len(tok) == 5:
                crossings.append(tuple(int(t) for t in tok[1:]))
                xlines.append(n)
            elif tok[0] == "A" and len(tok) in (2, 3):
                if len(tok) == 3 and tok[2] not in ("ccw", "cw"):
                    raise PDError(f"circle orientation must be ccw or cw, got {tok[2]!r}", line=n)
                circles.append((int(tok[1]), len(tok) == 2 or tok[2] == "ccw"))
            elif tok[0] == "in" and len(tok) == 3:
                entries.append((int(tok[1]), int(tok[2])))
            elif tok[0] == "outer" and len(tok) == 3 and tok[2] in ("left", "right"):
                outer.append((int(tok[1]), LEFT if tok[2] == "left" else RIGHT))
            else:
                raise PDError(f"malformed line {raw.strip()!r}", line=n)
        except ValueError:
            raise PDError(f"arc labels must be integers in {raw.strip()!r}", line=n) from None

    uses: dict[int, int] = {}
    for x in crossings:
        for a in x:
            uses[a] = uses.get(a, 0) + 1
    for a, k in sorted(uses.items()):
        if k != 2:
            raise PDError(f"arc {a} is used {k} times; every arc needs exactly 2 ends")
    seen = set()
    for a, _ in circles:
        if a in uses or a in seen:
            raise PDError(f"circle arc {a} is used elsewhere")
        seen.add(a)
    known = set(uses) | seen
    for a, _ in outer:
        if a not in known:
            raise PDError(f"outer face names unknown arc {a}")
    over_in = _over_orientation(crossings, lambda i: xlines[i], entries)
    return PDDiagram(tuple(crossings), tuple(circles), tuple(outer), over_in, tuple(entries))


def reverse_pd(pd: PDDiagram) -> PDDiagram:
    """Same diagram with every component traversed the other way.

    The unbounded face is pinned explicitly so the reversal does not depend
    on the default face choice.
    """
    crossings = tuple((c, d, a, b) for a, b, c, d in pd.crossings)
    circles = tuple((k, not ccw) for k, ccw in pd.circles)
    numbering = alexander_number(pd)
    outer = tuple((k, RIGHT if s == LEFT else LEFT) for k, s in numbering.outer_sides)
    # the incoming over slot keeps its position under the rotation above
    # an arc entering crossing i now leaves it and enters its other crossing
    entries = []
    for a, i in pd.entries:
        other = [j for j, x in enumerate(pd.crossings, start=1) if a in x and (j != i or x.count(a) == 2)]
        entries.append((a, other[0]))
    return PDDiagram(crossings, circles, outer, pd.over_in, tuple(entries))


# --- faces --------------------------------------------------------------------------


def _arc_ends(pd: PDDiagram):
    """For every arc in a crossing, its (tail slot, head slot)."""
    tails, heads = {}, {}
    for i, x in enumerate(pd.crossings):
        incoming = {0, pd.over_in[i]}
        for s, a in enumerate(x):
            (heads if s in incoming else tails)[a] = (i, s)
    return tails, heads


def trace_regions(pd: PDDiagram) -> list[tuple[tuple[int, str], ...]]:
    """Faces of each crossing component as cyclic (arc, side) sequences."""
    tails, heads = _arc_ends(pd)
    darts = []
    for a in tails:
        darts.append((a, True))
        darts.append((a, False))
    seen = set()
    faces = []
    for start in sorted(darts):
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            a, forward = d
            face.append((a, RIGHT if forward else LEFT))
            i, s = heads[a] if forward else tails[a]
            t = (s + 1) % 4
            b = pd.crossings[i][t]
            d = (b, tails[b] == (i, t))
        faces.append(tuple(face))
    return faces


def _crossing_components(pd: PDDiagram) -> list[set[int]]:
    parent = list(range(len(pd.crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    tails, heads = _arc_ends(pd)
    for a in tails:
        parent[find(tails[a][0])] = find(heads[a][0])
    comps: dict[int, set[int]] = {}
    for i in range(len(pd.crossings)):
        comps.setdefault(find(i), set()).add(i)
    return list(comps.values())


@dataclass(frozen=True)
class RegionNumbering:
    regions: tuple[tuple[str, ...], ...]
    number: tuple[int, ...]
    unbounded: int
    outer_sides: tuple[tuple[int, str], ...] = ()

    def region_of(self, arc: int, side: str) -> int:
        key = f"{arc}{side}"
        for i, r in enumerate(self.regions):
            if key in r:
                return i
        raise KeyError(key)

    def as_dict(self) -> dict[str, int]:
        return {" ".join(r): n for r, n in zip(self.regions, self.number)}


def _default_outer(faces):
    def key(face):
        low = min(face)
        return (len(face), low[1] == RIGHT, -low[0])

    return max(faces, key=key)


def alexander_number(pd: PDDiagram) -> RegionNumbering:
    faces = trace_regions(pd)
    side_face = {fs: k for k, f in enumerate(faces) for fs in f}
    explicit = {}
    for a, s in pd.outer:
        if (a, s) in side_face:
            explicit[side_face[(a, s)]] = True

    outer_ids = set()
    tails, _ = _arc_ends(pd)
    for comp in _crossing_components(pd):
        mine = [k for k, f in enumerate(faces) if tails[f[0][0]][0] in comp]
        chosen = [k for k in mine if k in explicit]
        if len(chosen) > 1:
            raise PDError("more than one unbounded face named for one component")
        outer_ids.add(chosen[0] if chosen else faces.index(_default_outer([faces[k] for k in mine])))

    sides_outer: list[str] = []
    regions: list[tuple[str, ...]] = []
    rid: dict[tuple[int, str], int] = {}
    regions.append(())  # unbounded region first
    outer_sides = []
    for k, f in enumerate(faces):
        names = tuple(f"{a}{s}" for a, s in f)
        if k in outer_ids:
            sides_outer.extend(names)
            outer_sides.append(min(f))
            for fs in f:
                rid[fs] = 0
        else:
            for fs in f:
                rid[fs] = len(regions)
            regions.append(names)
    for a, ccw in pd.circles:
        inside, outside = (LEFT, RIGHT) if ccw else (RIGHT, LEFT)
        sides_outer.append(f"{a}{outside}")
        rid[(a, outside)] = 0
        rid[(a, inside)] = len(regions)
        regions.append((f"{a}{inside}",))
    for a, s in pd.outer:
        if any(a == c for c, _ in pd.circles) and rid[(a, s)] != 0:
            raise PDError(f"the unbounded face cannot lie inside circle {a}")
    regions[0] = tuple(sides_outer)

    # propagate: left of every arc = right + 1
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(regions))}
    for a in pd.arcs:
        left, right = rid[(a, LEFT)], rid[(a, RIGHT)]
        adj[right].append((left, 1))
        adj[left].append((right, -1))
    number: dict[int, int] = {0: 0}
    queue = deque([0])
    while queue:
        r = queue.popleft()
        for s, delta in adj[r]:
            want = number[r] + delta
            if s not in number:
                number[s] = want
                queue.append(s)
            elif number[s] != want:
                raise PDError("no consistent numbering; the PD code is not a plane diagram")
    if len(number) != len(regions):  # pragma: no cover - every face touches an arc
        raise PDError("some region is not reachable from the unbounded one")
    return RegionNumbering(
        tuple(regions), tuple(number[i] for i in range(len(regions))), 0, tuple(sorted(outer_sides))
    )


def verify_numbering(pd: PDDiagram, numbering: RegionNumbering) -> bool:
    if numbering.number[numbering.unbounded] != 0:
        return False
    try:
        for a in pd.arcs:
            left = numbering.region_of(a, LEFT)
            right = numbering.region_of(a, RIGHT)
            if numbering.number[left] - numbering.number[right] != 1:
                return False
    except KeyError:
        return False
    return True
