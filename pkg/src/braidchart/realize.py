"""Synthesis of charts with prescribed branch, triple and singular point counts.

The construction works on pendant black vertices.  Every white and singular
vertex the target asks for is first instantiated as a small gadget whose free
ends are capped by blacks; oppositely signed same-label blacks are then fused
pairwise until exactly the requested blacks remain.  Fusing two blacks in
different components, or on a common face of one component, keeps every
component a sphere, so the search only tracks the cyclic order of surviving
blacks around each face ("face words").  The finished chart is re-validated
with the face-tracing genus check, so a wrong model can never leak an invalid
chart.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import gadgets
from .census import Census, _clean, census
from .chart import TAIL, Chart, ChartBuilder, Sign, VertexKind, build_chart, trace_faces, validate
from .errors import BudgetExhaustedError, ChartError, LabelRangeError, StarViolationError
from .identities import check_star, star_terms
from .layout import band_layout

DEFAULT_BUDGET = 10**6

PM = tuple[int, int]


@dataclass(frozen=True)
class TargetCounts:
    B: dict[int, PM] = field(default_factory=dict)
    T: dict[int, PM] = field(default_factory=dict)
    D: dict[int, PM] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("B", "T", "D"):
            table = getattr(self, name)
            for p, pm in table.items():
                if len(pm) != 2 or any(isinstance(c, bool) or not isinstance(c, int) or c < 0 for c in pm):
                    raise ValueError(f"{name}({p}) counts must be two nonnegative integers, got {pm!r}")
            object.__setattr__(self, name, _clean(table))

    @classmethod
    def from_census(cls, c: Census) -> "TargetCounts":
        return cls(dict(c.B), dict(c.T), dict(c.D))

    def census(self) -> Census:
        return Census(self.B, self.T, self.D)

    def star(self) -> dict[int, bool]:
        return check_star(self.census())

    def star_ok(self) -> bool:
        return all(self.star().values())

    def labels(self) -> set[int]:
        """Edge labels a realizing chart must use."""
        out = set(self.B) | set(self.D)
        for q in self.T:
            out |= {q - 1, q}
        return out

    def shifted(self, k: int) -> "TargetCounts":
        return TargetCounts(
            {p + k: c for p, c in self.B.items()},
            {p + k: c for p, c in self.T.items()},
            {p + k: c for p, c in self.D.items()},
        )

    def is_empty(self) -> bool:
        return not (self.B or self.T or self.D)


def plan_targets(T: Mapping[int, PM], D: Mapping[int, PM] | None = None) -> TargetCounts:
    """Complete T and D with the fewest branch points the balance law allows."""
    base = TargetCounts({}, dict(T), dict(D or {}))
    c = base.census()
    support = c.support()
    B = {}
    if support:
        for p in range(support[0] - 1, support[-1] + 1):
            lhs, rhs = star_terms(c, p)  # lhs carries only the D part here
            d = rhs - lhs
            if d:
                B[p] = (max(0, d), max(0, -d))
    return TargetCounts(B, base.T, base.D)


def normalize_targets(t: TargetCounts) -> tuple[TargetCounts, int, int]:
    """Shift indices so the smallest label used is 1; returns (targets, shift, degree)."""
    labels = t.labels()
    if not labels:
        return t, 0, 1
    shift = 1 - min(labels)
    out = t.shifted(shift)
    return out, shift, max(labels) + shift + 1


# --- end ledger ---------------------------------------------------------------------


@dataclass
class EndLedger:
    """Edge ends contributed by the target's vertices, grouped by label."""

    outgoing: dict[int, list[str]] = field(default_factory=lambda: defaultdict(list))
    incoming: dict[int, list[str]] = field(default_factory=lambda: defaultdict(list))

    def imbalance(self) -> dict[int, int]:
        labels = set(self.outgoing) | set(self.incoming)
        out = {}
        for p in sorted(labels):
            d = len(self.outgoing.get(p, ())) - len(self.incoming.get(p, ()))
            if d:
                out[p] = d
        return out

    def balanced(self) -> bool:
        return not self.imbalance()


def build_ledger(t: TargetCounts) -> EndLedger:
    led = EndLedger()
    for p, (plus, minus) in t.B.items():
        for k in range(plus):
            led.outgoing[p].append(f"B{p}+#{k}")
        for k in range(minus):
            led.incoming[p].append(f"B{p}-#{k}")
    for q, pm in t.T.items():
        for sign, n in zip((Sign.PLUS, Sign.MINUS), pm):
            for k in range(n):
                tag = f"T{q}{sign.symbol}#{k}"
                for i, (label, inc) in enumerate(gadgets.white_pattern(q, sign)):
                    (led.incoming if inc else led.outgoing)[label].append(f"{tag}.{i}")
    for r, (plus, minus) in t.D.items():
        for k in range(plus):
            led.outgoing[r].extend([f"D{r}+#{k}.0", f"D{r}+#{k}.1"])
        for k in range(minus):
            led.incoming[r].extend([f"D{r}-#{k}.0", f"D{r}-#{k}.1"])
    return led


# --- gadget pieces ------------------------------------------------------------------


def reduced_white(q: int, sign: Sign | int) -> Chart:
    """An index-q white with two nested self-loops and two pendant blacks.

    A positive one keeps a label q-1 source and a label q sink; a negative one
    a label q source and a label q-1 sink.
    """
    b = ChartBuilder.from_chart(gadgets.SW(q, sign))
    # ends 2 and 4 share a label, as do ends 1 and 5; both loops are nested
    b.fuse_blacks("b2", "b4")
    b.fuse_blacks("b1", "b5")
    return b.freeze()


@dataclass
class Piece:
    """One gadget instance of the peel-off stage."""

    name: str
    chart: Chart
    order: tuple = field(default=(), repr=False)


@dataclass
class _Leaf:
    vid: str
    label: int
    sign: int


def _piece_words(chart: Chart) -> list[list[str]]:
    """Blacks of a connected piece grouped by face, in face order."""
    emap = chart.edge_map
    vmap = chart.vertex_map
    words = []
    for face in trace_faces(chart):
        word = []
        for end in face:
            e = emap[end.edge]
            owner = e.tail if end.side == TAIL else e.head
            if vmap[owner].kind is VertexKind.BLACK:
                word.append(owner)
        if word:
            words.append(word)
    return words


class _Budget(Exception):
    pass


class FaceWordSearch:
    """Depth-first choice of which black pairs to fuse.

    State: components, each a tuple of faces, each a cyclic tuple of leaf ids.
    ``need[p]`` is the number of label-p fusions still required.  Failed
    states are memoised under a canonical form that forgets leaf identities.
    """

    def __init__(self, leaves: list[_Leaf], comps, need: dict[int, int], budget: int, rng=None):
        self.leaves = leaves
        self.code = [2 * lf.label + (lf.sign > 0) for lf in leaves]
        self.start = comps
        self.need0 = dict(need)
        self.budget = budget
        self.nodes = 0
        self.failed: set = set()
        self.rng = rng
        self.best_remaining: int | None = None

    # state helpers
    def _strip(self, comps, need):
        out = []
        for comp in comps:
            faces = []
            for face in comp:
                f = tuple(x for x in face if need.get(self.leaves[x].label, 0) > 0)
                if f:
                    faces.append(f)
            if faces:
                out.append(tuple(faces))
        return tuple(out)

    def _key(self, comps, need):
        code = self.code
        comp_keys = []
        for comp in comps:
            fkeys = []
            for face in comp:
                w = tuple(code[x] for x in face)
                fkeys.append(min(w[i:] + w[:i] for i in range(len(w))))
            comp_keys.append(tuple(sorted(fkeys)))
        return tuple(sorted(comp_keys)), tuple(sorted((p, n) for p, n in need.items() if n))

    def run(self):
        # No piece carries a black-to-black edge at a label that still needs
        # fusions, so two leaves joined by one edge never come up here.
        comps = self._strip(self.start, self.need0)
        return self._dfs(comps, dict(self.need0))

    def _dfs(self, comps, need):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        remaining = sum(need.values())
        if self.best_remaining is None or remaining < self.best_remaining:
            self.best_remaining = remaining
        if remaining == 0:
            return []
        key = self._key(comps, need)
        if key in self.failed:
            return None

        leaves = self.leaves
        total = Counter()
        per_comp = []
        for comp in comps:
            cc = Counter()
            for face in comp:
                for x in face:
                    lf = leaves[x]
                    cc[(lf.label, lf.sign)] += 1
            per_comp.append(cc)
            total.update(cc)
        for p, n in need.items():
            if n and (total[(p, 1)] < n or total[(p, -1)] < n):
                self.failed.add(key)
                return None

        best = None
        for ci, comp in enumerate(comps):
            for fi, face in enumerate(comp):
                fc = Counter((leaves[x].label, leaves[x].sign) for x in face)
                for pos, x in enumerate(face):
                    lf = leaves[x]
                    t_opp = (lf.label, -lf.sign)
                    n_opts = fc[t_opp] + total[t_opp] - per_comp[ci][t_opp]
                    n_opts += total[(lf.label, lf.sign)] > need[lf.label]
                    if n_opts == 0:
                        self.failed.add(key)
                        return None
                    if best is None or n_opts < best[0]:
                        best = (n_opts, ci, fi, pos)
        _, ci, fi, pos = best
        for move, comps2, need2 in self._options(comps, need, ci, fi, pos, total):
            comps2 = self._strip(comps2, need2)
            rest = self._dfs(comps2, need2)
            if rest is not None:
                return ([move] if move else []) + rest
        self.failed.add(key)
        return None

    def _options(self, comps, need, ci, fi, pos, total):
        leaves = self.leaves
        comp = comps[ci]
        face = comp[fi]
        x = face[pos]
        lx = leaves[x]
        p = lx.label
        others = comps[:ci] + comps[ci + 1:]
        need2 = dict(need)
        need2[p] -= 1
        opts = []

        # fuse within the face: splits it in two
        n = len(face)
        for d in range(1, n):
            j = (pos + d) % n
            y = face[j]
            ly = leaves[y]
            if ly.label != p or ly.sign != -lx.sign:
                continue
            w = face[pos + 1:] + face[:pos]  # starts right after x
            k = d - 1
            side_a, side_b = w[:k], w[k + 1:]
            faces = comp[:fi] + comp[fi + 1:] + tuple(f for f in (side_a, side_b) if f)
            move = (x, y) if lx.sign > 0 else (y, x)
            opts.append((min(d, n - d), 0, move, (faces,) + others, need2))

        # fuse with a black of another component: their faces merge
        for cj, other in enumerate(comps):
            if cj == ci:
                continue
            rest = tuple(c for k, c in enumerate(comps) if k not in (ci, cj))
            for gj, g in enumerate(other):
                for j, y in enumerate(g):
                    ly = leaves[y]
                    if ly.label != p or ly.sign != -lx.sign:
                        continue
                    inner = g[j + 1:] + g[:j]
                    merged = face[:pos] + inner + face[pos + 1:]
                    faces = comp[:fi] + comp[fi + 1:] + other[:gj] + other[gj + 1:]
                    faces = faces + ((merged,) if merged else ())
                    move = (x, y) if lx.sign > 0 else (y, x)
                    opts.append((n + len(g), 1 + abs(x - y), move, (faces,) + rest, need2))

        ordered = [o[2:] for o in sorted(opts, key=lambda o: (o[1] > 0, o[0], o[1]))]
        if self.rng is not None:
            self.rng.shuffle(ordered)

        # keep x as a black
        if total[(p, lx.sign)] > need[p]:
            faces = comp[:fi] + (face[:pos] + face[pos + 1:],) + comp[fi + 1:]
            ordered.append((None, (faces,) + others, dict(need)))
        return ordered


def _sequence_key(kind: str, index: int, sign: int, k: int) -> tuple:
    # index-sorted, signs alternating within an index
    return (index, k, 0 if sign > 0 else 1, kind)


def peel(
    t: TargetCounts, degree: int, reduced: bool = True, crossings: Iterable[tuple[int, int]] = ()
) -> tuple[list[Piece], dict[int, int]]:
    """Gadget pieces for ``t`` and the number of fusions still required per label.

    Every fusion removes one positive and one negative black of its label, so
    the summed piece censuses minus the fusions equal ``t`` exactly.
    """
    pieces: list[Piece] = []
    for q, (plus, minus) in t.T.items():
        pairs = min(plus, minus)
        for k in range(pairs):
            pieces.append(Piece(f"WP({q})", gadgets.WP(q, degree), _sequence_key("WP", q, 1, k)))
        for sign, n in ((Sign.PLUS, plus - pairs), (Sign.MINUS, minus - pairs)):
            for k in range(n):
                ch = reduced_white(q, sign) if reduced else gadgets.SW(q, sign, degree)
                pieces.append(Piece(f"{'SWR' if reduced else 'SW'}({q},{sign.symbol})", _redegree(ch, degree), _sequence_key("SW", q, sign, k)))
    for r, (plus, minus) in t.D.items():
        pairs = min(plus, minus)
        for k in range(pairs):
            pieces.append(Piece(f"SP({r})", gadgets.SP(r, degree), _sequence_key("SP", r, 1, k)))
        for sign, n in ((Sign.PLUS, plus - pairs), (Sign.MINUS, minus - pairs)):
            for k in range(n):
                pieces.append(Piece(f"SB({r},{sign.symbol})", gadgets.SB(r, sign, degree), _sequence_key("SB", r, sign, k)))
    for k, (i, j) in enumerate(crossings):
        pieces.append(Piece(f"XG({i},{j})", gadgets.XG(i, j, degree), _sequence_key("XG", min(i, j), 1, k)))

    have = Census()
    for pc in pieces:
        have = have + census(pc.chart)
    need = {}
    for p in sorted(set(have.B) | set(t.B)):
        extra_plus = have.count("B", p, 1) - t.B.get(p, (0, 0))[0]
        extra_minus = have.count("B", p, -1) - t.B.get(p, (0, 0))[1]
        if extra_plus != extra_minus:
            raise StarViolationError(f"branch points at {p} cannot balance")
        if extra_plus > 0:
            need[p] = extra_plus
        for k in range(-extra_plus):
            pieces.append(Piece(f"FE({p})", gadgets.FE(p, degree), _sequence_key("FE", p, 1, k)))
    pieces.sort(key=lambda pc: pc.order)
    return pieces, need


def _redegree(chart: Chart, degree: int) -> Chart:
    return Chart(degree, chart.vertices, chart.edges, chart.coords)


@dataclass
class RealizeStats:
    strategy: str = ""
    nodes: int = 0
    crossings: int = 0
    fusions: int = 0


def leaf_model(pieces: list[Piece]):
    """Prefix piece ids apart and read off the face words of their blacks."""
    leaves: list[_Leaf] = []
    comps = []
    for k, pc in enumerate(pieces):
        pc.chart = _prefixed(pc.chart, f"p{k}_")
        index = {}
        for v in pc.chart.vertices:
            if v.kind is VertexKind.BLACK:
                end = v.rotation[0]
                index[v.id] = len(leaves)
                leaves.append(_Leaf(v.id, pc.chart.end_label(end), 1 if end.side == TAIL else -1))
        words = _piece_words(pc.chart)
        if words:
            comps.append(tuple(tuple(index[b] for b in w) for w in words))
    return leaves, tuple(comps)


def _try(t: TargetCounts, degree: int, reduced: bool, crossings, budget: int, rng, stats: RealizeStats):
    pieces, need = peel(t, degree, reduced, crossings)
    leaves, comps = leaf_model(pieces)
    search = FaceWordSearch(leaves, comps, need, budget - stats.nodes, rng)
    try:
        moves = search.run()
    finally:
        stats.nodes += search.nodes
    if moves is None:
        return None, search
    b = ChartBuilder(degree)
    for pc in pieces:
        b.add_chart(pc.chart)
    for xp, xm in moves:
        b.fuse_blacks(leaves[xp].vid, leaves[xm].vid)
    stats.fusions = len(moves)
    return b, search


def _prefixed(chart: Chart, prefix: str) -> Chart:
    from .chart import rename

    return rename(chart, prefix)


def _tidy_ids(b: ChartBuilder) -> ChartBuilder:
    """Renumber ids densely (v0, v1, ... / e0, e1, ...) in a deterministic order."""
    from .chart import EdgeEnd

    vnames = {vid: f"v{i}" for i, vid in enumerate(sorted(b.kinds, key=_natural))}
    enames = {eid: f"e{i}" for i, eid in enumerate(sorted(b.edges, key=_natural))}
    out = ChartBuilder(b.degree)
    for vid, kind in b.kinds.items():
        out.kinds[vnames[vid]] = kind
        out.rot[vnames[vid]] = [EdgeEnd(enames[x.edge], x.side) for x in b.rot[vid]]
    for eid, (label, tail, head) in b.edges.items():
        out.edges[enames[eid]] = [label, vnames[tail], vnames[head]]
    return out


def _natural(s: str):
    import re

    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", s)]


MAX_CROSSING_GADGETS = 3


def realize(
    t: TargetCounts,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
    degree: int | None = None,
    stats: RealizeStats | None = None,
) -> Chart:
    """A valid chart whose B, T and D tables equal ``t`` exactly.

    Indices must already be positive (see :func:`normalize_targets`).
    Strategies, cheapest first: whites reduced to two pendant blacks, then
    whites with all six ends free, then extra crossing gadgets.  Raises
    :class:`BudgetExhaustedError` when none succeeds within ``budget`` search
    nodes; an invalid chart is never returned.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    bad = [p for p, ok in t.star().items() if not ok]
    if bad:
        raise StarViolationError(f"targets violate the balance law at indices {bad}")
    labels = t.labels()
    if labels and min(labels) < 1:
        raise LabelRangeError("targets use labels below 1; normalize them first")
    need_degree = max(labels) + 1 if labels else 1
    degree = need_degree if degree is None else degree
    if degree < need_degree:
        raise LabelRangeError(f"degree {degree} too small for labels up to {need_degree - 1}")
    stats = stats if stats is not None else RealizeStats()
    rng = random.Random(seed) if seed is not None else None

    if t.is_empty():
        return build_chart(degree, [], [], {}, coords={})

    led = build_ledger(t)
    if not led.balanced():  # pragma: no cover - equivalent to the star check above
        raise StarViolationError(f"unbalanced ends {led.imbalance()}")

    attempts = [("reduced", True, ()), ("free", False, ())]
    far = [(i, j) for i, j in itertools.combinations(sorted(range(1, degree)), 2) if j - i >= 2]
    for k in range(1, MAX_CROSSING_GADGETS + 1):
        for combo in itertools.combinations_with_replacement(far, k):
            attempts.append((f"free+{k}x", False, combo))

    best_remaining = None
    for name, reduced, crossings in attempts:
        try:
            b, search = _try(t, degree, reduced, crossings, budget, rng, stats)
        except _Budget:
            raise BudgetExhaustedError(
                f"search budget of {budget} nodes exhausted (last strategy {name})",
                nodes=stats.nodes,
                partial={"strategy": name, "fusions_left": best_remaining},
            ) from None
        if search.best_remaining is not None:
            best_remaining = (
                search.best_remaining if best_remaining is None else min(best_remaining, search.best_remaining)
            )
        if b is None:
            continue
        b = _tidy_ids(b)
        chart = b.freeze()
        chart = b.freeze(band_layout(chart))
        report = validate(chart)
        if not report.ok:  # pragma: no cover - guarded by the planarity model
            raise ChartError(f"internal error: realized chart invalid: {report.violations[:3]}")
        stats.strategy = name
        stats.crossings = len(crossings)
        return chart
    raise BudgetExhaustedError(
        "no strategy found a chart", nodes=stats.nodes, partial={"fusions_left": best_remaining}
    )


def verify_realization(t: TargetCounts, chart: Chart) -> bool:
    if not validate(chart).ok:
        return False
    return census(chart).points() == t.census()


def discover_white_pair(q: int) -> list[Chart]:
    """Every planar way to wire an index-q positive and negative white together.

    Exhaustive over the bijections between the outgoing ends of each vertex
    and same-label incoming ends of the other, and over the six rotation
    offsets of the negative vertex.
    """
    from .chart import EdgeEnd

    plus = gadgets.white_pattern(q, Sign.PLUS)
    minus = gadgets.white_pattern(q, Sign.MINUS)
    found = []
    seen = set()
    outs_p = [i for i, (_, inc) in enumerate(plus) if not inc]
    ins_m = [i for i, (_, inc) in enumerate(minus) if inc]
    outs_m = [i for i, (_, inc) in enumerate(minus) if not inc]
    ins_p = [i for i, (_, inc) in enumerate(plus) if inc]
    for perm1 in itertools.permutations(ins_m):
        if any(plus[a][0] != minus[b][0] for a, b in zip(outs_p, perm1)):
            continue
        for perm2 in itertools.permutations(ins_p):
            if any(minus[a][0] != plus[b][0] for a, b in zip(outs_m, perm2)):
                continue
            for offset in range(6):
                edges = []
                rot_p = [None] * 6
                rot_m = [None] * 6
                k = 0
                for a, b in zip(outs_p, perm1):
                    eid = f"e{k}"
                    edges.append((eid, plus[a][0], "wp", "wm"))
                    rot_p[a] = EdgeEnd(eid, "t")
                    rot_m[b] = EdgeEnd(eid, "h")
                    k += 1
                for a, b in zip(outs_m, perm2):
                    eid = f"e{k}"
                    edges.append((eid, minus[a][0], "wm", "wp"))
                    rot_m[a] = EdgeEnd(eid, "t")
                    rot_p[b] = EdgeEnd(eid, "h")
                    k += 1
                rot_m = rot_m[offset:] + rot_m[:offset]
                chart = build_chart(q + 1, [("wp", "white"), ("wm", "white")], edges, {"wp": rot_p, "wm": rot_m})
                if not validate(chart).ok:
                    continue
                sig = (tuple(rot_p), tuple(rot_m))
                if sig not in seen:
                    seen.add(sig)
                    found.append(chart)
    return found
