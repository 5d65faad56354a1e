"""Seeded random charts for property testing.

A chart is drawn as a disjoint union of catalog gadgets and then stirred by
random edge splices and black fusions, each kept only if every component is
still a sphere.  The random source is :class:`random.Random` (Mersenne
Twister) seeded with ``GenConfig.seed``; equal configs give identical charts
within one Python version.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import gadgets
from .chart import HEAD, TAIL, Chart, ChartBuilder, Sign, VertexKind, disjoint_union
from .errors import ChartError, InfeasibleConfigError, LabelRangeError


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    degree: int = 4
    size: int = 20
    allow_singular: bool = True
    black_free: bool = False
    splice_attempts: int = 20

    def __post_init__(self):
        if self.degree < 1:
            raise InfeasibleConfigError(f"degree must be positive, got {self.degree}")
        if self.size < 0:
            raise InfeasibleConfigError(f"size must be nonnegative, got {self.size}")
        if self.size > 0 and self.degree < 2:
            raise InfeasibleConfigError("charts with edges need degree at least 2")
        if self.splice_attempts < 0:
            raise InfeasibleConfigError("splice_attempts must be nonnegative")


Maker = tuple[int, Callable[[random.Random], Chart]]


def _menu(cfg: GenConfig) -> list[Maker]:
    """Gadget factories usable at this degree, each with its vertex count."""
    n = cfg.degree
    labels = range(1, n)
    indices = range(2, n)
    rs = lambda r, seq: r.choice(list(seq))  # noqa: E731
    sign = lambda r: r.choice((Sign.PLUS, Sign.MINUS))  # noqa: E731
    menu: list[Maker] = []
    if indices:
        menu.append((2, lambda r: gadgets.WP(rs(r, indices), n)))
    if cfg.allow_singular and labels:
        menu.append((2, lambda r: gadgets.SP(rs(r, labels), n)))
    if cfg.black_free:
        return menu
    if labels:
        menu.append((2, lambda r: gadgets.FE(rs(r, labels), n)))
    if indices:
        menu.append((7, lambda r: gadgets.SW(rs(r, indices), sign(r), n)))
    if cfg.allow_singular and labels:
        menu.append((3, lambda r: gadgets.SB(rs(r, labels), sign(r), n)))
    pairs = [(i, j) for i in labels for j in labels if j - i >= 2]
    if pairs:
        menu.append((5, lambda r: gadgets.XG(*r.choice(pairs), n)))
    return menu


def generate(cfg: GenConfig) -> Chart:
    rng = random.Random(cfg.seed)
    if cfg.size == 0:
        return Chart(cfg.degree, (), (), None)
    menu = _menu(cfg)
    smallest = min((k for k, _ in menu), default=None)
    if smallest is None or smallest > cfg.size:
        raise InfeasibleConfigError(
            f"no gadget fits: degree {cfg.degree}, size {cfg.size}, black_free={cfg.black_free}, "
            f"allow_singular={cfg.allow_singular}"
        )
    parts: list[Chart] = []
    used = 0
    while True:
        fits = [m for k, m in menu if used + k <= cfg.size]
        if not fits:
            break
        part = rng.choice(fits)(rng)
        parts.append(part)
        used += len(part.vertices)
    chart = disjoint_union(parts, degree=cfg.degree)
    b = ChartBuilder.from_chart(chart)
    for _ in range(cfg.splice_attempts):
        if rng.random() < 0.5:
            _random_splice(b, rng)
        else:
            _random_merge(b, rng)
    return b.freeze()


def _random_splice(b: ChartBuilder, rng: random.Random) -> bool:
    by_label: dict[int, list[str]] = {}
    for eid, (label, _, _) in sorted(b.edges.items()):
        by_label.setdefault(label, []).append(eid)
    choices = [ids for ids in by_label.values() if len(ids) >= 2]
    if not choices:
        return False
    e1, e2 = rng.sample(rng.choice(choices), 2)
    b.swap_heads(e1, e2)
    if b.freeze().is_sphere_planar:
        return True
    b.swap_heads(e1, e2)
    return False


def _black_sign(b: ChartBuilder, vid: str) -> int:
    return 1 if b.rot[vid][0].side == TAIL else -1


def _random_merge(b: ChartBuilder, rng: random.Random) -> bool:
    plus: dict[int, list[str]] = {}
    minus: dict[int, list[str]] = {}
    for vid in sorted(b.kinds):
        if b.kinds[vid] is not VertexKind.BLACK:
            continue
        label = b.edges[b.rot[vid][0].edge][0]
        (plus if _black_sign(b, vid) > 0 else minus).setdefault(label, []).append(vid)
    labels = sorted(set(plus) & set(minus))
    if not labels:
        return False
    p = rng.choice(labels)
    bp, bm = rng.choice(plus[p]), rng.choice(minus[p])
    return _try_fuse(b, bp, bm)


def _try_fuse(b: ChartBuilder, bp: str, bm: str) -> bool:
    if b.rot[bp][0].edge == b.rot[bm][0].edge:
        return False
    saved = _snapshot(b)
    b.fuse_blacks(bp, bm)
    if b.freeze().is_sphere_planar:
        return True
    _restore(b, saved)
    return False


def _snapshot(b: ChartBuilder):
    return (
        dict(b.kinds),
        {k: list(v) for k, v in b.rot.items()},
        {k: list(v) for k, v in b.edges.items()},
    )


def _restore(b: ChartBuilder, saved) -> None:
    b.kinds, b.rot, b.edges = saved


def splice(chart: Chart, e1: str, e2: str) -> Chart:
    """Cross-reconnect two same-label edges: tail(e1) to head(e2) and tail(e2) to head(e1).

    Returns ``chart`` itself (unchanged) when the result would not be planar.
    """
    emap = chart.edge_map
    for eid in (e1, e2):
        if eid not in emap:
            raise ChartError(f"no edge {eid!r}", ident=eid)
    if e1 == e2:
        raise ChartError("splice needs two distinct edges", ident=e1)
    if emap[e1].label != emap[e2].label:
        raise LabelRangeError(f"edges {e1!r} and {e2!r} carry different labels", ident=e1)
    b = ChartBuilder.from_chart(chart)
    b.swap_heads(e1, e2)
    out = b.freeze()
    if not out.is_sphere_planar:
        return chart
    return out.__class__(out.degree, out.vertices, out.edges, chart.coords)


def merge_blacks(chart: Chart, b_plus: str, b_minus: str) -> Chart:
    """Remove a positive and a negative black of one label, fusing their edges.

    Returns ``chart`` itself (unchanged) when the two blacks share their edge
    or the fused chart is not planar.
    """
    vmap = chart.vertex_map
    for vid in (b_plus, b_minus):
        if vid not in vmap:
            raise ChartError(f"no vertex {vid!r}", ident=vid)
        if vmap[vid].kind is not VertexKind.BLACK:
            raise ChartError(f"vertex {vid!r} is not black", ident=vid)
    end_p, end_m = vmap[b_plus].rotation[0], vmap[b_minus].rotation[0]
    if end_p.side != TAIL:
        raise ChartError(f"black {b_plus!r} is negative", ident=b_plus)
    if end_m.side != HEAD:
        raise ChartError(f"black {b_minus!r} is positive", ident=b_minus)
    if chart.end_label(end_p) != chart.end_label(end_m):
        raise LabelRangeError(f"blacks {b_plus!r} and {b_minus!r} carry different labels", ident=b_plus)
    b = ChartBuilder.from_chart(chart)
    if not _try_fuse(b, b_plus, b_minus):
        return chart
    out = b.freeze()
    if chart.coords is not None:
        keep = {vid: (x, y) for vid, x, y in chart.coords if vid in b.kinds}
        out = b.freeze(keep)
    return out


__all__ = ["GenConfig", "generate", "splice", "merge_blacks"]
