"""Band layout: vertices placed in vertical strips by index, for drawing only."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .chart import Chart, VertexKind


def band_x(chart: Chart, vid: str) -> Fraction:
    """Blacks and singulars of label p sit at x = p + 1/2; a white of index q
    (labels q - 1 and q) sits in the same strip as label-(q - 1) blacks."""
    v = chart.vertex(vid)
    labels = [chart.end_label(x) for x in v.rotation]
    half = Fraction(1, 2)
    if v.kind is VertexKind.WHITE:
        return max(labels) - half
    if v.kind is VertexKind.CROSSING:
        return Fraction(min(labels) + max(labels), 2) + half
    return labels[0] + half


def band_layout(chart: Chart) -> dict[str, tuple[Fraction, Fraction]]:
    columns: dict[Fraction, list[str]] = defaultdict(list)
    for v in chart.vertices:
        columns[band_x(chart, v.id)].append(v.id)
    coords = {}
    for x, ids in columns.items():
        for row, vid in enumerate(sorted(ids)):
            coords[vid] = (x, Fraction(row))
    return coords
