"""SVG drawings of charts.

Vertices sit at the chart's coordinates, or at the band layout when the
chart has none.  Edges are drawn as straight or bowed paths with an arrow at
the head and the label at the middle.  The drawing is for inspection only:
rotations are not guaranteed to be visually faithful.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .census import vertex_index, vertex_sign
from .chart import Chart, VertexKind
from .errors import NoLayoutError
from .layout import band_layout

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 60.0
    margin: float = 30.0
    overlay: bool = False  # annotate vertices with "index,sign"
    layout: bool = True  # fall back to the band layout when coords are missing
    vertex_radius: float = 6.0


def _positions(chart: Chart, opts: RenderOptions) -> dict[str, tuple[float, float]]:
    coords = chart.coord_map
    if coords is None or any(v.id not in coords for v in chart.vertices):
        if not opts.layout:
            raise NoLayoutError("chart has no coordinates and layout is disabled")
        coords = band_layout(chart)
    return {vid: (float(x), float(y)) for vid, (x, y) in coords.items()}


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_svg(chart: Chart, options: RenderOptions | None = None) -> str:
    opts = options or RenderOptions()
    pos = _positions(chart, opts)
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * opts.scale + 2 * opts.margin
    height = (y1 - min(ys)) * opts.scale + 2 * opts.margin

    def screen(vid: str) -> tuple[float, float]:
        x, y = pos[vid]
        return (x - x0) * opts.scale + opts.margin, (y1 - y) * opts.scale + opts.margin

    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": _fmt(width),
            "height": _fmt(height),
            "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
        },
    )
    defs = ET.SubElement(svg, "defs")
    marker = ET.SubElement(
        defs,
        "marker",
        {"id": "arrow", "viewBox": "0 0 10 10", "refX": "10", "refY": "5",
         "markerWidth": "8", "markerHeight": "8", "orient": "auto"},
    )
    ET.SubElement(marker, "polygon", {"points": "0,0 10,5 0,10"})

    edges_g = ET.SubElement(svg, "g", {"class": "edges", "fill": "none", "stroke": "black"})
    bundle: dict[frozenset, int] = {}
    r = opts.vertex_radius
    for e in chart.edges:
        (ax, ay), (bx, by) = screen(e.tail), screen(e.head)
        key = frozenset((e.tail, e.head))
        k = bundle.get(key, 0)
        bundle[key] = k + 1
        if e.tail == e.head:
            # a loop: a teardrop above the vertex
            size = opts.scale * (0.35 + 0.15 * k)
            d = (f"M {_fmt(ax)} {_fmt(ay - r)} C {_fmt(ax - size)} {_fmt(ay - 2 * size)} "
                 f"{_fmt(ax + size)} {_fmt(ay - 2 * size)} {_fmt(ax)} {_fmt(ay - r)}")
            mx, my = ax, ay - 1.5 * size
        else:
            dx, dy = bx - ax, by - ay
            length = (dx * dx + dy * dy) ** 0.5
            ux, uy = (dx / length, dy / length) if length else (1.0, 0.0)
            sx, sy, tx, ty = ax + ux * r, ay + uy * r, bx - ux * r, by - uy * r
            bow = ((k + 1) // 2) * (1 if k % 2 else -1) * opts.scale * 0.3
            cx, cy = (sx + tx) / 2 - uy * bow, (sy + ty) / 2 + ux * bow
            d = f"M {_fmt(sx)} {_fmt(sy)} Q {_fmt(cx)} {_fmt(cy)} {_fmt(tx)} {_fmt(ty)}"
            mx, my = (sx + 2 * cx + tx) / 4, (sy + 2 * cy + ty) / 4
        ET.SubElement(edges_g, "path", {"id": f"edge-{e.id}", "d": d, "marker-end": "url(#arrow)"})
        label = ET.SubElement(
            svg, "text", {"class": "label", "x": _fmt(mx + 4), "y": _fmt(my - 4), "font-size": "11"}
        )
        label.text = str(e.label)

    verts = ET.SubElement(svg, "g", {"class": "vertices"})
    for v in chart.vertices:
        x, y = screen(v.id)
        attrs = {"class": f"vertex {v.kind.value}", "id": f"vertex-{v.id}"}
        if v.kind is VertexKind.BLACK:
            ET.SubElement(verts, "circle", {**attrs, "cx": _fmt(x), "cy": _fmt(y), "r": _fmt(r), "fill": "black"})
        elif v.kind is VertexKind.WHITE:
            ET.SubElement(
                verts, "circle",
                {**attrs, "cx": _fmt(x), "cy": _fmt(y), "r": _fmt(r), "fill": "white", "stroke": "black"},
            )
        elif v.kind is VertexKind.CROSSING:
            ET.SubElement(
                verts, "rect",
                {**attrs, "x": _fmt(x - r / 2), "y": _fmt(y - r / 2), "width": _fmt(r), "height": _fmt(r),
                 "fill": "none", "stroke": "gray"},
            )
        else:
            ET.SubElement(
                verts, "path",
                {**attrs, "d": f"M {_fmt(x - r)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y + r)} "
                               f"M {_fmt(x - r)} {_fmt(y + r)} L {_fmt(x + r)} {_fmt(y - r)}",
                 "stroke": "black", "stroke-width": "2"},
            )
        if opts.overlay and v.kind is not VertexKind.CROSSING:
            note = ET.SubElement(
                svg, "text",
                {"class": "overlay", "x": _fmt(x + r + 2), "y": _fmt(y + r + 10), "font-size": "10"},
            )
            note.text = f"{vertex_index(chart, v)},{vertex_sign(chart, v).symbol}"
    return ET.tostring(svg, encoding="unicode") + "\n"


__all__ = ["RenderOptions", "render_svg"]
