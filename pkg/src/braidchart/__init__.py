"""Braid charts: census, counting identities, synthesis and classical numbering."""

from __future__ import annotations

from .census import Arc, Census, census, check_edge_count, edge_count_by_index, trace_arcs, vertex_index, vertex_sign
from .chart import (
    Chart,
    ChartBuilder,
    Edge,
    EdgeEnd,
    Sign,
    ValidationReport,
    Vertex,
    VertexKind,
    Violation,
    build_chart,
    disjoint_union,
    rename,
    reverse_orientation,
    trace_faces,
    translate_labels,
    validate,
    with_coords,
)
from .chartio import ChartDocument, parse_chart, parse_targets, serialize_chart, serialize_targets
from .classical import PDDiagram, RegionNumbering, alexander_number, parse_pd, reverse_pd, verify_numbering
from .errors import *  # noqa: F401,F403
from .generate import GenConfig, generate, merge_blacks, splice
from .identities import (
    WeightSequence,
    check_star,
    corollary_branch_sum,
    corollary_immersed,
    corollary_partial_sums,
    derive_y,
    derive_z,
    identity_report,
    required_window,
    weighted_sum,
)
from .layout import band_layout
from .realize import (
    EndLedger,
    TargetCounts,
    build_ledger,
    discover_white_pair,
    normalize_targets,
    plan_targets,
    realize,
    verify_realization,
)
from .render import RenderOptions, render_svg

__version__ = "0.1.0"
