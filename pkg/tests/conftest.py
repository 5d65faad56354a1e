from __future__ import annotations

import sys

import pytest

from braidchart import gadgets
from braidchart.chart import Sign


def catalog():
    """The fixture charts every identity must hold on, by name."""
    return {
        "FE(1)": gadgets.FE(1),
        "FE(3)": gadgets.FE(3),
        "SW(2,+)": gadgets.SW(2, Sign.PLUS),
        "SW(2,-)": gadgets.SW(2, Sign.MINUS),
        "SW(3,+)": gadgets.SW(3, Sign.PLUS),
        "SW(3,-)": gadgets.SW(3, Sign.MINUS),
        "WP(2)": gadgets.WP(2),
        "SP(2)": gadgets.SP(2),
        "SB(2)": gadgets.SB(2),
        "XG(1,3)": gadgets.XG(1, 3),
    }


@pytest.fixture(params=sorted(catalog()))
def fixture_chart(request):
    return request.param, catalog()[request.param]


def faces_by_hand(chart):
    """Face tracing straight from the definition, without the dart kernels.

    From an end departing a vertex, walk along its edge to the far end, then
    turn to the counterclockwise-next end at that vertex.
    """
    where = {}
    for v in chart.vertices:
        for k, end in enumerate(v.rotation):
            where[end] = (v.rotation, k)
    seen = set()
    faces = []
    for start in where:
        if start in seen:
            continue
        face = []
        end = start
        while end not in seen:
            seen.add(end)
            face.append(end)
            rot, k = where[end.flipped()]
            end = rot[(k + 1) % len(rot)]
        faces.append(face)
    return faces


def components_by_hand(chart):
    parent = {v.id: v.id for v in chart.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in chart.edges:
        parent[find(e.tail)] = find(e.head)
    return len({find(v) for v in parent})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
