from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidchart import gadgets
from braidchart.census import (
    Census,
    census,
    edge_count_ends,
    edge_count_starts,
    middle_incoming,
    trace_arcs,
    vertex_index,
    vertex_sign,
)
from braidchart.chart import EdgeEnd, Sign, reverse_orientation, translate_labels
from braidchart.errors import NoIndexError
from braidchart.generate import GenConfig, generate


def test_sw2_plus_census():
    # [PAPER] the six pendant blacks of a positive index-2 white
    c = census(gadgets.SW(2, Sign.PLUS))
    assert c == Census(B={1: (2, 1), 2: (1, 2)}, T={2: (1, 0)}, E={1: 3, 2: 3})


def test_sw2_minus_census():
    # [DERIVED] labels 2,1,2 come in and 1,2,1 go out
    c = census(gadgets.SW(2, Sign.MINUS))
    assert c == Census(B={1: (1, 2), 2: (2, 1)}, T={2: (0, 1)}, E={1: 3, 2: 3})


def test_reverse_and_translate_examples():
    sw = gadgets.SW(2, Sign.PLUS)
    rev = census(reverse_orientation(sw))
    assert rev.points() == Census(B={1: (1, 2), 2: (2, 1)}, T={2: (0, 1)})
    moved = census(translate_labels(sw, 3, degree=8))
    assert moved.points() == Census(B={4: (2, 1), 5: (1, 2)}, T={5: (1, 0)})


@pytest.mark.parametrize(
    "chart, expected",
    [
        (gadgets.FE(3), Census(B={3: (1, 1)}, E={3: 1})),
        (gadgets.SP(2), Census(D={2: (1, 1)}, E={2: 2})),
        (gadgets.SB(2, Sign.PLUS), Census(B={2: (0, 2)}, D={2: (1, 0)}, E={2: 2})),
        (gadgets.SB(2, Sign.MINUS), Census(B={2: (2, 0)}, D={2: (0, 1)}, E={2: 2})),
        (gadgets.XG(1, 3), Census(B={1: (1, 1), 3: (1, 1)}, E={1: 1, 3: 1})),
        (gadgets.WP(2), Census(T={2: (1, 1)}, E={1: 3, 2: 3})),
        (gadgets.crossing_loop(3, 1), Census(B={1: (2, 2)}, E={1: 2}, L={3: 1})),
    ],
    ids=["FE3", "SP2", "SB2+", "SB2-", "XG13", "WP2", "loop"],
)
def test_hand_counted_censuses(chart, expected):
    assert census(chart) == expected


def test_indices_and_signs():
    sw = gadgets.SW(3, Sign.MINUS)
    assert vertex_index(sw, "w") == 3
    assert vertex_sign(sw, "w") is Sign.MINUS
    assert middle_incoming(sw, "w") == EdgeEnd("e1", "h")
    assert vertex_sign(sw, "b0") is Sign.PLUS  # feeds an incoming end
    xg = gadgets.XG(1, 3)
    with pytest.raises(NoIndexError):
        vertex_index(xg, "x")
    with pytest.raises(NoIndexError):
        vertex_sign(xg, "x")


def test_arcs_run_through_crossings():
    arcs = trace_arcs(gadgets.XG(1, 4))
    assert sorted((a.label, a.edges) for a in arcs) == [(1, ("e0", "e2")), (4, ("e1", "e3"))]
    assert all(a.kind == "chain" for a in arcs)


def _chains_per_label(chart):
    """Open double arcs per label, tallied straight from the arc list."""
    out = {}
    for a in trace_arcs(chart):
        if a.kind == "chain":
            out[a.label] = out.get(a.label, 0) + 1
    return out


@given(seed=st.integers(1, 5000), degree=st.integers(2, 8))
@settings(max_examples=80, deadline=None)
def test_edge_count_formulas_on_random_charts(seed, degree):
    chart = generate(GenConfig(seed=seed, degree=degree, size=50))
    c = census(chart)
    starts = _chains_per_label(chart)
    for p in range(0, degree + 1):
        assert edge_count_starts(c, p) == starts.get(p, 0)
        assert edge_count_ends(c, p) == starts.get(p, 0)


def test_census_arithmetic():
    a = Census(B={1: (1, 0)}, T={2: (0, 3)}, E={1: 2})
    b = Census(B={1: (0, 1)}, D={4: (1, 0)}, L={2: 1})
    s = a + b
    assert s.B == {1: (1, 1)} and s.D == {4: (1, 0)} and s.L == {2: 1}
    assert a.shifted(2).T == {4: (0, 3)}
    assert a.sign_swapped().T == {2: (3, 0)}
    assert Census(B={1: (0, 0)}).B == {}
    assert a.support() == [1, 2]
    assert a.as_dict()["T"] == {"2": [0, 3]}
