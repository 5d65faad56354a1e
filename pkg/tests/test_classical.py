from __future__ import annotations

import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidchart.classical import alexander_number, parse_pd, reverse_pd, trace_regions, verify_numbering
from braidchart.errors import PDError
from pd_oracle import closed_braid, winding_number

TREFOIL = "X 1 4 2 5\nX 5 2 6 3\nX 3 6 4 1\n"


def _numbers(text):
    pd = parse_pd(text)
    return sorted(alexander_number(pd).number)


def test_round_unknot_by_orientation():
    # [TRIVIAL] winding number of a circle
    assert _numbers("A 1 ccw\n") == [0, 1]
    assert _numbers("A 1 cw\n") == [-1, 0]
    assert _numbers("A 1\n") == [0, 1]


def test_unknot_reversal():
    pd = parse_pd("A 1 ccw\n")
    assert sorted(alexander_number(reverse_pd(pd)).number) == [-1, 0]


def test_trefoil_parses():
    pd = parse_pd(TREFOIL)
    assert len(pd.crossings) == 3 and pd.arcs == [1, 2, 3, 4, 5, 6]


def test_trefoil_numbers():
    n = alexander_number(parse_pd(TREFOIL))
    assert len(n.regions) == 5
    assert sorted(n.number) == [0, 1, 1, 1, 2]
    assert sorted(alexander_number(reverse_pd(parse_pd(TREFOIL))).number) == [-2, -1, -1, -1, 0]


def _check_against_oracle(drawing):
    pd = parse_pd(drawing.pd_text)
    n = alexander_number(pd)
    assert verify_numbering(pd, n)
    assert len(n.regions) == len(pd.crossings) + 2
    for (arc, side), pt in drawing.samples.items():
        assert n.number[n.region_of(arc, side)] == winding_number(drawing.strands, pt), (arc, side)
    rev = alexander_number(reverse_pd(pd))
    for (arc, side), _ in drawing.samples.items():
        flipped = "L" if side == "R" else "R"
        assert rev.number[rev.region_of(arc, flipped)] == -n.number[n.region_of(arc, side)]


def test_trefoil_braid_closure_against_oracle():
    # [DERIVED] every one of the 5 regions against a ray-cast winding number
    drawing = closed_braid(2, [(1, 1)] * 3)
    assert sorted(alexander_number(parse_pd(drawing.pd_text)).number) == [0, 1, 1, 1, 2]
    _check_against_oracle(drawing)


@given(data=st.data())
@settings(max_examples=150, deadline=None)
def test_random_closed_braids_against_oracle(data):
    n = data.draw(st.integers(2, 5))
    m = data.draw(st.integers(n - 1, 12))
    gens = list(range(1, n)) + [data.draw(st.integers(1, n - 1)) for _ in range(m - (n - 1))]
    random.Random(data.draw(st.integers(0, 10**6))).shuffle(gens)
    word = [(g, data.draw(st.sampled_from((1, -1)))) for g in gens]
    _check_against_oracle(closed_braid(n, word))


def test_verify_numbering_negatives():
    pd = parse_pd(TREFOIL)
    n = alexander_number(pd)
    assert verify_numbering(pd, n)
    for k in range(1, len(n.regions)):
        bumped = list(n.number)
        bumped[k] += 1
        assert not verify_numbering(pd, replace(n, number=tuple(bumped)))
    shifted = replace(n, number=tuple(x + 1 for x in n.number))
    assert not verify_numbering(pd, shifted)


def test_links_and_outer_choice():
    # Hopf link as a 2-braid closure with two crossings
    drawing = closed_braid(2, [(1, 1), (1, 1)])
    _check_against_oracle(drawing)
    # naming a different unbounded face changes numbers but stays consistent
    pd = parse_pd(TREFOIL + "outer 1 left\n")
    n = alexander_number(pd)
    assert verify_numbering(pd, n)
    assert n.number[n.region_of(1, "L")] == 0


def test_faces_cover_every_arc_side_once():
    pd = parse_pd(TREFOIL)
    sides = [s for f in trace_regions(pd) for s in f]
    assert sorted(sides) == sorted((a, s) for a in range(1, 7) for s in "LR")


@pytest.mark.parametrize(
    "text",
    [
        "X 1 2 3\n",
        "X 1 4 2 5\nX 5 2 6 3\nX 3 6 4 1\nX 1 7 8 9\n",  # arc 1 three times
        "Y 1 2 3 4\n",
        "X a b c d\n",
        "X 1 4 2 5\nX 5 2 6 3\n",  # arcs used once
        "A 1 sideways\n",
        "X 1 4 2 5\nX 5 2 6 3\nX 3 6 4 1\nouter 9 left\n",
        "X 1 4 2 5\nX 5 2 6 3\nX 3 6 4 1\nin 1 2\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(PDError):
        alexander_number(parse_pd(text))


def test_parse_error_has_line_number():
    with pytest.raises(PDError) as info:
        parse_pd("X 1 4 2 5\nX 5 2 6\n")
    assert info.value.line == 2
