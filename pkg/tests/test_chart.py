from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidchart import gadgets
from braidchart.chart import (
    ChartBuilder,
    EdgeEnd,
    Sign,
    VertexKind,
    build_chart,
    disjoint_union,
    rename,
    reverse_orientation,
    trace_faces,
    translate_labels,
    validate,
    white_template_error,
)
from braidchart.errors import (
    ArityError,
    ChartError,
    DanglingReferenceError,
    DuplicateIdError,
    EndMismatchError,
    LabelRangeError,
)
from braidchart.generate import GenConfig, generate

from conftest import components_by_hand, faces_by_hand


def test_edge_end_parsing():
    assert EdgeEnd.parse("e1:t") == EdgeEnd("e1", "t")
    assert str(EdgeEnd("x", "h")) == "x:h"
    assert EdgeEnd("x", "h").incoming and not EdgeEnd("x", "t").incoming
    assert EdgeEnd("x", "h").flipped() == EdgeEnd("x", "t")
    for bad in ("e1", "e1:x", ":t", "e-1:t"):
        with pytest.raises(ValueError):
            EdgeEnd.parse(bad)


def test_sign_helpers():
    assert -Sign.PLUS is Sign.MINUS
    assert Sign.parse("+") is Sign.PLUS and Sign.parse("-") is Sign.MINUS
    assert VertexKind.WHITE.arity == 6 and VertexKind.SINGULAR.arity == 2


def test_catalog_fixtures_validate(fixture_chart):
    name, chart = fixture_chart
    assert validate(chart).ok, (name, validate(chart).violations)


def test_crossing_of_adjacent_labels_rejected():
    report = validate(gadgets.XG(1, 2))
    assert not report.ok
    assert report.rules() == {"|i−j| ≥ 2"}


@pytest.mark.parametrize(
    "make, exc",
    [
        (lambda: build_chart(2, [("a", "black"), ("a", "black")], [], {}), DuplicateIdError),
        (lambda: build_chart(2, [("a", "black")], [("e", 1, "a", "zz")], {}), DanglingReferenceError),
        (lambda: build_chart(2, [("a", "black"), ("b", "black")], [("e", 1, "a", "b")], {"a": ["e:t"]}), ArityError),
        (
            lambda: build_chart(2, [("a", "black"), ("b", "black")], [("e", 1, "a", "b")], {"a": ["e:h"], "b": ["e:t"]}),
            EndMismatchError,
        ),
        (lambda: build_chart(2, [("a", "black")], [], {"a": ["e:t"]}), DanglingReferenceError),
        (lambda: build_chart(0, [], [], {}), ChartError),
        (lambda: build_chart(2, [("a b", "black")], [], {}), ChartError),
    ],
)
def test_build_chart_errors(make, exc):
    with pytest.raises(exc):
        make()


def _two_whites(rot_wm):
    edges = [
        ("eA", 1, "wm", "wp"), ("eB", 2, "wm", "wp"), ("eC", 1, "wm", "wp"),
        ("eD", 2, "wp", "wm"), ("eE", 1, "wp", "wm"), ("eF", 2, "wp", "wm"),
    ]
    rot = {"wp": ["eA:h", "eB:h", "eC:h", "eD:t", "eE:t", "eF:t"], "wm": rot_wm}
    return build_chart(3, [("wp", "white"), ("wm", "white")], edges, rot)


def test_planarity_depends_on_rotation():
    good = _two_whites(["eF:h", "eE:h", "eD:h", "eC:t", "eB:t", "eA:t"])
    assert validate(good).ok and good.face_count == 6
    # same cyclic order on both sides: a torus, V - E + F = 2 - 6 + 2
    bad = _two_whites(["eD:h", "eE:h", "eF:h", "eA:t", "eB:t", "eC:t"])
    assert bad.face_count == 2
    assert validate(bad).rules() == {"planarity"}


def test_white_template_rules():
    assert white_template_error([1, 2, 1, 2, 1, 2], [True] * 3 + [False] * 3) is None
    assert white_template_error([1, 2, 1, 2, 1, 2], [True, False] * 3) is not None
    assert white_template_error([1, 1, 2, 2, 1, 2], [True] * 3 + [False] * 3) is not None


def test_label_range_and_singular_rules():
    c = gadgets.FE(3, degree=3)
    assert validate(c).rules() == {"label range"}
    mixed = build_chart(
        3,
        [("s", "singular"), ("a", "black"), ("b", "black")],
        [("e0", 1, "a", "s"), ("e1", 1, "s", "b")],
        {"s": ["e0:h", "e1:t"], "a": ["e0:t"], "b": ["e1:h"]},
    )
    assert "singular template" in validate(mixed).rules()


def test_disconnected_spheres_are_planar():
    c = disjoint_union([gadgets.FE(1), gadgets.SW(2, Sign.PLUS), gadgets.WP(2)])
    assert c.component_count == 3
    assert c.euler_characteristic == 6
    assert validate(c).ok


@given(seed=st.integers(1, 10_000), degree=st.integers(2, 7), size=st.sampled_from([0]) | st.integers(2, 40))
@settings(max_examples=60, deadline=None)
def test_faces_match_definition(seed, degree, size):
    c = generate(GenConfig(seed=seed, degree=degree, size=size))
    mine = sorted(sorted(map(str, f)) for f in trace_faces(c))
    ref = sorted(sorted(map(str, f)) for f in faces_by_hand(c))
    assert mine == ref
    assert c.face_count == len(ref)
    assert c.component_count == components_by_hand(c)


def test_transforms():
    c = gadgets.SW(2, Sign.PLUS)
    t = translate_labels(c, 3, degree=6)
    assert sorted(e.label for e in t.edges) == [4, 4, 4, 5, 5, 5]
    with pytest.raises(LabelRangeError):
        translate_labels(c, -1)
    r = reverse_orientation(c)
    assert all(e.tail == f.head for e, f in zip(c.edges, r.edges))
    assert reverse_orientation(r) == c
    assert {v.id for v in rename(c, "k_").vertices} == {"k_" + v.id for v in c.vertices}


def test_builder_fuse_and_swap():
    b = ChartBuilder.from_chart(gadgets.SW(2, Sign.PLUS))
    b.add_chart(gadgets.FE(1), "f_")
    b.fuse_blacks("f_b0", "b4")  # label 1: positive FE black with the white's sink
    c = b.freeze()
    assert validate(c).ok
    assert len(c.vertices) == 7
    with pytest.raises(ChartError):
        fe = ChartBuilder.from_chart(gadgets.FE(2))
        fe.fuse_blacks("b0", "b1")
