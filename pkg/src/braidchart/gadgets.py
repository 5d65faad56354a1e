"""Small hand-built charts used as fixtures and as realizer building blocks.

Names follow the fixture catalog:

``FE(p)``      one label-p edge from a positive black to a negative black
``SW(q, s)``   a white vertex of index q and sign s, every end capped by a black
``XG(i, j)``   arcs labelled i and j crossing once, capped by blacks
``SP(p)``      positive and negative singular vertices joined by two label-p edges
``SB(p, s)``   singular vertex of sign s with both edges capped by blacks
``WP(q)``      positive and negative index-q white vertices joined by six edges
"""

from __future__ import annotations

from .chart import HEAD, TAIL, Chart, EdgeEnd, Sign, build_chart


def _deg(degree: int | None, top_label: int) -> int:
    return top_label + 1 if degree is None else degree


def FE(p: int, degree: int | None = None) -> Chart:
    return build_chart(
        _deg(degree, p),
        [("b0", "black"), ("b1", "black")],
        [("e0", p, "b0", "b1")],
        {"b0": ["e0:t"], "b1": ["e0:h"]},
    )


def white_pattern(q: int, sign: Sign | int) -> list[tuple[int, bool]]:
    """(label, incoming) for the six ends of an index-q white vertex, counterclockwise.

    Three incoming ends come first; the middle one carries label q exactly
    when the vertex is positive.
    """
    a, b = q - 1, q
    if Sign(sign) is Sign.PLUS:
        labels = [a, b, a, b, a, b]
    else:
        labels = [b, a, b, a, b, a]
    return [(labels[i], i < 3) for i in range(6)]


def SW(q: int, sign: Sign | int = Sign.PLUS, degree: int | None = None) -> Chart:
    vertices = [("w", "white")] + [(f"b{i}", "black") for i in range(6)]
    edges = []
    rot_w = []
    rots = {}
    for i, (label, incoming) in enumerate(white_pattern(q, sign)):
        if incoming:
            edges.append((f"e{i}", label, f"b{i}", "w"))
            rot_w.append(EdgeEnd(f"e{i}", HEAD))
            rots[f"b{i}"] = [EdgeEnd(f"e{i}", TAIL)]
        else:
            edges.append((f"e{i}", label, "w", f"b{i}"))
            rot_w.append(EdgeEnd(f"e{i}", TAIL))
            rots[f"b{i}"] = [EdgeEnd(f"e{i}", HEAD)]
    rots["w"] = rot_w
    return build_chart(_deg(degree, q), vertices, edges, rots)


def XG(i: int, j: int, degree: int | None = None) -> Chart:
    """Built even when ``|i - j| < 2`` so the validator can reject it."""
    return build_chart(
        _deg(degree, max(i, j)),
        [("x", "crossing")] + [(f"b{k}", "black") for k in range(4)],
        [("e0", i, "b0", "x"), ("e1", j, "b1", "x"), ("e2", i, "x", "b2"), ("e3", j, "x", "b3")],
        {
            "x": ["e0:h", "e1:h", "e2:t", "e3:t"],
            "b0": ["e0:t"],
            "b1": ["e1:t"],
            "b2": ["e2:h"],
            "b3": ["e3:h"],
        },
    )


def SP(p: int, degree: int | None = None) -> Chart:
    return build_chart(
        _deg(degree, p),
        [("sp", "singular"), ("sm", "singular")],
        [("e0", p, "sp", "sm"), ("e1", p, "sp", "sm")],
        {"sp": ["e0:t", "e1:t"], "sm": ["e1:h", "e0:h"]},
    )


def SB(p: int, sign: Sign | int = Sign.PLUS, degree: int | None = None) -> Chart:
    if Sign(sign) is Sign.PLUS:
        edges = [("e0", p, "s", "b0"), ("e1", p, "s", "b1")]
        rots = {"s": ["e0:t", "e1:t"], "b0": ["e0:h"], "b1": ["e1:h"]}
    else:
        edges = [("e0", p, "b0", "s"), ("e1", p, "b1", "s")]
        rots = {"s": ["e0:h", "e1:h"], "b0": ["e0:t"], "b1": ["e1:t"]}
    return build_chart(
        _deg(degree, p), [("s", "singular"), ("b0", "black"), ("b1", "black")], edges, rots
    )


# Frozen wiring of the black-free white pair.  Six edges between the positive
# vertex ``wp`` and the negative vertex ``wm``; ``wm`` lists the shared edges
# in the reverse cyclic order of ``wp``, which is what makes the map planar.
# ``realize.discover_white_pair`` re-derives it by exhaustive search.
_WP_EDGES = [
    # id, label offset (0 -> q - 1, 1 -> q), tail, head
    ("eA", 0, "wm", "wp"),
    ("eB", 1, "wm", "wp"),
    ("eC", 0, "wm", "wp"),
    ("eD", 1, "wp", "wm"),
    ("eE", 0, "wp", "wm"),
    ("eF", 1, "wp", "wm"),
]
_WP_ROT = {
    "wp": ["eA:h", "eB:h", "eC:h", "eD:t", "eE:t", "eF:t"],
    "wm": ["eF:h", "eE:h", "eD:h", "eC:t", "eB:t", "eA:t"],
}


def WP(q: int, degree: int | None = None) -> Chart:
    edges = [(eid, q - 1 + off, tail, head) for eid, off, tail, head in _WP_EDGES]
    return build_chart(_deg(degree, q), [("wp", "white"), ("wm", "white")], edges, _WP_ROT)


def crossing_loop(loop_label: int, through_label: int, degree: int | None = None) -> Chart:
    """A closed label-``loop_label`` curve cut by two through arcs of ``through_label``.

    The loop passes through two crossing vertices and has no other vertex, so
    it is traced as a closed arc rather than a chain.
    """
    L, T = loop_label, through_label
    return build_chart(
        _deg(degree, max(L, T)),
        [("x0", "crossing"), ("x1", "crossing")] + [(f"b{k}", "black") for k in range(4)],
        [
            ("l0", L, "x0", "x1"),
            ("l1", L, "x1", "x0"),
            ("a0", T, "b0", "x0"),
            ("a1", T, "x0", "b1"),
            ("c0", T, "b2", "x1"),
            ("c1", T, "x1", "b3"),
        ],
        {
            "x0": ["l1:h", "a0:h", "l0:t", "a1:t"],
            "x1": ["l0:h", "c0:h", "l1:t", "c1:t"],
            "b0": ["a0:t"],
            "b1": ["a1:h"],
            "b2": ["c0:t"],
            "b3": ["c1:h"],
        },
    )
