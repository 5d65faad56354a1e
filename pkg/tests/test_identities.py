from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidchart import gadgets
from braidchart.census import Census, census, check_edge_count
from braidchart.chart import Sign
from braidchart.errors import WindowError
from braidchart.generate import GenConfig, generate
from braidchart.identities import (
    WeightSequence,
    check_star,
    corollary_branch_sum,
    corollary_immersed,
    corollary_partial_sums,
    default_window,
    derive_y,
    derive_z,
    identity_report,
    required_window,
    weighted_sum,
)


def _weights_for(c: Census, rng: random.Random):
    lo, hi = default_window(c, None)
    yield WeightSequence.constant(5, lo, hi)
    yield WeightSequence.linear(lo, hi)
    yield WeightSequence.triangular(lo, hi)
    for _ in range(5):
        yield WeightSequence.random(rng, lo, hi)


def test_sw2_linear_and_triangular_by_hand():
    c = census(gadgets.SW(2, Sign.PLUS))
    # [PAPER] x_p = p: 1*(2-1) + 2*(1-2) + (2-1)*1 = 0
    assert weighted_sum(c, WeightSequence.linear(0, 2)) == 1 * 1 + 2 * (-1) + 1 == 0
    # [PAPER] x_p = p(p+1)/2: 1 - 3 + 2 = 0
    assert weighted_sum(c, WeightSequence.triangular(0, 2)) == 1 - 3 + 2 == 0


def test_identities_on_catalog(fixture_chart):
    name, chart = fixture_chart
    c = census(chart)
    assert check_edge_count(c), name
    assert all(check_star(c).values()), name
    for x in _weights_for(c, random.Random(name)):
        assert weighted_sum(c, x) == 0, (name, x)


def test_weight_sequence_basics():
    x = WeightSequence.linear(-1, 3)
    assert x.hi == 3 and x[-1] == -1 and x[3] == 3
    with pytest.raises(WindowError):
        x[4]
    assert derive_y(x) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert derive_z(x) == {-1: -2, 0: 0, 1: 2, 2: 4, 3: 6}
    with pytest.raises(WindowError):
        derive_y(WeightSequence(0, (1,)))
    with pytest.raises(TypeError):
        WeightSequence(0, (1.5,))
    r = WeightSequence.from_rationals(0, [Fraction(1, 2), Fraction(1, 3), 1])
    assert r.values == (3, 2, 6)
    assert WeightSequence.triangular(1, 4).values == (1, 3, 6, 10)


def test_window_is_enforced():
    c = census(gadgets.SW(3, Sign.PLUS))
    assert required_window(c) == (1, 3)
    with pytest.raises(WindowError):
        weighted_sum(c, WeightSequence.linear(2, 3))
    assert required_window(Census()) is None
    assert weighted_sum(Census(), WeightSequence.linear(0, 1)) == 0


@given(seed=st.integers(1, 10**6), degree=st.integers(2, 8), size=st.sampled_from([0]) | st.integers(2, 60))
@settings(max_examples=80, deadline=None)
def test_weighted_sum_vanishes_on_generated_charts(seed, degree, size):
    c = census(generate(GenConfig(seed=seed, degree=degree, size=size)))
    assert check_edge_count(c)
    assert all(check_star(c).values())
    for x in _weights_for(c, random.Random(seed)):
        assert weighted_sum(c, x) == 0


@given(p=st.integers(1, 6), sign=st.sampled_from([1, -1]), table=st.sampled_from("BTD"))
def test_perturbed_census_breaks_balance(p, sign, table):
    base = census(gadgets.SW(3, Sign.PLUS))
    extra = Census(**{table: {p: (1, 0) if sign > 0 else (0, 1)}})
    c = base + extra
    assert not all(check_star(c).values())


def test_corollaries_embedded():
    for chart in (gadgets.SW(2, Sign.PLUS), gadgets.XG(1, 3), gadgets.WP(3)):
        c = census(chart)
        assert corollary_branch_sum(c).ok
        assert all(ps.ok for ps in corollary_partial_sums(c).values())
    ps = corollary_partial_sums(census(gadgets.SW(2, Sign.PLUS)))
    assert ps[2].t_diff == ps[2].prefix == ps[2].neg_suffix == 1


def test_corollaries_need_singular_terms_when_d_present():
    c = census(gadgets.SB(2, Sign.PLUS))
    assert corollary_branch_sum(c) == (-2, False)
    assert corollary_branch_sum(c, include_singular=True).ok
    assert not all(ps.ok for ps in corollary_partial_sums(c).values())
    assert all(ps.ok for ps in corollary_partial_sums(c, include_singular=True).values())


def test_immersed_corollary():
    assert corollary_immersed(census(gadgets.WP(2))).status == "holds"
    assert corollary_immersed(census(gadgets.FE(1))).status == "vacuous"
    assert corollary_immersed(Census(T={2: (1, 0)})).status == "fails"


def test_identity_report():
    c = census(gadgets.SW(2, Sign.PLUS))
    rep = identity_report(c, [WeightSequence.linear(0, 2), WeightSequence.triangular(0, 2)])
    assert rep.ok and rep.weighted_total == 0
    assert set(rep.weighted_totals) == {"linear", "triangular"}
    bad = identity_report(c + Census(B={1: (1, 0)}), [WeightSequence.constant(1, 0, 2)])
    assert not bad.ok and bad.weighted_total == 1
