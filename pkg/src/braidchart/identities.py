"""Exact checks of the branch/triple/singular point counting identities.

For a census with tables B, T, D and integer weights x, the weighted total

    sum sigma * x_p * B(p, sigma) + sum delta * y_q * T(q, delta)
        + sum eps * z_r * D(r, eps),     y_p = x_p - x_{p-1},  z_p = 2 x_p

vanishes for every chart.  It is the weighted sum over p of the balance law

    B(p,+) - B(p,-) + 2 (D(p,+) - D(p,-)) = (T(p+1,+) - T(p+1,-)) - (T(p,+) - T(p,-)).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .census import Census
from .errors import WindowError


@dataclass(frozen=True)
class WeightSequence:
    """Integer weights ``x[p]`` for ``lo <= p <= hi``."""

    lo: int
    values: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        vals = tuple(self.values)
        for v in vals:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError("weights must be integers; use from_rationals for fractions")
        object.__setattr__(self, "values", vals)

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __getitem__(self, p: int) -> int:
        if not self.lo <= p <= self.hi:
            raise WindowError(f"weight x_{p} outside window [{self.lo}, {self.hi}]")
        return self.values[p - self.lo]

    def covers(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    @classmethod
    def from_function(cls, f: Callable[[int], int], lo: int, hi: int, name: str = "") -> "WeightSequence":
        return cls(lo, tuple(int(f(p)) for p in range(lo, hi + 1)), name)

    @classmethod
    def from_rationals(cls, lo: int, values: Iterable, name: str = "") -> "WeightSequence":
        """Clear denominators; every identity is homogeneous so zero stays zero."""
        fracs = [Fraction(v) for v in values]
        scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        return cls(lo, tuple(int(f * scale) for f in fracs), name)

    @classmethod
    def constant(cls, c: int, lo: int, hi: int) -> "WeightSequence":
        return cls.from_function(lambda p: c, lo, hi, f"constant:{c}")

    @classmethod
    def linear(cls, lo: int, hi: int) -> "WeightSequence":
        return cls.from_function(lambda p: p, lo, hi, "linear")

    @classmethod
    def triangular(cls, lo: int, hi: int) -> "WeightSequence":
        return cls.from_function(lambda p: p * (p + 1) // 2, lo, hi, "triangular")

    @classmethod
    def random(cls, rng: random.Random, lo: int, hi: int, bound: int = 1000) -> "WeightSequence":
        return cls(lo, tuple(rng.randint(-bound, bound) for _ in range(lo, hi + 1)), "random")


def required_window(c: Census) -> tuple[int, int] | None:
    """Smallest window a weight sequence must cover for ``c``; None if c is empty."""
    support = c.support()
    if not support:
        return None
    return support[0] - 1, support[-1]


def _check_window(c: Census, x: WeightSequence) -> None:
    need = required_window(c)
    if need is not None and not x.covers(*need):
        raise WindowError(
            f"weights cover [{x.lo}, {x.hi}] but the census needs [{need[0]}, {need[1]}]"
        )


def derive_y(x: WeightSequence) -> dict[int, int]:
    if x.hi <= x.lo:
        raise WindowError("need at least two weights to form differences")
    return {p: x[p] - x[p - 1] for p in range(x.lo + 1, x.hi + 1)}


def derive_z(x: WeightSequence) -> dict[int, int]:
    return {p: 2 * x[p] for p in range(x.lo, x.hi + 1)}


def weighted_sum(c: Census, x: WeightSequence) -> int:
    _check_window(c, x)
    total = 0
    for p, s, n in c.signed_items("B"):
        total += s * x[p] * n
    for q, s, n in c.signed_items("T"):
        total += s * (x[q] - x[q - 1]) * n
    for r, s, n in c.signed_items("D"):
        total += s * 2 * x[r] * n
    return total


def star_terms(c: Census, p: int) -> tuple[int, int]:
    """Both sides of the balance law at index p."""
    lhs = c.diff("B", p) + 2 * c.diff("D", p)
    rhs = c.diff("T", p + 1) - c.diff("T", p)
    return lhs, rhs


def check_star(c: Census) -> dict[int, bool]:
    need = required_window(c)
    if need is None:
        return {}
    out = {}
    for p in range(need[0], need[1] + 1):
        lhs, rhs = star_terms(c, p)
        out[p] = lhs == rhs
    return out


class BranchSum(NamedTuple):
    lhs: int
    ok: bool


def corollary_branch_sum(c: Census, include_singular: bool = False) -> BranchSum:
    """Signed branch point count, which vanishes for embedded surfaces.

    With ``include_singular`` the singular points enter with weight 2, the
    form that holds for immersed surfaces as well.
    """
    lhs = sum(c.diff("B", p) for p in c.B)
    if include_singular:
        lhs += 2 * sum(c.diff("D", p) for p in c.D)
    return BranchSum(lhs, lhs == 0)


class PartialSum(NamedTuple):
    t_diff: int
    prefix: int
    neg_suffix: int
    ok: bool


def corollary_partial_sums(c: Census, include_singular: bool = False) -> dict[int, PartialSum]:
    """T(p,+) - T(p,-) against the branch differences below and at-or-above p."""
    support = c.support()
    if not support:
        return {}
    lo, hi = support[0], support[-1] + 1

    def bd(i: int) -> int:
        d = c.diff("B", i)
        if include_singular:
            d += 2 * c.diff("D", i)
        return d

    out = {}
    for p in range(lo, hi + 1):
        t = c.diff("T", p)
        prefix = sum(bd(i) for i in range(lo - 1, p))
        suffix = -sum(bd(i) for i in range(p, hi + 1))
        out[p] = PartialSum(t, prefix, suffix, t == prefix == suffix)
    return out


class ImmersedCheck(NamedTuple):
    vacuous: bool
    ok: bool

    @property
    def status(self) -> str:
        if self.vacuous:
            return "vacuous"
        return "holds" if self.ok else "fails"


def corollary_immersed(c: Census) -> ImmersedCheck:
    """Without branch points the triple points pair off by sign at every index."""
    if c.B:
        return ImmersedCheck(True, True)
    return ImmersedCheck(False, all(plus == minus for plus, minus in c.T.values()))


class CorollaryResult(NamedTuple):
    claim: str
    lhs: int
    rhs: int
    ok: bool


@dataclass(frozen=True)
class IdentityReport:
    star: dict[int, bool]
    edge_count: dict[int, bool]
    weighted_totals: dict[str, int]
    corollaries: tuple[CorollaryResult, ...]

    @property
    def weighted_total(self) -> int:
        """Sum of absolute weighted totals; zero iff every weighting vanished."""
        return sum(abs(v) for v in self.weighted_totals.values())

    @property
    def ok(self) -> bool:
        return (
            all(self.star.values())
            and all(self.edge_count.values())
            and all(v == 0 for v in self.weighted_totals.values())
            and all(r.ok for r in self.corollaries)
        )


def default_window(c: Census, degree: int | None = None) -> tuple[int, int]:
    need = required_window(c)
    lo, hi = need if need else (0, 1)
    if degree is not None:
        lo, hi = min(lo, 0), max(hi, degree - 1)
    return lo, max(hi, lo + 1)


def identity_report(c: Census, weights: Iterable[WeightSequence] = ()) -> IdentityReport:
    """Run every identity on a census.

    Corollaries are evaluated in their singular-aware form so that the report
    is meaningful for immersed surfaces too; for censuses without singular
    points this coincides with the embedded statements.
    """
    from .census import edge_count_by_index

    totals = {}
    for i, x in enumerate(weights):
        key = x.name or f"w{i}"
        if key in totals:
            key = f"{key}#{i}"
        totals[key] = weighted_sum(c, x)

    cors = []
    bs = corollary_branch_sum(c, include_singular=bool(c.D))
    cors.append(CorollaryResult("signed branch points" + (" + 2 signed singular points" if c.D else ""), bs.lhs, 0, bs.ok))
    for p, ps in corollary_partial_sums(c, include_singular=bool(c.D)).items():
        cors.append(CorollaryResult(f"partial sums at {p}", ps.t_diff, ps.prefix, ps.ok))
    imm = corollary_immersed(c)
    if not imm.vacuous:
        bad = sum(abs(a - b) for a, b in c.T.values())
        cors.append(CorollaryResult("immersed: T(p,+) = T(p,-)", bad, 0, imm.ok))
    return IdentityReport(check_star(c), edge_count_by_index(c), totals, tuple(cors))
