"""Critical-region classification for GSp4 x GL2 weights.

For a holomorphic Siegel weight (k1, k2) and a GL2 weight ell, the critical
points s fall in three polygonal regions (A), (D), (F), all symmetric about
s = 1/2; the gap weights ell = k1 +- (k2 - 2) admit no critical values at
all.  The (D-) refinement additionally requires ell <= k1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import CriticalityViolated, NotInDMinus, WeightOutOfRange


@dataclass(frozen=True)
class WeightTuple:
    k1: int
    k2: int
    ell: int
    s: Fraction

    def __post_init__(self):
        if not (self.k1 >= self.k2 >= 2):
            raise WeightOutOfRange("require k1 >= k2 >= 2")
        if self.ell < 1:
            raise WeightOutOfRange("require ell >= 1")
        s = Fraction(self.s)
        if (2 * s).denominator != 1:
            raise WeightOutOfRange("s must be half-integral")
        object.__setattr__(self, "s", s)

    @property
    def w(self) -> int:
        return self.k1 + self.k2 + self.ell - 4

    def parity_ok(self) -> bool:
        # critical s satisfy s = -w/2 mod Z
        return (self.s + Fraction(self.w, 2)).denominator == 1


@dataclass(frozen=True)
class RegionResult:
    region: Optional[str]          # "A", "D", "F" or None
    is_d_minus: bool
    m: Optional[int]
    w: int

    def to_json(self):
        return {"region": self.region, "d_minus": self.is_d_minus,
                "m": self.m, "w": self.w}


@dataclass(frozen=True)
class EisensteinParams:
    c1: int
    c1prime: int
    t: int

    def to_json(self):
        return {"c1": self.c1, "c1prime": self.c1prime, "t": self.t}


def _bound(k1: int, k2: int, ell: int) -> Optional[tuple]:
    """(region, bound on |2s-1|) determined by ell alone, or None."""
    if ell in (k1 + k2 - 2, k1 - k2 + 2):
        return None
    if ell >= k1 + k2 - 1:
        return ("A", ell - (k1 + k2 - 1))
    if k1 - k2 + 3 <= ell <= k1 + k2 - 3:
        return ("D", min(k1 + k2 - 3 - ell, ell - (k1 - k2 + 3)))
    if ell <= k1 - k2 + 1:
        return ("F", k1 - k2 + 1 - ell)
    return None


def classify(wt: WeightTuple) -> RegionResult:
    """Region of (k1, k2, ell, s), with the Hodge-sum invariant m and the
    motivic weight w.  Parity failure or a gap weight yields region None."""
    w = wt.w
    none = RegionResult(None, False, None, w)
    if not wt.parity_ok():
        return none
    rb = _bound(wt.k1, wt.k2, wt.ell)
    if rb is None:
        return none
    region, bound = rb
    if abs(2 * wt.s - 1) > bound:
        return none
    m = {
        "A": 2 * wt.k1 + 2 * wt.k2 - 6,
        "D": wt.k1 + wt.k2 + wt.ell - 4,
        "F": 2 * wt.k2 + 2 * wt.ell - 6,
    }[region]
    d_minus = region == "D" and wt.ell <= wt.k1
    return RegionResult(region, d_minus, m, w)


def critical_s_set(k1: int, k2: int, ell: int) -> list:
    """All critical s for (k1, k2, ell): correct parity and inside the
    region bound.  Empty for the gap weights.  Symmetric under s <-> 1-s."""
    rb = _bound(k1, k2, ell)
    if rb is None:
        return []
    _, bound = rb
    w = k1 + k2 + ell - 4
    # s = -w/2 mod Z: integers for even w, half-integers for odd w
    start = Fraction(-w, 2)
    offset = start - (start.numerator // start.denominator)  # 0 or 1/2
    # s = offset + j with |2s - 1| <= bound
    lo = Fraction(1 - bound, 2) - offset
    hi = Fraction(1 + bound, 2) - offset
    jmin = -((-lo.numerator) // lo.denominator)  # ceil
    jmax = hi.numerator // hi.denominator        # floor
    return [offset + j for j in range(jmin, jmax + 1)]


def eisenstein_params(wt: WeightTuple) -> EisensteinParams:
    """Eisenstein-series weight data (c1, c1', t) for a D- weight tuple."""
    result = classify(wt)
    if result.region != "D" or not result.is_d_minus:
        raise NotInDMinus(f"{wt} is not in region D-")
    c1 = int(1 + abs(2 * wt.s - 1))
    c1prime = wt.ell - (wt.k1 - wt.k2 + 2)
    if (wt.s - Fraction(c1prime, 2)).denominator != 1 \
            or abs(2 * wt.s - 1) > c1prime - 1:
        raise CriticalityViolated(
            f"s = {wt.s} is not critical for c1' = {c1prime}")
    t2 = c1prime - c1
    if t2 < 0 or t2 % 2:
        raise CriticalityViolated(f"c1' - c1 = {t2} is not an even "
                                  "non-negative integer")
    return EisensteinParams(c1, c1prime, t2 // 2)
