"""Weight lattice, Weyl groups, Kostant representatives, BGG-shifted
weights and the branching decomposition used by the restriction to H.

Weights are triples (r1, r2; c); the central character c is carried but may
be omitted (None) since most operations do not consume it.  Weyl elements
are signed permutations of the two torus coordinates; composition is
function composition, and the matrix realisation in groups.py induces the
same action on weights (checked in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InconsistentWeights, NotDominant, WeightOutOfRange

RHO = (2, 1)


@dataclass(frozen=True)
class Weight:
    r1: int
    r2: int
    c: Optional[int] = None

    def __post_init__(self):
        if self.c is not None and (self.r1 + self.r2 - self.c) % 2 != 0:
            raise WeightOutOfRange(
                f"central character parity violated: {self}")

    def pair(self):
        return (self.r1, self.r2)

    def is_dominant_G(self) -> bool:
        return self.r1 >= self.r2 >= 0

    def is_dominant_H(self) -> bool:
        return self.r1 >= 0 and self.r2 >= 0

    def is_dominant_M(self) -> bool:
        return self.r1 >= self.r2

    def to_json(self):
        return {"r1": self.r1, "r2": self.r2, "c": self.c}


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation on two letters: e_i -> signs[i] * e_{perm[i]}."""

    perm: tuple
    signs: tuple

    def act(self, weight) -> tuple:
        v = weight.pair() if isinstance(weight, Weight) else tuple(weight)
        out = [0, 0]
        for i in range(2):
            out[self.perm[i]] = self.signs[i] * v[i]
        return tuple(out)

    def act_weight(self, weight: Weight) -> Weight:
        r1, r2 = self.act(weight)
        return Weight(r1, r2, weight.c)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other) acts as self after other
        perm = tuple(self.perm[other.perm[i]] for i in range(2))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]]
                      for i in range(2))
        return WeylElement(perm, signs)

    @property
    def is_identity(self) -> bool:
        return self.perm == (0, 1) and self.signs == (1, 1)


IDENTITY = WeylElement((0, 1), (1, 1))
S1 = WeylElement((1, 0), (1, 1))        # swap r1 <-> r2
S2 = WeylElement((0, 1), (1, -1))       # flip sign of r2
F1 = WeylElement((0, 1), (-1, 1))       # flip sign of r1 (H generator)

_GENERATORS = {"G": (S1, S2), "H": (F1, S2)}


def _closure(generators):
    """Group closure with BFS word lengths."""
    lengths = {IDENTITY: 0}
    frontier = [IDENTITY]
    while frontier:
        new = []
        for w in frontier:
            for s in generators:
                v = w * s
                if v not in lengths:
                    lengths[v] = lengths[w] + 1
                    new.append(v)
        frontier = new
    return lengths


_LENGTHS = {g: _closure(gens) for g, gens in _GENERATORS.items()}


def length(group: str, w: WeylElement) -> int:
    return _LENGTHS[group][w]


def weyl_group(group: str) -> list:
    """All Weyl elements of G (order 8) or H (order 4), sorted by length."""
    table = _LENGTHS[group]
    return sorted(table, key=lambda w: (table[w], w.perm, w.signs))


@dataclass(frozen=True)
class KostantSet:
    group: str
    reps: tuple

    @property
    def lengths(self):
        return tuple(length(self.group, w) for w in self.reps)


def kostant_reps(group: str) -> KostantSet:
    """Minimal-length representatives of W_M \\ W_G (for G, with W_M the
    Siegel-Levi Weyl group {1, s1}); for H the whole Weyl group, ordered so
    the lengths come out (0, 1, 1, 2)."""
    if group == "H":
        return KostantSet("H", tuple(weyl_group("H")))
    w_m = {IDENTITY, S1}
    table = _LENGTHS["G"]
    seen = set()
    reps = []
    for w in weyl_group("G"):
        coset = frozenset(m * w for m in w_m)
        if coset in seen:
            continue
        seen.add(coset)
        reps.append(min(coset, key=lambda v: table[v]))
    reps.sort(key=lambda v: table[v])
    return KostantSet("G", tuple(reps))


def kappa(i: int, nu: Weight) -> Weight:
    """rho-shifted weight w_i(nu + rho) - rho for the i-th Kostant
    representative of G."""
    if not 0 <= i <= 3:
        raise WeightOutOfRange("index must be in 0..3")
    r1s, r2s = nu.r1 + RHO[0], nu.r2 + RHO[1]
    if not (r1s >= r2s >= 0):
        raise NotDominant(f"nu + rho = ({r1s}, {r2s}) is not dominant")
    w = kostant_reps("G").reps[i]
    a, b = w.act((r1s, r2s))
    return Weight(a - RHO[0], b - RHO[1], nu.c)


@dataclass(frozen=True)
class KTypeParams:
    lambda1: int
    lambda2: int
    d: int
    tau1: tuple
    tau2: tuple


def ktype_params(r1: int, r2: int) -> KTypeParams:
    """Discrete-series parameters (lambda1, lambda2) = (r1+3, -1-r2),
    d = lambda1 - lambda2, and the two minimal K-types."""
    if not (r1 >= r2 >= -1):
        raise WeightOutOfRange("require r1 >= r2 >= -1")
    lam1, lam2 = r1 + 3, -1 - r2
    return KTypeParams(
        lambda1=lam1,
        lambda2=lam2,
        d=lam1 - lam2,
        tau1=(r1 + 3, -r2 - 1),
        tau2=(r2 + 1, -r1 - 3),
    )


def branch_restriction(k1: int, k2: int) -> list:
    """Weights of the restriction to H of the Levi irrep of highest weight
    kappa_2 = (k2-4, -k1): the pairs (k2-4-j, j-k1) for 0 <= j <= k1+k2-4."""
    if not (k1 >= k2 >= 2):
        raise WeightOutOfRange("require k1 >= k2 >= 2")
    return [(k2 - 4 - j, j - k1) for j in range(k1 + k2 - 3)]


def branch_contains(k1: int, k2: int, c1: int, c2: int) -> bool:
    """Whether (c1-2, -c2) occurs in branch_restriction(k1, k2)."""
    if c2 - c1 != k1 - k2 + 2:
        return False
    j = k1 - c2
    return 0 <= j <= k1 + k2 - 4


def moriyama_index(region: str, r1: int, r2: int, c1: int, c2: int) -> int:
    """The Whittaker-basis index k selecting the K-type that pairs with
    holomorphic forms of weights (c1, c2).

    Region F: k = r1 + 3 - c1 (equivalently r2 + 1 + c2), requiring
    c1 + c2 = r1 - r2 + 2 and c_i >= 1.
    Region D: k = r1 + 3 + c1 = c2 + r2 + 1, requiring
    c2 - c1 = r1 - r2 + 2, c1 >= 1 and c2 <= r1 + 3.
    """
    d = r1 + r2 + 4
    if region == "F":
        if c1 < 1 or c2 < 1:
            raise InconsistentWeights("region F requires c1, c2 >= 1")
        k = r1 + 3 - c1
        other = r2 + 1 + c2
        if c1 + c2 != r1 - r2 + 2 or k != other:
            raise InconsistentWeights(
                f"region F index mismatch: {k} vs {other}")
    elif region == "D":
        if c1 < 1:
            raise InconsistentWeights("region D requires c1 >= 1")
        if c2 > r1 + 3:
            raise InconsistentWeights("region D requires c2 <= r1 + 3")
        k = r1 + 3 + c1
        other = c2 + r2 + 1
        if c2 - c1 != r1 - r2 + 2 or k != other:
            raise InconsistentWeights(
                f"region D index mismatch: {k} vs {other}")
    else:
        raise InconsistentWeights(f"unknown region {region!r}")
    if not 0 <= k <= d:
        raise InconsistentWeights(f"index k = {k} outside [0, {d}]")
    return k
