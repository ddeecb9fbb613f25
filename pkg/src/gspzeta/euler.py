"""Exact symbolic non-archimedean Euler factors in Hecke parameters.

Everything is expressed over the generator q (p = q^2) together with the
GL2 parameters a1, b1 (first factor) and a2, b2 (second factor), the
Siegel-induction parameters beta, gamma and lam (the value of the inducing
character at p), plus two deliberately independent generators:

* beta_dp, gamma_dp -- the beta, gamma entering the second reduction step
  (the Rankin-Selberg Delta'); they are introduced without definition in
  the source material, so they stay free and may be bound explicitly.
* beta_iw -- the eigenvalue entering the Iwahori-level scaling.

Euler factors are stored factored, as multisets of reciprocal roots; all
divisibility claims are multiset inclusions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional

from .errors import FactorAbsent, LevelTooSmall, NonHalfIntegerS
from .exact import LaurentPoly, RationalFn

GENERATORS = ("q", "a1", "b1", "a2", "b2", "beta", "gamma", "lam",
              "beta_dp", "gamma_dp", "beta_iw")


def _g(name: str, power: int = 1) -> RationalFn:
    return RationalFn.gen(name, power)


@dataclass(frozen=True)
class HeckeParams:
    """Symbol table for the Hecke parameters, with optional exact bindings.

    ``bindings`` maps generator names to exact rationals (or Laurent
    polynomials); unbound generators stay symbolic.  alpha = q^3 * lam is a
    defined abbreviation, never an independent generator.
    """

    bindings: Mapping = field(default_factory=dict)

    def sym(self, name: str) -> RationalFn:
        value = _g(name)
        if self.bindings:
            value = value.substitute(dict(self.bindings))
        return value

    @property
    def alpha(self) -> RationalFn:
        return self.sym("q") ** 3 * self.sym("lam")


@dataclass(frozen=True)
class EulerFactor:
    """prefactor * prod_i (1 - mu_i * S), S standing for p^{-s}.

    With an empty S-slot (the "evaluated" usage) the same object denotes
    prefactor * prod (1 - mu_i); ``value`` computes that product exactly.
    """

    factors: tuple
    prefactor: RationalFn = field(default_factory=lambda: RationalFn.const(1))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def value(self) -> RationalFn:
        out = self.prefactor
        for mu in self.factors:
            out = out * (RationalFn.const(1) - mu)
        return out

    def expand(self, s_name: str = "S") -> RationalFn:
        """Expanded polynomial in the formal variable S = p^{-s}."""
        s = _g(s_name)
        out = self.prefactor
        for mu in self.factors:
            out = out * (RationalFn.const(1) - mu * s)
        return out

    def __mul__(self, other: "EulerFactor") -> "EulerFactor":
        return EulerFactor(self.factors + other.factors,
                           self.prefactor * other.prefactor)

    def scale(self, scalar) -> "EulerFactor":
        return EulerFactor(self.factors, self.prefactor * scalar)

    def substitute(self, bindings) -> "EulerFactor":
        return EulerFactor(tuple(mu.substitute(bindings) for mu in self.factors),
                           self.prefactor.substitute(bindings))

    def factor_multiset(self) -> Counter:
        return Counter(str(mu) for mu in self.factors)

    def to_json(self):
        return {"prefactor": str(self.prefactor),
                "factors": sorted(str(mu) for mu in self.factors)}


def gl2_factor(a, b) -> EulerFactor:
    """Degree-2 factor (1 - a S)(1 - b S)."""
    return EulerFactor((RationalFn._coerce(a), RationalFn._coerce(b)))


def spin_from_siegel_induction(beta, gamma, lam) -> tuple:
    """Reciprocal roots {lam, lam*beta, lam*gamma, lam*beta*gamma} of the
    degree-4 factor of a Siegel-induced representation."""
    beta, gamma, lam = map(RationalFn._coerce, (beta, gamma, lam))
    return (lam, lam * beta, lam * gamma, lam * beta * gamma)


def tensor_params(x, y) -> tuple:
    """All pairwise products; |x| * |y| elements."""
    return tuple(RationalFn._coerce(a) * RationalFn._coerce(b)
                 for a in x for b in y)


def _prefactor_delta() -> RationalFn:
    # p^2 / (p^2 - 1) in q
    q4 = LaurentPoly.gen("q", 4)
    return RationalFn(q4, q4 - 1)


def _prefactor_delta_prime() -> RationalFn:
    # p / (p + 1)
    q2 = LaurentPoly.gen("q", 2)
    return RationalFn(q2, q2 + 1)


def combined_prefactor() -> RationalFn:
    """p^3 / ((p+1)^2 (p-1)) in q."""
    q2 = LaurentPoly.gen("q", 2)
    return RationalFn(LaurentPoly.gen("q", 6),
                      (q2 + 1) ** 2 * (q2 - 1))


def delta_factor(h: HeckeParams) -> EulerFactor:
    """Delta = p^2/(p^2-1) * prod over (x, y) in {a1,b1} x {a2,b2} of
    (1 - p^2 / (alpha x y)), with alpha = p^{3/2} lam."""
    p2 = h.sym("q") ** 4
    alpha = h.alpha
    factors = tuple(p2 / (alpha * h.sym(x) * h.sym(y))
                    for x in ("a1", "b1") for y in ("a2", "b2"))
    return EulerFactor(factors, _prefactor_delta())


def delta_prime(h: HeckeParams, s) -> EulerFactor:
    """Delta'_s = p/(p+1) * prod over x in {a1,b1}, B in {beta_dp,gamma_dp}
    of (1 - p^{2-s} / (B x a2)); s must be half-integral so p^{2-s} is an
    exact power of q."""
    s = Fraction(s)
    exponent = 4 - 2 * s  # power of q giving p^{2-s}
    if exponent.denominator != 1:
        raise NonHalfIntegerS(f"s = {s} does not give an exact power of q")
    ps = h.sym("q") ** int(exponent) if exponent >= 0 else \
        RationalFn.const(1) / h.sym("q") ** int(-exponent)
    factors = tuple(ps / (h.sym(bg) * h.sym(x) * h.sym("a2"))
                    for bg in ("beta_dp", "gamma_dp") for x in ("a1", "b1"))
    return EulerFactor(factors, _prefactor_delta_prime())


def euler_D(h: HeckeParams) -> EulerFactor:
    """The degree-8 product: the four Delta factors together with the four
    Delta' factors at s = 1/2, without the rational prefactors."""
    d = delta_factor(h)
    dp = delta_prime(h, Fraction(1, 2))
    return EulerFactor(d.factors + dp.factors)


# The factor deleted by the "greatest common divisor" variant is the
# Delta' factor indexed by (gamma_dp, b1); at s = 1/2 its root is
# p^{3/2} / (gamma_dp * b1 * a2).
def _deleted_root(h: HeckeParams) -> RationalFn:
    return h.sym("q") ** 3 / (h.sym("gamma_dp") * h.sym("b1") * h.sym("a2"))


def euler_D_improved(h: HeckeParams) -> EulerFactor:
    """euler_D with the (gamma_dp, b1) factor removed; 7 factors remain."""
    full = euler_D(h)
    target = _deleted_root(h)
    remaining = list(full.factors)
    for i, mu in enumerate(remaining):
        if mu == target:
            del remaining[i]
            break
    else:
        raise FactorAbsent("designated gcd factor not present")
    return EulerFactor(tuple(remaining), full.prefactor)


def depleted_value(h: HeckeParams) -> EulerFactor:
    """p^3/((p+1)^2 (p-1)) * E^(D), the p-depleted-vector evaluation."""
    return euler_D(h).scale(combined_prefactor())


def iwahori_value(h: HeckeParams, ell: int) -> EulerFactor:
    """Iwahori-level evaluation: (p^2/(beta_iw * b2))^ell times the depleted
    value.  The exponent follows the proof (ell), not the statement (t)."""
    if ell < 2:
        raise LevelTooSmall("require ell >= 2")
    scaling = (h.sym("q") ** 4 / (h.sym("beta_iw") * h.sym("b2"))) ** ell
    return depleted_value(h).scale(scaling)


def sixteen_factor(h: HeckeParams, s: Fraction,
                   normalization_shift=None) -> EulerFactor:
    """Degree-16 tensor factor: roots spin x {a1,b1} x {a2,b2} scaled by
    p^{-shift}.  A None shift keeps it symbolic via the extra generator
    ``psh`` standing for p^{-shift}."""
    spin = spin_from_siegel_induction(h.sym("beta"), h.sym("gamma"),
                                      h.sym("lam"))
    if normalization_shift is None:
        scale = _g("psh")
    else:
        shift = Fraction(normalization_shift)
        expo = -2 * shift
        if expo.denominator != 1:
            raise NonHalfIntegerS("shift must be half-integral")
        scale = _g("q", int(expo))
    roots = tensor_params(tensor_params(spin, (h.sym("a1"), h.sym("b1"))),
                          (h.sym("a2"), h.sym("b2")))
    _ = Fraction(s)  # s stays formal via S; recorded for the caller
    return EulerFactor(tuple(r * scale for r in roots))


# -- normalization audit ---------------------------------------------------

# Monomial arithmetic on exponent vectors over AUDIT_GENS; every root in
# sight is a plain monomial, so the search never touches full RationalFn.
AUDIT_GENS = ("q", "a1", "b1", "a2", "beta", "gamma", "lam")


def _mono(**powers) -> tuple:
    return tuple(powers.get(g, 0) for g in AUDIT_GENS)


def _madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mneg(a):
    return tuple(-x for x in a)


def normalization_audit(shift_candidates=None, central_exponents=range(-2, 3)):
    """Search for a binding of (beta_dp, gamma_dp), a central-character
    relation eliminating b2, and a half-integer normalisation shift making
    the 8 roots of E^(D) (evaluated at s = 1/2) a sub-multiset of the 16
    tensor roots.  Returns a report with every successful combination."""
    if shift_candidates is None:
        shift_candidates = [Fraction(n, 2) for n in range(-6, 7)]

    q = _mono(q=1)
    lam = _mono(lam=1)
    beta = _mono(beta=1)
    gamma = _mono(gamma=1)
    a1, b1, a2 = _mono(a1=1), _mono(b1=1), _mono(a2=1)

    def qpow(n):
        return _mono(q=n)

    # candidate bindings for the Delta' parameters: q^j * lam^i * {beta, gamma}
    base_pairs = [(beta, gamma), (gamma, beta)]
    candidates = []
    for i in range(0, 3):
        for j in range(0, 5):
            for m1, m2 in base_pairs:
                scalem = _madd(qpow(j), tuple(x * i for x in lam))
                candidates.append(((i, j, "bg" if m1 == beta else "gb"),
                                   _madd(scalem, m1), _madd(scalem, m2)))

    hits = []
    for e in central_exponents:
        # b2 := q^(2e) / (a1 b1 a2 lam^2 beta gamma)
        b2 = _madd(qpow(2 * e),
                   _mneg(_madd(_madd(_madd(a1, b1), a2),
                               _madd(_madd(lam, lam), _madd(beta, gamma)))))
        spin = [lam, _madd(lam, beta), _madd(lam, gamma),
                _madd(lam, _madd(beta, gamma))]
        # Delta roots: q / (lam x y)
        delta_roots = [_madd(q, _mneg(_madd(lam, _madd(x, y))))
                       for x in (a1, b1) for y in (a2, b2)]
        for tag, bdp, gdp in candidates:
            # Delta' roots at s = 1/2: q^3 / (B x a2)
            dp_roots = [_madd(qpow(3), _mneg(_madd(B, _madd(x, a2))))
                        for B in (bdp, gdp) for x in (a1, b1)]
            lhs = Counter(delta_roots + dp_roots)
            for shift in shift_candidates:
                expo = -1 - 2 * shift  # q-power of p^{-1/2 - shift}
                if expo.denominator != 1:
                    continue
                scale = qpow(int(expo))
                rhs = Counter(
                    _madd(_madd(rho, _madd(x, y)), scale)
                    for rho, x, y in product(spin, (a1, b1), (a2, b2)))
                if all(rhs[k] >= v for k, v in lhs.items()):
                    i, j, order = tag
                    hits.append({
                        "beta_dp": f"q^{j}*lam^{i}*"
                                   f"{'beta' if order == 'bg' else 'gamma'}",
                        "gamma_dp": f"q^{j}*lam^{i}*"
                                    f"{'gamma' if order == 'bg' else 'beta'}",
                        "central_exponent": e,
                        "shift": str(shift),
                    })
    return {"found": bool(hits), "matches": hits,
            "n_shift_candidates": len(list(shift_candidates))}
