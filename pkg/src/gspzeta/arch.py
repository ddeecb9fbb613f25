"""High-precision archimedean engine: Gamma products, Siegel-section
closed forms with quadrature oracles, the torus-Mellin Whittaker formula,
and the region-(F)/(D) Gamma identities.

Conventions.  Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).  The archimedean spin
factor attached to a holomorphic Siegel weight (k1, k2) is
L(s) = Gamma_C(s + (k1+k2-3)/2) Gamma_C(s + (k1-k2+1)/2); the GL2 factor
for weight ell carries the single shift (ell-1)/2; the degree-8 tensor
factor carries the four Hodge-pair shifts mu_i +- nu with nu = (ell-1)/2,
reflected to non-negative arguments.  These recipes are configuration
defaults; their correctness is *established* by the identity checks below,
never assumed.

Pole locations are decided by exact rational arithmetic on affine argument
forms before any floating-point work.  All numerics go through mpmath with
an explicit working precision (``GSPZETA_DIGITS`` sets the default).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

from .errors import (
    AllSamplesAtPoles,
    PoleAt,
    QuadratureNotConverged,
    RegionMismatch,
    WeightOutOfRange,
)

DEFAULT_DIGITS = 30


def default_digits() -> int:
    return int(os.environ.get("GSPZETA_DIGITS", DEFAULT_DIGITS))


def _digits(precision: Optional[int]) -> int:
    return default_digits() if precision is None else int(precision)


# -- affine arguments ------------------------------------------------------

@dataclass(frozen=True)
class AffineArg:
    """c + a*s1 + b*s2 with exact rational coefficients."""

    constant: Fraction = Fraction(0)
    coef_s1: Fraction = Fraction(0)
    coef_s2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "coef_s1", Fraction(self.coef_s1))
        object.__setattr__(self, "coef_s2", Fraction(self.coef_s2))

    def __add__(self, other: "AffineArg") -> "AffineArg":
        return AffineArg(self.constant + other.constant,
                         self.coef_s1 + other.coef_s1,
                         self.coef_s2 + other.coef_s2)

    def __neg__(self) -> "AffineArg":
        return AffineArg(-self.constant, -self.coef_s1, -self.coef_s2)

    def __sub__(self, other: "AffineArg") -> "AffineArg":
        return self + (-other)

    def shift(self, value) -> "AffineArg":
        return AffineArg(self.constant + Fraction(value),
                         self.coef_s1, self.coef_s2)

    def exact_value(self, s1, s2=Fraction(0)) -> Fraction:
        return (self.constant + self.coef_s1 * Fraction(s1)
                + self.coef_s2 * Fraction(s2))

    def value(self, s1, s2=0):
        return (_mpq(self.constant) + mp.mpmathify(s1) * _mpq(self.coef_s1)
                + mp.mpmathify(s2) * _mpq(self.coef_s2))

    def __str__(self) -> str:
        parts = []
        for coef, name in ((self.coef_s1, "s1"), (self.coef_s2, "s2")):
            if coef == 1:
                parts.append(name)
            elif coef == -1:
                parts.append(f"-{name}")
            elif coef:
                parts.append(f"{coef}*{name}")
        if self.constant or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts).replace("+ -", "- ")


def _mpq(x: Fraction):
    return mp.mpf(x.numerator) / x.denominator


def _is_nonpositive_integer_exact(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _is_pole_numeric(z, tol=Fraction(1, 10 ** 9)) -> bool:
    z = mp.mpmathify(z)
    if abs(mp.im(z)) > float(tol):
        return False
    r = mp.re(z)
    n = mp.nint(r)
    return n <= 0 and abs(r - n) <= float(tol)


# -- gamma kernels ---------------------------------------------------------

def gamma_numeric(z, precision: Optional[int] = None):
    """Gamma(z) to the requested decimal precision.

    For Re(z) < 1/2 the reflection formula pi / (sin(pi z) Gamma(1 - z)) is
    applied first, so the underlying series only ever sees arguments in the
    right half-plane."""
    with mp.workdps(_digits(precision) + 5):
        z = mp.mpmathify(z)
        if _is_pole_numeric(z, tol=Fraction(1, 10 ** 12)):
            raise PoleAt(f"Gamma pole at {z}", location=z)
        if mp.re(z) < 0.5:
            return +(mp.pi / (mp.sinpi(z) * mp.gamma(1 - z)))
        return +mp.gamma(z)


def gamma_C(s, precision: Optional[int] = None):
    """Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)."""
    with mp.workdps(_digits(precision) + 5):
        s = mp.mpmathify(s)
        return +(2 * (2 * mp.pi) ** (-s) * gamma_numeric(s, precision))


# -- archimedean L-parameters ---------------------------------------------

@dataclass(frozen=True)
class ArchLParams:
    """L(s) = prod_i Gamma_C(s + mu_i); shifts sorted descending."""

    shifts: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "shifts",
            tuple(sorted((Fraction(m) for m in self.shifts), reverse=True)))

    def poles_hit(self, s) -> list:
        """Shifts mu with s + mu at a Gamma pole (exact when s is exact)."""
        hit = []
        for mu in self.shifts:
            if isinstance(s, (int, Fraction)):
                if _is_nonpositive_integer_exact(Fraction(s) + mu):
                    hit.append(mu)
            elif _is_pole_numeric(mp.mpmathify(s) + _mpq(mu)):
                hit.append(mu)
        return hit

    def value(self, s, precision: Optional[int] = None):
        if self.poles_hit(s):
            raise PoleAt(f"L-factor pole at s = {s}", location=s)
        with mp.workdps(_digits(precision) + 5):
            out = mp.mpf(1)
            sm = mp.mpmathify(s)
            for mu in self.shifts:
                out *= gamma_C(sm + _mpq(mu), precision)
            return +out

    def to_json(self):
        return {"shifts": [str(m) for m in self.shifts]}


def arch_spin_shifts(k1: int, k2: int,
                     override: Optional[Sequence] = None) -> ArchLParams:
    """Spin-factor shifts {(k1+k2-3)/2, (k1-k2+1)/2}; an override replaces
    them verbatim."""
    if not (k1 >= k2 >= 2):
        raise WeightOutOfRange("require k1 >= k2 >= 2")
    if override is not None:
        return ArchLParams(tuple(Fraction(x) for x in override))
    return ArchLParams((Fraction(k1 + k2 - 3, 2), Fraction(k1 - k2 + 1, 2)))


def arch_gl2_shift(ell: int) -> ArchLParams:
    if ell < 1:
        raise WeightOutOfRange("require ell >= 1")
    return ArchLParams((Fraction(ell - 1, 2),))


def arch_tensor_shifts(k1: int, k2: int, ell: int,
                       spin_override: Optional[Sequence] = None) -> ArchLParams:
    """Degree-8 tensor shifts {mu_i + nu, |mu_i - nu|}, nu = (ell-1)/2."""
    spin = arch_spin_shifts(k1, k2, spin_override)
    nu = Fraction(ell - 1, 2)
    shifts = []
    for mu in spin.shifts:
        shifts.extend((mu + nu, abs(mu - nu)))
    return ArchLParams(tuple(shifts))


# -- Gamma products --------------------------------------------------------

_ZERO = AffineArg()


@dataclass(frozen=True)
class GammaProduct:
    """coeff * i^{i_power} * (-1)^{sign_power} * pi^{pi_exponent}
    * (2 pi)^{two_pi_pow} * prod Gamma(num) / prod Gamma(den), all exponents
    and Gamma arguments affine in (s1, s2).  An optional symbolic constant
    is carried along untouched."""

    coeff: Fraction = Fraction(1)
    i_power: int = 0
    sign_power: int = 0
    pi_exponent: AffineArg = _ZERO
    two_pi_pow: AffineArg = _ZERO
    numerator_args: tuple = ()
    denominator_args: tuple = ()
    constant_symbol: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "i_power", self.i_power % 4)
        object.__setattr__(self, "sign_power", self.sign_power % 2)
        num, den = list(self.numerator_args), list(self.denominator_args)
        for a in list(num):  # cancel identical Gamma factors exactly
            if a in den:
                num.remove(a)
                den.remove(a)
        object.__setattr__(self, "numerator_args", tuple(num))
        object.__setattr__(self, "denominator_args", tuple(den))

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        if self.constant_symbol and other.constant_symbol:
            sym = f"{self.constant_symbol}*{other.constant_symbol}"
        else:
            sym = self.constant_symbol or other.constant_symbol
        return GammaProduct(
            self.coeff * other.coeff,
            self.i_power + other.i_power,
            self.sign_power + other.sign_power,
            self.pi_exponent + other.pi_exponent,
            self.two_pi_pow + other.two_pi_pow,
            self.numerator_args + other.numerator_args,
            self.denominator_args + other.denominator_args,
            sym)

    def inverse(self) -> "GammaProduct":
        if self.constant_symbol:
            sym = f"{self.constant_symbol}^-1"
        else:
            sym = None
        return GammaProduct(
            1 / self.coeff, -self.i_power, self.sign_power,
            -self.pi_exponent, -self.two_pi_pow,
            self.denominator_args, self.numerator_args, sym)

    def __truediv__(self, other: "GammaProduct") -> "GammaProduct":
        return self * other.inverse()

    def poles_hit(self, s1, s2=Fraction(0)) -> list:
        hit = []
        for a in self.numerator_args:
            if isinstance(s1, (int, Fraction)) and isinstance(
                    s2, (int, Fraction)):
                if _is_nonpositive_integer_exact(a.exact_value(s1, s2)):
                    hit.append(a)
            elif _is_pole_numeric(a.value(s1, s2)):
                hit.append(a)
        return hit

    def value(self, s1, s2=0, precision: Optional[int] = None):
        """Numeric value (the symbolic constant, if any, is taken as 1)."""
        if self.poles_hit(s1, s2):
            raise PoleAt(f"Gamma pole at (s1, s2) = ({s1}, {s2})",
                         location=(s1, s2))
        with mp.workdps(_digits(precision) + 5):
            s1m, s2m = mp.mpmathify(s1), mp.mpmathify(s2)
            out = _mpq(self.coeff) * mp.mpc(0, 1) ** self.i_power \
                * (-1) ** self.sign_power
            out *= mp.pi ** self.pi_exponent.value(s1m, s2m)
            out *= (2 * mp.pi) ** self.two_pi_pow.value(s1m, s2m)
            for a in self.numerator_args:
                out *= gamma_numeric(a.value(s1m, s2m), precision)
            for a in self.denominator_args:
                arg = a.value(s1m, s2m)
                if _is_pole_numeric(arg):
                    return mp.mpc(0)  # Gamma pole in the denominator
                out /= gamma_numeric(arg, precision)
            return +out

    def to_json(self):
        return {
            "coeff": str(self.coeff),
            "i_power": self.i_power,
            "sign_power": self.sign_power,
            "pi_exponent": str(self.pi_exponent),
            "two_pi_pow": str(self.two_pi_pow),
            "numerator_args": [str(a) for a in self.numerator_args],
            "denominator_args": [str(a) for a in self.denominator_args],
            "constant_symbol": self.constant_symbol,
        }


GammaProduct.ONE = GammaProduct()


def moriyama_formula(r1: int, r2: int, k: int,
                     constant_symbol: str = "C") -> GammaProduct:
    """Torus-Mellin transform of the k-th Whittaker-basis vector:

    C * (-1)^k * L(s1 - s2 + 1/2) L(s1 + s2 - 1/2)
      / (pi^{s1 + s2 - 1/2} Gamma(s1 + (r1+3-k)/2) Gamma(s2 + (-1-r2+k)/2))

    with L the spin factor for (k1, k2) = (r1+3, r2+3); C stays symbolic."""
    d = r1 + r2 + 4
    if not 0 <= k <= d:
        raise WeightOutOfRange(f"index k = {k} outside [0, {d}]")
    spin = arch_spin_shifts(r1 + 3, r2 + 3)
    half = Fraction(1, 2)
    num = []
    two_pi = _ZERO
    for base in (AffineArg(half, 1, -1), AffineArg(-half, 1, 1)):
        for mu in spin.shifts:
            arg = base.shift(mu)
            num.append(arg)
            two_pi = two_pi - arg  # the (2 pi)^{-s} of each Gamma_C
    return GammaProduct(
        coeff=Fraction(2) ** len(num),        # the leading 2 of each Gamma_C
        sign_power=k,
        pi_exponent=AffineArg(half, -1, -1),  # 1 / pi^{s1 + s2 - 1/2}
        two_pi_pow=two_pi,
        numerator_args=tuple(num),
        denominator_args=(
            AffineArg(Fraction(r1 + 3 - k, 2), 1, 0),
            AffineArg(Fraction(-1 - r2 + k, 2), 0, 1),
        ),
        constant_symbol=constant_symbol)


# -- Siegel sections -------------------------------------------------------

def siegel_section_value(c: int, s, precision: Optional[int] = None):
    """Closed form 2^{1-c} i^c pi^{-(s + c/2)} Gamma(s + c/2)."""
    if c < 1:
        raise WeightOutOfRange("require c >= 1")
    with mp.workdps(_digits(precision) + 5):
        sm = mp.mpmathify(s)
        arg = sm + mp.mpf(c) / 2
        if isinstance(s, (int, Fraction)) and \
                _is_nonpositive_integer_exact(Fraction(s) + Fraction(c, 2)):
            raise PoleAt(f"pole at s + c/2 = {Fraction(s) + Fraction(c, 2)}",
                         location=s)
        return +(mp.mpf(2) ** (1 - c) * mp.mpc(0, 1) ** c
                 * mp.pi ** (-arg) * gamma_numeric(arg, precision))


def siegel_section_quadrature(c: int, s, precision: Optional[int] = None):
    """Oracle: 2^{1-c} i^c * integral over R of |t|^{c + 2s - 1} e^{-pi t^2},
    by tanh-sinh quadrature (the value of the section at 1 as a Mellin
    transform of the Schwartz function along the torus)."""
    if c < 1:
        raise WeightOutOfRange("require c >= 1")
    with mp.workdps(_digits(precision) + 5):
        sm = mp.mpmathify(s)
        expo = c + 2 * sm - 1

        def integrand(t):
            return mp.exp(-mp.pi * t * t) * t ** expo

        # even integrand: twice the [0, inf) piece
        integral = 2 * mp.quad(integrand, [0, mp.inf])
        return +(mp.mpf(2) ** (1 - c) * mp.mpc(0, 1) ** c * integral)


# -- Whittaker transform ---------------------------------------------------

def whittaker_transform(c: int, t, precision: Optional[int] = None):
    """Whittaker transform of the weight-c section at s = c/2, evaluated at
    diag(t, 1) by oscillatory quadrature:

    W(t) = 1/2 * t^{c/2} 2^{1-c} pi^{-c} Gamma(c)
             * integral over R of (t - ix)^{-c} e^{-2 pi i x} dx.

    The 1/2 is the measure normalisation matching q-expansion conventions;
    the reference value is W(t) = t^{c/2} e^{-2 pi t}."""
    if c < 1:
        raise WeightOutOfRange("require c >= 1")
    digits = _digits(precision)
    with mp.workdps(digits + 5):
        tm = mp.mpmathify(t)
        if tm <= 0:
            raise WeightOutOfRange("require t > 0")

        def integrand(x):
            # (t - ix)^{-c} e^{-2 pi i x} + its x -> -x mirror; real by symmetry
            return 2 * mp.re((tm - mp.mpc(0, 1) * x) ** (-c)
                             * mp.exp(-2 * mp.pi * mp.mpc(0, 1) * x))

        integral = mp.quadosc(integrand, [0, mp.inf], period=1)
        value = (mp.mpf(1) / 2 * tm ** (mp.mpf(c) / 2)
                 * mp.mpf(2) ** (1 - c) * mp.pi ** (-c)
                 * gamma_numeric(c, digits) * integral)
        if not mp.isfinite(value):
            raise QuadratureNotConverged(
                f"oscillatory quadrature diverged for c = {c}, t = {t}")
        return +value


def whittaker_normalization_check(c: int = 2,
                                  precision: Optional[int] = None):
    """The transform at the identity; reference value e^{-2 pi}."""
    return whittaker_transform(c, 1, precision)


# -- region identities and zeta values ------------------------------------

def _identity_report(samples, lhs_fn, rhs_fn, precision):
    digits = _digits(precision)
    rows, skipped = [], []
    max_err = mp.mpf(0)
    with mp.workdps(digits + 5):
        for s in samples:
            try:
                lhs, rhs = lhs_fn(s), rhs_fn(s)
            except PoleAt:
                skipped.append(str(s))
                continue
            denom = max(abs(lhs), abs(rhs))
            err = abs(lhs - rhs) / denom if denom else mp.mpf(0)
            max_err = max(max_err, err)
            rows.append({"s": str(s), "rel_err": float(err)})
    if not rows:
        raise AllSamplesAtPoles("every sample hit a Gamma pole")
    return {"max_rel_err": float(max_err), "samples": rows,
            "poles_skipped": skipped}


def verify_regionD_identity(k1: int, k2: int, c1: int, c2: int,
                            s_samples: Sequence,
                            precision: Optional[int] = None) -> dict:
    """L(s + nu) L(s - nu) = L_tensor(s) * (2 pi)^{c1}
    Gamma(s - c1/2) / Gamma(s + c1/2), nu = (c2 - 1)/2, under the default
    shift recipe; requires c2 - c1 = k1 - k2 + 2, c1 >= 1, c2 <= k1."""
    if c2 - c1 != k1 - k2 + 2 or c1 < 1 or c2 > k1:
        raise RegionMismatch(
            f"(k1,k2,c1,c2)=({k1},{k2},{c1},{c2}) violates the region-D- "
            "constraints")
    spin = arch_spin_shifts(k1, k2)
    tensor = arch_tensor_shifts(k1, k2, c2)
    nu = _mpq(Fraction(c2 - 1, 2))
    half_c1 = _mpq(Fraction(c1, 2))
    digits = _digits(precision)

    def lhs(s):
        sm = mp.mpmathify(s)
        return spin.value(sm + nu, digits) * spin.value(sm - nu, digits)

    def rhs(s):
        sm = mp.mpmathify(s)
        for z in (sm - half_c1, sm + half_c1):
            if _is_pole_numeric(z):
                raise PoleAt(f"Gamma pole at {z}", location=s)
        return (tensor.value(sm, digits) * (2 * mp.pi) ** c1
                * gamma_numeric(sm - half_c1, digits)
                / gamma_numeric(sm + half_c1, digits))

    return _identity_report(s_samples, lhs, rhs, precision)


def verify_regionF_identity(k1: int, k2: int, c1: int, c2: int,
                            s_samples: Sequence,
                            precision: Optional[int] = None) -> dict:
    """With s2 = c2/2 substituted: L(s - s2 + 1/2) L(s + s2 - 1/2)
    = L_tensor(s); requires c1 + c2 = k1 - k2 + 2, c1, c2 >= 1."""
    if c1 + c2 != k1 - k2 + 2 or c1 < 1 or c2 < 1:
        raise RegionMismatch(
            f"(k1,k2,c1,c2)=({k1},{k2},{c1},{c2}) violates the region-F "
            "constraints")
    spin = arch_spin_shifts(k1, k2)
    tensor = arch_tensor_shifts(k1, k2, c2)
    nu = _mpq(Fraction(c2 - 1, 2))
    digits = _digits(precision)

    def lhs(s):
        sm = mp.mpmathify(s)
        return spin.value(sm - nu, digits) * spin.value(sm + nu, digits)

    def rhs(s):
        return tensor.value(s, digits)

    return _identity_report(s_samples, lhs, rhs, precision)


def zeta_value(region: str, k1: int, k2: int, c1: int, c2: int, s,
               precision: Optional[int] = None):
    """Archimedean zeta integral up to its normalised constant:
    region F: (-1)^{c2} L_tensor(s); region D: (-2 pi)^{c2} L_tensor(s)."""
    if region == "F":
        if c1 + c2 != k1 - k2 + 2 or c1 < 1 or c2 < 1:
            raise RegionMismatch("weights are not region-F consistent")
        prefactor = mp.mpf(-1) ** c2
    elif region == "D":
        if c2 - c1 != k1 - k2 + 2 or c1 < 1 or c2 > k1:
            raise RegionMismatch("weights are not region-D- consistent")
        prefactor = (-2 * mp.pi) ** c2
    else:
        raise RegionMismatch(f"unknown region {region!r}")
    tensor = arch_tensor_shifts(k1, k2, c2)
    digits = _digits(precision)
    with mp.workdps(digits + 5):
        return +(prefactor * tensor.value(s, digits))
