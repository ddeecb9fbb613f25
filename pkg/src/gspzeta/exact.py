"""Exact arithmetic: rationals, sparse Laurent polynomials, rational
functions and matrices over them.

Coefficients are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  Laurent polynomials are sparse maps from integer exponent
vectors to coefficients, over an ordered tuple of named generators.  The
distinguished generator ``q`` satisfies p = q^2 throughout the package, so
half-integer powers of p stay exact.

Rational functions are reduced by monomial content only; equality is
cross-multiplication.  All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    DenominatorVanishes,
    DimensionMismatch,
    ExponentOverflow,
    SingularInput,
)

_EXP_BOUND = 2 ** 62

ScalarLike = Union[int, Fraction]
PolyLike = Union[int, Fraction, "LaurentPoly"]
RationalLike = Union[int, Fraction, "LaurentPoly", "RationalFn"]


def _check_exp(e: int) -> int:
    if abs(e) >= _EXP_BOUND:
        raise ExponentOverflow(f"exponent {e} out of range")
    return e


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with Fraction coefficients."""

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Iterable[str], terms: Mapping[tuple, Fraction]):
        gens = tuple(gens)
        clean = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(_check_exp(int(e)) for e in exps)
            if len(exps) != len(gens):
                raise DimensionMismatch("exponent vector length != #generators")
            clean[exps] = coeff
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(value: ScalarLike) -> "LaurentPoly":
        value = Fraction(value)
        if value == 0:
            return LaurentPoly((), {})
        return LaurentPoly((), {(): value})

    @staticmethod
    def gen(name: str, power: int = 1, coeff: ScalarLike = 1) -> "LaurentPoly":
        return LaurentPoly((name,), {(power,): Fraction(coeff)})

    @staticmethod
    def monomial(powers: Mapping[str, int], coeff: ScalarLike = 1) -> "LaurentPoly":
        gens = tuple(sorted(powers))
        return LaurentPoly(gens, {tuple(powers[g] for g in gens): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return sum(self.terms.values(), Fraction(0))

    def used_gens(self) -> tuple:
        used = [False] * len(self.gens)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    # -- generator-universe bookkeeping -----------------------------------

    def with_gens(self, gens: tuple) -> "LaurentPoly":
        """Re-express over a superset of generators (sorted union order)."""
        if gens == self.gens:
            return self
        index = {g: i for i, g in enumerate(gens)}
        for g in self.gens:
            if g not in index:
                raise ValueError(f"generator {g} missing from target universe")
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(gens)
            for g, e in zip(self.gens, exps):
                new[index[g]] = e
            terms[tuple(new)] = coeff
        return LaurentPoly(gens, terms)

    @staticmethod
    def _merge(a: "LaurentPoly", b: "LaurentPoly"):
        if a.gens == b.gens:
            return a, b
        gens = tuple(sorted(set(a.gens) | set(b.gens)))
        return a.with_gens(gens), b.with_gens(gens)

    @staticmethod
    def _coerce(value: PolyLike) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.const(value)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: PolyLike) -> "LaurentPoly":
        a, b = LaurentPoly._merge(self, LaurentPoly._coerce(other))
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return LaurentPoly(a.gens, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: PolyLike) -> "LaurentPoly":
        return self + (-LaurentPoly._coerce(other))

    def __rsub__(self, other: PolyLike) -> "LaurentPoly":
        return LaurentPoly._coerce(other) - self

    def __mul__(self, other: PolyLike) -> "LaurentPoly":
        a, b = LaurentPoly._merge(self, LaurentPoly._coerce(other))
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exps = tuple(_check_exp(x + y) for x, y in zip(e1, e2))
                terms[exps] = terms.get(exps, Fraction(0)) + c1 * c2
        return LaurentPoly(a.gens, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("use RationalFn for negative powers of polynomials")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other: RationalLike) -> "RationalFn":
        return RationalFn(self, 1) / other

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        a, b = LaurentPoly._merge(self, LaurentPoly._coerce(other))
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            gens = self.used_gens()
            norm = self if gens == self.gens else LaurentPoly(
                gens, {}) if not self.terms else self._strip(gens)
            key = (norm.gens, tuple(sorted(norm.terms.items())))
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    def _strip(self, gens: tuple) -> "LaurentPoly":
        index = [self.gens.index(g) for g in gens]
        return LaurentPoly(
            gens,
            {tuple(e[i] for i in index): c for e, c in self.terms.items()},
        )

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "LaurentPoly":
        """Evaluation homomorphism.  Bound symbols absent from the generator
        universe are ignored.  Binding a generator that occurs with negative
        exponent to a non-invertible value raises DenominatorVanishes."""
        relevant = {g: v for g, v in bindings.items() if g in self.gens}
        if not relevant:
            return self
        result = LaurentPoly.const(0)
        for exps, coeff in self.terms.items():
            term = LaurentPoly.const(coeff)
            for g, e in zip(self.gens, exps):
                if e == 0:
                    continue
                if g in relevant:
                    value = LaurentPoly._coerce(relevant[g])
                    if e < 0:
                        if not value.is_constant() or value.constant_value() == 0:
                            raise DenominatorVanishes(
                                f"cannot bind {g}^({e}) to non-invertible value")
                        term = term * LaurentPoly.const(
                            Fraction(1) / value.constant_value()) ** (-e)
                    else:
                        term = term * value ** e
                else:
                    term = term * LaurentPoly.gen(g, e)
            result = result + term
        return result

    # -- canonical text ----------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lexicographic exponent order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                      reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for g, e in zip(self.gens, exps):
                if e == 1:
                    factors.append(g)
                elif e != 0:
                    factors.append(f"{g}^{e}")
            mag = abs(coeff)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Named entry point for the three ring operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


class RationalFn:
    """Quotient of Laurent polynomials, reduced by monomial content."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: PolyLike = 1):
        num = LaurentPoly._coerce(num)
        den = LaurentPoly._coerce(den)
        if den.is_zero():
            raise DenominatorVanishes("zero denominator")
        num, den = LaurentPoly._merge(num, den)
        num, den = _reduce_content(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @staticmethod
    def _coerce(value: RationalLike) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        return RationalFn(value, 1)

    @staticmethod
    def const(value: ScalarLike) -> "RationalFn":
        return RationalFn(LaurentPoly.const(value), 1)

    @staticmethod
    def gen(name: str, power: int = 1) -> "RationalFn":
        if power >= 0:
            return RationalFn(LaurentPoly.gen(name, power), 1)
        return RationalFn(1, LaurentPoly.gen(name, -power))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- field operations --------------------------------------------------

    def __add__(self, other: RationalLike) -> "RationalFn":
        o = RationalFn._coerce(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: RationalLike) -> "RationalFn":
        return self + (-RationalFn._coerce(other))

    def __rsub__(self, other: RationalLike) -> "RationalFn":
        return RationalFn._coerce(other) - self

    def __mul__(self, other: RationalLike) -> "RationalFn":
        o = RationalFn._coerce(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "RationalFn":
        o = RationalFn._coerce(other)
        if o.is_zero():
            raise DenominatorVanishes("division by zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: RationalLike) -> "RationalFn":
        return RationalFn._coerce(other) / self

    def __pow__(self, n: int) -> "RationalFn":
        if n < 0:
            return RationalFn(self.den, self.num) ** (-n)
        return RationalFn(self.num ** n, self.den ** n)

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise DenominatorVanishes("zero has no inverse")
        return RationalFn(self.den, self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RationalFn, LaurentPoly, int, Fraction)):
            return NotImplemented
        o = RationalFn._coerce(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        # constants hash like Fractions; general values by canonical string
        if self.is_constant():
            return hash(self.constant_value())
        return hash(str(self))

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "RationalFn":
        den = self.den.substitute(bindings)
        if den.is_zero():
            raise DenominatorVanishes("denominator vanishes under binding")
        return RationalFn(self.num.substitute(bindings), den)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num} / {den}"

    def __repr__(self) -> str:
        return f"RationalFn({self})"


def _reduce_content(num: LaurentPoly, den: LaurentPoly):
    """Divide numerator and denominator by their common monomial content and
    normalise so the denominator's graded-lex leading coefficient is a
    positive integer-free unit (monic leading term)."""
    if num.is_zero():
        one = LaurentPoly.const(1).with_gens(den.gens) if den.gens else \
            LaurentPoly.const(1)
        return LaurentPoly(den.gens, {}), one
    n = len(num.gens)
    mins = [None] * n
    for poly in (num, den):
        for exps in poly.terms:
            for i, e in enumerate(exps):
                mins[i] = e if mins[i] is None else min(mins[i], e)
    shift = tuple(-(m or 0) for m in mins)
    lead_exps, lead_coeff = den.sorted_terms()[0]
    scale = Fraction(1) / lead_coeff

    def apply(poly):
        return LaurentPoly(
            poly.gens,
            {tuple(e + s for e, s in zip(exps, shift)): c * scale
             for exps, c in poly.terms.items()},
        )

    return apply(num), apply(den)


class ExactMatrix:
    """Dense matrix with RationalFn entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(RationalFn._coerce(e) for e in row)
                        for row in entries)
        if not entries or not entries[0]:
            raise DimensionMismatch("empty matrix")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix([[1 if i == j else 0 for j in range(n)]
                            for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"cannot multiply {self.rows}x{self.cols} by "
                    f"{other.rows}x{other.cols}")
            return ExactMatrix([
                [sum((self.entries[i][k] * other.entries[k][j]
                      for k in range(self.cols)), RationalFn.const(0))
                 for j in range(other.cols)]
                for i in range(self.rows)])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar: RationalLike) -> "ExactMatrix":
        s = RationalFn._coerce(scalar)
        return ExactMatrix([[e * s for e in row] for row in self.entries])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return ExactMatrix([
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for r1, r2 in zip(self.entries, other.entries)
                   for a, b in zip(r1, r2))

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(str(e) for row in self.entries for e in row)))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def det(self) -> RationalFn:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        n = self.rows
        if n == 1:
            return self.entries[0][0]
        total = RationalFn.const(0)
        top = self.entries[0]
        for j in range(n):
            if top[j].is_zero():
                continue
            minor = ExactMatrix([row[:j] + row[j + 1:]
                                 for row in self.entries[1:]])
            term = top[j] * minor.det()
            total = total + (term if j % 2 == 0 else -term)
        return total

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        aug = [list(row) + [RationalFn.const(1 if i == j else 0)
                            for j in range(n)]
               for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, 2 * n) if r < n
                          and not aug[r][col].is_zero()), None)
            if pivot is None:
                raise SingularInput("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [e * inv for e in aug[col]]
            for r in range(n):
                if r == col or aug[r][col].is_zero():
                    continue
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return ExactMatrix([row[n:] for row in aug])

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "ExactMatrix":
        return ExactMatrix([[e.substitute(bindings) for e in row]
                            for row in self.entries])

    def to_strings(self):
        return [[str(e) for e in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


def matrix_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a * b


def substitute(f: RationalFn, bindings: Mapping[str, PolyLike]) -> RationalFn:
    return RationalFn._coerce(f).substitute(bindings)
