"""Archimedean engine: Gamma kernels, Siegel-section oracle agreement, the
Whittaker normalisation, Gamma-product algebra and the region identities."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from gspzeta.arch import (
    AffineArg,
    ArchLParams,
    GammaProduct,
    arch_gl2_shift,
    arch_spin_shifts,
    arch_tensor_shifts,
    gamma_C,
    gamma_numeric,
    moriyama_formula,
    siegel_section_quadrature,
    siegel_section_value,
    verify_regionD_identity,
    verify_regionF_identity,
    whittaker_transform,
    zeta_value,
)
from gspzeta.errors import (
    AllSamplesAtPoles,
    PoleAt,
    RegionMismatch,
    WeightOutOfRange,
)


# comparisons against reference expressions need more ambient precision
# than mpmath's default 15 digits
mp.mp.dps = 40


def rel_err(a, b):
    return abs(mp.mpmathify(a) - mp.mpmathify(b)) / abs(mp.mpmathify(b))


class TestGammaKernels:
    def test_classical_values(self):
        assert rel_err(gamma_numeric(1), 1) < 1e-25
        assert rel_err(gamma_numeric(5), 24) < 1e-25
        assert rel_err(gamma_numeric(Fraction(1, 2)), mp.sqrt(mp.pi)) < 1e-25

    def test_reflection_branch(self):
        # Gamma(-1/2) = -2 sqrt(pi), computed through the reflection path
        assert rel_err(gamma_numeric(-0.5), -2 * mp.sqrt(mp.pi)) < 1e-25

    def test_pole(self):
        for z in (0, -1, -7):
            with pytest.raises(PoleAt):
                gamma_numeric(z)

    def test_gamma_C_recurrence(self):
        rng = random.Random(11)
        for _ in range(10):
            s = mp.mpc(rng.uniform(0.5, 6), rng.uniform(-2, 2))
            lhs = gamma_C(s + 1)
            rhs = s / (2 * mp.pi) * gamma_C(s)
            assert rel_err(lhs, rhs) < 1e-12


class TestAffineArg:
    def test_arithmetic(self):
        a = AffineArg(Fraction(1, 2), 1, -1)
        b = AffineArg(Fraction(3, 2), 0, 1)
        assert (a + b).exact_value(2, 5) == Fraction(4)
        assert (-a).coef_s1 == -1
        assert str(a.shift(Fraction(5, 2))) == "s1 - s2 + 3"


class TestArchLParams:
    def test_sorted_descending(self):
        p = ArchLParams((Fraction(1, 2), Fraction(5, 2)))
        assert p.shifts == (Fraction(5, 2), Fraction(1, 2))

    def test_spin_shifts(self):
        assert arch_spin_shifts(4, 4).shifts == (
            Fraction(5, 2), Fraction(1, 2))
        assert arch_spin_shifts(5, 3).shifts == (
            Fraction(5, 2), Fraction(3, 2))

    def test_override(self):
        p = arch_spin_shifts(4, 4, override=[2, 1])
        assert p.shifts == (Fraction(2), Fraction(1))

    def test_gl2_shift(self):
        assert arch_gl2_shift(5).shifts == (Fraction(2),)

    def test_tensor_shifts_reflect(self):
        # (6, 4), ell = 6: nu = 5/2, mu = {7/2, 3/2} -> {6, 1, 4, 1}
        p = arch_tensor_shifts(6, 4, 6)
        assert sorted(p.shifts) == [Fraction(1), Fraction(1),
                                    Fraction(4), Fraction(6)]
        assert all(m >= 0 for m in p.shifts)

    def test_value_and_poles(self):
        p = ArchLParams((Fraction(1, 2),))
        with pytest.raises(PoleAt):
            p.value(Fraction(-1, 2))
        v = p.value(Fraction(1, 2))
        assert rel_err(v, 2 / (2 * mp.pi)) < 1e-20


class TestGammaProduct:
    def _sample(self, seed):
        rng = random.Random(seed)
        return GammaProduct(
            coeff=Fraction(rng.randint(1, 5), rng.randint(1, 3)),
            i_power=rng.randrange(4),
            sign_power=rng.randrange(2),
            pi_exponent=AffineArg(rng.randint(-2, 2), 1, 0),
            two_pi_pow=AffineArg(0, 0, rng.randint(-1, 1)),
            numerator_args=(AffineArg(rng.randint(1, 3), 1, 0),),
            denominator_args=(AffineArg(rng.randint(1, 3), 0, 1),))

    def test_associative(self):
        a, b, c = (self._sample(i) for i in range(3))
        assert (a * b) * c == a * (b * c)

    def test_division_is_exact_inverse(self):
        a, b = self._sample(4), self._sample(5)
        assert (a * b) / b == a
        assert a / a == GammaProduct(coeff=1)

    def test_cancellation(self):
        arg = AffineArg(1, 1, 0)
        g = GammaProduct(numerator_args=(arg,), denominator_args=(arg,))
        assert g.numerator_args == ()
        assert g.denominator_args == ()

    def test_numeric_value(self):
        g = GammaProduct(numerator_args=(AffineArg(0, 1, 0),))
        assert rel_err(g.value(5), 24) < 1e-20


class TestMoriyama:
    def test_denominator_args(self):
        gp = moriyama_formula(4, 2, 10)
        assert [str(a) for a in gp.denominator_args] == \
            ["s1 - 3/2", "s2 + 7/2"]

    def test_k_zero(self):
        gp = moriyama_formula(4, 2, 0)
        assert [str(a) for a in gp.denominator_args] == \
            ["s1 + 7/2", "s2 - 3/2"]

    def test_sign_alternates(self):
        for k in range(0, 10):
            ratio = moriyama_formula(4, 2, k + 1) / moriyama_formula(4, 2, k)
            assert ratio.sign_power == 1
            assert len(ratio.numerator_args) == 2
            assert len(ratio.denominator_args) == 2

    def test_index_range(self):
        with pytest.raises(WeightOutOfRange):
            moriyama_formula(4, 2, 11)

    def test_constant_stays_symbolic(self):
        assert moriyama_formula(3, 1, 2).constant_symbol == "C"


class TestSiegelSection:
    def test_known_values(self):
        assert rel_err(siegel_section_value(2, 1),
                       -1 / (2 * mp.pi ** 2)) < 1e-25
        assert rel_err(siegel_section_value(1, Fraction(1, 2)),
                       mp.mpc(0, 1) / mp.pi) < 1e-25

    def test_oracle_agreement(self):
        rng = random.Random(3)
        for _ in range(10):
            c = rng.randint(1, 5)
            s = Fraction(rng.randint(1, 8), 2)
            v = siegel_section_value(c, s)
            o = siegel_section_quadrature(c, s)
            assert rel_err(o, v) < 1e-8, (c, s)

    def test_pole(self):
        with pytest.raises(PoleAt):
            siegel_section_value(2, Fraction(-1))


class TestWhittaker:
    def test_normalization(self):
        ref = mp.e ** (-2 * mp.pi)
        for c in (1, 2, 3):
            assert rel_err(whittaker_transform(c, 1, 20), ref) < 1e-4, c

    def test_t_scaling(self):
        values = []
        for t in (0.5, 1, 2):
            w = whittaker_transform(2, t, 20)
            values.append(w / (mp.mpf(t) ** 1 * mp.e ** (-2 * mp.pi * t)))
        assert max(abs(v - values[0]) for v in values) < 1e-10

    def test_guards(self):
        with pytest.raises(WeightOutOfRange):
            whittaker_transform(0, 1)
        with pytest.raises(WeightOutOfRange):
            whittaker_transform(2, -1)


class TestRegionIdentities:
    def test_region_d_examples(self):
        rep = verify_regionD_identity(
            6, 4, 2, 6, [2.3, mp.mpc(3.1, 0.7), 4.0])
        assert rep["max_rel_err"] < 1e-9
        assert rep["poles_skipped"] == []

    def test_region_d_pole_skipped(self):
        rep = verify_regionD_identity(6, 4, 2, 6, [Fraction(1), 2.3])
        assert rep["poles_skipped"] == ["1"]
        assert rep["max_rel_err"] < 1e-9

    def test_region_d_all_poles(self):
        with pytest.raises(AllSamplesAtPoles):
            verify_regionD_identity(6, 4, 2, 6, [Fraction(1)])

    def test_region_d_bad_weights(self):
        with pytest.raises(RegionMismatch):
            verify_regionD_identity(7, 5, 1, 7, [2.5])

    def test_region_f_examples(self):
        assert verify_regionF_identity(
            5, 3, 3, 1, [1.7, 2.4])["max_rel_err"] < 1e-9
        assert verify_regionF_identity(
            6, 2, 5, 1, [3.2])["max_rel_err"] < 1e-9

    def test_region_f_rejects_degenerate(self):
        with pytest.raises(RegionMismatch):
            verify_regionF_identity(5, 3, 4, 0, [2.0])


class TestZetaValue:
    def test_region_d(self):
        v = zeta_value("D", 6, 4, 2, 6, 3)
        tensor = arch_tensor_shifts(6, 4, 6)
        assert rel_err(v, (-2 * mp.pi) ** 6 * tensor.value(3)) < 1e-20

    def test_region_f(self):
        v = zeta_value("F", 5, 3, 3, 1, Fraction(3, 2))
        tensor = arch_tensor_shifts(5, 3, 1)
        assert rel_err(v, -tensor.value(Fraction(3, 2))) < 1e-20

    def test_region_mismatch(self):
        with pytest.raises(RegionMismatch):
            zeta_value("F", 6, 4, 2, 6, 3)
        with pytest.raises(RegionMismatch):
            zeta_value("X", 6, 4, 2, 6, 3)
