from fractions import Fraction

import numpy as np
import pytest

from src.cremona.birmap import families
from src.cremona.padic.padic_num import PadicError, PadicNum, PrecisionExhausted
from src.cremona.padic.tate import (
    CoefficientEscapesR,
    DenominatorNotUnit,
    TruncatedSeries,
    chart_normalize,
    gauss_norm,
)
from src.cremona.poly.domains import PadicDomain
from src.cremona.poly.homog_poly import HomogPoly, monomials


class TestTruncatedSeries:
    """Test suite for truncated power series over Z_p."""

    @pytest.fixture
    def x(self):
        return TruncatedSeries.variable(3, 12, 2, 16, 0)

    @pytest.fixture
    def one(self):
        return TruncatedSeries.constant(3, 12, 2, 16, 1)

    def test_truncation(self, x):
        assert (x**17).is_zero()
        assert not (x**16).is_zero()

    def test_inverse_geometric_series(self, x, one):
        inverse = (one + x * 3).inverse()
        for k in range(6):
            assert inverse.coefficient((k, 0)) == PadicNum.from_rational((-3) ** k, 3, 12)

    def test_inverse_to_working_precision(self, x, one):
        series = one + x * 3
        assert gauss_norm(series * series.inverse() - one) <= Fraction(1, 3**12)

    def test_inverse_needs_unit(self, x, one):
        with pytest.raises(DenominatorNotUnit):
            (one * 3 + x).inverse()
        with pytest.raises(DenominatorNotUnit):
            (one + x).inverse()

    def test_evaluate(self, x, one):
        series = one + x * 2
        value = series.evaluate([PadicNum.from_rational(4, 3, 12), PadicNum.from_rational(0, 3, 12)])
        assert value == PadicNum.from_rational(9, 3, 12)

    def test_from_homog_dehomogenizes(self):
        x = [HomogPoly.variable(3, i) for i in range(3)]
        series = TruncatedSeries.from_homog(x[0] * x[1] + x[2] * x[2], 0, 3, 12, 16)
        assert series.coefficient((1, 0)) == PadicNum.from_rational(1, 3, 12)
        assert series.coefficient((0, 2)) == PadicNum.from_rational(1, 3, 12)


class TestGaussNorm:
    """Test suite for the Gauss norm."""

    def test_norm_is_max_coefficient(self):
        qp = PadicDomain(3, 12)
        f = HomogPoly(qp, 3, 1, {(1, 0, 0): 9, (0, 1, 0): Fraction(1, 3), (0, 0, 1): 2})
        assert gauss_norm(f) == 3

    def test_rational_coefficients_rejected(self):
        with pytest.raises(PadicError):
            gauss_norm(HomogPoly.variable(3, 0))

    def test_undetermined_norm(self):
        loose = PadicNum.zero(3, 12, 1)
        series = TruncatedSeries(3, 12, 1, 4, {(0,): loose, (1,): 9})
        with pytest.raises(PrecisionExhausted):
            gauss_norm(series)

    def test_multiplicative(self):
        """Gauss's lemma: ||f*g|| = ||f|| * ||g||."""
        rng = np.random.default_rng(5)
        qp = PadicDomain(5, 12)
        for _ in range(50):
            polys = []
            for _ in range(2):
                terms = {
                    e: Fraction(int(rng.choice([1, 2, 3, 4, -1, -2])))
                    * Fraction(5) ** int(rng.integers(-2, 4))
                    for e in monomials(3, 2)
                    if rng.random() < 0.7
                }
                polys.append(HomogPoly(qp, 3, 2, terms or {(2, 0, 0): 1}))
            f, g = polys
            assert gauss_norm(f * g) == gauss_norm(f) * gauss_norm(g)

    def test_ultrametric(self):
        """||f + g|| <= max(||f||, ||g||), with equality when the two norms differ."""
        rng = np.random.default_rng(11)
        qp = PadicDomain(5, 12)
        differing = 0
        for _ in range(50):
            polys = []
            for _ in range(2):
                terms = {
                    e: Fraction(int(rng.choice([1, 2]))) * Fraction(5) ** int(rng.integers(-2, 4))
                    for e in monomials(3, 2)
                    if rng.random() < 0.7
                }
                polys.append(HomogPoly(qp, 3, 2, terms or {(2, 0, 0): 1}))
            f, g = polys
            total = gauss_norm(f + g)
            assert total <= max(gauss_norm(f), gauss_norm(g))
            if gauss_norm(f) != gauss_norm(g):
                differing += 1
                assert total == max(gauss_norm(f), gauss_norm(g))
        assert differing > 0


class TestChartNormalize:
    """Test suite for chart normalization of birational maps."""

    def test_identity(self):
        chart = chart_normalize(families.identity(), 3)
        assert chart.nvars == 2
        assert chart.distance_to_identity() == 0

    def test_translation(self):
        chart = chart_normalize(families.translation([9, 0]), 3)
        assert chart.distance_to_identity() == Fraction(1, 9)
        assert chart.norms() == [1, 1]

    def test_unipotent_denominator(self):
        f = families.linear([[1, 27, 0], [0, 1, 0], [0, 0, 1]])
        chart = chart_normalize(f, 3)
        assert chart.distance_to_identity() == Fraction(1, 27)

    def test_denominator_vanishes_at_base(self):
        f = families.linear([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        with pytest.raises(DenominatorNotUnit):
            chart_normalize(f, 3, base_point=(-1, 0))

    def test_coefficient_escapes_unit_ball(self):
        f = families.linear([[1, 0, 0], [0, Fraction(1, 3), 0], [0, 0, 1]])
        with pytest.raises(CoefficientEscapesR):
            chart_normalize(f, 3)

    def test_conjugation_needs_inverse(self):
        with pytest.raises(ValueError, match="needs its inverse"):
            chart_normalize(families.identity(), 3, alpha=families.sigma())
