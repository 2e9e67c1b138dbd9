from fractions import Fraction

import pytest

from src.cremona.birmap import families
from src.cremona.birmap.birational_map import certify_inverse, compose
from src.cremona.birmap.map_tuple import DimensionMismatch
from src.cremona.poly.domains import RR
from src.cremona.poly.homog_poly import HomogPoly


class TestFamilies:
    """Test suite for the named families of birational maps."""

    @pytest.fixture
    def x(self):
        return [HomogPoly.variable(3, i) for i in range(3)]

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_factorial_family_degree(self, m):
        assert families.factorial_family(m).degree == m

    def test_factorial_family_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            families.factorial_family(0)

    def test_pointwise_failure_inverse(self):
        for m in (1, 4, 9):
            f = families.pointwise_failure(m, certify=True)
            assert certify_inverse(f, f.certified_inverse)

    def test_pointwise_failure_float(self):
        f = families.pointwise_failure(4, domain=RR)
        assert f.reduced_as_given
        assert f.components[1].coefficient((0, 0, 2)) == 0.25

    def test_moving_line_conjugator(self, x):
        phi = families.moving_line_conjugator(3)
        assert phi.components[0] == x[0] + x[1].scalar_mul(Fraction(1, 3))

    def test_oscillating_base_endpoints(self):
        assert families.oscillating_base(0).is_identity()
        assert families.oscillating_base(1).is_identity()
        assert families.oscillating_base(Fraction(1, 2)).degree == 2

    def test_oscillating_base_inverse(self):
        t = Fraction(1, 3)
        c = t * (1 - t)
        f = families.oscillating_base(t)
        g = families.oscillating_base(t, coefficient=-c)
        assert certify_inverse(f, g)

    def test_translation_inverse(self):
        f = families.translation([2, Fraction(-1, 3)], certify=True)
        assert compose(f, f.certified_inverse).is_identity()

    def test_de_jonquieres_validation(self, x):
        with pytest.raises(ValueError, match="must not involve x2"):
            families.de_jonquieres(x[2], x[0])
        with pytest.raises(ValueError, match="B must be nonzero"):
            families.de_jonquieres(x[1], HomogPoly.zero(3, 1))

    def test_linear_needs_square_matrix(self):
        with pytest.raises(DimensionMismatch):
            families.linear([[1, 0], [0, 1, 0]])

    def test_linear_inverse_matrix(self):
        inverse = families.linear_inverse_matrix([[2, 0], [0, 4]])
        assert inverse == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]

    def test_embedded_identity(self, x):
        tup = families.embedded_identity(x[0] - x[2])
        assert tup.degree == 2
        assert tup[1] == (x[0] - x[2]) * x[1]
