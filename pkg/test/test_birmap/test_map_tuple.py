from fractions import Fraction

import numpy as np
import pytest

from src.cremona.birmap.map_tuple import DimensionMismatch, MapTuple, ZeroTuple
from src.cremona.poly.domains import CC, RR
from src.cremona.poly.homog_poly import DegreeMismatch, HomogPoly


class TestMapTuple:
    """Test suite for map tuples in W_d."""

    @pytest.fixture
    def x(self):
        return [HomogPoly.variable(3, i) for i in range(3)]

    def test_component_count_must_match(self, x):
        with pytest.raises(DimensionMismatch):
            MapTuple(x[:2])

    def test_all_zero_rejected(self):
        with pytest.raises(ZeroTuple):
            MapTuple([HomogPoly.zero(3, 2)] * 3)
        with pytest.raises(ZeroTuple):
            MapTuple([])

    def test_degrees_must_agree(self, x):
        with pytest.raises(DegreeMismatch):
            MapTuple([x[0], x[1] * x[1], x[2]])

    def test_zero_component_takes_common_degree(self, x):
        tup = MapTuple([x[0] * x[0], HomogPoly.zero(3), x[0] * x[2]])
        assert tup[1].degree == 2
        assert tup.degree == 2

    def test_equality_up_to_scalar(self, x):
        tup = MapTuple(x)
        assert tup == tup.scale(Fraction(-7, 2))
        assert not tup.same_components(tup.scale(2))
        assert tup.normalized().same_components(tup)

    def test_times_embeds_identity(self, x):
        tup = MapTuple.identity(2).times(x[0] + x[1])
        assert tup.degree == 2
        assert tup[2] == (x[0] + x[1]) * x[2]

    def test_substitute(self, x):
        sigma = MapTuple([x[1] * x[2], x[0] * x[2], x[0] * x[1]])
        square = sigma.substitute(sigma)
        assert square.degree == 4
        assert square == MapTuple.identity(2).times(x[0] * x[1] * x[2])

    def test_evaluate(self, x):
        tup = MapTuple([x[0] * x[0], x[0] * x[1], x[1] * x[2]])
        assert tup.evaluate([1, 2, 3]) == [1, 2, 6]

    def test_raise_degree(self, x):
        raised = MapTuple(x).raise_degree(2)
        assert raised.degree == 3
        assert raised == MapTuple(x).times(x[0] * x[0])

    def test_coefficient_vector_roundtrip(self, x):
        tup = MapTuple([x[0] * x[0], x[0] * x[1] + (x[2] * x[2]).scalar_mul(Fraction(1, 4)), x[0] * x[2]])
        vector = tup.coefficient_vector()
        assert vector.shape == (18,)
        back = MapTuple.from_coefficient_vector(vector, 3, 2, RR)
        np.testing.assert_allclose(back.coefficient_vector(), vector)

    def test_to_domain(self, x):
        tup = MapTuple(x).to_domain(CC)
        assert tup.domain == CC

    def test_text(self, x):
        assert MapTuple([x[1] * x[2], x[0] * x[2], x[0] * x[1]]).to_text() == "[x1*x2 : x0*x2 : x0*x1]"
