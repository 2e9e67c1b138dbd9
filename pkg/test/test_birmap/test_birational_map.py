from fractions import Fraction

import numpy as np
import pytest

from src.cremona.birmap import families
from src.cremona.birmap.birational_map import (
    BirationalMap,
    ContractKind,
    DegenerateLine,
    EvalKind,
    NotCertified,
    OrderKind,
    ZeroVector,
    certified,
    certify_inverse,
    compose,
    contract_image,
    eval_point,
    jacobian_det,
    normalize_point,
    order,
    points_equal,
    reduce,
)
from src.cremona.birmap.map_tuple import DimensionMismatch, MapTuple
from src.cremona.poly.domains import CC, QQ, RR
from src.cremona.poly.gcd import UnsupportedDomain
from src.cremona.poly.homog_poly import HomogPoly


def random_jonquieres(rng) -> BirationalMap:
    x0, x1 = HomogPoly.variable(3, 0), HomogPoly.variable(3, 1)
    eps = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
    delta = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
    a = (x0 * x1).scalar_mul(eps) + (x1 * x1).scalar_mul(delta)
    return families.de_jonquieres(a, x0 * x0, certify=True)


def random_linear(rng) -> BirationalMap:
    while True:
        matrix = rng.integers(-3, 4, size=(3, 3)).tolist()
        if round(np.linalg.det(np.array(matrix, dtype=float))) != 0:
            return families.linear_with_inverse(matrix, certify=True)


class TestReduceAndCompose:
    """Test suite for reduction and composition over QQ."""

    def test_reduce_splits_cofactor(self, sigma):
        raw = sigma.map_tuple.substitute(sigma.map_tuple)
        reduced, cofactor = reduce(raw)
        assert reduced.is_identity()
        assert cofactor == HomogPoly.monomial((1, 1, 1))
        assert raw.degree == reduced.degree + cofactor.degree

    def test_reduce_normalizes_scalar(self):
        x = [HomogPoly.variable(3, i).scalar_mul(5) for i in range(3)]
        reduced, cofactor = reduce(MapTuple(x))
        assert reduced.map_tuple.same_components(MapTuple.identity(2))
        assert cofactor.degree == 0

    def test_reduce_requires_rationals(self):
        with pytest.raises(UnsupportedDomain):
            reduce(MapTuple.identity(2, RR))

    def test_sigma_is_an_involution(self, sigma):
        assert compose(sigma, sigma).is_identity()

    def test_compose_dimension_checked(self, sigma):
        with pytest.raises(DimensionMismatch):
            compose(sigma, families.identity(3))

    def test_compose_with_identity(self, jonquieres):
        assert compose(jonquieres, families.identity()) == jonquieres
        assert compose(families.identity(), jonquieres) == jonquieres

    def test_float_compose_kept_as_given(self):
        f = families.oscillating_base(0.5, RR)
        g = compose(f, f)
        assert g.reduced_as_given
        assert g.degree == 4

    def test_compose_is_associative(self, sigma, jonquieres):
        swap = families.linear([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert compose(compose(sigma, jonquieres), swap) == compose(sigma, compose(jonquieres, swap))

    def test_immutable(self, sigma):
        with pytest.raises(AttributeError):
            sigma.foo = 1


class TestOrder:
    """Test suite for the bounded order search."""

    def test_identity_has_order_one(self):
        result = order(families.identity(), 3)
        assert result.is_finite and result.order == 1

    def test_sigma_has_order_two(self, sigma):
        result = sigma.order(4)
        assert result.order == 2
        assert result.degree_trace == (2, 1)

    def test_rotation_has_order_three(self):
        result = order(families.linear([[1, 0, 0], [0, 0, 1], [0, -1, -1]]), 6)
        assert result.order == 3

    def test_exceeds_bound(self, jonquieres):
        result = order(jonquieres, 5)
        assert result.kind is OrderKind.EXCEEDS_BOUND
        assert result.order is None
        assert len(result.degree_trace) == 5

    def test_invalid_bound(self, sigma):
        with pytest.raises(ValueError):
            order(sigma, 0)

    def test_float_rejected(self):
        with pytest.raises(UnsupportedDomain):
            order(families.identity(2, RR), 3)


class TestEvalPoint:
    """Test suite for evaluation at points of P^n."""

    def test_regular_point(self, sigma):
        result = eval_point(sigma, (1, 2, 3))
        assert result.is_point
        assert result.point == (3, Fraction(3, 2), 1)
        assert points_equal(result.point, (6, 3, 2), QQ)

    def test_indeterminate_point(self, sigma):
        assert eval_point(sigma, (1, 0, 0)).kind is EvalKind.INDETERMINATE

    def test_pointwise_failure_image(self):
        for m in (1, 5, 100):
            result = eval_point(families.pointwise_failure(m), (0, 1, 1))
            assert result.point == (0, 1, 0)

    def test_zero_vector(self, sigma):
        with pytest.raises(ZeroVector):
            eval_point(sigma, (0, 0, 0))

    def test_arity_checked(self, sigma):
        with pytest.raises(DimensionMismatch):
            eval_point(sigma, (1, 2))

    def test_float_normalization(self):
        point = normalize_point((0, 3, -4), RR)
        assert point == pytest.approx((0.0, 0.6, -0.8))
        point = normalize_point((1j, 0, 0), CC)
        assert point[0] == pytest.approx(1.0)

    def test_compose_commutes_with_eval(self):
        """(f o g)(x) = f(g(x)) wherever g is regular at x and f at g(x)."""
        rng = np.random.default_rng(3)
        checked = 0
        for i in range(100):
            f = random_jonquieres(rng) if i % 2 else random_linear(rng)
            g = random_linear(rng) if i % 3 else random_jonquieres(rng)
            point = [Fraction(int(v), int(rng.integers(1, 5))) for v in rng.integers(-9, 10, 3)]
            if all(v == 0 for v in point):
                continue
            inner = eval_point(g, point)
            if not inner.is_point:
                continue
            outer = eval_point(f, inner.point)
            if not outer.is_point:
                continue
            direct = eval_point(compose(f, g), point)
            assert direct.is_point
            assert direct.point == outer.point
            checked += 1
        assert checked > 50


class TestJacobianAndContraction:
    """Test suite for Jacobians and contracted lines."""

    def test_sigma_jacobian(self, sigma):
        assert jacobian_det(sigma) == HomogPoly.monomial((1, 1, 1), 2)

    def test_linear_jacobian_is_constant(self):
        det = jacobian_det(families.linear([[1, 1, 0], [0, 1, 3], [1, 0, 1]]))
        assert det == HomogPoly.constant(3, 4)

    def test_jacobian_degree(self, jonquieres):
        assert jacobian_det(jonquieres).degree == 3 * (jonquieres.degree - 1)

    def test_sigma_contracts_coordinate_lines(self, sigma):
        result = contract_image(sigma, ((0, 1, 0), (0, 0, 1)))
        assert result.contracts
        assert result.point == (1, 0, 0)

    def test_general_line_not_contracted(self, sigma):
        result = contract_image(sigma, ((1, 1, 0), (0, 1, 1)))
        assert result.kind is ContractKind.NOT_CONTRACTED

    def test_moving_lines(self):
        for m in (1, 2, 7):
            g = compose(families.pointwise_failure(m), families.moving_line_conjugator(m))
            result = contract_image(g, ((1, -m, 0), (0, 0, 1)))
            assert result.contracts
            assert result.point == (0, 1, 0)

    def test_degenerate_line(self, sigma):
        with pytest.raises(DegenerateLine):
            contract_image(sigma, ((1, 2, 3), (2, 4, 6)))

    def test_float_contraction(self):
        sigma = families.sigma(RR)
        result = contract_image(sigma, ((0, 1, 0), (0, 0, 1)))
        assert result.contracts
        assert result.point == pytest.approx((1.0, 0.0, 0.0))


class TestCertifyInverse:
    """Test suite for exact inverse certificates."""

    def test_certified_pairs(self, certified_pairs):
        for f, g in certified_pairs:
            assert certify_inverse(f, g)
            assert certify_inverse(g, f)

    def test_wrong_inverse(self, jonquieres, sigma):
        assert not certify_inverse(jonquieres, sigma)
        with pytest.raises(NotCertified):
            certified(jonquieres, sigma)

    def test_certified_attaches_inverse(self, jonquieres):
        assert jonquieres.certified_inverse is not None
        assert compose(jonquieres, jonquieres.certified_inverse).is_identity()

    def test_float_rejected(self):
        f = families.identity(2, RR)
        with pytest.raises(UnsupportedDomain):
            certify_inverse(f, f)
