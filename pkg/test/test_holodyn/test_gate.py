from fractions import Fraction

import numpy as np
import pytest

from src.cremona.birmap import families
from src.cremona.birmap.birational_map import BirationalMap, compose
from src.cremona.holodyn.gate import (
    BodyKind,
    CartanGate,
    CartanKind,
    FixedKind,
    HessianKind,
    StepSizeUnderflow,
)
from src.cremona.poly.homog_poly import HomogPoly

INVOLUTIONS = {
    "negate": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "swap": [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
}


def conjugated_involution(rng, kind: str) -> BirationalMap:
    """g o s o g^-1 with s a linear involution and g a de Jonquieres map fixing the origin."""
    x0, x1 = HomogPoly.variable(3, 0), HomogPoly.variable(3, 1)
    eps = Fraction(int(rng.integers(-3, 4)), 4)
    delta = Fraction(int(rng.integers(-3, 4)), 4)
    a = (x0 * x1).scalar_mul(eps) + (x1 * x1).scalar_mul(delta)
    if a.is_zero():
        a = x1 * x1
    g = families.de_jonquieres(a, x0 * x0)
    g_inv = families.de_jonquieres(-a, x0 * x0)
    return compose(g, compose(families.linear(INVOLUTIONS[kind]), g_inv))


class TestCartanGate:
    """Test suite for the complex bounded-order gate."""

    @pytest.fixture
    def gate(self, logger_mock, config):
        return CartanGate(logger_mock, config)

    def test_reads_config(self, gate):
        assert gate.outer_radius == 1.0
        assert gate.radius == 0.5
        assert gate.order_tolerance == 1e-8

    @pytest.mark.parametrize("D", [1, 2, 3, 4, 5, 6])
    def test_identity_is_forced(self, gate, D):
        verdict = gate.cartan_gate(gate.chart(families.identity()), D)
        assert verdict.kind is CartanKind.FORCED_IDENTITY
        assert verdict.differential_residual < 1e-12
        np.testing.assert_allclose(verdict.eigenvalues, [1.0, 1.0])

    def test_conjugated_involutions_not_forced(self, gate):
        rng = np.random.default_rng(4)
        for i in range(20):
            kind = "negate" if i % 2 else "swap"
            f = conjugated_involution(rng, kind)
            assert f.order(2).order == 2
            verdict = gate.cartan_gate(gate.chart(f), 2)
            assert verdict.kind is CartanKind.NOT_FORCED
            assert min(abs(v + 1) for v in verdict.eigenvalues) < 1e-8
            assert verdict.roots_of_unity_residual < 1e-8
            np.testing.assert_allclose(verdict.fixed_point, [0.0, 0.0], atol=1e-10)

    def test_involution_passes_order_four(self, gate):
        f = conjugated_involution(np.random.default_rng(9), "negate")
        verdict = gate.cartan_gate(gate.chart(f), 4)
        assert verdict.kind is CartanKind.NOT_FORCED

    def test_infinite_order_refused(self, gate):
        f = families.pointwise_failure(10)
        result = gate.build_body(gate.chart(f), 2)
        assert result.kind is BodyKind.REFUSED
        assert result.reason == "NotOrderD"
        verdict = gate.cartan_gate(gate.chart(f), 2)
        assert verdict.kind is CartanKind.NOT_APPLICABLE
        assert verdict.reason == "NotOrderD"

    def test_body_radius_checked(self, gate):
        chart = gate.chart(families.identity())
        with pytest.raises(ValueError, match="below the domain radius"):
            gate.build_body(chart, 2, r=1.0)
        with pytest.raises(ValueError, match="order bound"):
            gate.build_body(chart, 0)

    def test_body_of_identity(self, gate):
        chart = gate.chart(families.identity())
        result = gate.build_body(chart, 3)
        assert result.kind is BodyKind.BODY
        body = result.body
        assert np.all(np.linalg.norm(body.samples, axis=1) <= 0.5 + 1e-12)
        assert body.invariance_residual == 0.0
        assert body.contains(chart, np.array([[0.1, 0.1j]]))[0]
        assert not body.contains(chart, np.array([[0.9, 0.0]]))[0]

    def test_fixed_point_without_body(self, gate):
        f = families.translation([Fraction(1, 2), 0])
        conjugate = compose(families.linear(INVOLUTIONS["negate"]), f)
        result = gate.find_fixed_point(gate.chart(conjugate))
        # z -> -(z + (1/2, 0)) fixes (-1/4, 0)
        assert result.kind is FixedKind.FIXED
        np.testing.assert_allclose(result.point, [-0.25, 0.0], atol=1e-10)

    def test_translation_has_no_fixed_point(self, gate):
        result = gate.find_fixed_point(gate.chart(families.translation([Fraction(1, 2), 0])))
        assert result.kind is FixedKind.NOT_FOUND
        assert result.seeds_tried == gate.newton_seeds


class TestHessianConvexity:
    """Test suite for the plurisubharmonic energy check."""

    @pytest.fixture
    def gate(self, logger_mock, config):
        return CartanGate(logger_mock, config)

    def test_identity_energy_is_convex(self, gate):
        result = gate.hessian_convexity_check(gate.chart(families.identity()), 1)
        assert result.kind is HessianKind.POSITIVE_DEFINITE
        assert result.min_eigenvalue == pytest.approx(2.0, rel=1e-4)

    def test_saddle_detected(self, gate):
        x0, x1, x2 = (HomogPoly.variable(3, i) for i in range(3))
        f = BirationalMap.from_components([x0 * x0, x0 * x0 + x1 * x1, x0 * x2])
        result = gate.hessian_convexity_check(gate.chart(f), 1, grid=np.zeros((1, 2)))
        # |1 + z^2|^2 has real Hessian eigenvalues -4 and 4 at the origin
        assert result.kind is HessianKind.FAILS
        assert result.min_eigenvalue == pytest.approx(-4.0, rel=1e-4)
        np.testing.assert_allclose(result.witness, [0.0, 0.0])

    def test_step_underflow(self, gate):
        with pytest.raises(StepSizeUnderflow):
            gate.hessian_convexity_check(gate.chart(families.identity()), 1, step=1e-9)
