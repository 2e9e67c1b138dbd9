import numpy as np
import pytest

from src.cremona.birmap.birational_map import EvalKind, compose, eval_point
from src.cremona.birmap.families import oscillating_base
from src.cremona.poly.domains import CC, RR
from src.cremona.spacefill.hilbert import ParamOutOfRange
from src.cremona.spacefill.oscillating import OscillatingFamily, covering_radius, reference_net
from src.cremona.wspace.wd_point import WdPoint, identity_distance, wd_distance


def distance(f, g) -> float:
    return wd_distance(WdPoint.from_tuple(f.map_tuple), WdPoint.from_tuple(g.map_tuple))


def distance_to_identity(f) -> float:
    return identity_distance(WdPoint.from_tuple(f.map_tuple)).distance


def invariant_distance_to_identity(f) -> float:
    return identity_distance(WdPoint.from_tuple(f.map_tuple), invariant=True).distance


@pytest.fixture
def family(logger_mock, config):
    return OscillatingFamily(logger_mock, config)


class TestSigmaHat:
    """Test suite for the space-filling path into the unitary group."""

    def test_depth_from_config(self, family):
        assert family.depth == 6
        assert family.reference_size == 10000

    def test_sigma_unitary(self, family):
        batch = family.sigma(np.linspace(-1, 1, 50))
        gram = np.conj(np.swapaxes(batch, 1, 2)) @ batch
        assert np.abs(gram - np.eye(3)).max() < 1e-12

    def test_sigma_hat_at_one_over_sin_inverse(self, family):
        # sin(1 / t) = sin(1) for t = 1, so sigma_hat(1) is the identity
        np.testing.assert_allclose(family.sigma_hat(1.0)[0], np.eye(3), atol=1e-12)

    def test_real_variant_is_real(self, family):
        u = family.sigma_hat(0.3, real=True)[0]
        assert np.all(u.imag == 0)

    def test_ranges(self, family):
        with pytest.raises(ParamOutOfRange):
            family.sigma(1.5)
        with pytest.raises(ParamOutOfRange):
            family.sigma_hat(0.0)


class TestRhoOscillating:
    """Test suite for the oscillating conjugated family."""

    @pytest.mark.parametrize("t", [0.0, 1.0])
    def test_endpoints_are_identity(self, family, t):
        assert family.rho_oscillating(t).is_identity()

    def test_tends_to_identity(self, family):
        for m in (100, 150, 200):
            assert distance_to_identity(family.rho_oscillating(1.0 / m)) <= 1e-2

    def test_invariant_distance_non_increasing(self, family):
        values = [invariant_distance_to_identity(family.rho_oscillating(1.0 / m)) for m in range(10, 201)]
        assert all(b <= a + 1e-6 for a, b in zip(values, values[1:]))
        assert values[-1] < values[0]

    def test_domains(self, family):
        assert family.rho_oscillating(0.3).domain is CC
        assert family.rho_oscillating(0.3, real=True).domain is RR
        assert family.rho_oscillating(0.3).degree == 2

    @pytest.mark.parametrize("t", [0.3, 0.5, 0.7])
    def test_indeterminate_at_moving_point(self, family, t):
        rho = family.rho_oscillating(t)
        q = family.indeterminacy_point(t)
        assert eval_point(rho, q).kind is EvalKind.INDETERMINATE

    def test_inverse(self, family):
        rho = family.rho_oscillating(0.4)
        inverse = family.rho_oscillating(0.4, inverse=True)
        assert distance_to_identity(compose(rho, inverse)) <= 1e-8

    @pytest.mark.parametrize("t", [-0.1, 1.1])
    def test_range(self, family, t):
        with pytest.raises(ParamOutOfRange):
            family.rho_oscillating(t)


class TestHomotopy:
    """Test suite for the homotopy between rho and t -> f_t."""

    @pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
    def test_faces(self, family, t):
        assert distance(family.homotopy_H(1.0, t), oscillating_base(t, CC)) <= 1e-12
        assert distance(family.homotopy_H(0.0, t), family.rho_oscillating(t)) <= 1e-12
        assert family.homotopy_H(t, 1.0).is_identity()

    def test_identity_corner(self, family):
        assert family.homotopy_H(0.0, 0.0).is_identity()
        assert family.homotopy_H(0.5, 0.0).is_identity()

    def test_continuous_across_diagonal(self, family):
        for s in (0.2, 0.45, 0.8):
            above = family.homotopy_H(s, s + 1e-12, depth=2)
            below = family.homotopy_H(s, s - 1e-12, depth=2)
            assert distance(above, below) <= 1e-3

    def test_range(self, family):
        with pytest.raises(ParamOutOfRange):
            family.homotopy_H(1.2, 0.5)


class TestIndeterminacyCloud:
    """Test suite for the cloud of indeterminacy points."""

    def test_covering_radius_decreases(self, family):
        radii = [family.indeterminacy_cloud(0.1, n, seed=0).covering_radius for n in (100, 1000, 10000)]
        assert radii[0] > radii[1] > radii[2]

    def test_parameters_are_prefixes(self, family):
        small = family.indeterminacy_cloud(0.1, 50, seed=3)
        large = family.indeterminacy_cloud(0.1, 200, seed=3)
        np.testing.assert_array_equal(small.params, large.params[:50])
        assert np.all((small.params > 0) & (small.params <= 0.1))
        assert small.reference_size == 10000

    def test_points_are_unit_rows(self, family):
        cloud = family.indeterminacy_cloud(0.2, 100, seed=1, real=True)
        np.testing.assert_allclose(np.linalg.norm(cloud.points, axis=1), 1.0)
        assert cloud.real

    def test_covering_radius_of_net_itself(self):
        net = reference_net(200)
        assert covering_radius(net, net) == 0.0
        assert covering_radius(net[:1], net) > 0.5

    @pytest.mark.parametrize("eps,count", [(0.0, 10), (1.0, 10), (0.1, 0)])
    def test_range(self, family, eps, count):
        with pytest.raises(ParamOutOfRange):
            family.indeterminacy_cloud(eps, count)
