# Copyright (C) 2025 Khaled Arsalane
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

from fractions import Fraction
from typing import Any

import numpy as np

from src.cremona.birmap.birational_map import (
    EvalKind,
    certify_inverse,
    compose,
    contract_image,
    eval_point,
)
from src.cremona.birmap.families import oscillating_base
from src.cremona.cli.scenarios.base_scenario import Provenance, Scenario
from src.cremona.poly.domains import CC
from src.cremona.spacefill.nonlift import NonliftObstruction, nonlift_family
from src.cremona.spacefill.oscillating import OscillatingFamily
from src.cremona.wspace.wd_point import WdPoint, identity_distance, wd_distance


def _distance(f, g) -> float:
    return wd_distance(WdPoint.from_tuple(f.map_tuple), WdPoint.from_tuple(g.map_tuple))


def _distance_to_identity(f) -> float:
    return identity_distance(WdPoint.from_tuple(f.map_tuple)).distance


def _invariant_distance_to_identity(f) -> float:
    return identity_distance(WdPoint.from_tuple(f.map_tuple), invariant=True).distance


class OscillatingRhoScenario(Scenario):
    name = "oscillating-rho"
    claim = "$\\hat\\sigma(t)=\\sigma(\\sin(1))^{-1}\\cdot\\sigma(\\sin(\\frac{1}{t}))$"
    description = (
        "rho(t) = sigma_hat(t) o f_t o sigma_hat(t)^-1 tends to the identity as t -> 0 while its "
        "indeterminacy point sweeps out a dense cloud in P^2."
    )
    defaults = {
        "depth": 6,
        "m_from": 100,
        "m_to": 200,
        "m_step": 10,
        "monotone_from": 10,
        "sample_t": [0.3, 0.5, 0.7],
        "cloud_eps": 0.1,
        "cloud_sizes": [100, 1000, 10000],
        "seed": 0,
    }

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        family = OscillatingFamily(self._logger, self.config, params["depth"])
        self.check("rho(1) = id", family.rho_oscillating(1.0).is_identity(), Provenance.STATED)

        distances = [
            (m, _distance_to_identity(family.rho_oscillating(1.0 / m)))
            for m in range(params["m_from"], params["m_to"] + 1, params["m_step"])
        ]
        self.check("dist(rho(1/m), id) <= 1e-2", all(d <= 1e-2 for _, d in distances),
                   Provenance.DERIVED, tolerance=1e-2, observed=max(d for _, d in distances))
        invariant = [
            (m, _invariant_distance_to_identity(family.rho_oscillating(1.0 / m)))
            for m in range(params["monotone_from"], params["m_to"] + 1)
        ]
        values = [d for _, d in invariant]
        self.check("unitary-invariant dist(rho(1/m), id) non-increasing in m",
                   all(b <= a + 1e-6 for a, b in zip(values, values[1:])), Provenance.DERIVED,
                   tolerance=1e-6, observed=invariant[:: max(1, len(invariant) // 10)])

        indeterminate, inverse_gaps = [], []
        for t in params["sample_t"]:
            rho = family.rho_oscillating(t)
            q = family.indeterminacy_point(t)
            indeterminate.append(eval_point(rho, q).kind is EvalKind.INDETERMINATE)
            inverse = family.rho_oscillating(t, inverse=True)
            inverse_gaps.append(_distance_to_identity(compose(rho, inverse)))
        self.check("rho(t) undefined at sigma_hat(t)[0:0:1]", all(indeterminate), Provenance.STATED,
                   observed=indeterminate)
        self.check("rho(t) o rho(t)^-1 = id", max(inverse_gaps) <= 1e-8, Provenance.DERIVED,
                   tolerance=1e-8, observed=max(inverse_gaps))

        radii = []
        for size in params["cloud_sizes"]:
            cloud = family.indeterminacy_cloud(params["cloud_eps"], size, seed=params["seed"])
            radii.append((size, cloud.covering_radius))
        values = [r for _, r in radii]
        self.check("covering radius strictly decreasing", all(b < a for a, b in zip(values, values[1:])),
                   Provenance.DERIVED, observed=radii)
        return {"distances": distances, "invariant_distances": invariant, "covering_radii": radii}


class HomotopyScenario(Scenario):
    name = "homotopy-H"
    claim = "homotopic to the map $t\\mapsto f_t$"
    description = (
        "H(s, t) equals rho(t) for t >= s and sigma_hat(s) o f_t o sigma_hat(s)^-1 below; it joins "
        "rho at s = 0 to t -> f_t at s = 1 and is continuous across t = s."
    )
    defaults = {
        "depth": 6,
        "samples": [0.1, 0.25, 0.5, 0.75, 0.9],
        "continuity_depth": 2,
        "continuity_points": 20,
        "delta": 1e-12,
        "seed": 0,
    }

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        family = OscillatingFamily(self._logger, self.config, params["depth"])
        depth = params["depth"]
        samples = params["samples"]

        top = [_distance(family.homotopy_H(1.0, t, depth), oscillating_base(t, CC)) for t in samples]
        self.check("H(1, t) = f_t", max(top) <= 1e-12, Provenance.STATED, tolerance=1e-12,
                   observed=max(top))
        self.check("H(0, 0) = id", family.homotopy_H(0.0, 0.0, depth).is_identity(), Provenance.TRIVIAL)
        bottom = [
            _distance(family.homotopy_H(0.0, t, depth), family.rho_oscillating(t, depth)) for t in samples
        ]
        self.check("H(0, t) = rho(t)", max(bottom) <= 1e-12, Provenance.STATED, tolerance=1e-12,
                   observed=max(bottom))
        self.check("H(s, 1) = id", all(family.homotopy_H(s, 1.0, depth).is_identity() for s in samples),
                   Provenance.TRIVIAL)

        rng = np.random.default_rng(params["seed"])
        delta, coarse = params["delta"], params["continuity_depth"]
        jumps = []
        for s in rng.uniform(0.05, 0.95, params["continuity_points"]):
            s = float(s)
            above = family.homotopy_H(s, s + delta, coarse)
            below = family.homotopy_H(s, s - delta, coarse)
            jumps.append(_distance(above, below))
        self.check("continuous across t = s", max(jumps) <= 1e-3, Provenance.DERIVED, tolerance=1e-3,
                   observed=max(jumps))
        return {"max_jump": max(jumps)}


class NonliftScenario(Scenario):
    name = "nonlift"
    claim = "this implies $h_0^0 = h_1^0 = 0$"
    description = (
        "rho(t) = [x0*P : x1*P : x2*P + t*x0*x1] with P = cos(2 pi/t)*x0 + x1 has inverse rho(-t), "
        "fixes [1:0:0] and contracts P = 0; its limits along different subsequences differ, so "
        "no continuous lift to tuples exists."
    )
    defaults = {
        "t": "1/7",
        "c": "2/5",
        "s_targets": [0.0, 0.5],
        "m_max": 200,
        "closure_tolerance": 1e-6,
    }

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        t, c = Fraction(params["t"]), Fraction(params["c"])
        rho = nonlift_family(t, c, exact=True)
        self.check("rho(t)^-1 = rho(-t)", certify_inverse(rho, nonlift_family(-t, c, exact=True)),
                   Provenance.STATED, tolerance=0.0)
        fixed = eval_point(rho, (1, 0, 0))
        self.check("[1:0:0] fixed", fixed.is_point and fixed.point == (1, 0, 0), Provenance.STATED,
                   observed=fixed.point)
        image = contract_image(rho, ((1, -c, 0), (0, 0, 1)))
        self.check("P = 0 contracts to [0:0:1]", image.contracts and image.point == (0, 0, 1),
                   Provenance.STATED, observed=image.point)

        obstruction = NonliftObstruction(self._logger, self.config)
        vanishes, restricted = obstruction.symbolic_restrictions()
        self.check("h0 and h1 vanish on the contracted line", vanishes, Provenance.STATED,
                   observed=restricted)
        rho3 = nonlift_family(t, c, exact=True, n=3)
        self.check("P^3 member inverts to rho(-t)",
                   certify_inverse(rho3, nonlift_family(-t, c, exact=True, n=3)), Provenance.DERIVED)

        report = obstruction.nonlift_obstruction_demo(
            params["s_targets"], params["m_max"], params["closure_tolerance"]
        )
        self.check("limits match (s*x0 + x1) * id", report.closure_match, Provenance.STATED,
                   tolerance=params["closure_tolerance"], observed=report.closure_residuals)
        self.check("limits reduce to the identity", report.all_reduce_to_identity, Provenance.DERIVED,
                   observed=report.verdicts)
        self.check("limits at least 0.1 apart", len(report.pairwise) > 0 and
                   min(d for _, _, d in report.pairwise) >= 0.1, Provenance.DERIVED, tolerance=0.1,
                   observed=report.pairwise)
        return {"obstruction": report}
