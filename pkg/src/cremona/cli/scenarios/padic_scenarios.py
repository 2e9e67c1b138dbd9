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

from src.cremona.birmap import families
from src.cremona.cli.scenarios.base_scenario import Provenance, Scenario
from src.cremona.padic.gate import GateKind, PadicGate
from src.cremona.padic.tate import gauss_norm
from src.cremona.poly.domains import PadicDomain
from src.cremona.poly.homog_poly import HomogPoly, monomials


def _gate(scenario: Scenario, params: dict[str, Any]) -> PadicGate:
    gate = PadicGate(scenario._logger, scenario.config)
    gate.p, gate.N = params["p"], params["N"]
    return gate


class PadicGateScenario(Scenario):
    name = "padic-gate"
    claim = "$||f_m'-\\text{\\rm id}||\\leq 1/p^2$"
    description = (
        "A finite-order map whose Tate chart lies within p^-2 of the identity is the identity; "
        "the gate separates forced identities, bound violations and unverified orders."
    )
    defaults = {"p": 3, "N": 12, "order_bound": 6}

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        gate, p, D = _gate(self, params), params["p"], params["order_bound"]

        def verdict(f):
            return gate.identity_gate(gate.chart(f, p), D, f)

        identity = verdict(families.identity(2))
        self.check("identity is forced", identity.kind is GateKind.FORCED_IDENTITY, Provenance.STATED,
                   observed=identity.kind)
        negation = verdict(families.linear([[1, 0, 0], [0, -1, 0], [0, 0, -1]]))
        self.check("x -> -x violates the bound with norm 1",
                   negation.kind is GateKind.BOUND_VIOLATED and negation.norm == 1, Provenance.STATED,
                   observed=(negation.kind, negation.norm), expected=(GateKind.BOUND_VIOLATED, 1))
        shift = p**2
        translated = verdict(families.translation([shift, 0]))
        self.check(
            f"x -> x + {shift} has unverified order at norm p^-2",
            translated.kind is GateKind.NOT_APPLICABLE
            and translated.reason == "OrderUnverified"
            and translated.norm == Fraction(1, p**2),
            Provenance.STATED,
            observed=(translated.kind, translated.reason, translated.norm),
            expected=(GateKind.NOT_APPLICABLE, "OrderUnverified", Fraction(1, p**2)),
        )

        obstruction = gate.fixed_point_obstruction(gate.chart(families.translation([1, 0]), p))
        self.check("unit translation has no fixed point on the unit ball",
                   obstruction.obstructed and obstruction.preserves_unit_ball, Provenance.DERIVED,
                   observed=obstruction.reason)
        return {"verdicts": {"identity": identity, "negation": negation, "translation": translated}}


class PadicSmallSubgroupsScenario(Scenario):
    name = "padic-small-subgroups"
    claim = "contains arbitrary small subgroups"
    description = (
        "Unipotent maps [x0 + q*x1 : x1 : x2] with |q| <= p^-m form a subgroup inside the ball of "
        "radius p^-m around the identity; none of them is forced to be the identity."
    )
    defaults = {"p": 3, "N": 12, "m": 2, "count": 5, "order_bound": 6, "seed": 0}

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        gate = _gate(self, params)
        sample = gate.small_subgroup_sample(
            params["m"], params["count"], params["p"], params["seed"], params["order_bound"]
        )
        self.check("all elements within the ball", sample.all_in_ball, Provenance.STATED,
                   observed=sample.distances, expected=sample.ball)
        self.check(f"closure on all {sample.products_checked} products", sample.closure_holds,
                   Provenance.STATED, observed=sample.products_checked)
        forced = [k for k in sample.gate_verdicts if k is GateKind.FORCED_IDENTITY]
        self.check("none forced to the identity", not forced, Provenance.STATED,
                   observed=sample.gate_verdicts)
        return {"qs": [str(q) for q in sample.qs], "distances": sample.distances}


class ConsistencySweepScenario(Scenario):
    name = "theorem1-consistency-sweep"
    claim = "Then we have $f_m=\\text{\\rm id}$"
    description = (
        "Seeded finite-order maps conjugated by de Jonquieres maps never come within p^-2 of the "
        "identity, and the Gauss norm is multiplicative."
    )
    defaults = {"p": 3, "N": 12, "size": 100, "norm_pairs": 500, "seed": 0}

    def _random_poly(self, rng: np.random.Generator, p: int, N: int) -> HomogPoly:
        terms = {}
        for exps in monomials(3, 2):
            if rng.random() < 0.3:
                continue
            unit = int(rng.integers(1, p * p + 1))
            while unit % p == 0:
                unit += 1
            terms[exps] = Fraction(unit if rng.random() < 0.5 else -unit) * Fraction(p) ** int(
                rng.integers(-2, 4)
            )
        if not terms:
            terms[(2, 0, 0)] = 1
        return HomogPoly(PadicDomain(p, N), 3, 2, terms)

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        gate, p, N = _gate(self, params), params["p"], params["N"]
        report = gate.consistency_sweep(params["size"], params["seed"], p)
        self.check("no finite-order element within p^-2 of id", report.violation_count == 0,
                   Provenance.STATED, tolerance=0.0, observed=report.violation_count, expected=0)

        rng = np.random.default_rng(np.random.SeedSequence([params["seed"], p]))
        mismatches = 0
        for _ in range(params["norm_pairs"]):
            f, g = self._random_poly(rng, p, N), self._random_poly(rng, p, N)
            if gauss_norm(f * g) != gauss_norm(f) * gauss_norm(g):
                mismatches += 1
        self.check("Gauss norm multiplicative", mismatches == 0, Provenance.DERIVED, tolerance=0.0,
                   observed=mismatches, expected=0)
        return {"kinds": sorted(set(report.kinds)), "min_distance": min(report.distances)}
