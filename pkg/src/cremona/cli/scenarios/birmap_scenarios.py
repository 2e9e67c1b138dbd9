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
from itertools import combinations
from typing import Any, Optional

from src.cremona.birmap import families
from src.cremona.birmap.birational_map import compose, contract_image, eval_point, jacobian_det, reduce
from src.cremona.cli.scenarios.base_scenario import BadParams, Provenance, Scenario
from src.cremona.poly.gcd import exact_divide, gcd_many, normalize_monic
from src.cremona.poly.homog_poly import HomogPoly
from src.cremona.wspace.analyzer import ConvergenceAnalyzer, DegreeKind, Verdict
from src.cremona.wspace.certificate import RegionCertifier
from src.cremona.wspace.wd_point import WdPoint, identity_distance


class UnboundedDegreeScenario(Scenario):
    name = "unbounded-degree"
    claim = "its degree is not bounded"
    description = (
        "The family [x0^m : x0^(m-1)*x1 + x2^m/m! : x0^(m-1)*x2] tends to the identity "
        "coefficientwise while its reduced degree is m."
    )
    defaults = {"m_from": 2, "m_to": 6}

    def resolve_params(self, overrides: Optional[dict[str, Any]] = None) -> dict[str, Any]:
        params = super().resolve_params(overrides)
        if params["m_to"] - params["m_from"] + 1 < 3:
            raise BadParams(
                f"{self.name} needs at least three members, got m = {params['m_from']}..{params['m_to']}"
            )
        return params

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        ms = list(range(params["m_from"], params["m_to"] + 1))
        maps = [families.factorial_family(m) for m in ms]
        degrees = [f.degree for f in maps]
        self.check("reduced degree equals m", degrees == ms, Provenance.STATED,
                   observed=degrees, expected=ms)
        check = ConvergenceAnalyzer(self._logger, self.config).degree_bounded_check(maps)
        self.check("degree growth detected", check.kind is DegreeKind.UNBOUNDED,
                   Provenance.DERIVED, observed=check.kind, expected=DegreeKind.UNBOUNDED)
        return {"degrees": dict(zip(ms, degrees))}


class PointwiseFailureScenario(Scenario):
    name = "pointwise-failure"
    claim = "$f_m([0:1:p_2])=[0:1:0]$"
    description = (
        "f_m = [x0^2 : x0*x1 + x2^2/m : x0*x2] converges to the identity, uniformly near [1:0:0], "
        "yet sends [0:1:1] to [0:1:0] for every m."
    )
    defaults = {
        "m_max": 20,
        "certificate_ms": [5, 10, 20, 50, 100],
        "radius": 0.5,
        "distance_ms": [10, 30, 100, 300, 1000],
        "limit_terms": 40,
    }

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        start = (Fraction(0), Fraction(1), Fraction(1))
        image = (Fraction(0), Fraction(1), Fraction(0))
        images = [eval_point(families.pointwise_failure(m), start) for m in range(1, params["m_max"] + 1)]
        stuck = all(r.is_point and r.point == image for r in images)
        self.check("f_m([0:1:1]) = [0:1:0] for every m", stuck, Provenance.STATED,
                   observed=[r.point for r in images[:3]], expected=image)
        fixed = eval_point(families.identity(2), start)
        self.check("the identity fixes [0:1:1]", fixed.point == start, Provenance.TRIVIAL,
                   observed=fixed.point, expected=start)

        ms = params["certificate_ms"]
        certifier = RegionCertifier(self._logger, self.config)
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 0, (0.0, 0.0), params["radius"], m_list=ms
        )
        self.check("uniform certificate near [1:0:0]", result.certified, Provenance.STATED,
                   observed=result.kind, expected="Certificate")
        rates = [(m, e, 3.0 / m) for m, e in result.sup_errors]
        self.check("sup error at most 3/m", all(e <= bound for _, e, bound in rates),
                   Provenance.DERIVED, tolerance=0.0, observed=result.sup_errors)

        scaled = []
        for m in params["distance_ms"]:
            point = WdPoint.from_tuple(families.pointwise_failure(m).map_tuple)
            scaled.append((m, identity_distance(point).distance * m))
        self.check("m * dist(f_m, id) in [0.3, 3]", all(0.3 <= s <= 3.0 for _, s in scaled),
                   Provenance.DERIVED, observed=scaled, expected=[0.3, 3.0])

        terms = params["limit_terms"]
        maps = [families.pointwise_failure(m) for m in range(1, terms + 1)]
        report = ConvergenceAnalyzer(self._logger, self.config).analyse_sequence(maps)
        self.check("limit reduces to the identity", report.verdict is Verdict.CONVERGES_TO_ID,
                   Provenance.DERIVED, tolerance=report.limit_uncertainty,
                   observed=report.verdict, expected=Verdict.CONVERGES_TO_ID)
        return {"sup_errors": result.sup_errors, "scaled_distances": scaled,
                "cofactor": report.cofactor}


def _proportional(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i, j in combinations(range(3), 2))


def _contracted_curve(g) -> HomogPoly:
    """Reduced Jacobian curve of g: det J divided by its repeated part."""
    det = jacobian_det(g)
    repeated = gcd_many([det] + [det.partial_derivative(j) for j in range(det.nvars)])
    return normalize_monic(exact_divide(det, repeated))


def _line_span(line) -> tuple:
    """Two distinct points on the line a*x0 + b*x1 + c*x2 = 0."""
    a, b, c = line
    candidates = [p for p in ((b, -a, 0), (c, 0, -a), (0, c, -b)) if any(p)]
    first = candidates[0]
    return first, next(p for p in candidates[1:] if not _proportional(p, first))


class MovingLinesScenario(Scenario):
    name = "moving-lines"
    claim = "are all distinct for different"
    description = (
        "f_m composed with phi_m = [x0 + x1/m : x1 : x2] contracts the line x0 + x1/m = 0 "
        "onto [0:1:0], and these lines differ for different m."
    )
    defaults = {"m_max": 10}

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        target = (Fraction(0), Fraction(1), Fraction(0))
        unit = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        images, lines, curves = {}, {}, {}
        for m in range(1, params["m_max"] + 1):
            g = compose(families.pointwise_failure(m), families.moving_line_conjugator(m))
            curve = _contracted_curve(g)
            curves[m] = curve.to_text()
            if curve.degree != 1:
                continue
            lines[m] = tuple(curve.coefficient(e) for e in unit)
            images[m] = contract_image(g, _line_span(lines[m]))
        self.check("jacobian curve of f_m o phi_m is a line", len(lines) == params["m_max"],
                   Provenance.DERIVED, observed=curves)
        expected = {m: (Fraction(1), Fraction(1, m), Fraction(0)) for m in lines}
        self.check("that line is x0 + x1/m = 0", all(_proportional(lines[m], expected[m]) for m in lines),
                   Provenance.STATED, observed=lines, expected=expected)
        contracted = bool(images) and all(r.contracts and r.point == target for r in images.values())
        self.check("the line contracts to [0:1:0]", contracted, Provenance.STATED,
                   observed={m: r.point for m, r in images.items()}, expected=target)

        distinct = not any(_proportional(lines[a], lines[b]) for a, b in combinations(lines, 2))
        self.check("contracted lines pairwise distinct", distinct, Provenance.STATED,
                   observed=len(lines))
        return {"lines": lines}


class SigmaInvolutionScenario(Scenario):
    name = "sigma-involution"
    claim = "standard quadratic involution"
    description = (
        "sigma = [x1*x2 : x0*x2 : x0*x1] has order 2; sigma after sigma is x0*x1*x2 times the "
        "identity and sigma contracts the coordinate lines."
    )
    defaults = {"order_bound": 4}

    def _run(self, params: dict[str, Any]) -> dict[str, Any]:
        sigma = families.sigma()
        x = [HomogPoly.variable(3, i) for i in range(3)]
        raw = sigma.map_tuple.substitute(sigma.map_tuple)
        reduced, cofactor = reduce(raw)
        self.check("sigma o sigma = id", reduced.is_identity(), Provenance.STATED,
                   observed=reduced.to_text())
        self.check("cofactor x0*x1*x2", cofactor == x[0] * x[1] * x[2], Provenance.DERIVED,
                   observed=cofactor.to_text(), expected="x0*x1*x2")
        self.check("degree accounting 2*2 = 1 + 3", raw.degree == reduced.degree + cofactor.degree,
                   Provenance.DERIVED, observed=(raw.degree, reduced.degree, cofactor.degree))
        result = sigma.order(params["order_bound"])
        self.check("order 2", result.is_finite and result.order == 2, Provenance.STATED,
                   observed=result.order, expected=2)
        det = jacobian_det(sigma)
        self.check("jacobian 2*x0*x1*x2", det == HomogPoly.monomial((1, 1, 1), 2), Provenance.DERIVED,
                   observed=det.to_text())
        line = ((0, 1, 0), (0, 0, 1))
        image = contract_image(sigma, line)
        self.check("x0 = 0 contracts to [1:0:0]", image.contracts and image.point == (1, 0, 0),
                   Provenance.DERIVED, observed=image.point, expected=(1, 0, 0))
        return {"cofactor": cofactor, "degree_trace": result.degree_trace}
