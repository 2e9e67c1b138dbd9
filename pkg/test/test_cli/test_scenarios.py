from fractions import Fraction

import pytest

from src.cremona.cli.scenarios.base_scenario import (
    BadParams,
    Provenance,
    Scenario,
    ScenarioReport,
    UnknownScenario,
)
from src.cremona.cli.scenarios.factory import ScenarioFactory

EXPECTED = [
    "homotopy-H",
    "moving-lines",
    "nonlift",
    "oscillating-rho",
    "padic-gate",
    "padic-small-subgroups",
    "pointwise-failure",
    "sigma-involution",
    "theorem1-consistency-sweep",
    "unbounded-degree",
]


class DummyScenario(Scenario):
    name = "dummy"
    claim = "dummy claim"
    description = "Always passes one check and fails another when asked to."
    defaults = {"fail": False, "count": 2, "weights": [0.5, 1.0], "seed": 0}

    def _run(self, params):
        self.check("always", True, Provenance.TRIVIAL)
        self.check("unless asked", not params["fail"], Provenance.DERIVED, observed=params["fail"])
        return {"count": params["count"]}


class TestScenarioFactory:
    """Test suite for the scenario registry."""

    def test_supported_scenarios(self):
        assert ScenarioFactory.get_supported_scenarios() == EXPECTED

    def test_create(self, logger_mock, config):
        scenario = ScenarioFactory.create_scenario(logger_mock, "sigma-involution", config)
        assert scenario.name == "sigma-involution"
        assert scenario.claim

    def test_unknown(self, logger_mock):
        with pytest.raises(UnknownScenario) as info:
            ScenarioFactory.create_scenario(logger_mock, "nope")
        assert "Available scenarios" in str(info.value)

    def test_register_and_unregister(self, logger_mock, config):
        ScenarioFactory.register_scenario(DummyScenario)
        try:
            assert ScenarioFactory.is_supported("dummy")
            assert isinstance(ScenarioFactory.create_scenario(logger_mock, "dummy", config), DummyScenario)
        finally:
            ScenarioFactory.unregister_scenario("dummy")
        assert not ScenarioFactory.is_supported("dummy")

    def test_register_rejects_non_scenarios(self):
        with pytest.raises(ValueError):
            ScenarioFactory.register_scenario(dict)


class TestScenario:
    """Test suite for scenario parameters and reports."""

    def test_report(self, logger_mock, config):
        report = DummyScenario(logger_mock, config).run()
        assert isinstance(report, ScenarioReport)
        assert report.passed and report.failures == []
        assert report.data == {"count": 2}
        assert len(report.assertions) == 2

    def test_failure_logged(self, logger_mock, config):
        report = DummyScenario(logger_mock, config).run({"fail": "yes"})
        assert not report.passed
        assert [a.name for a in report.failures] == ["unless asked"]
        logger_mock.warning.assert_called_once()

    def test_rerun_resets_assertions(self, logger_mock, config):
        scenario = DummyScenario(logger_mock, config)
        scenario.run()
        assert len(scenario.run().assertions) == 2

    def test_coercion(self, logger_mock, config):
        params = DummyScenario(logger_mock, config).resolve_params(
            {"count": 3.0, "weights": "1/4, 2", "fail": True}
        )
        assert params["count"] == 3
        assert params["weights"] == [0.25, 2.0]
        assert params["fail"] is True

    def test_seed_from_config(self, logger_mock, config):
        assert DummyScenario(logger_mock, config).resolve_params()["seed"] == 0

    @pytest.mark.parametrize("overrides", [{"unknown": 1}, {"count": 2.5}, {"count": "many"}])
    def test_bad_params(self, logger_mock, config, overrides):
        with pytest.raises(BadParams):
            DummyScenario(logger_mock, config).resolve_params(overrides)


class TestWorkedExamples:
    """Test suite running the fast worked examples end to end."""

    @pytest.mark.parametrize(
        "name,overrides",
        [
            ("sigma-involution", {}),
            ("moving-lines", {"m_max": 5}),
            ("unbounded-degree", {"m_from": 2, "m_to": 5}),
            ("padic-gate", {}),
            ("padic-small-subgroups", {"count": 3}),
            ("nonlift", {"m_max": 100}),
            ("pointwise-failure", {}),
            ("oscillating-rho", {}),
            ("homotopy-H", {}),
        ],
    )
    def test_passes(self, logger_mock, config, name, overrides):
        report = ScenarioFactory.create_scenario(logger_mock, name, config).run(overrides)
        assert report.passed, [a.name for a in report.failures]

    def test_consistency_sweep(self, logger_mock, config):
        scenario = ScenarioFactory.create_scenario(logger_mock, "theorem1-consistency-sweep", config)
        report = scenario.run({"size": 30, "norm_pairs": 50})
        assert report.passed, [a.name for a in report.failures]

    @pytest.mark.parametrize(
        "overrides", [{"m_from": 2, "m_to": 3}, {"m_from": 5, "m_to": 5}, {"m_from": 6, "m_to": 2}]
    )
    def test_unbounded_degree_needs_three_members(self, logger_mock, config, overrides):
        scenario = ScenarioFactory.create_scenario(logger_mock, "unbounded-degree", config)
        with pytest.raises(BadParams, match="at least three members"):
            scenario.run(overrides)

    def test_moving_lines_come_from_the_jacobian(self, logger_mock, config):
        report = ScenarioFactory.create_scenario(logger_mock, "moving-lines", config).run({"m_max": 4})
        assert report.passed, [a.name for a in report.failures]
        lines = report.data["lines"]
        assert sorted(lines) == [1, 2, 3, 4]
        for m, (a, b, c) in lines.items():
            assert (a, b, c) == (1, Fraction(1, m), 0)
