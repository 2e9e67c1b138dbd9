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

from typing import Dict, Type

from src.cremona.cli.scenarios.base_scenario import Scenario, UnknownScenario
from src.cremona.cli.scenarios.birmap_scenarios import (
    MovingLinesScenario,
    PointwiseFailureScenario,
    SigmaInvolutionScenario,
    UnboundedDegreeScenario,
)
from src.cremona.cli.scenarios.padic_scenarios import (
    ConsistencySweepScenario,
    PadicGateScenario,
    PadicSmallSubgroupsScenario,
)
from src.cremona.cli.scenarios.spacefill_scenarios import (
    HomotopyScenario,
    NonliftScenario,
    OscillatingRhoScenario,
)
from src.utils.Config import Config
from src.utils.Logger import Logger


class ScenarioFactory:
    """Registry of the named scenarios."""

    _SCENARIO_TYPES: Dict[str, Type[Scenario]] = {
        cls.name: cls
        for cls in (
            UnboundedDegreeScenario,
            PointwiseFailureScenario,
            MovingLinesScenario,
            SigmaInvolutionScenario,
            OscillatingRhoScenario,
            HomotopyScenario,
            NonliftScenario,
            PadicGateScenario,
            PadicSmallSubgroupsScenario,
            ConsistencySweepScenario,
        )
    }

    @classmethod
    def register_scenario(cls, scenario_class: Type[Scenario]) -> None:
        """Register a scenario under its ``name``.

        Raises:
            ValueError: If scenario_class doesn't inherit from Scenario or has no name
        """
        if not issubclass(scenario_class, Scenario):
            raise ValueError(f"Scenario class {scenario_class.__name__} must inherit from Scenario")
        if not scenario_class.name:
            raise ValueError(f"Scenario class {scenario_class.__name__} has no name")
        cls._SCENARIO_TYPES[scenario_class.name] = scenario_class

    @classmethod
    def unregister_scenario(cls, name: str) -> None:
        cls._SCENARIO_TYPES.pop(name, None)

    @classmethod
    def create_scenario(cls, log: Logger, name: str, config: Config = None) -> Scenario:
        scenario_class = cls._SCENARIO_TYPES.get(name)
        if scenario_class is None:
            raise UnknownScenario(
                f"Unknown scenario: {name}. Available scenarios: {', '.join(cls.get_supported_scenarios())}"
            )
        return scenario_class(log, config)

    @classmethod
    def get_supported_scenarios(cls) -> list[str]:
        """Scenario names in sorted order."""
        return sorted(cls._SCENARIO_TYPES.keys())

    @classmethod
    def is_supported(cls, name: str) -> bool:
        return name in cls._SCENARIO_TYPES
