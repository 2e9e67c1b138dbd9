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

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger


class ScenarioError(Exception):
    """Base class for scenario registry and parameter failures."""

    pass


class UnknownScenario(ScenarioError):
    """Raised when a scenario name is not in the registry."""

    pass


class BadParams(ScenarioError):
    """Raised when scenario parameters are unknown or of the wrong type."""

    pass


class Provenance(Enum):
    STATED = "STATED"
    DERIVED = "DERIVED"
    TRIVIAL = "TRIVIAL"


@dataclass(frozen=True)
class Assertion:
    name: str
    passed: bool
    provenance: Provenance
    tolerance: Optional[float] = None
    observed: Any = None
    expected: Any = None


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    claim: str
    description: str
    params: dict[str, Any]
    assertions: list[Assertion]
    passed: bool
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if not a.passed]


class Scenario(ABC):
    """A named, parameterized run that checks one worked example end to end."""

    name: str = ""
    claim: str = ""
    description: str = ""
    defaults: dict[str, Any] = {}

    def __init__(self, logger: Logger, config: Config = None):
        self._logger = logger
        self.config = config if config is not None else Config(logger)
        self._assertions: list[Assertion] = []

    def resolve_params(self, overrides: Optional[dict[str, Any]] = None) -> dict[str, Any]:
        """Defaults overlaid with ``overrides``, each coerced to the type of its default."""
        params = dict(self.defaults)
        if "seed" in params:
            params["seed"] = self.config.get_int(Key.Cremona.seed.key, params["seed"])
        for key, value in (overrides or {}).items():
            if key not in self.defaults:
                raise BadParams(
                    f"unknown parameter {key!r} for {self.name}; known: {', '.join(sorted(self.defaults))}"
                )
            params[key] = self._coerce(key, value, self.defaults[key])
        return params

    def _coerce(self, key: str, value: Any, default: Any) -> Any:
        try:
            if isinstance(default, bool):
                if isinstance(value, str):
                    return value.lower() in ("1", "true", "yes")
                return bool(value)
            if isinstance(default, int):
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError("not an integer")
                return int(value)
            if isinstance(default, float):
                return float(value)
            if isinstance(default, str):
                return str(value)
            if isinstance(default, list):
                items = value if isinstance(value, list) else str(value).replace(",", " ").split()
                kind = type(default[0]) if default else str
                return [kind(Fraction(v)) if kind is float else kind(v) for v in items]
        except (TypeError, ValueError) as e:
            raise BadParams(f"bad value {value!r} for {self.name} parameter {key!r}: {e}")
        return value

    def check(
        self,
        name: str,
        passed: bool,
        provenance: Provenance,
        tolerance: Optional[float] = None,
        observed: Any = None,
        expected: Any = None,
    ) -> bool:
        passed = bool(passed)
        self._assertions.append(Assertion(name, passed, provenance, tolerance, observed, expected))
        status = "pass" if passed else "FAIL"
        self._logger.debug(f"[SCENARIO] {self.name}: {name}: {status}")
        return passed

    def run(self, overrides: Optional[dict[str, Any]] = None) -> ScenarioReport:
        params = self.resolve_params(overrides)
        self._assertions = []
        self._logger.info(f"[SCENARIO] running {self.name} with {params}")
        data = self._run(params) or {}
        passed = all(a.passed for a in self._assertions)
        if not passed:
            failed = [a.name for a in self._assertions if not a.passed]
            self._logger.warning(f"[SCENARIO] {self.name} failed: {', '.join(failed)}")
        return ScenarioReport(
            scenario=self.name,
            claim=self.claim,
            description=self.description,
            params=params,
            assertions=list(self._assertions),
            passed=passed,
            data=data,
        )

    @abstractmethod
    def _run(self, params: dict[str, Any]) -> Optional[dict[str, Any]]:
        """Run the checks through ``self.check``; return extra report data."""
        pass
