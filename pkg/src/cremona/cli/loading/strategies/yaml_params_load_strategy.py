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

from typing import Any

import yaml

from src.cremona.cli.loading.strategies.base_load_strategy import BaseLoadStrategy


class YamlParamsLoadStrategy(BaseLoadStrategy):
    """Strategy for reading scenario parameter overrides from a YAML mapping."""

    def load(self, **kwargs) -> dict[str, Any]:
        path = self._resolve(kwargs)
        try:
            with open(path, "r") as f:
                params = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            self._logger.error(f"Failed to parse {path}: {e}")
            raise
        if not isinstance(params, dict):
            self._logger.error(f"{path} must hold a mapping of parameter names to values")
            raise ValueError(f"{path} must hold a mapping")
        return params
