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
from pathlib import Path
from typing import Any

from src.utils.Logger import Logger


class BaseLoadStrategy(ABC):
    """Abstract strategy for different loading methods."""

    def __init__(self, logger: Logger):
        self._logger = logger

    def _resolve(self, kwargs: dict) -> Path:
        file_path = kwargs.get("file_path")
        if not file_path:
            self._logger.error(f"File path not provided for {type(self).__name__}.")
            raise ValueError(f"'file_path' is required for {type(self).__name__}")
        path = Path(file_path)
        if not path.exists():
            self._logger.error(f"File not found at {path}")
            raise FileNotFoundError(f"File not found at {path}")
        return path

    @abstractmethod
    def load(self, **kwargs) -> Any:
        """Execute loading strategy."""
        pass
