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

from src.cremona.cli.literal import LiteralError, MapLiteral, parse_map
from src.cremona.cli.loading.strategies.base_load_strategy import BaseLoadStrategy
from src.cremona.poly.homog_poly import PolyError


class MapFileLoadStrategy(BaseLoadStrategy):
    """Strategy for reading map literals, one per non-empty line; ``#`` starts a comment line."""

    def load(self, **kwargs) -> list[MapLiteral]:
        """
        :param kwargs: Expects 'file_path' (str or Path) and optionally 'field' (default QQ).
        :return: The parsed literals in file order.
        """
        path = self._resolve(kwargs)
        field = kwargs.get("field", "QQ")
        self._logger.info(f"Loading maps from {path}...")
        literals = []
        for number, line in enumerate(path.read_text().splitlines(), start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                literals.append(parse_map(text, field))
            except (LiteralError, PolyError) as e:
                self._logger.error(f"{path}:{number}: {e}")
                raise
        return literals
