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

import dataclasses
import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from src.cremona.birmap.birational_map import BirationalMap
from src.cremona.birmap.map_tuple import MapTuple
from src.cremona.cli.exporting.strategies.base_export_strategy import BaseExportStrategy
from src.cremona.padic.padic_num import PadicNum
from src.cremona.padic.tate import TruncatedSeries
from src.cremona.poly.homog_poly import HomogPoly
from src.cremona.wspace.wd_point import WdPoint
from src.utils.Logger import Logger

SCHEMA_VERSION = 1


def _float(value: float, digits: int) -> Any:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    # 17 significant digits identify a double exactly; json prints the shortest equal repr
    return float(f"{value:.{digits}g}")


def to_jsonable(obj: Any, digits: int = 17) -> Any:
    """Plain JSON values for reports: dataclasses, enums, numbers of every field, maps."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj), digits)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_float(obj.real, digits), _float(obj.imag, digits)]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, PadicNum):
        return obj.to_text()
    if isinstance(obj, (HomogPoly, MapTuple, BirationalMap, TruncatedSeries)):
        return obj.to_text()
    if isinstance(obj, WdPoint):
        return obj.map_tuple.to_text()
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v, digits) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name), digits)
            for f in dataclasses.fields(obj)
            if f.repr
        }
    if isinstance(obj, dict):
        return {str(to_jsonable(k, digits)): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v, digits) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    return str(obj)


def render(obj: Any, digits: int = 17) -> str:
    """Deterministic JSON text carrying the schema version."""
    payload = to_jsonable(obj, digits)
    if isinstance(payload, dict):
        payload = {"schema": SCHEMA_VERSION, **payload}
    else:
        payload = {"schema": SCHEMA_VERSION, "result": payload}
    return json.dumps(payload, sort_keys=True, indent=2)


class JsonExportStrategy(BaseExportStrategy):
    """Strategy for exporting reports as schema-versioned JSON."""

    def __init__(self, logger: Logger, digits: int = 17):
        super().__init__(logger)
        self.digits = digits

    def export(self, data: Any, output_path: Path) -> None:
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            output_path.write_text(render(data, self.digits) + "\n")
            self._logger.info(f"Report successfully exported to {output_path}")
        except Exception as e:
            self._logger.error(f"Failed to export report to {output_path}: {e}")
            raise
