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

from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.cremona.cli.exporting.strategies.base_export_strategy import BaseExportStrategy


def points_frame(points: np.ndarray, prefix: str = "x") -> pd.DataFrame:
    """One row per point; complex coordinates split into ``<prefix>i_re`` / ``<prefix>i_im``."""
    points = np.atleast_2d(points)
    columns = {}
    for i in range(points.shape[1]):
        if np.iscomplexobj(points):
            columns[f"{prefix}{i}_re"] = points[:, i].real
            columns[f"{prefix}{i}_im"] = points[:, i].imag
        else:
            columns[f"{prefix}{i}"] = points[:, i]
    return pd.DataFrame(columns)


class CsvExportStrategy(BaseExportStrategy):
    """Strategy for exporting point clouds and tables to a CSV file."""

    def export(self, data: Any, output_path: Path) -> None:
        """Exports a DataFrame, or an array of points, to a CSV file."""
        frame = data if isinstance(data, pd.DataFrame) else points_frame(np.asarray(data))
        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(output_path, index=False, float_format="%.17g")
            self._logger.info(f"Data successfully exported to {output_path}")
        except Exception as e:
            self._logger.error(f"Failed to export data to {output_path}: {e}")
            raise
