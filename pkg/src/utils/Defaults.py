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

from dataclasses import dataclass


class ConfigKey:
    def __init__(self, key: str, is_optional: bool = True, default_value=None, *args, **kwargs):
        self.key = key
        self.is_optional = is_optional
        self.default_value = default_value
        self.args = args
        self.kwargs = kwargs

    def __str__(self):
        return self.key


@dataclass
class DefaultKeys:
    class Cremona:
        debug_level = ConfigKey("cremona.debug_level", default_value=0)
        seed = ConfigKey("cremona.seed", default_value=0)

    class Poly:
        float_tolerance = ConfigKey("poly.float_tolerance", default_value=1e-10)

    class Padic:
        prime = ConfigKey("padic.prime", default_value=3)
        precision = ConfigKey("padic.precision", default_value=12)
        truncation = ConfigKey("padic.truncation", default_value=16)
        sweep_size = ConfigKey("padic.sweep_size", default_value=100)

    class Wspace:
        grid_density = ConfigKey("wspace.grid_density", default_value=21)
        uniform_tolerance = ConfigKey("wspace.uniform_tolerance", default_value=0.02)
        cauchy_tolerance = ConfigKey("wspace.cauchy_tolerance", default_value=0.05)
        factor_residual = ConfigKey("wspace.factor_residual", default_value=1e-6)
        denominator_floor = ConfigKey("wspace.denominator_floor", default_value=1e-12)

    class Holodyn:
        outer_radius = ConfigKey("holodyn.outer_radius", default_value=1.0)
        radius = ConfigKey("holodyn.radius", default_value=0.5)
        grid_density = ConfigKey("holodyn.grid_density", default_value=21)
        grid_cap = ConfigKey("holodyn.grid_cap", default_value=9261)
        order_tolerance = ConfigKey("holodyn.order_tolerance", default_value=1e-8)
        newton_steps = ConfigKey("holodyn.newton_steps", default_value=50)
        newton_seeds = ConfigKey("holodyn.newton_seeds", default_value=10)
        fixed_point_tolerance = ConfigKey("holodyn.fixed_point_tolerance", default_value=1e-10)
        differential_tolerance = ConfigKey("holodyn.differential_tolerance", default_value=1e-8)
        hessian_step = ConfigKey("holodyn.hessian_step", default_value=1e-4)

    class Spacefill:
        depth = ConfigKey("spacefill.depth", default_value=6)
        reference_net = ConfigKey("spacefill.reference_net", default_value=10000)

    class Cli:
        schema = ConfigKey("cli.schema", default_value=1)
        float_digits = ConfigKey("cli.float_digits", default_value=17)
