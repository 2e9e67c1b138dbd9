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

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from src.cremona.birmap.birational_map import (
    BirationalMap,
    certify_inverse,
    compose,
    eval_point,
)
from src.cremona.birmap.map_tuple import BirmapError
from src.cremona.cli.exporting.exporter import Exporter
from src.cremona.cli.exporting.strategies.csv_export_strategy import CsvExportStrategy
from src.cremona.cli.exporting.strategies.json_export_strategy import JsonExportStrategy, render
from src.cremona.cli.literal import LiteralError, parse_map
from src.cremona.cli.loading.loader import Loader
from src.cremona.cli.loading.strategies.map_file_load_strategy import MapFileLoadStrategy
from src.cremona.cli.loading.strategies.yaml_params_load_strategy import YamlParamsLoadStrategy
from src.cremona.cli.scenarios.base_scenario import ScenarioError
from src.cremona.cli.scenarios.factory import ScenarioFactory
from src.cremona.padic.gate import PadicGate
from src.cremona.padic.padic_num import PadicError
from src.cremona.poly.domains import DomainCreationError, DomainFactory
from src.cremona.poly.homog_poly import PolyError
from src.cremona.spacefill.hilbert import ParamOutOfRange
from src.cremona.spacefill.oscillating import OscillatingFamily
from src.cremona.wspace.analyzer import ConvergenceAnalyzer
from src.cremona.wspace.wd_point import WspaceError
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger

USAGE_ERRORS = (
    BirmapError,
    LiteralError,
    PolyError,
    DomainCreationError,
    PadicError,
    WspaceError,
    ScenarioError,
    ParamOutOfRange,
    FileNotFoundError,
    ValueError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cremona", description="Exact and numerical experiments on birational maps of P^n."
    )
    parser.add_argument("--field", default="QQ", help="QQ, RR, CC or Qp:<p>:<N> (default: QQ)")
    parser.add_argument("--config", help="ini file overriding conf/defaults.ini")
    parser.add_argument("--debug-level", type=int, help="0 (quiet) to 3 (most verbose)")
    parser.add_argument("--json", dest="json_out", help="also write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="print f o g")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("order", help="order of f up to a bound (QQ only)")
    p.add_argument("f")
    p.add_argument("--bound", type=int, default=12)

    p = sub.add_parser("eval", help="evaluate f at a point")
    p.add_argument("f")
    p.add_argument("point", help="comma-separated homogeneous coordinates, e.g. 0,1,1")

    p = sub.add_parser("limit", help="limit of a sequence of maps read from a file")
    p.add_argument("maps_file")
    p.add_argument("--params", help="comma-separated sampling parameters (default 1/k)")

    p = sub.add_parser("certify-inverse", help="check that g inverts f (QQ only)")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("padic-gate", help="identity gate on the Tate chart of f")
    p.add_argument("f")
    p.add_argument("--order-bound", type=int, default=6)

    p = sub.add_parser("cloud", help="indeterminacy cloud of the oscillating family")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--real", action="store_true")
    p.add_argument("--csv", help="write the cloud points to this CSV file")

    p = sub.add_parser("scenario", help="run one named scenario")
    p.add_argument("name")
    p.add_argument("--seed", type=int)
    p.add_argument("--params", help="YAML file of parameter overrides")

    p = sub.add_parser("scenarios", help="list the scenarios, or run all of them")
    p.add_argument("--run", action="store_true")
    p.add_argument("--seed", type=int)
    return parser


def _as_map(literal) -> BirationalMap:
    if literal.field == "QQ":
        return BirationalMap.from_tuple(literal.map_tuple)
    return BirationalMap(literal.map_tuple, reduced_as_given=True)


def _coordinate(text: str, field: str) -> Any:
    text = text.strip()
    if field in ("RR", "CC"):
        return complex(text.replace("i", "j")) if "i" in text else float(text)
    return Fraction(text)


class Cli:
    """Dispatches parsed arguments; every command returns (report, exit code)."""

    def __init__(self, log: Logger, config: Config, args: argparse.Namespace):
        self.__log = log
        self.config = config
        self.args = args
        self.field = DomainFactory.create_domain(args.field).tag

    def _map(self, text: str, field: Optional[str] = None) -> BirationalMap:
        return _as_map(parse_map(text, field or self.field))

    def compose(self) -> tuple[Any, int]:
        f, g = self._map(self.args.f), self._map(self.args.g)
        return {"field": self.field, "result": compose(f, g).map_tuple}, 0

    def order(self) -> tuple[Any, int]:
        return {"result": self._map(self.args.f).order(self.args.bound)}, 0

    def eval(self) -> tuple[Any, int]:
        f = self._map(self.args.f)
        point = [_coordinate(c, self.field) for c in self.args.point.split(",")]
        return {"field": self.field, "result": eval_point(f, point)}, 0

    def limit(self) -> tuple[Any, int]:
        loader = Loader(MapFileLoadStrategy(self.__log))
        maps = [_as_map(lit) for lit in loader.load_data(file_path=self.args.maps_file, field=self.field)]
        params = None
        if self.args.params:
            params = [float(Fraction(v)) for v in self.args.params.split(",")]
        report = ConvergenceAnalyzer(self.__log, self.config).analyse_sequence(maps, params)
        return {"field": self.field, "result": report}, 0

    def certify_inverse(self) -> tuple[Any, int]:
        ok = certify_inverse(self._map(self.args.f, "QQ"), self._map(self.args.g, "QQ"))
        return {"result": ok}, 0 if ok else 1

    def padic_gate(self) -> tuple[Any, int]:
        gate = PadicGate(self.__log, self.config)
        if self.field.startswith("Qp:"):
            _, p, n = self.field.split(":")
            gate.p, gate.N = int(p), int(n)
        f = self._map(self.args.f, "QQ")
        verdict = gate.identity_gate(gate.chart(f), self.args.order_bound, f)
        return {"p": gate.p, "N": gate.N, "result": verdict}, 0

    def cloud(self) -> tuple[Any, int]:
        family = OscillatingFamily(self.__log, self.config, self.args.depth)
        report = family.indeterminacy_cloud(
            self.args.eps, self.args.count, seed=self.args.seed, real=self.args.real
        )
        if self.args.csv:
            Exporter(CsvExportStrategy(self.__log)).export_data(report.points, Path(self.args.csv))
        return {"result": report}, 0

    def _overrides(self, defaults: dict[str, Any]) -> dict[str, Any]:
        overrides = {}
        if getattr(self.args, "params", None):
            overrides = Loader(YamlParamsLoadStrategy(self.__log)).load_data(file_path=self.args.params)
        seed = self.args.seed
        if seed is not None and "seed" in defaults:
            overrides["seed"] = seed
        return overrides

    def scenario(self) -> tuple[Any, int]:
        name = self.args.name
        scenario = ScenarioFactory.create_scenario(self.__log, name, self.config)
        report = scenario.run(self._overrides(scenario.defaults))
        return report, 0 if report.passed else 1

    def scenarios(self) -> tuple[Any, int]:
        names = ScenarioFactory.get_supported_scenarios()
        if not self.args.run:
            return {"scenarios": names}, 0
        reports = {}
        for name in names:
            scenario = ScenarioFactory.create_scenario(self.__log, name, self.config)
            reports[name] = scenario.run(self._overrides(scenario.defaults))
        passed = all(r.passed for r in reports.values())
        return {"passed": passed, "reports": reports}, 0 if passed else 1

    def dispatch(self) -> tuple[Any, int]:
        return getattr(self, self.args.command.replace("-", "_"))()


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    log = Logger(args.debug_level or 0)
    try:
        config = Config(log, args.config or Config.DEFAULTS_PATH)
        if args.debug_level is None:
            log.set_debug_level(config.get_int(Key.Cremona.debug_level.key, 0))
        digits = config.get_int(Key.Cli.float_digits.key, Key.Cli.float_digits.default_value)
        report, code = Cli(log, config, args).dispatch()
    except USAGE_ERRORS as e:
        log.error(f"[CLI] {type(e).__name__}: {e}")
        return 2
    text = render(report, digits)
    print(text)
    if args.json_out:
        Exporter(JsonExportStrategy(log, digits)).export_data(report, Path(args.json_out))
    return code


if __name__ == "__main__":
    sys.exit(main())
