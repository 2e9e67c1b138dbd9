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

import configparser as cp
import json
import os.path
from dataclasses import dataclass
from inspect import getmembers, isclass
from pathlib import Path

from src.utils.Defaults import DefaultKeys as Key, ConfigKey
from src.utils.Logger import Logger


def _section_keys(section_class) -> dict:
    return {
        name: value for name, value in vars(section_class).items() if isinstance(value, ConfigKey)
    }


def _known_sections() -> dict:
    return {
        name.lower(): cls
        for name, cls in getmembers(Key, isclass)
        if cls.__module__ == Key.__module__ and cls is not Key
    }


@dataclass
class Config:
    DEFAULTS_PATH = str(Path(__file__).resolve().parents[2] / "conf" / "defaults.ini")

    def __init__(self, log: Logger, _param: object = None):
        self.__config = {}
        self.__log = log
        if _param is None:
            _param = {}
        if isinstance(_param, dict):
            self.__config = dict(_param)
        elif isinstance(_param, (str, Path)):
            self.__load_from_file(str(_param))
        else:
            self.__log.error(f"Invalid type for conf: {type(_param)}. Expected path (str) or dict.")
            raise ValueError(f"Invalid type for conf: {type(_param)}")

    def __str__(self):
        return f"Config: {self.__config}"

    def __load_from_file(self, _param: str):
        if not os.path.exists(_param):
            self.__log.error(f"Configuration file {_param} not found or does not exist.")
            raise FileNotFoundError(f"Configuration file {_param} not found.")
        if _param.endswith(".ini"):
            self.__load_ini_file(_param)
        elif _param.endswith(".json"):
            self.__load_json_file(_param)
        else:
            self.__log.error(f"Invalid configuration file {_param}. Expected .ini or .json file.")
            raise ValueError(f"Invalid configuration file {_param}")

    def __load_json_file(self, _param: str):
        try:
            with open(_param, "r") as f:
                file_config = json.load(f)
            if "config" in file_config:
                file_config = file_config["config"]
                if isinstance(file_config, str):
                    file_config = json.loads(file_config)
            self.__config = dict(file_config)
        except Exception as e:
            self.__log.error(f"Error while loading json file: {str(e)}")
            raise e

    def __load_ini_file(self, _param: str):
        self.__init_defaults()
        if os.path.abspath(_param) != os.path.abspath(self.DEFAULTS_PATH):
            parser = cp.ConfigParser()
            parser.read(_param)
            self.__validate_and_read_sections(parser)

    def __init_defaults(self):
        parser = cp.ConfigParser()
        parser.read(self.DEFAULTS_PATH)
        for section in parser.sections():
            for key in parser[section]:
                self.__config[f"{section}.{key}"] = parser[section][key]

    def __validate_and_read_sections(self, parser: cp.ConfigParser):
        sections = _known_sections()
        for section in parser.sections():
            if section not in sections:
                self.__log.error(f"Unknown configuration section [{section}]")
                raise ValueError(f"Unknown configuration section [{section}]")
            known = {k.key: k for k in _section_keys(sections[section]).values()}
            for key, value in parser.items(section):
                dict_key = f"{section}.{key}"
                if dict_key not in known:
                    self.__log.warning(f"Ignoring unknown key {dict_key}")
                    continue
                self.__check_type(known[dict_key], value)
                self.__config[dict_key] = value

    def __check_type(self, config_key: ConfigKey, value: str):
        default = config_key.default_value
        if default is None:
            return
        try:
            type(default)(value)
        except ValueError:
            self.__log.error(
                f"Invalid value {value!r} for {config_key.key}: expected {type(default).__name__}"
            )
            raise ValueError(f"Invalid value {value!r} for {config_key.key}")

    def get(self, key, default=None):
        return self.__config.get(key, default)

    def get_int(self, key, default=None) -> int:
        value = self.get(key, default)
        if value is None:
            raise ValueError(f"Configuration key '{key}' not found and no default provided")
        return int(value)

    def get_bool(self, key, default=None) -> bool:
        value = self.get(key, default)
        if value is None:
            raise ValueError(f"Configuration key '{key}' not found and no default provided")
        return str(value).lower() == "true"

    def get_float(self, key, default=None) -> float:
        value = self.get(key, default)
        if value is None:
            raise ValueError(f"Configuration key '{key}' not found and no default provided")
        return float(value)

    def get_str(self, key, default=None) -> str:
        value = self.get(key, default)
        if value is None:
            raise ValueError(f"Configuration key '{key}' not found and no default provided")
        return str(value)

    def get_list_str(self, key, default=None) -> list[str]:
        value = self.get(key, default)
        if value is None:
            raise ValueError(f"Configuration key '{key}' not found and no default provided")
        if isinstance(value, list):
            return [str(v) for v in value]
        return [v.strip() for v in str(value).replace(",", " ").split() if v.strip()]

    def get_list_int(self, key, default=None) -> list[int]:
        return [int(v) for v in self.get_list_str(key, default)]

    def set(self, key, value) -> None:
        self.__config[key] = value

    def to_json(self) -> str:
        return json.dumps(self.__config, sort_keys=True, default=str)
