# Copyright 2026 The slsac developers
# See the top-level LICENSE file for details.
#
# SPDX-License-Identifier: MIT
import os
import platform
from pathlib import Path
from threading import Lock
from typing import Any

import tomlkit
from typing_extensions import Self

OUTPUT_DIR_ENV = "SLSAC_OUT_DIR"


class ConfigManager:
    """User-level settings for slsac, stored in a TOML file. These are not run
    hyperparameters (those live in run config files); they hold things like the default
    output root and disabled environment plugins. The loaded document is cached, so
    external edits made while a program is running are not picked up.

    Attributes:
        app_name (str): The name of the application. (Default: 'slsac')
        config_dir (Optional[Path]): The directory where the settings file is stored.
        config (tomlkit.document): The settings document loaded by tomlkit. Preserves formatting and comments.
        config_file_path (Path): The path to the settings file.
    """

    _initialized: bool = False
    _instances: dict[str, "ConfigManager"] = {}
    _lock = Lock()

    def __new__(cls, app_name: str = "slsac", config_dir: str | Path | None = None) -> Self:
        """Manage one settings manager per application name.

        Args:
            app_name (str): The name of the application. (Default: 'slsac')
            config_dir (Optional[Union[str, Path]]): The directory where the settings are stored.

        Returns:
            ConfigManager: The singleton instance for the given application name.
        """
        with cls._lock:
            if app_name not in cls._instances:
                instance = super().__new__(cls)
                instance._initialized = False
                cls._instances[app_name] = instance
            return cls._instances[app_name]

    config_file_path: Path

    def __init__(self, app_name: str = "slsac", config_dir: str | Path | None = None) -> None:
        if self._initialized:
            return
        self._initialized = True

        self.app_name = app_name

        self.config_dir = Path(config_dir) / app_name if config_dir else None
        self.config = tomlkit.document()
        self.config_file_path = self._get_config_file_path()
        self._load_config()

    def _get_config_file_path(self) -> Path:
        if self.config_dir:
            config_file = Path(self.config_dir) / "config.toml"
        else:
            if platform.system() == "Windows":
                config_dir = Path(os.getenv("APPDATA", str(Path("~\\AppData\\Roaming"))))
            else:
                config_dir = Path(os.getenv("XDG_CONFIG_HOME", str(Path("~/.config"))))
            config_file = config_dir / self.app_name / "config.toml"
        return config_file.expanduser()

    def _load_config(self) -> None:
        if self.config_file_path.exists():
            with self.config_file_path.open() as configfile:
                self.config = tomlkit.parse(configfile.read())

    def get(self, section: str, option: str, fallback: Any | None = None) -> Any:
        """Gets a setting value.

        Args:
            section (str): The section within the settings file.
            option (str): The option within the section.
            fallback (Optional[Any]): Returned when the option is not set.

        Returns:
            Any: The stored value or the fallback value.
        """
        return self.config.get(section, {}).get(option, fallback)

    def set(self, section: str, option: str, value: Any) -> None:
        """Sets a setting value and writes the file."""
        if section not in self.config:
            self.config[section] = tomlkit.table()
        self.config[section][option] = value
        self._save_config()

    def _save_config(self) -> None:
        if not self.config_file_path.exists():
            self.config_file_path.parent.mkdir(parents=True, exist_ok=True)
        with Path(self.config_file_path).open("w") as configfile:
            configfile.write(tomlkit.dumps(self.config))

    def __getitem__(self, key: str) -> Any:
        """Dictionary-like access to a TOML table or value; 'None' when the key is absent."""
        if key not in self.config:
            return None
        return self.config[key]

    @classmethod
    def delete_instance(cls, app_name: str) -> None:
        with cls._lock:
            if app_name in cls._instances:
                del cls._instances[app_name]

    def output_root(self, explicit: str | Path | None = None) -> Path:
        """Resolves where run directories are written.

        Precedence: an explicit path, then the SLSAC_OUT_DIR environment variable, then the
        'core.output_dir' setting, then './runs'.
        """
        if explicit:
            return Path(explicit).expanduser()
        from_env = os.getenv(OUTPUT_DIR_ENV)
        if from_env:
            return Path(from_env).expanduser()
        from_settings = self.get("core", "output_dir")
        if from_settings:
            return Path(str(from_settings)).expanduser()
        return Path("runs")
