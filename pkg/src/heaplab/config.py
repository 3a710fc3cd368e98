import os
from pathlib import Path
from typing import Any, Optional

import toml
from dotenv import load_dotenv
from pydantic import Field, ValidationError

from . import sys_utils
from .errors import InputError
from .types_ import BaseModel

ENV_PREFIX = "HEAPLAB_"


class HeaplabConfig(BaseModel):
    regular_max_vertices: int = Field(default=8, ge=0)
    search_max_vertices: int = Field(default=12, ge=0)
    characteristic: int = Field(default=0, ge=0)
    confluence_samples: int = Field(default=1000, ge=0)
    confluence_orders: int = Field(default=10, ge=1)
    seed: int = 0
    per_size_cap: Optional[int] = Field(default=None, ge=1)
    time_budget_s: Optional[float] = Field(default=None, gt=0)


def get_app_dir_xdg() -> str:
    xdg_config_dir = os.environ.get("XDG_CONFIG_HOME", os.path.expanduser("~/.config"))
    return os.path.join(xdg_config_dir, "heaplab")


def config_files(cwd: Optional[Path] = None) -> list[Path]:
    """Config files in increasing precedence; missing ones are skipped."""
    candidates = [
        Path(get_app_dir_xdg()) / "config.toml",
        (cwd or Path.cwd()) / "heaplab.toml",
    ]
    return [p for p in candidates if p.is_file()]


def _read_toml(path: Path) -> dict[str, Any]:
    try:
        data = toml.load(path)
    except toml.TomlDecodeError as e:
        raise InputError(f"{path}:{e.lineno}: invalid TOML ({e.msg})") from None
    # Either top-level keys or a [heaplab] table
    section = data.get("heaplab", data)
    if not isinstance(section, dict):
        raise InputError(f"{path}: [heaplab] must be a table")
    return section


def _from_env() -> dict[str, Any]:
    out: dict[str, Any] = {}
    for name in HeaplabConfig.model_fields:
        value = os.environ.get(ENV_PREFIX + name.upper())
        if value is not None and value != "":
            out[name] = value
    return out


def load_config(cwd: Optional[Path] = None, **overrides: Any) -> HeaplabConfig:
    """Defaults, then config files, then ``HEAPLAB_*`` variables, then ``overrides``.

    ``None`` overrides are ignored so CLI options left unset fall through.
    """
    load_dotenv()
    merged: dict[str, Any] = {}
    for path in config_files(cwd):
        sys_utils.console.log(f"Reading config from {path}")
        merged.update(_read_toml(path))
    merged.update(_from_env())
    merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return HeaplabConfig.model_validate(merged)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise InputError(f"Invalid configuration value for '{where}': {first['msg']}") from None
