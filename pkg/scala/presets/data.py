from __future__ import annotations

from typing import TYPE_CHECKING

import orjson
from loguru import logger
from pydantic import ValidationError

from ..errors import ConfigError
from ..models import DatasetPreset
from .file_paths import PRESET_DIR, PRESET_PATH

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

__all__ = ("DatasetPresets",)


class DatasetPresets:
    """Validated presets keyed by lowercase dataset name."""

    def __init__(self, directory: Path = PRESET_DIR) -> None:
        self._directory = directory
        self._presets: dict[str, DatasetPreset] | None = None

    def __getitem__(self, name: str) -> DatasetPreset:
        presets = self._require()
        preset = presets.get(name.lower())
        if preset is None:
            msg = f"unknown preset {name!r}, available: {', '.join(presets)}"
            raise ConfigError(msg)
        return preset

    def __contains__(self, name: str) -> bool:
        return self._presets is not None and name.lower() in self._presets

    def __iter__(self) -> Iterator[str]:
        return iter(self._require())

    @property
    def loaded(self) -> bool:
        return self._presets is not None

    def load(self) -> bool:
        """Read every preset file in the directory.

        Unreadable or invalid files are skipped with a warning.

        Returns:
            bool: Whether at least one preset was loaded.
        """
        presets: dict[str, DatasetPreset] = {}
        for path in sorted(self._directory.glob(PRESET_PATH.format(name="*"))):
            preset = self._read(path)
            if preset is not None:
                presets[path.stem.lower()] = preset
        self._presets = presets or None
        return self.loaded

    def _require(self) -> dict[str, DatasetPreset]:
        if self._presets is None:
            msg = f"no presets loaded from {self._directory}"
            raise ConfigError(msg)
        return self._presets

    @staticmethod
    def _read(path: Path) -> DatasetPreset | None:
        try:
            return DatasetPreset.model_validate(orjson.loads(path.read_bytes()))
        except (OSError, orjson.JSONDecodeError, ValidationError) as e:
            logger.warning(f"Skipping preset {path.name}: {e}")
            return None
