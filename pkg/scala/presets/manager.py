from __future__ import annotations

from functools import cache
from typing import TYPE_CHECKING

from loguru import logger

from .data import DatasetPresets

if TYPE_CHECKING:
    from ..models import DatasetPreset

__all__ = ("PresetManager", "load_preset", "preset_names")


class PresetManager:
    """Shipped per-dataset hyperparameter presets."""

    def __init__(self) -> None:
        self.datasets = DatasetPresets()

    def load(self) -> bool:
        """Load all presets.

        Returns:
            bool: Whether any preset was found.
        """
        loaded = self.datasets.load()
        logger.debug(f"Loaded presets: {self.names()}")
        return loaded

    def names(self) -> list[str]:
        return list(self.datasets) if self.datasets.loaded else []

    def get(self, name: str) -> DatasetPreset:
        """Get a dataset's preset by name (case-insensitive).

        Raises:
            ConfigError: If no preset has this name.
        """
        return self.datasets[name]


@cache
def _manager() -> PresetManager:
    manager = PresetManager()
    manager.load()
    return manager


def load_preset(name: str) -> DatasetPreset:
    return _manager().get(name)


def preset_names() -> list[str]:
    return _manager().names()
