from __future__ import annotations

from pathlib import Path

PRESET_DIR = Path(__file__).parent / "data"
PRESET_PATH = "{name}.json"
