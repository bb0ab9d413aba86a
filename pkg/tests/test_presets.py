from __future__ import annotations

from pathlib import Path

import orjson
import pytest

from scala.errors import ConfigError
from scala.models import DatasetPreset, RunConfig
from scala.presets import PresetManager, load_preset, preset_names
from scala.presets.data import DatasetPresets


def test_all_presets_ship() -> None:
    assert preset_names() == ["acm", "citeseer", "cora", "dblp", "pubmed"]


@pytest.mark.parametrize("name", ["acm", "citeseer", "cora", "dblp", "pubmed"])
def test_presets_are_valid(name: str) -> None:
    preset = load_preset(name)
    assert preset.name == name
    train = preset.train_config(seed=2)
    assert train.rng_seed == 2
    assert 0.0 <= train.gamma <= 1.0
    assert train.lambda_ == preset.lambda_
    injection = preset.injection_config(seed=2)
    assert injection.total == preset.anomaly_count


def test_cora_preset() -> None:
    preset = load_preset("Cora")
    assert (preset.learning_rate, preset.epochs, preset.gamma) == (0.001, 100, 0.9)
    assert (preset.lambda_, preset.epsilon) == (0.2, 0.1)
    injection = preset.injection_config()
    assert (injection.clique_size, injection.clique_count) == (15, 5)
    assert injection.attribute_anomaly_count == 75


def test_unknown_preset() -> None:
    with pytest.raises(ConfigError, match="available"):
        load_preset("reddit")


def test_manager_load() -> None:
    manager = PresetManager()
    assert manager.names() == []
    assert manager.load()
    assert "dblp" in manager.names()
    assert isinstance(manager.get("DBLP"), DatasetPreset)


def test_run_config_from_preset() -> None:
    cfg = RunConfig.from_preset("dblp", seed=5)
    assert cfg.train.learning_rate == 0.003
    assert cfg.train.epochs == 400
    assert cfg.sampler.rng_seed == cfg.injection.rng_seed == cfg.train.rng_seed == 5
    assert cfg.output_dir.name == "dblp"
    assert cfg.dataset is None


def test_invalid_preset_files_are_skipped(tmp_path: Path) -> None:
    cora = load_preset("cora")
    (tmp_path / "cora.json").write_bytes(orjson.dumps(cora.model_dump(by_alias=True)))
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    (tmp_path / "partial.json").write_text('{"name": "partial"}', encoding="utf-8")

    presets = DatasetPresets(tmp_path)
    assert presets.load()
    assert list(presets) == ["cora"]
    assert presets["CORA"] == cora


def test_empty_preset_directory(tmp_path: Path) -> None:
    presets = DatasetPresets(tmp_path)
    assert not presets.load()
    with pytest.raises(ConfigError, match="no presets"):
        presets["cora"]
