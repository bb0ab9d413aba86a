from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

import orjson
from loguru import logger
from pydantic import ValidationError

from .artifacts import (
    load_scores,
    save_homophily,
    save_json,
    save_loss_trace,
    save_metrics,
    save_roc,
    save_scores,
    save_spar_scores,
)
from .constants.graph import DEFAULT_CANDIDATE_POOL, DEFAULT_CLIQUE_SIZE
from .errors import ConfigError, ScalaError
from .evaluation import build_report, require_both_classes
from .graph import (
    homophily_stats,
    inject_anomalies,
    load_graph,
    load_labels,
    planted_graph,
    save_edge_list,
    save_graph,
    save_labels,
)
from .model import ModelParams
from .models import AnomalyLabels, AttributedGraph, DatasetPaths, InjectionConfig, RunConfig
from .pipeline import prepare_views, run_ablation, run_pipeline, train
from .presets import preset_names
from .sparsify import edge_similarities, save_similarities

if TYPE_CHECKING:
    from collections.abc import Callable

    import numpy as np

__all__ = ("build_parser", "main")

OUTPUT_DIR_ENV = "SCALA_OUTPUT_DIR"

# planted-graph shape for --synthetic inputs
_SYNTHETIC_NODES_PER_COMMUNITY = 50
_SYNTHETIC_FEATURES = 32
_SYNTHETIC_DEGREE = 8.0
_SYNTHETIC_NOISE = 0.5
# share of a synthetic graph injected when the config asks for no anomalies
_SYNTHETIC_ANOMALY_FRACTION = 0.1


def _read_config(args: argparse.Namespace) -> RunConfig:
    dataset = None
    if args.edges is not None or args.attrs is not None:
        if args.edges is None or args.attrs is None:
            msg = "--edges and --attrs must be given together"
            raise ConfigError(msg)
        dataset = DatasetPaths(edges=args.edges, attrs=args.attrs, labels=args.labels)

    if args.config is not None:
        try:
            data = orjson.loads(Path(args.config).read_bytes())
        except (OSError, orjson.JSONDecodeError) as e:
            msg = f"cannot read config {args.config}: {e}"
            raise ConfigError(msg) from e
        cfg = RunConfig.model_validate(data)
    elif args.preset is not None:
        cfg = RunConfig.from_preset(args.preset, seed=args.seed or 0)
    else:
        cfg = RunConfig()

    if dataset is not None:
        cfg = cfg.model_copy(update={"dataset": dataset})
    output_dir = args.output_dir or os.environ.get(OUTPUT_DIR_ENV)
    return cfg.with_overrides(
        seed=args.seed,
        rounds=args.rounds,
        epochs=args.epochs,
        threads=args.threads,
        output_dir=Path(output_dir) if output_dir else None,
    )


def _synthetic_injection(injection: InjectionConfig, n: int) -> InjectionConfig:
    if injection.total > 0:
        return injection
    total = max(2, round(n * _SYNTHETIC_ANOMALY_FRACTION))
    scaled = InjectionConfig.equal_split(
        total,
        clique_size=min(DEFAULT_CLIQUE_SIZE, max(2, total // 2)),
        candidate_pool_size=min(DEFAULT_CANDIDATE_POOL, n - 1),
        rng_seed=injection.rng_seed,
    )
    logger.info(
        f"No anomalies configured; injecting {scaled.clique_count} cliques of {scaled.clique_size} "
        f"and {scaled.attribute_anomaly_count} attribute anomalies"
    )
    return scaled


def _load_input(cfg: RunConfig, args: argparse.Namespace) -> tuple[AttributedGraph, AnomalyLabels | None]:
    if args.synthetic is not None:
        graph, _ = planted_graph(
            args.synthetic,
            max(2, args.synthetic // _SYNTHETIC_NODES_PER_COMMUNITY),
            _SYNTHETIC_FEATURES,
            _SYNTHETIC_DEGREE,
            _SYNTHETIC_NOISE,
            cfg.seed,
        )
        return inject_anomalies(graph, _synthetic_injection(cfg.injection, graph.n))

    if cfg.dataset is None:
        msg = "no input graph: pass --edges/--attrs, a config with a dataset section, or --synthetic"
        raise ConfigError(msg)
    graph = load_graph(cfg.dataset.edges, cfg.dataset.attrs)
    labels = None
    if cfg.dataset.labels is not None:
        labels = load_labels(cfg.dataset.labels)
        if labels.n != graph.n:
            msg = f"labels cover {labels.n} nodes, graph has {graph.n}"
            raise ConfigError(msg)
    return graph, labels


def _require_labels(labels: AnomalyLabels | None, command: str) -> AnomalyLabels:
    if labels is None:
        msg = f"{command} needs ground-truth labels (dataset.labels or --labels)"
        raise ConfigError(msg)
    return labels


def _config_echo(cfg: RunConfig) -> dict[str, Any]:
    return cfg.model_dump(mode="json", by_alias=True)


def cmd_inject(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, labels = _load_input(cfg, args)
    if args.synthetic is None:
        graph, labels = inject_anomalies(graph, cfg.injection)
    labels = _require_labels(labels, "inject")
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    save_graph(graph, out / "graph.edges", out / "graph.attrs.csv")
    save_labels(labels, out / "labels.csv")
    logger.info(f"Wrote injected graph with {labels.anomaly_count} anomalies to {out}")


def cmd_sparsify(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, _ = _load_input(cfg, args)
    views = prepare_views(graph, cfg.train)
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    save_similarities(views.similarity, out / "similarities.csv")
    save_edge_list(views.spar_graph, out / "spar.edges")
    save_spar_scores(views.spar_raw, out / "spar_scores.csv")
    logger.info(f"Spar view keeps {views.view.m} of {graph.m} edges")


def cmd_train(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, _ = _load_input(cfg, args)
    views = prepare_views(graph, cfg.train)
    result = train(graph, views.spar_graph, cfg.train, cfg.sampler, progress=args.progress)
    result.params.save(cfg.checkpoint_path, meta={"config": _config_echo(cfg)})
    save_loss_trace(result.loss_trace, cfg.output_dir / "loss_trace.csv")
    logger.info(f"Saved checkpoint to {cfg.checkpoint_path}")


def cmd_score(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, labels = _load_input(cfg, args)
    params, _ = ModelParams.load(cfg.checkpoint_path)
    result = run_pipeline(
        graph, cfg.train, cfg.sampler, labels=labels, params=params, progress=args.progress
    )
    save_scores(result.scores, cfg.output_dir / "scores.csv")


def _write_report(cfg: RunConfig, final: np.ndarray, labels: np.ndarray) -> None:
    report = build_report(final, labels, seed=cfg.seed, config=_config_echo(cfg))
    save_metrics(report, cfg.output_dir / "metrics.json")
    save_roc(report.roc_points, cfg.output_dir / "roc.csv")
    logger.info(f"AUC={report.auc:.4f} ({report.n_pos} anomalies, {report.n_neg} normal)")


def cmd_eval(cfg: RunConfig, args: argparse.Namespace) -> None:
    table = load_scores(args.scores or cfg.output_dir / "scores.csv")
    labels = table.labels
    if labels is None and cfg.dataset is not None and cfg.dataset.labels is not None:
        labels = load_labels(cfg.dataset.labels).binary
    if labels is None:
        msg = "eval needs labels in the scores file or in dataset.labels"
        raise ConfigError(msg)
    _write_report(cfg, table.final, labels)


def cmd_pipeline(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, labels = _load_input(cfg, args)
    if labels is not None:
        require_both_classes(labels.binary)
    result = run_pipeline(graph, cfg.train, cfg.sampler, labels=labels, progress=args.progress)
    out = cfg.output_dir
    result.training.params.save(cfg.checkpoint_path, meta={"config": _config_echo(cfg)})
    save_loss_trace(result.training.loss_trace, out / "loss_trace.csv")
    save_scores(result.scores, out / "scores.csv")
    if labels is None:
        logger.warning("No ground-truth labels; skipping metrics and ROC")
        return
    _write_report(cfg, result.scores.final, labels.binary)


def cmd_homophily(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, labels = _load_input(cfg, args)
    labels = _require_labels(labels, "homophily")
    histogram = homophily_stats(
        graph, edge_similarities(graph, full_row=cfg.train.full_row_normalization), labels
    )
    save_homophily(histogram, cfg.output_dir / "homophily.csv")
    logger.info(
        f"Mean neighbor similarity: normal={histogram.normal_mean}, "
        f"anomalous={histogram.anomalous_mean}, isolated={histogram.isolated_count}"
    )


def cmd_ablate(cfg: RunConfig, args: argparse.Namespace) -> None:
    graph, labels = _load_input(cfg, args)
    labels = _require_labels(labels, "ablate")
    require_both_classes(labels.binary)
    results = run_ablation(graph, labels, cfg.train, cfg.sampler, progress=args.progress)
    save_json(
        {
            "auc": {variant.value: value for variant, value in results.items()},
            "seed": cfg.seed,
            "config": _config_echo(cfg),
        },
        cfg.output_dir / "ablation.json",
    )


COMMANDS: dict[str, tuple[Callable[[RunConfig, argparse.Namespace], None], str]] = {
    "inject": (cmd_inject, "inject structural and attribute anomalies"),
    "sparsify": (cmd_sparsify, "compute similarities and the sparsified view"),
    "train": (cmd_train, "train the model and write a checkpoint"),
    "score": (cmd_score, "score every node with a trained checkpoint"),
    "eval": (cmd_eval, "compute AUC and ROC from a scores file"),
    "pipeline": (cmd_pipeline, "sparsify, train, score and evaluate"),
    "homophily": (cmd_homophily, "histogram of mean neighbor similarity"),
    "ablate": (cmd_ablate, "AUC of the model with each component removed"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("input")
    source.add_argument("--config", type=Path, help="run config JSON")
    source.add_argument("--preset", choices=preset_names(), help="published dataset hyperparameters")
    source.add_argument("--edges", type=Path, help="edge list, overrides dataset.edges")
    source.add_argument("--attrs", type=Path, help="attribute CSV, overrides dataset.attrs")
    source.add_argument("--labels", type=Path, help="labels CSV, overrides dataset.labels")
    source.add_argument(
        "--synthetic", type=int, metavar="N", help="use a planted N-node graph with injected anomalies"
    )
    overrides = common.add_argument_group("overrides")
    overrides.add_argument("--seed", type=int)
    overrides.add_argument("--rounds", type=int, help="inference rounds")
    overrides.add_argument("--epochs", type=int)
    overrides.add_argument("--threads", type=int, help="cap on parallel inference lanes")
    overrides.add_argument("--output-dir", type=Path, help=f"overrides ${OUTPUT_DIR_ENV}")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument(
        "--no-progress", dest="progress", action="store_false", help="hide progress bars"
    )

    parser = argparse.ArgumentParser(
        prog="scala", description="Sparsification-augmented contrastive graph anomaly detection."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        if name == "eval":
            cmd.add_argument("--scores", type=Path, help="scores CSV, defaults to OUTPUT/scores.csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if args.verbose else "INFO")

    handler, _ = COMMANDS[args.command]
    try:
        cfg = _read_config(args)
        handler(cfg, args)
    except (ScalaError, ValidationError, OSError) as e:
        logger.error(str(e))
        return 1
    return 0
