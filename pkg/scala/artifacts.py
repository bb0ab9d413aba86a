"""Readers and writers for the files a run leaves in its output directory."""

from __future__ import annotations

import csv
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
import orjson

from .errors import MalformedInputError
from .models import HomophilyHistogram, MetricsReport, RocPoint, ScoreTable

__all__ = (
    "SCORE_COLUMNS",
    "load_scores",
    "save_homophily",
    "save_json",
    "save_loss_trace",
    "save_metrics",
    "save_roc",
    "save_scores",
    "save_spar_scores",
)

SCORE_COLUMNS = ("node_id", "score_spar_raw", "score_spar_norm", "score_con", "score_final", "label")


@contextmanager
def _csv_writer(path: Path | str) -> Iterator[Any]:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield csv.writer(f, lineterminator="\n")


def _num(value: float) -> str:
    return repr(float(value))


def save_scores(table: ScoreTable, path: Path | str) -> None:
    with _csv_writer(path) as writer:
        writer.writerow(SCORE_COLUMNS)
        writer.writerows(
            (i, _num(r), _num(s), _num(c), _num(v), y) for i, r, s, c, v, y in table.rows()
        )


def load_scores(path: Path | str) -> ScoreTable:
    """Read a scores CSV back; a label column of all -1 means no ground truth.

    The fusion weight is not stored in the file and reads back as NaN.
    """
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != SCORE_COLUMNS:
            raise MalformedInputError(str(path), 1, f"expected header {','.join(SCORE_COLUMNS)}")
        rows = []
        for lineno, cells in enumerate(reader, start=2):
            try:
                rows.append([float(c) for c in cells[1:5]] + [int(cells[5])])
            except (ValueError, IndexError) as e:
                raise MalformedInputError(str(path), lineno, "expected six numeric columns") from e

    data = np.asarray(rows, dtype=np.float64).reshape(-1, 5)
    labels = data[:, 4].astype(np.int64)
    return ScoreTable(
        spar_raw=data[:, 0],
        spar_norm=data[:, 1],
        con=data[:, 2],
        final=data[:, 3],
        labels=None if (labels < 0).all() else labels,
        lambda_=float("nan"),
    )


def save_loss_trace(loss_trace: list[float], path: Path | str) -> None:
    with _csv_writer(path) as writer:
        writer.writerow(("epoch", "loss"))
        writer.writerows((epoch, _num(loss)) for epoch, loss in enumerate(loss_trace, start=1))


def save_roc(points: list[RocPoint], path: Path | str) -> None:
    with _csv_writer(path) as writer:
        writer.writerow(("fpr", "tpr", "threshold"))
        writer.writerows((_num(p.fpr), _num(p.tpr), _num(p.threshold)) for p in points)


def save_homophily(histogram: HomophilyHistogram, path: Path | str) -> None:
    with _csv_writer(path) as writer:
        writer.writerow(("bin_lo", "bin_hi", "pct_normal", "pct_anomalous"))
        writer.writerows(
            (_num(b.bin_lo), _num(b.bin_hi), _num(b.pct_normal), _num(b.pct_anomalous))
            for b in histogram.bins
        )


def save_spar_scores(spar_raw: np.ndarray, path: Path | str) -> None:
    with _csv_writer(path) as writer:
        writer.writerow(("node_id", "score_spar_raw"))
        writer.writerows(enumerate(_num(v) for v in spar_raw.tolist()))


def save_json(data: Any, path: Path | str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_bytes(orjson.dumps(data, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS))


def save_metrics(report: MetricsReport, path: Path | str) -> None:
    save_json(report.model_dump(mode="json"), path)
