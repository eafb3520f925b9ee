"""File formats: strict CSVs, canonical JSON documents, manifests, reports.

CSV layout is ``id,<name>,...`` with UTF-8 text and LF or CRLF endings; every
malformed cell is reported with its 1-based line and column. JSON documents
are written canonically (sorted keys, 17-significant-digit floats, compact
separators), so rerunning any command yields byte-identical output.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import LabelMatrix, PredictionMatrix
from .errors import (
    CsvError,
    DuplicateIdError,
    DuplicateNameError,
    ManifestError,
    MissingHeaderError,
    NonBinaryCellError,
    NonNumericCellError,
    OutOfRangeError,
    RaggedRowError,
    SchemaVersionError,
    ValidationError,
)
from .sampling import RNG_NAME, FoldSpec, SamplerConfig
from .stats import BINNING_MODES, CorrelationResult, DistanceBinning
from .synth import SyntheticCheckpoint, WorldConfig

__all__ = [
    "SCHEMA_VERSION",
    "read_prediction_csv",
    "read_label_csv",
    "write_prediction_csv",
    "write_label_csv",
    "read_f1_csv",
    "read_source_weights",
    "canonical_json",
    "write_canonical_json",
    "ManifestEntry",
    "DatasetManifest",
    "read_manifest",
    "write_manifest",
    "load_manifest",
    "write_folds",
    "read_folds",
    "FoldRecord",
    "StudyAggregate",
    "ResultReport",
    "report_to_dict",
    "write_report",
    "read_report",
    "read_sampler_config",
    "read_synth_config",
    "melep_report_to_dict",
]

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# CSV matrices
# ---------------------------------------------------------------------------


def _read_rows(path: str | Path):
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeaderError(str(path), 1, None, "file is empty") from None
        if not header or header[0] != "id":
            raise MissingHeaderError(str(path), 1, 1, "header must start with 'id'")
        if len(header) < 2:
            raise MissingHeaderError(str(path), 1, None, "no label columns in header")
        names = header[1:]
        seen_names: set[str] = set()
        for j, name in enumerate(names):
            if name in seen_names:
                raise DuplicateNameError(str(path), 1, j + 2, f"duplicate column name {name!r}")
            seen_names.add(name)
        rows = []
        ids: list[str] = []
        seen_ids: set[str] = set()
        for record in reader:
            line = reader.line_num
            if len(record) != len(header):
                raise RaggedRowError(
                    str(path), line, None,
                    f"row has {len(record)} cells, header has {len(header)}",
                )
            rid = record[0]
            if rid in seen_ids:
                raise DuplicateIdError(str(path), line, 1, f"duplicate id {rid!r}")
            seen_ids.add(rid)
            ids.append(rid)
            rows.append((line, record[1:]))
    if not rows:
        raise CsvError(str(path), None, None, "no data rows")
    return path, names, ids, rows


def read_prediction_csv(path: str | Path) -> PredictionMatrix:
    """Parse a probability matrix; cells must be floats inside [0, 1]."""
    path, names, ids, rows = _read_rows(path)
    values = np.empty((len(rows), len(names)), dtype=np.float64)
    for i, (line, cells) in enumerate(rows):
        for j, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise NonNumericCellError(
                    str(path), line, j + 2, f"cell {cell!r} is not a number"
                ) from None
            if not (math.isfinite(value) and 0.0 <= value <= 1.0):
                raise OutOfRangeError(
                    str(path), line, j + 2, f"cell {cell!r} is outside [0, 1]"
                )
            values[i, j] = value
    return PredictionMatrix(values, tuple(names), tuple(ids))


def read_label_csv(path: str | Path) -> LabelMatrix:
    """Parse a binary matrix; cells must be literal 0 or 1."""
    path, names, ids, rows = _read_rows(path)
    values = np.empty((len(rows), len(names)), dtype=np.int8)
    for i, (line, cells) in enumerate(rows):
        for j, cell in enumerate(cells):
            stripped = cell.strip()
            if stripped == "0":
                values[i, j] = 0
            elif stripped == "1":
                values[i, j] = 1
            else:
                raise NonBinaryCellError(
                    str(path), line, j + 2, f"cell {cell!r} is not 0 or 1"
                )
    return LabelMatrix(values, tuple(names), tuple(ids))


def write_prediction_csv(path: str | Path, matrix: PredictionMatrix) -> None:
    """Write probabilities with shortest round-trip float formatting."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id", *matrix.label_names])
        for rid, row in zip(matrix.record_ids, matrix.values):
            writer.writerow([rid, *(repr(float(v)) for v in row)])


def write_label_csv(path: str | Path, matrix: LabelMatrix) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id", *matrix.label_names])
        for rid, row in zip(matrix.record_ids, matrix.values):
            writer.writerow([rid, *(str(int(v)) for v in row)])


def read_source_weights(path: str | Path) -> list[float]:
    """One weight per line, plain decimal text; blank lines are skipped."""
    values: list[float] = []
    for lineno, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        text = raw.strip()
        if not text:
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise NonNumericCellError(
                str(path), lineno, None, f"weight {text!r} is not a number"
            ) from None
    if not values:
        raise ValidationError(f"{path}: no weights found")
    return values


def read_f1_csv(path: str | Path) -> dict[tuple[int, str], float]:
    """Externally supplied per-fold F1 values keyed by (fold_id, checkpoint_id)."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeaderError(str(path), 1, None, "file is empty") from None
        if header != ["fold_id", "checkpoint_id", "weighted_f1"]:
            raise MissingHeaderError(
                str(path), 1, None,
                "header must be fold_id,checkpoint_id,weighted_f1",
            )
        out: dict[tuple[int, str], float] = {}
        for record in reader:
            line = reader.line_num
            if len(record) != 3:
                raise RaggedRowError(str(path), line, None, f"row has {len(record)} cells, expected 3")
            try:
                fold_id = int(record[0])
            except ValueError:
                raise NonNumericCellError(
                    str(path), line, 1, f"fold_id {record[0]!r} is not an integer"
                ) from None
            try:
                f1 = float(record[2])
            except ValueError:
                raise NonNumericCellError(
                    str(path), line, 3, f"weighted_f1 {record[2]!r} is not a number"
                ) from None
            if not (math.isfinite(f1) and 0.0 <= f1 <= 1.0):
                raise OutOfRangeError(str(path), line, 3, f"weighted_f1 {record[2]!r} is outside [0, 1]")
            key = (fold_id, record[1])
            if key in out:
                raise DuplicateIdError(str(path), line, 1, f"duplicate entry for {key}")
            out[key] = f1
    return out


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------


def canonical_json(value) -> str:
    """Serialize with sorted keys and 17-significant-digit floats."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValidationError(f"cannot serialize non-finite number {value!r}")
        return format(value + 0.0, ".17g")
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=True)
    if isinstance(value, dict):
        items = (
            f"{json.dumps(str(k), ensure_ascii=True)}:{canonical_json(v)}"
            for k, v in sorted(value.items())
        )
        return "{" + ",".join(items) + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(canonical_json(v) for v in value) + "]"
    raise ValidationError(f"cannot serialize {type(value).__name__}")


def write_canonical_json(path: str | Path, value) -> None:
    Path(path).write_text(canonical_json(value) + "\n", encoding="utf-8")


def _load_json(path: str | Path, kind: str) -> dict:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise ManifestError(f"{path}: {kind} must be a JSON object")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema_version {version!r} unsupported (this build reads {SCHEMA_VERSION})"
        )
    return obj


def _check_keys(obj: dict, required: dict, optional: dict, context: str) -> None:
    for key in required:
        if key not in obj:
            raise ManifestError(f"{context}: missing key {key!r}")
    allowed = set(required) | set(optional) | {"schema_version"}
    unknown = set(obj) - allowed
    if unknown:
        raise ManifestError(f"{context}: unknown keys {sorted(unknown)}")
    for key, types in {**required, **optional}.items():
        if key in obj and not isinstance(obj[key], types):
            raise ManifestError(f"{context}: key {key!r} has wrong type")


# ---------------------------------------------------------------------------
# dataset manifests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    checkpoint_id: str
    path: str
    source_label_names: tuple[str, ...]


@dataclass(frozen=True)
class DatasetManifest:
    name: str
    labels_path: str
    predictions: tuple[ManifestEntry, ...]


def read_manifest(path: str | Path) -> DatasetManifest:
    """Parse a manifest; file paths stay as written (resolved by load_manifest)."""
    obj = _load_json(path, "manifest")
    _check_keys(obj, {"name": str, "labels_path": str, "predictions": list}, {}, str(path))
    entries = []
    seen = set()
    for k, raw in enumerate(obj["predictions"]):
        if not isinstance(raw, dict):
            raise ManifestError(f"{path}: predictions[{k}] must be an object")
        _check_keys(
            raw,
            {"checkpoint_id": str, "path": str, "source_label_names": list},
            {},
            f"{path}: predictions[{k}]",
        )
        names = tuple(str(v) for v in raw["source_label_names"])
        if not names:
            raise ManifestError(f"{path}: predictions[{k}] has an empty source label list")
        if len(set(names)) != len(names):
            raise ManifestError(f"{path}: predictions[{k}] has duplicate source label names")
        cid = raw["checkpoint_id"]
        if cid in seen:
            raise ManifestError(f"{path}: duplicate checkpoint_id {cid!r}")
        seen.add(cid)
        entries.append(ManifestEntry(cid, raw["path"], names))
    if not entries:
        raise ManifestError(f"{path}: no prediction entries")
    return DatasetManifest(obj["name"], obj["labels_path"], tuple(entries))


def write_manifest(path: str | Path, manifest: DatasetManifest) -> None:
    write_canonical_json(path, {
        "schema_version": SCHEMA_VERSION,
        "name": manifest.name,
        "labels_path": manifest.labels_path,
        "predictions": [
            {
                "checkpoint_id": e.checkpoint_id,
                "path": e.path,
                "source_label_names": list(e.source_label_names),
            }
            for e in manifest.predictions
        ],
    })


def load_manifest(path: str | Path, labels_path: str | Path | None = None):
    """Read a manifest plus every file it names.

    Returns (manifest, labels, predictions) where predictions maps
    checkpoint_id to a PredictionMatrix reordered into the label file's
    record order. Relative paths resolve against the manifest's directory;
    ``labels_path``, when given, overrides the manifest's label file and is
    used as written.
    """
    from .data import align_predictions

    path = Path(path)
    manifest = read_manifest(path)
    base = path.parent

    def resolve(rel: str) -> Path:
        p = Path(rel)
        return p if p.is_absolute() else base / p

    if labels_path is not None:
        labels = read_label_csv(labels_path)
    else:
        labels = read_label_csv(resolve(manifest.labels_path))
    predictions: dict[str, PredictionMatrix] = {}
    for entry in manifest.predictions:
        matrix = read_prediction_csv(resolve(entry.path))
        if matrix.label_names != entry.source_label_names:
            raise ManifestError(
                f"{path}: checkpoint {entry.checkpoint_id!r} source label names "
                f"disagree with {entry.path}"
            )
        predictions[entry.checkpoint_id] = align_predictions(matrix, labels)
    return manifest, labels, predictions


# ---------------------------------------------------------------------------
# fold specs
# ---------------------------------------------------------------------------


def write_folds(path: str | Path, config: SamplerConfig, folds: list[FoldSpec]) -> None:
    write_canonical_json(path, {
        "schema_version": SCHEMA_VERSION,
        "rng": RNG_NAME,
        "config": config.to_dict(),
        "folds": [
            {
                "fold_id": f.fold_id,
                "selected_label_indices": list(f.selected_label_indices),
                "train_record_ids": list(f.train_record_ids),
                "test_record_ids": list(f.test_record_ids),
            }
            for f in folds
        ],
    })


def read_folds(path: str | Path) -> tuple[SamplerConfig, list[FoldSpec]]:
    obj = _load_json(path, "fold spec")
    _check_keys(obj, {"rng": str, "config": dict, "folds": list}, {}, str(path))
    if obj["rng"] != RNG_NAME:
        raise SchemaVersionError(f"{path}: unsupported rng {obj['rng']!r} (expected {RNG_NAME})")
    try:
        config = SamplerConfig(**obj["config"])
    except TypeError as exc:
        raise ManifestError(f"{path}: bad sampler config ({exc})") from None
    folds = []
    for k, raw in enumerate(obj["folds"]):
        if not isinstance(raw, dict):
            raise ManifestError(f"{path}: folds[{k}] must be an object")
        _check_keys(
            raw,
            {"fold_id": int, "selected_label_indices": list,
             "train_record_ids": list, "test_record_ids": list},
            {},
            f"{path}: folds[{k}]",
        )
        folds.append(FoldSpec(
            fold_id=raw["fold_id"],
            selected_label_indices=tuple(int(j) for j in raw["selected_label_indices"]),
            train_record_ids=tuple(str(v) for v in raw["train_record_ids"]),
            test_record_ids=tuple(str(v) for v in raw["test_record_ids"]),
        ))
    return config, folds


# ---------------------------------------------------------------------------
# study reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FoldRecord:
    fold_id: int
    checkpoint_id: str
    melep: float
    clamp_events: int
    weighted_f1: float | None = None


@dataclass(frozen=True)
class StudyAggregate:
    pearson: CorrelationResult
    binning: DistanceBinning | None


@dataclass(frozen=True)
class ResultReport:
    per_fold: tuple[FoldRecord, ...]
    aggregate: StudyAggregate | None = None

    def __post_init__(self):
        keys = [(r.fold_id, r.checkpoint_id) for r in self.per_fold]
        if len(set(keys)) != len(keys):
            raise ValidationError("duplicate (fold_id, checkpoint_id) in report")
        if keys != sorted(keys):
            raise ValidationError("per-fold records must be sorted by (fold_id, checkpoint_id)")


def report_to_dict(report: ResultReport) -> dict:
    out: dict = {"schema_version": SCHEMA_VERSION, "per_fold": []}
    for rec in report.per_fold:
        row = {
            "fold_id": rec.fold_id,
            "checkpoint_id": rec.checkpoint_id,
            "melep": rec.melep,
            "clamp_events": rec.clamp_events,
        }
        if rec.weighted_f1 is not None:
            row["weighted_f1"] = rec.weighted_f1
        out["per_fold"].append(row)
    if report.aggregate is not None:
        agg: dict = {
            "pearson": {
                "r": report.aggregate.pearson.r,
                "p_value": report.aggregate.pearson.p_value,
                "sample_count": report.aggregate.pearson.sample_count,
                "fit_slope": report.aggregate.pearson.fit_slope,
                "fit_intercept": report.aggregate.pearson.fit_intercept,
            },
        }
        binning = report.aggregate.binning
        if binning is not None:
            agg["binning"] = {
                "mode": binning.mode,
                "bin_edges": list(binning.bin_edges),
                "bin_mean_f1": list(binning.bin_mean_f1),
                "bin_counts": [int(c) for c in binning.bin_counts],
            }
        out["aggregate"] = agg
    return out


def write_report(path: str | Path, report: ResultReport) -> None:
    write_canonical_json(path, report_to_dict(report))


def read_report(path: str | Path) -> ResultReport:
    obj = _load_json(path, "report")
    _check_keys(obj, {"per_fold": list}, {"aggregate": dict}, str(path))
    records = []
    for k, raw in enumerate(obj["per_fold"]):
        if not isinstance(raw, dict):
            raise ManifestError(f"{path}: per_fold[{k}] must be an object")
        _check_keys(
            raw,
            {"fold_id": int, "checkpoint_id": str, "melep": (int, float),
             "clamp_events": int},
            {"weighted_f1": (int, float)},
            f"{path}: per_fold[{k}]",
        )
        records.append(FoldRecord(
            fold_id=raw["fold_id"],
            checkpoint_id=raw["checkpoint_id"],
            melep=float(raw["melep"]),
            clamp_events=raw["clamp_events"],
            weighted_f1=float(raw["weighted_f1"]) if "weighted_f1" in raw else None,
        ))
    aggregate = None
    if "aggregate" in obj:
        agg = obj["aggregate"]
        _check_keys(agg, {"pearson": dict}, {"binning": dict}, f"{path}: aggregate")
        pe = agg["pearson"]
        _check_keys(
            pe,
            {"r": (int, float), "p_value": (int, float), "sample_count": int,
             "fit_slope": (int, float), "fit_intercept": (int, float)},
            {},
            f"{path}: aggregate.pearson",
        )
        pearson = CorrelationResult(
            float(pe["r"]), float(pe["p_value"]), pe["sample_count"],
            float(pe["fit_slope"]), float(pe["fit_intercept"]),
        )
        binning = None
        if "binning" in agg:
            bi = agg["binning"]
            _check_keys(
                bi,
                {"mode": str, "bin_edges": list, "bin_mean_f1": list, "bin_counts": list},
                {},
                f"{path}: aggregate.binning",
            )
            if bi["mode"] not in BINNING_MODES:
                raise ManifestError(f"{path}: unknown binning mode {bi['mode']!r}")
            binning = DistanceBinning(
                bi["mode"],
                np.asarray([float(v) for v in bi["bin_edges"]]),
                tuple(None if v is None else float(v) for v in bi["bin_mean_f1"]),
                np.asarray([int(v) for v in bi["bin_counts"]]),
            )
        aggregate = StudyAggregate(pearson, binning)
    return ResultReport(tuple(records), aggregate)


# ---------------------------------------------------------------------------
# runtime configs
# ---------------------------------------------------------------------------


def read_sampler_config(path: str | Path) -> SamplerConfig:
    obj = _load_json(path, "sampler config")
    _check_keys(
        obj,
        {"seed": int},
        {"label_count_min": int, "label_count_max": int, "fold_size": int,
         "fold_count": int, "train_fraction": (int, float),
         "min_label_positives": int, "max_retries": int},
        str(path),
    )
    kwargs = {k: v for k, v in obj.items() if k != "schema_version"}
    if "train_fraction" in kwargs:
        kwargs["train_fraction"] = float(kwargs["train_fraction"])
    return SamplerConfig(**kwargs)


def read_synth_config(path: str | Path):
    """Parse a synthetic-suite config into (name, WorldConfig, checkpoints)."""
    obj = _load_json(path, "synth config")
    _check_keys(
        obj,
        {"name": str, "seed": int, "world": dict, "checkpoints": list},
        {},
        str(path),
    )
    w = obj["world"]
    _check_keys(
        w,
        {"record_count": int, "label_count": int},
        {"latent_dim": int, "positive_fraction_range": list, "seed": int},
        f"{path}: world",
    )
    world_kwargs = dict(w)
    world_kwargs.setdefault("seed", obj["seed"])
    if "positive_fraction_range" in world_kwargs:
        lo, hi = world_kwargs["positive_fraction_range"]
        world_kwargs["positive_fraction_range"] = (float(lo), float(hi))
    world = WorldConfig(**world_kwargs)

    checkpoints = []
    for k, raw in enumerate(obj["checkpoints"]):
        if not isinstance(raw, dict):
            raise ManifestError(f"{path}: checkpoints[{k}] must be an object")
        _check_keys(
            raw,
            {"checkpoint_id": str, "alignment": (int, float)},
            {"noise_sigma": (int, float), "gain": (int, float),
             "source_label_count": int, "seed": int},
            f"{path}: checkpoints[{k}]",
        )
        kwargs = dict(raw)
        kwargs.setdefault("seed", obj["seed"])
        kwargs.setdefault("source_label_count", world.label_count)
        kwargs["alignment"] = float(kwargs["alignment"])
        if "noise_sigma" in kwargs:
            kwargs["noise_sigma"] = float(kwargs["noise_sigma"])
        if "gain" in kwargs:
            kwargs["gain"] = float(kwargs["gain"])
        checkpoints.append(SyntheticCheckpoint(**kwargs))
    if not checkpoints:
        raise ManifestError(f"{path}: no checkpoints")
    ids = [c.checkpoint_id for c in checkpoints]
    if len(set(ids)) != len(ids):
        raise ManifestError(f"{path}: duplicate checkpoint ids")
    return obj["name"], world, checkpoints


# ---------------------------------------------------------------------------
# score reports (single dataset, no folds)
# ---------------------------------------------------------------------------


def melep_report_to_dict(report, target_names, source_names) -> dict:
    """JSON form of a MelepReport plus the label names it was computed over."""
    out = {
        "schema_version": SCHEMA_VERSION,
        "melep": report.melep,
        "pair_nll": [list(row) for row in report.pair_nll],
        "per_label": list(report.per_label),
        "target_weights": {
            "weights": list(report.weights.weights),
            "positive_counts": [int(v) for v in report.weights.positive_counts],
            "negative_counts": [int(v) for v in report.weights.negative_counts],
        },
        "clamp_events": report.clamp_events,
        "target_label_names": list(target_names),
        "source_label_names": list(source_names),
    }
    if report.source_weighted_melep is not None:
        out["source_weighted_melep"] = report.source_weighted_melep
    return out
