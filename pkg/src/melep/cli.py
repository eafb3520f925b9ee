"""Command line entry point.

Subcommands: ``compute`` scores one prediction file against one label file,
``rank`` orders every checkpoint in a manifest, ``study`` runs the full
fold-sampling correlation protocol, and ``synth`` writes a self-contained
synthetic benchmark to disk.

Exit codes: 0 success, 1 usage error, 2 input or validation failure,
3 unexpected internal error. Results go to stdout (or ``--out``);
diagnostics go to stderr. Set MELEP_MAX_WORKERS to parallelize the
per-checkpoint and per-fold loops; output is identical at any setting.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io as mio
from .data import align_predictions
from .errors import (
    ConstantInputError,
    DegenerateRangeError,
    MelepError,
    TooFewPointsError,
    ValidationError,
)
from .metric import melep_report
from .sampling import sample_folds
from .stats import BINNING_MODES, bin_by_distance, pearson
from .synth import downstream_f1_proxy, generate_predictions, generate_world

__all__ = ["main"]

_ID_PATTERN = re.compile(r"^[A-Za-z0-9._-]+$")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this tool reserves 2 for
    input errors, so usage problems are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="melep",
        description="Log expected empirical prediction scores for multi-label transfer.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="score one prediction file against one label file")
    p.add_argument("--preds", required=True, help="prediction CSV (id + one column per source label)")
    p.add_argument("--labels", required=True, help="label CSV (id + one 0/1 column per target label)")
    p.add_argument("--cap", type=float, default=None,
                   help="cap target weights at this value instead of failing on all-positive labels")
    p.add_argument("--source-weights", default=None, metavar="PATH",
                   help="text file with one non-negative weight per source label, one per line")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("rank", help="order every checkpoint in a manifest by score")
    p.add_argument("--manifest", required=True, help="dataset manifest JSON")
    p.add_argument("--labels", default=None,
                   help="label CSV; defaults to the manifest's labels_path")
    p.add_argument("--cap", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("study", help="correlate scores with downstream F1 over sampled folds")
    p.add_argument("--manifest", required=True)
    p.add_argument("--labels", default=None,
                   help="label CSV; defaults to the manifest's labels_path")
    p.add_argument("--sampler-config", required=True, help="fold sampler config JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--proxy", action="store_true",
                       help="measure F1 with the built-in transferred-predictor proxy")
    group.add_argument("--f1", default=None,
                       help="CSV of externally measured F1 (fold_id,checkpoint_id,weighted_f1)")
    p.add_argument("--binning-mode", choices=BINNING_MODES, default="equal-width")
    p.add_argument("--cap", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--folds-out", default=None, help="also write the sampled fold spec JSON here")
    p.set_defaults(func=_cmd_study)

    p = sub.add_parser("synth", help="generate a synthetic benchmark dataset")
    p.add_argument("--config", required=True, help="synthetic suite config JSON")
    p.add_argument("--out-dir", required=True, help="directory for labels.csv, preds_*.csv, manifest.json")
    p.set_defaults(func=_cmd_synth)

    return parser


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _max_workers() -> int:
    raw = os.environ.get("MELEP_MAX_WORKERS")
    if raw is None or not raw.strip():
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise ValidationError(f"MELEP_MAX_WORKERS must be an integer, got {raw!r}") from None
    if count < 1:
        raise ValidationError(f"MELEP_MAX_WORKERS must be >= 1, got {count}")
    return count


def _map_jobs(fn, items):
    """Apply fn over items, in order, optionally on a thread pool.

    executor.map preserves input order, so results are independent of
    worker count; every job must itself be deterministic.
    """
    items = list(items)
    workers = _max_workers()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_compute(args) -> int:
    preds = mio.read_prediction_csv(args.preds)
    labels = mio.read_label_csv(args.labels)
    preds = align_predictions(preds, labels)
    source_weights = None
    if args.source_weights is not None:
        source_weights = mio.read_source_weights(args.source_weights)
    report = melep_report(
        preds.values, labels.values,
        cap=args.cap, source_weights=source_weights,
    )
    payload = mio.melep_report_to_dict(report, labels.label_names, preds.label_names)
    _emit(mio.canonical_json(payload), args.out)
    return 0


def _cmd_rank(args) -> int:
    manifest, labels, predictions = mio.load_manifest(args.manifest, labels_path=args.labels)

    def score(item):
        checkpoint_id, matrix = item
        report = melep_report(matrix.values, labels.values, cap=args.cap)
        return checkpoint_id, report.melep, report.clamp_events

    scored = _map_jobs(score, sorted(predictions.items()))
    scored.sort(key=lambda row: (row[1], row[0]))
    ranking = []
    for position, (checkpoint_id, value, clamps) in enumerate(scored):
        ranking.append({
            "rank": position + 1,
            "checkpoint_id": checkpoint_id,
            "melep": value,
            "clamp_events": clamps,
            "tied_with_previous": position > 0 and value == scored[position - 1][1],
        })
    payload = {
        "schema_version": mio.SCHEMA_VERSION,
        "name": manifest.name,
        "ranking": ranking,
    }
    _emit(mio.canonical_json(payload), args.out)
    return 0


def _cmd_study(args) -> int:
    manifest, labels, predictions = mio.load_manifest(args.manifest, labels_path=args.labels)
    config = mio.read_sampler_config(args.sampler_config)
    folds = sample_folds(labels, config)
    external_f1 = mio.read_f1_csv(args.f1) if args.f1 is not None else None

    index = labels.id_index()
    checkpoint_ids = sorted(predictions)

    def run_fold(fold):
        train_rows = [index[rid] for rid in fold.train_record_ids]
        test_rows = [index[rid] for rid in fold.test_record_ids]
        fold_labels = labels.select_labels(fold.selected_label_indices)
        train_labels = fold_labels.values[train_rows]
        test_labels = fold_labels.values[test_rows]
        records = []
        for checkpoint_id in checkpoint_ids:
            theta = predictions[checkpoint_id].values
            report = melep_report(theta[train_rows], train_labels, cap=args.cap)
            if external_f1 is not None:
                key = (fold.fold_id, checkpoint_id)
                if key not in external_f1:
                    raise ValidationError(
                        f"--f1 file has no row for fold {fold.fold_id}, "
                        f"checkpoint {checkpoint_id!r}"
                    )
                f1_value = external_f1[key]
            else:
                f1_value = downstream_f1_proxy(
                    theta[train_rows], train_labels, theta[test_rows], test_labels
                )
            records.append(mio.FoldRecord(
                fold_id=fold.fold_id,
                checkpoint_id=checkpoint_id,
                melep=report.melep,
                clamp_events=report.clamp_events,
                weighted_f1=f1_value,
            ))
        return records

    per_fold = [rec for batch in _map_jobs(run_fold, folds) for rec in batch]

    aggregate = None
    scored = [(r.melep, r.weighted_f1) for r in per_fold if r.weighted_f1 is not None]
    if scored:
        xs = [s for s, _ in scored]
        ys = [f for _, f in scored]
        try:
            correlation = pearson(xs, ys)
        except (TooFewPointsError, ConstantInputError) as exc:
            print(f"note: skipping aggregate statistics ({exc})", file=sys.stderr)
        else:
            binning = None
            try:
                binning = bin_by_distance(xs, ys, mode=args.binning_mode)
            except (TooFewPointsError, DegenerateRangeError) as exc:
                print(f"note: skipping distance binning ({exc})", file=sys.stderr)
            aggregate = mio.StudyAggregate(correlation, binning)

    report = mio.ResultReport(tuple(per_fold), aggregate)
    if args.folds_out is not None:
        mio.write_folds(args.folds_out, config, folds)
    _emit(mio.canonical_json(mio.report_to_dict(report)), args.out)
    return 0


def _cmd_synth(args) -> int:
    name, world_config, checkpoints = mio.read_synth_config(args.config)
    for checkpoint in checkpoints:
        if not _ID_PATTERN.match(checkpoint.checkpoint_id):
            raise ValidationError(
                f"checkpoint id {checkpoint.checkpoint_id!r} is not filesystem-safe "
                "(use letters, digits, dot, dash, underscore)"
            )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    world, labels = generate_world(world_config)
    mio.write_label_csv(out_dir / "labels.csv", labels)

    entries = []
    for checkpoint in checkpoints:
        matrix = generate_predictions(world, checkpoint)
        filename = f"preds_{checkpoint.checkpoint_id}.csv"
        mio.write_prediction_csv(out_dir / filename, matrix)
        entries.append(mio.ManifestEntry(
            checkpoint.checkpoint_id, filename, matrix.label_names
        ))
    manifest = mio.DatasetManifest(name, "labels.csv", tuple(entries))
    mio.write_manifest(out_dir / "manifest.json", manifest)
    print(
        f"wrote labels.csv, {len(entries)} prediction files and manifest.json to {out_dir}",
        file=sys.stderr,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        parsed = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return parsed.func(parsed)
    except (MelepError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
