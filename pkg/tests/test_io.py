"""File format tests: CSV parsing, canonical JSON, manifests, documents.

Everything written by the library must be byte-reproducible and must
validate against the schemas shipped in schemas/.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import melep
from melep import LabelMatrix, PredictionMatrix, align_predictions
from melep.errors import (
    CsvError,
    DuplicateIdError,
    DuplicateNameError,
    ManifestError,
    MissingHeaderError,
    NonBinaryCellError,
    NonNumericCellError,
    OutOfRangeError,
    PairingError,
    RaggedRowError,
    SchemaVersionError,
    ValidationError,
)
from melep import io

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def load_schema(name: str) -> dict:
    return json.loads((SCHEMAS / name).read_text(encoding="utf-8"))


def write(tmp_path: Path, name: str, text: str) -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# CSV matrices
# ---------------------------------------------------------------------------


def test_minimal_prediction_csv(tmp_path):
    path = write(tmp_path, "p.csv", "id,A\nr1,0.5\n")
    matrix = io.read_prediction_csv(path)
    np.testing.assert_array_equal(matrix.values, [[0.5]])
    assert matrix.label_names == ("A",)
    assert matrix.record_ids == ("r1",)


def test_prediction_csv_round_trip_is_bit_exact(tmp_path):
    rng = np.random.RandomState(77)
    values = rng.rand(20, 4)
    values[0, 0] = 0.1
    values[1, 1] = 1.0 / 3.0
    values[2, 2] = 1e-300
    values[3, 3] = 1.0
    original = PredictionMatrix.from_array(values)
    path = tmp_path / "round.csv"
    io.write_prediction_csv(path, original)
    parsed = io.read_prediction_csv(path)
    np.testing.assert_array_equal(parsed.values, original.values)
    assert parsed.label_names == original.label_names
    assert parsed.record_ids == original.record_ids
    # a second write produces identical bytes
    again = tmp_path / "round2.csv"
    io.write_prediction_csv(again, parsed)
    assert again.read_bytes() == path.read_bytes()


def test_label_csv_round_trip(tmp_path):
    values = (np.random.RandomState(78).rand(15, 3) < 0.5).astype(np.int8)
    original = LabelMatrix.from_array(values)
    path = tmp_path / "labels.csv"
    io.write_label_csv(path, original)
    parsed = io.read_label_csv(path)
    np.testing.assert_array_equal(parsed.values, original.values)
    assert parsed.label_names == original.label_names


def test_crlf_and_padded_cells_are_accepted(tmp_path):
    path = write(tmp_path, "p.csv", "id,A,B\r\nr1,0.25,0.75\r\nr2,1,0\r\n")
    matrix = io.read_prediction_csv(path)
    np.testing.assert_array_equal(matrix.values, [[0.25, 0.75], [1.0, 0.0]])
    labels = write(tmp_path, "l.csv", "id,A\nr1, 1 \nr2,0\n")
    parsed = io.read_label_csv(labels)
    np.testing.assert_array_equal(parsed.values, [[1], [0]])


def test_empty_file_and_missing_header(tmp_path):
    with pytest.raises(MissingHeaderError):
        io.read_prediction_csv(write(tmp_path, "empty.csv", ""))
    with pytest.raises(MissingHeaderError, match="must start with 'id'"):
        io.read_prediction_csv(write(tmp_path, "bad.csv", "key,A\nr1,0.5\n"))
    with pytest.raises(MissingHeaderError, match="no label columns"):
        io.read_prediction_csv(write(tmp_path, "idonly.csv", "id\nr1\n"))


def test_header_without_rows(tmp_path):
    with pytest.raises(CsvError, match="no data rows"):
        io.read_prediction_csv(write(tmp_path, "hdr.csv", "id,A\n"))


def test_duplicate_column_name_coordinates(tmp_path):
    path = write(tmp_path, "dup.csv", "id,A,A\nr1,0.5,0.5\n")
    with pytest.raises(DuplicateNameError) as info:
        io.read_prediction_csv(path)
    assert info.value.row == 1
    assert info.value.col == 3


def test_ragged_row_coordinates(tmp_path):
    path = write(tmp_path, "ragged.csv", "id,A,B\nr1,0.5,0.5\nr2,0.5\n")
    with pytest.raises(RaggedRowError) as info:
        io.read_prediction_csv(path)
    assert info.value.row == 3
    assert "ragged.csv:row 3" in str(info.value)


def test_duplicate_id_coordinates(tmp_path):
    path = write(tmp_path, "dupid.csv", "id,A\nr1,0.5\nr1,0.6\n")
    with pytest.raises(DuplicateIdError) as info:
        io.read_prediction_csv(path)
    assert (info.value.row, info.value.col) == (3, 1)


def test_non_numeric_cell_coordinates(tmp_path):
    path = write(tmp_path, "text.csv", "id,A,B\nr1,0.5,high\n")
    with pytest.raises(NonNumericCellError) as info:
        io.read_prediction_csv(path)
    assert (info.value.row, info.value.col) == (2, 3)


@pytest.mark.parametrize("cell", ["1.2", "-0.1", "nan", "inf"])
def test_out_of_range_prediction_cells(tmp_path, cell):
    path = write(tmp_path, "range.csv", f"id,A\nr1,{cell}\n")
    with pytest.raises(OutOfRangeError) as info:
        io.read_prediction_csv(path)
    assert (info.value.row, info.value.col) == (2, 2)
    assert "range.csv:row 2:col 2" in str(info.value)


@pytest.mark.parametrize("cell", ["0.5", "2", "-1", "yes", ""])
def test_non_binary_label_cells(tmp_path, cell):
    path = write(tmp_path, "labels.csv", f"id,A\nr1,{cell}\n")
    with pytest.raises(NonBinaryCellError) as info:
        io.read_label_csv(path)
    assert (info.value.row, info.value.col) == (2, 2)


# ---------------------------------------------------------------------------
# source weight and F1 files
# ---------------------------------------------------------------------------


def test_read_source_weights(tmp_path):
    path = write(tmp_path, "w.txt", "1.5\n\n2\n 0.25 \n")
    assert io.read_source_weights(path) == [1.5, 2.0, 0.25]


def test_source_weights_errors(tmp_path):
    with pytest.raises(NonNumericCellError) as info:
        io.read_source_weights(write(tmp_path, "w.txt", "1.0\nabc\n"))
    assert info.value.row == 2
    with pytest.raises(ValidationError, match="no weights"):
        io.read_source_weights(write(tmp_path, "e.txt", "\n\n"))


def test_read_f1_csv(tmp_path):
    path = write(tmp_path, "f1.csv",
                 "fold_id,checkpoint_id,weighted_f1\n0,a,0.5\n0,b,0.75\n1,a,1\n")
    table = io.read_f1_csv(path)
    assert table == {(0, "a"): 0.5, (0, "b"): 0.75, (1, "a"): 1.0}


def test_read_f1_csv_errors(tmp_path):
    with pytest.raises(MissingHeaderError):
        io.read_f1_csv(write(tmp_path, "h.csv", "fold,ckpt,f1\n0,a,0.5\n"))
    with pytest.raises(DuplicateIdError):
        io.read_f1_csv(write(
            tmp_path, "d.csv",
            "fold_id,checkpoint_id,weighted_f1\n0,a,0.5\n0,a,0.6\n"))
    with pytest.raises(NonNumericCellError):
        io.read_f1_csv(write(
            tmp_path, "n.csv", "fold_id,checkpoint_id,weighted_f1\nx,a,0.5\n"))
    with pytest.raises(OutOfRangeError):
        io.read_f1_csv(write(
            tmp_path, "r.csv", "fold_id,checkpoint_id,weighted_f1\n0,a,1.5\n"))
    with pytest.raises(RaggedRowError):
        io.read_f1_csv(write(
            tmp_path, "g.csv", "fold_id,checkpoint_id,weighted_f1\n0,a\n"))


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------


def test_canonical_json_forms():
    assert io.canonical_json(None) == "null"
    assert io.canonical_json(True) == "true"
    assert io.canonical_json(False) == "false"
    assert io.canonical_json(7) == "7"
    assert io.canonical_json(np.int64(7)) == "7"
    assert io.canonical_json(0.5) == "0.5"
    assert io.canonical_json(-0.0) == "0"
    assert io.canonical_json(np.float64(0.25)) == "0.25"
    assert io.canonical_json("a\"b") == '"a\\"b"'
    assert io.canonical_json([1, 2]) == "[1,2]"
    assert io.canonical_json((1, 2)) == "[1,2]"
    assert io.canonical_json(np.array([1.0, 2.0])) == "[1,2]"
    assert io.canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_canonical_json_floats_round_trip():
    rng = np.random.RandomState(80)
    for value in [*rng.rand(50).tolist(), 1e-300, 1e300, 0.1, 2.0 / 3.0]:
        text = io.canonical_json(value)
        assert json.loads(text) == value


def test_canonical_json_non_ascii_is_escaped():
    text = io.canonical_json({"k": "café"})
    assert text == '{"k":"caf\\u00e9"}'
    assert text.encode("ascii")


def test_canonical_json_rejects_non_finite_and_unknown():
    with pytest.raises(ValidationError):
        io.canonical_json(float("nan"))
    with pytest.raises(ValidationError):
        io.canonical_json(float("inf"))
    with pytest.raises(ValidationError):
        io.canonical_json({"a": {1, 2}})


def test_write_canonical_json_appends_newline(tmp_path):
    path = tmp_path / "doc.json"
    io.write_canonical_json(path, {"a": 1})
    assert path.read_bytes() == b'{"a":1}\n'


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------


def sample_manifest() -> io.DatasetManifest:
    return io.DatasetManifest(
        name="bench",
        labels_path="labels.csv",
        predictions=(
            io.ManifestEntry("ckpt_a", "preds_a.csv", ("src_00", "src_01")),
            io.ManifestEntry("ckpt_b", "preds_b.csv", ("src_00", "src_01")),
        ),
    )


def test_manifest_round_trip(tmp_path):
    path = tmp_path / "manifest.json"
    io.write_manifest(path, sample_manifest())
    assert io.read_manifest(path) == sample_manifest()
    jsonschema.validate(json.loads(path.read_text()), load_schema("manifest.schema.json"))


def test_manifest_schema_version_gate(tmp_path):
    path = write(tmp_path, "m.json",
                 '{"schema_version":2,"name":"x","labels_path":"l.csv","predictions":[]}')
    with pytest.raises(SchemaVersionError):
        io.read_manifest(path)


@pytest.mark.parametrize("text,match", [
    ("{not json", "invalid JSON"),
    ('[1,2]', "must be a JSON object"),
    ('{"schema_version":1,"labels_path":"l","predictions":[]}', "missing key 'name'"),
    ('{"schema_version":1,"name":"x","labels_path":"l","predictions":[],"zz":1}',
     "unknown keys"),
    ('{"schema_version":1,"name":7,"labels_path":"l","predictions":[]}', "wrong type"),
    ('{"schema_version":1,"name":"x","labels_path":"l","predictions":[]}',
     "no prediction entries"),
    ('{"schema_version":1,"name":"x","labels_path":"l","predictions":[4]}',
     "must be an object"),
])
def test_manifest_read_errors(tmp_path, text, match):
    with pytest.raises(ManifestError, match=match):
        io.read_manifest(write(tmp_path, "m.json", text))


def test_manifest_rejects_duplicate_checkpoints(tmp_path):
    entry = '{"checkpoint_id":"a","path":"p.csv","source_label_names":["s"]}'
    text = ('{"schema_version":1,"name":"x","labels_path":"l",'
            f'"predictions":[{entry},{entry}]}}')
    with pytest.raises(ManifestError, match="duplicate checkpoint_id"):
        io.read_manifest(write(tmp_path, "m.json", text))


def test_manifest_rejects_bad_source_names(tmp_path):
    text = ('{"schema_version":1,"name":"x","labels_path":"l","predictions":'
            '[{"checkpoint_id":"a","path":"p.csv","source_label_names":[]}]}')
    with pytest.raises(ManifestError, match="empty source label"):
        io.read_manifest(write(tmp_path, "m.json", text))
    text = ('{"schema_version":1,"name":"x","labels_path":"l","predictions":'
            '[{"checkpoint_id":"a","path":"p.csv","source_label_names":["s","s"]}]}')
    with pytest.raises(ManifestError, match="duplicate source label"):
        io.read_manifest(write(tmp_path, "m.json", text))


def bench_dir(tmp_path: Path) -> Path:
    """A loadable two-checkpoint benchmark with shuffled prediction order."""
    labels = LabelMatrix.from_array(
        np.array([[1, 0], [0, 1], [1, 1], [0, 0]], dtype=np.int8))
    io.write_label_csv(tmp_path / "labels.csv", labels)
    rng = np.random.RandomState(4)
    for name in ("a", "b"):
        matrix = PredictionMatrix.from_array(rng.rand(4, 2))
        # store in reversed record order to exercise alignment
        reordered = PredictionMatrix(
            matrix.values[::-1],
            matrix.label_names,
            tuple(reversed(matrix.record_ids)),
        )
        io.write_prediction_csv(tmp_path / f"preds_{name}.csv", reordered)
    io.write_manifest(tmp_path / "manifest.json", io.DatasetManifest(
        name="bench",
        labels_path="labels.csv",
        predictions=(
            io.ManifestEntry("ckpt_a", "preds_a.csv", ("src_00", "src_01")),
            io.ManifestEntry("ckpt_b", "preds_b.csv", ("src_00", "src_01")),
        ),
    ))
    return tmp_path


def test_load_manifest_resolves_and_aligns(tmp_path):
    bench = bench_dir(tmp_path)
    manifest, labels, predictions = io.load_manifest(bench / "manifest.json")
    assert manifest.name == "bench"
    assert set(predictions) == {"ckpt_a", "ckpt_b"}
    for matrix in predictions.values():
        # alignment restored the label file's record order
        assert matrix.record_ids == labels.record_ids
    raw = io.read_prediction_csv(bench / "preds_a.csv")
    np.testing.assert_array_equal(
        predictions["ckpt_a"].values, raw.values[::-1])


def test_load_manifest_labels_override(tmp_path):
    bench = bench_dir(tmp_path)
    override = LabelMatrix.from_array(
        np.array([[1], [0], [1], [0]], dtype=np.int8))
    io.write_label_csv(tmp_path / "other_labels.csv", override)
    _, labels, _ = io.load_manifest(
        bench / "manifest.json", labels_path=tmp_path / "other_labels.csv")
    assert labels.label_names == ("label_00",)


def test_load_manifest_name_mismatch(tmp_path):
    bench = bench_dir(tmp_path)
    manifest = io.read_manifest(bench / "manifest.json")
    bad = io.DatasetManifest(
        name=manifest.name,
        labels_path=manifest.labels_path,
        predictions=(
            io.ManifestEntry("ckpt_a", "preds_a.csv", ("wrong", "names")),
        ),
    )
    io.write_manifest(bench / "manifest.json", bad)
    with pytest.raises(ManifestError, match="source label names"):
        io.load_manifest(bench / "manifest.json")


def test_align_predictions_reports_both_directions():
    labels = LabelMatrix.from_array(
        np.array([[1], [0]]), record_ids=("a", "b"))
    preds = PredictionMatrix.from_array(
        np.array([[0.5], [0.5]]), record_ids=("a", "c"))
    with pytest.raises(PairingError) as info:
        align_predictions(preds, labels)
    message = str(info.value)
    assert "missing from predictions" in message
    assert "absent from labels" in message


def test_select_labels_subsets_columns():
    labels = LabelMatrix.from_array(
        np.array([[1, 0, 1], [0, 1, 1]], dtype=np.int8))
    subset = labels.select_labels([2, 0])
    np.testing.assert_array_equal(subset.values, [[1, 1], [1, 0]])
    assert subset.label_names == ("label_02", "label_00")
    with pytest.raises(IndexError):
        labels.select_labels([3])


# ---------------------------------------------------------------------------
# fold documents
# ---------------------------------------------------------------------------


def sample_folds():
    labels = LabelMatrix.from_array(
        (np.random.RandomState(5).rand(40, 4) < 0.5).astype(np.int8))
    config = melep.SamplerConfig(seed=2, label_count_min=2, label_count_max=3,
                                 fold_size=10, fold_count=4, train_fraction=0.7,
                                 min_label_positives=5)
    return config, melep.sample_folds(labels, config)


def test_folds_round_trip(tmp_path):
    config, folds = sample_folds()
    path = tmp_path / "folds.json"
    io.write_folds(path, config, folds)
    parsed_config, parsed_folds = io.read_folds(path)
    assert parsed_config == config
    assert parsed_folds == folds
    jsonschema.validate(json.loads(path.read_text()), load_schema("folds.schema.json"))


def test_folds_reject_other_rng(tmp_path):
    config, folds = sample_folds()
    path = tmp_path / "folds.json"
    io.write_folds(path, config, folds)
    doc = json.loads(path.read_text())
    doc["rng"] = "pcg64"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaVersionError, match="rng"):
        io.read_folds(path)


def test_folds_reject_bad_config(tmp_path):
    config, folds = sample_folds()
    path = tmp_path / "folds.json"
    io.write_folds(path, config, folds)
    doc = json.loads(path.read_text())
    doc["config"]["surprise"] = 1
    path.write_text(json.dumps(doc))
    with pytest.raises(ManifestError, match="bad sampler config"):
        io.read_folds(path)


# ---------------------------------------------------------------------------
# study reports
# ---------------------------------------------------------------------------


def sample_report(with_aggregate=True) -> io.ResultReport:
    per_fold = (
        io.FoldRecord(0, "a", 0.51, 0, 0.81),
        io.FoldRecord(0, "b", 0.62, 0, 0.71),
        io.FoldRecord(1, "a", 0.49, 1, 0.83),
        io.FoldRecord(1, "b", 0.66, 0, 0.69),
    )
    if not with_aggregate:
        return io.ResultReport(per_fold)
    scores = [r.melep for r in per_fold]
    f1s = [r.weighted_f1 for r in per_fold]
    aggregate = io.StudyAggregate(
        pearson=melep.pearson(scores, f1s),
        binning=melep.bin_by_distance(scores, f1s),
    )
    return io.ResultReport(per_fold, aggregate)


def test_report_round_trip_and_schema(tmp_path):
    report = sample_report()
    path = tmp_path / "report.json"
    io.write_report(path, report)
    parsed = io.read_report(path)
    assert parsed.per_fold == report.per_fold
    assert parsed.aggregate.pearson == report.aggregate.pearson
    np.testing.assert_array_equal(
        parsed.aggregate.binning.bin_edges, report.aggregate.binning.bin_edges)
    assert parsed.aggregate.binning.bin_mean_f1 == report.aggregate.binning.bin_mean_f1
    jsonschema.validate(json.loads(path.read_text()), load_schema("report.schema.json"))
    # re-serializing the parsed form is byte-identical
    again = tmp_path / "again.json"
    io.write_report(again, parsed)
    assert again.read_bytes() == path.read_bytes()


def test_report_without_aggregate(tmp_path):
    report = sample_report(with_aggregate=False)
    path = tmp_path / "bare.json"
    io.write_report(path, report)
    parsed = io.read_report(path)
    assert parsed.aggregate is None
    jsonschema.validate(json.loads(path.read_text()), load_schema("report.schema.json"))


def test_report_with_empty_bin_round_trips(tmp_path):
    scores = [0.1, 0.11, 0.12, 0.13]
    f1s = [0.5, 0.6, 0.7, 0.8]
    binning = melep.bin_by_distance(scores, f1s, value_range=(0.0, 1.0))
    report = io.ResultReport(
        (io.FoldRecord(0, "a", 0.5, 0, 0.5),),
        io.StudyAggregate(melep.pearson(scores, f1s), binning),
    )
    path = tmp_path / "bins.json"
    io.write_report(path, report)
    parsed = io.read_report(path)
    assert parsed.aggregate.binning.bin_mean_f1[1:] == (None, None, None)
    jsonschema.validate(json.loads(path.read_text()), load_schema("report.schema.json"))


def test_report_ordering_is_enforced():
    with pytest.raises(ValidationError, match="sorted"):
        io.ResultReport((
            io.FoldRecord(1, "a", 0.5, 0),
            io.FoldRecord(0, "a", 0.5, 0),
        ))
    with pytest.raises(ValidationError, match="duplicate"):
        io.ResultReport((
            io.FoldRecord(0, "a", 0.5, 0),
            io.FoldRecord(0, "a", 0.6, 0),
        ))


def test_report_rejects_unknown_binning_mode(tmp_path):
    report = sample_report()
    path = tmp_path / "report.json"
    io.write_report(path, report)
    doc = json.loads(path.read_text())
    doc["aggregate"]["binning"]["mode"] = "exotic"
    path.write_text(json.dumps(doc))
    with pytest.raises(ManifestError, match="binning mode"):
        io.read_report(path)


def test_melep_report_document(instance_a, tmp_path):
    theta, labels = instance_a
    report = melep.melep_report(theta, labels, source_weights=[2.0, 1.0])
    doc = io.melep_report_to_dict(report, ("y0", "y1"), ("z0", "z1"))
    assert doc["target_label_names"] == ["y0", "y1"]
    assert "source_weighted_melep" in doc
    jsonschema.validate(json.loads(io.canonical_json(doc)),
                        load_schema("melep-report.schema.json"))
    plain = io.melep_report_to_dict(
        melep.melep_report(theta, labels), ("y0", "y1"), ("z0", "z1"))
    assert "source_weighted_melep" not in plain


# ---------------------------------------------------------------------------
# runtime configs
# ---------------------------------------------------------------------------


def test_read_sampler_config_defaults(tmp_path):
    path = write(tmp_path, "s.json", '{"schema_version":1,"seed":5}')
    config = io.read_sampler_config(path)
    assert config == melep.SamplerConfig(seed=5)


def test_read_sampler_config_errors(tmp_path):
    with pytest.raises(ManifestError, match="missing key 'seed'"):
        io.read_sampler_config(write(tmp_path, "a.json", '{"schema_version":1}'))
    with pytest.raises(ManifestError, match="unknown keys"):
        io.read_sampler_config(write(
            tmp_path, "b.json", '{"schema_version":1,"seed":1,"shuffle":true}'))
    with pytest.raises(SchemaVersionError):
        io.read_sampler_config(write(tmp_path, "c.json", '{"seed":1}'))


def test_read_synth_config_defaults(tmp_path):
    text = ('{"schema_version":1,"name":"suite","seed":12,'
            '"world":{"record_count":50,"label_count":3},'
            '"checkpoints":[{"checkpoint_id":"a","alignment":0.5}]}')
    name, world, checkpoints = io.read_synth_config(write(tmp_path, "s.json", text))
    assert name == "suite"
    assert world.seed == 12
    assert world.record_count == 50
    assert checkpoints[0].seed == 12
    assert checkpoints[0].source_label_count == 3
    assert checkpoints[0].alignment == 0.5


def test_read_synth_config_overrides(tmp_path):
    text = ('{"schema_version":1,"name":"suite","seed":12,'
            '"world":{"record_count":50,"label_count":3,"seed":99,'
            '"positive_fraction_range":[0.3,0.5]},'
            '"checkpoints":[{"checkpoint_id":"a","alignment":1,'
            '"seed":7,"source_label_count":6,"noise_sigma":0.5,"gain":2}]}')
    _, world, checkpoints = io.read_synth_config(write(tmp_path, "s.json", text))
    assert world.seed == 99
    assert world.positive_fraction_range == (0.3, 0.5)
    ckpt = checkpoints[0]
    assert (ckpt.seed, ckpt.source_label_count) == (7, 6)
    assert (ckpt.noise_sigma, ckpt.gain) == (0.5, 2.0)


def test_read_synth_config_errors(tmp_path):
    base = ('{"schema_version":1,"name":"s","seed":1,'
            '"world":{"record_count":50,"label_count":2},"checkpoints":%s}')
    with pytest.raises(ManifestError, match="no checkpoints"):
        io.read_synth_config(write(tmp_path, "a.json", base % "[]"))
    dup = ('[{"checkpoint_id":"a","alignment":0.5},'
           '{"checkpoint_id":"a","alignment":0.7}]')
    with pytest.raises(ManifestError, match="duplicate checkpoint ids"):
        io.read_synth_config(write(tmp_path, "b.json", base % dup))


# ---------------------------------------------------------------------------
# parse throughput
# ---------------------------------------------------------------------------


def test_thousand_row_parse_is_fast(tmp_path):
    import time

    matrix = PredictionMatrix.from_array(np.random.RandomState(9).rand(1000, 10))
    path = tmp_path / "big.csv"
    io.write_prediction_csv(path, matrix)
    start = time.perf_counter()
    parsed = io.read_prediction_csv(path)
    elapsed = time.perf_counter() - start
    assert parsed.values.shape == (1000, 10)
    assert elapsed < 0.5
