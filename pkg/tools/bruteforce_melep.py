#!/usr/bin/env python3
"""Reference MELEP computed by direct summation, stdlib only.

This is the slow, obviously-correct implementation the test suite compares
the vectorized library against.  It must stay free of third-party imports
and must not import from the ``melep`` package.

Usage as a script:

    python tools/bruteforce_melep.py --preds preds.csv --labels labels.csv

prints a JSON object with the score, the per-pair matrix, the per-label
vector and the target weights.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

LIKELIHOOD_FLOOR = 1e-12


def pair_joint(theta_rows, label_rows, y, z):
    """2x2 joint table for target label y and source column z, joint[t][s]."""
    n = len(theta_rows)
    joint = [[0.0, 0.0], [0.0, 0.0]]
    for t in (0, 1):
        for s in (0, 1):
            total = math.fsum(
                (theta_rows[i][z] if s == 1 else 1.0 - theta_rows[i][z])
                for i in range(n)
                if label_rows[i][y] == t
            )
            joint[t][s] = total / n
    return joint


def pair_phi(theta_rows, label_rows, y, z):
    """Expected negative log of the empirical prediction for pair (y, z).

    Returns (phi, clamp_events).
    """
    n = len(theta_rows)
    joint = pair_joint(theta_rows, label_rows, y, z)
    marginal = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]]
    conditional = [
        [joint[t][s] / marginal[s] if marginal[s] > 0.0 else 0.0 for s in (0, 1)]
        for t in (0, 1)
    ]
    clamps = 0
    logs = []
    for i in range(n):
        t = label_rows[i][y]
        theta = theta_rows[i][z]
        like = conditional[t][0] * (1.0 - theta) + conditional[t][1] * theta
        if like > 1.0:
            like = 1.0
        if like < LIKELIHOOD_FLOOR:
            like = LIKELIHOOD_FLOOR
            clamps += 1
        logs.append(math.log(like))
    return -math.fsum(logs) / n + 0.0, clamps


def target_weights(label_rows, cap=None):
    """Positive/negative ratio per target label; cap substitutes for inf."""
    n = len(label_rows)
    y_count = len(label_rows[0])
    weights = []
    for y in range(y_count):
        pos = sum(label_rows[i][y] for i in range(n))
        neg = n - pos
        if neg == 0:
            if cap is None:
                raise ValueError(f"label {y} has no negatives and no cap was given")
            w = cap
        else:
            w = pos / neg
        if cap is not None and w > cap:
            w = cap
        weights.append(w)
    return weights


def melep_bruteforce(theta_rows, label_rows, cap=None, source_weights=None):
    """Full direct-summation MELEP.

    Returns a dict with melep, pair_nll, per_label, weights, clamp_events
    and (when source_weights is given) source_weighted_melep.
    """
    y_count = len(label_rows[0])
    z_count = len(theta_rows[0])
    phi = [[0.0] * z_count for _ in range(y_count)]
    clamps = 0
    for y in range(y_count):
        for z in range(z_count):
            phi[y][z], c = pair_phi(theta_rows, label_rows, y, z)
            clamps += c
    weights = target_weights(label_rows, cap=cap)
    per_label = [math.fsum(phi[y]) / z_count for y in range(y_count)]
    melep = math.fsum(weights[y] * per_label[y] for y in range(y_count)) / y_count
    out = {
        "melep": melep,
        "pair_nll": phi,
        "per_label": per_label,
        "weights": weights,
        "clamp_events": clamps,
    }
    if source_weights is not None:
        total = math.fsum(source_weights)
        if total <= 0.0:
            raise ValueError("source weights must have positive sum")
        normalized = [v / total for v in source_weights]
        weighted_per_label = [
            math.fsum(normalized[z] * phi[y][z] for z in range(z_count))
            for y in range(y_count)
        ]
        out["source_weighted_melep"] = (
            math.fsum(weights[y] * weighted_per_label[y] for y in range(y_count))
            / y_count
        )
    return out


def _read_csv(path, binary):
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header[0] != "id":
            raise ValueError(f"{path}: first header column must be 'id'")
        rows = {}
        for record in reader:
            rid = record[0]
            if binary:
                values = [int(cell) for cell in record[1:]]
            else:
                values = [float(cell) for cell in record[1:]]
            rows[rid] = values
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--preds", required=True)
    parser.add_argument("--labels", required=True)
    parser.add_argument("--cap", type=float, default=None)
    args = parser.parse_args(argv)

    preds = _read_csv(args.preds, binary=False)
    labels = _read_csv(args.labels, binary=True)
    if set(preds) != set(labels):
        print("id sets differ between the two files", file=sys.stderr)
        return 2
    ids = list(labels)  # labels-file row order; the score is order-invariant anyway
    theta_rows = [preds[i] for i in ids]
    label_rows = [labels[i] for i in ids]
    result = melep_bruteforce(theta_rows, label_rows, cap=args.cap)
    json.dump(result, sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
