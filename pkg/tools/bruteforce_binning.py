#!/usr/bin/env python3
"""Reference four-bin score/F1 summary, stdlib only.

Slow, loop-based counterpart of the library's distance binning.  Bins are
right-open except the last, equal-width edges are computed from the same
endpoint formula the library uses, and quantile edges use linear
interpolation on the sorted scores.  Must not import numpy or anything
from the ``melep`` package.

Usage as a script:

    python tools/bruteforce_binning.py --points points.csv [--mode quantile]

where points.csv has a ``score,f1`` header.  Prints a JSON object with the
edges, per-bin means (null for empty bins) and counts.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys


def equal_width_edges(lo, hi):
    if not hi > lo:
        raise ValueError(f"score range [{lo}, {hi}] has zero width")
    step = (hi - lo) / 4.0
    edges = [lo + i * step for i in range(5)]
    edges[4] = hi
    return edges


def quantile_edges(scores):
    """Quartile edges by linear interpolation, matching numpy's default.

    numpy's lerp switches to the upper-anchored form at frac >= 0.5 for
    symmetry; reproduce that so the edge floats agree bit for bit.
    """
    ordered = sorted(scores)
    n = len(ordered)
    edges = []
    for q in (0.0, 0.25, 0.5, 0.75, 1.0):
        pos = q * (n - 1)
        below = math.floor(pos)
        above = math.ceil(pos)
        frac = pos - below
        a, b = ordered[below], ordered[above]
        if frac < 0.5:
            edges.append(a + (b - a) * frac)
        else:
            edges.append(b - (b - a) * (1.0 - frac))
    for k in range(4):
        if not edges[k + 1] > edges[k]:
            raise ValueError("score quartiles are not strictly ascending")
    return edges


def assign_bin(x, edges):
    """Index of the right-open bin containing x; the last bin is closed."""
    for k in (0, 1, 2):
        if x < edges[k + 1]:
            return k
    return 3


def bin_bruteforce(scores, f1_values, mode="equal-width", value_range=None):
    """Four-bin summary as a dict with edges, means (None if empty), counts."""
    if len(scores) != len(f1_values):
        raise ValueError("scores and f1 values differ in length")
    if len(scores) < 4:
        raise ValueError(f"need at least 4 points, got {len(scores)}")
    if mode == "equal-width":
        if value_range is None:
            lo, hi = min(scores), max(scores)
        else:
            lo, hi = value_range
            if min(scores) < lo or max(scores) > hi:
                raise ValueError("scores fall outside the supplied range")
        edges = equal_width_edges(lo, hi)
    elif mode == "quantile":
        edges = quantile_edges(scores)
    else:
        raise ValueError(f"unknown binning mode {mode!r}")
    members = [[] for _ in range(4)]
    for x, f in zip(scores, f1_values):
        members[assign_bin(x, edges)].append(f)
    means = [math.fsum(ms) / len(ms) if ms else None for ms in members]
    counts = [len(ms) for ms in members]
    return {"bin_edges": edges, "bin_mean_f1": means, "bin_counts": counts}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", required=True)
    parser.add_argument("--mode", default="equal-width",
                        choices=("equal-width", "quantile"))
    args = parser.parse_args(argv)

    scores, f1_values = [], []
    with open(args.points, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header[:2] != ["score", "f1"]:
            print("expected a score,f1 header", file=sys.stderr)
            return 2
        for record in reader:
            scores.append(float(record[0]))
            f1_values.append(float(record[1]))
    json.dump(bin_bruteforce(scores, f1_values, mode=args.mode),
              sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
