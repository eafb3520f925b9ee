#!/usr/bin/env python3
"""Permutation-test reference for the two-sided Pearson p-value.

Resamples the second variable by random permutation and counts how often the
permuted |r| meets or exceeds the observed |r|.  Used by the test suite as an
independent check of the analytic Student-t p-value; not a production path.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np


def permutation_pvalue(xs, ys, resamples=1_000_000, seed=0, chunk=100_000):
    """Two-sided permutation p-value for the Pearson correlation of xs, ys.

    Uses the add-one estimator (1 + hits) / (1 + resamples).  The permuted
    correlation reduces to a dot product with centered xs because the norm of
    ys is permutation-invariant.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-D and the same length")
    m = xs.size
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    denom = np.sqrt((xc * xc).sum() * (yc * yc).sum())
    if denom == 0.0:
        raise ValueError("constant input")
    observed = abs(float((xc * yc).sum() / denom))

    rng = np.random.RandomState(seed)
    hits = 0
    done = 0
    while done < resamples:
        size = min(chunk, resamples - done)
        # random permutations via argsort of uniform keys
        perms = rng.random_sample((size, m)).argsort(axis=1)
        permuted = ys[perms]
        r = (permuted - ys.mean()) @ xc / denom
        hits += int((np.abs(r) >= observed - 1e-15).sum())
        done += size
    return (1 + hits) / (1 + resamples)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--xs", required=True, help="comma-separated floats")
    parser.add_argument("--ys", required=True, help="comma-separated floats")
    parser.add_argument("--resamples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    xs = [float(v) for v in args.xs.split(",")]
    ys = [float(v) for v in args.ys.split(",")]
    print(permutation_pvalue(xs, ys, resamples=args.resamples, seed=args.seed))
    return 0


if __name__ == "__main__":
    sys.exit(main())
