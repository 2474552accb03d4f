#!/usr/bin/env python3
"""Independent brute-force LOOCV oracle for k-NN regression.

Pure stdlib, no shared code with the Rust implementation. For every row,
it removes that row, sorts the remaining rows by (squared Euclidean
distance, row index), averages the outputs of the first k, and scores
the squared error against the held-out output.

Run with no arguments to self-test against hand-derived golden values on
the 4-point dataset X = [0, 1, 3, 7], y = [0, 1, 3, 7]:

    LOOCV(k=1) = 5.5      LOOCV(k=2) = 8.875

Or score a CSV file:

    brute_oracle.py data.csv TARGET_COLUMN K [--no-standardize]
"""

import csv
import sys


def standardize(columns):
    out = []
    for col in columns:
        n = len(col)
        mean = sum(col) / n
        var = sum((v - mean) ** 2 for v in col) / n
        if var == 0.0:
            raise SystemExit("constant feature column; cannot standardize")
        std = var ** 0.5
        out.append([(v - mean) / std for v in col])
    return out


def loocv_brute(inputs, outputs, k):
    n = len(inputs)
    assert 1 <= k <= n - 1
    total = 0.0
    for held in range(n):
        order = sorted(
            (sum((a - b) ** 2 for a, b in zip(inputs[held], inputs[row])), row)
            for row in range(n)
            if row != held
        )
        neighbours = [row for _, row in order[:k]]
        pred = sum(outputs[row] for row in neighbours) / k
        total += (pred - outputs[held]) ** 2
    return total / n


def self_test():
    inputs = [[0.0], [1.0], [3.0], [7.0]]
    outputs = [0.0, 1.0, 3.0, 7.0]
    golden = {1: 5.5, 2: 8.875}
    for k, want in golden.items():
        got = loocv_brute(inputs, outputs, k)
        print(f"oracle LOOCV(k={k}) = {got!r} (expected {want!r})")
        if abs(got - want) > 1e-12:
            raise SystemExit(f"oracle self-test failed at k={k}")
    print("oracle self-test passed")


def score_file(path, target, k, do_standardize):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    if not rows:
        raise SystemExit("empty file")
    feature_names = [name for name in rows[0] if name != target]
    columns = [[float(r[name]) for r in rows] for name in feature_names]
    if do_standardize:
        columns = standardize(columns)
    inputs = [[col[i] for col in columns] for i in range(len(rows))]
    outputs = [float(r[target]) for r in rows]
    print(repr(loocv_brute(inputs, outputs, k)))


def main(argv):
    if len(argv) == 1:
        self_test()
        return
    if len(argv) not in (4, 5):
        raise SystemExit(__doc__)
    path, target, k = argv[1], argv[2], int(argv[3])
    do_standardize = len(argv) < 5 or argv[4] != "--no-standardize"
    score_file(path, target, k, do_standardize)


if __name__ == "__main__":
    main(sys.argv)
