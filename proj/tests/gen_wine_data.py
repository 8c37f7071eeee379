#!/usr/bin/env python3
"""Materialize the UCI wine recognition data as a label-first CSV.

The file ships with scikit-learn; rows come out grouped by cultivar
(59/71/48) in the original order, which the split manifests rely on.
"""
import sys


def fmt(v):
    f = float(v)
    if f.is_integer():
        return str(int(f))
    return repr(f)


def main():
    if len(sys.argv) != 2:
        print("usage: gen_wine_data.py OUTPUT", file=sys.stderr)
        return 2
    try:
        from sklearn.datasets import load_wine
    except ImportError as e:
        print(f"scikit-learn unavailable: {e}", file=sys.stderr)
        return 2

    wine = load_wine()
    data, target = wine.data, wine.target
    assert data.shape == (178, 13), data.shape
    assert list(target) == sorted(target), "rows must stay grouped by class"
    counts = [int((target == c).sum()) for c in (0, 1, 2)]
    assert counts == [59, 71, 48], counts
    assert abs(data[0][0] - 14.23) < 1e-9 and abs(data[0][12] - 1065) < 1e-9

    with open(sys.argv[1], "w") as out:
        for row, cls in zip(data, target):
            out.write(",".join([str(int(cls) + 1)] + [fmt(v) for v in row]) + "\n")
    print(f"wrote {sys.argv[1]}: 178 rows, classes 59/71/48")
    return 0


if __name__ == "__main__":
    sys.exit(main())
