#!/usr/bin/env python3
"""Write the Wine, Breast Cancer and Digits corpora as CSV snapshots.

Uses the copies bundled with scikit-learn, so no network access is needed.
Each file has a header row, numeric feature columns and an integer `label`
column.
"""
import argparse
import csv
import pathlib

from sklearn import datasets

CORPORA = {
    "wine": datasets.load_wine,
    "breast_cancer": datasets.load_breast_cancer,
    "digits": datasets.load_digits,
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, loader in CORPORA.items():
        bunch = loader()
        header = [f"f{i}" for i in range(bunch.data.shape[1])] + ["label"]
        with open(out / f"{name}.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row, label in zip(bunch.data, bunch.target):
                writer.writerow([repr(float(v)) for v in row] + [int(label)])
        print(f"{name}: {bunch.data.shape}")


if __name__ == "__main__":
    main()
