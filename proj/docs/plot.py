"""Plots for CLI output.

  ergm critical-curve --alpha-max 10 --steps 200 --out curve.csv
  ergm clt-check --n 100 --alpha 1 --h -0.5 --cdf-csv cdf.csv
  python3 docs/plot.py curve.csv cdf.csv
"""

import csv
import sys

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


def main(curve_path, cdf_path):
    curve, cdf = read(curve_path), read(cdf_path)
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    a.plot(curve["alpha"], curve["h"])
    a.set_xlabel("alpha")
    a.set_ylabel("h")
    a.set_title("first-order transition curve")
    b.plot(cdf["w"], cdf["ecdf"], label="empirical")
    b.plot(cdf["w"], cdf["normal_cdf"], "--", label="normal")
    b.set_xlabel("W")
    b.legend()
    b.set_title("standardized triangle count")
    fig.tight_layout()
    fig.savefig("plots.png", dpi=120)


if __name__ == "__main__":
    main(*sys.argv[1:3])
