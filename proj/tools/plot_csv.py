#!/usr/bin/env python3
"""Render toolkit CSV outputs in the usual figure layouts.

Detects the table kind from the header: bounds sweeps become log-scale CRB
curves per source, Monte Carlo sweeps become a bias/std panel pair with the
sqrt CRB reference. Usage:

    plot_csv.py RESULTS.CSV [-o FIGURE.PNG]
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_table(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    if not rows:
        sys.exit(f"{path}: no data rows")
    return rows


def column(rows, name):
    return [float(r[name]) for r in rows]


def plot_bounds(rows, axis, out):
    sources = sorted(
        int(k.rsplit("_", 1)[1]) for k in rows[0] if k.startswith("crb_det_")
    )
    x = column(rows, axis)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    styles = {"crb_det": "s--", "crb_cor": "o-", "crb_iid": "^:"}
    for key, style in styles.items():
        for s in sources:
            ax.plot(x, column(rows, f"{key}_{s}"), style,
                    label=f"{key.replace('crb_', 'CRB ')} (source {s})")
    ax.set_yscale("log")
    if axis == "n":
        ax.set_xscale("log")
    ax.set_xlabel("number of snapshots n" if axis == "n" else "SNR [dB]")
    ax.set_ylabel("CRB [rad^2]")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def plot_montecarlo(rows, axis, out):
    x = column(rows, axis)
    labels = {"n": "number of snapshots n", "snr_db": "SNR [dB]",
              "M": "instrumental variables M"}
    fig, (ax_bias, ax_std) = plt.subplots(1, 2, figsize=(10, 4.5))
    for method, name in (("1s", "one-sided IV-SSF"), ("2s", "two-sided IV-SSF")):
        if f"bias_{method}" not in rows[0]:
            continue
        ax_bias.plot(x, [abs(b) for b in column(rows, f"bias_{method}")],
                     "o-" if method == "1s" else "s--", label=name)
        ax_std.plot(x, column(rows, f"std_{method}"),
                    "o-" if method == "1s" else "s--", label=name)
    crb = column(rows, "sqrt_crb_cor")
    if any(c == c for c in crb):  # skip all-NaN reference columns
        ax_std.plot(x, crb, "k-.", label="sqrt CRB cor")
    for ax, ylabel in ((ax_bias, "|bias| [rad]"), (ax_std, "std [rad]")):
        ax.set_xlabel(labels.get(axis, axis))
        ax.set_ylabel(ylabel)
        ax.set_yscale("log")
        if axis == "n":
            ax.set_xscale("log")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("-o", "--output", default=None)
    args = parser.parse_args()

    rows = read_table(args.csv_path)
    axis = list(rows[0].keys())[0]
    out = args.output or args.csv_path.rsplit(".", 1)[0] + ".png"
    if any(k.startswith("crb_det_") for k in rows[0]):
        plot_bounds(rows, axis, out)
    elif "sqrt_crb_cor" in rows[0]:
        plot_montecarlo(rows, axis, out)
    else:
        sys.exit(f"{args.csv_path}: unrecognized table header")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
