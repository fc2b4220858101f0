#!/usr/bin/env python3
"""Plot noise spectral power tables produced by the spectrum command.

Usage:
    oscact spectrum --seed planck --lambda 2,10,inf --beta 1 \
        --grid 0.05:20:200 --log --resistance rlc:R=100,L=1,C=0.01 \
        --output spectrum.csv
    python3 scripts/plot_spectrum.py spectrum.csv spectrum.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    csv_path = sys.argv[1] if len(sys.argv) > 1 else "spectrum.csv"
    out_path = sys.argv[2] if len(sys.argv) > 2 else "spectrum.png"

    table = pd.read_csv(csv_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for lam, group in table.groupby("lambda", sort=False):
        label = "seed" if lam == "inf" else f"lambda = {lam}"
        ax.plot(group["omega"], group["P"], label=label)

    ax.set_xscale("log")
    ax.set_xlabel("omega")
    ax.set_ylabel("P(omega, beta; lambda)")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
