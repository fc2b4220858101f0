#!/usr/bin/env python3
"""Plot the kink of the vacuum-seed family between +hbar/2 and -hbar/2.

Usage:
    oscact family --seed vacuum --lambda 1.5,4,10 --include-seed \
        --grid -15:15:301 --output family.csv
    python3 scripts/plot_kink.py family.csv kink.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    csv_path = sys.argv[1] if len(sys.argv) > 1 else "family.csv"
    out_path = sys.argv[2] if len(sys.argv) > 2 else "kink.png"

    table = pd.read_csv(csv_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for lam, group in table.groupby("lambda", sort=False):
        label = "seed" if lam == "inf" else f"lambda = {lam}"
        ax.plot(group["x"], group["f_g"], label=label)

    ax.axhline(0.5, color="gray", lw=0.5, ls="--")
    ax.axhline(-0.5, color="gray", lw=0.5, ls="--")
    ax.set_xlabel("x = beta * omega")
    ax.set_ylabel("f_g(x; lambda)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
