"""Plot the output of `copent sweep` (CSV): analytic MI against the
copula-entropy and KSG estimates, with one-standard-deviation bands.

    copent sweep --output sweep.csv
    python3 docs/plot_sweep.py sweep.csv sweep.png
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(src, dst):
    data = pd.read_csv(src, comment="#")
    rho = data["rho"]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(rho, data["analytic_mi"], "k-", label="analytic")
    for key, color, label in (("ksg", "red", "KSG"), ("copent", "blue", "copula entropy")):
        mean, sd = data[key + "_mean"], data[key + "_sd"]
        ax.plot(rho, mean, "o-", color=color, label=label, markersize=3)
        ax.fill_between(rho, mean - sd, mean + sd, color=color, alpha=0.15)
    ax.set_xlabel("rho")
    ax.set_ylabel("mutual information (nats)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "sweep.png")
