"""Plot qwfluor outputs.

    python scripts/plot.py spectrum out/spectrum
    python scripts/plot.py sweep out/sweep

Needs numpy and matplotlib. Writes PNGs next to the CSVs.
"""
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np


def load_spectrum(path):
    return np.loadtxt(path, delimiter=",", comments="#", skiprows=2)


def plot_spectrum(d):
    sx, a, sq = (load_spectrum(d / f) for f in ("spectrum_x.csv", "absorption.csv", "spectrum_q.csv"))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(sx[:, 0], sx[:, 1] / sx[:, 1].max(), "b--", label="S_x")
    ax.plot(sq[:, 0], sq[:, 1] / sx[:, 1].max(), "r-", label="S_q")
    ax.plot(a[:, 0], a[:, 1], "k:", label="a")
    ax.set_xlim(-1.0, 1.0)
    ax.set_xlabel("omega - omega_L (meV)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(d / "spectrum.png", dpi=150)


def plot_sweep(d):
    s = np.genfromtxt(d / "sweep.csv", delimiter=",", names=True)
    fig, axs = plt.subplots(2, 2, figsize=(9, 6), sharex=True)
    for ax, keys, title in [
        (axs[0, 0], ("var_x", "var_q"), "normally ordered variance"),
        (axs[0, 1], ("ncl_x", "ncl_q"), "<A^dag A> - |<A^2>|"),
        (axs[1, 0], ("dcoh_x", "dcoh_q"), "degree of coherence"),
        (axs[1, 1], ("phase_mean_sq", "phase_anom_x", "phase_anom_q"), "phases (rad)"),
    ]:
        for k in keys:
            ax.plot(s["P_L"], s[k], label=k)
        ax.axhline(0.0, color="0.7", lw=0.5)
        ax.set_title(title)
        ax.legend()
    for ax in axs[1]:
        ax.set_xlabel("P_L (uW)")
    fig.tight_layout()
    fig.savefig(d / "sweep.png", dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 3 or sys.argv[1] not in ("spectrum", "sweep"):
        sys.exit(__doc__)
    {"spectrum": plot_spectrum, "sweep": plot_sweep}[sys.argv[1]](Path(sys.argv[2]))
