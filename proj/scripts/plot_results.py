#!/usr/bin/env python3
"""Plot the CSV artifacts emitted by the jcm CLI.

Usage:
    python3 scripts/plot_results.py sweep  sweep.csv  [out.png]
    python3 scripts/plot_results.py evolve evolve.csv [out.png]
"""
import csv
import json
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


def plot_sweep(path, out):
    rows = read_csv(path)
    value = [float(r["value"]) for r in rows]
    tp = [float(r["theta_plus"]) for r in rows]
    tm = [float(r["theta_minus"]) for r in rows]
    flags = [int(r["asymptote_flag"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(value, tp, "r.-", ms=3, lw=0.8, label=r"$\theta_+$")
    ax.plot(value, tm, "b.-", ms=3, lw=0.8, label=r"$\theta_-$")
    for v, f in zip(value, flags):
        if f == 1:
            ax.axvline(v, color="0.8", lw=0.8, zorder=0)
    ax.set_xlabel(rows[0]["param"])
    ax.set_ylabel(r"rotation angle $\theta_\pm$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_evolve(path, out):
    rows = read_csv(path)
    t = [float(r["t"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    styles = {
        "na_full": ("C0-", r"$\langle n_a\rangle$ full"),
        "nb_full": ("C1-", r"$\langle n_b\rangle$ full"),
        "na_eff": ("C0--", r"$\langle n_a\rangle$ effective"),
        "nb_eff": ("C1--", r"$\langle n_b\rangle$ effective"),
        "na_closed": ("C0:", r"$\langle n_a\rangle$ closed form"),
        "nb_closed": ("C1:", r"$\langle n_b\rangle$ closed form"),
    }
    for col, (style, label) in styles.items():
        if col in rows[0]:
            ax.plot(t, [float(r[col]) for r in rows], style, lw=1.0, label=label)
    sidecar = pathlib.Path(str(path) + ".json")
    if sidecar.exists():
        meta = json.loads(sidecar.read_text())
        tau = meta.get("tau_eff")
        if tau:
            ax.set_title(rf"$\tau_\mathrm{{eff}} = {tau:.3g}$")
    ax.set_xlabel("t")
    ax.set_ylabel("mean photon number")
    ax.legend(ncol=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 1
    mode, path = sys.argv[1], sys.argv[2]
    out = sys.argv[3] if len(sys.argv) > 3 else f"{mode}.png"
    if mode == "sweep":
        plot_sweep(path, out)
    elif mode == "evolve":
        plot_evolve(path, out)
    else:
        print(__doc__)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
