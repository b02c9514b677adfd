"""Benchmark figures: PNG renderings of the timing table."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_figures(rows, out_dir):
    """Render timing and state-count figures for a list of benchmark rows.

    Each row is a dict with keys kind, n, k, states, engine, millis.
    Returns the list of files written.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []

    fig, ax = plt.subplots(figsize=(7, 5))
    by_engine = {}
    for r in rows:
        by_engine.setdefault(r["engine"], []).append(r)
    for engine, group in sorted(by_engine.items()):
        xs = [r["n"] for r in group]
        ys = [r["millis"] for r in group]
        ax.scatter(xs, ys, label=engine, alpha=0.6, s=18)
    ax.set_xlabel("history size n")
    ax.set_ylabel("check time (ms)")
    ax.set_title("check time by engine")
    if by_engine:
        ax.legend()
    path = os.path.join(out_dir, "time_vs_n.png")
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 5))
    xs = [2 * r["n"] * 2 ** r["k"] for r in rows]
    ys = [r["states"] for r in rows]
    ax.scatter(xs, ys, alpha=0.6, s=18, color="tab:green")
    if xs:
        lim = max(xs)
        ax.plot([0, lim], [0, lim], color="gray", linewidth=1, label="bound 2n*2^k")
        ax.legend()
    ax.set_xlabel("2n*2^k")
    ax.set_ylabel("partition states")
    ax.set_title("state count against the width bound")
    path = os.path.join(out_dir, "states_vs_bound.png")
    fig.savefig(path, dpi=110)
    plt.close(fig)
    written.append(path)

    return written
