"""Figure rendering for the report-producing commands.

Figures are written to files next to the delimited output (Agg backend, no
display).  Every renderer takes already-computed rows, so the plots can never
disagree with the CSV/JSON they accompany.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_evaluation_figure(result, path, title="per-input success probabilities"):
    """Bar chart of the per-(input, index) success table with the worst case marked."""
    rows = result.rows()
    labels = [f"{x}:{i}" for x, i, _ in rows]
    values = [p for _, _, p in rows]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.35 * len(rows)), 3.2))
    ax.bar(range(len(rows)), values, color="#4878cf")
    ax.axhline(result.p_min, color="#d65f5f", lw=1.2, label=f"worst case {result.p_min:.6f}")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("success probability")
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    _finish(fig, path)


def save_crossover_figure(rows, path):
    """Werner-assisted efficiency against the fixed separable optimum."""
    werner_rows = [r for r in rows if r.label.startswith("werner")]
    sep_rows = [r for r in rows if r.label.startswith("separable")]
    qs = [r.discord for r in werner_rows]
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    ax.plot(qs, [r.p_min for r in werner_rows], "o-", ms=3, label="Werner assisted")
    if sep_rows:
        ax.axhline(sep_rows[0].p_min, color="#d65f5f", label="separable optimum")
    ax.axhline(2.0 / 3.0, color="gray", ls=":", lw=1, label="classical bound 2/3")
    ax.axvspan(1.0 / 3.0, 0.5, color="orange", alpha=0.15, label="separable advantage")
    ax.set_xlabel("Werner parameter q")
    ax.set_ylabel("worst-case success")
    ax.set_title("separable state vs entangled Werner states")
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_discord_figure(rows, path):
    """Discord against efficiency: more discord does not mean a better code."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for row in rows:
        color = "#d65f5f" if row.label.startswith("separable") else "#4878cf"
        ax.plot(row.discord, row.p_min, "o", color=color)
        ax.annotate(row.label, (row.discord, row.p_min), fontsize=6,
                    xytext=(3, 3), textcoords="offset points")
    ax.set_xlabel("geometric discord")
    ax.set_ylabel("worst-case success")
    ax.set_title("discord is not an efficiency ranking across families")
    _finish(fig, path)


def save_concatenation_figure(entries, path):
    """Decay of the concatenated-code efficiency with the number of levels."""
    levels = [m for m, _, _ in entries]
    closed = [c for _, c, _ in entries]
    recursive = [r for _, _, r in entries]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(levels, closed, "o-", ms=4, label="closed form")
    ax.plot(levels, recursive, "x", ms=6, label="stage recursion")
    ax.axhline(0.5, color="gray", ls=":", lw=1)
    ax.set_xlabel("concatenation levels m")
    ax.set_ylabel("worst-case success")
    ax.set_title("2^m -> 1 concatenated code")
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_prepare_measure_figure(pairs, path):
    qs = [q for q, _ in pairs]
    ps = [p for _, p in pairs]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(qs, ps, "-", lw=1.5)
    ax.axhline(0.5, color="gray", ls=":", lw=1, label="classical with local randomness")
    ax.set_xlabel("noise parameter q")
    ax.set_ylabel("worst-case success")
    ax.set_title("noisy prepare-and-measure 2 -> 1 code")
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_optimize_figure(n, spec, p_min, path, grid_step=0.02):
    """Objective along the separable boundary with the optimum marked."""
    ts = np.arange(grid_step, 1.0, grid_step)
    values = []
    for t in ts:
        if n == 2:
            mags = (t, 1.0 - t, 0.0)
        else:
            mags = (t, (1.0 - t) / 2.0, (1.0 - t) / 2.0)
        inv_sq = sum(1.0 / m ** 2 for m in mags[:n] if m > 0)
        values.append(0.5 * (1.0 + 1.0 / math.sqrt(inv_sq)) if inv_sq > 0 else 0.5)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(ts, values, lw=1.5, label="boundary slice")
    ax.plot([spec.e1], [p_min], "o", color="#d65f5f", label=f"optimum {p_min:.6f}")
    ax.set_xlabel("largest component e1")
    ax.set_ylabel("worst-case success")
    ax.set_title(f"separable {n}->1 optimisation")
    ax.legend(fontsize=8)
    _finish(fig, path)


def save_reproduction_figure(report, path):
    """Pass/fail overview: deviation of every claim against its tolerance."""
    labels = [row.claim_id for row in report.rows]
    margins = []
    colors = []
    for row in report.rows:
        if row.comparison == "abs":
            deviation = abs(row.computed - row.reference)
        elif row.comparison == "upper":
            deviation = row.computed - row.reference
        else:
            deviation = row.reference - row.computed
        # log-scaled slack; clip so exact zeros still render
        floor = 1e-17
        margins.append(max(deviation, floor))
        colors.append("#6acc65" if row.passed else "#d65f5f")
    y = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(7.0, 0.3 * len(labels) + 1.5))
    ax.barh(y, margins, color=colors)
    for i, row in enumerate(report.rows):
        if row.tolerance > 0:
            ax.plot([row.tolerance], [i], "k|", ms=10)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_xscale("log")
    ax.set_xlabel("deviation (bar) vs tolerance (tick)")
    ax.set_title("reference reproduction")
    ax.invert_yaxis()
    _finish(fig, path)
