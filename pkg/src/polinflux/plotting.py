"""Figure rendering for the report commands.

Uses the Agg backend and only ever writes files; nothing here opens a
window.  Each renderer takes the same row data the CSV writer gets, so
the figure and the delimited output always agree.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_FIG_SIZE = (6.4, 4.0)


def render_sweep_figure(columns: dict[str, list[float]], variable: str, path) -> None:
    """Vote share against the swept variable; alpha sweeps add the omega panel."""
    grid = columns[variable]
    if variable == "alpha" and "omega_F" in columns:
        fig, (ax_q, ax_w) = plt.subplots(
            2, 1, sharex=True, figsize=(_FIG_SIZE[0], 1.5 * _FIG_SIZE[1])
        )
        ax_w.plot(grid, columns["omega_F"], label="omega_F")
        ax_w.plot(grid, columns["omega_A"], label="omega_A")
        ax_w.set_ylabel("influence scaling")
        ax_w.set_xlabel("alpha")
        ax_w.legend(loc="best")
    else:
        fig, ax_q = plt.subplots(figsize=_FIG_SIZE)
        ax_q.set_xlabel(variable)
    ax_q.plot(grid, columns["Q_star"], color="tab:blue")
    ax_q.set_ylabel("expected vote share Q*")
    ax_q.set_title(f"{variable} sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_compare_figure(report, path) -> None:
    """Grouped bars of the per-legislator equilibrium deltas."""
    labels = report.labels
    x = np.arange(len(labels))
    width = 0.27
    fig, ax = plt.subplots(figsize=_FIG_SIZE)
    ax.bar(x - width, report.delta_influence, width, label="delta influence")
    ax.bar(x, report.delta_investments / max(1.0, np.abs(report.delta_investments).max()),
           width, label="delta investment (scaled)")
    ax.bar(x + width, report.delta_probabilities, width,
           label=f"delta probability (sigma={report.sigma:g})")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xticks(x, labels)
    title = "network change"
    if report.sigma_hat is not None:
        title += f" (sigma_hat = {report.sigma_hat:.4f})"
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_simulate_figure(labels, analytic, empirical, std_errors, path) -> None:
    """Empirical frequencies with 3-SE bars against analytic probabilities."""
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=_FIG_SIZE)
    ax.errorbar(x, empirical, yerr=3.0 * np.asarray(std_errors), fmt="o",
                capsize=4, label="simulated (3 SE)")
    ax.plot(x, analytic, "x", markersize=9, color="tab:red", label="analytic")
    ax.set_xticks(x, labels)
    ax.set_ylabel("vote probability")
    ax.set_title("shock-simulation check")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
