"""Figure rendering for run reports: growth plots next to the CSV output.

All figures are written as PNG files with stripped software metadata; they
accompany the delimited output but the byte-level determinism contract
covers only the CSV/JSON reports.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SAVE_OPTS = {"dpi": 110, "metadata": {"Software": None}}


def _new_axes(title, xlabel, ylabel):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    return fig, ax


def render_length_figure(path, lengths, u, dim, ring_label):
    es = list(range(len(lengths)))
    fig, ax = _new_axes(f"length sequence over {ring_label}", "e",
                        "len R / phi^e(m) R")
    ax.semilogy(es, lengths, "o-", label="L_e")
    ref = [lengths[min(1, len(lengths) - 1)] * (u ** dim) ** (e - min(1, len(lengths) - 1))
           for e in es]
    ax.semilogy(es, ref, "--", label=f"slope u^d = {u}^{dim}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def render_bounds_figure(path, rows, t, closed_value, ring_label):
    es = [row["e"] for row in rows]
    lowers = [row["bounds"][t].lower for row in rows]
    uppers = [row["bounds"][t].upper for row in rows]
    fig, ax = _new_axes(f"certified bounds at t={t} over {ring_label}",
                        "e", "bound value")
    ax.semilogy(es, lowers, "v-", label="lower(e,t)")
    ax.semilogy(es, uppers, "^-", label="upper(e,t)")
    if es:
        anchor = max(lowers[0], 1e-12)
        ref = [anchor * math.exp(closed_value * (e - es[0])) for e in es]
        ax.semilogy(es, ref, "--", label="closed-form slope")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def render_rates_figure(path, estimates, closed_value, ring_label):
    ts = [est.t for est in estimates]
    fig, ax = _new_axes(f"fitted rates per t over {ring_label}", "t",
                        "growth rate")
    lows = [est.alpha_low for est in estimates]
    highs = [est.alpha_high for est in estimates]
    ax.plot(ts, lows, "v-", label="lower-rate fit")
    ax.plot(ts, highs, "^-", label="upper-rate fit")
    ax.axhline(closed_value, linestyle="--", color="gray",
               label="closed form")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def render_run_figures(outdir, lengths, u, dim, rows, estimates,
                       closed_value, ring_label):
    """Render the standard figure set; returns the created file names."""
    outdir = Path(outdir)
    created = []
    p = outdir / "length_sequence.png"
    render_length_figure(p, lengths, u, dim, ring_label)
    created.append(p.name)
    usable = [est for est in estimates if est.alpha_low is not None]
    for est in usable:
        p = outdir / f"bounds_t_{est.t}.png"
        render_bounds_figure(p, rows, est.t, closed_value, ring_label)
        created.append(p.name)
    if usable:
        p = outdir / "rates.png"
        render_rates_figure(p, usable, closed_value, ring_label)
        created.append(p.name)
    return created
