"""Static SVG figures for scans and wavefunctions.

Output is byte-stable: the SVG hash salt is fixed and the date stamp is
dropped, so identical inputs give identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGSIZE = (800 / 72.0, 600 / 72.0)
DPI = 72
_STYLE = {"svg.hashsalt": "cavityspec", "svg.fonttype": "path"}


def _save(fig, path):
    with matplotlib.rc_context(_STYLE):
        fig.savefig(path, format="svg", dpi=DPI, metadata={"Date": None})
    plt.close(fig)


def plot_scan(path, u, branches, reference_levels, xlabel, ylabel, title):
    """Energies against ``u``; ``branches`` maps a branch index to an energy array.

    Reference levels (the Dirichlet spectrum) are drawn as dotted lines.
    """
    with matplotlib.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
        for idx in sorted(branches):
            ax.plot(u, branches[idx], "-", lw=1.4, label=f"branch {idx}")
        for level in reference_levels:
            ax.axhline(level, ls=":", color="0.35", lw=1.0)
        finite = np.concatenate([np.asarray(v)[np.isfinite(v)] for v in branches.values()] or [np.zeros(1)])
        if len(reference_levels):
            top = max(reference_levels) + 0.5 * (max(reference_levels) - min(reference_levels) + 1.0)
            bottom = min(reference_levels) - (max(reference_levels) - min(reference_levels) + 2.0)
            bottom = max(bottom, float(finite.min()) - 0.5) if finite.size else bottom
            ax.set_ylim(bottom, top)
        ax.set_xlim(float(np.min(u)), float(np.max(u)))
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.legend(loc="lower right", fontsize="small")
        fig.tight_layout()
    _save(fig, path)


def plot_wavefunctions(path, panels, xlabel, ylabel):
    """One panel per gamma; each panel is ``(title, [(label, coord, amplitude), ...])``."""
    n = len(panels)
    rows, cols = (1, 1) if n == 1 else (1, 2) if n == 2 else (2, 2)
    with matplotlib.rc_context(_STYLE):
        fig, axes = plt.subplots(rows, cols, figsize=FIGSIZE, dpi=DPI, squeeze=False)
        flat = axes.ravel()
        for ax, (title, curves) in zip(flat, panels):
            for label, coord, amp in curves:
                ax.plot(coord, amp, lw=1.3, label=label)
            ax.axhline(0.0, color="0.6", lw=0.6)
            ax.set_title(title, fontsize="medium")
            ax.set_xlabel(xlabel)
            ax.set_ylabel(ylabel)
            ax.legend(fontsize="x-small")
        for ax in flat[n:]:
            ax.set_visible(False)
        fig.tight_layout()
    _save(fig, path)
