"""Rate-versus-length figure for the GF(16) Gabidulin sequence."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import RateRow  # noqa: E402

SERIES = (
    ("rate_code", "D", "Gabidulin code"),
    ("rate_eq_exact", "+", r"bound $1 + k\,[m+k, m]_q$"),
    ("rate_eq_loose", "o", r"bound $1 + 4k\,q^{mk}$"),
)


def plot_figure1(rows: Sequence[RateRow], path: str | Path) -> Path:
    """Scatter the three rate series against N and save to ``path``.

    The format follows the file suffix (svg, png, pdf). SVG output carries no
    timestamp and a fixed id salt, so identical rows give identical bytes.
    """
    path = Path(path)
    N = [r.N for r in rows]
    with plt.rc_context({"svg.hashsalt": "subspace-codec", "font.size": 10}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for attr, marker, label in SERIES:
            ax.scatter(N, [getattr(r, attr) for r in rows], marker=marker, s=22,
                       facecolors="none" if marker in "Do" else None,
                       edgecolors="black" if marker in "Do" else None,
                       color=None if marker in "Do" else "black", label=label, linewidths=0.8)
        ax.set_xlabel("N")
        ax.set_ylabel("rate")
        ax.legend(frameon=False)
        fig.tight_layout()
        metadata = {".svg": {"Date": None}, ".pdf": {"CreationDate": None}}.get(path.suffix.lower())
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
    return path
