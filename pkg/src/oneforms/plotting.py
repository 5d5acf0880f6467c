"""Static SVG rendering of barcode configurations.

One figure per degree: the line configuration on a horizontal axis with
points colored by sign, and the half-line configuration below it.
Multiplicities are printed next to the markers.  Rendering is pinned to
the Agg backend and a fixed hash salt so the same report always yields
the same bytes.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "oneforms"

__all__ = ["plot_report_dict", "render_degree"]

_NEG = "#c0392b"
_POS = "#2471a3"
_ZERO = "#7d6608"


def _draw_config(ax, points, title, halfline: bool):
    ax.axhline(0.0, color="0.6", lw=0.8, zorder=1)
    xs = [p["t_embed"] for p in points]
    for p in points:
        x = p["t_embed"]
        if halfline:
            color = _POS
        else:
            color = _ZERO if x == 0 else (_POS if x > 0 else _NEG)
        ax.plot([x, x], [0, 1], color=color, lw=1.4, zorder=2)
        ax.plot([x], [1], "o", color=color, ms=6, zorder=3)
        ax.annotate(f"x{p['mult']}", (x, 1.0), textcoords="offset points",
                    xytext=(4, 4), fontsize=8)
    if halfline:
        ax.axvline(0.0, color="0.3", lw=0.8, ls=":")
    lo = min(xs + [0.0]) if xs else -1.0
    hi = max(xs + [0.0]) if xs else 1.0
    pad = 0.15 * max(hi - lo, 1.0)
    if halfline:
        ax.set_xlim(-0.05 * max(hi, 1.0), hi + pad)
    else:
        ax.set_xlim(lo - pad, hi + pad)
    ax.set_ylim(-0.4, 1.8)
    ax.set_yticks([])
    ax.set_title(title, fontsize=9, loc="left")
    ax.spines[["left", "right", "top"]].set_visible(False)


def render_degree(degree_block: dict, r: int, out_path) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 3.2))
    _draw_config(ax1, degree_block["delta"],
                 f"line configuration, degree {r} "
                 f"(mass {degree_block['beta']})", halfline=False)
    _draw_config(ax2, degree_block["gamma"],
                 f"half-line configuration, degree {r} "
                 f"(mass {degree_block['rho']})", halfline=True)
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_report_dict(report: dict, out_dir, stem: str) -> list[Path]:
    """Write one SVG per degree from a serialized report; returns paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for key in sorted(report["degrees"], key=int):
        path = out_dir / f"{stem}_degree{key}.svg"
        render_degree(report["degrees"][key], int(key), path)
        written.append(path)
    return written
