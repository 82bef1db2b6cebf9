"""Deterministic report writers and optional figure rendering.

Every artefact written here must be byte-identical across runs with the
same inputs: floats are serialised with repr (shortest round-trip form),
JSON keys are sorted, and no timestamps or environment details leak into
the payload.  Figures are the one exception; PNG bytes depend on the
matplotlib build, so they are rendered for human eyes and excluded from
determinism comparisons.
"""
from __future__ import annotations

import json
import os
from typing import Mapping, Sequence

__all__ = [
    "format_cell",
    "write_csv",
    "write_json",
    "render_line_figure",
]


def format_cell(value) -> str:
    """Canonical text for one CSV cell.

    Floats use repr so that reading the cell back with float() recovers
    the exact double; everything else falls back to str.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value)
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    """Write a delimited table with a single header line.

    Cells must not contain commas or newlines; the writers upstream only
    emit identifiers and numbers, so quoting is deliberately unsupported
    and violations fail loudly.
    """
    lines = [",".join(header)]
    width = len(header)
    for row in rows:
        cells = [format_cell(c) for c in row]
        if len(cells) != width:
            raise ValueError(f"row width {len(cells)} != header width {width}")
        for cell in cells:
            if "," in cell or "\n" in cell:
                raise ValueError(f"cell {cell!r} needs quoting, which is unsupported")
        lines.append(",".join(cells))
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: str, payload: Mapping) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")


def render_line_figure(path: str, x: Sequence[float],
                       series: Mapping[str, Sequence[float]], *,
                       title: str, xlabel: str, ylabel: str,
                       logy: bool = False) -> None:
    """Render one line chart to a PNG file.

    matplotlib is imported lazily with the Agg backend so that headless
    runs and environments without a display work unchanged.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    try:
        for name, ys in series.items():
            ax.plot(list(x), list(ys), marker="o", markersize=3, label=name)
        if logy:
            ax.set_yscale("log")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        if len(series) > 1:
            ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, dpi=110)
    finally:
        plt.close(fig)
