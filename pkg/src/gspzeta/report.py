"""Delimited-output emitters and the region-diagram figure.

``emit_table`` renders homogeneous result rows as CSV or a TeX tabular;
``region_scan`` builds the rows for a critical-region sweep; and
``render_region_diagram`` draws the (ell, s) critical polygon for a fixed
Siegel weight to a PNG next to the delimited output.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Optional, Sequence

from .regions import WeightTuple, classify, critical_s_set


def emit_table(results: Sequence[dict], fmt: str,
               columns: Optional[Sequence[str]] = None) -> str:
    """CSV (with header) or TeX tabular for a list of flat dicts."""
    if columns is None:
        columns = list(results[0]) if results else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in results:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "tex":
        lines = [r"\begin{tabular}{" + "c" * max(len(columns), 1) + "}",
                 " & ".join(_tex_escape(c) for c in columns) + r" \\",
                 r"\hline"]
        for row in results:
            lines.append(" & ".join(
                _tex_escape(_cell(row.get(c))) for c in columns) + r" \\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def _tex_escape(text: str) -> str:
    out = str(text)
    for ch in "&%#_":
        out = out.replace(ch, "\\" + ch)
    return out


def region_scan(k1: int, k2: int, ell_values: Sequence[int]) -> list:
    """One row per (ell, s) with s running over the critical set (a single
    row with blank s when the set is empty)."""
    rows = []
    for ell in ell_values:
        crit = critical_s_set(k1, k2, ell)
        if not crit:
            rows.append({"k1": k1, "k2": k2, "ell": ell, "s": None,
                         "region": None, "d_minus": False, "m": None,
                         "n_critical": 0})
            continue
        for s in crit:
            res = classify(WeightTuple(k1, k2, ell, s))
            rows.append({"k1": k1, "k2": k2, "ell": ell, "s": s,
                         "region": res.region, "d_minus": res.is_d_minus,
                         "m": res.m, "n_critical": len(crit)})
    return rows


_REGION_COLORS = {"A": "tab:blue", "D": "tab:orange", "F": "tab:green"}


def render_region_diagram(k1: int, k2: int, ell_max: int,
                          out_path: str) -> str:
    """Scatter the critical (ell, s) points coloured by region; D- points
    get a marker ring.  Returns the path written."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    seen = set()
    for ell in range(1, ell_max + 1):
        for s in critical_s_set(k1, k2, ell):
            res = classify(WeightTuple(k1, k2, ell, s))
            if res.region is None:
                continue
            label = res.region if res.region not in seen else None
            seen.add(res.region)
            ax.scatter([ell], [float(s)],
                       color=_REGION_COLORS[res.region],
                       edgecolors="black" if res.is_d_minus else "none",
                       linewidths=0.8, s=28, label=label, zorder=3)
    for gap in (k1 + k2 - 2, k1 - k2 + 2):
        if 1 <= gap <= ell_max:
            ax.axvline(gap, color="0.8", linestyle="--", zorder=1)
    ax.axhline(0.5, color="0.85", linewidth=0.8, zorder=1)
    ax.set_xlabel("ell")
    ax.set_ylabel("s")
    ax.set_title(f"Critical points for (k1, k2) = ({k1}, {k2})"
                 "  [ring = D-]")
    if seen:
        ax.legend(title="region")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path
