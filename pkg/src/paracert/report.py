"""Deterministic run reports: JSON, a delimited summary, and figures.

Every command writes three artifacts side by side: a JSON report whose
key order is fixed, a CSV summary of the headline numbers, and a PNG
figure.  Wall-clock measurements are quarantined in a single "timing"
section (nested wall_time_ms fields are moved there too) so that two
runs with the same configuration produce byte-identical JSON once that
section is dropped.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import __version__

_CSV_HEADER = ("item", "lo", "hi", "rendered", "note")


@dataclass(frozen=True)
class SummaryRow:
    item: str
    lo: float
    hi: float
    rendered: str
    note: str = ""

    @classmethod
    def from_interval(cls, item, iv, note="") -> "SummaryRow":
        return cls(item, iv.lo, iv.hi, iv.format_decimal(), note)

    @classmethod
    def from_scalar(cls, item, value, note="") -> "SummaryRow":
        v = float(value)
        return cls(item, v, v, repr(v), note)


def _scrub_timing(node, bucket: list, path: str = ""):
    """Move nested wall_time_ms values out of a results tree, in place."""
    if isinstance(node, dict):
        if "wall_time_ms" in node:
            label = node.get("integrand", path or "certificate")
            bucket.append((f"{path}/{label}".lstrip("/"), node.pop("wall_time_ms")))
        for key, value in node.items():
            _scrub_timing(value, bucket, f"{path}/{key}".lstrip("/"))
    elif isinstance(node, list):
        for i, value in enumerate(node):
            _scrub_timing(value, bucket, f"{path}[{i}]")


def build_report(
    command: str,
    config: dict,
    results: dict,
    notes: list[str],
    wall_ms: float,
) -> dict:
    timings = []
    _scrub_timing(results, timings)
    return {
        "tool": {"name": "paracert", "version": __version__},
        "command": command,
        "config": config,
        "results": results,
        "notes": list(notes),
        "timing": {
            "total_wall_ms": wall_ms,
            "stages": [{"stage": name, "wall_ms": ms} for name, ms in timings],
        },
    }


def strip_timing(payload: dict) -> dict:
    """The regression-comparable view of a report."""
    return {k: v for k, v in payload.items() if k != "timing"}


def write_files(
    payload: dict,
    rows: list[SummaryRow],
    figure,
    out_dir: str,
    basename: str,
) -> dict[str, str]:
    """Write report.json / summary.csv / figure.png; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {}

    json_path = os.path.join(out_dir, f"{basename}.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths["json"] = json_path

    csv_path = os.path.join(out_dir, f"{basename}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER)
        for row in rows:
            writer.writerow((row.item, repr(row.lo), repr(row.hi),
                             row.rendered, row.note))
    paths["csv"] = csv_path

    if figure is not None:
        png_path = os.path.join(out_dir, f"{basename}.png")
        figure.savefig(png_path, dpi=120, bbox_inches="tight")
        plt.close(figure)
        paths["figure"] = png_path
    return paths


# ---------------------------------------------------------------------------
# Figure builders (one axes each, no global state)
# ---------------------------------------------------------------------------


def fig_enclosures(items, title: str, log: bool = False):
    """Horizontal bars [lo, hi] per labeled interval."""
    fig, ax = plt.subplots(figsize=(7, 0.8 + 0.6 * len(items)))
    labels = []
    for i, (label, lo, hi) in enumerate(items):
        ax.barh(i, max(hi - lo, 0.0), left=lo, height=0.5, color="#4878a8")
        labels.append(label)
    ax.set_yticks(range(len(items)))
    ax.set_yticklabels(labels)
    if log:
        ax.set_xscale("log")
    ax.set_xlabel("enclosure")
    ax.set_title(title)
    ax.grid(axis="x", alpha=0.3)
    return fig


def fig_band(x, lows, highs, title: str, xlabel: str, ylabel: str):
    """A shaded lower/upper band over a 1D parameter."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.fill_between(x, lows, highs, alpha=0.35, color="#4878a8",
                    label="enclosure")
    ax.plot(x, lows, color="#2a4d69", lw=1)
    ax.plot(x, highs, color="#2a4d69", lw=1)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    return fig


def fig_decay(x, y, title: str, xlabel: str, ylabel: str, extra=None):
    """Log-log decay curve, optionally with a second labeled series."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(x, y, "o-", color="#4878a8")
    if extra is not None:
        x2, y2, label2 = extra
        ax.loglog(x2, y2, "s--", color="#b1532e", label=label2)
        ax.legend()
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(alpha=0.3, which="both")
    return fig


def fig_error_bars(names, errors, tolerances, title: str):
    """Property-suite errors against their tolerances, log scale."""
    fig, ax = plt.subplots(figsize=(8, 0.8 + 0.5 * len(names)))
    ypos = range(len(names))
    floor = 1e-17
    ax.barh(ypos, [max(e, floor) for e in errors], height=0.5,
            color="#4878a8", label="max error")
    for i, tol in enumerate(tolerances):
        ax.plot([tol, tol], [i - 0.35, i + 0.35], color="#b1532e", lw=2)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names)
    ax.set_xscale("log")
    ax.set_xlabel("relative error (bars) vs tolerance (ticks)")
    ax.set_title(title)
    ax.grid(axis="x", alpha=0.3, which="both")
    return fig
