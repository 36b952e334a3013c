"""Render report streams to files: delimited output plus figures.

Used by the CLI when --out is given: the emitted records are written as
reports.jsonl and reports.csv, and matplotlib figures summarizing them
are saved next to the delimited files.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .reports import csv_columns, to_csv_row, to_json_line  # noqa: E402

GOLDEN = (5**0.5 - 1) / 2.0
FIG_WIDTH = 8.0

PASS_COLOR = "#2a7e43"
FAIL_COLOR = "#b03a2e"


def _new_axes(width=FIG_WIDTH):
    fig, ax = plt.subplots(figsize=(width, width * GOLDEN))
    ax.grid(True, alpha=0.3)
    return fig, ax


def _as_dicts(records) -> list:
    return [r.to_dict() if hasattr(r, "to_dict") else dict(r) for r in records]


def figure_valuations(reports: list, path: Path) -> bool:
    """Scatter of achieved vs predicted valuation for congruence reports."""
    pts = [
        (r["predicted_valuation"], r["achieved_valuation"], r["verified"])
        for r in reports
        if "claim" in r and not r.get("infinite") and r.get("achieved_valuation") is not None
    ]
    inf_pts = [r["predicted_valuation"] for r in reports
               if "claim" in r and r.get("infinite")]
    if not pts and not inf_pts:
        return False
    fig, ax = _new_axes()
    top = max([a for _, a, _ in pts] + [p for p, _, _ in pts] + inf_pts + [1])
    if pts:
        ax.scatter(
            [p for p, _, ok in pts if ok],
            [a for _, a, ok in pts if ok],
            s=24, color=PASS_COLOR, label="verified", zorder=3,
        )
        bad = [(p, a) for p, a, ok in pts if not ok]
        if bad:
            ax.scatter(*zip(*bad), s=36, color=FAIL_COLOR, marker="x",
                       label="failed", zorder=4)
    if inf_pts:
        ax.scatter(inf_pts, [top + 1] * len(inf_pts), s=30, marker="^",
                   color=PASS_COLOR, label="value 0 (infinite)", zorder=3)
    lim = top + 1.5
    ax.plot([0, lim], [0, lim], ls="--", color="gray", lw=1,
            label="achieved = predicted")
    ax.set_xlabel("predicted valuation")
    ax.set_ylabel("achieved valuation")
    ax.set_title("divisibility margins")
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True


def figure_suite(records: list, path: Path) -> bool:
    """Horizontal bars of check counts per criterion, pass/fail colored."""
    rows = [r for r in records if "criterion" in r]
    if not rows:
        return False
    names = [r["criterion"] for r in rows]
    checks = [max(r.get("checks", 0), 1) for r in rows]
    colors = [PASS_COLOR if r.get("passed") else FAIL_COLOR for r in rows]
    fig, ax = _new_axes()
    ypos = range(len(rows))
    ax.barh(ypos, checks, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=9)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("checks run (log scale)")
    n_pass = sum(1 for r in rows if r.get("passed"))
    ax.set_title(f"suite results: {n_pass}/{len(rows)} criteria passed")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True


def figure_invariants(records: list, path: Path) -> bool:
    """Bar chart of computed invariant values."""
    rows = [r for r in records if "invariant" in r]
    if not rows:
        return False
    labels = [f"{r['invariant']}({r['group']})" for r in rows]
    values = [r["value"] for r in rows]
    colors = [PASS_COLOR if r.get("verified") else FAIL_COLOR for r in rows]
    fig, ax = _new_axes()
    ax.bar(range(len(rows)), values, color=colors)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("invariant value")
    ax.set_title("exhaustive invariant values")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True


def write_outputs(records, outdir) -> list:
    """Write reports.jsonl, reports.csv and summary figures; returns paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    jsonl = out / "reports.jsonl"
    with open(jsonl, "w") as fh:
        for rec in records:
            fh.write(to_json_line(rec) + "\n")
    paths.append(jsonl)

    csv_path = out / "reports.csv"
    with open(csv_path, "w") as fh:
        header = None
        for rec in records:
            if isinstance(rec, list):
                fh.write(",".join(str(x) for x in rec) + "\n")
                continue
            cols = csv_columns(rec)
            if header != cols:
                header = cols
                fh.write(",".join(cols) + "\n")
            fh.write(to_csv_row(rec, columns=cols) + "\n")
    paths.append(csv_path)

    dicts = _as_dicts(records if not any(isinstance(r, list) for r in records)
                      else [r for r in records if not isinstance(r, list)])
    for name, renderer in [
        ("valuations.png", figure_valuations),
        ("suite.png", figure_suite),
        ("invariants.png", figure_invariants),
    ]:
        target = out / name
        if renderer(dicts, target):
            paths.append(target)
    return paths
