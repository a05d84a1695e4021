"""Writing reports as JSON, CSV and SVG files."""

from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from pathlib import Path

from ..errors import ParameterError

SCHEMA = 1


def report_json(report, deterministic: bool = False) -> str:
    doc = {"schema": SCHEMA, "kind": report.kind, "tool_version": report.tool_version}
    if not deterministic:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc.update(report.to_dict())
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _num(x) -> str:
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return "inf"
    return repr(float(x))


def report_csvs(report) -> dict[str, str]:
    """Map of file name to CSV text for ``report``."""
    kind = report.kind
    if kind == "prevalence":
        out = {}
        for run in report.runs:
            name = "prevalence.csv" if run.seed is None else f"prevalence_seed{run.seed}.csv"
            rows = [
                [_num(r.lam), _num(r.estimate.slope), _num(r.estimate.r_squared),
                 _num(r.energy.value), int(r.collapse)]
                for r in run.records
            ]
            out[name] = _csv(["lambda", "slope", "r2", "energy", "collapse"], rows)
        return out
    if kind == "fubini":
        fields = ["seed", "t", "n", "lhs", "rhs_tight", "rhs_paper", "ratio_tight"]
        rows = [[r["seed"]] + [_num(r[k]) for k in fields[1:]] for r in report.results]
        return {"fubini.csv": _csv(fields, rows)}
    if kind == "energy-profile":
        rows = [
            [d, _num(p["s"]), _num(v["value"])]
            for p in report.profiles
            for d, v in zip(p["depths"], p["values"])
        ]
        return {"profile.csv": _csv(["depth", "s", "energy"], rows)}
    if kind == "graph":
        out = {}
        for run in report.runs:
            tag = "" if run["seed"] is None else f"_seed{run['seed']}"
            for key in ("est_X", "est_fX", "est_graph", "est_product"):
                rows = [[_num(e), c] for e, c in run[key]["scales_all"]]
                out[f"boxcount{tag}_{key[4:]}.csv"] = _csv(["epsilon", "count"], rows)
        return out
    if kind == "construct":
        rows = [[k, _num(length), _num(total)]
                for k, (length, total) in enumerate(zip(report.data["lengths"], report.data["total_lengths"]))]
        return {"levels.csv": _csv(["level", "length", "total_length"], rows)}
    raise ParameterError(f"no CSV layout for report kind {kind!r}")


def prevalence_svg(report, width: int = 640, height: int = 360) -> str:
    """Scatter of image slope against lambda; collapse lambdas marked in red."""
    records = [(run.seed, r) for run in report.runs for r in run.records]
    lams = [r.lam for _, r in records]
    lo, hi = min(lams), max(lams)
    span = hi - lo or 1.0
    ymax = max(1.1, max(r.estimate.slope for _, r in records) + 0.05)
    left, right, top, bottom = 50, 20, 20, 40
    pw, ph = width - left - right, height - top - bottom

    def sx(v):
        return left + (v - lo) / span * pw

    def sy(v):
        return top + (1 - v / ymax) * ph

    palette = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]
    seeds = sorted({s for s, _ in records}, key=lambda s: (s is None, s))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for tick in (0.0, 0.5, 1.0):
        y = sy(tick)
        parts.append(f'<line x1="{left - 4}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{left - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">{tick:.1f}</text>')
    for tick in (lo, (lo + hi) / 2, hi):
        x = sx(tick)
        parts.append(f'<text x="{x:.2f}" y="{top + ph + 16}" font-size="11" text-anchor="middle">{tick:.3g}</text>')
    parts.append(f'<text x="{left + pw / 2:.2f}" y="{height - 6}" font-size="12" text-anchor="middle">lambda</text>')
    parts.append(f'<text x="14" y="{top + ph / 2:.2f}" font-size="12" text-anchor="middle" '
                 f'transform="rotate(-90 14 {top + ph / 2:.2f})">box-count slope</text>')
    for lam in sorted({r.lam for _, r in records if r.collapse}):
        x = sx(lam)
        parts.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" '
                     f'stroke="red" stroke-dasharray="4 3"/>')
    for seed, r in records:
        colour = "red" if r.collapse else palette[seeds.index(seed) % len(palette)]
        parts.append(f'<circle cx="{sx(r.lam):.2f}" cy="{sy(r.estimate.slope):.2f}" r="3" fill="{colour}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(report, fmt: str, out_dir: str | Path, deterministic: bool = False) -> list[Path]:
    """Write ``report`` in format ``fmt`` (json, csv or svg) under ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = report.kind.replace("-", "_")
    if fmt == "json":
        files = {f"{stem}.json": report_json(report, deterministic)}
    elif fmt == "csv":
        files = report_csvs(report)
    elif fmt == "svg":
        if report.kind != "prevalence":
            raise ParameterError("SVG output exists only for prevalence reports")
        files = {"prevalence.svg": prevalence_svg(report)}
    else:
        raise ParameterError(f"unknown format {fmt!r}")
    paths = []
    for name, text in files.items():
        path = out / name
        path.write_text(text)
        paths.append(path)
    return paths
