"""Machine (JSON) and human (text) reports built from one dict.

The text rendering is a flattening of the same dict with every leaf printed
through ``json.dumps``, so the two renderings cannot disagree on a number.
"""
from __future__ import annotations

import json

from .analysis import Caps, Verdict

__all__ = ["build_report", "render_json", "render_text", "flatten", "closure_table"]


def closure_table(res, limit: int | None = None) -> list:
    rows = []
    for n, b in enumerate(res.basis):
        if limit is not None and n >= limit:
            break
        rows.append({"index": n, "order": b.order, "element": b.render()})
    return rows


def build_report(system, verdict: Verdict, caps: Caps, seed: int, coverage_order: int | None,
                 version: str, experiments: dict | None = None, with_tables: bool = True) -> dict:
    """Report fields with stable names; no timestamps or machine details."""
    ev = verdict.evidence
    A = verdict.closures.get("A")
    rep = dict(ev["rep"]) if ev.get("rep") else None
    out = {
        "tool": "liereach",
        "version": version,
        "system": system.name,
        "description": system.description,
        "algebra": system.algebra.name,
        "target": system.target,
        "classification": verdict.classification,
        "dim_A": ev.get("dim_A"),
        "dim_B": ev.get("dim_B"),
        "dim_C": ev.get("dim_C"),
        "max_order": A.max_order if A is not None else None,
        "saturated": A.saturated if A is not None else None,
        "condition_BC": ev.get("condition_BC"),
        "coverage": ev.get("coverage_A"),
        "coverage_order": coverage_order,
        "caps": caps.to_dict(),
        "seed": seed,
        "rep": rep,
        "evidence": {k: v for k, v in ev.items()
                     if k not in ("dim_A", "dim_B", "dim_C", "condition_BC", "coverage_A",
                                  "caps", "seed", "rep", "target")},
        "notes": list(system.notes),
    }
    if with_tables:
        out["closures"] = {name: closure_table(res) for name, res in verdict.closures.items()}
    if experiments:
        out["experiments"] = experiments
    return out


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=True) + "\n"


def flatten(obj, prefix: str = "") -> list:
    """``(path, leaf)`` pairs in insertion order; lists index as ``[n]``."""
    items = []
    if isinstance(obj, dict):
        if not obj and prefix:
            items.append((prefix, obj))
        for k, v in obj.items():
            items.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, list):
        if not obj:
            items.append((prefix, obj))
        for n, v in enumerate(obj):
            items.extend(flatten(v, f"{prefix}[{n}]"))
    else:
        items.append((prefix, obj))
    return items


def render_text(report: dict) -> str:
    head = [f"liereach: {report.get('system')}"]
    if "classification" in report:
        head.append(f"classification: {report['classification']}")
    head.append("")
    body = [f"{path} = {json.dumps(val, ensure_ascii=True)}" for path, val in flatten(report)]
    return "\n".join(head + body) + "\n"
