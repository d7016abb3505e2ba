"""rvnet.serialization

JSON report for a ReportBundle.

The document has sorted keys and full-precision floats (Python's shortest
round-tripping repr), so identical bundles give identical bytes and scores
survive a json.loads round trip exactly.

Usage:
    from rvnet.serialization import emit_json_report, report_from_json

    text = emit_json_report(bundle)
    data = report_from_json(text)
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any, Dict

from .export import ReportBundle
from .types import MEASURE_ORDER

REPORT_FORMAT_VERSION = 1


def _get_version() -> str:
    try:
        from . import __version__
        return __version__
    except Exception:
        return "unknown"


def report_to_dict(bundle: ReportBundle) -> Dict[str, Any]:
    panel = bundle.panel
    index = {code: i for i, code in enumerate(bundle.codes)}
    nodes = []
    for i in bundle.node_order():
        node: Dict[str, Any] = {"code": bundle.codes[i]}
        for m in MEASURE_ORDER:
            node[m.value] = bundle.score(m, i)
        nodes.append(node)

    return {
        "meta": {
            "format_version": REPORT_FORMAT_VERSION,
            "tool_version": _get_version(),
            "n_assets": panel.n_assets,
            "n_days": panel.n_days,
            "first_date": panel.first_date.isoformat(),
            "last_date": panel.last_date.isoformat(),
            "config": dict(bundle.config),
        },
        "nodes": nodes,
        "edges": [
            {"a": a, "b": b, "a_index": index[a], "b_index": index[b], "rv": rv, "dist": dist}
            for a, b, rv, dist in bundle.edge_order()
        ],
        "importance": [
            {"code": row.asset_code, "frequency": row.frequency, "levels": list(row.levels)}
            for row in bundle.importance
        ],
        "least_central": list(bundle.least_central),
        "eigen_report": asdict(bundle.eigen_report),
        "tree": asdict(bundle.tree_summary),
    }


def emit_json_report(bundle: ReportBundle) -> str:
    """Serialize the bundle to a deterministic JSON document."""
    return json.dumps(
        report_to_dict(bundle), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False,
    ) + "\n"


def report_from_json(text: str) -> Dict[str, Any]:
    """Parse a report, refusing documents from a newer format."""
    data = json.loads(text)
    version = data.get("meta", {}).get("format_version")
    if version is None or version > REPORT_FORMAT_VERSION:
        raise ValueError(
            f"Incompatible report format: expected version <= {REPORT_FORMAT_VERSION}, got {version!r}."
        )
    return data
