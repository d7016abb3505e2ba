"""rvnet.export

Serialize a finished analysis (ReportBundle) into graph and tabular files.

- export_dot:      undirected DOT for Graphviz and friends
- export_graphml:  GraphML 1.0 (written through networkx)
- export_tables:   centrality.csv, importance.csv, least_central.csv
- export_matrices: rv_matrix.csv, dist_matrix.csv

Every exporter is a pure function of the bundle; nodes and edges are always
emitted in code order so the outputs are byte-stable.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .types import (
    MEASURE_ORDER,
    EigenSolveReport,
    ImportanceTable,
    Measure,
    PanelSummary,
    ScoreTables,
    SimilarityMatrix,
    SpanningTree,
    TreeSummary,
)


# ================================
# Bundle
# ================================

@dataclass(frozen=True)
class ReportBundle:
    """Everything one pipeline run produced, plus the configuration echo."""

    panel: PanelSummary
    similarity: SimilarityMatrix
    tree: SpanningTree
    scores: ScoreTables
    eigen_report: EigenSolveReport
    importance: ImportanceTable
    least_central: Tuple[str, ...]
    tree_summary: TreeSummary
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def codes(self) -> Tuple[str, ...]:
        return self.tree.labels

    def score(self, measure: Measure, node: int) -> float:
        return float(self.scores[measure].values[node])

    def node_order(self) -> List[int]:
        return sorted(range(self.tree.node_count), key=lambda i: self.tree.labels[i])

    def edge_order(self) -> List[Tuple[str, str, float, float]]:
        labels = self.tree.labels
        rows = []
        for e in self.tree.edges:
            a, b = sorted((labels[e.a], labels[e.b]))
            rows.append((a, b, e.rv, e.distance))
        rows.sort()
        return rows


_ATTR = {
    Measure.DEGREE: "degree_c",
    Measure.CLOSENESS: "closeness_c",
    Measure.BETWEENNESS: "betweenness_c",
    Measure.EIGENVECTOR: "eigenvector_c",
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _exact(value: float) -> str:
    return repr(float(value))


# ================================
# DOT
# ================================

def export_dot(bundle: ReportBundle) -> str:
    lines = ["graph mst {"]
    for i in bundle.node_order():
        attrs = ", ".join(
            f"{_ATTR[m]}={bundle.score(m, i):.6f}" for m in MEASURE_ORDER
        )
        lines.append(f"  {_quote(bundle.codes[i])} [{attrs}];")
    for a, b, rv, dist in bundle.edge_order():
        lines.append(f"  {_quote(a)} -- {_quote(b)} [rv={rv:.12g}, dist={dist:.12g}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ================================
# GraphML
# ================================

def to_networkx(bundle: ReportBundle) -> nx.Graph:
    """The tree as a networkx graph, node ids = asset codes."""
    g = nx.Graph(name="mst")
    for i in bundle.node_order():
        g.add_node(bundle.codes[i], **{_ATTR[m]: bundle.score(m, i) for m in MEASURE_ORDER})
    for a, b, rv, dist in bundle.edge_order():
        g.add_edge(a, b, rv=rv, dist=dist)
    return g


def export_graphml(bundle: ReportBundle) -> str:
    return "\n".join(nx.generate_graphml(to_networkx(bundle))) + "\n"


# ================================
# CSV tables
# ================================

def _csv_text(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def export_tables(bundle: ReportBundle) -> Dict[str, str]:
    """centrality.csv (3-decimal and full-precision columns), importance.csv, least_central.csv."""
    names = [m.value for m in MEASURE_ORDER]
    centrality: List[List[Any]] = [["code", *names, *(f"{n}_full" for n in names)]]
    for i in bundle.node_order():
        values = [bundle.score(m, i) for m in MEASURE_ORDER]
        centrality.append(
            [bundle.codes[i], *(f"{v:.3f}" for v in values), *(_exact(v) for v in values)]
        )

    importance: List[List[Any]] = [["code", "frequency", "levels"]]
    for row in bundle.importance:
        importance.append([row.asset_code, row.frequency, row.levels_text])

    least: List[List[Any]] = [["code"]]
    least.extend([code] for code in bundle.least_central)

    return {
        "centrality.csv": _csv_text(centrality),
        "importance.csv": _csv_text(importance),
        "least_central.csv": _csv_text(least),
    }


def matrix_to_csv(assets: Sequence[str], matrix: np.ndarray) -> str:
    rows: List[List[Any]] = [["code", *assets]]
    for code, values in zip(assets, matrix):
        rows.append([code, *(f"{float(v):.12g}" for v in values)])
    return _csv_text(rows)


def export_matrices(sim: SimilarityMatrix) -> Dict[str, str]:
    return {
        "rv_matrix.csv": matrix_to_csv(sim.assets, sim.rv),
        "dist_matrix.csv": matrix_to_csv(sim.assets, sim.dist),
    }


def scores_from_centrality_csv(text: str) -> Dict[Measure, Dict[str, float]]:
    """Read the full-precision columns of centrality.csv back."""
    reader = csv.DictReader(io.StringIO(text))
    out: Dict[Measure, Dict[str, float]] = {m: {} for m in MEASURE_ORDER}
    for row in reader:
        for m in MEASURE_ORDER:
            out[m][row["code"]] = float(row[f"{m.value}_full"])
    return out
