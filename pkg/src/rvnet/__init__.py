"""rvnet — RV-coefficient networks of bivariate (bid, ask) return series.

Builds the minimum spanning tree of the RV-distance matrix, scores every node
with four centrality measures and aggregates the top-k lists into an
importance table.

Quick start:
    from rvnet import PipelineConfig, run_pipeline

    bundle = run_pipeline(PipelineConfig(input_path="prices.csv", out_dir="out"))
    for row in bundle.importance:
        print(row.asset_code, row.frequency, row.levels_text)
"""

from .centrality import (
    all_centralities,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
)
from .config import FixtureConfig, PipelineConfig
from .errors import NumericError, ParseError, RvNetError, ValidationError
from .fixture import generate_fixture
from .ingest import align_panel, parse_price_records, read_panel, validate_panel
from .mst import brute_force_mst, kruskal_mst, tree_summary
from .pipeline import run_pipeline
from .ranking import importance_table, least_central, rank_by_measure
from .returns import log_returns
from .rvcorr import build_similarity_matrix, rv_coefficient, rv_distance
from .telemetry import CompositeTelemetry, InMemoryTelemetry, LoggingTelemetry, Telemetry
from .types import (
    CentralityScores,
    ImportanceTable,
    Measure,
    MissingPolicy,
    PricePanel,
    Representation,
    SimilarityMatrix,
    SpanningTree,
)

__version__ = "0.1.0"

__all__ = [
    # Pipeline
    "PipelineConfig",
    "FixtureConfig",
    "run_pipeline",
    "generate_fixture",
    # Stages
    "parse_price_records",
    "align_panel",
    "validate_panel",
    "read_panel",
    "log_returns",
    "rv_coefficient",
    "rv_distance",
    "build_similarity_matrix",
    "kruskal_mst",
    "brute_force_mst",
    "tree_summary",
    "degree_centrality",
    "closeness_centrality",
    "betweenness_centrality",
    "eigenvector_centrality",
    "all_centralities",
    "rank_by_measure",
    "importance_table",
    "least_central",
    # Types
    "Measure",
    "MissingPolicy",
    "Representation",
    "PricePanel",
    "SimilarityMatrix",
    "SpanningTree",
    "CentralityScores",
    "ImportanceTable",
    # Errors
    "RvNetError",
    "ParseError",
    "ValidationError",
    "NumericError",
    # Telemetry
    "Telemetry",
    "LoggingTelemetry",
    "InMemoryTelemetry",
    "CompositeTelemetry",
]
