"""rvnet.pipeline

End-to-end run: ingest -> validate -> returns -> RV matrix -> MST ->
centralities -> ranking -> export.

Every RvNetError escaping a stage is tagged with that stage's name, reported
through telemetry and re-raised; the CLI turns it into the category's exit
code. The run is a pure function of (input bytes, config): the only
randomness in the package lives in rvnet.fixture.

Usage via Python:
    from rvnet.config import PipelineConfig
    from rvnet.pipeline import run_pipeline

    bundle = run_pipeline(PipelineConfig(input_path="fx.csv", out_dir="out"))
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

from .centrality import all_centralities
from .config import PipelineConfig
from .errors import IOFailure, MalformedRow, RvNetError
from .export import ReportBundle, export_dot, export_graphml, export_matrices, export_tables
from .ingest import align_panel, parse_price_records, validate_panel
from .mst import kruskal_mst, tree_summary
from .ranking import importance_table, least_central
from .returns import representation_returns
from .rvcorr import build_similarity_matrix
from .serialization import emit_json_report
from .telemetry import Telemetry
from .types import PanelSummary

logger = logging.getLogger("rvnet")


@contextmanager
def _stage(name: str, telemetry: Telemetry) -> Iterator[Dict[str, Any]]:
    facts: Dict[str, Any] = {}
    try:
        yield facts
    except RvNetError as exc:
        exc.stage = name
        telemetry.emit("stage_failed", stage=name, error=type(exc).__name__, message=str(exc))
        raise
    except OSError as exc:
        telemetry.emit("stage_failed", stage=name, error=type(exc).__name__, message=str(exc))
        raise IOFailure(str(exc), stage=name) from exc
    telemetry.emit("stage_completed", stage=name, **facts)


def render_outputs(bundle: ReportBundle, config: PipelineConfig) -> Dict[str, str]:
    """File name -> text for every requested format."""
    files: Dict[str, str] = {}
    if "csv" in config.formats:
        files.update(export_tables(bundle))
    if "dot" in config.formats:
        files["tree.dot"] = export_dot(bundle)
    if "graphml" in config.formats:
        files["tree.graphml"] = export_graphml(bundle)
    if "json" in config.formats:
        files["report.json"] = emit_json_report(bundle)
    if config.write_matrices:
        files.update(export_matrices(bundle.similarity))
    return files


def write_outputs(out_dir: Path, files: Dict[str, str]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(files):
        with open(out_dir / name, "w", encoding="utf-8", newline="") as f:
            f.write(files[name])


def run_pipeline(config: PipelineConfig, telemetry: Optional[Telemetry] = None) -> ReportBundle:
    """Run every stage, write the requested files and return the bundle."""
    telemetry = telemetry or Telemetry()

    with _stage("read", telemetry) as facts:
        input_bytes = config.input_path.read_bytes()
        facts["bytes"] = len(input_bytes)

    with _stage("ingest", telemetry) as facts:
        try:
            text = input_bytes.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedRow(f"input is not valid UTF-8 ({exc.reason})") from None
        records = parse_price_records(text)
        panel = align_panel(records, config.missing_policy)
        facts.update(n_records=len(records), n_assets=panel.n_assets, n_days=panel.n_days)

    with _stage("validate", telemetry):
        validate_panel(panel)

    with _stage("returns", telemetry) as facts:
        returns = representation_returns(panel, config.representation)
        facts.update(representation=config.representation.value, n_rows=panel.n_days - 1)

    with _stage("similarity", telemetry) as facts:
        sim = build_similarity_matrix(returns, max_workers=config.max_workers)
        facts["n_pairs"] = sim.size * (sim.size - 1) // 2

    with _stage("mst", telemetry) as facts:
        tree = kruskal_mst(sim)
        summary = tree_summary(tree)
        facts.update(n_edges=len(tree.edges), hub=summary.hub, hub_degree=summary.hub_degree)

    with _stage("centrality", telemetry) as facts:
        scores, eigen_report = all_centralities(
            tree, tol=config.eig_tol, max_iter=config.eig_max_iter,
        )
        facts.update(lambda_max=eigen_report.lambda_max, iterations=eigen_report.iterations)

    n = tree.node_count
    # Small panels cannot fill the default top-k / least-m lists.
    top_k, least_m = min(config.top_k, n), min(config.least_m, n)
    with _stage("ranking", telemetry) as facts:
        importance = importance_table(scores, k=top_k)
        least = least_central(scores, m=least_m)
        facts.update(top_k=top_k, least_m=least_m, importance_rows=len(importance))

    echo = config.echo(input_bytes)
    echo.update(top_k_effective=top_k, least_m_effective=least_m)
    bundle = ReportBundle(
        panel=PanelSummary.of(panel),
        similarity=sim,
        tree=tree,
        scores=scores,
        eigen_report=eigen_report,
        importance=importance,
        least_central=tuple(least),
        tree_summary=summary,
        config=echo,
    )

    with _stage("export", telemetry) as facts:
        files = render_outputs(bundle, config)
        write_outputs(config.out_dir, files)
        facts["files"] = sorted(files)

    telemetry.emit(
        "pipeline_completed", n_assets=panel.n_assets, n_days=panel.n_days, files=len(files),
    )
    return bundle
