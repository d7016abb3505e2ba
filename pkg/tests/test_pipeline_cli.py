"""tests/test_pipeline_cli.py

End-to-end tests: fixture generation, the pipeline on disk and the CLI.
"""

import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from rvnet import __version__
from rvnet.cli import main
from rvnet.config import FixtureConfig, PipelineConfig
from rvnet.errors import BadDimensions, ConstantSeries, IOFailure
from rvnet.fixture import block_assignment, fixture_codes, generate_fixture
from rvnet.ingest import parse_price_records
from rvnet.pipeline import run_pipeline
from rvnet.telemetry import CompositeTelemetry, InMemoryTelemetry, Telemetry
from rvnet.types import Measure, Representation

STAGES = ["read", "ingest", "validate", "returns", "similarity", "mst", "centrality", "ranking", "export"]


def run_cli(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code


def _pegged_csv():
    rows = ["date,code,bid,ask"]
    for d, (a, b) in zip(("2010-01-04", "2010-01-05", "2010-01-06", "2010-01-07"),
                         ((1.0, 1.1), (1.2, 1.3), (1.1, 1.2), (1.3, 1.4))):
        rows.append(f"{d},AAA,{a},{b}")
        rows.append(f"{d},PEG,7.0,7.1")
        rows.append(f"{d},ZZZ,{a * 2},{b * 2}")
    return "\n".join(rows) + "\n"


# ─────────────────────────────────────
# Fixtures
# ─────────────────────────────────────

@pytest.fixture(scope="module")
def fixture_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "fixture.csv"
    path.write_text(generate_fixture(seed=1, n_assets=45, n_days=1250), encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def fixture_run(fixture_file, tmp_path_factory):
    out = tmp_path_factory.mktemp("run_a")
    sink = InMemoryTelemetry()
    bundle = run_pipeline(
        PipelineConfig(input_path=fixture_file, out_dir=out, write_matrices=True),
        telemetry=Telemetry(sink=sink),
    )
    return bundle, out, sink


# ─────────────────────────────────────
# Fixture generator
# ─────────────────────────────────────

class TestGenerateFixture:
    def test_deterministic(self):
        assert generate_fixture(seed=7, n_assets=5, n_days=20) == generate_fixture(seed=7, n_assets=5, n_days=20)

    def test_seed_matters(self):
        assert generate_fixture(seed=7, n_assets=5, n_days=20) != generate_fixture(seed=8, n_assets=5, n_days=20)

    def test_shape_and_positivity(self):
        records = parse_price_records(generate_fixture(seed=2, n_assets=5, n_days=20))
        assert len(records) == 100
        assert all(0 < r.bid < r.ask for r in records)
        assert sorted({r.asset_code for r in records}) == ["X01", "X02", "X03", "X04", "X05"]

    def test_blocks_are_contiguous(self):
        assert block_assignment(45, 3).tolist() == [0] * 15 + [1] * 15 + [2] * 15
        assert fixture_codes(3) == ["X01", "X02", "X03"]

    def test_bad_dimensions(self):
        with pytest.raises(BadDimensions):
            FixtureConfig(n_assets=1)
        with pytest.raises(BadDimensions):
            generate_fixture(seed=1, n_assets=4, n_days=2)


# ─────────────────────────────────────
# Pipeline
# ─────────────────────────────────────

class TestPipeline:
    def test_default_fixture_run(self, fixture_run):
        bundle, out, _ = fixture_run
        assert len(bundle.tree.edges) == 44
        assert len(bundle.scores) == 4
        assert bundle.importance.total_frequency == 32
        assert len(bundle.least_central) == 10
        assert bundle.scores[Measure.DEGREE].values.sum() == pytest.approx(2.0, abs=1e-12)
        assert bundle.eigen_report.residual < 1e-8
        max_degree = max(len(nbrs) for nbrs in bundle.tree.adjacency)
        assert max_degree ** 0.5 - 1e-9 <= bundle.eigen_report.lambda_max <= max_degree + 1e-9
        assert sorted(p.name for p in out.iterdir()) == [
            "centrality.csv", "dist_matrix.csv", "importance.csv", "least_central.csv",
            "report.json", "rv_matrix.csv", "tree.dot", "tree.graphml",
        ]

    def test_planted_blocks_mostly_stay_together(self, fixture_run):
        bundle, _, _ = fixture_run
        block = dict(zip(fixture_codes(45), block_assignment(45, 3).tolist()))
        labels = bundle.tree.labels
        crossing = sum(1 for e in bundle.tree.edges if block[labels[e.a]] != block[labels[e.b]])
        assert crossing <= 4

    def test_rerun_is_byte_identical(self, fixture_file, fixture_run, tmp_path):
        _, first, _ = fixture_run
        run_pipeline(PipelineConfig(input_path=fixture_file, out_dir=tmp_path, write_matrices=True))
        for path in first.iterdir():
            assert (tmp_path / path.name).read_bytes() == path.read_bytes(), path.name

    def test_stage_events(self, fixture_run):
        _, _, sink = fixture_run
        assert sink.stages() == STAGES
        assert len(sink.find("pipeline_completed")) == 1
        assert not sink.find("stage_failed")

    def test_config_echo_in_report(self, fixture_run):
        _, out, _ = fixture_run
        meta = json.loads((out / "report.json").read_text())["meta"]
        assert meta["config"]["input"] == "fixture.csv"
        assert meta["config"]["top_k_effective"] == 8
        assert len(meta["config"]["input_sha256"]) == 64
        assert meta["n_assets"] == 45

    def test_two_asset_toy_run(self, tmp_path):
        src = tmp_path / "toy.csv"
        src.write_text(generate_fixture(seed=4, n_assets=2, n_days=10))
        bundle = run_pipeline(PipelineConfig(input_path=src, out_dir=tmp_path / "out", formats={"json", "dot"}))
        assert len(bundle.tree.edges) == 1
        assert bundle.scores[Measure.BETWEENNESS].values.tolist() == [0.0, 0.0]
        assert bundle.scores[Measure.DEGREE].values.tolist() == [1.0, 1.0]
        assert sorted(p.name for p in (tmp_path / "out").iterdir()) == ["report.json", "tree.dot"]
        assert json.loads((tmp_path / "out" / "report.json").read_text())["meta"]["config"]["top_k_effective"] == 2

    def test_pegged_asset_names_the_asset(self, tmp_path):
        src = tmp_path / "pegged.csv"
        src.write_text(_pegged_csv())
        sink = InMemoryTelemetry()
        with pytest.raises(ConstantSeries) as exc:
            run_pipeline(PipelineConfig(input_path=src, out_dir=tmp_path / "out"), telemetry=Telemetry(sink=sink))
        assert exc.value.asset_code == "PEG"
        assert exc.value.stage == "validate"
        assert sink.find("stage_failed")[0]["error"] == "ConstantSeries"

    def test_missing_input_is_io_failure(self, tmp_path):
        with pytest.raises(IOFailure) as exc:
            run_pipeline(PipelineConfig(input_path=tmp_path / "nope.csv", out_dir=tmp_path / "out"))
        assert exc.value.stage == "read"
        assert exc.value.exit_code == 5

    def test_univariate_representation(self, fixture_file, tmp_path):
        bundle = run_pipeline(PipelineConfig(
            input_path=fixture_file, out_dir=tmp_path, representation=Representation.MID, formats={"csv"},
        ))
        assert len(bundle.tree.edges) == 44

    def test_composite_sink_survives_broken_sink(self, tmp_path):
        class Broken:
            def emit(self, event):
                raise RuntimeError("down")

        src = tmp_path / "toy.csv"
        src.write_text(generate_fixture(seed=4, n_assets=3, n_days=10))
        good = InMemoryTelemetry()
        run_pipeline(
            PipelineConfig(input_path=src, out_dir=tmp_path / "out", formats={"json"}),
            telemetry=Telemetry(sink=CompositeTelemetry(sinks=[Broken(), good])),
        )
        assert good.stages() == STAGES

    def test_config_validation(self, tmp_path):
        with pytest.raises(ValueError):
            PipelineConfig(input_path="x.csv", out_dir=tmp_path, top_k=0)
        with pytest.raises(ValueError):
            PipelineConfig(input_path="x.csv", out_dir=tmp_path, formats={"pdf"})


# ─────────────────────────────────────
# CLI
# ─────────────────────────────────────

class TestCli:
    def test_run_without_subcommand(self, fixture_file, tmp_path, capsys):
        code = run_cli(["--input", str(fixture_file), "--out-dir", str(tmp_path), "--formats", "dot,csv"])
        assert code == 0
        assert (tmp_path / "tree.dot").exists()
        assert not (tmp_path / "report.json").exists()
        assert "44 MST edges" in capsys.readouterr().out

    def test_input_named_like_a_subcommand(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "run").write_text(generate_fixture(seed=4, n_assets=3, n_days=10))
        code = run_cli(["--log-level", "WARNING", "--input", "run", "--out-dir", "out", "--formats", "json"])
        assert code == 0
        assert (tmp_path / "out" / "report.json").exists()

    def test_constant_series_exit_code(self, tmp_path, capsys):
        src = tmp_path / "pegged.csv"
        src.write_text(_pegged_csv())
        code = run_cli(["run", "--input", str(src), "--out-dir", str(tmp_path / "out")])
        assert code == 3
        assert "validate failed: ConstantSeries" in capsys.readouterr().err

    def test_malformed_input_exit_code(self, tmp_path):
        src = tmp_path / "bad.csv"
        src.write_text("date,code,bid,ask\n2010-01-04,AAA,abc,1.0\n")
        assert run_cli(["run", "--input", str(src), "--out-dir", str(tmp_path / "out")]) == 2

    def test_missing_input_exit_code(self, tmp_path):
        assert run_cli(["run", "--input", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)]) == 5

    def test_bad_top_k_exit_code(self, fixture_file, tmp_path):
        assert run_cli(["run", "--input", str(fixture_file), "--out-dir", str(tmp_path), "--top-k", "0"]) == 3

    def test_non_convergence_exit_code(self, fixture_file, tmp_path):
        argv = ["run", "--input", str(fixture_file), "--out-dir", str(tmp_path), "--eig-max-iter", "1"]
        assert run_cli(argv) == 4

    def test_unknown_format_is_usage_error(self, fixture_file, tmp_path):
        assert run_cli(["run", "--input", str(fixture_file), "--out-dir", str(tmp_path), "--formats", "pdf"]) == 2

    def test_fixture_to_file(self, tmp_path):
        out = tmp_path / "fx.csv"
        assert run_cli(["fixture", "--seed", "3", "--assets", "4", "--days", "6", "--out", str(out)]) == 0
        assert out.read_text() == generate_fixture(seed=3, n_assets=4, n_days=6)

    def test_fixture_to_stdout(self, capsys):
        assert run_cli(["fixture", "--seed", "3", "--assets", "4", "--days", "6"]) == 0
        assert capsys.readouterr().out == generate_fixture(seed=3, n_assets=4, n_days=6)

    def test_version(self, capsys):
        assert run_cli(["version"]) == 0
        assert capsys.readouterr().out.strip() == f"rvnet {__version__}"
