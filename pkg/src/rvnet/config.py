"""rvnet.config

Configuration for the rvnet pipeline and the synthetic fixture generator.

All parameters are explicit with conservative defaults: top 8 nodes per
measure, 10 least central assets, eigenvector tolerance 1e-10.
"""

from __future__ import annotations

import datetime as dt
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, Optional

from .errors import BadDimensions
from .types import MissingPolicy, Representation


DEFAULT_TOP_K = 8
DEFAULT_LEAST_M = 10
DEFAULT_EIG_TOL = 1e-10
DEFAULT_EIG_MAX_ITER = 10_000

ALL_FORMATS: FrozenSet[str] = frozenset({"dot", "graphml", "json", "csv"})
DEFAULT_FORMATS: FrozenSet[str] = ALL_FORMATS

FIXTURE_START = dt.date(2008, 5, 5)


# ================================
# Pipeline Config
# ================================

@dataclass
class PipelineConfig:
    """Parameters of one analysis run.

    `echo()` is what gets written into the report; it excludes the output
    directory so that runs into different directories stay byte-identical.
    """

    input_path: Path
    out_dir: Path

    missing_policy: MissingPolicy = MissingPolicy.DROP_DATE
    representation: Representation = Representation.BIDASK

    # IMPORTANCE ANALYSIS
    # -------------------
    top_k: int = DEFAULT_TOP_K
    least_m: int = DEFAULT_LEAST_M

    # EIGENVECTOR SOLVE
    # -----------------
    eig_tol: float = DEFAULT_EIG_TOL
    eig_max_iter: int = DEFAULT_EIG_MAX_ITER

    # OUTPUT
    # ------
    formats: FrozenSet[str] = field(default_factory=lambda: DEFAULT_FORMATS)
    write_matrices: bool = False

    # Pairwise parallelism in the RV-matrix stage; results do not depend on it.
    max_workers: int = 1

    def __post_init__(self) -> None:
        self.input_path = Path(self.input_path)
        self.out_dir = Path(self.out_dir)
        self.missing_policy = MissingPolicy(self.missing_policy)
        self.representation = Representation(self.representation)
        self.formats = frozenset(self.formats)

        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.least_m < 1:
            raise ValueError("least_m must be >= 1")
        if not self.formats:
            raise ValueError("formats must not be empty")
        unknown = self.formats - ALL_FORMATS
        if unknown:
            raise ValueError(f"unknown formats: {', '.join(sorted(unknown))}")
        if not self.eig_tol > 0.0:
            raise ValueError("eig_tol must be > 0")
        if self.eig_max_iter < 1:
            raise ValueError("eig_max_iter must be >= 1")
        if self.max_workers < 1:
            raise ValueError("max_workers must be >= 1")

    def echo(self, input_bytes: Optional[bytes] = None) -> Dict[str, Any]:
        """Parameters needed to reproduce the run."""
        data: Dict[str, Any] = {
            "input": self.input_path.name,
            "missing_policy": self.missing_policy.value,
            "representation": self.representation.value,
            "top_k": self.top_k,
            "least_m": self.least_m,
            "eig_tol": self.eig_tol,
            "eig_max_iter": self.eig_max_iter,
            "formats": sorted(self.formats),
            "write_matrices": self.write_matrices,
        }
        if input_bytes is not None:
            data["input_sha256"] = hashlib.sha256(input_bytes).hexdigest()
        return data


# ================================
# Fixture Config
# ================================

@dataclass
class FixtureConfig:
    """Shape and seed of a synthetic (bid, ask) panel."""

    seed: int = 1
    n_assets: int = 45
    n_days: int = 1250
    n_blocks: int = 3
    start: dt.date = FIXTURE_START

    # Per-day return scales: shared block factor, market factor, idiosyncratic noise.
    block_vol: float = 0.006
    market_vol: float = 0.001
    idio_vol: float = 0.003

    def __post_init__(self) -> None:
        if self.n_assets < 2:
            raise BadDimensions("n_assets must be >= 2")
        if self.n_days < 3:
            raise BadDimensions("n_days must be >= 3")
        if not 1 <= self.n_blocks <= self.n_assets:
            raise BadDimensions("n_blocks must be between 1 and n_assets")
