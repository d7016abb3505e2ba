"""rvnet.types

Public domain types for rvnet.

Every type here is immutable after construction: dataclasses are frozen and
numpy payloads are copied and flagged read-only, so instances can be shared
across concurrent readers.

Asset ordering is lexicographic by code everywhere; all node indices used by
the similarity matrix, the spanning tree and the centrality scores refer to
that order.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np


def _frozen_array(values: object, dtype: type = float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


# ================================
# Enums
# ================================

class MissingPolicy(str, Enum):
    """How align_panel treats dates on which not every asset quotes."""

    DROP_DATE = "drop"      # keep only dates every asset quotes
    FORWARD_FILL = "ffill"  # carry the last quote forward on the union grid


class Measure(str, Enum):
    """Centrality measures, declared in table column order."""

    DEGREE = "degree"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"
    EIGENVECTOR = "eigenvector"


MEASURE_ORDER: Tuple[Measure, ...] = (
    Measure.DEGREE,
    Measure.CLOSENESS,
    Measure.BETWEENNESS,
    Measure.EIGENVECTOR,
)


class Representation(str, Enum):
    """Which columns of the (bid, ask) panel feed the similarity measure."""

    BIDASK = "bidask"  # bivariate, m x 2
    BID = "bid"        # univariate baselines, m x 1
    ASK = "ask"
    MID = "mid"


# ================================
# Prices
# ================================

@dataclass(frozen=True)
class PriceRecord:
    """One input row: a dated (bid, ask) quote for one asset."""

    date: dt.date
    asset_code: str
    bid: float
    ask: float


@dataclass(frozen=True, eq=False)
class PricePanel:
    """Aligned prices: values[i, t] = (bid, ask) of assets[i] on dates[t]."""

    dates: Tuple[dt.date, ...]
    assets: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(self, "values", _frozen_array(self.values))

    @property
    def n_assets(self) -> int:
        return len(self.assets)

    @property
    def n_days(self) -> int:
        return len(self.dates)

    def bid(self, i: int) -> np.ndarray:
        return self.values[i, :, 0]

    def ask(self, i: int) -> np.ndarray:
        return self.values[i, :, 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PricePanel):
            return NotImplemented
        return (
            self.dates == other.dates
            and self.assets == other.assets
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class PanelSummary:
    n_assets: int
    n_days: int
    first_date: dt.date
    last_date: dt.date

    @classmethod
    def of(cls, panel: PricePanel) -> "PanelSummary":
        return cls(
            n_assets=panel.n_assets,
            n_days=panel.n_days,
            first_date=panel.dates[0],
            last_date=panel.dates[-1],
        )


# ================================
# Returns and similarity
# ================================

@dataclass(frozen=True, eq=False)
class ReturnMatrix:
    """Log returns of one asset; rows are days, columns (bid, ask) or a single series."""

    asset_code: str
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=float)
        if rows.ndim == 1:
            rows = rows.reshape(-1, 1)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self.rows.shape[0]), int(self.rows.shape[1]))


@dataclass(frozen=True, eq=False)
class CrossCovariance:
    s_xx: np.ndarray
    s_yy: np.ndarray
    s_xy: np.ndarray

    def __post_init__(self) -> None:
        for name in ("s_xx", "s_yy", "s_xy"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name)))

    @property
    def s_yx(self) -> np.ndarray:
        return self.s_xy.T


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """N x N RV coefficients and their distances, indexed in `assets` order."""

    assets: Tuple[str, ...]
    rv: np.ndarray
    dist: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(self, "rv", _frozen_array(self.rv))
        object.__setattr__(self, "dist", _frozen_array(self.dist))

    @property
    def size(self) -> int:
        return len(self.assets)


# ================================
# Spanning tree
# ================================

@dataclass(frozen=True, order=True)
class Edge:
    """Undirected tree edge, canonically oriented a < b."""

    a: int
    b: int
    distance: float = field(compare=False)
    rv: float = field(compare=False)


@dataclass(frozen=True)
class SpanningTree:
    """N - 1 edges spanning nodes 0..N-1.

    Construct through rvnet.mst (kruskal_mst, brute_force_mst, tree_from_edges),
    which enforce connectivity and acyclicity.
    """

    node_count: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]

    @property
    def total_distance(self) -> float:
        return math.fsum(e.distance for e in self.edges)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self.adjacency[i]

    def edge_pairs(self) -> List[Tuple[int, int]]:
        return [(e.a, e.b) for e in self.edges]


@dataclass(frozen=True)
class TreeSummary:
    total_distance: float
    mean_distance: float
    leaf_fraction: float
    hub: str
    hub_degree: int
    mean_occupation_layer: float


# ================================
# Centrality
# ================================

@dataclass(frozen=True, eq=False)
class CentralityScores:
    measure: Measure
    values: np.ndarray
    assets: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(self, "values", _frozen_array(self.values))

    def __len__(self) -> int:
        return len(self.assets)

    def items(self) -> Iterator[Tuple[str, float]]:
        for code, value in zip(self.assets, self.values):
            yield code, float(value)

    def as_dict(self) -> Dict[str, float]:
        return dict(self.items())


@dataclass(frozen=True)
class EigenSolveReport:
    lambda_max: float
    iterations: int
    residual: float


# ================================
# Ranking
# ================================

@dataclass(frozen=True)
class RankedEntry:
    asset_code: str
    measure: Measure
    level: int


@dataclass(frozen=True)
class ImportanceRow:
    asset_code: str
    frequency: int
    levels: Tuple[int, ...]

    @property
    def levels_text(self) -> str:
        return ",".join(str(level) for level in self.levels)


@dataclass(frozen=True)
class ImportanceTable:
    k: int
    rows: Tuple[ImportanceRow, ...]

    def __iter__(self) -> Iterator[ImportanceRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, asset_code: str) -> Optional[ImportanceRow]:
        for r in self.rows:
            if r.asset_code == asset_code:
                return r
        return None

    @property
    def total_frequency(self) -> int:
        return sum(r.frequency for r in self.rows)


ScoreTables = Dict[Measure, CentralityScores]


def scores_in_order(all_scores: "ScoreTables | Sequence[CentralityScores]") -> List[CentralityScores]:
    """Return the score tables ordered degree, closeness, betweenness, eigenvector."""
    if isinstance(all_scores, dict):
        by_measure = dict(all_scores)
    else:
        by_measure = {s.measure: s for s in all_scores}
    return [by_measure[m] for m in MEASURE_ORDER if m in by_measure]
