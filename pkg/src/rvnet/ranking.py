"""rvnet.ranking

Importance analysis over the four centrality tables.

- rank_by_measure: top-k nodes of one measure, ties broken by asset code.
- importance_table: how many of the four top-k lists each asset enters
  (frequency) and at which level in each.
- least_central: the assets with the lowest aggregate standing, using the
  sum of per-measure rank positions.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple, Union

from .config import DEFAULT_LEAST_M, DEFAULT_TOP_K
from .errors import BadK, BadM, MeasureMismatch
from .types import (
    MEASURE_ORDER,
    CentralityScores,
    ImportanceRow,
    ImportanceTable,
    RankedEntry,
    ScoreTables,
    scores_in_order,
)

AllScores = Union[ScoreTables, Sequence[CentralityScores]]


def _full_ranking(scores: CentralityScores) -> List[Tuple[str, float]]:
    return sorted(scores.items(), key=lambda item: (-item[1], item[0]))


def rank_by_measure(scores: CentralityScores, k: int) -> List[RankedEntry]:
    """The k highest-scoring nodes, levels 1..k."""
    if not 1 <= k <= len(scores):
        raise BadK(f"k must be between 1 and {len(scores)}, got {k}")
    return [
        RankedEntry(asset_code=code, measure=scores.measure, level=level)
        for level, (code, _) in enumerate(_full_ranking(scores)[:k], start=1)
    ]


def _checked_tables(all_scores: AllScores) -> List[CentralityScores]:
    tables = scores_in_order(all_scores)
    given = len(all_scores)
    if len(tables) != len(MEASURE_ORDER) or given != len(MEASURE_ORDER):
        raise MeasureMismatch(
            f"expected one score table per measure ({len(MEASURE_ORDER)}), got {given}"
        )
    nodes = sorted(tables[0].assets)
    for t in tables[1:]:
        if sorted(t.assets) != nodes:
            raise MeasureMismatch(
                f"{t.measure.value} scores cover a different node set than {tables[0].measure.value}"
            )
    return tables


def importance_table(all_scores: AllScores, k: int = DEFAULT_TOP_K) -> ImportanceTable:
    """Frequency and levels of every asset appearing in any top-k list.

    Levels are listed in measure order (degree, closeness, betweenness,
    eigenvector), one per measure the asset appears in.
    """
    tables = _checked_tables(all_scores)
    levels: Dict[str, List[int]] = {}
    for table in tables:
        for entry in rank_by_measure(table, k):
            levels.setdefault(entry.asset_code, []).append(entry.level)

    rows = [
        ImportanceRow(asset_code=code, frequency=len(lv), levels=tuple(lv))
        for code, lv in levels.items()
    ]
    rows.sort(key=lambda r: (-r.frequency, min(r.levels), r.asset_code))
    return ImportanceTable(k=k, rows=tuple(rows))


def rank_positions(all_scores: AllScores) -> Dict[str, int]:
    """Sum over the four measures of each asset's ascending rank position.

    Position 1 is the lowest score in a measure, N the highest, so smaller
    sums mean less central assets.
    """
    tables = _checked_tables(all_scores)
    n = len(tables[0])
    totals: Dict[str, int] = {code: 0 for code in tables[0].assets}
    for table in tables:
        for level, (code, _) in enumerate(_full_ranking(table), start=1):
            totals[code] += n + 1 - level
    return totals


def least_central(all_scores: AllScores, m: int = DEFAULT_LEAST_M) -> List[str]:
    """The m least central assets, worst first; ties by asset code."""
    totals = rank_positions(all_scores)
    if not 1 <= m <= len(totals):
        raise BadM(f"m must be between 1 and {len(totals)}, got {m}")
    ordered = sorted(totals.items(), key=lambda item: (item[1], item[0]))
    return [code for code, _ in ordered[:m]]
