"""tests/test_ranking.py

Tests for top-k ranking, the importance table and the least-central list.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from rvnet.centrality import all_centralities
from rvnet.errors import BadK, BadM, MeasureMismatch
from rvnet.mst import prufer_to_pairs, tree_from_pairs
from rvnet.ranking import importance_table, least_central, rank_by_measure, rank_positions
from rvnet.types import MEASURE_ORDER, CentralityScores, Measure


def scores(measure, mapping):
    return CentralityScores(measure=measure, values=list(mapping.values()), assets=list(mapping))


def tables(*mappings):
    """Four score tables in measure order from four {code: score} dicts."""
    return {m: scores(m, mp) for m, mp in zip(MEASURE_ORDER, mappings)}


def codes(n):
    return [f"K{i:02d}" for i in range(n)]


# ─────────────────────────────────────
# rank_by_measure
# ─────────────────────────────────────

class TestRankByMeasure:
    def test_top_two(self):
        out = rank_by_measure(scores(Measure.DEGREE, {"AAA": 0.9, "BBB": 0.5, "CCC": 0.1}), 2)
        assert [(e.asset_code, e.level) for e in out] == [("AAA", 1), ("BBB", 2)]

    def test_tie_broken_by_code(self):
        out = rank_by_measure(scores(Measure.DEGREE, {"BBB": 0.5, "AAA": 0.5}), 1)
        assert [e.asset_code for e in out] == ["AAA"]

    def test_k_equals_n(self):
        out = rank_by_measure(scores(Measure.CLOSENESS, {"AAA": 0.1, "BBB": 0.3, "CCC": 0.2}), 3)
        assert [e.level for e in out] == [1, 2, 3]
        assert [e.asset_code for e in out] == ["BBB", "CCC", "AAA"]

    @pytest.mark.parametrize("k", [0, 4])
    def test_bad_k(self, k):
        with pytest.raises(BadK):
            rank_by_measure(scores(Measure.DEGREE, {"AAA": 1.0, "BBB": 0.5, "CCC": 0.1}), k)


# ─────────────────────────────────────
# importance_table
# ─────────────────────────────────────

class TestImportanceTable:
    def test_top_everywhere(self):
        top = {"HUB": 1.0, "AAA": 0.2, "BBB": 0.1}
        table = importance_table(tables(top, top, top, top), k=1)
        (row,) = table.rows
        assert (row.asset_code, row.frequency, row.levels_text) == ("HUB", 4, "1,1,1,1")

    def test_three_measures_keep_measure_order(self):
        n = 10
        base = {c: float(n - i) for i, c in enumerate(codes(n))}

        def place(level):
            # put XPF at `level` by giving it the score between ranks
            mp = dict(base)
            mp["XPF"] = n - level + 1.5
            return mp

        absent = dict(base, XPF=-1.0)
        table = importance_table(tables(place(4), place(8), absent, place(5)), k=8)
        row = table.row("XPF")
        assert row.frequency == 3
        assert row.levels_text == "4,8,5"

    def test_absent_asset_has_no_row(self):
        mp = {"AAA": 3.0, "BBB": 2.0, "CCC": 1.0}
        table = importance_table(tables(mp, mp, mp, mp), k=2)
        assert table.row("CCC") is None
        assert len(table) == 2

    def test_total_frequency_is_four_k(self):
        rng = np.random.default_rng(3)
        for n in (8, 12, 45):
            seq = [int(v) for v in rng.integers(0, n, n - 2)]
            tree = tree_from_pairs(n, prufer_to_pairs(seq, n))
            all_scores, _ = all_centralities(tree)
            table = importance_table(all_scores, k=8)
            assert table.total_frequency == 32
            assert table.k == 8

    def test_rows_ordered_by_frequency_then_best_level(self):
        mp1 = {"AAA": 3.0, "BBB": 2.0, "CCC": 1.0}
        mp2 = {"AAA": 1.0, "BBB": 2.0, "CCC": 3.0}
        table = importance_table(tables(mp1, mp1, mp1, mp2), k=1)
        assert [(r.asset_code, r.frequency) for r in table] == [("AAA", 3), ("CCC", 1)]

    def test_wrong_number_of_tables(self):
        mp = {"AAA": 1.0, "BBB": 0.5}
        partial = {m: scores(m, mp) for m in MEASURE_ORDER[:3]}
        with pytest.raises(MeasureMismatch):
            importance_table(partial, k=1)

    def test_mismatched_nodes(self):
        mp = {"AAA": 1.0, "BBB": 0.5}
        other = {"AAA": 1.0, "CCC": 0.5}
        with pytest.raises(MeasureMismatch):
            importance_table(tables(mp, mp, mp, other), k=1)

    def test_deterministic(self):
        mp = {c: float(i % 3) for i, c in enumerate(codes(9))}
        a = importance_table(tables(mp, mp, mp, mp), k=4)
        b = importance_table(tables(mp, mp, mp, mp), k=4)
        assert a == b


# ─────────────────────────────────────
# least_central
# ─────────────────────────────────────

def scripted_least(all_scores, m):
    """Rank-sum oracle: position N for the top score, 1 for the lowest."""
    n = len(all_scores[Measure.DEGREE])
    total = {}
    for measure in MEASURE_ORDER:
        ordered = sorted(all_scores[measure].items(), key=lambda kv: (-kv[1], kv[0]))
        for level, (code, _) in enumerate(ordered, start=1):
            total[code] = total.get(code, 0) + (n + 1 - level)
    return [c for c, _ in sorted(total.items(), key=lambda kv: (kv[1], kv[0]))][:m]


class TestLeastCentral:
    def test_lowest_everywhere(self):
        mp = {"AAA": 0.9, "BBB": 0.1, "CCC": 0.5}
        assert least_central(tables(mp, mp, mp, mp), m=1) == ["BBB"]

    def test_m_equals_n_worst_first(self):
        mp = {"AAA": 0.9, "BBB": 0.1, "CCC": 0.5}
        assert least_central(tables(mp, mp, mp, mp), m=3) == ["BBB", "CCC", "AAA"]

    def test_matches_oracle_on_random_trees(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(10, 46))
            seq = [int(v) for v in rng.integers(0, n, n - 2)]
            tree = tree_from_pairs(n, prufer_to_pairs(seq, n), codes(n))
            all_scores, _ = all_centralities(tree)
            assert least_central(all_scores, m=10) == scripted_least(all_scores, 10)

    def test_positions_sum(self):
        mp = {"AAA": 0.9, "BBB": 0.1, "CCC": 0.5}
        assert rank_positions(tables(mp, mp, mp, mp)) == {"AAA": 12, "BBB": 4, "CCC": 8}

    @pytest.mark.parametrize("m", [0, 4])
    def test_bad_m(self, m):
        mp = {"AAA": 0.9, "BBB": 0.1, "CCC": 0.5}
        with pytest.raises(BadM):
            least_central(tables(mp, mp, mp, mp), m=m)


# ─────────────────────────────────────
# Properties
# ─────────────────────────────────────

@st.composite
def score_sets(draw):
    n = draw(st.integers(min_value=3, max_value=10))
    values = st.integers(min_value=0, max_value=1000).map(lambda v: v / 1000)
    return [draw(st.lists(values, min_size=n, max_size=n)) for _ in MEASURE_ORDER]


def _from_lists(lists):
    n = len(lists[0])
    return tables(*({c: v for c, v in zip(codes(n), vals)} for vals in lists))


class TestProperties:
    @settings(max_examples=100, deadline=None)
    @given(score_sets(), st.sampled_from([0.25, 0.5, 2.0, 8.0]))
    def test_scale_invariance(self, lists, factor):
        n = len(lists[0])
        k = min(3, n)
        scaled = [[v * factor for v in vals] for vals in lists]
        assert importance_table(_from_lists(lists), k) == importance_table(_from_lists(scaled), k)
        assert least_central(_from_lists(lists), n) == least_central(_from_lists(scaled), n)

    @settings(max_examples=100, deadline=None)
    @given(score_sets(), st.integers(min_value=0, max_value=3), st.data())
    def test_raising_a_score_never_lowers_frequency(self, lists, which, data):
        n = len(lists[0])
        k = min(3, n)
        node = data.draw(st.integers(min_value=0, max_value=n - 1))
        code = codes(n)[node]
        before = importance_table(_from_lists(lists), k).row(code)

        raised = [list(vals) for vals in lists]
        raised[which][node] += 1.0
        after = importance_table(_from_lists(raised), k).row(code)

        freq_before = before.frequency if before else 0
        freq_after = after.frequency if after else 0
        assert freq_after >= freq_before
