"""rvnet.fixture

Synthetic (bid, ask) panels with a planted block structure.

Bid log returns are the sum of a block factor shared by every asset of the
block, a market factor shared by all assets and idiosyncratic noise. Blocks
are contiguous runs of asset codes, so the MST of the default fixture (45
assets, 3 blocks of 15) groups each block and crosses between blocks only a
handful of times. Ask = bid * (1 + spread) with a small positive per-day
spread. Output is fully determined by the seed.

Usage via CLI:
    rvnet fixture --seed 1 --assets 45 --days 1250 --out fixture.csv
"""

from __future__ import annotations

import csv
import io
from typing import List

import numpy as np
import pandas as pd

from .config import FixtureConfig
from .ingest import HEADER


def fixture_codes(n_assets: int) -> List[str]:
    """X01, X02, ... zero-padded so code order equals generation order."""
    width = max(2, len(str(n_assets)))
    return [f"X{i:0{width}d}" for i in range(1, n_assets + 1)]


def block_assignment(n_assets: int, n_blocks: int) -> np.ndarray:
    """Block index of every asset; contiguous, sizes differ by at most one."""
    return np.arange(n_assets) * n_blocks // n_assets


def simulate_prices(cfg: FixtureConfig) -> np.ndarray:
    """Array of shape (n_assets, n_days, 2) with (bid, ask) prices."""
    rng = np.random.default_rng(cfg.seed)
    n, steps = cfg.n_assets, cfg.n_days - 1

    market = rng.standard_normal(steps) * cfg.market_vol
    blocks = rng.standard_normal((cfg.n_blocks, steps)) * cfg.block_vol
    idio = rng.standard_normal((n, steps)) * cfg.idio_vol
    log_ret = blocks[block_assignment(n, cfg.n_blocks)] + market + idio

    start = np.exp(rng.uniform(np.log(0.5), np.log(200.0), n))
    log_bid = np.log(start)[:, None] + np.concatenate(
        [np.zeros((n, 1)), np.cumsum(log_ret, axis=1)], axis=1
    )
    bid = np.exp(log_bid)

    base_spread = rng.uniform(2e-4, 2e-3, n)
    spread = base_spread[:, None] * np.exp(0.1 * rng.standard_normal((n, cfg.n_days)))
    ask = bid * (1.0 + spread)
    return np.stack([bid, ask], axis=-1)


def generate_fixture(
    seed: int = 1,
    n_assets: int = 45,
    n_days: int = 1250,
    *,
    n_blocks: int = 3,
) -> str:
    """CSV text in the ingest format for a seeded synthetic panel."""
    cfg = FixtureConfig(
        seed=seed, n_assets=n_assets, n_days=n_days, n_blocks=min(n_blocks, max(n_assets, 1)),
    )
    prices = simulate_prices(cfg)
    codes = fixture_codes(cfg.n_assets)
    dates = pd.bdate_range(start=cfg.start, periods=cfg.n_days)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for t, date in enumerate(dates):
        day = date.date().isoformat()
        for i, code in enumerate(codes):
            bid, ask = prices[i, t]
            writer.writerow([day, code, f"{bid:.10g}", f"{ask:.10g}"])
    return buf.getvalue()
