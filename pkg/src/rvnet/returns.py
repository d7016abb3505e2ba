"""rvnet.returns

Log returns: r[t] = ln p[t+1] - ln p[t], in double precision.
"""

from __future__ import annotations

from typing import List, Sequence, Union

import numpy as np

from .errors import NonPositivePrice, SeriesTooShort
from .types import PricePanel, Representation, ReturnMatrix

ArrayLike = Union[Sequence[float], np.ndarray]


def log_returns(prices: ArrayLike) -> np.ndarray:
    """Successive differences of the natural log of a positive price series."""
    p = np.asarray(prices, dtype=np.float64)
    if p.ndim != 1:
        raise SeriesTooShort(f"expected a 1-D series, got shape {p.shape}")
    if p.size < 2:
        raise SeriesTooShort(f"need at least 2 prices, got {p.size}")
    if not np.all(p > 0.0):
        raise NonPositivePrice("log returns need strictly positive prices", stage="returns")
    return np.diff(np.log(p))


def panel_returns(panel: PricePanel) -> List[ReturnMatrix]:
    """One (T-1) x 2 matrix per asset: column 0 bid returns, column 1 ask returns."""
    out: List[ReturnMatrix] = []
    for i, code in enumerate(panel.assets):
        rows = np.column_stack([log_returns(panel.bid(i)), log_returns(panel.ask(i))])
        out.append(ReturnMatrix(asset_code=code, rows=rows))
    return out


def representation_returns(
    panel: PricePanel,
    representation: Representation = Representation.BIDASK,
) -> List[ReturnMatrix]:
    """Returns for the chosen representation.

    BIDASK is the bivariate form. BID, ASK and MID give one-column matrices,
    on which the RV coefficient reduces to squared Pearson correlation.
    """
    representation = Representation(representation)
    if representation is Representation.BIDASK:
        return panel_returns(panel)

    out: List[ReturnMatrix] = []
    for i, code in enumerate(panel.assets):
        if representation is Representation.BID:
            series = panel.bid(i)
        elif representation is Representation.ASK:
            series = panel.ask(i)
        else:
            series = (panel.bid(i) + panel.ask(i)) / 2.0
        out.append(ReturnMatrix(asset_code=code, rows=log_returns(series).reshape(-1, 1)))
    return out
