"""rvnet.ingest

Parse, align and validate daily (bid, ask) quotes into a PricePanel.

Input format is long CSV with the header ``date,code,bid,ask``:

    date,code,bid,ask
    2008-05-05,DZD,63.10,63.30
    2008-05-05,ARS,3.1500,3.1700

Dates are ISO ``YYYY-MM-DD``; prices use ``.`` as decimal separator; LF and
CRLF line endings are both accepted.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
import math
import re
from pathlib import Path
from typing import Iterable, List, Set, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from .errors import (
    ConstantSeries,
    DuplicateKey,
    InsufficientOverlap,
    LeadingGap,
    MalformedRow,
    NonPositivePrice,
    PanelInvariantViolation,
)
from .types import MissingPolicy, PricePanel, PriceRecord

logger = logging.getLogger("rvnet")

HEADER = ("date", "code", "bid", "ask")
MIN_DAYS = 3

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_CODE_RE = re.compile(r"^[A-Z][A-Z0-9]{2,7}$")


# ================================
# Parsing
# ================================

def _parse_date(text: str, line: int) -> dt.date:
    if not _DATE_RE.match(text):
        raise MalformedRow(f"bad date {text!r} (expected YYYY-MM-DD)", line=line)
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise MalformedRow(f"bad date {text!r}", line=line) from None


def _parse_price(text: str, field_name: str, code: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(f"non-numeric {field_name} {text!r} for {code}", line=line) from None
    if not math.isfinite(value):
        raise MalformedRow(f"non-finite {field_name} {text!r} for {code}", line=line)
    if value <= 0.0:
        raise NonPositivePrice(
            f"{field_name} must be > 0 for {code}, got {text}", asset_code=code, line=line,
        )
    return value


def parse_price_records(stream: Union[str, TextIO]) -> List[PriceRecord]:
    """Parse CSV text (or an open text stream) into PriceRecords in file order."""
    if isinstance(stream, str):
        stream = io.StringIO(stream, newline="")
    reader = csv.reader(stream)

    header = next(reader, None)
    if header is None:
        raise MalformedRow("empty input (missing header)", line=1)
    if header and header[0].startswith("\ufeff"):
        header[0] = header[0][1:]
    if tuple(h.strip() for h in header) != HEADER:
        raise MalformedRow(f"expected header {','.join(HEADER)!r}, got {','.join(header)!r}", line=1)

    records: List[PriceRecord] = []
    seen: Set[Tuple[dt.date, str]] = set()
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise MalformedRow(f"expected 4 fields, got {len(row)}", line=line)
        date_text, code, bid_text, ask_text = (cell.strip() for cell in row)

        date = _parse_date(date_text, line)
        if not _CODE_RE.match(code):
            raise MalformedRow(f"bad asset code {code!r}", line=line)
        bid = _parse_price(bid_text, "bid", code, line)
        ask = _parse_price(ask_text, "ask", code, line)

        key = (date, code)
        if key in seen:
            raise DuplicateKey(f"duplicate row for ({date.isoformat()}, {code})", line=line)
        seen.add(key)
        records.append(PriceRecord(date=date, asset_code=code, bid=bid, ask=ask))

    logger.debug("parsed %d price records", len(records))
    return records


# ================================
# Alignment
# ================================

def align_panel(
    records: Iterable[PriceRecord],
    policy: MissingPolicy = MissingPolicy.DROP_DATE,
) -> PricePanel:
    """Align records onto a common date grid, assets sorted by code.

    DROP_DATE keeps only the dates on which every asset quotes. FORWARD_FILL
    keeps the union of dates and carries each asset's last quote forward; it
    never fills a leading gap.
    """
    policy = MissingPolicy(policy)
    records = list(records)
    frame = pd.DataFrame(
        {
            "date": [r.date for r in records],
            "code": [r.asset_code for r in records],
            "bid": [r.bid for r in records],
            "ask": [r.ask for r in records],
        }
    )

    codes = sorted(set(frame["code"]))
    if len(codes) < 2:
        raise InsufficientOverlap(f"need at least 2 assets, got {len(codes)}")

    dupes = frame.duplicated(subset=["date", "code"])
    if dupes.any():
        first = frame[dupes].iloc[0]
        raise DuplicateKey(f"duplicate row for ({first['date'].isoformat()}, {first['code']})")

    bid = frame.pivot(index="date", columns="code", values="bid").sort_index()[codes]
    ask = frame.pivot(index="date", columns="code", values="ask").sort_index()[codes]

    if policy is MissingPolicy.DROP_DATE:
        complete = bid.notna().all(axis=1) & ask.notna().all(axis=1)
        bid, ask = bid[complete], ask[complete]
    else:
        seeded = bid.iloc[0].notna()
        if not seeded.all():
            missing = [code for code, ok in seeded.items() if not ok]
            raise LeadingGap(missing[0], bid.index[0].isoformat())
        bid, ask = bid.ffill(), ask.ffill()

    if len(bid.index) < MIN_DAYS:
        raise InsufficientOverlap(
            f"only {len(bid.index)} aligned dates under policy {policy.value!r}; need >= {MIN_DAYS}"
        )

    values = np.stack([bid.to_numpy(dtype=float).T, ask.to_numpy(dtype=float).T], axis=-1)
    return PricePanel(dates=tuple(bid.index), assets=tuple(codes), values=values)


# ================================
# Validation
# ================================

def validate_panel(panel: PricePanel) -> PricePanel:
    """Return `panel` unchanged if every PricePanel invariant holds."""
    values = panel.values
    n, t = panel.n_assets, panel.n_days

    if values.ndim != 3 or values.shape != (n, t, 2):
        raise PanelInvariantViolation(
            f"values shape {values.shape} does not match ({n}, {t}, 2)"
        )
    if t < MIN_DAYS:
        raise PanelInvariantViolation(f"panel has {t} dates; need >= {MIN_DAYS}")
    if n < 1 or any(not code for code in panel.assets):
        raise PanelInvariantViolation("panel has an empty asset code")
    if len(set(panel.assets)) != n:
        raise PanelInvariantViolation("asset codes are not unique")
    if any(b <= a for a, b in zip(panel.dates, panel.dates[1:])):
        raise PanelInvariantViolation("dates are not strictly increasing")
    if not np.all(np.isfinite(values)):
        raise PanelInvariantViolation("panel has missing or non-finite cells")
    if not np.all(values > 0.0):
        raise PanelInvariantViolation("panel has non-positive prices")

    for i, code in enumerate(panel.assets):
        for col, name in ((0, "bid"), (1, "ask")):
            series = values[i, :, col]
            if np.all(series == series[0]):
                raise ConstantSeries(code, name)
    return panel


# ================================
# Serialization / file helpers
# ================================

def panel_to_csv(panel: PricePanel) -> str:
    """Write the panel back in the input CSV format (date-major, codes ascending)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for t, date in enumerate(panel.dates):
        for i, code in enumerate(panel.assets):
            bid, ask = panel.values[i, t]
            writer.writerow([date.isoformat(), code, repr(float(bid)), repr(float(ask))])
    return buf.getvalue()


def read_panel(path: Union[str, Path], policy: MissingPolicy = MissingPolicy.DROP_DATE) -> PricePanel:
    """Parse, align and validate a CSV file."""
    with open(path, encoding="utf-8", newline="") as f:
        records = parse_price_records(f)
    return validate_panel(align_panel(records, policy))
