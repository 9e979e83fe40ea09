"""Summary statistics over cell vectors.

Shared rules: any NA in the input makes the result NA (there is no na.rm);
an empty input gives 0 for sum and NA for everything else.  sd uses the
sample (n-1) denominator and is NA for fewer than two values.  quantile uses
linear interpolation at rank h = (n-1)*p + 1 over the sorted values.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..errors import ProbsOutOfRange, Span
from ..model import NA, Cell, is_na


def _clean(cells: Sequence[Cell]) -> Optional[list]:
    """The numeric values, or None if any cell is NA."""
    values = []
    for v in cells:
        if is_na(v):
            return None
        values.append(v)
    return values


def stat_min(cells: Sequence[Cell]) -> Cell:
    values = _clean(cells)
    if values is None or not values:
        return NA
    return min(values)


def stat_max(cells: Sequence[Cell]) -> Cell:
    values = _clean(cells)
    if values is None or not values:
        return NA
    return max(values)


def stat_sum(cells: Sequence[Cell]) -> Cell:
    values = _clean(cells)
    if values is None:
        return NA
    return sum(values)


def stat_mean(cells: Sequence[Cell]) -> Cell:
    values = _clean(cells)
    if values is None or not values:
        return NA
    return sum(values) / len(values)


def stat_sd(cells: Sequence[Cell]) -> Cell:
    values = _clean(cells)
    if values is None or len(values) < 2:
        return NA
    m = sum(values) / len(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / (len(values) - 1))


def stat_quantile(cells: Sequence[Cell], probs: float,
                  span: Optional[Span] = None) -> Cell:
    if is_na(probs) or not 0 <= probs <= 1:
        raise ProbsOutOfRange(f"probs must be between 0 and 1, got {probs!r}",
                              span=span, code="probs-out-of-range")
    values = _clean(cells)
    if values is None or not values:
        return NA
    values.sort()
    h = (len(values) - 1) * probs + 1
    lo = int(math.floor(h))
    if lo >= len(values):
        return values[-1]
    frac = h - lo
    if frac == 0:
        return values[lo - 1]
    return values[lo - 1] + frac * (values[lo] - values[lo - 1])


SUMMARY_FUNCTIONS = {
    "min": stat_min,
    "max": stat_max,
    "mean": stat_mean,
    "sd": stat_sd,
    "sum": stat_sum,
    "quantile": stat_quantile,
}
