"""Value-to-area legend: nice numbers, value formatting, key sizing.

The legend is a square of known pixel area labeled with the value it
represents, so readers can convert cartogram areas back into numbers. Keys
are anchored to a 30x30 px square and then snapped to the nearest nice
number in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError

ANCHOR_SIDE_PX = 30.0  # the key is "approximately 30x30 pixels"
LEGEND_GRAY = "#707070"

_SCALES = ((1e12, "trillion"), (1e9, "billion"), (1e6, "million"))


@dataclass(frozen=True)
class LegendSpec:
    value: float  # a nice number: {1,2,5} x 10^k
    unit: str
    side_px: float
    label: str
    color: str = LEGEND_GRAY


def nice_number(x: float) -> float:
    """The member of {1,2,5}*10^k closest to x in log space.

    Ties break toward the smaller candidate.
    """
    if not (x > 0 and math.isfinite(x)):
        raise InputError(f"nice_number needs a positive finite value, got {x!r}")
    k = math.floor(math.log10(x))
    logx = math.log10(x)
    best = None
    best_key = None
    for e in (k - 1, k, k + 1):
        for m in (1.0, 2.0, 5.0):
            candidate = m * 10.0**e
            if candidate <= 0 or math.isinf(candidate):
                continue
            key = (abs(math.log10(candidate) - logx), candidate)
            if best_key is None or key < best_key:
                best_key = key
                best = candidate
    return best


def format_value(value: float, unit: str = "") -> str:
    """Human-readable value string: "384,300 EUR"-style below a million,
    "375.4 billion"-style above (4 significant digits)."""
    if not (value >= 0 and math.isfinite(value)):
        raise InputError(f"cannot format {value!r}")
    if value < 1e6:
        if value == int(value):
            s = f"{int(value):,}"
        else:
            s = f"{value:,}"
    else:
        for scale, word in _SCALES:
            if value >= scale:
                mantissa = value / scale
                break
        if mantissa >= 10000:
            s = f"{mantissa:,.0f} {word}"
        else:
            s = f"{mantissa:.4g} {word}"
    return f"{s} {unit}" if unit else s


def compute_legend(total_value: float, unit: str, rendered_area_px: float) -> LegendSpec:
    """Size the legend key for a rendering.

    `rendered_area_px` is the total region area in square pixels on the
    canvas the legend accompanies. The key value is the nice number closest
    to what a 30x30 px square would carry; the square is then sized so that
    side^2 * (total_value / rendered_area_px) equals the value exactly.
    """
    if not (total_value > 0 and math.isfinite(total_value)):
        raise InputError(f"total value must be positive, got {total_value!r}")
    if not (rendered_area_px > 0 and math.isfinite(rendered_area_px)):
        raise InputError(f"rendered area must be positive, got {rendered_area_px!r}")
    value = nice_number(ANCHOR_SIDE_PX**2 * total_value / rendered_area_px)
    side = math.sqrt(value * rendered_area_px / total_value)
    return LegendSpec(
        value=value,
        unit=unit,
        side_px=side,
        label="represents " + format_value(value, unit),
    )
