"""Closed-form one-sided relaxed CHSH bound, special cases and inverse solvers.

The bound depends on Bob's indeterminism ``i2``, Alice-to-Bob signaling
``s12`` and Bob's measurement dependence ``m2``. Writing ``sigma`` for the
largest shift Bob's marginals can actually make, the bound is

    B = 4 - (1 - sigma)(2 - m2) = 2 + 2 sigma + m2 (1 - sigma)

where ``sigma = s12`` once shifts can cross the gap between [0, i2] and
[1 - i2, 1] (``s12 >= 1 - 2 i2``), and ``sigma = min(i2, s12)`` otherwise.
For ``s12 >= i2`` the sub-gap value is 4 - (1 - i2)(2 - m2). Complete
measurement dependence (``m2 = 2``) always gives 4.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from pathlib import Path

from relaxbell.errors import DomainError, ParameterError

FEASIBILITY_TOL = 1e-12
# absorbs rounding in s12 = 1 - 2 i2 so the boundary lands in the cross-gap regime
REGIME_TOL = 1e-12
_RANGE_TOL = 1e-12

SINGLET_VIOLATION = 2.0 * math.sqrt(2.0) - 2.0


class Regime(str, enum.Enum):
    SUB_GAP = "SubGap"
    CROSS_GAP = "CrossGap"
    SATURATED = "Saturated"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BoundResult:
    value: float
    regime: Regime


def check_range(name: str, value: float, lo: float, hi: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < lo - _RANGE_TOL or value > hi + _RANGE_TOL:
        raise ParameterError(f"{name} = {value!r} outside [{lo:g}, {hi:g}]")
    return min(max(value, lo), hi)


def effective_shift(i2: float, s12: float) -> tuple[Regime, float]:
    if s12 >= 1.0 - 2.0 * i2 - REGIME_TOL:
        return Regime.CROSS_GAP, s12
    return Regime.SUB_GAP, min(i2, s12)


def chsh_bound(i2: float, s12: float, m2: float) -> BoundResult:
    """Largest CHSH value reachable with the given one-sided relaxation degrees."""
    i2 = check_range("i2", i2, 0.0, 0.5)
    s12 = check_range("s12", s12, 0.0, 1.0)
    m2 = check_range("m2", m2, 0.0, 2.0)
    if m2 >= 2.0:
        return BoundResult(4.0, Regime.SATURATED)
    regime, sigma = effective_shift(i2, s12)
    return BoundResult(min(4.0, 2.0 + 2.0 * sigma + m2 * (1.0 - sigma)), regime)


def mi_bound(i2: float, s12: float) -> float:
    """Measurement-independent bound: 2 + 2 i2 (sub-gap, s12 >= i2) or 2 + 2 s12 (cross-gap)."""
    return chsh_bound(i2, s12, 0.0).value


def ld_bound(m2: float) -> float:
    """Bound for Bob deterministic and non-signaling: min(2 + m2, 4)."""
    return chsh_bound(0.0, 0.0, m2).value


def feasible(i2: float, s12: float, m2: float, v: float) -> bool:
    """Whether a CHSH value of ``2 + v`` is reachable."""
    v = check_range("v", v, 0.0, 2.0)
    return chsh_bound(i2, s12, m2).value >= 2.0 + v - FEASIBILITY_TOL


def min_signaling_for_violation(v: float, m2: float) -> float:
    """Smallest s12 with 2 s12 + m2 (1 - s12) >= v.

    Pair the result with indeterminism of at least (1 - s12)/2
    (:func:`implied_indeterminism`) so the shift can cross the gap.
    """
    v = check_range("v", v, 0.0, 2.0)
    m2 = check_range("m2", m2, 0.0, 2.0)
    if m2 >= 2.0:
        raise ParameterError("m2 = 2 already yields the algebraic maximum; no signaling requirement exists")
    return max(0.0, (v - m2) / (2.0 - m2))


def implied_indeterminism(s12: float) -> float:
    """Indeterminism (1 - s12)/2 that puts a shift of ``s12`` on the regime boundary."""
    s12 = check_range("s12", s12, 0.0, 1.0)
    return (1.0 - s12) / 2.0


def min_md_for_violation(v: float, i2: float, s12: float) -> float:
    """Smallest m2 with 2 sigma + m2 (1 - sigma) >= v for the shift sigma allowed by (i2, s12)."""
    v = check_range("v", v, 0.0, 2.0)
    i2 = check_range("i2", i2, 0.0, 0.5)
    s12 = check_range("s12", s12, 0.0, 1.0)
    _, sigma = effective_shift(i2, s12)
    if sigma >= 1.0:
        raise ParameterError("s12 = 1 already yields the algebraic maximum; no measurement-dependence requirement")
    return max(0.0, (v - 2.0 * sigma) / (1.0 - sigma))


def min_indeterminism_for_violation(v: float) -> tuple[float, float]:
    """(i2, s12) needed for violation ``v`` without measurement dependence, sub-gap regime only."""
    v = check_range("v", v, 0.0, 2.0)
    if v >= 2.0 / 3.0:
        raise DomainError(
            f"v = {v!r} >= 2/3 cannot be reached below the gap; use min_signaling_for_violation"
        )
    return v / 2.0, v / 2.0


class Figure(enum.IntEnum):
    FIG1 = 1
    FIG2 = 2
    FIG3 = 3
    FIG4 = 4


_HEADERS = {
    Figure.FIG1: ("i2", "m2", "v"),
    Figure.FIG2: ("s12", "m2", "v"),
    Figure.FIG3: ("m2", "v"),
    Figure.FIG4: ("s12", "m2", "v"),
}


@dataclass(frozen=True)
class TradeoffGrid:
    figure: Figure
    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([f"{x:.12g}" for x in row])
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


def tradeoff_grid(figure: int | Figure, resolution: int) -> TradeoffGrid:
    """Tabulate violation surfaces, rows in row-major order of the listed axes.

    Fig 1: (i2, m2) with s12 = i2 and i2 < 1/3 (below the gap).
    Fig 2: (s12, m2) on the regime boundary i2 = (1 - s12)/2.
    Fig 3: m2 alone, i2 = s12 = 0.
    Fig 4: (s12, m2) at i2 = 1/3, s12 in [0, 1/3].
    """
    try:
        figure = Figure(int(figure))
    except ValueError as exc:
        raise ParameterError(f"unknown figure {figure!r}; expected 1-4") from exc
    if int(resolution) != resolution or resolution < 2:
        raise ParameterError(f"resolution must be an integer >= 2, got {resolution!r}")
    r = int(resolution)
    m2_axis = [2 * j / (r - 1) for j in range(r)]
    rows: list[tuple[float, ...]] = []
    if figure is Figure.FIG1:
        for k in range(r):
            i2 = k / (3 * r)
            rows.extend((i2, m2, chsh_bound(i2, i2, m2).value - 2.0) for m2 in m2_axis)
    elif figure is Figure.FIG2:
        for k in range(r):
            s12 = k / (r - 1)
            i2 = implied_indeterminism(s12)
            rows.extend((s12, m2, chsh_bound(i2, s12, m2).value - 2.0) for m2 in m2_axis)
    elif figure is Figure.FIG3:
        rows.extend((m2, ld_bound(m2) - 2.0) for m2 in m2_axis)
    else:
        for k in range(r):
            s12 = k / (3 * (r - 1))
            rows.extend((s12, m2, chsh_bound(1.0 / 3.0, s12, m2).value - 2.0) for m2 in m2_axis)
    return TradeoffGrid(figure, _HEADERS[figure], tuple(rows))
