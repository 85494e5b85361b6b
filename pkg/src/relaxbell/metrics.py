"""Relaxation degrees of a hidden-variable model.

All suprema over lambda range over every label of the model, including labels
that carry zero weight in some context.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import combinations

from relaxbell.hvmodel import HiddenVariableModel

# context indices: 0 = (x,y), 1 = (x,y'), 2 = (x',y), 3 = (x',y')
_ALICE_CHANGES = ((0, 2), (1, 3))  # same y, x -> x'
_BOB_CHANGES = ((0, 1), (2, 3))  # same x, y -> y'


@dataclass(frozen=True)
class RelaxationProfile:
    i1: float
    i2: float
    i: float
    s12: float
    s21: float
    s: float
    m1: float
    m2: float
    m: float
    f: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def signaling_degrees(model: HiddenVariableModel) -> tuple[float, float]:
    """(s12, s21): largest per-lambda shift of Bob's (Alice's) `+` marginal under the other party's setting change.

    With two outcomes the `-` marginal shifts by the same amount, so only `+` is scanned.
    """
    d = model.decompositions
    s12 = max(abs(d[a][j].n - d[b][j].n) for a, b in _ALICE_CHANGES for j in range(model.size))
    s21 = max(abs(d[a][j].m - d[b][j].m) for a, b in _BOB_CHANGES for j in range(model.size))
    return s12, s21


def indeterminism_degrees(model: HiddenVariableModel) -> tuple[float, float]:
    """(i1, i2): largest distance of any per-lambda marginal from {0, 1}."""
    flat = [dec for row in model.decompositions for dec in row]
    i1 = max(min(dec.m, 1.0 - dec.m) for dec in flat)
    i2 = max(min(dec.n, 1.0 - dec.n) for dec in flat)
    return max(i1, 0.0), max(i2, 0.0)


def _l1(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    return math.fsum(abs(a - b) for a, b in zip(u, v))


def measurement_dependence_degrees(model: HiddenVariableModel) -> tuple[float, float, float]:
    """(m1, m2, m) as L1 distances between context-conditioned lambda distributions.

    The global degree ``m`` is taken over all six context pairs, so it bounds
    both local degrees.
    """
    w = model.weights
    m1 = max(_l1(w[a], w[b]) for a, b in _ALICE_CHANGES)
    m2 = max(_l1(w[a], w[b]) for a, b in _BOB_CHANGES)
    m = max(_l1(w[a], w[b]) for a, b in combinations(range(4), 2))
    return m1, m2, m


def profile(model: HiddenVariableModel) -> RelaxationProfile:
    i1, i2 = indeterminism_degrees(model)
    s12, s21 = signaling_degrees(model)
    m1, m2, m = measurement_dependence_degrees(model)
    return RelaxationProfile(
        i1=i1, i2=i2, i=max(i1, i2), s12=s12, s21=s21, s=max(s12, s21), m1=m1, m2=m2, m=m, f=1.0 - m / 2.0
    )
