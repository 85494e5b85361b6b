"""Brute-force check of the closed-form bound, independent of its derivation.

The search enumerates one-sided models directly: Alice deterministic and
non-signaling, Bob's `+` marginals on a candidate set inside
[0, i2] U [1 - i2, 1] subject to the per-lambda signaling constraints, and
measurement dependence carried by a two-lambda pattern in which lambda_1 is
weighted ``p`` only under Bob's primed setting.

Enumeration order (first maximizer wins): ``p`` ascending; for each lambda,
Alice cases (m1, m3) in (0,0), (0,1), (1,0), (1,1); Bob marginal pairs
(n1, n3) and (n2, n4) in row-major order of the sorted candidate set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from relaxbell.bounds import chsh_bound, check_range
from relaxbell.errors import ParameterError
from relaxbell.hvmodel import CHSH_SIGNS, HiddenVariableModel, LocalDecomposition, correlator

SOUNDNESS_TOL = 1e-9
_SHIFT_TOL = 1e-12
_ALICE_CASES = tuple(product((0, 1), repeat=2))
_UPPER = (True, True, True, False)


def bob_candidates(i2: float, s12: float, resolution: int) -> np.ndarray:
    """Sorted candidate values for a Bob marginal.

    A uniform grid of ``resolution`` steps on each allowed subinterval plus
    every endpoint shifted by +-s12 that stays allowed. The shifted endpoints
    are the remaining vertices of the per-pair feasible polygons, so linear
    objectives attain their maxima on this set.
    """
    lower = [i2 * k / resolution for k in range(resolution + 1)]
    values = set(lower) | {1.0 - x for x in lower}
    for e in (0.0, i2, 1.0 - i2, 1.0):
        for x in (e + s12, e - s12):
            if 0.0 <= x <= i2 or 1.0 - i2 <= x <= 1.0:
                values.add(x)
    return np.array(sorted(values))


def _shift_mask(cand: np.ndarray, s12: float):
    diff = np.abs(cand[:, None] - cand[None, :])
    allowed = diff <= s12 + _SHIFT_TOL
    return allowed


def _best_for_lambda(weights, cand: np.ndarray, allowed: np.ndarray):
    """Best weighted contribution of one lambda; returns (value, alice case, (n1, n2, n3, n4))."""
    w0, w1, w2, w3 = weights
    best = (-math.inf, None, None)
    for a1, a3 in _ALICE_CASES:
        # (n1, n3): contexts (x,y) and (x',y), both plus terms
        t13 = w0 * (1.0 - 2.0 * np.abs(a1 - cand))[:, None] + w2 * (1.0 - 2.0 * np.abs(a3 - cand))[None, :]
        # (n2, n4): (x,y') plus term, (x',y') minus term at its lowest correlator
        t24 = w1 * (1.0 - 2.0 * np.abs(a1 - cand))[:, None] + w3 * (1.0 - 2.0 * np.abs(a3 + cand - 1.0))[None, :]
        t13 = np.where(allowed, t13, -np.inf)
        t24 = np.where(allowed, t24, -np.inf)
        k13 = int(np.argmax(t13))
        k24 = int(np.argmax(t24))
        value = float(t13.flat[k13] + t24.flat[k24])
        if value > best[0]:
            i1, i3 = np.unravel_index(k13, t13.shape)
            i2_, i4 = np.unravel_index(k24, t24.shape)
            best = (value, (a1, a3), (float(cand[i1]), float(cand[i2_]), float(cand[i3]), float(cand[i4])))
    return best


def lambda_terms(weights, decomps) -> tuple[float, float, float, float]:
    """(E, J_unweighted, J_weighted, T) for one lambda.

    E is the unweighted CHSH combination, J sums |m - n| over the plus
    contexts and |m + n - 1| over (x',y'), and T is the weighted CHSH
    contribution.
    """
    corr = [correlator(d) for d in decomps]
    dist = [abs(d.m - d.n) for d in decomps[:3]] + [abs(decomps[3].m + decomps[3].n - 1.0)]
    e = math.fsum(s * c for s, c in zip(CHSH_SIGNS, corr))
    t = math.fsum(s * w * c for s, w, c in zip(CHSH_SIGNS, weights, corr))
    return e, math.fsum(dist), math.fsum(w * d for w, d in zip(weights, dist)), t


@dataclass(frozen=True)
class SearchReport:
    best_chsh: float
    argmax_model: HiddenVariableModel
    per_lambda_e: tuple[float, ...]
    per_lambda_j: tuple[float, ...]
    per_lambda_t: tuple[float, ...]
    t_total: float
    resolution: int
    p: float

    def to_dict(self) -> dict:
        return {
            "best_chsh": self.best_chsh,
            "t_total": self.t_total,
            "p": self.p,
            "resolution": self.resolution,
            "per_lambda_e": list(self.per_lambda_e),
            "per_lambda_j": list(self.per_lambda_j),
            "per_lambda_t": list(self.per_lambda_t),
            "argmax_model": self.argmax_model.to_dict(),
        }


def _model_from(p: float, picks) -> HiddenVariableModel:
    columns = []
    for (a1, a3), ns in picks:
        ms = (float(a1), float(a1), float(a3), float(a3))
        columns.append(tuple(LocalDecomposition.extremal(m, n, up) for m, n, up in zip(ms, ns, _UPPER)))
    if p == 0.0:
        return HiddenVariableModel(("l2",), ((1.0,),) * 4, tuple((d,) for d in columns[1]))
    unprimed, primed = (0.0, 1.0), (p, 1.0 - p)
    return HiddenVariableModel(
        ("l1", "l2"), (unprimed, primed, unprimed, primed), tuple(zip(columns[0], columns[1]))
    )


def max_chsh_search(i2: float, s12: float, m2: float, resolution: int) -> SearchReport:
    """Largest CHSH value over the enumerated one-sided models with the given degrees."""
    i2 = check_range("i2", i2, 0.0, 0.5)
    s12 = check_range("s12", s12, 0.0, 1.0)
    m2 = check_range("m2", m2, 0.0, 2.0)
    if int(resolution) != resolution or resolution < 4:
        raise ParameterError(f"resolution must be an integer >= 4, got {resolution!r}")
    r = int(resolution)
    cand = bob_candidates(i2, s12, r)
    allowed = _shift_mask(cand, s12)
    p_grid = sorted({(m2 / 2.0) * k / r for k in range(r + 1)})

    best_total, best_p, best_picks = -math.inf, 0.0, None
    for p in p_grid:
        lam1 = _best_for_lambda((0.0, p, 0.0, p), cand, allowed)
        lam2 = _best_for_lambda((1.0, 1.0 - p, 1.0, 1.0 - p), cand, allowed)
        total = lam1[0] + lam2[0]
        if total > best_total:
            best_total, best_p, best_picks = total, p, ((lam1[1], lam1[2]), (lam2[1], lam2[2]))

    model = _model_from(best_p, best_picks)
    terms = [
        lambda_terms([row[j] for row in model.weights], [row[j] for row in model.decompositions])
        for j in range(model.size)
    ]
    return SearchReport(
        best_chsh=best_total,
        argmax_model=model,
        per_lambda_e=tuple(t[0] for t in terms),
        per_lambda_j=tuple(t[2] for t in terms),
        per_lambda_t=tuple(t[3] for t in terms),
        t_total=math.fsum(t[3] for t in terms),
        resolution=r,
        p=best_p,
    )


@dataclass(frozen=True)
class TightnessReport:
    bound: float
    searched: float
    gap: float
    sound: bool
    tight: bool

    def to_dict(self) -> dict:
        return {"bound": self.bound, "searched": self.searched, "gap": self.gap, "sound": self.sound, "tight": self.tight}


def check_tightness(i2: float, s12: float, m2: float, resolution: int) -> TightnessReport:
    """Compare the closed form with the search; tight means a gap of at most 4/resolution."""
    bound = chsh_bound(i2, s12, m2).value
    searched = max_chsh_search(i2, s12, m2, resolution).best_chsh
    gap = bound - searched
    return TightnessReport(bound, searched, gap, searched <= bound + SOUNDNESS_TOL, gap <= 4.0 / resolution)


def _pick(rng: np.random.Generator, intervals: list[tuple[float, float]]) -> float:
    intervals = [(lo, hi) for lo, hi in intervals if lo <= hi]
    lengths = np.array([hi - lo for lo, hi in intervals])
    if lengths.sum() > 0:
        lo, hi = intervals[rng.choice(len(intervals), p=lengths / lengths.sum())]
    else:
        lo, hi = intervals[rng.integers(len(intervals))]
    if rng.random() < 0.25:
        return float(lo if rng.random() < 0.5 else hi)
    return float(rng.uniform(lo, hi))


def _shifted_pair(rng: np.random.Generator, i2: float, s12: float) -> tuple[float, float]:
    base = [(0.0, i2), (1.0 - i2, 1.0)]
    a = _pick(rng, base)
    b = _pick(rng, [(max(lo, a - s12), min(hi, a + s12)) for lo, hi in base])
    return (a, b) if rng.random() < 0.5 else (b, a)


def random_constrained_model(
    i2_cap: float, s12_cap: float, m2_cap: float, lambda_count: int, seed: int
) -> HiddenVariableModel:
    """Random one-sided model whose degrees stay within the caps.

    Alice is deterministic, non-signaling and measurement independent; Bob's
    marginals, shifts and setting-conditioned weights are drawn up to the caps,
    with extra mass on interval endpoints.
    """
    i2_cap = check_range("i2_cap", i2_cap, 0.0, 0.5)
    s12_cap = check_range("s12_cap", s12_cap, 0.0, 1.0)
    m2_cap = check_range("m2_cap", m2_cap, 0.0, 2.0)
    if int(lambda_count) != lambda_count or lambda_count < 1:
        raise ParameterError(f"lambda_count must be a positive integer, got {lambda_count!r}")
    rng = np.random.default_rng(seed)
    size = int(lambda_count)

    u = rng.dirichlet(np.ones(size))
    target = rng.dirichlet(np.ones(size))
    dist = float(np.abs(u - target).sum())
    t = min(1.0, m2_cap / dist) if dist > 0 else 0.0
    if rng.random() >= 0.3:
        t *= rng.random()
    v = (1.0 - t) * u + t * target
    unprimed, primed = tuple(float(x) for x in u), tuple(float(x) for x in v)

    columns = []
    for _ in range(size):
        a1, a3 = (float(b) for b in rng.integers(0, 2, size=2))
        n1, n3 = _shifted_pair(rng, i2_cap, s12_cap)
        n2, n4 = _shifted_pair(rng, i2_cap, s12_cap)
        column = []
        for m, n, up in zip((a1, a1, a3, a3), (n1, n2, n3, n4), _UPPER):
            lo = max(0.0, m + n - 1.0)
            hi = max(lo, min(m, n))
            roll = rng.random()
            c = (hi if up else lo) if roll < 0.5 else float(rng.uniform(lo, hi))
            column.append(LocalDecomposition(m, n, c))
        columns.append(column)
    return HiddenVariableModel(
        tuple(f"l{j}" for j in range(size)),
        (unprimed, primed, unprimed, primed),
        tuple(tuple(col[k] for col in columns) for k in range(4)),
    )
