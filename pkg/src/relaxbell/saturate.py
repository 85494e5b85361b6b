"""Explicit hidden-variable models that reach the closed-form bounds."""

from __future__ import annotations

from relaxbell.bounds import Regime, effective_shift, check_range
from relaxbell.errors import ParameterError
from relaxbell.hvmodel import HiddenVariableModel, LocalDecomposition

_UPPER = (True, True, True, False)  # extremal correlator direction per context; (x',y') enters with a minus sign


def _bob_marginals(i2: float, s12: float) -> tuple[float, float, float, float]:
    regime, sigma = effective_shift(i2, s12)
    if regime is Regime.CROSS_GAP:
        n2 = max(0.0, 1.0 - i2 - s12)
        n4 = n2 + s12
    else:
        # both marginals stay in [0, i2]; the upper one sits on i2 so the model realizes the full indeterminism
        n2 = i2 - sigma
        n4 = i2
    return (0.0, n2, 0.0, n4)


def _extremal_column(ms, ns) -> tuple[LocalDecomposition, ...]:
    return tuple(LocalDecomposition.extremal(m, n, up) for m, n, up in zip(ms, ns, _UPPER))


def mi_saturating_model(i2: float, s12: float) -> HiddenVariableModel:
    """Single-lambda, measurement-independent model with CHSH equal to ``mi_bound(i2, s12)``.

    Alice always answers -1 and Bob's `+` marginal is 0 except under (x,y')
    and (x',y'), where it differs by the largest admissible shift.
    """
    i2 = check_range("i2", i2, 0.0, 0.5)
    s12 = check_range("s12", s12, 0.0, 1.0)
    column = _extremal_column((0.0,) * 4, _bob_marginals(i2, s12))
    return HiddenVariableModel(("l0",), ((1.0,),) * 4, tuple((d,) for d in column))


def table1_model(p: float) -> HiddenVariableModel:
    """Deterministic, non-signaling two-lambda model with m2 = 2p and CHSH = 2 + 2p.

    lambda_1: Alice -1 under x and +1 under x', Bob -1 under both settings.
    lambda_2: every outcome +1. Contexts with y weight lambda_2 only, contexts
    with y' weight (p, 1 - p).
    """
    p = check_range("p", p, 0.0, 1.0)
    lam1 = (LocalDecomposition(0.0, 0.0, 0.0),) * 2 + (LocalDecomposition(1.0, 0.0, 0.0),) * 2
    lam2 = (LocalDecomposition(1.0, 1.0, 1.0),) * 4
    unprimed, primed = (0.0, 1.0), (p, 1.0 - p)
    return HiddenVariableModel(
        ("l1", "l2"),
        (unprimed, primed, unprimed, primed),
        tuple((a, b) for a, b in zip(lam1, lam2)),
    )


def combined_saturating_model(i2: float, s12: float, m2: float) -> HiddenVariableModel:
    """Two-lambda model reaching ``chsh_bound(i2, s12, m2)`` for m2 < 2.

    lambda_1 follows the deterministic table-1 pattern and is weighted p = m2/2
    under y'; lambda_2 carries the single-lambda saturating decompositions.
    """
    i2 = check_range("i2", i2, 0.0, 0.5)
    s12 = check_range("s12", s12, 0.0, 1.0)
    m2 = check_range("m2", m2, 0.0, 2.0)
    if m2 >= 2.0:
        raise ParameterError("m2 = 2 needs no signaling or indeterminism; use table1_model(1)")
    p = m2 / 2.0
    lam1 = _extremal_column((0.0, 0.0, 1.0, 1.0), (0.0,) * 4)
    lam2 = _extremal_column((0.0,) * 4, _bob_marginals(i2, s12))
    unprimed, primed = (0.0, 1.0), (p, 1.0 - p)
    return HiddenVariableModel(
        ("l1", "l2"),
        (unprimed, primed, unprimed, primed),
        tuple((a, b) for a, b in zip(lam1, lam2)),
    )
