"""Two-party, two-setting, two-outcome hidden-variable models.

Outcomes are encoded as +1/-1 and every per-(lambda, context) distribution is
parametrised by the `+` marginals of both parties and the `++` joint
probability:

    m = p1(+ | x, y, lam),  n = p2(+ | x, y, lam),  c = p(+, + | x, y, lam)

Contexts are always ordered (x,y), (x,y'), (x',y), (x',y'); the last one enters
the CHSH combination with a minus sign.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from relaxbell.errors import ParameterError, ValidationError

TOL = 1e-9


@dataclass(frozen=True)
class Context:
    alice_setting: int
    bob_setting: int

    @property
    def key(self) -> str:
        return ("x" if self.alice_setting == 0 else "x'") + ("y" if self.bob_setting == 0 else "y'")

    @property
    def sign(self) -> int:
        return -1 if (self.alice_setting, self.bob_setting) == (1, 1) else 1


CONTEXTS: tuple[Context, ...] = (Context(0, 0), Context(0, 1), Context(1, 0), Context(1, 1))
CONTEXT_KEYS: tuple[str, ...] = tuple(ctx.key for ctx in CONTEXTS)
CHSH_SIGNS: tuple[int, ...] = tuple(ctx.sign for ctx in CONTEXTS)


def _check_probability(name: str, value: float) -> None:
    if not math.isfinite(value) or value < -TOL or value > 1 + TOL:
        raise ValidationError(f"{name} = {value!r} is not a probability in [0, 1]")


@dataclass(frozen=True)
class LocalDecomposition:
    """Joint outcome distribution for one (lambda, context) pair."""

    m: float
    n: float
    c: float

    def __post_init__(self) -> None:
        for name in ("m", "n", "c"):
            _check_probability(name, getattr(self, name))
        lo, hi = max(0.0, self.m + self.n - 1.0), min(self.m, self.n)
        if self.c < lo - TOL:
            raise ValidationError(
                f"c = {self.c!r} violates c >= max(0, m + n - 1) = {lo!r} (m={self.m!r}, n={self.n!r})"
            )
        if self.c > hi + TOL:
            raise ValidationError(f"c = {self.c!r} violates c <= min(m, n) = {hi!r} (m={self.m!r}, n={self.n!r})")

    @classmethod
    def extremal(cls, m: float, n: float, upper: bool) -> LocalDecomposition:
        """Decomposition whose correlator sits at the top (``upper``) or bottom of its range."""
        c = min(m, n) if upper else max(0.0, m + n - 1.0)
        return cls(m, n, c)


def joint_probabilities(decomp: LocalDecomposition) -> tuple[float, float, float, float]:
    """Return (p++, p+-, p-+, p--)."""
    m, n, c = decomp.m, decomp.n, decomp.c
    return (c, m - c, n - c, 1.0 - m - n + c)


def correlator(decomp: LocalDecomposition) -> float:
    """Expected product of outcomes, ``1 + 4c - 2(m + n)``."""
    return 1.0 + 4.0 * decomp.c - 2.0 * (decomp.m + decomp.n)


def correlator_range(m: float, n: float) -> tuple[float, float]:
    """Attainable correlator interval for fixed marginals.

    The lower end is reached at ``c = max(0, m + n - 1)`` and the upper end at
    ``c = min(m, n)``.
    """
    for name, value in (("m", m), ("n", n)):
        if not math.isfinite(value) or value < -TOL or value > 1 + TOL:
            raise ValidationError(f"{name} = {value!r} is not a probability in [0, 1]")
    return (2.0 * abs(m + n - 1.0) - 1.0, 1.0 - 2.0 * abs(m - n))


@dataclass(frozen=True)
class HiddenVariableModel:
    """Finite hidden-variable model.

    ``weights[k][j]`` is p(lambda_j | context k) and ``decompositions[k][j]``
    the local distribution for lambda_j in context k, with contexts indexed as
    in :data:`CONTEXTS`. Every (lambda, context) pair carries a decomposition,
    including those with zero weight.
    """

    lambdas: tuple[str, ...]
    weights: tuple[tuple[float, ...], ...]
    decompositions: tuple[tuple[LocalDecomposition, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", tuple(str(lam) for lam in self.lambdas))
        object.__setattr__(self, "weights", tuple(tuple(float(w) for w in row) for row in self.weights))
        object.__setattr__(self, "decompositions", tuple(tuple(row) for row in self.decompositions))
        self.validate()

    def validate(self) -> None:
        size = len(self.lambdas)
        if size == 0:
            raise ValidationError("model has no hidden-variable values")
        if len(set(self.lambdas)) != size:
            raise ValidationError("lambda labels must be unique")
        if len(self.weights) != 4 or len(self.decompositions) != 4:
            raise ValidationError("weights and decompositions need exactly four contexts")
        for key, row in zip(CONTEXT_KEYS, self.weights):
            if len(row) != size:
                raise ValidationError(f"weights[{key}] has {len(row)} entries for {size} lambdas")
            for w in row:
                if not math.isfinite(w) or w < -TOL:
                    raise ValidationError(f"weights[{key}] contains negative weight {w!r}")
            total = math.fsum(row)
            if abs(total - 1.0) > TOL:
                raise ValidationError(f"weights[{key}] sums to {total!r}, not 1")
        for key, row in zip(CONTEXT_KEYS, self.decompositions):
            if len(row) != size:
                raise ValidationError(f"decompositions[{key}] has {len(row)} entries for {size} lambdas")
            for d in row:
                if not isinstance(d, LocalDecomposition):
                    raise ValidationError(f"decompositions[{key}] holds {type(d).__name__}, not LocalDecomposition")

    @classmethod
    def from_rows(
        cls,
        lambdas: Sequence[str],
        weights: Mapping[str, Sequence[float]],
        decompositions: Mapping[str, Sequence[LocalDecomposition]],
    ) -> HiddenVariableModel:
        """Build from mappings keyed by context names ``xy``, ``xy'``, ``x'y``, ``x'y'``."""
        missing = set(CONTEXT_KEYS) - set(weights) | set(CONTEXT_KEYS) - set(decompositions)
        if missing:
            raise ValidationError(f"missing contexts: {sorted(missing)}")
        return cls(
            tuple(lambdas),
            tuple(tuple(weights[k]) for k in CONTEXT_KEYS),
            tuple(tuple(decompositions[k]) for k in CONTEXT_KEYS),
        )

    @property
    def size(self) -> int:
        return len(self.lambdas)

    def relabel(self, order: Sequence[int]) -> HiddenVariableModel:
        """Same model with lambdas permuted into ``order``."""
        return HiddenVariableModel(
            tuple(self.lambdas[j] for j in order),
            tuple(tuple(row[j] for j in order) for row in self.weights),
            tuple(tuple(row[j] for j in order) for row in self.decompositions),
        )

    def to_dict(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "weights": {k: list(row) for k, row in zip(CONTEXT_KEYS, self.weights)},
            "decompositions": {
                k: [{"m": d.m, "n": d.n, "c": d.c} for d in row] for k, row in zip(CONTEXT_KEYS, self.decompositions)
            },
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> HiddenVariableModel:
        try:
            lambdas = [str(lam) for lam in doc["lambdas"]]
            weights = {k: [float(w) for w in doc["weights"][k]] for k in CONTEXT_KEYS}
            decomps = {
                k: [LocalDecomposition(float(d["m"]), float(d["n"]), float(d["c"])) for d in doc["decompositions"][k]]
                for k in CONTEXT_KEYS
            }
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed model document: missing or mistyped field {exc}") from exc
        return cls.from_rows(lambdas, weights, decomps)


def save_model(model: HiddenVariableModel, path: str | Path) -> None:
    # json writes shortest round-trip reprs (up to 17 significant digits)
    Path(path).write_text(json.dumps(model.to_dict(), indent=2) + "\n")


def load_model(path: str | Path) -> HiddenVariableModel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top-level JSON value must be an object")
    return HiddenVariableModel.from_dict(doc)


def context_correlators(model: HiddenVariableModel) -> tuple[float, float, float, float]:
    """Lambda-averaged correlator of each context."""
    return tuple(
        math.fsum(w * correlator(d) for w, d in zip(wrow, drow))
        for wrow, drow in zip(model.weights, model.decompositions)
    )


def chsh(model: HiddenVariableModel) -> float:
    """<xy> + <xy'> + <x'y> - <x'y'>, each averaged with its own context weights."""
    return math.fsum(s * e for s, e in zip(CHSH_SIGNS, context_correlators(model)))


@dataclass(frozen=True)
class SampleResult:
    estimate: float
    runs_per_context: tuple[int, int, int, int]
    outcome_counts: tuple[tuple[int, int, int, int], ...]  # per context: (++, +-, -+, --)


_PRODUCTS = np.array([1, -1, -1, 1])


def sample_experiment(model: HiddenVariableModel, runs: int, seed: int) -> SampleResult:
    """Monte Carlo CHSH estimate.

    Each run picks a context uniformly, draws lambda from that context's
    weights and then a joint outcome. A context that receives no runs makes
    the estimate NaN.
    """
    if int(runs) != runs or runs < 1:
        raise ParameterError(f"runs must be a positive integer, got {runs!r}")
    rng = np.random.default_rng(seed)
    contexts = rng.integers(0, 4, size=int(runs))
    per_context = np.bincount(contexts, minlength=4)
    counts = []
    means = []
    for k in range(4):
        size = int(per_context[k])
        w = np.clip(np.asarray(model.weights[k]), 0.0, None)
        lam = rng.choice(model.size, size=size, p=w / w.sum())
        joint = np.clip(np.array([joint_probabilities(d) for d in model.decompositions[k]]), 0.0, None)
        cdf = np.cumsum(joint, axis=1)
        cdf[:, -1] = 1.0
        u = rng.random(size)
        outcome = (u[:, None] >= cdf[lam]).sum(axis=1)
        tally = np.bincount(outcome, minlength=4)
        counts.append(tuple(int(t) for t in tally))
        means.append(float(tally @ _PRODUCTS) / size if size else math.nan)
    estimate = math.fsum(s * e for s, e in zip(CHSH_SIGNS, means))
    return SampleResult(estimate, tuple(int(r) for r in per_context), tuple(counts))


def deterministic_model(assignments: Iterable[tuple[int, int]], label: str = "l0") -> HiddenVariableModel:
    """Single-lambda model with fixed outcome pairs, one (a, b) in {+1,-1}^2 per context."""
    decomps = []
    for a, b in assignments:
        m, n = float(a == 1), float(b == 1)
        decomps.append((LocalDecomposition(m, n, m * n),))
    if len(decomps) != 4:
        raise ValidationError("need one outcome pair per context")
    return HiddenVariableModel((label,), ((1.0,),) * 4, tuple(decomps))
