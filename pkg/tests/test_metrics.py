import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaxbell.hvmodel import HiddenVariableModel, LocalDecomposition, deterministic_model
from relaxbell.metrics import (
    indeterminism_degrees,
    measurement_dependence_degrees,
    profile,
    signaling_degrees,
)
from relaxbell.oracle import random_constrained_model
from relaxbell.saturate import combined_saturating_model, mi_saturating_model, table1_model


def _single(ms, ns):
    return HiddenVariableModel(
        ("a",), ((1.0,),) * 4, tuple((LocalDecomposition(m, n, min(m, n)),) for m, n in zip(ms, ns))
    )


def test_no_marginal_shift_means_no_signaling():
    model = _single((1, 0, 1, 0), (0.3, 0.6, 0.3, 0.6))
    assert signaling_degrees(model)[0] == 0.0


def test_signaling_of_saturating_and_table1_models():
    s12, s21 = signaling_degrees(mi_saturating_model(0.2, 0.2))
    assert s12 == pytest.approx(0.2, abs=1e-12)
    assert s21 == 0.0
    for p in (0.0, 0.3, 1.0):
        assert signaling_degrees(table1_model(p)) == (0.0, 0.0)


def test_signaling_directions():
    # Alice marginal moves with Bob's setting, Bob's with Alice's
    model = _single((0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 0.25, 0.0))
    assert signaling_degrees(model) == (0.25, 1.0)


@pytest.mark.parametrize(
    "ns, expected_i2",
    [((0, 1, 1, 0), 0.0), ((0.3, 1, 1, 0), 0.3), ((0.9, 1, 0, 0), pytest.approx(0.1, abs=1e-15))],
)
def test_indeterminism_examples(ns, expected_i2):
    i1, i2 = indeterminism_degrees(_single((1, 0, 1, 0), ns))
    assert i1 == 0.0
    assert i2 == expected_i2


def test_measurement_dependence_examples():
    d = LocalDecomposition(1, 1, 1)
    same = HiddenVariableModel(("a", "b"), ((0.3, 0.7),) * 4, ((d, d),) * 4)
    assert measurement_dependence_degrees(same) == (0.0, 0.0, 0.0)
    p = 0.35
    m1, m2, m = measurement_dependence_degrees(table1_model(p))
    assert m1 == 0.0
    assert m2 == pytest.approx(2 * p, abs=1e-15)
    disjoint = HiddenVariableModel(("a", "b"), ((1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)), ((d, d),) * 4)
    assert measurement_dependence_degrees(disjoint)[2] == 2.0


def test_global_dependence_includes_single_setting_changes():
    d = LocalDecomposition(1, 1, 1)
    # only x changes the distribution: m1 > 0, m2 = 0
    model = HiddenVariableModel(("a", "b"), ((1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 1.0)), ((d, d),) * 4)
    m1, m2, m = measurement_dependence_degrees(model)
    assert (m1, m2, m) == (2.0, 0.0, 2.0)


def test_profile_examples():
    prof = profile(deterministic_model([(1, 1), (1, -1), (-1, 1), (-1, -1)]))
    assert prof.to_dict() == {k: (1.0 if k == "f" else 0.0) for k in prof.to_dict()}

    prof = profile(table1_model(0.414))
    assert prof.m2 == pytest.approx(0.828, abs=1e-12)
    assert prof.s == 0.0 and prof.i == 0.0
    assert prof.f == pytest.approx(0.586, abs=1e-12)
    assert round(prof.f, 2) == 0.59

    prof = profile(combined_saturating_model(0.2, 0.6, 0.4))
    assert prof.i2 == pytest.approx(0.2, abs=1e-9)
    assert prof.s12 == pytest.approx(0.6, abs=1e-9)
    assert prof.m2 == pytest.approx(0.4, abs=1e-9)


def test_profile_serializes_to_ten_fields():
    assert list(profile(table1_model(0.1)).to_dict()) == ["i1", "i2", "i", "s12", "s21", "s", "m1", "m2", "m", "f"]


def test_complementary_relation():
    for seed in range(10_000):
        caps = ((seed % 7) / 12, (seed % 11) / 10, (seed % 5) / 2)
        prof = profile(random_constrained_model(*caps, 1 + seed % 4, seed))
        assert prof.i2 >= min(prof.s12, (1 - prof.s12) / 2) - 1e-12, seed


@settings(max_examples=200)
@given(st.floats(0, 0.5), st.floats(0, 1))
def test_saturating_model_stays_one_sided(i2, s12):
    prof = profile(mi_saturating_model(i2, s12))
    assert prof.m2 == 0.0 and prof.s21 == 0.0 and prof.i1 == 0.0


@settings(max_examples=200)
@given(st.floats(0, 0.5), st.floats(0, 1), st.floats(0, 2), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_aggregates_dominate_components(i2, s12, m2, count, seed):
    prof = profile(random_constrained_model(i2, s12, m2, count, seed))
    assert prof.m1 <= prof.m and prof.m2 <= prof.m
    assert prof.s12 <= prof.s and prof.s21 <= prof.s
    assert prof.i == max(prof.i1, prof.i2)
    assert prof.f == 1 - prof.m / 2
    assert 0 <= prof.i2 <= 0.5 and 0 <= prof.m <= 2 + 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_metrics_are_permutation_invariant(seed):
    model = random_constrained_model(0.3, 0.5, 1.0, 4, seed)
    base = profile(model).to_dict()
    for order in itertools.permutations(range(4)):
        relabeled = profile(model.relabel(order)).to_dict()
        assert relabeled == pytest.approx(base, abs=1e-12)
