import numpy as np
import pytest
from hypothesis import given, strategies as st

from divbound import (
    BadDimension,
    Distribution,
    InvalidRange,
    LengthMismatch,
    NonFinite,
    NonPositiveEntry,
    RatioRange,
    SumMismatch,
    TooShort,
    ratio_range,
    sample,
    validate,
)
from divbound.simplex import SAMPLE_FLOOR, likelihood_ratios

from conftest import pairs


@pytest.mark.parametrize("values", [[0.5, 0.5], [0.25, 0.75], (0.2, 0.3, 0.5)])
def test_validate_accepts(values):
    d = validate(values)
    assert d.n == len(values)
    np.testing.assert_array_equal(d.probs, values)


@pytest.mark.parametrize(
    "values, exc",
    [
        ([0.5, 0.5000002], SumMismatch),
        ([1.0], TooShort),
        ([], TooShort),
        ([0.0, 1.0], NonPositiveEntry),
        ([-0.1, 1.1], NonPositiveEntry),
        ([np.nan, 0.5], NonFinite),
        ([np.inf, 0.5], NonFinite),
    ],
)
def test_validate_rejects(values, exc):
    with pytest.raises(exc):
        validate(values)


def test_error_precedence():
    # non-finite wins over length, length over sign, sign over sum
    with pytest.raises(NonFinite):
        validate([np.nan])
    with pytest.raises(TooShort):
        validate([-1.0])
    with pytest.raises(NonPositiveEntry):
        validate([0.0, 5.0])


def test_validate_never_renormalizes():
    with pytest.raises(SumMismatch):
        validate([1.0, 1.0])
    d = validate([0.5, 0.5 + 5e-10])
    assert d.probs[1] == 0.5 + 5e-10


def test_distribution_is_immutable():
    d = Distribution([0.25, 0.75])
    with pytest.raises(ValueError):
        d.probs[0] = 0.5
    assert d == Distribution(np.array([0.25, 0.75]))
    assert hash(d) == hash(Distribution([0.25, 0.75]))
    assert list(d) == [0.25, 0.75]
    assert validate(d) is d


@pytest.mark.parametrize(
    "P, Q, r, R",
    [
        ((0.5, 0.5), (0.25, 0.75), 2 / 3, 2.0),
        ((0.3, 0.7), (0.3, 0.7), 1.0, 1.0),
        ((0.2, 0.3, 0.5), (0.4, 0.3, 0.3), 0.5, 5 / 3),
    ],
)
def test_ratio_range_examples(P, Q, r, R):
    rng = ratio_range(P, Q)
    assert rng.r == pytest.approx(r, rel=1e-15)
    assert rng.R == pytest.approx(R, rel=1e-15)


def test_ratio_range_clamps_to_one():
    # every ratio above 1 is impossible, but a clamp is still needed for r when all ratios are near 1
    rng = ratio_range([0.5, 0.5], [0.5, 0.5])
    assert rng.degenerate and rng.width == 0.0


def test_ratio_range_length_mismatch():
    with pytest.raises(LengthMismatch):
        ratio_range([0.5, 0.5], [0.2, 0.3, 0.5])
    with pytest.raises(LengthMismatch):
        likelihood_ratios([0.5, 0.5], [0.2, 0.3, 0.5])


@pytest.mark.parametrize("r, R", [(0.0, 2.0), (1.5, 2.0), (0.5, 0.9), (0.5, np.inf), (np.nan, 1.0)])
def test_ratio_range_invalid(r, R):
    with pytest.raises(InvalidRange):
        RatioRange(r, R)


@given(pairs())
def test_ratio_range_contains_every_ratio(pq):
    P, Q = pq
    rng = ratio_range(P, Q)
    x = likelihood_ratios(P, Q)
    assert rng.r <= 1.0 <= rng.R
    assert np.all(rng.r <= x) and np.all(x <= rng.R)


def test_sample_deterministic():
    a, b = sample(2, 7, 1.0), sample(2, 7, 1.0)
    assert a.probs.tobytes() == b.probs.tobytes()
    assert sample(2, 8, 1.0) != a


def test_sample_large_small_concentration():
    d = sample(64, 1, 0.5)
    assert d.n == 64
    assert d.probs.min() >= SAMPLE_FLOOR
    tiny = sample(16, 3, 0.01)
    assert tiny.probs.min() >= SAMPLE_FLOOR


@pytest.mark.parametrize("n", [1, 0, -3])
def test_sample_bad_dimension(n):
    with pytest.raises(BadDimension):
        sample(n, 0, 1.0)


def test_sample_bad_concentration():
    with pytest.raises(ValueError):
        sample(3, 0, 0.0)


@given(
    st.integers(2, 40),
    st.integers(-(2**63), 2**64 - 1),
    st.sampled_from([0.05, 0.3, 1.0, 5.0]),
)
def test_sample_output_validates(n, seed, conc):
    d = sample(n, seed, conc)
    assert validate(d.probs.copy()) == d
    assert d.probs.min() >= SAMPLE_FLOOR
