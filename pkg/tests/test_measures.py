import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from divbound import LengthMismatch, MeasureKind, NonFiniteResult, divergence, phi_s, power_mean, rho_phi_s
from divbound import measures

from conftest import WITNESS_P, WITNESS_Q, pairs, random_pairs

F = Fraction
_P = [F(1, 2), F(1, 2)]
_Q = [F(1, 4), F(3, 4)]


def _exact(fn):
    return float(sum(fn(p, q) for p, q in zip(_P, _Q)))


# oracles from exact rational arithmetic or closed forms in math
ORACLES = {
    "triangular": _exact(lambda p, q: (p - q) ** 2 / (p + q)),  # 2/15
    "sym_chi2": _exact(lambda p, q: (p - q) ** 2 * (p + q) / (p * q)),  # 7/12
    "chi2": _exact(lambda p, q: (p - q) ** 2 / q),  # 1/3
    "harmonic_mean": _exact(lambda p, q: 2 * p * q / (p + q)),  # 14/15
    "rho_delta": _exact(lambda p, q: ((p - q) / (p + q)) ** 2 * (p + 3 * q)),  # 56/225
    "delta_star": _exact(lambda p, q: 2 * q * ((p - q) / (p + q)) ** 2),  # 26/225
    "psi_star": _exact(lambda p, q: (p - q) ** 2 * (p * p + q * q) / (p * p * q)),  # 7/12
    "rho_psi": 7 / 6,
    "bhattacharya": (1 + math.sqrt(3)) / (2 * math.sqrt(2)),
    "hellinger": 1 - (1 + math.sqrt(3)) / (2 * math.sqrt(2)),
    "kl": 0.5 * math.log(2) + 0.5 * math.log(2 / 3),
    "j_divergence": 0.5 * math.log(2) + 0.5 * math.log(2 / 3)
    + 0.25 * math.log(0.5) + 0.75 * math.log(1.5),
}


def test_frozen_rationals():
    assert ORACLES["triangular"] == float(F(2, 15))
    assert ORACLES["sym_chi2"] == float(F(7, 12))
    assert ORACLES["rho_delta"] == float(F(56, 225))
    assert ORACLES["delta_star"] == float(F(26, 225))


@pytest.mark.parametrize("kind", sorted(ORACLES))
def test_witness_oracles(kind):
    assert divergence(kind, WITNESS_P, WITNESS_Q) == pytest.approx(ORACLES[kind], rel=1e-13)


def test_spec_decimal_examples():
    assert divergence("triangular", WITNESS_P, WITNESS_Q) == pytest.approx(0.1333333333, abs=1e-9)
    assert divergence("sym_chi2", WITNESS_P, WITNESS_Q) == pytest.approx(0.5833333333, abs=1e-9)
    assert divergence("rho_delta", WITNESS_P, WITNESS_Q) == pytest.approx(0.2488888889, abs=1e-9)
    assert measures.kl(WITNESS_Q, WITNESS_P) == pytest.approx(0.130812, abs=1e-6)


@pytest.mark.parametrize("kind", list(MeasureKind))
def test_identity_case(kind):
    P = [0.1, 0.2, 0.3, 0.4]
    expected = 1.0 if kind in (MeasureKind.BHATTACHARYA, MeasureKind.HARMONIC_MEAN) else 0.0
    assert divergence(kind, P, P) == pytest.approx(expected, abs=1e-15)


def test_unknown_kind_and_length():
    with pytest.raises(ValueError):
        divergence("total_variation", WITNESS_P, WITNESS_Q)
    with pytest.raises(LengthMismatch):
        measures.kl([0.5, 0.5], [0.2, 0.3, 0.5])


@given(pairs())
def test_nonnegative_and_bounded(pq):
    P, Q = pq
    for kind in MeasureKind:
        v = divergence(kind, P, Q)
        if kind in (MeasureKind.BHATTACHARYA, MeasureKind.HARMONIC_MEAN):
            assert 0.0 < v <= 1.0 + 1e-12
        else:
            assert v >= -1e-15


SYMMETRIC = ["triangular", "harmonic_mean", "j_divergence", "sym_chi2", "bhattacharya", "hellinger"]


@given(pairs())
def test_symmetric_measures(pq):
    P, Q = pq
    for kind in SYMMETRIC:
        a, b = divergence(kind, P, Q), divergence(kind, Q, P)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("P, Q", random_pairs(1000, dims=(2, 3, 8, 20), seed=11))
def test_structural_identities(P, Q):
    d = measures.triangular(P, Q)
    w = measures.harmonic_mean(P, Q)
    assert d == pytest.approx(2 * (1 - w), rel=1e-10, abs=1e-14)
    assert measures.hellinger(P, Q) == pytest.approx(1 - measures.bhattacharya(P, Q), rel=1e-10, abs=1e-14)
    assert measures.sym_chi2(P, Q) == pytest.approx(measures.chi2(P, Q) + measures.chi2(Q, P), rel=1e-10)
    assert measures.j_divergence(P, Q) == pytest.approx(measures.kl(P, Q) + measures.kl(Q, P), rel=1e-10, abs=1e-14)
    assert measures.delta_star(P, Q) == pytest.approx(measures.rho_delta(P, Q) - d, rel=1e-10, abs=1e-14)
    assert measures.psi_star(P, Q) == pytest.approx(measures.rho_psi(P, Q) - measures.sym_chi2(P, Q), rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("P, Q", random_pairs(200, dims=(2, 5, 12), seed=5))
def test_phi_particular_cases(P, Q):
    assert phi_s(-1, P, Q) == pytest.approx(0.5 * measures.chi2(Q, P), rel=1e-10)
    assert phi_s(0, P, Q) == pytest.approx(measures.kl(Q, P), rel=1e-10)
    assert phi_s(0.5, P, Q) == pytest.approx(4 * measures.hellinger(P, Q), rel=1e-10)
    assert phi_s(1, P, Q) == pytest.approx(measures.kl(P, Q), rel=1e-10)
    assert phi_s(2, P, Q) == pytest.approx(0.5 * measures.chi2(P, Q), rel=1e-10)
    assert phi_s(2, P, Q) == pytest.approx(phi_s(-1, Q, P), rel=1e-10)
    assert phi_s(1, P, Q) == pytest.approx(phi_s(0, Q, P), rel=1e-10)


def test_phi_examples():
    assert phi_s(2, WITNESS_P, WITNESS_Q) == pytest.approx(1 / 6, rel=1e-14)
    assert phi_s(0.5, WITNESS_P, WITNESS_P) == 0.0
    assert phi_s(1, WITNESS_P, WITNESS_Q) == pytest.approx(ORACLES["kl"], rel=1e-14)
    # sum p^3/q^2 = 2 + 2/9, so (20/9 - 1)/6
    assert phi_s(3, WITNESS_P, WITNESS_Q) == pytest.approx(11 / 54, rel=1e-14)


def test_phi_matches_direct_power_sum():
    P, Q = np.array(WITNESS_P), np.array(WITNESS_Q)
    for s in (-3.0, -0.7, 0.3, 1.7, 4.0):
        direct = (np.sum(P ** s * Q ** (1 - s)) - 1) / (s * (s - 1))
        assert phi_s(s, P, Q) == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("branch", [0.0, 1.0])
@given(pq=pairs(max_n=8, floor=1e-2))
def test_phi_continuous_at_branches(branch, pq):
    P, Q = pq
    at = phi_s(branch, P, Q)
    for delta in (1e-6, -1e-6):
        assert abs(phi_s(branch + delta, P, Q) - at) <= 1e-4


def test_phi_rejects_nonfinite_s():
    with pytest.raises(ValueError):
        phi_s(float("nan"), WITNESS_P, WITNESS_Q)
    with pytest.raises(ValueError):
        rho_phi_s(float("inf"), WITNESS_P, WITNESS_Q)


def test_phi_overflow_is_reported():
    P = [1 - 1e-12, 1e-12]
    Q = [1e-12, 1 - 1e-12]
    with pytest.raises(NonFiniteResult):
        phi_s(40.0, P, Q)


def test_rho_phi_examples():
    assert rho_phi_s(2, WITNESS_P, WITNESS_Q) == pytest.approx(1 / 3, rel=1e-14)
    assert rho_phi_s(1, WITNESS_P, WITNESS_P) == 0.0
    assert rho_phi_s(1, WITNESS_P, WITNESS_Q) == pytest.approx(ORACLES["j_divergence"], rel=1e-14)
    assert rho_phi_s(1, WITNESS_P, WITNESS_Q) == pytest.approx(0.2746531, abs=1e-7)


@pytest.mark.parametrize("P, Q", random_pairs(200, dims=(2, 6), seed=9))
def test_rho_phi_particular_cases(P, Q):
    p, q = P.probs, Q.probs
    chi_qp = measures.chi2(Q, P)
    assert rho_phi_s(-1, P, Q) == pytest.approx(3 * phi_s(3, Q, P) - 0.5 * chi_qp, rel=1e-10)
    assert rho_phi_s(0, P, Q) == pytest.approx(chi_qp, rel=1e-10)
    assert rho_phi_s(0.5, P, Q) == pytest.approx(2 * np.sum((q - p) * np.sqrt(q / p)), rel=1e-10)
    assert rho_phi_s(1, P, Q) == pytest.approx(measures.j_divergence(P, Q), rel=1e-10)
    assert rho_phi_s(2, P, Q) == pytest.approx(measures.chi2(P, Q), rel=1e-10)


@pytest.mark.parametrize(
    "p, a, b, expected",
    [
        (1, 2, 4, 3.0),
        (-1, 1, math.e, math.e - 1),
        (0, 3, 3, 3.0),
        (0, 1, math.e, math.exp(math.e / (math.e - 1) - 1)),
        (-2, 1, 4, 2.0),  # geometric mean
        (2, 0, 0, None),
    ],
)
def test_power_mean_examples(p, a, b, expected):
    if expected is None:
        with pytest.raises(ValueError):
            power_mean(p, a, b)
        return
    assert power_mean(p, a, b) == pytest.approx(expected, rel=1e-14)


def test_power_mean_symmetric_in_arguments():
    for p in (-3.0, -1.0, -0.5, 0.0, 1.0, 2.5):
        assert power_mean(p, 0.3, 7.0) == pytest.approx(power_mean(p, 7.0, 0.3), rel=1e-14)


@given(
    st.floats(-6, 6), st.floats(-6, 6),
    st.floats(1e-3, 1e3), st.floats(1e-3, 1e3),
)
def test_power_mean_monotone_in_p(p1, p2, a, b):
    assume(abs(a - b) > 1e-6 * max(a, b))
    lo, hi = sorted((p1, p2))
    m_lo, m_hi = power_mean(lo, a, b), power_mean(hi, a, b)
    assert min(a, b) <= m_lo <= max(a, b)
    assert m_lo <= m_hi * (1 + 1e-12)
