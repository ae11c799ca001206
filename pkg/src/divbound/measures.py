"""Closed-form divergence measures between two discrete distributions.

All functions take two distributions of equal length (``Distribution``
instances or anything :func:`divbound.simplex.validate` accepts) and return a
Python float. Non-symmetric measures are written ``M(P||Q)`` with ``P`` first.
"""
from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import LengthMismatch, NonFiniteResult
from .simplex import Distribution, validate

__all__ = [
    "MeasureKind",
    "divergence",
    "bhattacharya",
    "hellinger",
    "chi2",
    "kl",
    "triangular",
    "harmonic_mean",
    "j_divergence",
    "sym_chi2",
    "delta_star",
    "psi_star",
    "rho_delta",
    "rho_psi",
    "phi_s",
    "rho_phi_s",
    "power_mean",
]


class MeasureKind(str, Enum):
    BHATTACHARYA = "bhattacharya"
    HELLINGER = "hellinger"
    CHI2 = "chi2"
    KL = "kl"
    TRIANGULAR = "triangular"
    HARMONIC_MEAN = "harmonic_mean"
    J_DIVERGENCE = "j_divergence"
    SYM_CHI2 = "sym_chi2"
    DELTA_STAR = "delta_star"
    PSI_STAR = "psi_star"
    RHO_DELTA = "rho_delta"
    RHO_PSI = "rho_psi"


def _pair(P, Q) -> tuple[np.ndarray, np.ndarray]:
    p = P.probs if isinstance(P, Distribution) else validate(P).probs
    q = Q.probs if isinstance(Q, Distribution) else validate(Q).probs
    if p.size != q.size:
        raise LengthMismatch(f"lengths differ: {p.size} vs {q.size}")
    return p, q


def _finite(value, what: str) -> float:
    # np.sum is pairwise for contiguous float64 input
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteResult(f"{what} evaluated to {value!r}")
    return value


def bhattacharya(P, Q) -> float:
    """Bhattacharya coefficient ``sum sqrt(p_i q_i)``; 1 iff P = Q."""
    p, q = _pair(P, Q)
    return _finite(np.sum(np.sqrt(p * q)), "bhattacharya")


def hellinger(P, Q) -> float:
    """Hellinger discrimination ``1 - B(P||Q)``.

    Evaluated as ``0.5 * sum (sqrt p_i - sqrt q_i)^2``, which avoids the
    cancellation in ``1 - B`` when P and Q are close.
    """
    p, q = _pair(P, Q)
    return _finite(0.5 * np.sum((np.sqrt(p) - np.sqrt(q)) ** 2), "hellinger")


def chi2(P, Q) -> float:
    """Pearson ``chi^2(P||Q) = sum (p_i - q_i)^2 / q_i``."""
    p, q = _pair(P, Q)
    return _finite(np.sum((p - q) ** 2 / q), "chi2")


def kl(P, Q) -> float:
    """Relative information ``K(P||Q) = sum p_i ln(p_i / q_i)``."""
    p, q = _pair(P, Q)
    return _finite(np.sum(p * (np.log(p) - np.log(q))), "kl")


def triangular(P, Q) -> float:
    """Triangular discrimination ``sum (p_i - q_i)^2 / (p_i + q_i)``."""
    p, q = _pair(P, Q)
    return _finite(np.sum((p - q) ** 2 / (p + q)), "triangular")


def harmonic_mean(P, Q) -> float:
    """Harmonic mean divergence ``W(P||Q) = sum 2 p_i q_i / (p_i + q_i)``."""
    p, q = _pair(P, Q)
    return _finite(np.sum(2.0 * p * q / (p + q)), "harmonic_mean")


def j_divergence(P, Q) -> float:
    """Jeffreys divergence ``sum (p_i - q_i) ln(p_i / q_i)``, i.e. K(P||Q) + K(Q||P)."""
    p, q = _pair(P, Q)
    return _finite(np.sum((p - q) * (np.log(p) - np.log(q))), "j_divergence")


def sym_chi2(P, Q) -> float:
    """Symmetric chi-square ``sum (p_i - q_i)^2 (p_i + q_i) / (p_i q_i)``."""
    p, q = _pair(P, Q)
    return _finite(np.sum((p - q) ** 2 * (p + q) / (p * q)), "sym_chi2")


def rho_delta(P, Q) -> float:
    """``sum ((p_i - q_i)/(p_i + q_i))^2 (p_i + 3 q_i)``, the rho functional of the triangular generator."""
    p, q = _pair(P, Q)
    t = (p - q) / (p + q)
    return _finite(np.sum(t * t * (p + 3.0 * q)), "rho_delta")


def delta_star(P, Q) -> float:
    """``rho_delta - triangular``, evaluated directly as ``2 sum q_i ((p_i - q_i)/(p_i + q_i))^2``."""
    p, q = _pair(P, Q)
    t = (p - q) / (p + q)
    return _finite(2.0 * np.sum(q * t * t), "delta_star")


def psi_star(P, Q) -> float:
    """``rho_psi - sym_chi2 = sum (p_i - q_i)^2 (p_i^2 + q_i^2) / (p_i^2 q_i)``."""
    p, q = _pair(P, Q)
    return _finite(np.sum((p - q) ** 2 * (p * p + q * q) / (p * p * q)), "psi_star")


def rho_psi(P, Q) -> float:
    p, q = _pair(P, Q)
    d2 = (p - q) ** 2
    value = np.sum(d2 * (p + q) / (p * q)) + np.sum(d2 * (p * p + q * q) / (p * p * q))
    return _finite(value, "rho_psi")


_DISPATCH = {
    MeasureKind.BHATTACHARYA: bhattacharya,
    MeasureKind.HELLINGER: hellinger,
    MeasureKind.CHI2: chi2,
    MeasureKind.KL: kl,
    MeasureKind.TRIANGULAR: triangular,
    MeasureKind.HARMONIC_MEAN: harmonic_mean,
    MeasureKind.J_DIVERGENCE: j_divergence,
    MeasureKind.SYM_CHI2: sym_chi2,
    MeasureKind.DELTA_STAR: delta_star,
    MeasureKind.PSI_STAR: psi_star,
    MeasureKind.RHO_DELTA: rho_delta,
    MeasureKind.RHO_PSI: rho_psi,
}


def divergence(kind: MeasureKind | str, P, Q) -> float:
    """Evaluate the measure named by ``kind``.

    >>> round(divergence("triangular", [0.5, 0.5], [0.25, 0.75]), 12)
    0.133333333333
    """
    return _DISPATCH[MeasureKind(kind)](P, Q)


def phi_s(s: float, P, Q) -> float:
    """Relative information of type ``s``.

    For ``s`` not in {0, 1} this is ``(sum p_i^s q_i^(1-s) - 1) / (s (s - 1))``;
    ``s == 0`` gives K(Q||P) and ``s == 1`` gives K(P||Q). The branch values
    are matched by exact equality.

    The power term is formed in log space and the ``- 1`` is folded into each
    term as ``q_i * expm1(s ln(p_i/q_i))``, which is exact at P = Q.
    """
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    p, q = _pair(P, Q)
    if s == 0.0:
        return _finite(np.sum(q * (np.log(q) - np.log(p))), "phi_s")
    if s == 1.0:
        return _finite(np.sum(p * (np.log(p) - np.log(q))), "phi_s")
    with np.errstate(over="ignore", invalid="ignore"):
        terms = q * np.expm1(s * (np.log(p) - np.log(q)))
        value = np.sum(terms) / (s * (s - 1.0))
    return _finite(value, f"phi_s(s={s!r})")


def rho_phi_s(s: float, P, Q) -> float:
    """``(s - 1)^-1 sum (p_i - q_i)(p_i/q_i)^(s-1)``, or ``sum (p_i - q_i) ln(p_i/q_i)`` at s = 1.

    Since ``sum (p_i - q_i) = 0`` the power is replaced by ``expm1`` of the same
    exponent, which removes a cancellation for ratios near one.
    """
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    p, q = _pair(P, Q)
    u = np.log(p) - np.log(q)
    if s == 1.0:
        return _finite(np.sum((p - q) * u), "rho_phi_s")
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.sum((p - q) * np.expm1((s - 1.0) * u)) / (s - 1.0)
    return _finite(value, f"rho_phi_s(s={s!r})")


def power_mean(p: float, a: float, b: float) -> float:
    """p-logarithmic power mean ``L_p(a, b)``.

    ``p == -1`` is the logarithmic mean, ``p == 0`` the identric mean and
    ``p == 1`` the arithmetic mean. ``L_p(a, a) = a``. The result is clipped
    to ``[min(a, b), max(a, b)]`` to absorb last-bit rounding.

    >>> power_mean(1, 2, 4)
    3.0
    """
    a, b, p = float(a), float(b), float(p)
    if not (a > 0 and b > 0):
        raise ValueError(f"power_mean needs a > 0 and b > 0, got a={a!r}, b={b!r}")
    if a == b:
        return a
    lo, hi = min(a, b), max(a, b)
    la, lb = math.log(a), math.log(b)
    if p == -1.0:
        value = (b - a) / (lb - la)
    elif p == 1.0:
        value = 0.5 * (a + b)
    elif p == 0.0:
        value = math.exp((b * lb - a * la) / (b - a) - 1.0)
    elif abs(p) < 1e-5:
        # ln L_p = (1/p) ln E[x^p] for x uniform on [a, b]; dividing by a tiny p
        # amplifies rounding, so expand to second order around the identric mean
        mean_log = (b * lb - a * la) / (b - a) - 1.0
        mean_sq = (b * (lb * lb - 2 * lb + 2) - a * (la * la - 2 * la + 2)) / (b - a)
        var = max(mean_sq - mean_log * mean_log, 0.0)
        value = math.exp(mean_log + 0.5 * p * var)
    else:
        # log of (b^(p+1) - a^(p+1)) / ((p+1)(b-a)), assembled around the larger endpoint
        k = p + 1.0
        lhi, llo = max(la, lb), min(la, lb)
        # (hi^k - lo^k) / (k (hi - lo)) = hi^k * (1 - (lo/hi)^k) / (k (hi - lo))
        ratio_term = -math.expm1(k * (llo - lhi))
        value = math.exp((k * lhi + math.log(ratio_term / k) - math.log(hi - lo)) / p)
    return min(max(value, lo), hi)
