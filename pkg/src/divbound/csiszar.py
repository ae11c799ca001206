"""Csiszar f-divergences built from explicit generator functions.

A :class:`Generator` bundles a convex, normalized ``f`` with its first two
derivatives, all as vectorized callables on ``(0, inf)``. The module provides
the divergence ``C_f``, the upper functional ``rho``, the range-dependent bound
set ``(alpha, beta, gamma)`` and two gap sums that evaluate ``beta - C_f`` and
``rho - C_f`` term by term.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import LengthMismatch, NonFiniteResult
from .simplex import Distribution, RatioRange, validate

__all__ = [
    "Generator",
    "BoundSet",
    "GeneratorReport",
    "TRIANGULAR",
    "SYMMETRIC_CHI2",
    "phi_generator",
    "c_f",
    "rho_c_f",
    "bound_set",
    "beta_gap",
    "rho_gap",
    "range_gap",
    "check_generator",
]

RealFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Generator:
    """Convex normalized ``f`` on ``(0, inf)`` with derivatives ``f1`` and ``f2``."""

    name: str
    f: RealFn
    f1: RealFn
    f2: RealFn = field(repr=False)

    def __call__(self, x):
        return self.f(x)


def _delta_f(x):
    return (x - 1.0) ** 2 / (x + 1.0)


def _delta_f1(x):
    return (x - 1.0) * (x + 3.0) / (x + 1.0) ** 2


def _delta_f2(x):
    return 8.0 / (x + 1.0) ** 3


def _psi_f(x):
    return (x - 1.0) ** 2 * (x + 1.0) / x


def _psi_f1(x):
    return (x - 1.0) * (2.0 * x * x + x + 1.0) / (x * x)


def _psi_f2(x):
    return 2.0 * (x ** 3 + 1.0) / x ** 3


TRIANGULAR = Generator("delta", _delta_f, _delta_f1, _delta_f2)
SYMMETRIC_CHI2 = Generator("psi", _psi_f, _psi_f1, _psi_f2)


@functools.lru_cache(maxsize=None)
def phi_generator(s: float) -> Generator:
    """Generator of the relative information of type ``s``.

    Normalized so that ``f(1) = f'(1) = 0`` and ``f''(x) = x^(s-2)``; at
    ``s = 0`` and ``s = 1`` the logarithmic limits are used.
    """
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"s must be finite, got {s!r}")
    if s == 0.0:
        return Generator(
            "phi_s=0",
            lambda x: x - 1.0 - np.log(x),
            lambda x: 1.0 - 1.0 / x,
            lambda x: 1.0 / (x * x),
        )
    if s == 1.0:
        return Generator(
            "phi_s=1",
            lambda x: x * np.log(x) - x + 1.0,
            lambda x: np.log(x),
            lambda x: 1.0 / x,
        )
    c = s * (s - 1.0)
    return Generator(
        f"phi_s={s:g}",
        lambda x: (np.power(x, s) - 1.0 - s * (x - 1.0)) / c,
        lambda x: (np.power(x, s - 1.0) - 1.0) / (s - 1.0),
        lambda x: np.power(x, s - 2.0),
    )


@dataclass(frozen=True)
class BoundSet:
    """Upper bounds on ``C_f`` valid for every pair whose ratios lie in ``range``.

    ``alpha == 0.25 * (R - r)**2 * gamma`` by construction.
    """

    alpha: float
    beta: float
    gamma: float
    range: RatioRange


def _pair(P, Q):
    p = P.probs if isinstance(P, Distribution) else validate(P).probs
    q = Q.probs if isinstance(Q, Distribution) else validate(Q).probs
    if p.size != q.size:
        raise LengthMismatch(f"lengths differ: {p.size} vs {q.size}")
    return p, q


def _finite(value, what):
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteResult(f"{what} evaluated to {value!r}")
    return value


def c_f(gen: Generator, P, Q) -> float:
    """``sum q_i f(p_i / q_i)``."""
    p, q = _pair(P, Q)
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.sum(q * gen.f(p / q))
    return _finite(value, f"C_f[{gen.name}]")


def rho_c_f(gen: Generator, P, Q) -> float:
    """``sum (p_i - q_i) f'(p_i / q_i)``; bounds ``c_f`` from above."""
    p, q = _pair(P, Q)
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.sum((p - q) * gen.f1(p / q))
    return _finite(value, f"rho[{gen.name}]")


def bound_set(gen: Generator, rng: RatioRange) -> BoundSet:
    """Secant bound ``beta``, slope ``gamma`` and ``alpha = (R - r)^2 gamma / 4``.

    A single-point range (``r == R == 1``) has no secant; it maps to
    ``(0, 0, f''(1))``, the limit as the range shrinks to 1.
    """
    r, R = rng.r, rng.R
    if rng.degenerate:
        return BoundSet(0.0, 0.0, _finite(gen.f2(np.float64(1.0)), "f''(1)"), rng)
    fr, fR = gen.f(np.float64(r)), gen.f(np.float64(R))
    beta = ((R - 1.0) * fr + (1.0 - r) * fR) / (R - r)
    gamma = (gen.f1(np.float64(R)) - gen.f1(np.float64(r))) / (R - r)
    alpha = 0.25 * (R - r) ** 2 * gamma
    return BoundSet(
        _finite(alpha, "alpha"), _finite(beta, "beta"), _finite(gamma, "gamma"), rng
    )


def beta_gap(gen: Generator, P, Q, rng: RatioRange) -> float:
    """``beta(r, R) - C_f(P||Q)`` as a sum of nonnegative per-ratio secant gaps.

    Each term is ``q_i`` times the height of the chord over ``f`` at
    ``x_i = p_i / q_i``; ratios sitting exactly on ``r`` or ``R`` contribute
    an exact zero, so the two-point case collapses to 0 without cancellation.
    """
    p, q = _pair(P, Q)
    if rng.degenerate:
        return 0.0
    r, R = rng.r, rng.R
    x = p / q
    with np.errstate(over="ignore", invalid="ignore"):
        fx = gen.f(x)
        fr, fR = gen.f(np.float64(r)), gen.f(np.float64(R))
        terms = ((R - x) * (fr - fx) + (x - r) * (fR - fx)) / (R - r)
        value = np.sum(q * terms)
    return _finite(value, f"beta gap[{gen.name}]")


def rho_gap(gen: Generator, P, Q) -> float:
    """``rho(P||Q) - C_f(P||Q) = sum q_i [(x_i - 1) f'(x_i) - f(x_i)]``."""
    p, q = _pair(P, Q)
    x = p / q
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.sum(q * ((x - 1.0) * gen.f1(x) - gen.f(x)))
    return _finite(value, f"rho gap[{gen.name}]")


def range_gap(P, Q, rng: RatioRange) -> float:
    """``(R - 1)(1 - r) - chi^2(P||Q) = sum q_i (R - x_i)(x_i - r) >= 0``."""
    p, q = _pair(P, Q)
    x = p / q
    return _finite(np.sum(q * (rng.R - x) * (x - rng.r)), "range gap")


@dataclass(frozen=True)
class GeneratorReport:
    """Outcome of :func:`check_generator`; ``failures`` names each violated condition."""

    name: str
    f_at_one: float
    f2_at_one: float
    min_f2: float
    max_rel_err_f1: float
    max_rel_err_f2: float
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


_GRID = np.logspace(-3.0, 3.0, 200)


def _rel_err(approx, exact, differenced, x):
    # |F(x)|/x is the natural size of F'; below it the difference quotient is rounding noise
    scale = np.maximum(np.abs(exact), np.abs(differenced) / x)
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(np.abs(approx - exact) / scale))


def check_generator(gen: Generator, grid: np.ndarray | None = None) -> GeneratorReport:
    """Check normalization, convexity and both derivatives on a log-spaced grid.

    Derivatives are compared with central differences of step ``1e-6 * x``.
    Errors are relative to ``max(|F'(x)|, |F(x)| / x)`` for the differenced
    function ``F``, since the quotient cannot resolve a derivative far below
    that scale in double precision. The report passes iff ``|f(1)| <= 1e-12``,
    ``f''`` is positive on the grid and both derivative errors are at most
    ``1e-6``.
    """
    x = _GRID if grid is None else np.asarray(grid, dtype=np.float64)
    h = 1e-6 * x
    with np.errstate(all="ignore"):
        f_at_one = float(gen.f(np.float64(1.0)))
        f2_at_one = float(gen.f2(np.float64(1.0)))
        f2 = gen.f2(x)
        fd1 = (gen.f(x + h) - gen.f(x - h)) / (2.0 * h)
        fd2 = (gen.f1(x + h) - gen.f1(x - h)) / (2.0 * h)
        f0, f1 = gen.f(x), gen.f1(x)
        err1 = _rel_err(fd1, f1, f0, x)
        err2 = _rel_err(fd2, f2, f1, x)
    min_f2 = float(np.min(f2))
    failures = []
    if not abs(f_at_one) <= 1e-12:
        failures.append("NormalizationViolation")
    if not min_f2 > 0.0:
        failures.append("ConvexityViolation")
    if not err1 <= 1e-6:
        failures.append("FirstDerivativeMismatch")
    if not err2 <= 1e-6:
        failures.append("SecondDerivativeMismatch")
    return GeneratorReport(gen.name, f_at_one, f2_at_one, min_f2, err1, err2, tuple(failures))
