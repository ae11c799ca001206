"""Strictly positive probability vectors, likelihood-ratio ranges and seeded sampling.

Everything here is a pure function of its arguments. ``Distribution`` wraps a
read-only float64 array, so instances can be shared freely between callers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    BadDimension,
    InvalidRange,
    LengthMismatch,
    NonFinite,
    NonPositiveEntry,
    SumMismatch,
    TooShort,
)

__all__ = [
    "SUM_ATOL",
    "SAMPLE_FLOOR",
    "Distribution",
    "RatioRange",
    "validate",
    "likelihood_ratios",
    "ratio_range",
    "sample",
]

SUM_ATOL = 1e-9
SAMPLE_FLOOR = 1e-12
_SEED_MASK = (1 << 64) - 1


def _checked_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).ravel()
    if not np.all(np.isfinite(arr)):
        raise NonFinite("distribution contains NaN or infinite entries")
    if arr.size < 2:
        raise TooShort(f"distribution needs at least 2 entries, got {arr.size}")
    bad = np.flatnonzero(arr <= 0.0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveEntry(f"entry {i} is {arr[i]!r}; every probability must be > 0")
    # fsum is exactly rounded, so the check does not depend on n or ordering
    total = math.fsum(arr.tolist())
    if abs(total - 1.0) > SUM_ATOL:
        raise SumMismatch(f"entries sum to {total!r}, not 1 within {SUM_ATOL:g}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Distribution:
    """A point of the open probability simplex.

    Construction validates ``probs`` and never renormalizes it.

    >>> Distribution([0.25, 0.75]).n
    2
    """

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _checked_array(self.probs))

    @property
    def n(self) -> int:
        return int(self.probs.size)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.probs.tolist())

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.probs
        return self.probs.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash(self.probs.tobytes())

    def __repr__(self):
        return f"Distribution(n={self.n}, probs={self.probs.tolist()!r})"


@dataclass(frozen=True)
class RatioRange:
    """Bounds ``r <= p_i / q_i <= R`` on the likelihood ratios, with ``r <= 1 <= R``."""

    r: float
    R: float

    def __post_init__(self):
        r, R = float(self.r), float(self.R)
        if not (math.isfinite(r) and math.isfinite(R)):
            raise InvalidRange(f"range endpoints must be finite, got r={r!r}, R={R!r}")
        if not (0.0 < r <= 1.0 <= R):
            raise InvalidRange(f"need 0 < r <= 1 <= R, got r={r!r}, R={R!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "R", R)

    @property
    def degenerate(self) -> bool:
        return self.r == self.R

    @property
    def width(self) -> float:
        return self.R - self.r


def validate(values: Iterable[float] | Distribution) -> Distribution:
    """Return ``values`` as a :class:`Distribution`, raising if it is off the simplex.

    Raises
    ------
    NonFinite, TooShort, NonPositiveEntry, SumMismatch
        In that order of precedence.
    """
    if isinstance(values, Distribution):
        return values
    return Distribution(values)


def _as_distribution(P) -> Distribution:
    return P if isinstance(P, Distribution) else Distribution(P)


def likelihood_ratios(P, Q) -> np.ndarray:
    """Elementwise ``p_i / q_i`` for two distributions of equal length."""
    P, Q = _as_distribution(P), _as_distribution(Q)
    if P.n != Q.n:
        raise LengthMismatch(f"lengths differ: {P.n} vs {Q.n}")
    return P.probs / Q.probs


def ratio_range(P, Q) -> RatioRange:
    """Tightest ``(r, R)`` containing every ratio ``p_i / q_i``, widened to contain 1.

    >>> ratio_range([0.2, 0.3, 0.5], [0.4, 0.3, 0.3])
    RatioRange(r=0.5, R=1.6666666666666667)
    """
    x = likelihood_ratios(P, Q)
    return RatioRange(min(float(x.min()), 1.0), max(float(x.max()), 1.0))


def sample(n: int, seed: int, concentration: float = 1.0) -> Distribution:
    """Draw one point from a symmetric Dirichlet distribution.

    The draw depends only on ``(n, seed, concentration)``. Entries are floored
    at ``SAMPLE_FLOOR`` and renormalized so the result is strictly positive
    even for tiny concentrations.
    """
    if int(n) != n or n < 2:
        raise BadDimension(f"simplex dimension must be an integer >= 2, got {n!r}")
    if not (concentration > 0 and math.isfinite(concentration)):
        raise ValueError(f"concentration must be a positive finite real, got {concentration!r}")
    rng = np.random.default_rng(int(seed) & _SEED_MASK)
    x = rng.dirichlet(np.full(int(n), float(concentration)))
    x = np.where(np.isfinite(x), x, 0.0)
    x = np.maximum(x, SAMPLE_FLOOR)
    x = x / x.sum()
    # renormalizing can push a floored entry a hair below the floor
    x = np.maximum(x, SAMPLE_FLOOR)
    return Distribution(x)
