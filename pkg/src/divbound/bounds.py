"""Two-sided comparisons of triangular and symmetric chi-square divergences.

The comparisons come from the weight ``g(x) = x^(2-s) f''(x)``: whenever
``m <= g <= M`` on the ratio range, ``C_f`` is sandwiched between ``m`` and
``M`` times the type-``s`` relative information, and the same holds for the
``rho`` gaps and the ``beta`` gaps. This module computes ``g``, its extrema
and every resulting inequality chain as a :class:`BoundChainReport`.

Quantities of the form ``beta - C`` and ``(R - 1)(1 - r) - chi^2`` are always
evaluated as sums of per-ratio gaps (see :mod:`divbound.csiszar`). Forming
them as differences of two large numbers makes the two-point case, where they
vanish exactly, drown in rounding noise once a large coefficient multiplies
them.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from . import csiszar, measures
from .csiszar import SYMMETRIC_CHI2, TRIANGULAR, BoundSet, Generator
from .errors import UnsupportedRegime
from .simplex import RatioRange, ratio_range, validate

__all__ = [
    "Family",
    "LINK_RTOL",
    "CUBE_ROOT_2",
    "ExtremaPair",
    "Link",
    "BoundChainReport",
    "PairStats",
    "PROPOSITION_IDS",
    "g_function",
    "g_derivative",
    "extrema_g",
    "closed_form_bounds",
    "as_printed",
    "theorem31_chain",
    "family_chain",
    "theorem32_chain",
    "proposition_chain",
    "constants_table",
]

LINK_RTOL = 1e-9
CUBE_ROOT_2 = 2.0 ** (1.0 / 3.0)


class Family(str, Enum):
    DELTA = "delta"
    PSI = "psi"
    PHI_S_BASE = "phi_s_base"


_GENERATORS = {Family.DELTA: TRIANGULAR, Family.PSI: SYMMETRIC_CHI2}


def g_function(family: Family | str, s: float, x):
    """Weight ``x^(2-s) f''(x)`` of a family; the base family is identically 1."""
    family = Family(family)
    x = np.asarray(x, dtype=np.float64)
    if family is Family.DELTA:
        out = 8.0 * np.power(x, 2.0 - s) / (x + 1.0) ** 3
    elif family is Family.PSI:
        out = 2.0 * np.power(x, -1.0 - s) * (x ** 3 + 1.0)
    else:
        out = np.ones_like(x)
    return float(out) if out.ndim == 0 else out


def g_derivative(family: Family | str, s: float, x):
    family = Family(family)
    x = np.asarray(x, dtype=np.float64)
    if family is Family.DELTA:
        out = -8.0 * np.power(x, 1.0 - s) * ((s + 1.0) * x + (s - 2.0)) / (x + 1.0) ** 4
    elif family is Family.PSI:
        out = -2.0 * np.power(x, -2.0 - s) * ((s - 2.0) * x ** 3 + (s + 1.0))
    else:
        out = np.zeros_like(x)
    return float(out) if out.ndim == 0 else out


# stationary points where the sign analysis of g' gives them in closed form
_KNOWN_STATIONARY = {
    (Family.DELTA, 0.0): 2.0,
    (Family.DELTA, 0.5): 1.0,
    (Family.DELTA, 1.0): 0.5,
    (Family.PSI, 0.0): 1.0 / CUBE_ROOT_2,
    (Family.PSI, 0.5): 1.0,
    (Family.PSI, 1.0): CUBE_ROOT_2,
}

# global extremum of g over (0, inf) for the three orders treated on their own
_GLOBAL_CONSTANTS = {
    (Family.DELTA, 0.0): 32.0 / 27.0,
    (Family.DELTA, 0.5): 1.0,
    (Family.DELTA, 1.0): 32.0 / 27.0,
    (Family.PSI, 0.0): 3.0 * CUBE_ROOT_2,
    (Family.PSI, 0.5): 4.0,
    (Family.PSI, 1.0): 3.0 * CUBE_ROOT_2,
}


@dataclass(frozen=True)
class ExtremaPair:
    """Infimum ``m`` and supremum ``M`` of ``g`` with the points where they occur.

    ``m_attained`` is false when the infimum is only approached at the
    boundary of ``(0, inf)``. ``bounded_above`` is false when the supremum is
    infinite; ``M`` is then ``inf`` and must not enter any arithmetic.
    """

    m: float
    M: float
    attained_at_m: float
    attained_at_M: float
    m_attained: bool = True
    bounded_above: bool = True


def _interior_stationary(family: Family, s: float, lo: float, hi: float) -> float | None:
    known = _KNOWN_STATIONARY.get((family, s))
    if known is not None:
        return known if lo <= known <= hi else None
    dlo, dhi = g_derivative(family, s, lo), g_derivative(family, s, hi)
    if dlo == 0.0:
        return lo
    if dhi == 0.0:
        return hi
    if (dlo > 0) == (dhi > 0):
        return None
    return brentq(lambda t: g_derivative(family, s, t), lo, hi, xtol=1e-12, rtol=1e-15)


def extrema_g(family: Family | str, s: float, rng: RatioRange | None = None) -> ExtremaPair:
    """Extrema of ``g`` over ``[r, R]``, or over ``(0, inf)`` when ``rng`` is None.

    For ``s <= -1`` both weights increase and for ``s >= 2`` both decrease, so
    the extrema sit at the endpoints. Between those orders each weight has a
    single interior stationary point (a maximum for the triangular weight, a
    minimum for the chi-square one), found in closed form for s in
    {0, 1/2, 1} and by root bracketing of ``g'`` otherwise.

    The unbounded range is only supported for s in {0, 1/2, 1}.
    """
    family = Family(family)
    s = float(s)
    if family is Family.PHI_S_BASE:
        at = 1.0 if rng is None else rng.r
        return ExtremaPair(1.0, 1.0, at, at)

    if rng is None:
        const = _GLOBAL_CONSTANTS.get((family, s))
        if const is None:
            raise UnsupportedRegime(
                f"global extrema of the {family.value} weight are only tabulated for "
                f"s in {{0, 0.5, 1}}, got s={s!r}"
            )
        x_star = _KNOWN_STATIONARY[(family, s)]
        if family is Family.DELTA:
            # g -> 0 at both ends of (0, inf)
            return ExtremaPair(0.0, const, 0.0, x_star, m_attained=False)
        return ExtremaPair(const, math.inf, x_star, math.inf, bounded_above=False)

    r, R = rng.r, rng.R
    gr, gR = g_function(family, s, r), g_function(family, s, R)
    increasing = s <= -1.0
    decreasing = s >= 2.0
    if rng.degenerate:
        return ExtremaPair(gr, gr, r, r)
    if increasing:
        return ExtremaPair(gr, gR, r, R)
    if decreasing:
        return ExtremaPair(gR, gr, R, r)

    lo_end = (gr, r) if gr <= gR else (gR, R)
    hi_end = (gr, r) if gr >= gR else (gR, R)
    x_star = _interior_stationary(family, s, r, R)
    if family is Family.DELTA:
        m, at_m = lo_end
        M, at_M = hi_end
        if x_star is not None:
            M, at_M = max((g_function(family, s, x_star), x_star), hi_end)
        return ExtremaPair(m, M, at_m, at_M)
    M, at_M = hi_end
    m, at_m = lo_end
    if x_star is not None:
        m, at_m = min((g_function(family, s, x_star), x_star), lo_end)
    return ExtremaPair(m, M, at_m, at_M)


def closed_form_bounds(family: Family | str, rng: RatioRange) -> BoundSet:
    """``(alpha, beta, gamma)`` of the triangular or chi-square generator, written out.

    The chi-square constants follow from the secant and slope of
    ``f(x) = (x - 1)^2 (x + 1)/x``: ``beta = (R-1)(1-r)(1+rR)/(rR)`` and
    ``gamma = 2 + (R + r)/(rR)^2``.
    """
    family = Family(family)
    r, R = rng.r, rng.R
    if family is Family.DELTA:
        if rng.degenerate:
            return BoundSet(0.0, 0.0, 1.0, rng)
        bracket = (R - 1.0) * (R + 3.0) / (R + 1.0) ** 2 + (1.0 - r) * (r + 3.0) / (r + 1.0) ** 2
        alpha = 0.25 * (R - r) * bracket
        beta = 2.0 * (R - 1.0) * (1.0 - r) / ((R + 1.0) * (1.0 + r))
        gamma = bracket / (R - r)
        return BoundSet(alpha, beta, gamma, rng)
    if family is Family.PSI:
        rR = r * R
        gamma = 2.0 + (R + r) / (rR * rR)
        beta = (R - 1.0) * (1.0 - r) * (1.0 + rR) / rR
        return BoundSet(0.25 * (R - r) ** 2 * gamma, beta, gamma, rng)
    raise ValueError(f"no closed-form bound set for family {family.value!r}")


class _AsPrinted:
    """Coefficients exactly as they appear in the source derivation, typos included.

    Only used to report where they disagree with the forms obtained from the
    general extrema of ``g``; no chain is built from them.
    """

    @staticmethod
    def delta_beta_coefficients(s: float, rng: RatioRange) -> tuple[float, float]:
        r, R = rng.r, rng.R
        return R ** (1.0 - s) / (R + 1.0) ** 2, r ** (1.0 - s) / (r + 1.0) ** 2

    @staticmethod
    def psi_rho_coefficients(s: float, rng: RatioRange) -> tuple[float, float]:
        r = rng.r
        c = 2.0 * (r ** 3 + 1.0) / r ** (1.0 + s)
        return c, c

    @staticmethod
    def psi_beta(rng: RatioRange) -> float:
        r, R = rng.r, rng.R
        return (R - 1.0) * (1.0 - r) * (R + r)

    @staticmethod
    def psi_gamma(rng: RatioRange) -> float:
        r, R = rng.r, rng.R
        return 2.0 / measures.power_mean(2.0, r, R) - 1.0 / measures.power_mean(1.0, r, R)

    @staticmethod
    def psi_alpha(rng: RatioRange) -> float:
        return 0.25 * rng.width ** 2 * _AsPrinted.psi_gamma(rng)


as_printed = _AsPrinted()


@dataclass(frozen=True)
class Link:
    """One inequality ``lhs <= rhs`` with its slack ``rhs - lhs``.

    The link passes when ``slack >= -tolerance``. Skipped links (an infinite
    coefficient, for instance) carry NaN values and always pass.
    """

    label: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    passed: bool
    applicable: bool = True

    @classmethod
    def make(cls, label: str, lhs: float, rhs: float, scale: float = 1.0) -> "Link":
        lhs, rhs = float(lhs), float(rhs)
        tol = scale * LINK_RTOL * max(1.0, abs(lhs), abs(rhs))
        slack = rhs - lhs
        return cls(label, lhs, rhs, slack, tol, bool(slack >= -tol))

    @classmethod
    def skipped(cls, label: str) -> "Link":
        nan = float("nan")
        return cls(label, nan, nan, nan, nan, True, applicable=False)

    @property
    def equality(self) -> bool:
        """True when both sides agree to within the tolerance."""
        return self.applicable and abs(self.slack) <= self.tolerance


@dataclass(frozen=True)
class BoundChainReport:
    chain_id: str
    links: tuple[Link, ...]
    inputs: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    @property
    def applicable_links(self) -> tuple[Link, ...]:
        return tuple(link for link in self.links if link.applicable)

    @property
    def violations(self) -> tuple[Link, ...]:
        return tuple(link for link in self.links if not link.passed)

    @property
    def min_slack(self) -> float:
        slacks = [link.slack for link in self.applicable_links]
        return min(slacks) if slacks else math.inf

    def link(self, label: str) -> Link:
        for item in self.links:
            if item.label == label:
                return item
        raise KeyError(label)


class PairStats:
    """Lazily evaluated measures of one ``(P, Q)`` pair, shared between chains."""

    def __init__(self, P, Q):
        self.P = validate(P)
        self.Q = validate(Q)
        self.range = ratio_range(self.P, self.Q)
        self._phi = {}
        self._cache = {}

    def _get(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = fn()
            return value

    @functools.cached_property
    def x(self) -> np.ndarray:
        return self.P.probs / self.Q.probs

    def measure(self, kind: str, reverse: bool = False) -> float:
        a, b = (self.Q, self.P) if reverse else (self.P, self.Q)
        return self._get(("m", kind, reverse), lambda: measures.divergence(kind, a, b))

    def phi(self, s: float, reverse: bool = False) -> float:
        a, b = (self.Q, self.P) if reverse else (self.P, self.Q)
        return self._get(("phi", float(s), reverse), lambda: measures.phi_s(s, a, b))

    def c_f(self, gen: Generator) -> float:
        return self._get(("c", gen.name), lambda: csiszar.c_f(gen, self.P, self.Q))

    def rho(self, gen: Generator) -> float:
        return self._get(("rho", gen.name), lambda: csiszar.rho_c_f(gen, self.P, self.Q))

    def beta_gap(self, gen: Generator) -> float:
        return self._get(
            ("bgap", gen.name), lambda: csiszar.beta_gap(gen, self.P, self.Q, self.range)
        )

    def rho_gap(self, gen: Generator) -> float:
        return self._get(("rgap", gen.name), lambda: csiszar.rho_gap(gen, self.P, self.Q))

    def bound_set(self, gen: Generator) -> BoundSet:
        return self._get(("bs", gen.name), lambda: csiszar.bound_set(gen, self.range))

    @functools.cached_property
    def range_gap(self) -> float:
        """``(R - 1)(1 - r) - chi^2(P||Q)``, termwise."""
        return csiszar.range_gap(self.P, self.Q, self.range)

    @functools.cached_property
    def reverse_range_gap(self) -> float:
        """``(R - 1)(1 - r)/(rR) - chi^2(Q||P)``, termwise in ``y = 1/x``."""
        if self.range.degenerate:
            return 0.0
        y = 1.0 / self.x
        a, b = 1.0 / self.range.r, 1.0 / self.range.R
        return float(np.sum(self.P.probs * (a - y) * (y - b)))

    def echo(self, **extra) -> dict:
        out = {"r": self.range.r, "R": self.range.R, "n": self.P.n}
        out.update(extra)
        return out


def _stats(P, Q, stats: PairStats | None) -> PairStats:
    return stats if stats is not None else PairStats(P, Q)


def theorem31_chain(
    gen: Generator, P=None, Q=None, *, stats: PairStats | None = None, tolerance_scale: float = 1.0
) -> BoundChainReport:
    """Generic upper bounds on ``C_f``: by ``rho``, ``alpha`` and ``beta``, and the gap chain."""
    st = _stats(P, Q, stats)
    C = st.c_f(gen)
    rho = st.rho(gen)
    bs = st.bound_set(gen)
    bgap = st.beta_gap(gen)
    mid = bs.gamma * st.range_gap
    k = tolerance_scale
    links = (
        Link.make("0 <= C", 0.0, C, k),
        Link.make("C <= rho", C, rho, k),
        Link.make("C <= alpha", C, bs.alpha, k),
        Link.make("C <= beta", C, bs.beta, k),
        Link.make("0 <= beta - C", 0.0, bgap, k),
        Link.make("beta - C <= gamma*((R-1)(1-r) - chi2)", bgap, mid, k),
        Link.make("gamma*((R-1)(1-r) - chi2) <= alpha", mid, bs.alpha, k),
    )
    echo = st.echo(generator=gen.name, C=C, rho=rho, alpha=bs.alpha, beta=bs.beta, gamma=bs.gamma)
    return BoundChainReport(f"T3.1[{gen.name}]", links, echo)


def family_chain(
    family: Family | str, P=None, Q=None, *, stats: PairStats | None = None,
    tolerance_scale: float = 1.0,
) -> BoundChainReport:
    """The generic upper-bound chain for one family, with every ingredient in closed form."""
    family = Family(family)
    st = _stats(P, Q, stats)
    if family is Family.DELTA:
        C, rho, gen, cid = st.measure("triangular"), st.measure("rho_delta"), TRIANGULAR, "T4.1"
    elif family is Family.PSI:
        C, rho, gen, cid = st.measure("sym_chi2"), st.measure("rho_psi"), SYMMETRIC_CHI2, "T5.1"
    else:
        raise ValueError("family_chain needs the delta or psi family")
    bs = closed_form_bounds(family, st.range)
    bgap = st.beta_gap(gen)
    mid = bs.gamma * st.range_gap
    k = tolerance_scale
    links = (
        Link.make("0 <= C", 0.0, C, k),
        Link.make("C <= rho", C, rho, k),
        Link.make("C <= alpha", C, bs.alpha, k),
        Link.make("C <= beta", C, bs.beta, k),
        Link.make("0 <= beta - C", 0.0, bgap, k),
        Link.make("beta - C <= gamma*((R-1)(1-r) - chi2)", bgap, mid, k),
        Link.make("gamma*((R-1)(1-r) - chi2) <= alpha", mid, bs.alpha, k),
    )
    echo = st.echo(C=C, rho=rho, alpha=bs.alpha, beta=bs.beta, gamma=bs.gamma)
    return BoundChainReport(cid, links, echo)


def _starred(st: PairStats, family: Family) -> float:
    return st.measure("delta_star" if family is Family.DELTA else "psi_star")


def theorem32_chain(
    family: Family | str,
    s: float,
    P=None,
    Q=None,
    *,
    stats: PairStats | None = None,
    extrema: ExtremaPair | None = None,
    tolerance_scale: float = 1.0,
) -> BoundChainReport:
    """Sandwich of the family's divergence between ``m`` and ``M`` times ``Phi_s``.

    Three chains are produced: on the divergences themselves, on their
    ``rho`` gaps (the starred measures) and on their ``beta`` gaps. The
    extrema default to those of ``g`` over the pair's own ratio range.
    """
    family = Family(family)
    if family not in _GENERATORS:
        raise ValueError("theorem32_chain needs the delta or psi family")
    s = float(s)
    st = _stats(P, Q, stats)
    ext = extrema if extrema is not None else extrema_g(family, s, st.range)
    gen = _GENERATORS[family]
    phi_gen = csiszar.phi_generator(s)

    C = st.measure("triangular" if family is Family.DELTA else "sym_chi2")
    phi = st.phi(s)
    star = _starred(st, family)
    phi_rho_gap = st.rho_gap(phi_gen)
    bgap = st.beta_gap(gen)
    phi_bgap = st.beta_gap(phi_gen)

    k = tolerance_scale
    m, M = ext.m, ext.M
    links = [
        Link.make("m*phi <= C", m * phi, C, k),
        Link.make("C <= M*phi", C, M * phi, k) if ext.bounded_above else Link.skipped("C <= M*phi"),
        Link.make("m*(rho_phi - phi) <= rho_C - C", m * phi_rho_gap, star, k),
        Link.make("rho_C - C <= M*(rho_phi - phi)", star, M * phi_rho_gap, k)
        if ext.bounded_above else Link.skipped("rho_C - C <= M*(rho_phi - phi)"),
        Link.make("m*(beta_phi - phi) <= beta_C - C", m * phi_bgap, bgap, k),
        Link.make("beta_C - C <= M*(beta_phi - phi)", bgap, M * phi_bgap, k)
        if ext.bounded_above else Link.skipped("beta_C - C <= M*(beta_phi - phi)"),
    ]
    cid = f"{'T4.2' if family is Family.DELTA else 'T5.2'}[s={s:g}]"
    echo = st.echo(s=s, m=m, M=M if ext.bounded_above else None, C=C, phi=phi, C_star=star)
    return BoundChainReport(cid, tuple(links), echo)


# ---------------------------------------------------------------- propositions


def _beta_phi(s: float, rng: RatioRange) -> float:
    return csiszar.bound_set(csiszar.phi_generator(s), rng).beta


def _sqrt_beta(rng: RatioRange) -> float:
    # 4 (sqrt R - 1)(1 - sqrt r)/(sqrt R + sqrt r), the s = 1/2 secant bound
    a, b = math.sqrt(rng.R), math.sqrt(rng.r)
    return 4.0 * (a - 1.0) * (1.0 - b) / (a + b)


def _sqrt_rho(st: PairStats) -> float:
    # 2 sum (q_i - p_i) sqrt(q_i / p_i)
    p, q = st.P.probs, st.Q.probs
    return float(2.0 * np.sum((q - p) * np.sqrt(q / p)))


def _prop_4_1(st, k):
    r, R = st.range.r, st.range.R
    lo, hi = 4 * r ** 3 / (r + 1) ** 3, 4 * R ** 3 / (R + 1) ** 3
    chi_qp = st.measure("chi2", reverse=True)
    D, Ds = st.measure("triangular"), st.measure("delta_star")
    rho_bracket = 3.0 * st.phi(3.0, reverse=True) - chi_qp
    bgap = st.beta_gap(TRIANGULAR)
    rgap = st.reverse_range_gap
    return (
        Link.make("4r^3/(r+1)^3 chi2(Q||P) <= Delta", lo * chi_qp, D, k),
        Link.make("Delta <= 4R^3/(R+1)^3 chi2(Q||P)", D, hi * chi_qp, k),
        Link.make("8r^3/(r+1)^3 [3 phi3(Q||P) - chi2(Q||P)] <= Delta*", 2 * lo * rho_bracket, Ds, k),
        Link.make("Delta* <= 8R^3/(R+1)^3 [3 phi3(Q||P) - chi2(Q||P)]", Ds, 2 * hi * rho_bracket, k),
        Link.make("4r^3/(r+1)^3 [(R-1)(1-r)/(rR) - chi2(Q||P)] <= beta_Delta - Delta", lo * rgap, bgap, k),
        Link.make("beta_Delta - Delta <= 4R^3/(R+1)^3 [(R-1)(1-r)/(rR) - chi2(Q||P)]", bgap, hi * rgap, k),
    )


def _prop_4_2(st, k):
    r, R = st.range.r, st.range.R
    lo, hi = 4 / (R + 1) ** 3, 4 / (r + 1) ** 3
    chi = st.measure("chi2")
    D, Ds = st.measure("triangular"), st.measure("delta_star")
    bgap = st.beta_gap(TRIANGULAR)
    g = st.range_gap
    return (
        Link.make("4/(R+1)^3 chi2 <= Delta", lo * chi, D, k),
        Link.make("Delta <= 4/(r+1)^3 chi2", D, hi * chi, k),
        Link.make("4/(R+1)^3 chi2 <= Delta*", lo * chi, Ds, k),
        Link.make("Delta* <= 4/(r+1)^3 chi2", Ds, hi * chi, k),
        Link.make("4/(R+1)^3 [(R-1)(1-r) - chi2] <= beta_Delta - Delta", lo * g, bgap, k),
        Link.make("beta_Delta - Delta <= 4/(r+1)^3 [(R-1)(1-r) - chi2]", bgap, hi * g, k),
    )


def _prop_4_3(st, k):
    c = 32.0 / 27.0
    D, Ds = st.measure("triangular"), st.measure("delta_star")
    k_qp, chi_qp = st.measure("kl", reverse=True), st.measure("chi2", reverse=True)
    beta_d = closed_form_bounds(Family.DELTA, st.range).beta
    beta_0 = _beta_phi(0.0, st.range)
    return (
        Link.make("0 <= Delta", 0.0, D, k),
        Link.make("Delta <= 32/27 K(Q||P)", D, c * k_qp, k),
        Link.make("0 <= Delta*", 0.0, Ds, k),
        Link.make("Delta* <= 32/27 [chi2(Q||P) - K(Q||P)]", Ds, c * (chi_qp - k_qp), k),
        Link.make("0 <= 32/27 K(Q||P) - Delta", 0.0, c * k_qp - D, k),
        Link.make("32/27 K(Q||P) - Delta <= 32/27 beta_phi0 - beta_Delta", c * k_qp - D, c * beta_0 - beta_d, k),
    )


def _prop_4_4(st, k):
    D, Ds, h = st.measure("triangular"), st.measure("delta_star"), st.measure("hellinger")
    beta_d = closed_form_bounds(Family.DELTA, st.range).beta
    return (
        Link.make("0 <= Delta", 0.0, D, k),
        Link.make("Delta <= 4h", D, 4.0 * h, k),
        Link.make("0 <= Delta*", 0.0, Ds, k),
        Link.make("Delta* <= 2 sum (q-p) sqrt(q/p) - 4h", Ds, _sqrt_rho(st) - 4.0 * h, k),
        Link.make("0 <= 4h - Delta", 0.0, 4.0 * h - D, k),
        Link.make("4h - Delta <= beta_phi1/2 - beta_Delta", 4.0 * h - D, _sqrt_beta(st.range) - beta_d, k),
    )


def _prop_4_5(st, k):
    c = 32.0 / 27.0
    D, Ds = st.measure("triangular"), st.measure("delta_star")
    k_pq, k_qp = st.measure("kl"), st.measure("kl", reverse=True)
    beta_d = closed_form_bounds(Family.DELTA, st.range).beta
    beta_1 = _beta_phi(1.0, st.range)
    return (
        Link.make("0 <= Delta", 0.0, D, k),
        Link.make("Delta <= 32/27 K(P||Q)", D, c * k_pq, k),
        Link.make("0 <= Delta*", 0.0, Ds, k),
        Link.make("Delta* <= 32/27 K(Q||P)", Ds, c * k_qp, k),
        Link.make("0 <= 32/27 K(P||Q) - Delta", 0.0, c * k_pq - D, k),
        Link.make("32/27 K(P||Q) - Delta <= 32/27 beta_phi1 - beta_Delta", c * k_pq - D, c * beta_1 - beta_d, k),
    )


def _prop_5_1(st, k):
    r, R = st.range.r, st.range.R
    lo, hi = r ** 3 + 1.0, R ** 3 + 1.0
    chi_qp = st.measure("chi2", reverse=True)
    S, Ss = st.measure("sym_chi2"), st.measure("psi_star")
    rho_bracket = 3.0 * st.phi(3.0, reverse=True) - chi_qp
    bgap = st.beta_gap(SYMMETRIC_CHI2)
    rgap = st.reverse_range_gap
    return (
        Link.make("(r^3+1) chi2(Q||P) <= Psi", lo * chi_qp, S, k),
        Link.make("Psi <= (R^3+1) chi2(Q||P)", S, hi * chi_qp, k),
        Link.make("2(r^3+1) [3 phi3(Q||P) - chi2(Q||P)] <= Psi*", 2 * lo * rho_bracket, Ss, k),
        Link.make("Psi* <= 2(R^3+1) [3 phi3(Q||P) - chi2(Q||P)]", Ss, 2 * hi * rho_bracket, k),
        Link.make("(r^3+1) [(R-1)(1-r)/(rR) - chi2(Q||P)] <= beta_Psi - Psi", lo * rgap, bgap, k),
        Link.make("beta_Psi - Psi <= (R^3+1) [(R-1)(1-r)/(rR) - chi2(Q||P)]", bgap, hi * rgap, k),
    )


def _prop_5_2(st, k):
    r, R = st.range.r, st.range.R
    lo, hi = (R ** 3 + 1.0) / R ** 3, (r ** 3 + 1.0) / r ** 3
    chi = st.measure("chi2")
    S, Ss = st.measure("sym_chi2"), st.measure("psi_star")
    bgap = st.beta_gap(SYMMETRIC_CHI2)
    g = st.range_gap
    return (
        Link.make("(R^3+1)/R^3 chi2 <= Psi", lo * chi, S, k),
        Link.make("Psi <= (r^3+1)/r^3 chi2", S, hi * chi, k),
        Link.make("(R^3+1)/R^3 chi2 <= Psi*", lo * chi, Ss, k),
        Link.make("Psi* <= (r^3+1)/r^3 chi2", Ss, hi * chi, k),
        Link.make("(R^3+1)/R^3 [(R-1)(1-r) - chi2] <= beta_Psi - Psi", lo * g, bgap, k),
        Link.make("beta_Psi - Psi <= (r^3+1)/r^3 [(R-1)(1-r) - chi2]", bgap, hi * g, k),
    )


def _prop_5_3(st, k):
    c = 3.0 * CUBE_ROOT_2
    S, Ss = st.measure("sym_chi2"), st.measure("psi_star")
    k_qp, chi_qp = st.measure("kl", reverse=True), st.measure("chi2", reverse=True)
    beta_s = closed_form_bounds(Family.PSI, st.range).beta
    beta_0 = _beta_phi(0.0, st.range)
    return (
        Link.make("0 <= 3cbrt2 K(Q||P)", 0.0, c * k_qp, k),
        Link.make("3cbrt2 K(Q||P) <= Psi", c * k_qp, S, k),
        Link.make("0 <= 3cbrt2 [chi2(Q||P) - K(Q||P)]", 0.0, c * (chi_qp - k_qp), k),
        Link.make("3cbrt2 [chi2(Q||P) - K(Q||P)] <= Psi*", c * (chi_qp - k_qp), Ss, k),
        Link.make("0 <= Psi - 3cbrt2 K(Q||P)", 0.0, S - c * k_qp, k),
        Link.make("Psi - 3cbrt2 K(Q||P) <= beta_Psi - 3cbrt2 beta_phi0", S - c * k_qp, beta_s - c * beta_0, k),
    )


def _prop_5_4(st, k):
    S, Ss, h = st.measure("sym_chi2"), st.measure("psi_star"), st.measure("hellinger")
    h_qp = st.measure("hellinger", reverse=True)
    beta_s = closed_form_bounds(Family.PSI, st.range).beta
    rho_part = 16.0 * (0.25 * _sqrt_rho(st) - h_qp)
    return (
        Link.make("0 <= 16h", 0.0, 16.0 * h, k),
        Link.make("16h <= Psi", 16.0 * h, S, k),
        Link.make("0 <= 16 [1/2 sum (q-p) sqrt(q/p) - h(Q||P)]", 0.0, rho_part, k),
        Link.make("16 [1/2 sum (q-p) sqrt(q/p) - h(Q||P)] <= Psi*", rho_part, Ss, k),
        Link.make("0 <= Psi - 16h", 0.0, S - 16.0 * h, k),
        Link.make("Psi - 16h <= beta_Psi - 4 beta_phi1/2", S - 16.0 * h, beta_s - 4.0 * _sqrt_beta(st.range), k),
    )


def _prop_5_5(st, k):
    c = 3.0 * CUBE_ROOT_2
    S, Ss = st.measure("sym_chi2"), st.measure("psi_star")
    k_pq, k_qp = st.measure("kl"), st.measure("kl", reverse=True)
    beta_s = closed_form_bounds(Family.PSI, st.range).beta
    beta_1 = _beta_phi(1.0, st.range)
    return (
        Link.make("0 <= 3cbrt2 K(P||Q)", 0.0, c * k_pq, k),
        Link.make("3cbrt2 K(P||Q) <= Psi", c * k_pq, S, k),
        Link.make("0 <= 3cbrt2 K(Q||P)", 0.0, c * k_qp, k),
        Link.make("3cbrt2 K(Q||P) <= Psi*", c * k_qp, Ss, k),
        Link.make("0 <= Psi - 3cbrt2 K(P||Q)", 0.0, S - c * k_pq, k),
        Link.make("Psi - 3cbrt2 K(P||Q) <= beta_Psi - 3cbrt2 beta_phi1", S - c * k_pq, beta_s - c * beta_1, k),
    )


def _hm_remark(st, k):
    r, R = st.range.r, st.range.R
    one_minus_w = 1.0 - st.measure("harmonic_mean")
    chi, chi_qp = st.measure("chi2"), st.measure("chi2", reverse=True)
    k_pq, k_qp = st.measure("kl"), st.measure("kl", reverse=True)
    h = st.measure("hellinger")
    return (
        Link.make("2r^3/(r+1)^3 chi2(Q||P) <= 1 - W", 2 * r ** 3 / (r + 1) ** 3 * chi_qp, one_minus_w, k),
        Link.make("1 - W <= 2R^3/(R+1)^3 chi2(Q||P)", one_minus_w, 2 * R ** 3 / (R + 1) ** 3 * chi_qp, k),
        Link.make("2/(R+1)^3 chi2 <= 1 - W", 2 / (R + 1) ** 3 * chi, one_minus_w, k),
        Link.make("1 - W <= 2/(r+1)^3 chi2", one_minus_w, 2 / (r + 1) ** 3 * chi, k),
        Link.make("0 <= 1 - W", 0.0, one_minus_w, k),
        Link.make("1 - W <= 16/27 K(Q||P)", one_minus_w, 16.0 / 27.0 * k_qp, k),
        Link.make("1 - W <= 2h", one_minus_w, 2.0 * h, k),
        Link.make("1 - W <= 16/27 K(P||Q)", one_minus_w, 16.0 / 27.0 * k_pq, k),
    )


_PROPOSITIONS = {
    "P4.1": _prop_4_1,
    "P4.2": _prop_4_2,
    "P4.3": _prop_4_3,
    "P4.4": _prop_4_4,
    "P4.5": _prop_4_5,
    "P5.1": _prop_5_1,
    "P5.2": _prop_5_2,
    "P5.3": _prop_5_3,
    "P5.4": _prop_5_4,
    "P5.5": _prop_5_5,
    "HM-remark": _hm_remark,
}
PROPOSITION_IDS = tuple(_PROPOSITIONS)


def proposition_chain(
    pid: str, P=None, Q=None, *, stats: PairStats | None = None, tolerance_scale: float = 1.0
) -> BoundChainReport:
    """Evaluate one of the named special-case chains on a pair.

    ``P4.x`` bound the triangular discrimination, ``P5.x`` the symmetric
    chi-square divergence and ``HM-remark`` the harmonic mean divergence.
    Chains with range-dependent coefficients use the pair's own ratio range.
    """
    try:
        build = _PROPOSITIONS[pid]
    except KeyError:
        raise ValueError(f"unknown proposition id {pid!r}; expected one of {PROPOSITION_IDS}") from None
    st = _stats(P, Q, stats)
    return BoundChainReport(pid, build(st, tolerance_scale), st.echo())


def constants_table(rng: RatioRange, s_values: Sequence[float] = ()) -> list[tuple[str, float]]:
    """Bound constants of both families at ``rng`` and weight extrema for each ``s``.

    Rows are ``(label, value)``; unbounded suprema are reported as ``inf``.
    """
    rows = []
    for fam in (Family.DELTA, Family.PSI):
        bs = closed_form_bounds(fam, rng)
        rows += [
            (f"alpha_{fam.value}", bs.alpha),
            (f"beta_{fam.value}", bs.beta),
            (f"gamma_{fam.value}", bs.gamma),
        ]
    if not rng.degenerate:
        rows += [
            ("alpha_psi_as_printed", as_printed.psi_alpha(rng)),
            ("beta_psi_as_printed", as_printed.psi_beta(rng)),
            ("gamma_psi_as_printed", as_printed.psi_gamma(rng)),
        ]
    for s in s_values:
        s = float(s)
        bs = csiszar.bound_set(csiszar.phi_generator(s), rng)
        rows += [
            (f"alpha_phi[s={s:g}]", bs.alpha),
            (f"beta_phi[s={s:g}]", bs.beta),
            (f"gamma_phi[s={s:g}]", bs.gamma),
        ]
        for fam in (Family.DELTA, Family.PSI):
            ext = extrema_g(fam, s, rng)
            rows += [(f"m_{fam.value}[s={s:g}]", ext.m), (f"M_{fam.value}[s={s:g}]", ext.M)]
    return rows

