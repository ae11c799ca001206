"""Randomized verification of every registered inequality chain.

:func:`verify_all` evaluates the full chain registry on one pair,
:func:`fuzz` repeats that over seeded Dirichlet samples and aggregates the
results, and :func:`errata_compare` contrasts the printed and the derived
forms of the coefficients that disagree.

Every pair drawn by :func:`fuzz` depends only on ``(seed, dim, concentration,
trial)``, so serial and parallel schedules give identical summaries.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import bounds, csiszar, measures
from .bounds import BoundChainReport, Family, PairStats
from .csiszar import SYMMETRIC_CHI2, TRIANGULAR
from .simplex import RatioRange, sample

__all__ = [
    "DEFAULT_S_VALUES",
    "FuzzConfig",
    "FuzzSummary",
    "Violation",
    "ErrataEntry",
    "chain_ids",
    "verify_all",
    "registered_link_count",
    "fuzz",
    "errata_compare",
    "summary_to_dict",
    "summary_to_json",
    "trial_seed",
]

DEFAULT_S_VALUES = (-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0)
_SEED_MASK = (1 << 64) - 1

ChainBuilder = Callable[[PairStats, float], BoundChainReport]


def _registry(s_values: Sequence[float]) -> list[tuple[str, ChainBuilder]]:
    entries: list[tuple[str, ChainBuilder]] = []
    gens = [TRIANGULAR, SYMMETRIC_CHI2] + [csiszar.phi_generator(s) for s in s_values]
    seen = set()
    for gen in gens:
        if gen.name in seen:
            continue
        seen.add(gen.name)
        entries.append(
            (f"T3.1[{gen.name}]",
             lambda st, k, gen=gen: bounds.theorem31_chain(gen, stats=st, tolerance_scale=k))
        )
    for fam in (Family.DELTA, Family.PSI):
        cid = "T4.1" if fam is Family.DELTA else "T5.1"
        entries.append(
            (cid, lambda st, k, fam=fam: bounds.family_chain(fam, stats=st, tolerance_scale=k))
        )
        prefix = "T4.2" if fam is Family.DELTA else "T5.2"
        for s in sorted(set(float(v) for v in s_values)):
            entries.append(
                (f"{prefix}[s={s:g}]",
                 lambda st, k, fam=fam, s=s: bounds.theorem32_chain(
                     fam, s, stats=st, tolerance_scale=k))
            )
    for pid in bounds.PROPOSITION_IDS:
        entries.append(
            (pid, lambda st, k, pid=pid: bounds.proposition_chain(pid, stats=st, tolerance_scale=k))
        )
    entries.sort(key=lambda item: item[0])
    return entries


def chain_ids(s_values: Sequence[float] = DEFAULT_S_VALUES) -> list[str]:
    """Ids of every registered chain, in evaluation order."""
    return [cid for cid, _ in _registry(s_values)]


def verify_all(
    P, Q, s_values: Sequence[float] = DEFAULT_S_VALUES, *, tolerance_scale: float = 1.0
) -> list[BoundChainReport]:
    """Evaluate every registered chain on ``(P, Q)``, ordered by chain id.

    The registry holds the generic upper-bound chain for the triangular,
    chi-square and each type-``s`` generator, the closed-form family chains,
    the ``m``/``M`` sandwiches of both families for each ``s`` and every
    special-case proposition.

    >>> reports = verify_all([0.5, 0.5], [0.25, 0.75], [2])
    >>> all(rep.passed for rep in reports)
    True
    """
    stats = PairStats(P, Q)
    return [build(stats, tolerance_scale) for _, build in _registry(s_values)]


def registered_link_count(s_values: Sequence[float] = DEFAULT_S_VALUES) -> int:
    """Number of links one pair contributes when every link is applicable."""
    probe = verify_all([0.5, 0.5], [0.25, 0.75], s_values)
    return sum(len(rep.links) for rep in probe)


@dataclass(frozen=True)
class FuzzConfig:
    dims: tuple[int, ...] = (2, 4, 16)
    trials_per_dim: int = 1000
    seed: int = 42
    concentrations: tuple[float, ...] = (0.5, 1.0, 5.0)
    s_values: tuple[float, ...] = DEFAULT_S_VALUES
    tolerance_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "concentrations", tuple(float(c) for c in self.concentrations))
        object.__setattr__(self, "s_values", tuple(float(s) for s in self.s_values))
        if not self.dims or any(d < 2 for d in self.dims):
            raise ValueError(f"dims must be non-empty with every entry >= 2, got {self.dims}")
        if int(self.trials_per_dim) < 1:
            raise ValueError(f"trials_per_dim must be >= 1, got {self.trials_per_dim}")
        if not self.concentrations or not all(c > 0 and math.isfinite(c) for c in self.concentrations):
            raise ValueError(f"concentrations must be positive and finite, got {self.concentrations}")
        if not self.s_values or not all(math.isfinite(s) for s in self.s_values):
            raise ValueError(f"s_values must be finite and non-empty, got {self.s_values}")
        if not (self.tolerance_scale > 0 and math.isfinite(self.tolerance_scale)):
            raise ValueError(f"tolerance_scale must be positive, got {self.tolerance_scale}")


@dataclass(frozen=True, order=True)
class Violation:
    chain_id: str
    label: str
    slack: float
    witness: tuple = field(compare=True)


@dataclass
class FuzzSummary:
    """Aggregate of a fuzz run.

    ``min_slack_per_chain`` maps a chain id to ``(slack, witness)`` where the
    witness names the sampled cell ``(dim, concentration, trial)``, the two
    seeds and the tightest link. ``errata_diffs`` keeps the first pair on
    which each printed coefficient disagrees with its derived form.
    """

    config: FuzzConfig
    total_links_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    min_slack_per_chain: dict[str, tuple[float, dict]] = field(default_factory=dict)
    errata_diffs: list[tuple[str, float, float, dict]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def trial_seed(seed: int, dim: int, concentration: float, trial: int, role: str) -> int:
    """Seed of one sampled distribution; ``role`` is ``"P"`` or ``"Q"``."""
    key = f"{int(dim)}|{float(concentration)!r}|{int(trial)}|{role}".encode()
    digest = int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")
    return (int(seed) & _SEED_MASK) ^ digest


def _run_cell(config: FuzzConfig, dim: int, conc: float) -> FuzzSummary:
    registry = _registry(config.s_values)
    part = FuzzSummary(config)
    mins = part.min_slack_per_chain
    errata_seen: dict[str, tuple] = {}
    for trial in range(int(config.trials_per_dim)):
        sp = trial_seed(config.seed, dim, conc, trial, "P")
        sq = trial_seed(config.seed, dim, conc, trial, "Q")
        P, Q = sample(dim, sp, conc), sample(dim, sq, conc)
        stats = PairStats(P, Q)
        where = {"dim": dim, "concentration": conc, "trial": trial, "seed_p": sp, "seed_q": sq}
        for cid, build in registry:
            rep = build(stats, config.tolerance_scale)
            for link in rep.applicable_links:
                part.total_links_checked += 1
                if not link.passed:
                    part.violations.append(
                        Violation(cid, link.label, link.slack, tuple(sorted(where.items())))
                    )
                best = mins.get(cid)
                if best is None or link.slack < best[0]:
                    mins[cid] = (link.slack, dict(where, link=link.label))
        for entry in errata_compare(P, Q, stats=stats):
            if not entry.agree and entry.equation_id not in errata_seen:
                errata_seen[entry.equation_id] = (
                    entry.equation_id, entry.as_printed, entry.derived, dict(where)
                )
    part.errata_diffs = list(errata_seen.values())
    return part


def _merge(config: FuzzConfig, parts: Iterable[FuzzSummary]) -> FuzzSummary:
    out = FuzzSummary(config)
    errata: dict[str, tuple] = {}
    for part in parts:
        out.total_links_checked += part.total_links_checked
        out.violations.extend(part.violations)
        for cid, (slack, witness) in part.min_slack_per_chain.items():
            best = out.min_slack_per_chain.get(cid)
            if best is None or slack < best[0]:
                out.min_slack_per_chain[cid] = (slack, witness)
        for diff in part.errata_diffs:
            errata.setdefault(diff[0], diff)
    out.violations.sort()
    out.min_slack_per_chain = dict(sorted(out.min_slack_per_chain.items()))
    out.errata_diffs = [errata[k] for k in sorted(errata)]
    return out


def _threads() -> int:
    raw = os.environ.get("DIVBOUND_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"DIVBOUND_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"DIVBOUND_THREADS must be a positive integer, got {raw!r}")
    return value


def fuzz(config: FuzzConfig | None = None) -> FuzzSummary:
    """Run every registered chain on seeded random pairs and aggregate the outcome.

    Cells ``(dim, concentration)`` are independent; with ``DIVBOUND_THREADS``
    above 1 they run in worker processes and are merged in a fixed order,
    so the summary does not depend on the schedule.
    """
    config = config or FuzzConfig()
    cells = [(d, c) for d in config.dims for c in config.concentrations]
    workers = min(_threads(), len(cells))
    if workers <= 1:
        parts = [_run_cell(config, d, c) for d, c in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, config, d, c) for d, c in cells]
            parts = [f.result() for f in futures]
    return _merge(config, parts)


# ---------------------------------------------------------------- errata


@dataclass(frozen=True)
class ErrataEntry:
    """Printed versus derived form of one coefficient.

    ``as_printed`` and ``derived`` are the coefficients themselves;
    ``printed_bound`` and ``derived_bound`` are the resulting sides of the
    inequality on the given pair. ``agree`` holds when both the coefficients
    and the bounds coincide to 1e-12 relative; on a single-point ratio range
    the coefficients are undefined and only the bounds are compared.
    ``printed_holds`` says whether the printed inequality happens to hold on
    this pair anyway.
    """

    equation_id: str
    as_printed: float
    derived: float
    agree: bool
    printed_bound: float
    derived_bound: float
    printed_holds: bool
    note: str = ""


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15)


def _entry(eq, printed, derived, bracket, side, value, degenerate, note):
    pb, db = printed * bracket, derived * bracket
    agree = _close(pb, db) and (degenerate or _close(printed, derived))
    tol = bounds.LINK_RTOL * max(1.0, abs(pb), abs(value))
    holds = (pb - value <= tol) if side == "lower" else (value - pb <= tol)
    return ErrataEntry(eq, float(printed), float(derived), bool(agree), float(pb), float(db), bool(holds), note)


def errata_compare(
    P, Q, *, s_delta: float = 2.0, s_psi: float = 2.0, stats: PairStats | None = None
) -> list[ErrataEntry]:
    """Evaluate the printed and derived variants of each suspect coefficient on ``(P, Q)``.

    ``eq54`` is the beta-gap sandwich of the triangular family for
    ``s >= 2``, ``eq99`` the starred chi-square sandwich for ``s >= 2``,
    ``eq107`` the starred chi-square bound against the ``s = 3`` relative
    information, and ``eq92``-``eq94`` the closed-form chi-square bound
    constants.

    >>> [e.agree for e in errata_compare([0.3, 0.7], [0.3, 0.7])]
    [True, True, True, True, True, True, True]
    """
    if s_delta < 2 or s_psi < 2:
        raise ValueError("the flagged coefficients belong to the s >= 2 regime")
    st = stats if stats is not None else PairStats(P, Q)
    rng: RatioRange = st.range
    r, R = rng.r, rng.R
    deg = rng.degenerate
    out = []

    # beta-gap sandwich of the triangular discrimination
    printed_hi, printed_lo = bounds.as_printed.delta_beta_coefficients(s_delta, rng)
    ext = bounds.extrema_g(Family.DELTA, s_delta, rng)
    bracket = st.beta_gap(csiszar.phi_generator(s_delta))
    value = st.beta_gap(TRIANGULAR)
    out.append(_entry("eq54.lower", printed_hi, ext.m, bracket, "lower", value, deg,
                      "R^(1-s)/(R+1)^2 vs 8R^(2-s)/(R+1)^3"))
    out.append(_entry("eq54.upper", printed_lo, ext.M, bracket, "upper", value, deg,
                      "r^(1-s)/(r+1)^2 vs 8r^(2-s)/(r+1)^3"))

    # starred chi-square sandwich, lower side
    printed_c, _ = bounds.as_printed.psi_rho_coefficients(s_psi, rng)
    ext = bounds.extrema_g(Family.PSI, s_psi, rng)
    bracket = st.rho_gap(csiszar.phi_generator(s_psi))
    out.append(_entry("eq99.lower", printed_c, ext.m, bracket, "lower", st.measure("psi_star"), deg,
                      "2(r^3+1)/r^(1+s) vs 2(R^3+1)/R^(1+s)"))

    # operand order of the s = 3 term in the upper starred chi-square bound
    chi_qp = st.measure("chi2", reverse=True)
    printed_br = 3.0 * st.phi(3.0) - chi_qp
    derived_br = 3.0 * st.phi(3.0, reverse=True) - chi_qp
    coef = 2.0 * (R ** 3 + 1.0)
    psi_star = st.measure("psi_star")
    out.append(ErrataEntry(
        "eq107.upper", float(printed_br), float(derived_br), bool(_close(printed_br, derived_br)),
        coef * printed_br, coef * derived_br, bool(psi_star - coef * printed_br
                                                   <= bounds.LINK_RTOL * max(1.0, abs(psi_star))),
        "3 phi3(P||Q) vs 3 phi3(Q||P)",
    ))

    # closed-form chi-square constants
    derived_bs = bounds.closed_form_bounds(Family.PSI, rng)
    psi = st.measure("sym_chi2")
    if deg:
        pairs = [("eq92", 0.0, 0.0), ("eq93", 0.0, 0.0), ("eq94", 0.0, 0.0)]
    else:
        pairs = [
            ("eq92", bounds.as_printed.psi_alpha(rng), derived_bs.alpha),
            ("eq93", bounds.as_printed.psi_beta(rng), derived_bs.beta),
            ("eq94", bounds.as_printed.psi_gamma(rng), derived_bs.gamma),
        ]
    notes = {
        "eq92": "alpha from the printed gamma vs (R-r)^2 gamma/4",
        "eq93": "(R-1)(1-r)(R+r) vs (R-1)(1-r)(1+rR)/(rR)",
        "eq94": "2/L_2 - 1/L_1 vs 2 + (R+r)/(rR)^2",
    }
    for eq, printed, derived in pairs:
        if eq == "eq94":
            # gamma multiplies the range gap in the chain
            bracket = st.range_gap
            lhs = st.beta_gap(SYMMETRIC_CHI2)
            pb, db = printed * bracket, derived * bracket
            holds = lhs - pb <= bounds.LINK_RTOL * max(1.0, abs(lhs), abs(pb))
        else:
            pb, db = printed, derived
            holds = psi - pb <= bounds.LINK_RTOL * max(1.0, abs(psi), abs(pb))
        agree = _close(pb, db) and (deg or _close(printed, derived))
        out.append(ErrataEntry(eq, float(printed), float(derived), bool(agree), float(pb),
                               float(db), bool(holds), notes[eq]))
    return out


# ---------------------------------------------------------------- serialization


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def summary_to_dict(summary: FuzzSummary) -> dict:
    cfg = summary.config
    return _jsonable({
        "config": {
            "dims": list(cfg.dims),
            "trials_per_dim": int(cfg.trials_per_dim),
            "seed": int(cfg.seed),
            "concentrations": list(cfg.concentrations),
            "s_values": list(cfg.s_values),
            "tolerance_scale": cfg.tolerance_scale,
        },
        "total_links_checked": summary.total_links_checked,
        "violations": [
            {"chain_id": v.chain_id, "label": v.label, "slack": v.slack, "inputs": dict(v.witness)}
            for v in summary.violations
        ],
        "min_slack_per_chain": {
            cid: {"slack": slack, "witness": witness}
            for cid, (slack, witness) in summary.min_slack_per_chain.items()
        },
        "errata_diffs": [
            {"equation_id": eq, "as_printed": a, "derived": d, "witness": w}
            for eq, a, d, w in summary.errata_diffs
        ],
    })


def summary_to_json(summary: FuzzSummary, indent: int | None = 2) -> str:
    return json.dumps(summary_to_dict(summary), sort_keys=True, indent=indent, allow_nan=False)
