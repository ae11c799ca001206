"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are also
collected and shown in the pytest terminal summary.
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from divbound import (
    SYMMETRIC_CHI2,
    TRIANGULAR,
    FuzzConfig,
    RatioRange,
    bound_set,
    c_f,
    errata_compare,
    extrema_g,
    fuzz,
    g_function,
    phi_generator,
    phi_s,
    ratio_range,
    rho_c_f,
    rho_phi_s,
    sample,
    theorem31_chain,
)
from divbound import harness, measures
from divbound.bounds import CUBE_ROOT_2

from conftest import ACCEPTANCE_LINES, WITNESS_P, WITNESS_Q, random_pairs


def report(n, ok, detail):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def rel_err(a, b):
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


@pytest.fixture(scope="module")
def default_fuzz():
    start = time.perf_counter()
    summary = fuzz(FuzzConfig())
    return summary, time.perf_counter() - start


def test_1_closed_form_equivalence():
    start = time.perf_counter()
    worst_d = worst_p = 0.0
    for P, Q in random_pairs(10_000, dims=(2, 4, 8, 32), seed=101):
        worst_d = max(worst_d, rel_err(c_f(TRIANGULAR, P, Q), measures.triangular(P, Q)))
        worst_p = max(worst_p, rel_err(c_f(SYMMETRIC_CHI2, P, Q), measures.sym_chi2(P, Q)))
    elapsed = time.perf_counter() - start
    ok = worst_d <= 1e-10 and worst_p <= 1e-10 and elapsed <= 10
    assert report(1, ok, f"max rel err delta={worst_d:.2e} psi={worst_p:.2e}, {elapsed:.1f}s"), (worst_d, worst_p, elapsed)


def test_2_constants():
    checks = {
        "g_delta(2), s=0": (g_function("delta", 0, 2.0), 32 / 27),
        "g_delta(1), s=1/2": (g_function("delta", 0.5, 1.0), 1.0),
        "g_delta(1/2), s=1": (g_function("delta", 1, 0.5), 32 / 27),
        "g_psi(2^-1/3), s=0": (g_function("psi", 0, 2 ** (-1 / 3)), 3 * CUBE_ROOT_2),
        "g_psi(2^1/3), s=1": (g_function("psi", 1, 2 ** (1 / 3)), 3 * CUBE_ROOT_2),
        "g_psi(1), s=1/2": (g_function("psi", 0.5, 1.0), 4.0),
        "f''_delta(1)": (float(TRIANGULAR.f2(np.float64(1.0))), 1.0),
        "f''_psi(1)": (float(SYMMETRIC_CHI2.f2(np.float64(1.0))), 4.0),
        "sup g_delta, s=0": (extrema_g("delta", 0).M, 32 / 27),
        "inf g_psi, s=1/2": (extrema_g("psi", 0.5).m, 4.0),
    }
    worst = max(abs(v - e) for v, e in checks.values())
    assert report(2, worst <= 1e-12, f"{len(checks)} constants, max abs err {worst:.1e}"), checks


def test_3_generic_chain():
    gens = [TRIANGULAR, SYMMETRIC_CHI2] + [phi_generator(s) for s in harness.DEFAULT_S_VALUES]
    violations, links = [], 0
    for i, (P, Q) in enumerate(random_pairs(10_000, dims=(2, 3, 5, 10, 25), seed=303, concentration=0.7)):
        from divbound.bounds import PairStats

        stats = PairStats(P, Q)
        for gen in gens:
            rep = theorem31_chain(gen, stats=stats)
            links += len(rep.links)
            violations += [(i, gen.name, l.label, l.slack) for l in rep.violations]
    ok = not violations
    assert report(3, ok, f"{links} links over 10^4 pairs and {len(gens)} generators, {len(violations)} violations"), violations[:5]


def test_4_theorems_and_fixed_constant_propositions(default_fuzz):
    summary, elapsed = default_fuzz
    cfg = summary.config
    wanted = {f"T4.2[s={s:g}]" for s in (-3, -2, -1, 2, 3, 5)} | {f"T5.2[s={s:g}]" for s in (-3, -2, -1, 2, 3, 5)}
    wanted |= {"P4.3", "P4.4", "P4.5", "P5.3", "P5.4", "P5.5"}
    assert wanted <= set(summary.min_slack_per_chain)
    bad = [v for v in summary.violations if v.chain_id in wanted]
    cells = len(cfg.dims) * len(cfg.concentrations)
    ok = not bad and elapsed <= 60 and len(cfg.dims) >= 3 and len(cfg.concentrations) >= 3 and cfg.trials_per_dim >= 1000
    assert report(
        4, ok,
        f"{cells} cells x {cfg.trials_per_dim} trials, {summary.total_links_checked} links, "
        f"{len(bad)} violations in {len(wanted)} chains, {elapsed:.1f}s",
    ), bad[:5]


def test_5_harmonic_mean_remark(default_fuzz):
    summary, _ = default_fuzz
    cfg = summary.config
    bad = [v for v in summary.violations if v.chain_id == "HM-remark"]
    # W is within 1e-16 of 1 for close pairs, so 2(1 - W) carries an absolute
    # rounding floor of ~2e-16; the identity is checked at the link tolerance
    # 1e-10 max(1, |Delta|) everywhere, and purely relatively where Delta >= 1e-4
    worst_scaled = worst_rel = 0.0
    for dim in cfg.dims:
        for conc in cfg.concentrations:
            for t in range(cfg.trials_per_dim):
                P = sample(dim, harness.trial_seed(cfg.seed, dim, conc, t, "P"), conc)
                Q = sample(dim, harness.trial_seed(cfg.seed, dim, conc, t, "Q"), conc)
                d = measures.triangular(P, Q)
                via_w = 2 * (1 - measures.harmonic_mean(P, Q))
                worst_scaled = max(worst_scaled, abs(d - via_w) / max(1.0, abs(d)))
                if d >= 1e-4:
                    worst_rel = max(worst_rel, rel_err(via_w, d))
    ok = not bad and worst_scaled <= 1e-10 and worst_rel <= 1e-10
    detail = (
        f"{len(bad)} violations; Delta = 2(1 - W): scaled err {worst_scaled:.2e}, "
        f"rel err where Delta >= 1e-4 {worst_rel:.2e}"
    )
    assert report(5, ok, detail), (bad[:5], worst_scaled, worst_rel)


def test_6_particular_cases():
    worst = 0.0
    for P, Q in random_pairs(1000, dims=(2, 3, 6, 16), seed=606):
        p, q = P.probs, Q.probs
        chi_pq, chi_qp = measures.chi2(P, Q), measures.chi2(Q, P)
        rng = ratio_range(P, Q)
        r, R = rng.r, rng.R
        pairs_ = [
            (phi_s(-1, P, Q), 0.5 * chi_qp),
            (phi_s(0, P, Q), measures.kl(Q, P)),
            (phi_s(0.5, P, Q), 4 * measures.hellinger(P, Q)),
            (phi_s(1, P, Q), measures.kl(P, Q)),
            (phi_s(2, P, Q), 0.5 * chi_pq),
            (rho_phi_s(-1, P, Q), 3 * phi_s(3, Q, P) - 0.5 * chi_qp),
            (rho_phi_s(0, P, Q), chi_qp),
            (rho_phi_s(0.5, P, Q), 2 * float(np.sum((q - p) * np.sqrt(q / p)))),
            (rho_phi_s(1, P, Q), measures.j_divergence(P, Q)),
            (rho_phi_s(2, P, Q), chi_pq),
        ]
        if not rng.degenerate:
            sR, sr = math.sqrt(R), math.sqrt(r)
            pairs_ += [
                (bound_set(phi_generator(-1), rng).beta, (R - 1) * (1 - r) / (2 * r * R)),
                (bound_set(phi_generator(0), rng).beta,
                 ((R - 1) * math.log(1 / r) + (1 - r) * math.log(1 / R)) / (R - r)),
                (bound_set(phi_generator(0.5), rng).beta, 4 * (sR - 1) * (1 - sr) / (sR + sr)),
                (bound_set(phi_generator(1), rng).beta,
                 ((R - 1) * r * math.log(r) + (1 - r) * R * math.log(R)) / (R - r)),
                (bound_set(phi_generator(2), rng).beta, (R - 1) * (1 - r) / 2),
            ]
        for got, expected in pairs_:
            worst = max(worst, rel_err(got, expected))
    assert report(6, worst <= 1e-10, f"phi, rho and beta cases on 10^3 pairs, max rel err {worst:.2e}"), worst


def test_7_extrema_grid():
    rng = np.random.default_rng(707)
    ranges = [RatioRange(rng.uniform(0.05, 1.0), rng.uniform(1.0, 20.0)) for _ in range(10)]
    worst = 0.0
    for fam in ("delta", "psi"):
        for s in (-3, -1, 0, 0.5, 1, 2, 5):
            for rr in ranges:
                x = np.geomspace(rr.r, rr.R, 10_000)
                g = g_function(fam, s, x)
                ext = extrema_g(fam, s, rr)
                worst = max(worst, rel_err(ext.m, g.min()), rel_err(ext.M, g.max()))
    assert report(7, worst <= 1e-6, f"2 families x 7 orders x 10 ranges, max rel err {worst:.2e}"), worst


def test_8_errata_detection():
    w = {e.equation_id: e for e in errata_compare(WITNESS_P, WITNESS_Q)}
    same = errata_compare([0.5, 0.5], [0.5, 0.5])
    ok = (
        not w["eq54.lower"].agree and not w["eq99.lower"].agree
        and math.isclose(w["eq54.lower"].as_printed, 1 / 18, rel_tol=1e-12)
        and math.isclose(w["eq54.lower"].derived, 8 / 27, rel_tol=1e-12)
        and math.isclose(w["eq99.lower"].as_printed, 8.75, rel_tol=1e-12)
        and math.isclose(w["eq99.lower"].derived, 2.25, rel_tol=1e-12)
        and all(e.agree for e in same)
    )
    detail = (
        f"eq54 {w['eq54.lower'].as_printed:.6g} vs {w['eq54.lower'].derived:.6g}, "
        f"eq99 {w['eq99.lower'].as_printed:.6g} vs {w['eq99.lower'].derived:.6g}, P=Q all agree: {all(e.agree for e in same)}"
    )
    assert report(8, ok, detail), w


def test_9_cli_fuzz_deterministic():
    argv = [sys.executable, "-m", "divbound", "fuzz", "--dims", "2", "4", "16", "--trials", "100",
            "--seed", "42", "--conc", "0.5", "1", "5", "--json"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    json.loads(a.stdout)
    assert report(9, ok, f"two runs, {len(a.stdout)} bytes each, identical={a.stdout == b.stdout}"), (a.stderr, b.stderr)
