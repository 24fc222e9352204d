"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
"""
import math
import time
from functools import lru_cache

import mpmath
import numpy as np
import pytest
from fractions import Fraction

from conftest import CRITERION_LINES, sign_changes
from dirac_aim import angular, radial
from dirac_aim.aim import find_eigenvalue, hypergeom_2f1_terminating, pochhammer
from dirac_aim.angular import ScarfParams, angular_chain, angular_potential, angular_wavefunction
from dirac_aim.pekeris import pekeris_coeffs
from dirac_aim.qdeform import cosh_q, deformation_shift, deformed_trig, sinh_q
from dirac_aim.radial import radial_equation_coefficient, radial_wavefunction, wavefunction_in_z
from dirac_aim.spectrum import ProblemConfig, solve_bound_states
from dirac_aim.tables import MATCH_TOL, reproduction_report, run_table, table_rows

TREND_READING = "printed"


def report(number, ok, detail):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    CRITERION_LINES.append(line)
    print("\n" + line)
    assert ok, detail


# ---------------------------------------------------------------- criterion 1


def test_criterion_1_identities():
    rng = np.random.default_rng(20260101)
    t0 = time.perf_counter()
    N = 10_000
    q = rng.uniform(0.05, 5.0, N)
    x = rng.uniform(-8.0, 8.0, N)
    theta = rng.uniform(-10.0, 10.0, N)
    alpha = rng.uniform(0.1, 3.0, N)
    r = rng.uniform(-3.0, 3.0, N)

    hyp = np.empty(N)
    trig = np.empty(N)
    trans = np.empty(N)
    for i in range(N):
        ch, sh = cosh_q(q[i], x[i]), sinh_q(q[i], x[i])
        hyp[i] = abs(ch**2 - sh**2 - q[i]) / max(1.0, ch**2)
        s, c = deformed_trig("sin", q[i], theta[i]), deformed_trig("cos", q[i], theta[i])
        trig[i] = abs(s**2 + c**2 - q[i]) / max(1.0, q[i])
        expected = math.sqrt(q[i]) * math.sinh(alpha[i] * r[i])
        shifted = sinh_q(q[i], alpha[i] * (r[i] + deformation_shift(q[i], alpha[i])))
        trans[i] = abs(shifted - expected) / max(1.0, abs(expected))
    elapsed = time.perf_counter() - t0

    worst = max(hyp.max(), trig.max(), trans.max())
    ok = worst <= 1e-12 and elapsed < 1.0
    report(1, ok, f"worst identity error {worst:.2e} over {N} samples each (<= 1e-12), {elapsed:.3f} s (< 1 s)")


# ---------------------------------------------------------------- criterion 2


def _bracket(closed, n):
    return closed(n - 0.5), closed(n + 0.5)


def test_criterion_2_aim_exactness():
    t0 = time.perf_counter()
    worst = 0.0
    cases = 0
    for d, g in ((0.8, 1.3), (2.4, 0.6), (5.1, 3.7)):
        radial_closed = lambda k, d=d, g=g: (d + g + k) * (d + g + k + 1)  # noqa: E731
        for n in range(4):
            for z0 in (0.25, 0.5, 0.75):
                found = find_eigenvalue(radial.aim_problem(d, g), n, _bracket(radial_closed, n), z0=z0)
                worst = max(worst, abs(found / radial_closed(n) - 1))
                cases += 1
    for a, b, q, ME in ((2.0, 1.5, 0.8, 2.0), (2.0, 2.0, 1.0, 0.3), (4.0, 1.0, 1.3, 5.0)):
        d, g = angular.scarf_shape_params(ScarfParams(1, a, b, q), ME)
        axis_closed = lambda k, d=d, g=g: (d + g + k) ** 2  # noqa: E731
        for n in range(4):
            for z0 in (0.25, 0.5, 0.75):
                found = find_eigenvalue(angular.aim_problem(d, g), n, _bracket(axis_closed, n), z0=z0)
                worst = max(worst, abs(found / axis_closed(n) - 1))
                cases += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 5.0
    report(2, ok, f"worst relative error {worst:.2e} over {cases} eigenvalues (<= 1e-8), {elapsed:.2f} s (< 5 s)")


# ---------------------------------------------------------------- criterion 3


def _exact_2f1(n, b, c, z):
    total = Fraction(0)
    for m in range(n + 1):
        total += pochhammer(Fraction(-n), m) * pochhammer(b, m) / (pochhammer(c, m) * math.factorial(m)) * z**m
    return total


def test_criterion_3_hypergeometric_oracle():
    rng = np.random.default_rng(7)
    worst = 0.0
    count = 1000
    for _ in range(count):
        n = int(rng.integers(0, 9))
        b = Fraction(int(rng.integers(-80, 81)), 16)
        c = Fraction(int(rng.integers(1, 97)), 16)
        z = Fraction(int(rng.integers(-64, 65)), 64)
        exact = _exact_2f1(n, b, c, z)
        scale = max(1.0, float(sum(abs(pochhammer(Fraction(-n), m) * pochhammer(b, m)
                                       / (pochhammer(c, m) * math.factorial(m)) * z**m) for m in range(n + 1))))
        err = abs(hypergeom_2f1_terminating(n, float(b), float(c), float(z)) - float(exact)) / scale
        worst = max(worst, err)
    report(3, worst <= 1e-12, f"worst scaled deviation {worst:.2e} over {count} tuples (<= 1e-12)")


# ---------------------------------------------------------------- criterion 4


SWAVE = ProblemConfig(M=5.0, V0=20.0, V1=-3.0, alpha=0.5, q=1.0, r_e=1.0, D=3, n=0, ell_override=0.0)


def _radial_check(n):
    state = solve_bound_states(SWAVE.replace(n=n))[0]
    rc = SWAVE.replace(n=n).radial_config()
    r = np.linspace(0.2, 40.0, 60)
    h = 1e-4
    F = lambda x: radial_wavefunction(state.shape, rc, n, x)  # noqa: E731
    d2 = (F(r + h) - 2 * F(r) + F(r - h)) / h**2
    rel = np.max(np.abs(d2 - radial_equation_coefficient(state.shape, rc, r) * F(r))) / np.max(np.abs(F(r)))
    nodes = sign_changes(wavefunction_in_z(state.shape, n, np.linspace(1e-6, 1 - 1e-6, 20001)))
    return rel, nodes


def _angular_residual(sol, p, lam_prev, ME, theta, h=1e-4):
    m = sol.axis - 1
    P = lambda t: angular_wavefunction(sol, t)  # noqa: E731
    d1 = (P(theta + h) - P(theta - h)) / (2 * h)
    d2 = (P(theta + h) - 2 * P(theta) + P(theta - h)) / h**2
    res = d2 + m / np.tan(theta) * d1 + (sol.lam - lam_prev / np.sin(theta) ** 2
                                         - ME * angular_potential(p, theta)) * P(theta)
    return np.max(np.abs(res)) / np.max(np.abs(P(theta)))


def test_criterion_4_ode_residuals():
    worst_r, worst_a, node_ok = 0.0, 0.0, True
    for n in (0, 1, 2):
        rel, nodes = _radial_check(n)
        worst_r = max(worst_r, rel)
        node_ok &= nodes == n
    theta = np.linspace(0.2, math.pi - 0.2, 40)
    fine = np.linspace(1e-3, math.pi - 1e-3, 8001)
    for q, a, b, ME in ((1.0, 2.0, 2.0, 0.3), (0.7, 2.0, 1.5, 2.0)):
        params = [ScarfParams(i, a, b, q) for i in (1, 2, 3, 4)]
        for n in (0, 1, 2):
            chain = angular_chain(params, [n] * 4, ME, 5, "derived")
            lam_prev = 0.0
            for p, sol in zip(params, chain.axes):
                worst_a = max(worst_a, _angular_residual(sol, p, lam_prev, ME, theta))
                node_ok &= sign_changes(angular_wavefunction(sol, fine)) == n
                lam_prev = sol.lam
    ok = worst_r <= 1e-4 and worst_a <= 1e-4 and node_ok
    report(4, ok, f"radial residual {worst_r:.1e}, angular residual {worst_a:.1e} (<= 1e-4 relative, "
                  f"angular chain under the derived reading), node counts equal n: {node_ok}")


# ---------------------------------------------------------------- criterion 5


def test_criterion_5_pekeris_matching():
    mpmath.mp.dps = 40
    pairs = sorted({(r.config.q, r.config.r_e) for r in table_rows("1")})
    worst = 0.0
    for q, r_e in pairs:
        c = pekeris_coeffs(q, 0.5, r_e)
        c0, c1, c2 = (mpmath.mpf(v) for v in (c.c0, c.c1, c.c2))

        def g(r):
            x = mpmath.exp(-2 * mpmath.mpf(0.5) * r)
            u = -x / (1 + mpmath.mpf(q) * x)
            return (c0 + c1 * u + c2 * u * u) / mpmath.mpf(r_e) ** 2

        re = mpmath.mpf(r_e)
        targets = (1 / re**2, -2 / re**3, 6 / re**4)
        for k, target in enumerate(targets):
            value = mpmath.diff(g, re, k)
            worst = max(worst, float(abs(value / target - 1)))
    report(5, worst <= 1e-8, f"worst value/slope/curvature mismatch {worst:.2e} over {len(pairs)} (q, r_e) pairs "
                             f"(<= 1e-8)")


# ---------------------------------------------------------------- criterion 7 helpers


@lru_cache(maxsize=None)
def _run(table_id, reading=TREND_READING):
    return run_table(table_id, reading)


def _energies(run):
    """Admissible computed energies; non-states become NaN so every comparison fails."""
    return [r.E if r.admissible else math.nan for r in run.results]


def _strict(seq, increasing):
    pairs = list(zip(seq, seq[1:]))
    return bool(pairs) and all((b > a) if increasing else (b < a) for a, b in pairs)


def trend_checks():
    t1 = {r.row_def.row: (r.E if r.admissible else math.nan) for r in _run("1").results}
    a = _strict([t1[k] for k in range(1, 7)], increasing=False)
    b = _strict(_energies(_run("2")), increasing=True)
    c = _strict([t1[k] for k in range(7, 13)], increasing=False)
    t3 = {r.row_def.row: (r.E if r.admissible else math.nan) for r in _run("3").results}
    d = all(_strict([t3[1]] + [t3[k] for k in range(start, start + 4)], increasing=True) for start in (2, 6, 10, 14))
    t8 = _run("8").results
    degenerate = all(x.roots == y.roots and (x.E == y.E or (math.isnan(x.E) and math.isnan(y.E)))
                     for x, y in zip(t8[:8], t8[8:]))
    matched8 = sum(_run("8").matched(MATCH_TOL["8"]))
    e = degenerate and matched8 == len(t8)
    return {"a": a, "b": b, "c": c, "d": d, "e": e}, degenerate, matched8, len(t8)


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_table_reproduction():
    gated, gate_fail, excluded = [], [], []
    text = reproduction_report(readings=("printed", "literal", "derived"))
    listed = text.split("## Excluded rows", 1)[1]
    for tid in ("1", "2", "6"):
        runs = {rd: _run(tid, rd) for rd in ("printed", "literal", "derived")}
        for i, res in enumerate(runs[TREND_READING].results):
            row = res.row_def.row
            if runs[TREND_READING].matched()[i]:
                gated.append((tid, row))
            elif any(runs[rd].matched()[i] for rd in ("literal", "derived")):
                gated.append((tid, row))
                gate_fail.append((tid, row))
            else:
                excluded.append((tid, row))
    recorded = all(f"table {t} row {r}\n" in listed + "\n" for t, r in excluded)
    trends, *_ = trend_checks()
    exclusion_valid = not excluded or all(trends.values())
    ok = not gate_fail and recorded and exclusion_valid
    report(6, ok, f"{len(gated)} rows gated ({len(gate_fail)} off by > 1e-2 under the documented reading), "
                  f"{len(excluded)} rows excluded and recorded in the report: {recorded}; exclusion requires "
                  f"the full trend suite, which {'passes' if all(trends.values()) else 'fails'}")


# ---------------------------------------------------------------- criterion 7


def test_criterion_7_trends():
    t0 = time.perf_counter()
    _run.cache_clear()
    trends, degenerate, matched8, total8 = trend_checks()
    elapsed = time.perf_counter() - t0
    ok = all(trends.values()) and elapsed < 60.0
    parts = ", ".join(f"({k}) {'ok' if v else 'fail'}" for k, v in trends.items())
    report(7, ok, f"{parts}; doublet roots identical: {degenerate}; q=1 doublet rows within 5e-3: "
                  f"{matched8}/{total8}; {elapsed:.1f} s (< 60 s)")


# ---------------------------------------------------------------- criterion 8


ROOT_QUALITY_CONFIGS = [
    SWAVE.replace(n=n) for n in range(4)
] + [
    SWAVE.replace(q=q) for q in (0.5, 1.5, 2.0)
] + [
    ProblemConfig(M=5.0, V0=20.0, V1=-3.0, alpha=0.5, q=1.0, r_e=3.0, D=3, n=0, ell_override=1.0),
    ProblemConfig(M=2.0, V0=8.0, V1=1.0, alpha=0.7, q=0.8, r_e=2.0, D=3, n=0, ell_override=0.0),
]


@pytest.mark.parametrize("table_id", ["7", "8"])
def test_criterion_8_root_quality_on_reference_rows(table_id):
    # every root found on the reference rows, admissible or not, is a genuine zero
    worst = 0.0
    count = 0
    for res in _run(table_id).results:
        for st_ in solve_bound_states(res.row_def.config, -60, 60, 24_000, diagnostics=True):
            worst = max(worst, abs(st_.residual) / (1e-9 * res.row_def.config.M**2))
            count += 1
    report(8, worst <= 1.0, f"table {table_id}: {count} roots, worst |residual| = {worst:.2e} x 1e-9 M^2")


def test_criterion_8_root_quality():
    worst = 0.0
    count = 0
    for cfg in ROOT_QUALITY_CONFIGS:
        for st_ in solve_bound_states(cfg):
            worst = max(worst, abs(st_.residual) / (1e-9 * cfg.M**2))
            count += 1
    ok = count > 0 and worst <= 1.0
    report(8, ok, f"{count} reported bound states, worst |residual| = {worst:.2e} x 1e-9 M^2 (<= 1)")
