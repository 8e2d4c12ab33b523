"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.
"""

import time

import numpy as np

from flagcone.calabi import (
    asymptotic_comparison,
    calabi_ricci_flat_check,
    calabi_zero_section_blocks,
    eguchi_hanson_flat_gap,
    eguchi_hanson_oracle,
)
from flagcone.cli import main
from flagcone.cone import (
    BundleChartPoint,
    ConeChartPoint,
    cone_ricci_flat_check,
    flat_cone_residual,
)
from flagcone.kahler import (
    anticanonical_potential,
    einstein_residual,
    scalar_curvature_at,
)
from flagcone.lie import build_root_system, parabolic_choice
from flagcone.poly import Poly
from flagcone.report import _expected_norm_squares
from flagcone.sampling import angles, chart_points, fiber_values, radii
from flagcone.sasaki import (
    contact_metric_axiom_residuals,
    sasaki_einstein_residual,
    sasaki_nijenhuis_check,
    sasaki_scalar_curvature,
)

# the four Kahler-Einstein bases exercised throughout
BASES = {
    "CP^1": (1, frozenset()),
    "CP^2": (2, frozenset({2})),
    "Gr(2,C^4)": (3, frozenset({1, 3})),
    "SU(3)/T^2": (2, frozenset()),
}

# Sasaki-Einstein links of criterion 6/7/8 (name -> (rank, theta, ell, n))
LINKS = {
    "S^3": (1, frozenset(), 1, 1),
    "RP^3": (1, frozenset(), 2, 1),
    "S^5/Z_3": (2, frozenset({2}), 3, 2),
    "V_2(R^6)/Z_4": (3, frozenset({1, 3}), 4, 4),
    "Q(K_{SU(3)/T^2})": (2, frozenset(), 2, 3),
}


def _report(num, label, ok, started, budget=None):
    dt = time.perf_counter() - started
    status = "PASS" if ok else "FAIL"
    extra = f" ({dt:.2f}s" + (f" / budget {budget:.0f}s)" if budget else ")")
    print(f"ACCEPTANCE {num:>2}: {status} - {label}{extra}")
    assert ok, f"criterion {num} failed: {label}"
    if budget is not None:
        assert dt < budget, f"criterion {num} exceeded budget: {dt:.1f}s"


def test_criterion_01_combinatorial_exactness():
    t0 = time.perf_counter()
    pc = parabolic_choice(build_root_system(3), {1, 3})
    ok = pc.delta_p == (2, 4, 2) and pc.pairings == {2: 4} and pc.fano_index == 4
    for n in range(1, 7):
        pcn = parabolic_choice(build_root_system(n), set(range(2, n + 1)))
        ok = ok and pcn.pairings[1] == n + 1 and pcn.fano_index == n + 1
    pcb = parabolic_choice(build_root_system(2), set())
    ok = ok and pcb.delta_p == (2, 2) and pcb.fano_index == 2
    _report(1, "delta_P, pairings and Fano indices exact", ok, t0, budget=1.0)


def test_criterion_02_potential_golden_forms():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta) in BASES.items():
        spec = anticanonical_potential(rank, theta)
        expected = _expected_norm_squares(spec)
        got = {mps.weight_index: p
               for (mps, _), p in zip(spec.factors, spec.norm_polys)}
        ok = ok and expected is not None and set(got) == set(expected)
        for k in expected:
            ok = ok and got[k] == Poly(got[k].nvars, expected[k].terms)
    # CP^n display 1 + sum |z|^2 for n up to 4
    for n in (2, 3, 4):
        spec = anticanonical_potential(n, set(range(2, n + 1)))
        terms = {(0,) * (2 * n): 1}
        for j in range(n):
            e = [0] * (2 * n)
            e[j] = e[n + j] = 1
            terms[tuple(e)] = 1
        ok = ok and spec.norm_polys[0] == Poly(2 * n, terms)
    _report(2, "norm-square polynomials coefficient-exact", ok, t0, budget=1.0)


def test_criterion_03_kahler_einstein_identity():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta) in BASES.items():
        spec = anticanonical_potential(rank, theta)
        for z in chart_points(spec.m, 5, seed=101, backend="exact"):
            ok = ok and einstein_residual(spec, z, backend="exact") == 0
        for z in chart_points(spec.m, 5, seed=102):
            ok = ok and einstein_residual(spec, z) < 1e-8
    _report(3, "Ric = 2 pi g exactly (rational) and < 1e-8 (float)", ok, t0,
            budget=30.0)


def test_criterion_04_scalar_curvature():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta) in BASES.items():
        spec = anticanonical_potential(rank, theta)
        n = spec.n_dim
        vals = [scalar_curvature_at(spec, z)
                for z in chart_points(spec.m, 10, seed=103)]
        ok = ok and max(vals) - min(vals) < 1e-7
        ok = ok and max(abs(v - 4 * n * (n + 1)) for v in vals) < 1e-7
    _report(4, "scalar curvature 4n(n+1), spread < 1e-7 over 10 points", ok,
            t0, budget=30.0)


def test_criterion_05_contact_axioms():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta) in BASES.items():
        fano = anticanonical_potential(rank, theta).fano
        for ell in (1, fano):
            spec = anticanonical_potential(rank, theta, ell)
            for z in chart_points(spec.m, 10, seed=104):
                ax = contact_metric_axiom_residuals(spec, z)
                ok = ok and max(ax.values()) < 1e-8
                ok = ok and sasaki_nijenhuis_check(spec, z) < 1e-8
    _report(5, "contact-metric axioms and Sasaki condition < 1e-8, "
            "ell in {1, I}", ok, t0, budget=120.0)


def test_criterion_06_sasaki_einstein():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta, ell, n) in LINKS.items():
        spec = anticanonical_potential(rank, theta, ell)
        vals = []
        for z in chart_points(spec.m, 10, seed=105):
            ok = ok and sasaki_einstein_residual(spec, z) < 1e-7
        for z in chart_points(spec.m, 10, seed=106):
            vals.append(sasaki_scalar_curvature(spec, z))
        want = 2 * n * (2 * n + 1)
        ok = ok and max(abs(v - want) for v in vals) < 1e-7
        ok = ok and max(vals) - min(vals) < 1e-7
    _report(6, "Ric(g_M) = 2n g_M and S = 2n(2n+1) for the five links", ok,
            t0, budget=300.0)


def test_criterion_07_cone_ricci_flat():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta, ell, n) in LINKS.items():
        spec = anticanonical_potential(rank, theta, ell)
        pts = chart_points(spec.m, 10, seed=107)
        rs = radii(10, seed=107)
        ths = angles(10, seed=107)
        for i in range(10):
            p = ConeChartPoint(r=rs[i], theta=ths[i], z=tuple(pts[i]))
            ok = ok and cone_ricci_flat_check(spec, p) < 1e-7
    hopf = anticanonical_potential(1, set(), 1)
    pts = chart_points(1, 10, seed=108)
    rs = radii(10, seed=108)
    ths = angles(10, seed=108)
    for i in range(10):
        p = ConeChartPoint(r=rs[i], theta=ths[i], z=tuple(pts[i]))
        ok = ok and flat_cone_residual(hopf, p) < 1e-10
    _report(7, "cone Ricci-flat < 1e-7; C(S^3) flat oracle < 1e-10", ok, t0,
            budget=300.0)


def test_criterion_08_global_potential_identity():
    from flagcone.cone import global_potential_identity

    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta, ell, n) in LINKS.items():
        spec = anticanonical_potential(rank, theta, ell)
        pts = chart_points(spec.m, 10, seed=109)
        fibers = fiber_values(10, seed=109)
        for z, b in zip(pts, fibers):
            p = BundleChartPoint(z=tuple(z), b=b)
            ok = ok and global_potential_identity(spec, p) < 1e-8
    _report(8, "(sqrt(-1)/2) d dbar r^2 = (ell(n+1)/I) omega_C < 1e-8", ok,
            t0, budget=300.0)


def test_criterion_09_calabi_ricci_flat():
    t0 = time.perf_counter()
    ok = True
    for name, (rank, theta) in BASES.items():
        fano = anticanonical_potential(rank, theta).fano
        spec = anticanonical_potential(rank, theta, ell=fano)
        pts = chart_points(spec.m, 10, seed=110)
        fibers = fiber_values(10, seed=110)
        for z, b in zip(pts, fibers):
            p = BundleChartPoint(z=tuple(z), b=b)
            ok = ok and calabi_ricci_flat_check(spec, p, 1.0) < 1e-6
        hb, vv, base, ev = calabi_zero_section_blocks(spec, pts[0], 1.0)
        ok = ok and np.abs(hb - base).max() < 1e-13
        ok = ok and abs(vv.real - ev) < 1e-13 and abs(vv.imag) < 1e-15
    _report(9, "Calabi ansatz Ricci-flat < 1e-6 on all four canonical "
            "bundles; b = 0 blocks exact", ok, t0, budget=600.0)


def test_criterion_10_asymptotics():
    t0 = time.perf_counter()
    spec = anticanonical_potential(1, set(), 2)
    gaps = asymptotic_comparison(spec, 1.0, [10.0, 100.0, 1000.0])
    ok = gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-3
    _report(10, "cone gap strictly decreasing along 10, 10^2, 10^3 and "
            "< 1e-3 at 10^3 for K_CP1", ok, t0, budget=60.0)


def test_criterion_11_eguchi_hanson():
    t0 = time.perf_counter()
    ok = True
    for s in (0.1, 0.5, 1.0):
        for z in ([0.7 + 0.2j, -0.4 + 0.5j], [1.1, 0.3j]):
            ok = ok and eguchi_hanson_oracle(s, z) < 1e-8
    ok = ok and eguchi_hanson_flat_gap(1e-3, [1.0, 0.0]) < 1e-2
    _report(11, "Eguchi-Hanson family Ricci-flat < 1e-8; flat as s -> 0", ok,
            t0, budget=60.0)


def test_criterion_12_crepancy_gate(capsys):
    t0 = time.perf_counter()
    code = main(["verify", "--rank", "1", "--theta", "", "--ell", "3",
                 "--suites", "calabi"])
    err = capsys.readouterr().err
    ok = code == 2 and "non-root" in err
    code2 = main(["verify", "--rank", "2", "--theta", "2", "--ell", "1",
                  "--suites", "calabi"])
    err2 = capsys.readouterr().err
    ok = ok and code2 == 2 and "divisor-root" in err2
    with capsys.disabled():
        _report(12, "verify --suites calabi refuses ell != I with exit 2",
                ok, t0, budget=10.0)
