"""Verification suites and JSON report assembly.

Every check carries the identity it certifies (as an ASCII formula), the
measured residual, its tolerance and the sample count.  Reports are
byte-reproducible for a fixed (config, seed, backend): wall times are
emitted as null unless timing is explicitly requested.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import calabi as _calabi
from . import cone as _cone
from . import kahler as _kahler
from . import sasaki as _sasaki
from .catalog import describe, is_crepant
from .errors import ConfigError, FlagconeError
from .kahler import PotentialSpec, anticanonical_potential
from .poly import Poly
from .rational import get_backend
from .sampling import angles, chart_points, fiber_values, radii

SCHEMA_VERSION = 1
ALL_SUITES = ("info", "base", "sasaki", "cone", "calabi", "asymptotics")


@dataclass
class JobConfig:
    """One verification job; validated against the Lie-theory preconditions."""

    series: str = "A"
    rank: int = 1
    theta: tuple = ()
    ell: int = 1
    backend: str = "float"
    jet_order: int = 4
    samples: int = 5
    seed: int = 0
    constant_c: float = 1.0
    radii: tuple = (10.0, 100.0, 1000.0)
    suites: tuple = ALL_SUITES
    tol_scale: float = 1.0
    timing: bool = False

    def validate(self) -> PotentialSpec:
        if self.series != "A":
            raise ConfigError(f"only series A is implemented, got {self.series!r}")
        if self.backend not in ("float", "exact"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.jet_order < 4:
            raise ConfigError("jet order must be >= 4 for curvature checks")
        if self.samples < 1:
            raise ConfigError("need at least one sample point")
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")
        if len(self.radii) < 2 or any(
            b <= a for a, b in zip(self.radii, self.radii[1:])
        ):
            raise ConfigError("radius schedule must be strictly increasing")
        try:
            spec = anticanonical_potential(self.rank, set(self.theta), self.ell)
        except FlagconeError as exc:
            raise ConfigError(str(exc)) from exc
        if not is_crepant(spec):
            gated = {"calabi", "asymptotics"} & set(self.suites)
            if gated:
                raise ConfigError(
                    f"suites {sorted(gated)} need the crepant covering "
                    f"ell = I(X_P) = {spec.fano}; got ell = {self.ell} "
                    f"(status: {spec.parabolic.crepancy()})"
                )
        return spec


class _Recorder:
    def __init__(self, cfg: JobConfig):
        self.cfg = cfg
        self.checks = []

    def add(self, name, anchor, residual, tol, samples=1, exact=None,
            started=None, extra=None):
        tol = tol * self.cfg.tol_scale
        if isinstance(residual, Fraction):
            passed = residual <= tol
            res_out = float(residual)
            exact = residual == 0 if exact is None else exact
        else:
            residual = float(residual)
            passed = residual <= tol
            res_out = residual
        rec = {
            "name": name,
            "anchor": anchor,
            "residual": res_out,
            "tolerance": tol,
            "samples": samples,
            "passed": bool(passed),
            "exact_zero": exact,
            "wall_time_ms": (
                round(1000.0 * (time.perf_counter() - started), 3)
                if (self.cfg.timing and started is not None)
                else None
            ),
        }
        if extra:
            rec.update(extra)
        self.checks.append(rec)
        return passed


def _expected_norm_squares(spec: PotentialSpec) -> dict | None:
    """Displayed golden polynomials for the recognized examples."""
    pc = spec.parabolic
    m = spec.m
    rank, theta = pc.rank, pc.theta

    def zzbar(j):  # |z_j|^2 as a 2m-variable monomial
        e = [0] * (2 * m)
        e[j] = 1
        e[m + j] = 1
        return tuple(e)

    one = (0,) * (2 * m)
    sigma = set(range(1, rank + 1))
    missing = sorted(sigma - theta)
    if theta == frozenset() and rank == 1:
        return {1: Poly(2 * m, {one: 1, zzbar(0): 1})}
    if len(missing) == 1 and missing[0] == 1:
        # CP^rank: 1 + sum |z_l|^2
        terms = {one: 1}
        for j in range(m):
            terms[zzbar(j)] = 1
        return {1: Poly(2 * m, terms)}
    if (rank, sorted(theta)) == (3, [1, 3]):
        # Gr(2, C^4): 1 + sum |z_k|^2 + |z1 z4 - z2 z3|^2
        terms = {one: 1}
        for j in range(4):
            terms[zzbar(j)] = 1
        det = Poly(2 * m, {(1, 0, 0, 1, 0, 0, 0, 0): 1, (0, 1, 1, 0, 0, 0, 0, 0): -1})
        detbar = det.conjugate_pairs(list(range(m, 2 * m)) + list(range(m)))
        return {2: Poly(2 * m, terms) + det * detbar}
    if theta == frozenset() and rank == 2:
        # SU(3)/T^2 factors: (1 + |z1|^2 + |z2|^2), (1 + |z3|^2 + |z1 z3 - z2|^2)
        s1 = Poly(2 * m, {one: 1, zzbar(0): 1, zzbar(1): 1})
        det = Poly(2 * m, {(1, 0, 1, 0, 0, 0): 1, (0, 1, 0, 0, 0, 0): -1})
        detbar = det.conjugate_pairs(list(range(m, 2 * m)) + list(range(m)))
        s2 = Poly(2 * m, {one: 1, zzbar(2): 1}) + det * detbar
        return {1: s1, 2: s2}
    return None


# ---------------------------------------------------------------------------
# suites

def run_base(spec: PotentialSpec, cfg: JobConfig, rec: _Recorder):
    backend = get_backend(cfg.backend)
    pts = chart_points(spec.m, cfg.samples, cfg.seed, cfg.backend, tag="base")
    t0 = time.perf_counter()

    expected = _expected_norm_squares(spec)
    if expected is not None:
        ok = _kahler.norm_square_polys_match(spec, expected)
        rec.add("potential_golden_form",
                "norm-square polynomials match the displayed closed forms",
                0.0 if ok else 1.0, 0.0, samples=1, exact=ok, started=t0)

    t0 = time.perf_counter()
    twopi = 2.0 * np.pi
    for z in pts:
        _kahler.metric_at(spec, z, backend=cfg.backend)  # raises unless Hermitian PD
    origin = [0] * spec.m if backend.exact else [0.0] * spec.m
    s0 = _kahler.metric_at(spec, origin, backend=cfg.backend)
    from .lie import root_pairing

    slots = spec.chart.coordinate_slots
    by_slot = {}
    for r in spec.parabolic.complement_roots:
        by_slot[(r.j, r.i)] = root_pairing(
            spec.parabolic.rs, spec.parabolic.delta_p, r
        )
    want = np.diag([by_slot[rc] for rc in slots]) / twopi
    diag_res = float(np.abs(np.asarray(s0.matrix) - want).max())
    rec.add("metric_origin_diagonal",
            "g(0) = diag(<delta_P, h_beta>) / 2pi over the chart slots",
            diag_res, 1e-12, samples=1, started=t0)
    rec.add("metric_hermitian_pd", "g Hermitian positive definite on samples",
            0.0, 0.0, samples=len(pts), started=t0)

    t0 = time.perf_counter()
    worst = Fraction(0) if backend.exact else 0.0
    for z in pts:
        r = _kahler.einstein_residual(spec, z, backend=cfg.backend,
                                      order=cfg.jet_order)
        worst = max(worst, r)
    tol = 0.0 if backend.exact else 1e-8
    rec.add("einstein_identity", "Ric(g) = 2 pi g", worst, tol,
            samples=len(pts), started=t0)

    t0 = time.perf_counter()
    fpts = chart_points(spec.m, max(cfg.samples, 10), cfg.seed, "float",
                        tag="scalar")
    n = spec.n_dim
    values = [_kahler.scalar_curvature_at(spec, z) for z in fpts]
    spread = max(values) - min(values)
    offset = max(abs(v - 4.0 * n * (n + 1)) for v in values)
    rec.add("scalar_curvature_constancy",
            "S(g~) = 4 n (n+1), constant across samples",
            max(spread, offset), 1e-7, samples=len(fpts), started=t0)

    t0 = time.perf_counter()
    z = fpts[0]
    from .jets import finite_difference_check
    from .minors import norm_square_eval

    def pot(zz):
        acc = 0.0
        for (mps, c) in spec.factors:
            acc += c * np.log(norm_square_eval(mps, zz, "float").real)
        return acc

    u = _kahler.log_potential_jet(spec, z, order=2, backend="float")
    sp = u.space
    worst_fd = 0.0
    for j in range(min(spec.m, 2)):
        jet_val = u.deriv(sp.z(j)).deriv(sp.zbar(j)).value
        err = finite_difference_check(pot, z, [("z", j), ("zbar", j)], jet_val)
        worst_fd = max(worst_fd, err)
    rec.add("jet_vs_finite_difference",
            "order-(1,1) jet partials agree with central differences",
            worst_fd, 1e-5, samples=1, started=t0)


def run_sasaki(spec: PotentialSpec, cfg: JobConfig, rec: _Recorder):
    pts = chart_points(spec.m, cfg.samples, cfg.seed, "float", tag="sasaki")
    n = spec.n_dim

    t0 = time.perf_counter()
    axiom_keys = ("eta_of_xi", "phi_squared", "metric_compatibility",
                  "d_eta_vs_metric", "displayed_metric_match")
    worst = {k: 0.0 for k in axiom_keys}
    signs = set()
    for z in pts:
        ax = _sasaki.contact_metric_axiom_residuals(spec, z)
        for k in axiom_keys:
            worst[k] = max(worst[k], ax[k])
        rep = _sasaki.reeb_and_contact_axioms(spec, z)
        signs.add(np.sign(rep["top_form_coefficient"]))
        worst["eta_of_xi"] = max(worst["eta_of_xi"], rep["eta_of_xi_residual"])
        worst["reeb"] = max(worst.get("reeb", 0.0), rep["reeb_contraction"])
    rec.add("contact_axiom_eta_xi", "eta(xi) = 1", worst["eta_of_xi"], 1e-10,
            samples=len(pts), started=t0)
    rec.add("contact_axiom_phi_squared", "phi o phi = -id + eta (x) xi",
            worst["phi_squared"], 1e-10, samples=len(pts), started=t0)
    rec.add("contact_axiom_metric", "g(phi x phi) = g - eta (x) eta",
            worst["metric_compatibility"], 1e-10, samples=len(pts), started=t0)
    rec.add("contact_axiom_d_eta", "d eta = 2 g(phi (x) id)",
            worst["d_eta_vs_metric"], 1e-10, samples=len(pts), started=t0)
    rec.add("displayed_metric_equivalence",
            "g = (I/(ell(n+1))) ((1/2) d eta (id x phi) + (I/(ell(n+1))) eta x eta)",
            worst["displayed_metric_match"], 1e-10, samples=len(pts), started=t0)
    rec.add("reeb_contraction", "iota_xi d eta = 0", worst["reeb"], 1e-10,
            samples=len(pts), started=t0)
    rec.add("contact_nondegeneracy",
            "eta ^ (d eta)^m has constant sign and stays away from zero",
            0.0 if len(signs) == 1 else 1.0, 0.0, samples=len(pts), started=t0)

    t0 = time.perf_counter()
    worst_d = Fraction(0) if cfg.backend == "exact" else 0.0
    dpts = chart_points(spec.m, cfg.samples, cfg.seed, cfg.backend, tag="deta")
    for z in dpts:
        worst_d = max(worst_d, _sasaki.d_eta_check(spec, z, backend=cfg.backend))
    rec.add("circle_bundle_curvature", "d eta = (2 pi ell / I) omega_X",
            worst_d, 0.0 if cfg.backend == "exact" else 1e-9,
            samples=len(dpts), started=t0)

    t0 = time.perf_counter()
    worst_nij = max(
        _sasaki.sasaki_nijenhuis_check(spec, z, order=max(3, cfg.jet_order - 1))
        for z in pts
    )
    rec.add("sasaki_integrability", "[phi, phi] + d eta (x) xi = 0",
            worst_nij, 1e-8, samples=len(pts), started=t0)

    t0 = time.perf_counter()
    worst_e = max(
        _sasaki.sasaki_einstein_residual(spec, z, order=cfg.jet_order)
        for z in pts
    )
    rec.add("sasaki_einstein", "Ric(g_M) = 2n g_M", worst_e, 1e-7,
            samples=len(pts), started=t0)

    t0 = time.perf_counter()
    svals = [_sasaki.sasaki_scalar_curvature(spec, z) for z in pts]
    sres = max(
        max(svals) - min(svals),
        max(abs(v - 2 * n * (2 * n + 1)) for v in svals),
    )
    rec.add("sasaki_scalar_curvature", "S(g_M) = 2n(2n+1)", sres, 1e-7,
            samples=len(pts), started=t0)

    t0 = time.perf_counter()
    worst_lie, worst_cov = 0.0, 0.0
    for z in pts[: max(2, cfg.samples // 2)]:
        k = _sasaki.killing_check(spec, z)
        worst_lie = max(worst_lie, k["lie_derivative"])
        worst_cov = max(worst_cov, k["covariant_killing"])
    rec.add("reeb_killing", "L_xi g = 0 and symmetrized nabla xi = 0",
            max(worst_lie, worst_cov), 1e-10, samples=len(pts), started=t0)

    t0 = time.perf_counter()
    worst_r = max(
        _sasaki.curvature_reeb_check(spec, z)
        for z in pts[: max(2, cfg.samples // 2)]
    )
    rec.add("curvature_along_reeb", "R(X, Y) xi = eta(Y) X - eta(X) Y",
            worst_r, 1e-7, samples=len(pts), started=t0)


def run_cone(spec: PotentialSpec, cfg: JobConfig, rec: _Recorder):
    pts = chart_points(spec.m, cfg.samples, cfg.seed, "float", tag="cone")
    rads = radii(cfg.samples, cfg.seed)
    angs = angles(cfg.samples, cfg.seed)
    cone_pts = [
        _cone.ConeChartPoint(r=rads[i], theta=angs[i], z=tuple(pts[i]))
        for i in range(len(pts))
    ]

    t0 = time.perf_counter()
    worst = max(
        _cone.cone_ricci_flat_check(spec, p, order=cfg.jet_order)
        for p in cone_pts
    )
    rec.add("cone_ricci_flat", "Ric(dr^2 + r^2 g_M) = 0", worst, 1e-7,
            samples=len(cone_pts), started=t0)

    t0 = time.perf_counter()
    res = {"J_squared": 0.0, "metric_compatibility": 0.0,
           "omega_reconstruction": 0.0, "omega_assembly": 0.0}
    for p in cone_pts:
        cx = _cone.cone_complex_structure_at(spec, p)
        for k in res:
            res[k] = max(res[k], cx[k])
    rec.add("cone_complex_structure", "J^2 = -id, g(J x J) = g",
            max(res["J_squared"], res["metric_compatibility"]), 1e-10,
            samples=len(cone_pts), started=t0)
    rec.add("cone_kahler_form", "omega = g(J (x) id) = r dr ^ eta + (r^2/2) d eta",
            max(res["omega_reconstruction"], res["omega_assembly"]), 1e-10,
            samples=len(cone_pts), started=t0)

    t0 = time.perf_counter()
    worst_c = max(_cone.cone_kahler_closedness(spec, p) for p in cone_pts[:3])
    rec.add("cone_kahler_closed", "d omega = 0", worst_c, 1e-9,
            samples=min(3, len(cone_pts)), started=t0)

    if spec.parabolic.rank == 1 and spec.ell == 1:
        t0 = time.perf_counter()
        worst_f = max(_cone.flat_cone_residual(spec, p) for p in cone_pts)
        rec.add("flat_cone_oracle",
                "the ell=1 cone over CP^1 is flat C^2 minus the origin",
                worst_f, 1e-10, samples=len(cone_pts), started=t0)

    t0 = time.perf_counter()
    worst_rt = max(_cone.bundle_round_trip_error(spec, p) for p in cone_pts)
    rec.add("bundle_coordinate_round_trip",
            "b = (r/sqrt 2) e^(-phi/2 + i theta) inverts the radius map",
            worst_rt, 1e-12, samples=len(cone_pts), started=t0)

    t0 = time.perf_counter()
    fibers = fiber_values(len(pts), cfg.seed)
    worst_g = 0.0
    for z, b in zip(pts, fibers):
        p = _cone.BundleChartPoint(z=tuple(z), b=b)
        worst_g = max(worst_g, _cone.global_potential_identity(spec, p))
    rec.add("global_kahler_potential",
            "(sqrt(-1)/2) d dbar r^2 = (ell(n+1)/I) omega_C",
            worst_g, 1e-8, samples=len(pts), started=t0)


def run_calabi(spec: PotentialSpec, cfg: JobConfig, rec: _Recorder):
    pts = chart_points(spec.m, cfg.samples, cfg.seed, "float", tag="calabi")
    fibers = fiber_values(len(pts), cfg.seed)
    bpts = [
        _cone.BundleChartPoint(z=tuple(z), b=b) for z, b in zip(pts, fibers)
    ]
    C = cfg.constant_c
    tol = 1e-8 if spec.m <= 3 else 1e-6

    t0 = time.perf_counter()
    for p in bpts:
        _calabi.calabi_metric_at(spec, p, C)  # raises unless Hermitian PD
    rec.add("calabi_positive_definite", "ansatz metric positive definite",
            0.0, 0.0, samples=len(bpts), started=t0)

    t0 = time.perf_counter()
    worst = max(
        _calabi.calabi_ricci_flat_check(spec, p, C, order=cfg.jet_order)
        for p in bpts
    )
    rec.add("calabi_ricci_flat",
            "Ric of (2 pi r^2 + C)^(1/(n+1)) (omega_X + vertical) vanishes",
            worst, tol, samples=len(bpts), started=t0)

    t0 = time.perf_counter()
    naive = max(
        _calabi.calabi_ricci_flat_check(spec, p, C, radial="naive")
        for p in bpts[:3]
    )
    decided = 1.0 if (naive > 1e-3 and worst < tol) else 0.0
    rec.add("radial_convention_decision",
            "Hermitian-norm fiber radius is the Ricci-flat reading; "
            "the literal |b|^2 chart reading fails off the zero section",
            0.0 if decided else 1.0, 0.0, samples=3, started=t0,
            extra={"naive_reading_residual": float(naive)})

    t0 = time.perf_counter()
    hb, vv, base, ev = _calabi.calabi_zero_section_blocks(spec, pts[0], C)
    zres = max(
        float(np.abs(hb - base).max()),
        abs(vv.real - ev),
        abs(vv.imag),
    )
    rec.add("calabi_zero_section_blocks",
            "b = 0 limit: block-diag(C^(1/(n+1)) g_X, C^(1/(n+1))/((n+1)C) K)",
            zres, 1e-13, samples=1, started=t0)

    t0 = time.perf_counter()
    worst_w = max(
        _calabi.calabi_determinant_witness(spec, z, C) for z in pts[:3]
    )
    rec.add("monge_ampere_witness",
            "det g_CY = det(g_X) K / (n+1) is fiber-constant",
            worst_w, 1e-12, samples=3, started=t0)


def run_asymptotics(spec: PotentialSpec, cfg: JobConfig, rec: _Recorder):
    C = cfg.constant_c
    rads = list(cfg.radii)

    t0 = time.perf_counter()
    gaps = _calabi.asymptotic_comparison(spec, C, rads)
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    rec.add("asymptotic_gap_decay",
            "operator-norm gap to the matched cone decreases along the radii",
            0.0 if monotone else 1.0, 0.0, samples=len(rads), started=t0,
            extra={"gaps": gaps})
    rec.add("asymptotic_gap_small", "gap at the final radius below 1e-3",
            gaps[-1], 1e-3, samples=1, started=t0)

    t0 = time.perf_counter()
    gaps2 = _calabi.asymptotic_comparison(spec, 2.0 * C + 0.5, rads)
    rec.add("asymptotic_c_independence",
            "different C give the same cone limit",
            abs(gaps[-1] - gaps2[-1]), 1e-3, samples=len(rads), started=t0)

    t0 = time.perf_counter()
    exact_cy, exact_cone, est = _calabi.radial_growth_exponents(spec)
    sym_ok = exact_cy == exact_cone
    rec.add("radial_growth_exponent",
            "potential growth exponent 1/(n+1) matches the cone "
            "reparameterization exactly",
            abs(est - float(exact_cy)) + (0.0 if sym_ok else 1.0), 1e-6,
            samples=1, started=t0,
            extra={"exponent": f"{exact_cy.numerator}/{exact_cy.denominator}"})

    if spec.parabolic.rank == 1:
        t0 = time.perf_counter()
        pts = chart_points(2, 3, cfg.seed, "float", tag="eh")
        worst = 0.0
        for s in (0.1, 0.5, 1.0):
            for z in pts:
                zz = [z[0] + 0.9, z[1] + 0.4j]  # keep |z| > 0
                worst = max(worst, _calabi.eguchi_hanson_oracle(s, zz))
        rec.add("eguchi_hanson_ricci_flat",
                "sqrt(-1) d dbar F_s is Ricci-flat for s in {0.1, 0.5, 1}",
                worst, 1e-8, samples=9, started=t0)

        t0 = time.perf_counter()
        gap = _calabi.eguchi_hanson_flat_gap(1e-3, [1.0, 0.0])
        rec.add("eguchi_hanson_flat_limit",
                "g_s approaches the flat metric as s -> 0",
                gap, 1e-2, samples=1, started=t0)

        t0 = time.perf_counter()
        inv = _calabi.eguchi_hanson_phase_invariance(0.5, [0.7 + 0.2j, -0.4 + 0.5j])
        det1 = abs(_calabi.eguchi_hanson_determinant(0.5, [0.7 + 0.2j, -0.4 + 0.5j]) - 1.0)
        rec.add("eguchi_hanson_radial_symmetry",
                "g_s depends on z only through |z|^2; det g_s = 1",
                max(inv, det1), 1e-12, samples=1, started=t0)


_SUITE_RUNNERS = {
    "base": run_base,
    "sasaki": run_sasaki,
    "cone": run_cone,
    "calabi": run_calabi,
    "asymptotics": run_asymptotics,
}


def run_verification(cfg: JobConfig) -> dict:
    """Run the configured suites and assemble the report dict."""
    spec = cfg.validate()
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": "flagcone",
        "config": {
            "series": cfg.series,
            "rank": cfg.rank,
            "theta": sorted(cfg.theta),
            "ell": cfg.ell,
            "backend": cfg.backend,
            "jet_order": cfg.jet_order,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "constant_C": cfg.constant_c,
            "radii": list(cfg.radii),
            "suites": list(cfg.suites),
            "tol_scale": cfg.tol_scale,
        },
        "suites": {},
    }
    if "info" in cfg.suites:
        report["info"] = describe(spec)
    overall = True
    for suite in cfg.suites:
        if suite == "info":
            continue
        rec = _Recorder(cfg)
        _SUITE_RUNNERS[suite](spec, cfg, rec)
        passed = all(c["passed"] for c in rec.checks)
        overall = overall and passed
        report["suites"][suite] = {"checks": rec.checks, "passed": passed}
    report["overall_passed"] = overall
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
