"""Ricci-flat bundle metrics: the Calabi ansatz on K_{X_P}, asymptotics to
the cone, and the Eguchi-Hanson oracle.

The ansatz metric in the holomorphic frame (dz_1..dz_m, db) is

    G_jk = P^(1/(n+1)) g^X_jk + c K b bbar A_j Abar_k
    G_jb = c K b A_j,   G_bb = c K,   c = P^(1/(n+1)-1) / (n+1)

with A = d log K, P = 2 pi t + C, and t the squared fiber radius.  Two
readings of t are implemented:

  * "hermitian": t = |b|^2 K(z), the Hermitian norm of the fiber point.
    The vertical block carries the frame weight K; the metric is globally
    defined and Ricci-flat (det G = det(g^X) K / (n+1), fiber-constant).
  * "naive": t = |b|^2 and no K weight, reading the chart formula
    literally in the unitary-frame normalization.  This is
    trivialization-dependent and fails the Ricci-flatness check away from
    the zero section; it is kept as the documented failing alternative.

Only the crepant case ell = I(X_P) makes K_{X_P} the resolution target,
so the ansatz requires it.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .cone import (
    BundleChartPoint,
    ConeChartPoint,
    _ConeFields,
    hermitian_weight,
)
from .errors import ChartError, ConfigError, InternalConsistencyError
from .jets import Jet, JetSpace, jet_det
from .kahler import TWO_PI, PotentialSpec, log_potential_jet, norm_square_jets
from .rational import get_backend
from .realforms import hermitian_to_real_metric


def _require_crepant(spec: PotentialSpec):
    if spec.ell != spec.fano:
        raise ConfigError(
            f"Calabi ansatz lives on K_X: needs ell = I(X_P) = {spec.fano}, "
            f"got ell = {spec.ell} ({spec.parabolic.crepancy()})"
        )


class _CalabiFields:
    """Jets of the ansatz metric entries over (z_1..z_m, b)."""

    def __init__(self, spec: PotentialSpec, p: BundleChartPoint, C: float,
                 radial: str = "hermitian", order: int = 4):
        _require_crepant(spec)
        if C <= 0:
            raise ChartError("the ansatz constant C must be positive")
        if radial not in ("hermitian", "naive"):
            raise ConfigError(f"unknown radial convention {radial!r}")
        self.spec = spec
        self.C = float(C)
        self.radial = radial
        self.backend = get_backend("float")
        m = spec.m
        self.space = JetSpace(m + 1, order)
        self.u = log_potential_jet(spec, p.z, order=order, backend=self.backend,
                                   space=self.space)
        sj = norm_square_jets(spec, p.z, self.space, self.backend)
        K = None
        for (_, c), s in zip(spec.factors, sj):
            term = s._int_pow(c)
            K = term if K is None else K * term
        self.K = K
        self.b = Jet.variable(self.space, self.space.z(m), complex(p.b),
                              self.backend)
        self.bbar = self.b.conjugate()
        self.A = [self.u.deriv(self.space.z(j)) for j in range(m)]

    def metric_jets(self):
        sp = self.space
        m = self.spec.m
        n1 = self.spec.n_dim + 1
        bb = self.b * self.bbar
        t = bb * self.K if self.radial == "hermitian" else bb
        P = t.scale(TWO_PI) + self.C
        Pe = P.real_pow(1.0 / n1)
        Pc = P.real_pow(1.0 / n1 - 1.0)
        weight = (Pc * self.K if self.radial == "hermitian" else Pc).scale(1.0 / n1)
        G = [[None] * (m + 1) for _ in range(m + 1)]
        Abar = [a.conjugate() for a in self.A]
        inv2pi = 1.0 / TWO_PI
        for j in range(m):
            gx_row = self.u.deriv(sp.z(j))
            for k in range(m):
                gx = gx_row.deriv(sp.zbar(k)).scale(inv2pi)
                G[j][k] = Pe * gx + weight * bb * self.A[j] * Abar[k]
            G[j][m] = weight * self.b * self.A[j]
            G[m][j] = weight * self.bbar * Abar[j]
        G[m][m] = weight
        return G

    def metric_values(self) -> np.ndarray:
        G = self.metric_jets()
        m1 = self.spec.m + 1
        return np.array(
            [[complex(G[j][k].value) for k in range(m1)] for j in range(m1)]
        )


def calabi_metric_at(spec: PotentialSpec, p: BundleChartPoint, C: float = 1.0,
                     radial: str = "hermitian") -> np.ndarray:
    """Hermitian (m+1) x (m+1) ansatz metric in the (z, b) frame."""
    cf = _CalabiFields(spec, p, C, radial=radial, order=2)
    vals = cf.metric_values()
    w = np.linalg.eigvalsh(vals)
    if w.min() <= 0:
        raise InternalConsistencyError("Calabi ansatz metric not positive definite")
    return vals


def calabi_ricci_flat_check(spec: PotentialSpec, p: BundleChartPoint,
                            C: float = 1.0, radial: str = "hermitian",
                            order: int = 4) -> float:
    """Max-norm of the Kahler-Ricci tensor -d dbar log det(G)."""
    cf = _CalabiFields(spec, p, C, radial=radial, order=order)
    G = cf.metric_jets()
    ld = jet_det(G).log()
    sp = cf.space
    m1 = spec.m + 1
    worst = 0.0
    for a in range(m1):
        da = ld.deriv(sp.z(a))
        for c in range(m1):
            worst = max(worst, abs(complex(da.deriv(sp.zbar(c)).value)))
    return worst


def calabi_determinant_witness(spec: PotentialSpec, z, C: float = 1.0,
                               fiber_points=(0.4, 0.9, 1.7)) -> float:
    """Fiber-constancy of det G at fixed z (Monge-Ampere witness).

    For the hermitian reading det G = det(g^X) K / (n+1) independently of
    b, a sharp consequence of Ricci-flatness.
    """
    dets = []
    for rb in fiber_points:
        p = BundleChartPoint(z=tuple(z), b=complex(rb, 0.1 * rb))
        cf = _CalabiFields(spec, p, C, order=2)
        dets.append(complex(jet_det(cf.metric_jets()).value))
    ref = dets[0]
    return max(abs(d - ref) / abs(ref) for d in dets)


def calabi_zero_section_blocks(spec: PotentialSpec, z, C: float = 1.0):
    """(horizontal block, vertical entry, base metric, expected vertical).

    At b = 0 the ansatz degenerates to block-diagonal form with horizontal
    block C^(1/(n+1)) g^X and vertical entry C^(1/(n+1)) / ((n+1) C).
    """
    from .kahler import metric_at

    p = BundleChartPoint(z=tuple(z), b=0.0 + 0.0j)
    cf = _CalabiFields(spec, p, C, order=2)
    G = cf.metric_values()
    m = spec.m
    n1 = spec.n_dim + 1
    base = metric_at(spec, z).matrix
    Kz = hermitian_weight(spec, z)
    expected_vert = C ** (1.0 / n1 - 1.0) * Kz / n1
    return G[:m, :m], G[m, m], C ** (1.0 / n1) * base, expected_vert


# ---------------------------------------------------------------------------
# asymptotics

def cone_comparison_radius_sq(spec: PotentialSpec, t: float) -> float:
    """Cone radius matched to the ansatz potential at leading order.

    The ansatz potential grows like F(t) ~ (n+1)(2 pi)^(1/(n+1)-1)
    t^(1/(n+1)); identifying it with the standard cone potential rhat^2/2
    gives rhat^2 = 2(n+1)(2 pi)^(1/(n+1)-1) t^(1/(n+1)).  With this radius
    map the C -> 0 member of the ansatz family IS the cone metric
    (all three blocks match identically), so the C > 0 gap decays like
    C / t.
    """
    n1 = spec.n_dim + 1
    return 2.0 * n1 * TWO_PI ** (1.0 / n1 - 1.0) * t ** (1.0 / n1)


def radial_growth_exponents(spec: PotentialSpec) -> tuple:
    """(ansatz potential exponent, cone reparameterization exponent).

    Both are 1/(n+1) by construction; returned as exact fractions so the
    match is checked symbolically, plus a numeric estimate of the ansatz
    exponent from the potential's log-derivative at large fiber radius.
    """
    n1 = spec.n_dim + 1
    exact = Fraction(1, n1)
    t = 1.0e8
    # d log(F' t) / d log t for F' t = (2 pi t + C)^(1/(n+1)) / (2 pi)
    h = 1.0e-3
    f = lambda s: math.log((TWO_PI * math.exp(s) + 1.0)) / n1
    est = (f(math.log(t) + h) - f(math.log(t) - h)) / (2 * h)
    return exact, exact, est


def asymptotic_comparison(spec: PotentialSpec, C: float, radii, z=None,
                          psi: float = 0.35) -> list:
    """Operator-norm gaps between the ansatz and the matched cone metric.

    At each fiber radius R (t = R^2) the cone metric at the reparameterized
    radius is pulled back to the (z, b) chart and compared with the ansatz
    metric; the gap sequence must decrease to zero.
    """
    _require_crepant(spec)
    if z is None:
        z = tuple(0.1 * (j + 1) + 0.05j for j in range(spec.m))
    gaps = []
    for R in radii:
        t = float(R) ** 2
        w = hermitian_weight(spec, z)
        b = math.sqrt(t / w) * cmath.exp(1j * psi)
        p = BundleChartPoint(z=tuple(z), b=b)
        g_cy = hermitian_to_real_metric(calabi_metric_at(spec, p, C))
        g_cone = _matched_cone_pullback(spec, p, t)
        gap = np.linalg.norm(np.linalg.solve(g_cone, g_cy) - np.eye(len(g_cy)), 2)
        gaps.append(float(gap))
    return gaps


def _matched_cone_pullback(spec: PotentialSpec, p: BundleChartPoint, t: float):
    """Pull the cone metric back through the potential-matched radius map."""
    backend = get_backend("float")
    m = spec.m
    rhat = math.sqrt(cone_comparison_radius_sq(spec, t))
    cone_pt = ConeChartPoint(r=rhat, theta=math.atan2(p.b.imag, p.b.real),
                             z=tuple(p.z))
    cf = _ConeFields(spec, cone_pt, order=2, backend=backend)
    from .curvature import metric_values

    G_cone = metric_values(cf.metric_jets())
    # Jacobian d(rhat, x.., theta)/d(x.., Re b, Im b): rhat^2 ~ t^(1/(n+1))
    space = JetSpace(m, 2)
    u = log_potential_jet(spec, p.z, order=2, backend=backend, space=space)
    du = [complex(u.deriv(space.z(j)).value) for j in range(m)]
    n1 = spec.n_dim + 1
    b = complex(p.b)
    b2 = abs(b) ** 2
    D = 2 * m + 2
    jac = np.zeros((D, D))
    # d rhat = rhat/(2(n+1)) d log t;  log t = log |b|^2 + log K
    for j in range(m):
        jac[0, 2 * j] = rhat / (2 * n1) * (2.0 * du[j].real)
        jac[0, 2 * j + 1] = rhat / (2 * n1) * (-2.0 * du[j].imag)
    jac[0, 2 * m] = rhat / (2 * n1) * (2.0 * b.real / b2)
    jac[0, 2 * m + 1] = rhat / (2 * n1) * (2.0 * b.imag / b2)
    for a in range(2 * m):
        jac[1 + a, a] = 1.0
    jac[D - 1, 2 * m] = -b.imag / b2
    jac[D - 1, 2 * m + 1] = b.real / b2
    return jac.T @ G_cone @ jac


# ---------------------------------------------------------------------------
# Eguchi-Hanson oracle

def eguchi_hanson_potential_jet(s: float, z, order: int = 4) -> Jet:
    """F_s(R) = sqrt(R^2 + s^2) + s log(R / (s + sqrt(s^2 + R^2))), R = |z|^2."""
    if not 0 < s <= 1:
        raise ChartError("deformation parameter s must lie in (0, 1]")
    backend = get_backend("float")
    space = JetSpace(2, order)
    z1 = Jet.variable(space, space.z(0), complex(z[0]), backend)
    z2 = Jet.variable(space, space.z(1), complex(z[1]), backend)
    R = z1 * z1.conjugate() + z2 * z2.conjugate()
    if complex(R.value).real <= 0:
        raise ChartError("Eguchi-Hanson chart requires |z| > 0")
    Q = (R * R + s * s).real_pow(0.5)
    return Q + (R.log() - (Q + s).log()).scale(s)


def eguchi_hanson_metric_at(s: float, z) -> np.ndarray:
    F = eguchi_hanson_potential_jet(s, z, order=2)
    sp = F.space
    G = np.zeros((2, 2), dtype=complex)
    for a in range(2):
        da = F.deriv(sp.z(a))
        for c in range(2):
            G[a, c] = complex(da.deriv(sp.zbar(c)).value)
    return G


def eguchi_hanson_oracle(s: float, z) -> float:
    """Kahler-Ricci residual of sqrt(-1) d dbar F_s: zero for every s."""
    F = eguchi_hanson_potential_jet(s, z, order=4)
    sp = F.space
    H = [[F.deriv(sp.z(a)).deriv(sp.zbar(c)) for c in range(2)] for a in range(2)]
    ld = jet_det(H).log()
    worst = 0.0
    for a in range(2):
        da = ld.deriv(sp.z(a))
        for c in range(2):
            worst = max(worst, abs(complex(da.deriv(sp.zbar(c)).value)))
    return worst


def eguchi_hanson_flat_gap(s: float, z) -> float:
    """Operator-norm distance of g_s from the flat metric at z."""
    G = eguchi_hanson_metric_at(s, z)
    return float(np.linalg.norm(G - np.eye(2), 2))


def eguchi_hanson_phase_invariance(s: float, z, phase: float = 0.9) -> float:
    """G(e^(i phase) z) = G(z): the potential depends on z only through R."""
    G1 = eguchi_hanson_metric_at(s, z)
    w = cmath.exp(1j * phase)
    G2 = eguchi_hanson_metric_at(s, [w * z[0], w * z[1]])
    return float(np.abs(G1 - G2).max())


def eguchi_hanson_determinant(s: float, z) -> complex:
    """det g_s; identically 1, the sharp Ricci-flatness witness."""
    return complex(np.linalg.det(eguchi_hanson_metric_at(s, z)))
