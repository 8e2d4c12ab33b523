"""The Kahler cone over the circle bundle and its bundle-chart picture.

Cone coordinates are (r, x_1, y_1, ..., x_m, y_m, theta) with metric
dr (x) dr + r^2 g_M and Kahler form (1/2) d(r^2 eta_bar).  The same space
is a punctured line-bundle total space with holomorphic coordinates
(z, b); there the squared Hermitian fiber norm H = |b|^2 K^(ell/I) links
the two radial conventions

    fiber_radius^2 = H,      cone_radius^2 = 2 H,

which are never mixed implicitly: each accessor is named.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curvature import ANGLE, RADIAL, RealFrame, X, Y, ricci_tensor
from .errors import ChartError
from .jets import Jet
from .kahler import PotentialSpec
from .minors import norm_square_eval
from .rational import get_backend
from .realforms import hermitian_to_real_form
from .sasaki import _Fields


@dataclass(frozen=True)
class ConeChartPoint:
    """(r, theta, z) with r > 0."""

    r: float
    theta: float
    z: tuple

    def __post_init__(self):
        if not self.r > 0:
            raise ChartError("cone radius must be positive")


@dataclass(frozen=True)
class BundleChartPoint:
    """Chart point (z, b) of the line-bundle total space, b != 0 off the
    zero section."""

    z: tuple
    b: complex


def hermitian_weight(spec: PotentialSpec, z) -> float:
    """K^(ell/I)(z): squared Hermitian norm of the unit frame at z."""
    acc = 1.0
    for mps, c in spec.factors:
        acc *= float(norm_square_eval(mps, z, "float").real) ** c
    return acc ** (spec.ell / spec.fano)


def fiber_radius_sq(spec: PotentialSpec, p: BundleChartPoint) -> float:
    """H(u, u) = |b|^2 K^(ell/I)(z)."""
    return abs(p.b) ** 2 * hermitian_weight(spec, p.z)

def cone_radius_sq(spec: PotentialSpec, p: BundleChartPoint) -> float:
    """The cone's r^2 = 2 H(u, u)."""
    return 2.0 * fiber_radius_sq(spec, p)


def bundle_to_cone(spec: PotentialSpec, p: BundleChartPoint) -> ConeChartPoint:
    if p.b == 0:
        raise ChartError("zero-section point has no cone image")
    return ConeChartPoint(
        r=math.sqrt(cone_radius_sq(spec, p)),
        theta=math.atan2(p.b.imag, p.b.real),
        z=tuple(p.z),
    )


def cone_to_bundle(spec: PotentialSpec, p: ConeChartPoint) -> BundleChartPoint:
    """b = (r/sqrt(2)) e^(-phi/2 + i theta), phi = (ell/I) log K."""
    w = hermitian_weight(spec, p.z)
    b = (p.r / math.sqrt(2.0)) / math.sqrt(w) * cmath.exp(1j * p.theta)
    return BundleChartPoint(z=tuple(p.z), b=b)


class _ConeFields:
    """Jets of the cone metric over (r, x, y, theta)."""

    def __init__(self, spec: PotentialSpec, p: ConeChartPoint, order: int = 4,
                 backend="float"):
        if p.r <= 0:
            raise ChartError("cone radius must be positive")
        self.base = _Fields(spec, p.z, order=order, backend=backend, extra_real=1)
        self.spec = spec
        self.point = p
        space = self.base.space
        bk = self.base.backend
        coords = [(RADIAL, 0)]
        for j in range(spec.m):
            coords += [(X, j), (Y, j)]
        coords.append((ANGLE, None))
        self.frame = RealFrame(space, coords, bk)
        self.r_jet = Jet.variable(space, space.real_var(0), p.r, bk)
        self.r2 = self.r_jet * self.r_jet

    @property
    def dim(self):
        return 2 * self.spec.m + 2

    def metric_jets(self):
        D = self.dim
        gM = self.base.metric_jets()
        zero = self.base.frame.zero(self.r2.order)
        one = Jet.constant(self.base.space, 1, self.base.backend)
        g = [[zero for _ in range(D)] for _ in range(D)]
        g[0][0] = one
        for a in range(D - 1):
            for b in range(D - 1):
                g[1 + a][1 + b] = self.r2 * gM[a][b]
        return g

    def kahler_potential_one_form(self):
        """Phi = r^2 eta_bar as jets over the cone coordinates."""
        zero = self.base.frame.zero(self.r2.order)
        return [zero] + [self.r2 * e for e in self.base.eta_bar]

    def kahler_form_values(self) -> np.ndarray:
        """omega = (1/2) d(r^2 eta_bar) as an antisymmetric value matrix."""
        phi = self.kahler_potential_one_form()
        D = self.dim
        out = np.zeros((D, D))
        for a in range(D):
            for b in range(a + 1, D):
                v = 0.5 * (
                    complex(self.frame.d(phi[b], a).value)
                    - complex(self.frame.d(phi[a], b).value)
                )
                out[a, b] = v.real
                out[b, a] = -v.real
        return out

    def kahler_form_direct(self) -> np.ndarray:
        """omega = r dr ^ eta_bar + (r^2/2) d eta_bar, assembled termwise."""
        D = self.dim
        out = np.zeros((D, D))
        r = self.point.r
        eta_bar = self.base.values(self.base.eta_bar).real
        deta = self.base.d_eta_bar_values()
        for a in range(D - 1):
            out[0, 1 + a] = r * eta_bar[a]
            out[1 + a, 0] = -r * eta_bar[a]
        out[1:, 1:] = 0.5 * r * r * deta
        return out


def cone_metric_at(spec: PotentialSpec, p: ConeChartPoint, backend="float") -> np.ndarray:
    """g_C = dr (x) dr + r^2 g_M in (r, x, y, theta) coordinates."""
    cf = _ConeFields(spec, p, order=2, backend=backend)
    from .curvature import metric_values

    return metric_values(cf.metric_jets())


def cone_ricci_flat_check(spec: PotentialSpec, p: ConeChartPoint,
                          backend="float", order: int = 4) -> float:
    """Max-norm of Ric(g_C); zero exactly when g_M is Sasaki-Einstein."""
    cf = _ConeFields(spec, p, order=order, backend=backend)
    ric = ricci_tensor(cf.frame, cf.metric_jets())
    return float(np.abs(ric).max())


def cone_complex_structure_at(spec: PotentialSpec, p: ConeChartPoint,
                              backend="float") -> dict:
    """J_C and its compatibility residuals.

    J(Y) = phi(Y) - eta_bar(Y) r d/dr on the slice, J(r d/dr) = xi; checks
    J^2 = -Id, g(J x J) = g, and omega = g(J (x) id).
    """
    cf = _ConeFields(spec, p, order=3, backend=backend)
    f = cf.base
    D = cf.dim
    from .curvature import metric_values

    g = metric_values(cf.metric_jets())
    eta_bar = f.values(f.eta_bar).real
    phi_j = f.phi_jets()
    phi = np.array(
        [[complex(phi_j[a][b].value).real for b in range(D - 1)] for a in range(D - 1)]
    )
    xi = f.xi_vector()
    r = p.r
    J = np.zeros((D, D))
    J[1:, 1:] = phi
    J[0, 1:] = -r * eta_bar            # d/dr component of J on slice vectors
    J[1:, 0] = xi / r                  # J(d/dr) = xi / r
    omega = cf.kahler_form_values()
    res_J2 = float(np.abs(J @ J + np.eye(D)).max())
    res_compat = float(np.abs(J.T @ g @ J - g).max())
    res_omega = float(np.abs(J.T @ g - omega).max())
    res_assembly = float(np.abs(omega - cf.kahler_form_direct()).max())
    return {
        "J": J,
        "J_squared": res_J2,
        "metric_compatibility": res_compat,
        "omega_reconstruction": res_omega,
        "omega_assembly": res_assembly,
    }


def cone_kahler_closedness(spec: PotentialSpec, p: ConeChartPoint,
                           backend="float") -> float:
    """Max |d omega(e_a, e_b, e_c)| over coordinate triples."""
    cf = _ConeFields(spec, p, order=3, backend=backend)
    phi = cf.kahler_potential_one_form()
    D = cf.dim
    # omega components as jets
    om = [[None] * D for _ in range(D)]
    for a in range(D):
        for b in range(D):
            if a < b:
                om[a][b] = (cf.frame.d(phi[b], a) - cf.frame.d(phi[a], b)).scale(0.5)
            elif a == b:
                om[a][b] = cf.base.frame.zero(phi[0].order - 1)
    worst = 0.0
    for a in range(D):
        for b in range(a + 1, D):
            for c in range(b + 1, D):
                v = (
                    complex(cf.frame.d(om[b][c], a).value)
                    - complex(cf.frame.d(om[a][c], b).value)
                    + complex(cf.frame.d(om[a][b], c).value)
                )
                worst = max(worst, abs(v))
    return worst


def flat_cone_residual(spec: PotentialSpec, p: ConeChartPoint) -> float:
    """Exactness oracle: the ell = 1 cone over CP^1 is flat C^2 minus 0.

    Pulls the Euclidean metric back through
    (r, theta, z) -> r e^(i theta) (1, z) / sqrt(1 + |z|^2)
    and compares with the cone metric in chart coordinates.
    """
    if spec.parabolic.rank != 1 or spec.ell != 1:
        raise ChartError("flat oracle applies to the rank-1, ell=1 cone only")
    (z,) = [complex(v) for v in p.z]
    r, th = p.r, p.theta
    x, y = z.real, z.imag
    f = (1.0 + abs(z) ** 2) ** -0.5
    ph = cmath.exp(1j * th)
    fx, fy = -x * f**3, -y * f**3
    # complex Jacobian of (u1, u2) wrt (r, x, y, theta)
    M = np.array(
        [
            [ph * f, r * ph * fx, r * ph * fy, 1j * r * ph * f],
            [
                ph * f * z,
                r * ph * (fx * z + f),
                r * ph * (fy * z + 1j * f),
                1j * r * ph * f * z,
            ],
        ]
    )
    G_flat = (M.conj().T @ M).real
    G_cone = cone_metric_at(spec, p)
    # reorder: oracle columns are (r, x, y, theta) = chart order already
    return float(np.abs(G_flat - G_cone).max())


# ---------------------------------------------------------------------------
# bundle-chart (z, b) picture

def bundle_round_trip_error(spec: PotentialSpec, p: ConeChartPoint) -> float:
    q = cone_to_bundle(spec, p)
    back = bundle_to_cone(spec, q)
    dth = (back.theta - p.theta + math.pi) % (2 * math.pi) - math.pi
    return max(abs(back.r - p.r), abs(dth))


def global_potential_identity(spec: PotentialSpec, p: BundleChartPoint,
                              order: int = 4) -> float:
    """Residual of (sqrt(-1)/2) d dbar r^2 = (ell(n+1)/I) omega_C.

    The left side is computed by jets in the holomorphic (z, b) chart with
    r^2 = 2 |b|^2 K^(ell/I); the right side pulls the cone Kahler form
    through the coordinate identification.
    """
    if p.b == 0:
        raise ChartError("global potential identity needs b != 0")
    backend = get_backend("float")
    from .jets import JetSpace

    m = spec.m
    space = JetSpace(m + 1, order)
    from .kahler import log_potential_jet

    b0 = complex(p.b)
    bj = Jet.variable(space, space.z(m), b0, backend)
    # r^2 = 2 |b|^2 e^phi; e^phi = K^(ell/I) via real_pow of the product K
    Kj = _weight_jet(spec, p.z, space, backend, order)
    r2 = (bj * bj.conjugate() * Kj).scale(2.0)
    # complex Hessian of r^2 in (z_1..z_m, b)
    H = np.zeros((m + 1, m + 1), dtype=complex)
    for a in range(m + 1):
        da = r2.deriv(space.z(a))
        for c in range(m + 1):
            H[a, c] = complex(da.deriv(space.zbar(c)).value)
    lhs = 0.5 * hermitian_to_real_form(H)

    cone_pt = bundle_to_cone(spec, p)
    cf = _ConeFields(spec, cone_pt, order=3, backend=backend)
    omega = cf.kahler_form_values()
    jac = _bundle_to_cone_jacobian(spec, p, cone_pt)
    rhs = (spec.ell * (spec.n_dim + 1) / spec.fano) * (jac.T @ omega @ jac)
    return float(np.abs(lhs - rhs).max())


def _weight_jet(spec, z, space, backend, order):
    """K^(ell/I) as a jet (K is the integer-exponent product of norm squares)."""
    from .kahler import norm_square_jets

    sj = norm_square_jets(spec, z, space, backend)
    K = None
    for (_, c), s in zip(spec.factors, sj):
        term = s._int_pow(c)
        K = term if K is None else K * term
    if spec.ell == spec.fano:
        return K
    return K.real_pow(spec.ell / spec.fano)


def _bundle_to_cone_jacobian(spec, p: BundleChartPoint, cone_pt: ConeChartPoint):
    """d(r, x.., y.., theta)/d(x.., y.., Re b, Im b) at the point."""
    m = spec.m
    backend = get_backend("float")
    from .jets import JetSpace
    from .kahler import log_potential_jet

    space = JetSpace(m, 2)
    u = log_potential_jet(spec, p.z, order=2, backend=backend, space=space)
    du = [complex(u.deriv(space.z(j)).value) for j in range(m)]
    r = cone_pt.r
    scale = spec.ell / spec.fano
    b = complex(p.b)
    b2 = abs(b) ** 2
    D_cone = 2 * m + 2
    D_bun = 2 * m + 2
    jac = np.zeros((D_cone, D_bun))
    # dr row: r/2 * d log(|b|^2 e^phi)
    for j in range(m):
        jac[0, 2 * j] = 0.5 * r * scale * (2.0 * du[j].real)
        jac[0, 2 * j + 1] = 0.5 * r * scale * (-2.0 * du[j].imag)
    jac[0, 2 * m] = r * b.real / b2
    jac[0, 2 * m + 1] = r * b.imag / b2
    # base block: identity on (x, y)
    for a in range(2 * m):
        jac[1 + a, a] = 1.0
    # theta row: d atan2(Im b, Re b)
    jac[D_cone - 1, 2 * m] = -b.imag / b2
    jac[D_cone - 1, 2 * m + 1] = b.real / b2
    return jac
