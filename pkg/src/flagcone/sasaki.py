"""Contact forms, phi-tensor and the Sasaki-Einstein metric on U x S^1.

The circle bundle over the flag manifold is modeled on the trivialized
chart only; all fields are invariant along the circle, so jets never carry
the angle as a variable and angular derivatives are structural zeros.

Real chart coordinates: (x_1, y_1, ..., x_m, y_m, theta), z_j = x_j + i y_j.
With u = log K the structure tensors are

  eta     = (ell/I) sum_j [Im(d_j u) dx_j + Re(d_j u) dy_j] + dtheta
  eta_bar = (I/(ell(n+1))) eta
  xi      = (ell(n+1)/I) d/dtheta
  g       = 2 Re(g~_jk dz (x) dzbar) + eta_bar (x) eta_bar,  g~ = Hess(u)/(2(n+1))
  phi     = lift of J through the horizontal distribution ker(eta_bar)

and n = dim_C X_P.  The local expressions are covering-degree aware only
through the fiber normalization: the dtheta coefficient of eta_bar scales
like 1/ell while its horizontal part does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import (
    killing_residual,
    metric_values,
    ricci_tensor,
    riemann_applied,
    scalar_curvature,
    standard_frame,
)
from .errors import ContactDegeneracyError, InternalConsistencyError
from .jets import Jet, JetSpace
from .kahler import PotentialSpec, hessian_of, log_potential_jet
from .rational import get_backend
from .realforms import hermitian_to_real_form, pfaffian


@dataclass(frozen=True)
class ContactChartFrame:
    """Metadata for the (x, y, theta) chart on the circle bundle."""

    m: int
    ell: int
    fano: int

    @property
    def dim(self) -> int:
        return 2 * self.m + 1

    @property
    def coordinates(self) -> tuple:
        names = []
        for j in range(self.m):
            names += [f"x{j + 1}", f"y{j + 1}"]
        return tuple(names + ["theta"])


@dataclass(frozen=True)
class SasakiStructureSample:
    """Structure tensors evaluated at one chart point."""

    point: tuple
    eta_bar: np.ndarray
    xi: np.ndarray
    phi: np.ndarray
    g: np.ndarray


class _Fields:
    """Jets of every structure tensor at one chart point."""

    def __init__(self, spec: PotentialSpec, z, order: int = 4, backend="float",
                 extra_real: int = 0):
        self.spec = spec
        self.backend = get_backend(backend)
        self.m = spec.m
        self.n1 = spec.n_dim + 1
        self.ell = spec.ell
        self.fano = spec.fano
        self.space = JetSpace(self.m, order, extra_real=extra_real)
        self.frame = standard_frame(self.space, self.m, self.backend, with_angle=True)
        self.u = log_potential_jet(spec, z, order=order, backend=self.backend,
                                   space=self.space)
        self.du = [self.u.deriv(self.space.z(j)) for j in range(self.m)]
        if self.backend.exact:
            self.kappa = Fraction(self.fano, self.ell * self.n1)
            self.ell_over_i = Fraction(self.ell, self.fano)
            inv_n1 = Fraction(1, self.n1)
        else:
            self.kappa = self.fano / (self.ell * self.n1)
            self.ell_over_i = self.ell / self.fano
            inv_n1 = 1.0 / self.n1
        # unnormalized contact form components
        self.eta = []
        for j in range(self.m):
            self.eta.append(self.du[j].imag().scale(self.ell_over_i))
            self.eta.append(self.du[j].real().scale(self.ell_over_i))
        self.eta.append(Jet.constant(self.space, 1, self.backend))
        self.eta_bar = [e.scale(self.kappa) for e in self.eta]
        # base Hermitian block A = Hess(u)/(n+1) = 2 g~
        H = hessian_of(self.u)
        self.A = [[H[j][k].scale(inv_n1) for k in range(self.m)] for j in range(self.m)]

    @property
    def dim(self) -> int:
        return 2 * self.m + 1

    def xi_vector(self) -> np.ndarray:
        xi = np.zeros(self.dim)
        xi[-1] = float(1 / self.kappa) if self.backend.exact else 1.0 / self.kappa
        return xi

    def metric_jets(self):
        """g = base real block + eta_bar (x) eta_bar, as jets."""
        D = self.dim
        zero = self.frame.zero(self.u.order - 2)
        g = [[zero for _ in range(D)] for _ in range(D)]
        for j in range(self.m):
            for k in range(self.m):
                a = self.A[j][k]
                re = a.real()
                im = a.imag()
                g[2 * j][2 * k] = re
                g[2 * j + 1][2 * k + 1] = re
                g[2 * j][2 * k + 1] = im
                g[2 * j + 1][2 * k] = -im
        for a in range(D):
            for b in range(D):
                g[a][b] = g[a][b] + self.eta_bar[a] * self.eta_bar[b]
        return g

    def phi_jets(self):
        """phi columns: phi(dx_j) = dy_j - eta(dy_j) dtheta-part, etc."""
        D = self.dim
        zero = self.frame.zero(self.u.order - 1)
        one = Jet.constant(self.space, 1, self.backend)
        phi = [[zero for _ in range(D)] for _ in range(D)]
        for j in range(self.m):
            cx, cy = 2 * j, 2 * j + 1
            phi[cy][cx] = one
            phi[cx][cy] = -one
            # theta row carries the connection: eta(dy_j), eta(dx_j) are the
            # unnormalized components (eta_bar / kappa)
            phi[D - 1][cx] = -self.eta[cy]
            phi[D - 1][cy] = self.eta[cx]
        return phi

    def d_eta_bar_values(self) -> np.ndarray:
        D = self.dim
        out = np.zeros((D, D))
        for a in range(D):
            for b in range(a + 1, D):
                v = complex(self.frame.d(self.eta_bar[b], a).value) - complex(
                    self.frame.d(self.eta_bar[a], b).value
                )
                if abs(v.imag) > 1e-9:
                    raise InternalConsistencyError("d eta_bar not real")
                out[a, b] = v.real
                out[b, a] = -v.real
        return out

    def values(self, jets) -> np.ndarray:
        return np.array([complex(j.value) for j in jets])


def contact_form_at(spec: PotentialSpec, z, backend="float") -> np.ndarray:
    """Components of eta in (dx_1, dy_1, ..., dtheta); dtheta coefficient 1."""
    f = _Fields(spec, z, order=2, backend=backend)
    vals = f.values(f.eta)
    if np.abs(vals.imag).max() > 1e-10:
        raise InternalConsistencyError("contact form not real")
    return vals.real


def contact_chart_frame(spec: PotentialSpec) -> ContactChartFrame:
    return ContactChartFrame(m=spec.m, ell=spec.ell, fano=spec.fano)


def d_eta_check(spec: PotentialSpec, z, backend="float"):
    """Max-norm of d eta - (ell/I) * (d dbar u as a real 2-form).

    This is the chart-level statement that the circle bundle's curvature is
    the (2 pi ell / I)-multiple of the base Kahler form; exact on the
    rational backend.
    """
    backend = get_backend(backend)
    f = _Fields(spec, z, order=3, backend=backend)
    D = f.dim
    if backend.exact:
        return _d_eta_exact_residual(f)
    deta = np.zeros((D, D))
    for a in range(D):
        for b in range(D):
            deta[a, b] = (
                complex(f.frame.d(f.eta[b], a).value).real
                - complex(f.frame.d(f.eta[a], b).value).real
            )
    H = np.array(
        [[complex(f.u.deriv(f.space.z(j)).deriv(f.space.zbar(k)).value)
          for k in range(f.m)] for j in range(f.m)]
    )
    target = np.zeros((D, D))
    target[: 2 * f.m, : 2 * f.m] = (f.ell / f.fano) * hermitian_to_real_form(H)
    return float(np.abs(deta - target).max())


def _d_eta_exact_residual(f: _Fields):
    from .rational import GaussianRational

    sp = f.space
    m = f.m
    worst = Fraction(0)
    iunit = GaussianRational(0, 1)
    H = [[f.u.deriv(sp.z(j)).deriv(sp.zbar(k)).value for k in range(m)]
         for j in range(m)]
    D = f.dim
    for a in range(D):
        for b in range(D):
            da = f.frame.d(f.eta[b], a).value
            db = f.frame.d(f.eta[a], b).value
            deta_ab = da - db
            target = GaussianRational(0)
            ka, ja = f.frame.coords[a]
            kb, jb = f.frame.coords[b]
            if ka in ("x", "y") and kb in ("x", "y"):
                za = GaussianRational(1) if ka == "x" else iunit
                zb = GaussianRational(1) if kb == "x" else iunit
                acc = GaussianRational(0)
                acc = acc + H[ja][jb] * za * zb.conjugate()
                acc = acc - H[jb][ja] * zb * za.conjugate()
                target = iunit * acc * GaussianRational(Fraction(f.ell, f.fano))
            diff = deta_ab - target
            worst = max(worst, diff.abs2())
    return worst


def reeb_and_contact_axioms(spec: PotentialSpec, z, backend="float") -> dict:
    """eta_bar(xi) = 1, iota_xi d eta_bar = 0, and nondegeneracy report."""
    f = _Fields(spec, z, order=3, backend=backend)
    eta_bar = f.values(f.eta_bar).real
    xi = f.xi_vector()
    pairing = float(eta_bar @ xi)
    deta = f.d_eta_bar_values()
    iota = float(np.abs(deta @ xi).max())
    B = deta[: 2 * f.m, : 2 * f.m]
    top = float(f.kappa) * math.factorial(f.m) * pfaffian(B)
    if abs(top) < 1e-12:
        raise ContactDegeneracyError("eta ^ (d eta)^m vanished at sample point")
    return {
        "eta_bar_of_xi": pairing,
        "reeb_contraction": iota,
        "top_form_coefficient": top,
        "eta_of_xi_residual": abs(pairing - 1.0),
    }


def phi_tensor_at(spec: PotentialSpec, z, backend="float") -> np.ndarray:
    f = _Fields(spec, z, order=2, backend=backend)
    phi = f.phi_jets()
    D = f.dim
    out = np.array([[complex(phi[a][b].value) for b in range(D)] for a in range(D)])
    return out.real


def sasaki_metric_at(spec: PotentialSpec, z, theta: float = 0.0,
                     backend="float") -> SasakiStructureSample:
    """Structure tensors (g, phi, xi, eta_bar) at a chart point.

    g = pullback of the rescaled base metric plus eta_bar (x) eta_bar;
    symmetric positive definite (checked).
    """
    f = _Fields(spec, z, order=2, backend=backend)
    g = f.metric_jets()
    gv = metric_values(g)
    w = np.linalg.eigvalsh(gv)
    if w.min() <= 0:
        raise InternalConsistencyError("Sasaki metric not positive definite")
    phi_j = f.phi_jets()
    D = f.dim
    phi = np.array([[complex(phi_j[a][b].value).real for b in range(D)]
                    for a in range(D)])
    return SasakiStructureSample(
        point=tuple(list(z) + [theta]),
        eta_bar=f.values(f.eta_bar).real,
        xi=f.xi_vector(),
        phi=phi,
        g=gv,
    )


def contact_metric_axiom_residuals(spec: PotentialSpec, z, backend="float") -> dict:
    """Residuals of the four contact-metric axioms at one point."""
    f = _Fields(spec, z, order=3, backend=backend)
    D = f.dim
    g = metric_values(f.metric_jets())
    phi_j = f.phi_jets()
    phi = np.array([[complex(phi_j[a][b].value).real for b in range(D)]
                    for a in range(D)])
    eta_bar = f.values(f.eta_bar).real
    xi = f.xi_vector()
    deta = f.d_eta_bar_values()
    ax2 = np.abs(phi @ phi + np.eye(D) - np.outer(xi, eta_bar)).max()
    ax3 = np.abs(phi.T @ g @ phi - (g - np.outer(eta_bar, eta_bar))).max()
    ax4 = np.abs(deta - 2.0 * (phi.T @ g)).max()
    ax1 = abs(float(eta_bar @ xi) - 1.0)
    # displayed-metric equivalence: g = kappa ((1/2) d eta (id x phi) + kappa eta x eta)
    deta_full = _d_eta_values(f)
    kap = float(f.kappa)
    eta = f.values(f.eta).real
    g_disp = kap * (0.5 * (deta_full @ phi) + kap * np.outer(eta, eta))
    ax_disp = np.abs(g_disp - g).max()
    return {
        "eta_of_xi": ax1,
        "phi_squared": float(ax2),
        "metric_compatibility": float(ax3),
        "d_eta_vs_metric": float(ax4),
        "displayed_metric_match": float(ax_disp),
    }


def _d_eta_values(f: _Fields) -> np.ndarray:
    D = f.dim
    out = np.zeros((D, D))
    for a in range(D):
        for b in range(a + 1, D):
            v = complex(f.frame.d(f.eta[b], a).value) - complex(
                f.frame.d(f.eta[a], b).value
            )
            out[a, b] = v.real
            out[b, a] = -v.real
    return out


def sasaki_nijenhuis_check(spec: PotentialSpec, z, backend="float",
                           order: int = 3) -> float:
    """Max-norm of [phi, phi] + d eta_bar (x) xi over coordinate pairs."""
    f = _Fields(spec, z, order=order, backend=backend)
    D = f.dim
    phi_j = f.phi_jets()
    phi = np.array([[complex(phi_j[a][b].value) for b in range(D)] for a in range(D)])
    dphi = np.zeros((D, D, D), dtype=complex)  # dphi[e, a, b] = d_e phi^a_b
    for e in range(D):
        for a in range(D):
            for b in range(D):
                dphi[e, a, b] = complex(f.frame.d(phi_j[a][b], e).value)
    deta = f.d_eta_bar_values()
    xi = f.xi_vector()
    worst = 0.0
    for b in range(D):
        for c in range(b + 1, D):
            vec = np.zeros(D, dtype=complex)
            for a in range(D):
                s = 0.0 + 0.0j
                for e in range(D):
                    s += phi[e, b] * dphi[e, a, c] - phi[e, c] * dphi[e, a, b]
                    s += phi[a, e] * (dphi[c, e, b] - dphi[b, e, c])
                vec[a] = s
            vec += deta[b, c] * xi
            worst = max(worst, float(np.abs(vec).max()))
    return worst


def sasaki_ricci_at(spec: PotentialSpec, z, backend="float") -> np.ndarray:
    """Riemannian Ricci tensor of the Sasaki metric in chart coordinates."""
    f = _Fields(spec, z, order=4, backend=backend)
    return ricci_tensor(f.frame, f.metric_jets())


def sasaki_einstein_residual(spec: PotentialSpec, z, backend="float",
                             order: int = 4) -> float:
    """Max-norm of Ric(g_M) - 2n g_M (n = dim_C X_P)."""
    f = _Fields(spec, z, order=order, backend=backend)
    g = f.metric_jets()
    ric = ricci_tensor(f.frame, g)
    g0 = metric_values(g)
    return float(np.abs(ric - 2.0 * spec.n_dim * g0).max())


def sasaki_scalar_curvature(spec: PotentialSpec, z, backend="float") -> float:
    f = _Fields(spec, z, order=4, backend=backend)
    return scalar_curvature(f.frame, f.metric_jets())


def killing_check(spec: PotentialSpec, z, backend="float") -> dict:
    """Structural Lie derivative (exactly zero) + covariant Killing residual."""
    f = _Fields(spec, z, order=3, backend=backend)
    g = f.metric_jets()
    lie = 0.0
    for a in range(f.dim):
        for b in range(f.dim):
            lie = max(lie, abs(complex(f.frame.d(g[a][b], f.dim - 1).value)))
    cov = killing_residual(f.frame, g, f.xi_vector())
    return {"lie_derivative": lie, "covariant_killing": cov}


def curvature_reeb_check(spec: PotentialSpec, z, backend="float") -> float:
    """Max-norm of R(X, Y) xi - (eta_bar(Y) X - eta_bar(X) Y) on coordinates."""
    f = _Fields(spec, z, order=4, backend=backend)
    g = f.metric_jets()
    R = riemann_applied(f.frame, g, f.xi_vector())
    eta_bar = f.values(f.eta_bar).real
    D = f.dim
    worst = 0.0
    for c in range(D):
        for d in range(D):
            expect = np.zeros(D)
            expect[c] += eta_bar[d]
            expect[d] -= eta_bar[c]
            worst = max(worst, float(np.abs(R[:, c, d] - expect).max()))
    return worst
