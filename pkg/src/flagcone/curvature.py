"""Christoffel symbols, Riemann/Ricci tensors from jet-valued metrics.

The metric is handed over as a D x D matrix of jets in a real coordinate
frame; real-direction derivatives reduce to combinations of the formal
z / zbar / radial derivatives, and angular directions differentiate to
zero because every field is invariant along them.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalConsistencyError
from .jets import Jet, JetSpace, jet_matrix_inverse
from .rational import get_backend

X = "x"
Y = "y"
RADIAL = "r"
ANGLE = "angle"


class RealFrame:
    """Real coordinates layered over a jet space.

    coords entries: ('x', j) / ('y', j) for z_j = x_j + i y_j, ('r', k)
    for the k-th extra real jet variable, ('angle', None) for an invariant
    circle direction (zero derivative).
    """

    def __init__(self, space: JetSpace, coords, backend):
        self.space = space
        self.coords = tuple(coords)
        self.backend = get_backend(backend)
        self._i = self.backend.scalar(1j) if not self.backend.exact else None
        if self.backend.exact:
            from fractions import Fraction

            from .rational import GaussianRational

            self._i = GaussianRational(0, Fraction(1))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def zero(self, order: int) -> Jet:
        return Jet.constant(self.space, 0, self.backend).truncate(order)

    def d(self, jet: Jet, a: int) -> Jet:
        """Derivative of a jet along the a-th real coordinate."""
        kind, j = self.coords[a]
        sp = self.space
        if kind == X:
            return jet.deriv(sp.z(j)) + jet.deriv(sp.zbar(j))
        if kind == Y:
            return (jet.deriv(sp.z(j)) - jet.deriv(sp.zbar(j))).scale(self._i)
        if kind == RADIAL:
            return jet.deriv(sp.real_var(j))
        if kind == ANGLE:
            return self.zero(jet.order - 1)
        raise ValueError(f"unknown coordinate kind {kind}")


def standard_frame(space: JetSpace, m: int, backend, *, radial_first=False,
                   with_angle=True) -> RealFrame:
    """(r?, x_1, y_1, .., x_m, y_m, theta?) frame over a jet space."""
    coords = []
    if radial_first:
        coords.append((RADIAL, 0))
    for j in range(m):
        coords.append((X, j))
        coords.append((Y, j))
    if with_angle:
        coords.append((ANGLE, None))
    return RealFrame(space, coords, backend)


def christoffel_symbols(frame: RealFrame, g):
    """Gamma^a_bc as order-(k-1) jets from an order-k jet metric (k >= 2)."""
    D = frame.dim
    ginv = jet_matrix_inverse(g)
    dg = [[[frame.d(g[b][c], a) for c in range(D)] for b in range(D)] for a in range(D)]
    half = 0.5
    if frame.backend.exact:
        from fractions import Fraction

        half = Fraction(1, 2)
    gamma = [[[None] * D for _ in range(D)] for _ in range(D)]
    for b in range(D):
        for c in range(b, D):
            combo = [dg[b][d][c] + dg[c][d][b] - dg[d][b][c] for d in range(D)]
            for a in range(D):
                acc = None
                for d in range(D):
                    term = ginv[a][d] * combo[d]
                    acc = term if acc is None else acc + term
                val = acc.scale(half)
                gamma[a][b][c] = val
                gamma[a][c][b] = val
    return gamma


def ricci_tensor(frame: RealFrame, g) -> np.ndarray:
    """Ric_bc = d_a Gamma^a_cb - d_c Gamma^a_ab + Gamma Gamma terms (values)."""
    D = frame.dim
    gamma = christoffel_symbols(frame, g)
    gval = np.array(
        [[[complex(gamma[a][b][c].value) for c in range(D)] for b in range(D)]
         for a in range(D)]
    )
    # divergence term: sum_a d_a Gamma^a_cb
    div = np.zeros((D, D), dtype=complex)
    for c in range(D):
        for b in range(c, D):
            s = 0.0 + 0.0j
            for a in range(D):
                s += complex(frame.d(gamma[a][c][b], a).value)
            div[c, b] = s
            div[b, c] = s
    # trace term: T_b = sum_a Gamma^a_ab, then d_c T_b
    dtrace = np.zeros((D, D), dtype=complex)
    for b in range(D):
        t = None
        for a in range(D):
            t = gamma[a][a][b] if t is None else t + gamma[a][a][b]
        for c in range(D):
            dtrace[c, b] = complex(frame.d(t, c).value)
    ric = np.zeros((D, D), dtype=complex)
    quad1 = np.einsum("aad,dcb->bc", gval, gval)
    quad2 = np.einsum("acd,dab->bc", gval, gval)
    for b in range(D):
        for c in range(D):
            ric[b, c] = div[c, b] - dtrace[c, b] + quad1[b, c] - quad2[b, c]
    if np.abs(ric.imag).max() > 1e-8 * (1.0 + np.abs(ric.real).max()):
        raise InternalConsistencyError("Ricci tensor has a large imaginary part")
    return ric.real


def riemann_tensor(frame: RealFrame, g) -> np.ndarray:
    """R^a_bcd values: R(e_c, e_d) e_b = R^a_bcd e_a."""
    D = frame.dim
    gamma = christoffel_symbols(frame, g)
    gval = np.zeros((D, D, D), dtype=complex)
    dgamma = np.zeros((D, D, D, D), dtype=complex)
    for a in range(D):
        for b in range(D):
            for c in range(D):
                gval[a, b, c] = complex(gamma[a][b][c].value)
                for e in range(D):
                    dgamma[e, a, b, c] = complex(frame.d(gamma[a][b][c], e).value)
    R = np.zeros((D, D, D, D), dtype=complex)
    for a in range(D):
        for b in range(D):
            for c in range(D):
                for d in range(D):
                    s = dgamma[c, a, d, b] - dgamma[d, a, c, b]
                    for e in range(D):
                        s += gval[a, c, e] * gval[e, d, b] - gval[a, d, e] * gval[e, c, b]
                    R[a, b, c, d] = s
    return R.real


def riemann_applied(frame: RealFrame, g, vec) -> np.ndarray:
    """R(e_c, e_d) vec as values: out[a, c, d] = R^a_bcd vec^b.

    Cheaper than the full tensor when vec has few nonzero components.
    """
    D = frame.dim
    gamma = christoffel_symbols(frame, g)
    support = [b for b in range(D) if vec[b] != 0]
    gv = np.array(
        [[[complex(gamma[a][b][c].value) for c in range(D)] for b in range(D)]
         for a in range(D)]
    )
    # contracted connection W^a_d = Gamma^a_db vec^b as jets
    W = [[None] * D for _ in range(D)]
    for a in range(D):
        for d in range(D):
            acc = None
            for b in support:
                term = gamma[a][d][b].scale(vec[b])
                acc = term if acc is None else acc + term
            W[a][d] = acc if acc is not None else frame.zero(gamma[a][d][0].order)
    Wv = np.array([[complex(W[a][d].value) for d in range(D)] for a in range(D)])
    out = np.zeros((D, D, D), dtype=complex)
    for a in range(D):
        for c in range(D):
            for d in range(D):
                s = complex(frame.d(W[a][d], c).value) - complex(
                    frame.d(W[a][c], d).value
                )
                for e in range(D):
                    s += gv[a, c, e] * Wv[e, d] - gv[a, d, e] * Wv[e, c]
                out[a, c, d] = s
    return out.real


def metric_values(g) -> np.ndarray:
    D = len(g)
    out = np.array([[complex(g[b][c].value) for c in range(D)] for b in range(D)])
    if np.abs(out.imag).max() > 1e-10 * (1.0 + np.abs(out.real).max()):
        raise InternalConsistencyError("metric values not real")
    return out.real


def scalar_curvature(frame: RealFrame, g) -> float:
    ric = ricci_tensor(frame, g)
    g0 = metric_values(g)
    return float(np.trace(np.linalg.solve(g0, ric)))


def killing_residual(frame: RealFrame, g, xi) -> float:
    """Max |nabla_a xi_b + nabla_b xi_a| for a constant-component field xi."""
    D = frame.dim
    gamma = christoffel_symbols(frame, g)
    xi_flat = []
    for b in range(D):
        acc = None
        for c in range(D):
            if xi[c] == 0:
                continue
            term = g[b][c].scale(xi[c])
            acc = term if acc is None else acc + term
        xi_flat.append(acc if acc is not None else frame.zero(g[0][0].order))
    worst = 0.0
    for a in range(D):
        for b in range(D):
            nab = complex(frame.d(xi_flat[b], a).value)
            nba = complex(frame.d(xi_flat[a], b).value)
            corr = 0.0 + 0.0j
            for c in range(D):
                corr += complex(gamma[c][a][b].value) * complex(xi_flat[c].value)
            worst = max(worst, abs(nab + nba - 2.0 * corr))
    return worst
