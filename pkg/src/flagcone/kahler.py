"""Invariant Kahler potentials on the big cell and their curvature.

The anticanonical potential log K = sum_alpha c_alpha log S_alpha, with
S_alpha the minor norm-squares and c_alpha = <delta_P, h_alpha^vee>,
defines the Kahler-Einstein metric g_ij = (1/2pi) d_i dbar_j log K with
Ric = 2pi g.  All curvature here is complex-Hessian based; the real
(Christoffel) machinery lives in curvature.py.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InternalConsistencyError
from .jets import Jet, JetSpace, jet_det, jet_lift
from .lie import ParabolicChoice, build_root_system, parabolic_choice
from .minors import BigCellChart, big_cell_chart, minor_polynomials
from .poly import Poly
from .rational import get_backend

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PotentialSpec:
    """Invariant potential: product over Sigma\\Theta of S_alpha^c_alpha.

    For the anticanonical choice the exponents are the delta_P pairings,
    all positive, which is exactly the ampleness condition for the
    associated invariant form.
    """

    parabolic: ParabolicChoice
    chart: BigCellChart
    factors: tuple            # ((MinorPolynomialSet, exponent), ...)
    norm_polys: tuple         # cached 2m-variable norm-square polynomials
    normalization: str = "1/2pi"

    @property
    def m(self) -> int:
        """Complex dimension of X_P (also the chart dimension)."""
        return self.chart.dimension

    @property
    def n_dim(self) -> int:
        return self.m

    @property
    def ell(self) -> int:
        return self.parabolic.ell

    @property
    def fano(self) -> int:
        return self.parabolic.fano_index

    def exponents(self) -> tuple:
        return tuple(c for _, c in self.factors)


def anticanonical_potential(rank: int, theta, ell: int = 1) -> PotentialSpec:
    """Build the Kahler-Einstein potential spec for (A_rank, theta, ell)."""
    rs = build_root_system(rank)
    pc = parabolic_choice(rs, theta, ell)
    chart = big_cell_chart(rs, pc.theta)
    factors = []
    polys = []
    for a in sorted(pc.pairings):
        mps = minor_polynomials(chart, a)
        c = pc.pairings[a]
        if c <= 0:
            raise InternalConsistencyError("nonpositive anticanonical exponent")
        factors.append((mps, c))
        polys.append(mps.norm_square_poly())
    return PotentialSpec(
        parabolic=pc, chart=chart, factors=tuple(factors), norm_polys=tuple(polys)
    )


# ---------------------------------------------------------------------------
# jets of the potential

def _conj_values(z, backend):
    return [backend.conj(v) for v in z]


def potential_space(spec: PotentialSpec, order: int, extra_real: int = 0) -> JetSpace:
    return JetSpace(spec.m, order, extra_real=extra_real)


def norm_square_jets(spec, z, space, backend):
    """One jet per factor S_alpha at the chart point z."""
    backend = get_backend(backend)
    zv = backend.point(z)
    vals = list(zv) + _conj_values(zv, backend)
    var_map = list(range(spec.m)) + [space.zbar(j) for j in range(spec.m)]
    return [
        jet_lift(p, vals, space, backend, var_map=var_map)
        for p in spec.norm_polys
    ]


def log_potential_jet(spec: PotentialSpec, z, order: int = 4, backend="float",
                      space: JetSpace | None = None) -> Jet:
    """Jet of log K = sum_alpha c_alpha log S_alpha at z.

    Cannot hit a log-domain error: each S_alpha >= 1 on the chart.
    """
    backend = get_backend(backend)
    if space is None:
        space = potential_space(spec, order)
    jets = norm_square_jets(spec, z, space, backend)
    acc = None
    for (_, c), sj in zip(spec.factors, jets):
        term = sj.log().scale(c)
        acc = term if acc is None else acc + term
    return acc


def potential_value(spec: PotentialSpec, z) -> float:
    """Float value of log K at z (the additive normalization-free potential)."""
    backend = get_backend("float")
    acc = 0.0
    from .minors import norm_square_eval

    for mps, c in spec.factors:
        acc += c * math.log(norm_square_eval(mps, z, backend).real)
    return acc


def hessian_jets(spec, z, backend="float", order: int = 4,
                 space: JetSpace | None = None):
    """m x m matrix of jets H_jk = d_j dbar_k log K (order drops by 2)."""
    u = log_potential_jet(spec, z, order=order, backend=backend, space=space)
    return hessian_of(u)


def hessian_of(u: Jet):
    """Complex Hessian (d dbar) of a scalar jet, as a matrix of jets."""
    sp = u.space
    m = sp.m
    dz = [u.deriv(sp.z(j)) for j in range(m)]
    return [[dz[j].deriv(sp.zbar(k)) for k in range(m)] for j in range(m)]


def value_matrix(H, backend):
    m = len(H)
    if get_backend(backend).exact:
        out = np.empty((m, m), dtype=object)
        for j in range(m):
            for k in range(m):
                out[j, k] = H[j][k].value
        return out
    return np.array([[complex(H[j][k].value) for k in range(m)] for j in range(m)])


# ---------------------------------------------------------------------------
# metric / Ricci samples

@dataclass(frozen=True)
class HermitianMetricSample:
    """Evaluated metric g_ij at a chart point, with provenance metadata.

    ``hessian`` holds the unnormalized d dbar log K values (exact on the
    rational backend); ``matrix`` is the 1/(2 pi)-scaled float metric.
    """

    point: tuple
    matrix: np.ndarray
    hessian: np.ndarray
    provenance: str

    @property
    def dim(self):
        return self.matrix.shape[0]


def _check_hermitian_pd(H, backend, what: str):
    backend = get_backend(backend)
    m = len(H)
    if backend.exact:
        for j in range(m):
            for k in range(m):
                d = H[j][k] - H[k][j].conjugate()
                if d:
                    raise InternalConsistencyError(f"{what}: not Hermitian")
        # Sylvester: leading principal minors of a Hermitian matrix
        for t in range(1, m + 1):
            det = _exact_det([[H[j][k] for k in range(t)] for j in range(t)])
            if det.im != 0 or det.re <= 0:
                raise InternalConsistencyError(f"{what}: not positive definite")
    else:
        A = np.asarray(H, dtype=complex)
        if not np.allclose(A, A.conj().T, rtol=1e-9, atol=1e-11):
            raise InternalConsistencyError(f"{what}: not Hermitian")
        w = np.linalg.eigvalsh(A)
        if w.min() <= 0:
            raise InternalConsistencyError(f"{what}: not positive definite")


def _exact_det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    acc = None
    for j in range(n):
        entry = mat[0][j]
        if not entry:
            continue
        minor = [[mat[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = entry * _exact_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        from .rational import GaussianRational

        return GaussianRational(0)
    return acc


def metric_at(spec: PotentialSpec, z, backend="float") -> HermitianMetricSample:
    """g_jk = (1/2pi) d_j dbar_k log K; positive definite on the chart."""
    backend = get_backend(backend)
    H = hessian_jets(spec, z, backend=backend, order=2)
    vals = value_matrix(H, backend)
    _check_hermitian_pd([list(r) for r in vals], backend, "metric_at")
    mat = np.array(
        [[complex(v) / TWO_PI for v in row] for row in vals], dtype=complex
    )
    return HermitianMetricSample(
        point=tuple(z),
        matrix=mat,
        hessian=vals,
        provenance=f"anticanonical potential, backend={backend.name}",
    )


def ricci_at(spec: PotentialSpec, z, backend="float", order: int = 4):
    """Ric_jk = -d_j dbar_k log det(d dbar log K), via jet composition.

    Scale-invariant: equals the Ricci tensor of g and of any positive
    multiple, so it is compared directly against the unnormalized Hessian
    (= 2 pi g) in the Einstein checks.
    """
    backend = get_backend(backend)
    H = hessian_jets(spec, z, backend=backend, order=order)
    try:
        ld = jet_det(H).log()
    except Exception as exc:  # singular Hessian signals a bug, not a math case
        raise InternalConsistencyError(f"singular metric determinant: {exc}")
    m = spec.m
    sp = ld.space
    out = np.empty((m, m), dtype=object if backend.exact else complex)
    for j in range(m):
        dj = ld.deriv(sp.z(j))
        for k in range(m):
            out[j, k] = -(dj.deriv(sp.zbar(k)).value)
    return out


def einstein_residual(spec: PotentialSpec, z, backend="float", order: int = 4):
    """Max-norm of Ric - 2 pi g.

    On the exact backend the comparison is Ric vs the unnormalized Hessian
    (the 2 pi cancels), and the return value is the exact maximal squared
    modulus: identically zero for every Kahler-Einstein spec.
    """
    backend = get_backend(backend)
    H = hessian_jets(spec, z, backend=backend, order=order)
    ld = jet_det(H).log()
    sp = ld.space
    m = spec.m
    if backend.exact:
        worst = Fraction(0)
        for j in range(m):
            dj = ld.deriv(sp.z(j))
            for k in range(m):
                diff = -(dj.deriv(sp.zbar(k)).value) - H[j][k].value
                worst = max(worst, diff.abs2())
        return worst
    worst = 0.0
    for j in range(m):
        dj = ld.deriv(sp.z(j))
        for k in range(m):
            diff = -(dj.deriv(sp.zbar(k)).value) - H[j][k].value
            worst = max(worst, abs(complex(diff)))
    return worst


def rescaled_metric(spec: PotentialSpec, z, backend="float") -> HermitianMetricSample:
    """g~ = (pi/(n+1)) g, normalized so Ric(g~) = 2(n+1) g~.

    Exactly rational: g~ = Hess(log K) / (2(n+1)).
    """
    backend = get_backend(backend)
    base = metric_at(spec, z, backend=backend)
    n1 = spec.n_dim + 1
    if backend.exact:
        half = Fraction(1, 2 * n1)
        hess = np.empty_like(base.hessian)
        for idx, v in np.ndenumerate(base.hessian):
            hess[idx] = v * half
    else:
        hess = base.hessian / (2.0 * n1)
    return HermitianMetricSample(
        point=base.point,
        matrix=np.asarray(base.matrix, dtype=complex) * (math.pi / n1),
        hessian=hess,
        provenance=base.provenance + f", rescaled by pi/{n1}",
    )


def scalar_curvature_at(spec: PotentialSpec, z, backend="float") -> float:
    """S = 2 tr(g~^{-1} Ric) = 4(n+1) tr(Hess^{-1} Ric); 4n(n+1) when Einstein.

    The factor 2 is the real-dimension convention that assigns the round
    Fubini-Study metric on CP^n scalar curvature 4n(n+1).
    """
    backend = get_backend(backend)
    Ric = np.array(
        [[complex(v) for v in row] for row in ricci_at(spec, z, backend=backend)]
    )
    H = hessian_jets(spec, z, backend=backend, order=2)
    H0 = np.array([[complex(H[j][k].value) for k in range(spec.m)] for j in range(spec.m)])
    n1 = spec.n_dim + 1
    return float(4.0 * n1 * np.trace(np.linalg.solve(H0, Ric)).real)


def norm_square_polys_match(spec: PotentialSpec, expected: dict) -> bool:
    """Coefficient-exact comparison of the generated norm-square polynomials.

    ``expected`` maps weight index -> Poly over the 2m chart variables.
    """
    got = {mps.weight_index: p for (mps, _), p in zip(spec.factors, spec.norm_polys)}
    if set(got) != set(expected):
        return False
    return all(got[k] == Poly(got[k].nvars, expected[k].terms) for k in expected)
