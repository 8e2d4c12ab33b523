"""Truncated multivariate Taylor (jet) arithmetic.

A jet stores all Taylor coefficients of a scalar field up to a fixed total
degree at one expansion point.  Holomorphic and antiholomorphic variables
(z_j, zbar_j) are treated as formally independent; optional extra real
variables (e.g. the cone radius) ride along in the same table.  Products,
reciprocals, logs and real powers are exact through the truncation order,
which is what turns fourth-order jets of a Kahler potential into exact
metric/Ricci values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import JetDomainError, TruncationError
from .poly import Poly, monomials_up_to
from .rational import Backend, GaussianRational, get_backend


@lru_cache(maxsize=None)
def _tables(nvars: int, order: int):
    monos = monomials_up_to(nvars, order)
    index = {m: i for i, m in enumerate(monos)}
    deg = np.array([sum(m) for m in monos], dtype=np.int64)

    # multiplication triples sorted by product degree so that truncated
    # products use a prefix of the table
    triples = []
    for i, mi in enumerate(monos):
        di = deg[i]
        for j, mj in enumerate(monos):
            dj = deg[j]
            if di + dj > order:
                continue
            k = index[tuple(a + b for a, b in zip(mi, mj))]
            triples.append((di + dj, i, j, k))
    triples.sort(key=lambda t: t[0])
    tot = np.array([t[0] for t in triples], dtype=np.int64)
    mul_i = np.array([t[1] for t in triples], dtype=np.int64)
    mul_j = np.array([t[2] for t in triples], dtype=np.int64)
    mul_k = np.array([t[3] for t in triples], dtype=np.int64)
    # prefix count per output order
    counts = [int(np.searchsorted(tot, d, side="right")) for d in range(order + 1)]

    # derivative tables: dst coefficient beta picks up (beta_v+1) * c[beta+e_v]
    derivs = []
    for v in range(nvars):
        dst, src, fac = [], [], []
        for i, m in enumerate(monos):
            if deg[i] >= order:
                continue
            up = list(m)
            up[v] += 1
            dst.append(i)
            src.append(index[tuple(up)])
            fac.append(m[v] + 1)
        derivs.append(
            (
                np.array(dst, dtype=np.int64),
                np.array(src, dtype=np.int64),
                np.array(fac, dtype=np.int64),
            )
        )
    return monos, index, deg, (mul_i, mul_j, mul_k, counts), derivs


class JetSpace:
    """Variable layout and cached index tables for jets of one computation.

    Variables 0..m-1 are z_1..z_m, variables m..2m-1 their formal
    conjugates, and any further slots are real (self-conjugate) variables.
    """

    def __init__(self, m: int, order: int, extra_real: int = 0):
        if order < 1:
            raise ValueError("jet order must be >= 1")
        self.m = m
        self.order = order
        self.extra_real = extra_real
        self.nvars = 2 * m + extra_real
        monos, index, deg, mul, derivs = _tables(self.nvars, order)
        self.monomials = monos
        self.index = index
        self.deg = deg
        self._mul = mul
        self._derivs = derivs
        self.ncoeffs = len(monos)
        # involutive permutation implementing z <-> zbar on monomials
        perm = np.empty(self.ncoeffs, dtype=np.int64)
        for i, mono in enumerate(monos):
            swapped = (
                mono[m : 2 * m] + mono[:m] + mono[2 * m :]
            )
            perm[i] = index[swapped]
        self.conj_perm = perm

    def z(self, j: int) -> int:
        return j

    def zbar(self, j: int) -> int:
        return self.m + j

    def real_var(self, i: int) -> int:
        return 2 * self.m + i

    def __repr__(self):
        return f"JetSpace(m={self.m}, order={self.order}, extra_real={self.extra_real})"


class Jet:
    """Taylor coefficients (not raw partials) of one scalar field."""

    __slots__ = ("space", "c", "order", "backend")

    def __init__(self, space: JetSpace, c: np.ndarray, order: int, backend: Backend):
        self.space = space
        self.c = c
        self.order = order
        self.backend = backend

    # -- constructors ---------------------------------------------------
    @staticmethod
    def constant(space: JetSpace, value, backend) -> "Jet":
        backend = get_backend(backend)
        c = backend.zeros(space.ncoeffs)
        c[0] = backend.scalar(value) if not backend.exact else _coerce_exact(value)
        return Jet(space, c, space.order, backend)

    @staticmethod
    def variable(space: JetSpace, v: int, base_value, backend) -> "Jet":
        backend = get_backend(backend)
        c = backend.zeros(space.ncoeffs)
        c[0] = backend.scalar(base_value) if not backend.exact else _coerce_exact(base_value)
        e = [0] * space.nvars
        e[v] = 1
        one = GaussianRational(1) if backend.exact else 1.0 + 0.0j
        c[space.index[tuple(e)]] = one
        return Jet(space, c, space.order, backend)

    # -- basic queries ---------------------------------------------------
    @property
    def value(self):
        return self.c[0]

    def coefficient(self, multi_index):
        return self.c[self.space.index[tuple(multi_index)]]

    def extract(self, multi_index):
        """Factorial-corrected partial derivative at the base point."""
        mi = tuple(multi_index)
        if sum(mi) > self.order:
            raise TruncationError(
                f"partial of order {sum(mi)} exceeds jet order {self.order}"
            )
        fac = 1
        for p in mi:
            fac *= math.factorial(p)
        return self.c[self.space.index[mi]] * fac

    # -- ring operations ---------------------------------------------------
    def _check(self, other: "Jet"):
        if other.space is not self.space:
            raise ValueError("jets from different spaces")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(
                self.space, self.c + other.c, min(self.order, other.order), self.backend
            )
        out = self.c.copy()
        out[0] = out[0] + (_coerce_exact(other) if self.backend.exact else complex(other))
        return Jet(self.space, out, self.order, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.c if not self.backend.exact else np.array(
            [-x for x in self.c], dtype=object), self.order, self.backend)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -_as_number(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = _coerce_exact(s) if self.backend.exact else complex(s)
        if self.backend.exact:
            out = np.array([s * x for x in self.c], dtype=object)
        else:
            out = s * self.c
        return Jet(self.space, out, self.order, self.backend)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check(other)
        order = min(self.order, other.order)
        mi, mj, mk, counts = self.space._mul
        n = counts[order]
        out = self.backend.zeros(self.space.ncoeffs)
        np.add.at(out, mk[:n], self.c[mi[:n]] * other.c[mj[:n]])
        return Jet(self.space, out, order, self.backend)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        if self.backend.exact:
            return self.scale(GaussianRational(1) / _coerce_exact(other))
        return self.scale(1.0 / complex(other))

    # -- calculus ---------------------------------------------------------
    def deriv(self, v: int) -> "Jet":
        """Derivative with respect to formal variable v (order drops by 1)."""
        if self.order < 1:
            raise TruncationError("cannot differentiate an order-0 jet")
        dst, src, fac = self.space._derivs[v]
        out = self.backend.zeros(self.space.ncoeffs)
        out[dst] = self.c[src] * fac
        return Jet(self.space, out, self.order - 1, self.backend)

    def conjugate(self) -> "Jet":
        if self.backend.exact:
            cc = np.array([x.conjugate() for x in self.c], dtype=object)
        else:
            cc = np.conj(self.c)
        return Jet(self.space, cc[self.space.conj_perm], self.order, self.backend)

    def real(self) -> "Jet":
        half = Fraction(1, 2) if self.backend.exact else 0.5
        return (self + self.conjugate()).scale(half)

    def imag(self) -> "Jet":
        s = GaussianRational(0, Fraction(-1, 2)) if self.backend.exact else -0.5j
        return (self - self.conjugate()).scale(s)

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        out = self.c.copy()
        mask = self.space.deg > order
        if self.backend.exact:
            zero = GaussianRational(0)
            for i in np.nonzero(mask)[0]:
                out[i] = zero
        else:
            out[mask] = 0.0
        return Jet(self.space, out, order, self.backend)

    # -- analytic compositions ---------------------------------------------
    def _compose(self, series) -> "Jet":
        """Horner evaluation of sum_k series[k] * (self - value)^k."""
        w = self.c.copy()
        w[0] = GaussianRational(0) if self.backend.exact else 0.0j
        wjet = Jet(self.space, w, self.order, self.backend)
        acc = Jet.constant(self.space, 0, self.backend).truncate(self.order)
        acc = acc + series[-1]
        for k in range(len(series) - 2, -1, -1):
            acc = acc * wjet + series[k]
        return acc

    def reciprocal(self) -> "Jet":
        v0 = self.value
        if self.backend.exact:
            if not v0:
                raise JetDomainError("reciprocal of a jet with zero value")
            inv = GaussianRational(1) / v0
            series = [inv]
            for _ in range(self.order):
                series.append(-series[-1] * inv)
        else:
            if v0 == 0:
                raise JetDomainError("reciprocal of a jet with zero value")
            inv = 1.0 / v0
            series = [inv * (-inv) ** k for k in range(self.order + 1)]
        return self._compose(series)

    def log(self) -> "Jet":
        """Truncated log.

        The exact backend drops the additive constant log(value), which is
        transcendental; every downstream use only consumes derivatives of
        the result, where the constant cancels.
        """
        v0 = self.value
        if self.backend.exact:
            if v0.im != 0 or v0.re <= 0:
                raise JetDomainError("log requires a positive real value")
            inv = GaussianRational(1) / v0
            series = [GaussianRational(0)]
            p = GaussianRational(1)
            for k in range(1, self.order + 1):
                p = p * inv
                series.append(p * GaussianRational(Fraction((-1) ** (k + 1), k)))
        else:
            _require_positive_real(v0, "log")
            x0 = v0.real
            series = [complex(math.log(x0))]
            for k in range(1, self.order + 1):
                series.append(complex((-1) ** (k + 1) / (k * x0**k)))
        return self._compose(series)

    def real_pow(self, e) -> "Jet":
        """f^e for real exponent e; value must be a positive real."""
        if self.backend.exact:
            if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
                return self._int_pow(int(e))
            raise JetDomainError("exact backend supports only integer powers")
        v0 = self.value
        _require_positive_real(v0, "real_pow")
        x0 = v0.real
        e = float(e)
        series = []
        coeff = 1.0
        for k in range(self.order + 1):
            series.append(complex(coeff * x0 ** (e - k)))
            coeff *= (e - k) / (k + 1)
        return self._compose(series)

    def _int_pow(self, e: int) -> "Jet":
        if e < 0:
            return self.reciprocal()._int_pow(-e)
        acc = Jet.constant(self.space, 1, self.backend).truncate(self.order)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base if e > 1 else base
            e >>= 1
        return acc

    def __repr__(self):
        return f"Jet(order={self.order}, value={self.value})"


def _coerce_exact(x):
    from numbers import Integral, Rational

    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (Integral, Rational)):
        return GaussianRational(Fraction(x))
    if isinstance(x, complex) and x.imag == 0 and float(x.real).is_integer():
        return GaussianRational(int(x.real))
    if isinstance(x, float) and x.is_integer():
        return GaussianRational(int(x))
    raise JetDomainError(f"cannot use {x!r} in an exact jet")


def _as_number(x):
    return x


def _require_positive_real(v0, what):
    v = complex(v0)
    if abs(v.imag) > 1e-9 * (1.0 + abs(v)) or v.real <= 0:
        raise JetDomainError(f"{what} requires a positive real value, got {v}")


def jet_lift(
    poly: Poly,
    values,
    space: JetSpace,
    backend,
    var_map=None,
    order: int | None = None,
) -> "Jet":
    """Exact Taylor expansion of a polynomial at a point.

    Parameters
    ----------
    poly : Poly
        Polynomial in its own variables.
    values : sequence
        Base-point value of each polynomial variable (backend scalars).
    space : JetSpace
        Target jet space.
    backend : str or Backend
        "float" or "exact".
    var_map : sequence of int, optional
        Target space variable for each polynomial variable (identity by
        default).
    order : int, optional
        Truncation order (defaults to the space order).

    Returns
    -------
    Jet
        Since polynomials are entire, truncation only discards terms of
        degree above the jet order.
    """
    backend = get_backend(backend)
    if order is None:
        order = space.order
    if var_map is None:
        var_map = list(range(poly.nvars))
    vals = [
        _coerce_exact(v) if backend.exact else complex(v) for v in values
    ]
    one = GaussianRational(1) if backend.exact else 1.0 + 0.0j
    c = backend.zeros(space.ncoeffs)
    nv = poly.nvars
    for exp, coeff in poly.terms.items():
        # per-variable (partial exponent, binom * value^(remaining)) choices
        options = []
        for v in range(nv):
            ev = exp[v]
            if ev == 0:
                continue
            opts = []
            p = one
            powers = [one]
            for _ in range(ev):
                p = p * vals[v]
                powers.append(p)
            for b in range(min(ev, order) + 1):
                opts.append((v, b, math.comb(ev, b) * powers[ev - b]))
            options.append(opts)
        _accumulate(c, space, var_map, options, 0, [0] * space.nvars, 0,
                    _coerce_exact(coeff) if backend.exact else complex(coeff), order)
    return Jet(space, c, order, backend)


def _accumulate(c, space, var_map, options, pos, exps, total, factor, order):
    if pos == len(options):
        c[space.index[tuple(exps)]] = c[space.index[tuple(exps)]] + factor
        return
    for v, b, w in options[pos]:
        if total + b > order:
            continue
        tv = var_map[v]
        exps[tv] += b
        _accumulate(c, space, var_map, options, pos + 1, exps, total + b,
                    factor * w, order)
        exps[tv] -= b


def jet_det(mat) -> "Jet":
    """Determinant of a square matrix of jets via LU elimination.

    Pivots on the largest constant term, so it is safe whenever the value
    matrix is nonsingular (raises JetDomainError otherwise).
    """
    D = len(mat)
    rows = [list(r) for r in mat]
    ref = rows[0][0]
    det = Jet.constant(ref.space, 1, ref.backend).truncate(ref.order)
    sign = 1
    for col in range(D):
        piv = max(range(col, D), key=lambda r: abs(complex(rows[r][col].value)))
        if complex(rows[piv][col].value) == 0:
            raise JetDomainError("singular value matrix in jet determinant")
        if piv != col:
            rows[piv], rows[col] = rows[col], rows[piv]
            sign = -sign
        pivot = rows[col][col]
        det = det * pivot
        inv = pivot.reciprocal()
        for r in range(col + 1, D):
            f = rows[r][col] * inv
            for c in range(col + 1, D):
                rows[r][c] = rows[r][c] - f * rows[col][c]
    return det if sign == 1 else -det


def jet_matrix_inverse(mat):
    """Inverse of a square matrix of jets by Gauss-Jordan elimination."""
    D = len(mat)
    rows = [list(r) for r in mat]
    ref = rows[0][0]
    one = Jet.constant(ref.space, 1, ref.backend).truncate(ref.order)
    zero = Jet.constant(ref.space, 0, ref.backend).truncate(ref.order)
    out = [[one if i == j else zero for j in range(D)] for i in range(D)]
    for col in range(D):
        piv = max(range(col, D), key=lambda r: abs(complex(rows[r][col].value)))
        if complex(rows[piv][col].value) == 0:
            raise JetDomainError("singular value matrix in jet inverse")
        if piv != col:
            rows[piv], rows[col] = rows[col], rows[piv]
            out[piv], out[col] = out[col], out[piv]
        inv = rows[col][col].reciprocal()
        rows[col] = [x * inv for x in rows[col]]
        out[col] = [x * inv for x in out[col]]
        for r in range(D):
            if r == col:
                continue
            f = rows[r][col]
            if not any(bool(x) for x in f.c):
                continue
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
            out[r] = [a - f * b for a, b in zip(out[r], out[col])]
    return out


def wirtinger_fd(field, z, var, step=1e-4):
    """Central finite-difference Wirtinger derivative of ``field``.

    ``var`` is ('z', j) or ('zbar', j); ``field`` maps a complex tuple to a
    scalar.  Used as the anti-regression oracle for jet derivatives.
    """
    kind, j = var
    h = step

    def shift(dz):
        zz = list(z)
        zz[j] = zz[j] + dz
        return zz

    dx = (field(shift(h)) - field(shift(-h))) / (2 * h)
    dy = (field(shift(1j * h)) - field(shift(-1j * h))) / (2 * h)
    if kind == "z":
        return 0.5 * (dx - 1j * dy)
    return 0.5 * (dx + 1j * dy)


def finite_difference_check(field, z, multi_index, jet_value, step=1e-4):
    """Relative error between a jet partial and a central-FD estimate.

    Only total orders <= 2 are supported: finite-difference noise grows
    with order.  ``multi_index`` lists ('z', j) / ('zbar', j) factors, one
    per derivative.
    """
    if len(multi_index) > 2:
        raise TruncationError("finite differences support order <= 2 only")
    if len(multi_index) == 0:
        fd = field(list(z))
    elif len(multi_index) == 1:
        fd = wirtinger_fd(field, z, multi_index[0], step)
    else:
        inner = multi_index[1]

        def dfield(zz):
            return wirtinger_fd(field, zz, inner, step)

        fd = wirtinger_fd(dfield, z, multi_index[0], step)
    return abs(complex(jet_value) - complex(fd)) / (1.0 + abs(complex(jet_value)))
