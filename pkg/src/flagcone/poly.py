"""Sparse multivariate polynomials with integer coefficients.

Used for big-cell minors det_I(n(z)) and the norm-square polynomials
sum_I |det_I|^2, which live in the 2m variables (z_1..z_m, zbar_1..zbar_m).
Coefficients stay integers throughout, so evaluation is exact on either
backend.
"""

from __future__ import annotations

class Poly:
    """dict-backed polynomial: exponent tuple -> integer coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = self.terms.get(tuple(e), 0) + c

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: c} if c else {})

    @staticmethod
    def var(nvars: int, i: int, c=1) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return Poly(nvars, {tuple(e): c})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return Poly.const(self.nvars, other)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def eval(self, values):
        """Evaluate at backend scalars (exact for ints / GaussianRational)."""
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, p in zip(values, e):
                for _ in range(p):
                    term = term * v
            acc = acc + term
        return acc

    def embed(self, nvars: int, var_map) -> "Poly":
        """Reindex variables into a larger variable set."""
        out = {}
        for e, c in self.terms.items():
            ee = [0] * nvars
            for old, new in enumerate(var_map):
                ee[new] += e[old]
            out[tuple(ee)] = out.get(tuple(ee), 0) + c
        return Poly(nvars, out)

    def conjugate_pairs(self, pair_of) -> "Poly":
        """Formal conjugate: permute variables by ``pair_of``; integer
        coefficients are self-conjugate."""
        out = {}
        for e, c in self.terms.items():
            ee = [0] * self.nvars
            for v, p in enumerate(e):
                ee[pair_of[v]] += p
            out[tuple(ee)] = c
        return Poly(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"v{i}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(bits) + ")"


def poly_det(mat) -> Poly:
    """Determinant of a square matrix of Poly entries (Laplace expansion)."""
    k = len(mat)
    if k == 0:
        raise ValueError("empty matrix")
    nv = mat[0][0].nvars
    if k == 1:
        return mat[0][0]
    acc = Poly.const(nv, 0)
    sign = 1
    for j in range(k):
        entry = mat[0][j]
        if not entry.is_zero():
            minor = [[mat[r][c] for c in range(k) if c != j] for r in range(1, k)]
            acc = acc + sign * entry * poly_det(minor)
        sign = -sign
    return acc


def hermitian_square(polys, m: int) -> Poly:
    """sum_i p_i(z) * conj(p_i)(zbar) as a polynomial in 2m variables.

    Each ``p`` must be a Poly in 2m variables supported on the first m
    (holomorphic) slots; conjugation swaps slot v with v+m.
    """
    nv = 2 * m
    pair = list(range(m, 2 * m)) + list(range(m))
    acc = Poly.const(nv, 0)
    for p in polys:
        acc = acc + p * p.conjugate_pairs(pair)
    return acc


def monomials_up_to(nvars: int, order: int):
    """All exponent tuples with total degree <= order, graded lexicographic."""
    out = []
    for d in range(order + 1):
        out.extend(_deg_monomials(nvars, d))
    return out


def _deg_monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _deg_monomials(nvars - 1, d - first):
            out.append((first,) + rest)
    return out
