"""Big-cell coordinates and minor polynomials of the exterior powers.

The dense chart on X_P is parameterized by a unipotent lower-triangular
matrix n(z) whose free entries sit at the positions of the complement
roots.  Acting on the highest-weight line of Lambda^k C^(rank+1) produces
one k x k minor per row set I, and the squared norm sum_I |det_I(n(z))|^2
is the building block of every potential in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ChartError
from .lie import RootSystemData, parabolic_complement
from .poly import Poly, hermitian_square, poly_det
from .rational import get_backend


@dataclass(frozen=True)
class BigCellChart:
    """Coordinate slots (row, col) of the opposite unipotent radical.

    Slots are strictly lower-triangular, ordered column-major to match the
    block pattern of theta; ``dimension`` is the complex dimension of X_P.
    """

    rank: int
    theta: frozenset
    coordinate_slots: tuple  # ((row, col), ...) 1-based
    dimension: int

    def slot_index(self) -> dict:
        return {rc: k for k, rc in enumerate(self.coordinate_slots)}


def big_cell_chart(rs: RootSystemData, theta) -> BigCellChart:
    comp = parabolic_complement(rs, theta)
    slots = sorted(((r.j, r.i) for r in comp), key=lambda rc: (rc[1], rc[0]))
    return BigCellChart(
        rank=rs.rank,
        theta=frozenset(int(t) for t in theta),
        coordinate_slots=tuple(slots),
        dimension=len(slots),
    )


def big_cell_matrix(chart: BigCellChart, z, backend="float") -> np.ndarray:
    """Unipotent lower-triangular matrix with z placed in the chart slots."""
    backend = get_backend(backend)
    if len(z) != chart.dimension:
        raise ChartError(
            f"expected {chart.dimension} coordinates, got {len(z)}"
        )
    n1 = chart.rank + 1
    mat = np.empty((n1, n1), dtype=backend.dtype)
    zero = backend.scalar(0)
    one = backend.scalar(1)
    mat[:] = zero
    for d in range(n1):
        mat[d, d] = one
    for val, (r, c) in zip(z, chart.coordinate_slots):
        mat[r - 1, c - 1] = backend.scalar(val)
    return mat


@dataclass(frozen=True)
class MinorPolynomialSet:
    """All k x k minors det_I of the symbolic big-cell matrix.

    ``polynomials`` maps each row set I (1-based, increasing) to a Poly in
    the chart coordinates; the I = {1..k} minor is the constant 1.  The
    basis {e_I} is declared orthonormal, the unique unitary-invariant
    choice up to scale (scale cancels under d dbar log).
    """

    weight_index: int
    chart: BigCellChart
    index_sets: tuple
    polynomials: dict

    def norm_square_poly(self) -> Poly:
        """sum_I det_I(z) conj(det_I)(zbar) over 2m variables (z, zbar)."""
        m = self.chart.dimension
        lifted = [
            p.embed(2 * m, list(range(m))) for p in self.polynomials.values()
        ]
        return hermitian_square(lifted, m)


def minor_polynomials(chart: BigCellChart, k: int) -> MinorPolynomialSet:
    """Minors of rows I, columns 1..k, for the fundamental weight omega_k.

    Parameters
    ----------
    chart : BigCellChart
        Chart determined by theta.
    k : int
        Exterior power, 1 <= k <= rank.
    """
    rank = chart.rank
    if not 1 <= k <= rank:
        raise ValueError(f"weight index {k} out of range 1..{rank}")
    m = chart.dimension
    n1 = rank + 1
    slot = chart.slot_index()
    sym = [[Poly.const(m, 0) for _ in range(n1)] for _ in range(n1)]
    for d in range(n1):
        sym[d][d] = Poly.const(m, 1)
    for (r, c), idx in slot.items():
        sym[r - 1][c - 1] = Poly.var(m, idx)
    polys = {}
    for rows in combinations(range(1, n1 + 1), k):
        sub = [[sym[r - 1][c] for c in range(k)] for r in rows]
        polys[rows] = poly_det(sub)
    return MinorPolynomialSet(
        weight_index=k,
        chart=chart,
        index_sets=tuple(combinations(range(1, n1 + 1), k)),
        polynomials=polys,
    )


def norm_square_eval(mps: MinorPolynomialSet, z, backend="float"):
    """sum_I |det_I(z)|^2; exact rational on the exact backend.

    Always >= 1 on the chart since the highest-weight minor is 1.
    """
    backend = get_backend(backend)
    vals = backend.point(z)
    acc = None
    for p in mps.polynomials.values():
        d = p.eval(vals)
        d = backend.scalar(d) if isinstance(d, int) else d
        a2 = backend.abs2(d)
        acc = a2 if acc is None else acc + a2
    return acc
