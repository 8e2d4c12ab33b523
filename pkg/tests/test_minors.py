"""Big-cell charts, minor polynomials, and norm-square evaluation."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcone.errors import ChartError
from flagcone.lie import build_root_system
from flagcone.minors import (
    big_cell_chart,
    big_cell_matrix,
    minor_polynomials,
    norm_square_eval,
)
from flagcone.poly import Poly
from flagcone.rational import GaussianRational as Q

rationals = st.fractions(
    min_value=Fraction(-2), max_value=Fraction(2), max_denominator=7
)


def rational_point(m, draw_re, draw_im):
    return [Q(a, b) for a, b in zip(draw_re, draw_im)]


class TestBigCellChart:
    def test_rank1(self):
        ch = big_cell_chart(build_root_system(1), set())
        assert ch.coordinate_slots == ((2, 1),)
        mat = big_cell_matrix(ch, [0.7 + 0.1j])
        assert mat[1, 0] == 0.7 + 0.1j and mat[0, 0] == mat[1, 1] == 1

    def test_grassmannian_block(self):
        # column-major block: z1, z2 fill column 1, z3, z4 column 2
        ch = big_cell_chart(build_root_system(3), {1, 3})
        assert ch.coordinate_slots == ((3, 1), (4, 1), (3, 2), (4, 2))
        mat = big_cell_matrix(ch, [1, 2, 3, 4])
        assert mat[2, 0] == 1 and mat[3, 0] == 2
        assert mat[2, 1] == 3 and mat[3, 1] == 4

    def test_full_flag_dimension(self):
        for rank in range(1, 6):
            ch = big_cell_chart(build_root_system(rank), set())
            assert ch.dimension == rank * (rank + 1) // 2

    def test_zero_gives_identity(self):
        ch = big_cell_chart(build_root_system(3), {2})
        mat = big_cell_matrix(ch, [0] * ch.dimension)
        assert np.allclose(np.asarray(mat, dtype=complex), np.eye(4))

    def test_length_mismatch(self):
        ch = big_cell_chart(build_root_system(2), set())
        with pytest.raises(ChartError):
            big_cell_matrix(ch, [1.0])


class TestMinorPolynomials:
    def test_rank1(self):
        ch = big_cell_chart(build_root_system(1), set())
        mps = minor_polynomials(ch, 1)
        assert mps.polynomials[(1,)] == Poly.const(1, 1)
        assert mps.polynomials[(2,)] == Poly.var(1, 0)

    def test_highest_weight_minor_is_one(self):
        for rank, theta, k in [(3, {1, 3}, 2), (4, set(), 2), (4, {1, 3, 4}, 2)]:
            ch = big_cell_chart(build_root_system(rank), theta)
            mps = minor_polynomials(ch, k)
            assert mps.polynomials[tuple(range(1, k + 1))] == Poly.const(
                ch.dimension, 1
            )

    def test_count(self):
        import math

        ch = big_cell_chart(build_root_system(4), set())
        for k in range(1, 5):
            mps = minor_polynomials(ch, k)
            assert len(mps.polynomials) == math.comb(5, k)

    def test_grassmannian_det_minor(self):
        ch = big_cell_chart(build_root_system(3), {1, 3})
        mps = minor_polynomials(ch, 2)
        # rows {3,4}: det [[z1, z3], [z2, z4]] = z1 z4 - z2 z3
        want = Poly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
        assert mps.polynomials[(3, 4)] == want

    def test_out_of_range(self):
        ch = big_cell_chart(build_root_system(2), set())
        with pytest.raises(ValueError):
            minor_polynomials(ch, 3)


class TestNormSquare:
    def test_identity_coset(self, cp1):
        mps = cp1.factors[0][0]
        assert norm_square_eval(mps, [0], "exact") == Fraction(1)

    def test_rank1_at_one(self, cp1):
        mps = cp1.factors[0][0]
        assert norm_square_eval(mps, [1], "exact") == Fraction(2)

    def test_grassmannian_point(self, gr24):
        mps = gr24.factors[0][0]
        assert norm_square_eval(mps, [1, 0, 0, 1], "exact") == Fraction(4)

    @given(
        st.lists(rationals, min_size=4, max_size=4),
        st.lists(rationals, min_size=4, max_size=4),
    )
    @settings(max_examples=25, deadline=None)
    def test_positivity_and_minimum(self, gr24, res, ims):
        mps = gr24.factors[0][0]
        z = [Q(a, b) for a, b in zip(res, ims)]
        val = norm_square_eval(mps, z, "exact")
        assert val >= 1
        if any(z):
            assert val > 1

    @given(
        st.integers(min_value=2, max_value=4),
        st.integers(min_value=1, max_value=3),
        st.data(),
    )
    @settings(max_examples=25, deadline=None)
    def test_plucker_consistency(self, rank, k, data):
        """Oracle: sum_I |det_I|^2 equals the squared Frobenius norm of the
        k-th compound matrix of n(z) restricted to its first k columns."""
        k = min(k, rank)
        ch = big_cell_chart(build_root_system(rank), set())
        z = [
            complex(
                data.draw(st.floats(-1, 1, allow_nan=False)),
                data.draw(st.floats(-1, 1, allow_nan=False)),
            )
            for _ in range(ch.dimension)
        ]
        mps = minor_polynomials(ch, k)
        got = norm_square_eval(mps, z, "float")
        mat = np.asarray(big_cell_matrix(ch, z), dtype=complex)[:, :k]
        brute = 0.0
        for rows in combinations(range(rank + 1), k):
            brute += abs(np.linalg.det(mat[list(rows), :])) ** 2
        assert abs(got - brute) < 1e-10 * (1.0 + brute)

    def test_chart_dimension_matches_complement(self, gr24, su3t2):
        assert gr24.chart.dimension == len(gr24.parabolic.complement_roots)
        assert su3t2.chart.dimension == len(su3t2.parabolic.complement_roots)


class TestGoldenForms:
    """Coefficient-exact comparison against the displayed closed forms."""

    def test_cp1(self, cp1):
        S = cp1.norm_polys[0]
        assert S == Poly(2, {(0, 0): 1, (1, 1): 1})

    @pytest.mark.parametrize("rank", [2, 3, 4])
    def test_cpn(self, rank):
        from flagcone.kahler import anticanonical_potential

        spec = anticanonical_potential(rank, set(range(2, rank + 1)))
        S = spec.norm_polys[0]
        m = rank
        terms = {(0,) * (2 * m): 1}
        for j in range(m):
            e = [0] * (2 * m)
            e[j] = 1
            e[m + j] = 1
            terms[tuple(e)] = 1
        assert S == Poly(2 * m, terms)

    def test_gr24(self, gr24):
        S = gr24.norm_polys[0]
        # 1 + sum |z_k|^2 + |z1 z4 - z2 z3|^2
        det = Poly(8, {(1, 0, 0, 1, 0, 0, 0, 0): 1, (0, 1, 1, 0, 0, 0, 0, 0): -1})
        detbar = det.conjugate_pairs([4, 5, 6, 7, 0, 1, 2, 3])
        want = Poly(8, {(0,) * 8: 1})
        for j in range(4):
            e = [0] * 8
            e[j] = 1
            e[4 + j] = 1
            want = want + Poly(8, {tuple(e): 1})
        want = want + det * detbar
        assert S == want

    def test_su3t2_two_factors(self, su3t2):
        S1, S2 = su3t2.norm_polys
        assert S1 == Poly(
            6, {(0,) * 6: 1, (1, 0, 0, 1, 0, 0): 1, (0, 1, 0, 0, 1, 0): 1}
        )
        det = Poly(6, {(1, 0, 1, 0, 0, 0): 1, (0, 1, 0, 0, 0, 0): -1})
        detbar = det.conjugate_pairs([3, 4, 5, 0, 1, 2])
        want = Poly(6, {(0,) * 6: 1, (0, 0, 1, 0, 0, 1): 1}) + det * detbar
        assert S2 == want

    def test_exponents_are_pairings(self, gr24, su3t2):
        assert gr24.exponents() == (4,)
        assert su3t2.exponents() == (2, 2)
