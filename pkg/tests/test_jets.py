"""Jet arithmetic: truncated products, compositions, and the FD oracle."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcone.errors import JetDomainError, TruncationError
from flagcone.jets import (
    Jet,
    JetSpace,
    finite_difference_check,
    jet_det,
    jet_lift,
    jet_matrix_inverse,
    wirtinger_fd,
)
from flagcone.poly import Poly
from flagcone.rational import GaussianRational as Q

small_rationals = st.fractions(
    min_value=Fraction(-1), max_value=Fraction(1), max_denominator=5
)


def _log_norm1(z):
    (w,) = z
    return math.log(1.0 + abs(w) ** 2)


class TestLift:
    def test_constant(self):
        sp = JetSpace(1, 4)
        j = jet_lift(Poly.const(2, 1), [0, 0], sp, "exact")
        assert j.value == Q(1)
        assert all(not c for c in j.c[1:])

    def test_variable_at_zero(self):
        sp = JetSpace(1, 4)
        j = jet_lift(Poly.var(2, 0), [0, 0], sp, "float")
        assert j.value == 0
        assert j.extract((1, 0)) == 1
        assert j.extract((0, 1)) == 0

    def test_determinant_gradient(self):
        # z1 z4 - z2 z3 at (1, 0, 0, 1): value 1, gradient (1, 0, 0, 1)
        p = Poly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
        sp = JetSpace(4, 4)
        j = jet_lift(p, [1, 0, 0, 1], sp, "exact")
        assert j.value == Q(1)
        grad = [
            j.extract(tuple(1 if t == v else 0 for t in range(8)))
            for v in range(4)
        ]
        assert grad == [Q(1), Q(0), Q(0), Q(1)]

    @given(
        st.lists(small_rationals, min_size=2, max_size=2),
        st.lists(small_rationals, min_size=2, max_size=2),
    )
    @settings(max_examples=20, deadline=None)
    def test_exact_evaluation_matches(self, res, ims):
        # lifted constant term equals polynomial evaluation
        p = Poly(2, {(2, 1): 3, (0, 1): -2, (1, 0): 5, (0, 0): 7})
        z = [Q(a, b) for a, b in zip(res, ims)]
        sp = JetSpace(1, 4)
        j = jet_lift(p, [z[0], z[1]], sp, "exact", var_map=[0, 1])
        assert j.value == p.eval(z)


class TestArithmetic:
    def test_log_of_one(self):
        sp = JetSpace(1, 4)
        one = Jet.constant(sp, 1, "float")
        assert np.allclose(np.abs(one.log().c), 0.0)

    def test_log_norm_mixed_partial(self):
        sp = JetSpace(1, 4)
        z = Jet.variable(sp, 0, 0.0, "float")
        u = (1 + z * z.conjugate()).log()
        assert abs(u.extract((1, 1)) - 1.0) < 1e-14
        # the (2,2) partial: series log(1+w) = w - w^2/2 gives -2
        assert abs(u.extract((2, 2)) - (-2.0)) < 1e-14

    def test_real_pow_constant(self):
        sp = JetSpace(1, 4)
        c = Jet.constant(sp, 5.0, "float")
        assert abs(c.real_pow(1.0 / 3.0).value - 5.0 ** (1.0 / 3.0)) < 1e-15

    def test_reciprocal_domain(self):
        sp = JetSpace(1, 3)
        z = Jet.variable(sp, 0, 0.0, "exact")
        with pytest.raises(JetDomainError):
            z.reciprocal()

    def test_log_domain(self):
        sp = JetSpace(1, 3)
        with pytest.raises(JetDomainError):
            Jet.constant(sp, -2.0, "float").log()

    @given(
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    )
    @settings(max_examples=30, deadline=None)
    def test_leibniz_exact(self, c1, c2):
        """jet(p q) = jet(p) jet(q) coefficientwise on the exact backend."""
        p = Poly(2, {(1, 0): c1[0], (0, 1): c1[1], (1, 1): c1[2]})
        q = Poly(2, {(0, 0): c2[0], (1, 0): c2[1], (0, 1): c2[2]})
        sp = JetSpace(1, 4)
        pt = [Q(Fraction(1, 3)), Q(Fraction(-1, 2))]
        jp = jet_lift(p, pt, sp, "exact")
        jq = jet_lift(q, pt, sp, "exact")
        jpq = jet_lift(p * q, pt, sp, "exact")
        prod = jp * jq
        assert all(a == b for a, b in zip(jpq.c, prod.c))

    @given(small_rationals, small_rationals)
    @settings(max_examples=25, deadline=None)
    def test_dlog_is_df_over_f(self, a, b):
        """d log f = df / f on a positive field, exactly."""
        sp = JetSpace(1, 4)
        z = Jet.variable(sp, 0, Q(a, b), "exact")
        f = 1 + z * z.conjugate()
        lhs = f.log().deriv(0)
        rhs = f.deriv(0) * f.reciprocal()
        assert all(x == y for x, y in zip(lhs.c, rhs.c))

    def test_exact_log_coefficients_rational(self, gr24):
        from flagcone.kahler import log_potential_jet

        z = [Q(Fraction(1, 2)), Q(0, Fraction(1, 3)), Q(Fraction(-1, 5)), Q(1)]
        u = log_potential_jet(gr24, z, order=4, backend="exact")
        assert all(isinstance(c, Q) for c in u.c)

    def test_truncation_error(self):
        sp = JetSpace(1, 4)
        z = Jet.variable(sp, 0, 0.0, "float")
        with pytest.raises(TruncationError):
            z.extract((3, 2))

    def test_conjugation_swaps_variables(self):
        sp = JetSpace(2, 3)
        z0 = Jet.variable(sp, sp.z(0), 0.25 + 0.5j, "float")
        c = z0.conjugate()
        assert abs(c.value - (0.25 - 0.5j)) < 1e-15
        e = [0] * sp.nvars
        e[sp.zbar(0)] = 1
        assert abs(c.extract(tuple(e)) - 1.0) < 1e-15


class TestFiniteDifference:
    def test_first_order(self):
        sp = JetSpace(1, 4)
        z0 = 0.3 + 0.0j
        z = Jet.variable(sp, 0, z0, "float")
        u = (1 + z * z.conjugate()).log()
        err = finite_difference_check(
            _log_norm1, [z0], [("z", 0), ("zbar", 0)], u.extract((1, 1))
        )
        assert err < 1e-6

    def test_polynomial_second_order(self):
        sp = JetSpace(1, 4)
        z = Jet.variable(sp, 0, 0.4 + 0.1j, "float")
        f = z * z.conjugate() + 2 * z

        def field(zz):
            (w,) = zz
            return w * w.conjugate() + 2 * w

        err = finite_difference_check(
            field, [0.4 + 0.1j], [("z", 0), ("zbar", 0)], f.extract((1, 1))
        )
        assert err < 1e-7

    def test_constant_field(self):
        err = finite_difference_check(lambda z: 3.0, [0.1], [("z", 0)], 0.0)
        assert err == 0.0

    def test_order_cap(self):
        with pytest.raises(TruncationError):
            finite_difference_check(
                lambda z: 0.0, [0.0], [("z", 0)] * 3, 0.0
            )

    def test_fourth_order_against_wide_stencil(self):
        """(2,2) partial of log(1+|z|^2) at 0 is -2; verified by nesting
        Wirtinger differences with a wide step (test-local oracle)."""
        sp = JetSpace(1, 4)
        z = Jet.variable(sp, 0, 0.0, "float")
        u = (1 + z * z.conjugate()).log()
        jet_val = u.extract((2, 2))

        h = 0.01

        def d11(zz):
            inner = lambda w: wirtinger_fd(_log_norm1, w, ("zbar", 0), h)
            return wirtinger_fd(inner, zz, ("z", 0), h)

        fd = wirtinger_fd(
            lambda w: wirtinger_fd(d11, w, ("zbar", 0), h), [0.0], ("z", 0), h
        )
        assert abs(jet_val - (-2.0)) < 1e-13
        assert abs(fd - jet_val) < 1e-2


class TestJetLinalg:
    def test_det_and_inverse(self):
        sp = JetSpace(2, 3)
        z1 = Jet.variable(sp, sp.z(0), 0.3 + 0.1j, "float")
        z2 = Jet.variable(sp, sp.z(1), -0.2 + 0.4j, "float")
        one = Jet.constant(sp, 1, "float")
        M = [[one + z1 * z1.conjugate(), z1 * z2.conjugate()],
             [z2 * z1.conjugate(), one + z2 * z2.conjugate()]]
        d = jet_det(M)
        # det = (1+|z1|^2)(1+|z2|^2) - |z1|^2 |z2|^2 = 1 + |z1|^2 + |z2|^2
        want = 1.0 + abs(0.3 + 0.1j) ** 2 + abs(-0.2 + 0.4j) ** 2
        assert abs(complex(d.value) - want) < 1e-14
        Minv = jet_matrix_inverse(M)
        for i in range(2):
            for j in range(2):
                acc = M[i][0] * Minv[0][j] + M[i][1] * Minv[1][j]
                target = 1.0 if i == j else 0.0
                assert abs(complex(acc.value) - target) < 1e-13
                assert np.abs(acc.c[1:].astype(complex)).max() < 1e-12
