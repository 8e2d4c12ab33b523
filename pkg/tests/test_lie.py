"""Root-system combinatorics and parabolic invariants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcone.errors import DegenerateParabolicError, InvalidRankError
from flagcone.lie import (
    CREPANT,
    DIVISOR_ROOT,
    NON_ROOT,
    build_root_system,
    crepancy_check,
    delta_p,
    fano_index,
    pairing,
    parabolic_choice,
    parabolic_complement,
)


class TestBuildRootSystem:
    def test_rank_one(self):
        rs = build_root_system(1)
        assert len(rs.positive_roots) == 1
        assert rs.positive_roots[0].simple_coeffs == (1,)

    def test_rank_two(self):
        rs = build_root_system(2)
        coeffs = {r.simple_coeffs for r in rs.positive_roots}
        assert coeffs == {(1, 0), (0, 1), (1, 1)}

    def test_rank_three_count(self):
        # brute force: all eps_i - eps_j with i < j
        rs = build_root_system(3)
        pairs = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
        assert len(rs.positive_roots) == len(pairs) == 6
        assert [(r.i, r.j) for r in rs.positive_roots] == pairs

    def test_invalid_rank(self):
        with pytest.raises(InvalidRankError):
            build_root_system(0)
        with pytest.raises(InvalidRankError):
            build_root_system(-3)

    @given(st.integers(min_value=1, max_value=8))
    @settings(max_examples=20, deadline=None)
    def test_invariants(self, rank):
        rs = build_root_system(rank)
        assert len(rs.positive_roots) == rank * (rank + 1) // 2
        for r in rs.positive_roots:
            assert all(c >= 0 for c in r.simple_coeffs)
            # eps coordinates sum to zero with a single +1 / -1 pair
            assert sum(r.epsilon) == 0
        C = rs.cartan()
        assert (C.diagonal() == 2).all()
        assert (C == C.T).all()


class TestParabolicComplement:
    def test_grassmannian(self):
        rs = build_root_system(3)
        comp = parabolic_complement(rs, {1, 3})
        got = {r.simple_coeffs for r in comp}
        assert got == {(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)}

    def test_degenerate_full_theta(self):
        rs = build_root_system(2)
        assert parabolic_complement(rs, {1, 2}) == []

    @given(st.integers(min_value=1, max_value=7))
    @settings(max_examples=15, deadline=None)
    def test_projective_space(self, rank):
        # theta = Sigma \ {alpha_1}: the n roots alpha_1 + ... + alpha_k
        rs = build_root_system(rank)
        comp = parabolic_complement(rs, set(range(2, rank + 1)))
        want = {tuple(1 if i < k else 0 for i in range(rank)) for k in range(1, rank + 1)}
        assert {r.simple_coeffs for r in comp} == want

    def test_support_oracle(self):
        # brute-force support test over all of Pi+ for a random-ish theta
        rs = build_root_system(5)
        theta = {2, 5}
        comp = parabolic_complement(rs, theta)
        brute = [
            r for r in rs.positive_roots
            if not {k + 1 for k, c in enumerate(r.simple_coeffs) if c} <= theta
        ]
        assert comp == brute


class TestDeltaP:
    def test_grassmannian(self):
        rs = build_root_system(3)
        assert delta_p(rs, {1, 3}) == (2, 4, 2)

    def test_full_flag_rank2(self):
        rs = build_root_system(2)
        assert delta_p(rs, set()) == (2, 2)

    @given(st.integers(min_value=1, max_value=7))
    @settings(max_examples=15, deadline=None)
    def test_projective_space(self, rank):
        rs = build_root_system(rank)
        assert delta_p(rs, set(range(2, rank + 1))) == tuple(
            rank - k for k in range(rank)
        )


class TestPairing:
    def test_grassmannian_alpha2(self):
        rs = build_root_system(3)
        assert pairing(rs, (2, 4, 2), 2) == 4

    @pytest.mark.parametrize("rank", range(1, 7))
    def test_projective_space(self, rank):
        rs = build_root_system(rank)
        dp = delta_p(rs, set(range(2, rank + 1)))
        assert pairing(rs, dp, 1) == rank + 1

    def test_zero_weight(self):
        rs = build_root_system(4)
        assert pairing(rs, (0, 0, 0, 0), 3) == 0

    def test_index_out_of_range(self):
        rs = build_root_system(2)
        with pytest.raises(ValueError):
            pairing(rs, (1, 1), 3)


class TestFanoIndex:
    @pytest.mark.parametrize("rank", range(1, 7))
    def test_projective_space(self, rank):
        pc = parabolic_choice(build_root_system(rank), set(range(2, rank + 1)))
        assert pc.fano_index == rank + 1

    def test_grassmannian(self):
        pc = parabolic_choice(build_root_system(3), {1, 3})
        assert pc.fano_index == 4

    def test_full_flag_su3(self):
        pc = parabolic_choice(build_root_system(2), set())
        assert pc.fano_index == 2

    @given(st.integers(min_value=1, max_value=6))
    @settings(max_examples=10, deadline=None)
    def test_full_flag_pairings_all_two(self, rank):
        pc = parabolic_choice(build_root_system(rank), set())
        assert all(v == 2 for v in pc.pairings.values())
        assert pc.fano_index == 2

    def test_empty_errors(self):
        with pytest.raises(DegenerateParabolicError):
            fano_index({})


class TestCrepancy:
    def test_crepant(self):
        assert crepancy_check(4, 4) == CREPANT

    def test_divisor_root(self):
        assert crepancy_check(1, 5) == DIVISOR_ROOT
        assert crepancy_check(2, 4) == DIVISOR_ROOT

    def test_non_root(self):
        assert crepancy_check(3, 4) == NON_ROOT


class TestParabolicChoice:
    def test_validation(self):
        rs = build_root_system(2)
        with pytest.raises(DegenerateParabolicError):
            parabolic_choice(rs, {1, 2})
        with pytest.raises(ValueError):
            parabolic_choice(rs, {3})
        with pytest.raises(ValueError):
            parabolic_choice(rs, set(), ell=0)

    @given(
        st.integers(min_value=1, max_value=6),
        st.sets(st.integers(min_value=1, max_value=6)),
    )
    @settings(max_examples=40, deadline=None)
    def test_derived_invariants(self, rank, theta):
        theta = {t for t in theta if t <= rank}
        if len(theta) == rank:
            theta = set()
        rs = build_root_system(rank)
        pc = parabolic_choice(rs, theta)
        # delta_P is the componentwise sum of the complement
        acc = [0] * rank
        for r in pc.complement_roots:
            for k, c in enumerate(r.simple_coeffs):
                acc[k] += c
        assert tuple(acc) == pc.delta_p
        assert all(v > 0 for v in pc.pairings.values())
        assert pc.picard_rank == rank - len(theta)
        assert all(v % pc.fano_index == 0 for v in pc.pairings.values())
