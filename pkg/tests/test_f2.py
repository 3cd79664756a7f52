"""Field, form, and decomposition machinery."""

import random

import pytest

from conway_groupoids import codes, f2
from conway_groupoids.errors import (
    DegenerateInputError,
    DimensionError,
    InequivalentFormsError,
    NoSolutionError,
    SingularMatrixError,
)
from conway_groupoids.f2 import F2Matrix


def naive_phi(m: int, u: int, v: int) -> int:
    """Oracle: explicit u f v^T with f the block anti-diagonal identity matrix."""
    f = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        f[i][m + i] = 1
        f[m + i][i] = 1
    total = 0
    for i in range(2 * m):
        for j in range(2 * m):
            total += ((u >> i) & 1) * f[i][j] * ((v >> j) & 1)
    return total % 2


class TestF2Matrix:
    def test_identity_and_mul(self):
        I = F2Matrix.identity(4)
        M = F2Matrix([0b0011, 0b0110, 0b1100, 0b1000], 4)
        assert M.mul(I) == M
        assert I.mul(M) == M

    def test_rank_and_rref(self):
        M = F2Matrix([0b011, 0b101, 0b110], 3)  # row3 = row1 + row2
        assert M.rank() == 2
        assert M.rref().nrows == 2

    def test_inverse(self):
        rng = random.Random(3)
        for _ in range(20):
            rows = [rng.randrange(1, 64) for _ in range(6)]
            M = F2Matrix(rows, 6)
            if not M.is_invertible():
                continue
            assert M.mul(M.inverse()) == F2Matrix.identity(6)

    def test_singular_inverse_raises(self):
        with pytest.raises(SingularMatrixError):
            F2Matrix([0b01, 0b01], 2).inverse()

    def test_kernel(self):
        M = F2Matrix([0b011, 0b110], 3)
        K = M.kernel()
        assert K.nrows == 1
        for x in K.rows:
            for r in M.rows:
                assert (r & x).bit_count() % 2 == 0

    def test_bitstring_round_trip(self):
        M = F2Matrix([0b1011, 0b0010], 4)
        assert F2Matrix.from_bitstrings(M.to_bitstrings()) == M
        assert M.to_bitstrings()[0] == "1101"  # index 0 leftmost

    def test_transpose(self):
        M = F2Matrix([0b01, 0b11, 0b10], 2)
        assert M.transpose().transpose() == M
        assert M.transpose().entry(0, 2) == M.entry(2, 0)


class TestForms:
    def test_phi_hand_values(self):
        s1 = f2.space(1)
        assert s1.phi(0b01, 0b10) == 1  # u=(1,0), v=(0,1)
        s2 = f2.space(2)
        assert s2.phi(0b0011, 0b0100) == naive_phi(2, 0b0011, 0b0100) == 1

    def test_phi_matches_matrix_oracle(self):
        for m in (1, 2, 3):
            s = f2.space(m)
            rng = random.Random(m)
            for _ in range(200):
                u = rng.randrange(1 << s.dim)
                v = rng.randrange(1 << s.dim)
                assert s.phi(u, v) == naive_phi(m, u, v)

    def test_phi_alternating_symmetric_bilinear(self):
        for m in (1, 2, 3):
            s = f2.space(m)
            n = 1 << s.dim
            step = 1 if m < 3 else 5
            for u in range(0, n, step):
                assert s.phi(u, u) == 0
                for v in range(0, n, step):
                    assert s.phi(u, v) == s.phi(v, u)
        for m in (4, 5):
            s = f2.space(m)
            rng = random.Random(9 + m)
            for _ in range(500):
                u, v, w = (rng.randrange(1 << s.dim) for _ in range(3))
                assert s.phi(u ^ v, w) == (s.phi(u, w) ^ s.phi(v, w))
                assert s.phi(u, v) == s.phi(v, u)
                assert s.phi(u, u) == 0

    def test_theta_values(self):
        s1 = f2.space(1)
        assert s1.theta(0, 0b11) == 1
        assert s1.theta(0, 0b01) == 0

    def test_theta_polarizes_to_phi(self):
        for m in (1, 2, 3):
            s = f2.space(m)
            n = 1 << s.dim
            rng = random.Random(m + 10)
            for _ in range(500):
                a, u, v = (rng.randrange(n) for _ in range(3))
                assert (s.theta(a, u ^ v) ^ s.theta(a, u) ^ s.theta(a, v)) == s.phi(u, v)

    def test_odd_form_sums_collapse(self):
        # theta_{v1} + theta_{v2} + theta_{v3} = theta_{v1+v2+v3} pointwise
        s = f2.space(2)
        for v1 in range(16):
            for v2 in range(16):
                for v3 in range(16):
                    target = v1 ^ v2 ^ v3
                    for u in range(16):
                        lhs = s.theta(v1, u) ^ s.theta(v2, u) ^ s.theta(v3, u)
                        assert lhs == s.theta(target, u)

    def test_transvection_moves_forms_within_type_classes(self):
        # t_c carries theta_a to theta_b iff the types agree, and then c = a+b
        s = f2.space(2)
        for a in range(16):
            for b in range(16):
                movers = [
                    c
                    for c in range(16)
                    if s.transvection_on_form(c, a) == b
                ]
                if a == b:
                    assert 0 in movers  # t_0 is the identity
                elif s.theta0(a) == s.theta0(b):
                    assert movers == [a ^ b]
                else:
                    assert movers == []

    def test_dimension_errors(self):
        s = f2.space(2)
        with pytest.raises(DimensionError):
            s.phi(1 << 4, 0)
        with pytest.raises(DimensionError):
            s.theta(0, 1 << 5)


class TestTransvections:
    def test_fixed_point_and_example(self):
        s = f2.space(1)
        for c in range(4):
            assert s.apply_transvection(c, c) == c
        assert s.apply_transvection(0b01, 0b10) == 0b11

    def test_involution(self):
        s = f2.space(3)
        rng = random.Random(5)
        for _ in range(300):
            c = rng.randrange(64)
            u = rng.randrange(64)
            assert s.apply_transvection(c, s.apply_transvection(c, u)) == u

    def test_matrix_in_symplectic_group_and_squares_to_identity(self):
        for m in (1, 2, 3):
            s = f2.space(m)
            for c in range(1 << s.dim):
                M = s.transvection_matrix(c)
                assert f2.sp_membership(s, M)
                assert M.mul(M) == F2Matrix.identity(s.dim)

    def test_on_form_branches(self):
        s = f2.space(3)
        for c in range(64):
            if s.theta0(c) == 0:
                assert s.transvection_on_form(c, 0) == c
            else:
                assert s.transvection_on_form(c, 0) == 0

    def test_on_form_matches_conjugated_evaluation(self):
        for m in (1, 2, 3):
            s = f2.space(m)
            n = 1 << s.dim
            rng = random.Random(m + 77)
            for _ in range(150):
                c = rng.randrange(n)
                a = rng.randrange(n)
                r = s.transvection_on_form(c, a)
                for u in range(n):
                    assert s.theta(r, u) == s.theta(a, s.apply_transvection(c, u))


class TestTypeClasses:
    def test_sizes_match_formula(self):
        for m in range(1, 7):
            s = f2.space(m)
            for eps in (0, 1):
                assert len(s.v_epsilon(eps)) == f2.f_eps(m, eps)

    def test_small_case_membership(self):
        s = f2.space(1)
        assert s.v_epsilon(0) == [0b00, 0b01, 0b10]
        assert s.v_epsilon(1) == [0b11]

    def test_m3_sizes(self):
        s = f2.space(3)
        assert len(s.v_epsilon(0)) == 36
        assert len(s.v_epsilon(1)) == 28

    def test_recurrence(self):
        for m in range(1, 6):
            for eps in (0, 1):
                assert f2.f_eps(m + 1, eps) == 3 * f2.f_eps(m, eps) + f2.f_eps(m, 1 - eps)

    def test_inductive_construction_sizes(self):
        s1 = f2.space(1)
        lifted0 = f2.inductive_v_epsilon(s1.v_epsilon(0), s1.v_epsilon(1), 1, 0)
        lifted1 = f2.inductive_v_epsilon(s1.v_epsilon(0), s1.v_epsilon(1), 1, 1)
        assert len(lifted0) == 10 and len(lifted1) == 6

    def test_inductive_construction_matches_filter(self):
        for k in (1, 2, 3):
            sk = f2.space(k)
            sk1 = f2.space(k + 1)
            for eps in (0, 1):
                lifted = f2.inductive_v_epsilon(
                    sk.v_epsilon(0), sk.v_epsilon(1), k, eps
                )
                assert sorted(lifted) == sk1.v_epsilon(eps)


class TestDecompositions:
    def test_sum2_case_table_values(self):
        s2 = f2.space(2)
        assert f2.decompose_sum2(s2, 0b0001, 0) == (0, 0b0001)
        # e2 + e4 and e1 + e2 + e4 in coordinates
        assert f2.decompose_sum2(s2, 0b0001, 1) == (0b1010, 0b1011)

    def test_sum2_exhaustive_m3(self):
        s = f2.space(3)
        for v in range(1, 64):
            for eps in (0, 1):
                x, y = f2.decompose_sum2(s, v, eps)
                assert x != y and x ^ y == v
                assert s.theta0(x) == eps and s.theta0(y) == eps

    def test_sum2_rejects_zero(self):
        with pytest.raises(DegenerateInputError):
            f2.decompose_sum2(f2.space(3), 0, 0)

    def test_sum3_guaranteed_regime(self):
        s = f2.space(3)
        for v in range(64):
            for eps in (0, 1):
                if s.theta0(v) == 1 - eps:
                    x, y, z = f2.decompose_sum3(s, v, eps)
                    assert len({x, y, z}) == 3 and x ^ y ^ z == v
                    assert {s.theta0(t) for t in (x, y, z)} == {eps}

    def test_sum3_degenerate_zero(self):
        s = f2.space(3)
        x, y, z = f2.decompose_sum3(s, 0, 0)
        assert len({x, y, z}) == 3 and x ^ y ^ z == 0


class TestAffineSolver:
    def test_empty_constraints(self):
        assert f2.solve_affine_theta(f2.space(3), [], 0) == 0

    def test_three_constraints_m4(self):
        s = f2.space(4)
        rng = random.Random(11)
        for _ in range(60):
            while True:
                a = [rng.randrange(1, 256) for _ in range(3)]
                if F2Matrix(a, 8).rank() == 3:
                    break
            b = [rng.randrange(2) for _ in range(3)]
            for eps in (0, 1):
                w = f2.solve_affine_theta(s, list(zip(a, b)), eps)
                assert s.theta0(w) == eps
                assert all(s.phi(w, ai) == bi for ai, bi in zip(a, b))

    def test_three_constraints_m3(self):
        s = f2.space(3)
        rng = random.Random(12)
        hits = 0
        for _ in range(60):
            while True:
                a = [rng.randrange(1, 64) for _ in range(3)]
                if F2Matrix(a, 6).rank() == 3:
                    break
            b = [rng.randrange(2) for _ in range(3)]
            for eps in (0, 1):
                try:
                    w = f2.solve_affine_theta(s, list(zip(a, b)), eps)
                except f2.NotFoundError:
                    # full-coset scan really was exhaustive
                    kern = F2Matrix([s.f.vec_mul(ai) for ai in a], 6).kernel().rows
                    x0 = f2.solve_linear([s.f.vec_mul(ai) for ai in a], b, 6)
                    coset = set()
                    for combo in range(1 << len(kern)):
                        wv = x0
                        for i, kv in enumerate(kern):
                            if (combo >> i) & 1:
                                wv ^= kv
                        coset.add(wv)
                    assert all(s.theta0(wv) != eps for wv in coset)
                    continue
                hits += 1
                assert s.theta0(w) == eps
                assert all(s.phi(w, ai) == bi for ai, bi in zip(a, b))
        assert hits > 0

    def test_inconsistent_system(self):
        s = f2.space(3)
        with pytest.raises(NoSolutionError):
            f2.solve_affine_theta(s, [(1, 0), (1, 1)], 0)


class TestSpGroup:
    def test_orders(self):
        assert f2.sp_order(1) == 6
        assert f2.sp_order(2) == 720
        assert f2.sp_order(3) == 1451520

    def test_membership(self):
        s = f2.space(2)
        assert f2.sp_membership(s, F2Matrix.identity(4))
        assert not f2.sp_membership(s, F2Matrix([0] * 4, 4))
        # invertible but form-breaking
        M = F2Matrix([0b0010, 0b0001, 0b0100, 0b1000], 4)
        ok = f2.sp_membership(s, M)
        assert ok == (M.mul(s.f).mul(M.transpose()) == s.f)


class TestFormCongruence:
    def test_same_form(self):
        s = f2.space(3)
        A = f2.form_congruence(s, s.e, s.e)
        assert A.is_invertible()
        for v in range(64):
            assert s.theta0(A.vec_mul(v)) == s.theta0(v)

    def test_bent_form_m3(self):
        s = f2.space(3)
        Q = codes.brz_q_matrix(6)
        A = f2.form_congruence(s, s.e, Q)
        for v in range(64):
            assert s.theta0(A.vec_mul(v)) == f2.quadratic_value(Q, v)

    def test_minus_type_rejected_against_plus(self):
        s = f2.space(2)
        Q = codes.brz_q_matrix(4)  # minus type in dimension 4
        assert f2.quadratic_zero_count(Q) == 6
        assert f2.quadratic_zero_count(s.e) == 10
        with pytest.raises(InequivalentFormsError):
            f2.form_congruence(s, s.e, Q)

    def test_minus_minus_congruence(self):
        s = f2.space(2)
        Q = codes.brz_q_matrix(4)
        a = next(v for v in range(16) if s.theta0(v) == 1)
        E = s.theta_matrix(a)
        A = f2.form_congruence(s, E, Q)
        for v in range(16):
            assert s.theta(a, A.vec_mul(v)) == f2.quadratic_value(Q, v)

    def test_zero_counts_detect_type(self):
        # plus type: 2^(2m-1) + 2^(m-1) zeros; minus: 2^(2m-1) - 2^(m-1)
        for m in (2, 3):
            s = f2.space(m)
            assert f2.quadratic_zero_count(s.e) == (1 << (2 * m - 1)) + (1 << (m - 1))
            a = next(v for v in range(1 << s.dim) if s.theta0(v) == 1)
            assert f2.quadratic_zero_count(s.theta_matrix(a)) == (
                (1 << (2 * m - 1)) - (1 << (m - 1))
            )
