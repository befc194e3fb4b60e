"""Dense exact linear algebra: Schur complements, LDU, operators, char_poly."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from opgb.errors import NotQuasiDefinite, SingularBlock, SingularTruncation
from opgb.numlin import (
    Matrix,
    char_poly,
    derivative_matrix,
    det,
    inverse,
    is_hankel,
    ldu_factorize,
    polynomial_of_operator,
    quasi_det_last,
    schur_complement,
    shift_matrix,
    shift_transpose_matrix,
    solve,
    unit_lower_inverse,
)

from conftest import random_quasi_definite

F = Fraction


def diag(*vals):
    n = len(vals)
    return Matrix([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])


class TestSchurComplement:
    def test_two_by_two(self):
        out = schur_complement(Matrix([[2, 1], [1, 1]]), 1)
        assert out.rows == [[F(1, 2)]]

    def test_block_diagonal(self):
        out = schur_complement(Matrix([[1, 0], [0, 5]]), 1)
        assert out.rows == [[5]]

    def test_identity(self):
        out = schur_complement(Matrix.identity(3), 2)
        assert out.rows == [[1]]

    def test_singular_block(self):
        with pytest.raises(SingularBlock):
            schur_complement(Matrix([[0, 1], [1, 0]]), 1)


class TestLdu:
    def test_two_by_two(self):
        l, d, u = ldu_factorize(Matrix([[2, 1], [1, 1]]))
        assert l.rows == [[1, 0], [F(1, 2), 1]]
        assert d == [2, F(1, 2)]
        assert u.rows == [[1, F(1, 2)], [0, 1]]

    def test_diagonal_passthrough(self):
        g = diag(3, 2, F(2, 3))
        l, d, u = ldu_factorize(g)
        assert l.rows == Matrix.identity(3).rows
        assert u.rows == Matrix.identity(3).rows
        assert d == [3, 2, F(2, 3)]

    def test_zero_leading_minor(self):
        with pytest.raises(NotQuasiDefinite) as exc:
            ldu_factorize(Matrix([[0, 1], [1, 0]]))
        assert exc.value.index == 0

    def test_final_zero_pivot_flagged(self):
        g = Matrix([[2, 2], [2, 2]])
        with pytest.raises(NotQuasiDefinite) as exc:
            ldu_factorize(g)
        assert exc.value.index == 1
        l, d, u = ldu_factorize(g, allow_final_zero=True)
        assert d == [2, 0]
        assert l.rows == [[1, 0], [1, 1]]

    def test_reconstruction_random(self):
        rng = random.Random(11)
        for n in range(1, 11):
            g = random_quasi_definite(rng, n)
            l, d, u = ldu_factorize(g)
            assert (l @ diag(*d) @ u).rows == g.rows

    def test_pivots_are_minor_ratios(self):
        rng = random.Random(12)
        for n in (2, 4, 6):
            g = random_quasi_definite(rng, n)
            _, d, _ = ldu_factorize(g)
            prev = 1
            for k in range(n):
                cur = det(g.leading(k + 1))
                assert d[k] * prev == cur
                prev = cur


class TestQuasiDet:
    def test_matches_schur(self):
        out = quasi_det_last(Matrix([[2, 1], [1, 1]]), 1)
        assert out.rows == [[F(1, 2)]]

    def test_default_split_is_last_entry(self):
        m = Matrix([[2, 1], [1, 1]])
        assert quasi_det_last(m).rows == quasi_det_last(m, 1).rows

    def test_heredity(self):
        a = Matrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
        step1 = schur_complement(a, 1)
        nested = schur_complement(step1, 1)
        single = schur_complement(a, 2)
        assert nested.rows == single.rows == [[F(4, 3)]]

    def test_block_diagonal(self):
        m = Matrix([[3, 0, 0], [0, 2, 0], [0, 0, F(5, 7)]])
        assert quasi_det_last(m, 2).rows == [[F(5, 7)]]

    def test_heredity_random(self):
        rng = random.Random(13)
        for _ in range(5):
            a = random_quasi_definite(rng, 4)
            nested = schur_complement(schur_complement(a, 1), 1)
            assert nested.rows == schur_complement(a, 2).rows


class TestOperators:
    def test_shift(self):
        lam = shift_matrix(3)
        assert lam.rows == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
        assert shift_transpose_matrix(3).rows == lam.transpose().rows

    def test_derivative(self):
        d = derivative_matrix(4)
        assert d.rows == [[0, 0, 0, 0], [1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0]]

    def test_commutator_identity(self):
        for n in (3, 5, 8):
            lam, d = shift_matrix(n), derivative_matrix(n)
            comm = (lam @ d) - (d @ lam)
            assert comm.leading(n - 1).rows == Matrix.identity(n - 1).rows

    def test_polynomial_linear(self):
        lam = shift_matrix(4)
        out = polynomial_of_operator([-2, 1], lam)
        want = lam - Matrix.identity(4).scale(2)
        assert out.rows == want.rows

    def test_polynomial_constant(self):
        assert polynomial_of_operator([1], shift_matrix(3)).rows == Matrix.identity(3).rows

    def test_polynomial_quadratic(self):
        lam = shift_matrix(3)
        out = polynomial_of_operator([1, 0, -1], lam)
        want = Matrix.identity(3) - (lam @ lam)
        assert out.rows == want.rows


class TestCharPoly:
    def test_diagonal(self):
        assert char_poly(diag(1, 2)) == [2, -3, 1]

    def test_offdiag(self):
        assert char_poly(Matrix([[0, 1], [F(2, 3), 0]])) == [F(-2, 3), 0, 1]

    def test_zero_matrix(self):
        assert char_poly(Matrix.zeros(2)) == [0, 0, 1]

    def test_cayley_hamilton_random(self):
        rng = random.Random(14)
        m = random_quasi_definite(rng, 4)
        coeffs = char_poly(m)
        acc = Matrix.zeros(4)
        power = Matrix.identity(4)
        for c in coeffs:
            acc = acc + power.scale(c)
            power = power @ m
        assert acc.rows == Matrix.zeros(4).rows


class TestSolveInverse:
    def test_inverse_roundtrip(self):
        rng = random.Random(15)
        m = random_quasi_definite(rng, 5)
        assert (inverse(m) @ m).rows == Matrix.identity(5).rows

    def test_solve_matches_inverse(self):
        rng = random.Random(16)
        m = random_quasi_definite(rng, 4)
        b = Matrix([[1], [2], [3], [4]])
        x = solve(m, b)
        assert (m @ x).rows == b.rows

    def test_singular_raises(self):
        with pytest.raises(SingularTruncation):
            solve(Matrix([[1, 1], [1, 1]]), Matrix([[1], [0]]))

    def test_unit_lower_inverse(self):
        lo = Matrix([[1, 0, 0], [F(1, 2), 1, 0], [3, F(-2, 5), 1]])
        inv = unit_lower_inverse(lo)
        assert (lo @ inv).rows == Matrix.identity(3).rows

    @given(st.lists(st.integers(-9, 9), min_size=3, max_size=3))
    def test_det_agrees_with_rule(self, vals):
        a, b, c = vals
        m = Matrix([[a, b], [c, 5]])
        assert det(m) == 5 * a - b * c


class TestHankelDetection:
    def test_hankel_true(self):
        assert is_hankel(Matrix([[1, 2, 3], [2, 3, 4], [3, 4, 5]]))

    def test_symmetric_not_hankel(self):
        assert not is_hankel(Matrix([[1, 2, 3], [2, 9, 4], [3, 4, 5]]))

    def test_float_tolerance(self):
        assert is_hankel(Matrix([[1.0, 2.0], [2.0 + 1e-13, 3.0]]))
