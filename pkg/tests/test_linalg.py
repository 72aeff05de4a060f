from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest

from conftest import group
from matsuo.algebra import MatsuoAlgebra
from matsuo.errors import DenominatorDivisibleByP, ValidationError
from matsuo.linalg import (PrimeField, QMatrix, Subspace, eigen_multiplicity, evaluate_poly_at_matrix,
                          minimal_polynomial, mod_p, nullity, nullspace_basis, nullspace_mod_p, rank,
                          rank_mod_p, rref)
from matsuo.poly import IntPoly


def mod_p_rank_oracle(rows, p):
    """Plain textbook elimination over F_p, kept separate from the package code."""
    a = [[x % p for x in r] for r in rows]
    r = 0
    for c in range(len(a[0]) if a else 0):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


class TestRank:
    def test_identity(self):
        assert rank(QMatrix.identity(2)) == 2

    def test_zero(self):
        assert rank(QMatrix.zeros(3, 3)) == 0

    def test_s4_collinearity_has_rank_three(self):
        # eigenvalue 0 has multiplicity 3 on the six transpositions of S4
        assert rank(group("sym:4").collinearity_matrix()) == 3

    def test_rational_entries(self):
        assert rank([[F(1, 2), F(1, 3)], [F(3, 2), 1]]) == 1

    def test_rank_nullity(self):
        m = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
        assert rank(m) + nullity(m) == 4

    def test_empty_rows(self):
        assert rank([]) == 0


class TestNullspace:
    def test_identity(self):
        assert nullspace_basis(QMatrix.identity(4)) == []

    def test_single_row(self):
        basis = nullspace_basis([[1, 1]])
        assert len(basis) == 1
        x, y = basis[0]
        assert x == -y != 0

    def test_vectors_are_exact_kernel(self):
        m = [[1, 2, 3], [2, 4, 6], [1, 0, F(1, 7)]]
        for v in nullspace_basis(m):
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)

    def test_s4_gram_at_minus_half(self):
        gram = MatsuoAlgebra(group("sym:4"), F(-1, 2)).frobenius_gram()
        assert len(nullspace_basis(gram)) == 1

    def test_rref_pivots(self):
        rows, pivots = rref([[0, 2, 4], [0, 1, 2], [1, 0, 0]])
        assert pivots == [0, 1]
        assert rows[0][0] == 1 and rows[1][1] == 1


class TestMinimalPolynomial:
    def test_zero_matrix(self):
        assert minimal_polynomial([[0]]) == IntPoly.x()

    def test_s5(self):
        assert minimal_polynomial(group("sym:5").collinearity_matrix()) == IntPoly.from_roots([6, 1, -2])

    def test_double_cover_of_s4(self):
        # 0 appears once even though the cover doubles the S4 eigenvalues
        assert minimal_polynomial(group("cover2:4").collinearity_matrix()) == IntPoly.from_roots([8, 0, -4])

    def test_annihilates(self):
        t = group("sp:2").collinearity_matrix()
        p = minimal_polynomial(t)
        assert not any(any(r) for r in evaluate_poly_at_matrix(p, t))

    def test_agrees_with_float_eigenvalues(self):
        t = group("cover3:4").collinearity_matrix()
        roots = sorted({round(x) for x in np.linalg.eigvalsh(np.array(t, dtype=float))})
        p = minimal_polynomial(t)
        assert p == IntPoly.from_roots(roots)


class TestEigenMultiplicity:
    def test_identity(self):
        assert eigen_multiplicity(QMatrix.identity(5), 1) == 5

    def test_s5(self):
        assert eigen_multiplicity(group("sym:5").collinearity_matrix(), 1) == 4

    def test_sp6(self):
        assert eigen_multiplicity(group("sp:3").collinearity_matrix(), -4) == 35

    def test_non_eigenvalue(self):
        assert eigen_multiplicity(group("sym:5").collinearity_matrix(), 3) == 0


class TestModP:
    def test_identity_mod_3(self):
        field = PrimeField(3)
        assert mod_p(QMatrix.identity(3), field) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert rank_mod_p(mod_p(QMatrix.identity(3), field), field) == 3

    def test_s5_gram_mod_7(self):
        field = PrimeField(7)
        gram = mod_p(MatsuoAlgebra(group("sym:5"), F(-1, 3)).frobenius_gram(), field)
        assert len(gram) - rank_mod_p(gram, field) == 1
        assert rank_mod_p(gram, field) == mod_p_rank_oracle(gram, 7)

    def test_denominator_divisible(self):
        with pytest.raises(DenominatorDivisibleByP):
            mod_p([[F(1, 7)]], PrimeField(7))

    def test_rational_reduction(self):
        assert PrimeField(7).reduce(F(1, 3)) == 5

    def test_not_prime(self):
        with pytest.raises(ValidationError):
            PrimeField(9)

    def test_nullspace_mod_p(self):
        field = PrimeField(5)
        m = [[1, 2, 3], [2, 4, 1]]
        for v in nullspace_mod_p(m, field):
            assert all(sum(a * b for a, b in zip(r, v)) % 5 == 0 for r in m)
        assert len(nullspace_mod_p(m, field)) == 3 - mod_p_rank_oracle(m, 5)


class TestSubspace:
    def test_membership(self):
        s = Subspace(3, [[1, 1, 0], [0, 1, 1]])
        assert [1, 2, 1] in s
        assert [1, 0, 0] not in s

    def test_intersection_dimension_formula(self):
        u = Subspace(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
        v = Subspace(4, [[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]])
        cap = u.intersection(v)
        assert cap.dim == u.dim + v.dim - u.sum(v).dim
        assert all(x in u and x in v for x in cap.vectors)

    def test_order_and_equality(self):
        small = Subspace(3, [[1, 1, 1]])
        big = Subspace(3, [[1, 0, 0], [0, 1, 1]])
        assert small <= big
        assert big == Subspace(3, [[1, 1, 1], [1, 0, 0]])

    def test_coordinates(self):
        s = Subspace(3, [[1, 0, 2], [0, 1, 3]])
        coeffs = s.coordinates([2, 5, 19])
        rebuilt = [sum(c * v[i] for c, v in zip(coeffs, s.vectors)) for i in range(3)]
        assert rebuilt == [2, 5, 19]
