from decimal import Decimal
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import forms, matrices, rationals
from g2torsion import bracket_from_rows, engine, su3
from g2torsion.exterior import (
    KForm,
    anticomm,
    comm,
    det,
    elementary,
    endo_contract,
    flat,
    form_inner,
    hodge,
    identity,
    interior,
    is_zero_matrix,
    matrix,
    pullback,
    sharp,
    theta,
    to_fraction,
    trace,
    transpose,
    vector,
    wedge,
    wedge_all,
)

e = KForm.basis


def unit(i, n):
    v = [0] * n
    v[i - 1] = 1
    return vector(v)


class TestScalars:
    def test_lowest_terms(self):
        x = to_fraction("-6/4")
        assert (x.numerator, x.denominator) == (-3, 2)

    @pytest.mark.parametrize(
        "raw, expected",
        [(3, Fraction(3)), ("-2/5", Fraction(-2, 5)), ("0.25", Fraction(1, 4)), (Decimal("0.1"), Fraction(1, 10))],
    )
    def test_exact_conversion(self, raw, expected):
        assert to_fraction(raw) == expected

    def test_rejects_bool(self):
        with pytest.raises(TypeError):
            to_fraction(True)

    def test_matrix_must_be_square(self):
        with pytest.raises(ValueError):
            matrix([[1, 2, 3], [4, 5, 6]])

    def test_det_matches_permutation_expansion(self, rng):
        M = np.array([[Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) for _ in range(4)] for _ in range(4)], dtype=object)
        brute = sum(
            oracles.perm_sign(p) * np.prod([M[i, p[i]] for i in range(4)]) for p in itertools.permutations(range(4))
        )
        assert det(M) == brute


class TestKForm:
    def test_unsorted_index_sign(self):
        a = KForm(6, 2, {(2, 1): 1})
        assert a == -e(6, 1, 2)
        assert a[(2, 1)] == 1

    def test_repeated_index_vanishes(self):
        assert KForm(6, 2, {(3, 3): 5}).is_zero()

    def test_zero_coefficients_dropped(self):
        a = KForm(6, 2, {(1, 2): 1, (2, 1): 1})
        assert a.is_zero() and a == KForm.zero(6, 2)

    def test_bad_index_rejected(self):
        with pytest.raises(ValueError):
            KForm(6, 2, {(1, 7): 1})
        with pytest.raises(ValueError):
            KForm(6, 2, {(1,): 1})

    def test_stored_coefficient_is_value_on_basis(self):
        a = KForm(6, 3, {(1, 3, 5): Fraction(2, 3)})
        assert a(unit(1, 6), unit(3, 6), unit(5, 6)) == Fraction(2, 3)
        assert a(unit(3, 6), unit(1, 6), unit(5, 6)) == Fraction(-2, 3)

    def test_hashable_and_immutable(self):
        a = e(7, 1, 2)
        assert len({a, e(7, 1, 2), -(-a)}) == 1
        with pytest.raises(TypeError):
            a.coeffs[(1, 2)] = 3

    def test_matrix_round_trip(self):
        a = KForm(5, 2, {(1, 2): 3, (2, 5): -1})
        assert KForm.from_matrix(a.to_matrix()) == a
        with pytest.raises(ValueError):
            KForm.from_matrix(identity(3))


class TestWedge:
    def test_basis(self):
        assert wedge(e(6, 1), e(6, 2)) == e(6, 1, 2)

    def test_omega_cubed(self):
        c = su3.constants()
        assert wedge_all(c.omega, c.omega, c.omega) == KForm.volume(6) * 6

    def test_rho_plus_rho_minus(self):
        c = su3.constants()
        assert wedge(c.rho_plus, c.rho_minus) == KForm.volume(6) * 4

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            wedge(e(6, 1), e(7, 2))

    @given(forms(5, max_degree=3), forms(5, max_degree=2))
    def test_matches_dense_oracle(self, a, b):
        assert wedge(a, b) == oracles.wedge(a, b)

    @given(forms(6, max_degree=3), forms(6, max_degree=3))
    def test_graded_commutative(self, a, b):
        if a.degree + b.degree <= 6:
            assert wedge(a, b) == wedge(b, a) * (-1) ** (a.degree * b.degree)

    @given(forms(6, max_degree=2), forms(6, max_degree=2), forms(6, max_degree=2))
    def test_associative(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


class TestInterior:
    def test_basis(self):
        assert interior(unit(1, 6), e(6, 1, 2)) == e(6, 2)

    def test_e7_into_phi(self):
        assert interior(unit(7, 7), engine.phi()) == su3.constants().omega.embed(7)

    def test_e1_into_rho_plus(self):
        assert interior(unit(1, 6), su3.constants().rho_plus) == e(6, 3, 5) - e(6, 4, 6)

    def test_degree_zero_is_an_error(self):
        with pytest.raises(ValueError):
            interior(unit(1, 6), KForm.scalar(6, 2))

    @given(forms(6, max_degree=6), st.lists(rationals, min_size=6, max_size=6))
    def test_square_zero(self, a, v):
        if a.degree >= 2:
            assert interior(v, interior(v, a)).is_zero()

    @given(forms(6, max_degree=4), st.lists(rationals, min_size=6, max_size=6))
    def test_matches_dense_oracle(self, a, v):
        if a.degree >= 1:
            assert interior(v, a) == oracles.interior(v, a)

    @given(forms(6, max_degree=3), forms(6, max_degree=3), st.lists(rationals, min_size=6, max_size=6))
    def test_antiderivation(self, a, b, v):
        if a.degree >= 1 and b.degree >= 1 and a.degree + b.degree <= 6:
            lhs = interior(v, wedge(a, b))
            rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b)) * (-1) ** a.degree
            assert lhs == rhs


class TestHodge:
    def test_basis_one_form(self):
        assert hodge(e(6, 1)) == e(6, 2, 3, 4, 5, 6)

    def test_volume_to_one(self):
        assert hodge(KForm.volume(6)) == KForm.scalar(6, 1)

    def test_psi_coefficients(self):
        expected = KForm(
            7,
            4,
            {
                (1, 2, 3, 4): 1,
                (1, 2, 5, 6): 1,
                (3, 4, 5, 6): 1,
                (2, 4, 6, 7): -1,
                (2, 3, 5, 7): 1,
                (1, 4, 5, 7): 1,
                (1, 3, 6, 7): 1,
            },
        )
        assert hodge(engine.phi()) == expected

    @pytest.mark.parametrize("n", [6, 7])
    def test_star_squared_general_sign(self, n, rng):
        for k in range(n + 1):
            keys = list(itertools.combinations(range(1, n + 1), k))
            a = KForm(n, k, {key: int(rng.integers(-3, 4)) for key in keys[:5]})
            assert hodge(hodge(a)) == a * (-1) ** (k * (n - k))

    @given(forms(6, max_degree=6))
    def test_star_squared_six(self, a):
        assert hodge(hodge(a)) == a * (-1) ** a.degree

    @given(forms(6, max_degree=6), forms(6, max_degree=6))
    def test_defining_property(self, a, b):
        if a.degree == b.degree:
            assert wedge(a, hodge(b)) == KForm.volume(6) * form_inner(a, b)

    @given(forms(6, degree=1), forms(6, max_degree=5))
    def test_star_of_wedge_with_one_form(self, beta, sigma):
        k = sigma.degree
        assert hodge(wedge(beta, sigma)) == interior(sharp(beta), hodge(sigma)) * (-1) ** k


class TestSharpFlat:
    def test_sharp(self):
        assert list(sharp(e(6, 2))) == list(unit(2, 6))

    def test_flat(self):
        assert flat(unit(7, 7)) == e(7, 7)

    def test_pullback_by_J_and_sharp(self):
        J = su3.constants().J
        beta = e(6, 1)
        assert list(sharp(pullback(J, beta))) == list(-(J @ sharp(beta)))
        assert list(sharp(pullback(J, beta))) == list(-unit(2, 6))


class TestTheta:
    def test_identity_on_omega(self):
        om = su3.constants().omega
        assert theta(identity(6), om) == om * -2

    @given(matrices(6))
    def test_rho_plus_versus_rho_minus(self, A):
        c = su3.constants()
        assert theta(A, c.rho_plus) == theta(c.J @ A, c.rho_minus)

    @given(matrices(6))
    def test_su3_kills_omega(self, A):
        assert theta(su3.split(A).c_plus, su3.constants().omega).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            theta(identity(7), e(6, 1))

    @given(matrices(6), forms(6, max_degree=3))
    def test_matches_dense_oracle(self, B, a):
        assert theta(B, a) == oracles.theta(B, a)

    @given(matrices(6), forms(6, max_degree=3), forms(6, max_degree=3))
    def test_derivation(self, B, a, b):
        if a.degree + b.degree <= 6:
            assert theta(B, wedge(a, b)) == wedge(theta(B, a), b) + wedge(a, theta(B, b))

    @given(matrices(4), matrices(4), forms(4, max_degree=4))
    def test_lie_algebra_homomorphism(self, A, B, a):
        assert theta(comm(A, B), a) == theta(A, theta(B, a)) - theta(B, theta(A, a))


class TestEndoContract:
    def test_J_on_omega(self):
        c = su3.constants()
        assert endo_contract(c.J, c.omega) == KForm.scalar(6, 6)

    def test_elementary_skew_in_row_layout(self):
        # rows: A e1 = e2, A e2 = -e1
        n = 6
        rows = [[0] * n for _ in range(n)]
        rows[0][1], rows[1][0] = 1, -1
        B = bracket_from_rows(rows)
        assert endo_contract(B, e(6, 1, 2)) == KForm.scalar(6, 2)
        assert is_zero_matrix(B - (elementary(6, 2, 1) - elementary(6, 1, 2)))

    @given(matrices(6))
    def test_symmetric_part_drops_out(self, A):
        rp = su3.constants().rho_plus
        S = (A + transpose(A)) / 2
        assert endo_contract(S, rp).is_zero()
        assert endo_contract(A, rp) == endo_contract(A - S, rp)

    def test_degree_below_two(self):
        with pytest.raises(ValueError):
            endo_contract(identity(6), e(6, 1))


class TestPullback:
    def test_J_rho_plus_is_rho_minus(self):
        c = su3.constants()
        expected = e(6, 1, 3, 6) + e(6, 1, 4, 5) + e(6, 2, 3, 5) - e(6, 2, 4, 6)
        assert pullback(c.J, c.rho_plus) == expected == c.rho_minus

    @given(forms(6, max_degree=6))
    def test_identity(self, a):
        assert pullback(identity(6), a) == a

    def test_J_preserves_omega(self):
        c = su3.constants()
        assert pullback(c.J, c.omega) == c.omega

    @given(matrices(6), forms(6, max_degree=3))
    def test_matches_dense_oracle(self, L, a):
        assert pullback(L, a) == oracles.pullback(L, a)

    @given(matrices(6), matrices(6), forms(6, max_degree=2))
    def test_contravariant(self, L, M, a):
        assert pullback(L @ M, a) == pullback(M, pullback(L, a))


class TestFormInner:
    def test_basis(self):
        assert form_inner(e(6, 1, 2), e(6, 1, 2)) == 1

    def test_rho_plus(self):
        rp = su3.constants().rho_plus
        assert form_inner(rp, rp) == 4
        assert wedge(rp, hodge(rp)) == KForm.volume(6) * 4

    def test_omega(self):
        om = su3.constants().omega
        assert form_inner(om, om) == 3

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            form_inner(e(6, 1), e(6, 1, 2))


def test_matrix_helpers():
    A = matrix([[1, 2], [3, 4]])
    B = matrix([[0, 1], [1, 0]])
    assert trace(A) == 5
    assert is_zero_matrix(comm(A, B) - (A @ B - B @ A))
    assert is_zero_matrix(anticomm(A, B) - (A @ B + B @ A))
