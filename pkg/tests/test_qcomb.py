import math

import pytest
from hypothesis import given, strategies as st

from motzeta import qcomb
from motzeta.errors import InexactDivision, InvalidArgument, NonCoprime
from motzeta.qcomb import QPolynomial, g_quotient, gaussian_binomial, q_pascal_step

import oracles


def test_small_binomials():
    assert gaussian_binomial(3, 1) == QPolynomial([1, 1, 1])
    assert gaussian_binomial(4, 2) == QPolynomial([1, 1, 2, 1, 1])
    assert gaussian_binomial(5, 7) == QPolynomial([])
    assert gaussian_binomial(0, 0) == QPolynomial([1])


def test_zero_polynomial_degree():
    assert QPolynomial([0, 0]).degree == -math.inf
    assert QPolynomial([0, 0]).coeffs == ()


@pytest.mark.parametrize("n", range(13))
def test_matches_product_formula(n):
    for d in range(n + 1):
        assert gaussian_binomial(n, d).to_list() == oracles.gaussian_poly_coeffs(n, d)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 13) for d in range(1, n + 1)])
def test_pascal_identity(n, d):
    top, left, right = q_pascal_step(n, d)
    assert top == left.shift(d) + right
    assert top == gaussian_binomial(n + 1, d)


def test_pascal_examples():
    top, left, right = q_pascal_step(2, 1)
    assert (top, left, right) == (qcomb.q_integer(3), qcomb.q_integer(2), QPolynomial([1]))
    assert q_pascal_step(1, 1) == (qcomb.q_integer(2), QPolynomial([1]), QPolynomial([1]))


@pytest.mark.parametrize("n,d", [(0, 0), (2, 3), (3, 0), (-1, 1)])
def test_pascal_rejects_out_of_range(n, d):
    with pytest.raises(InvalidArgument):
        q_pascal_step(n, d)


@given(st.integers(0, 12), st.integers(0, 12))
def test_specialization_at_one(n, d):
    assert gaussian_binomial(n, d)(1) == (math.comb(n, d) if d <= n else 0)


@given(st.integers(0, 14), st.integers(0, 14))
def test_palindromic_with_expected_degree(n, d):
    p = gaussian_binomial(n, d)
    if d > n:
        assert p.coeffs == ()
        return
    assert p.degree == d * (n - d)
    assert p.is_palindromic()
    assert all(c >= 0 for c in p.coeffs)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", range(1, 5))
def test_counts_subspaces(p, n):
    for d in range(n + 1):
        assert gaussian_binomial(n, d)(p) == oracles.count_subspaces(n, d, p)


@pytest.mark.parametrize("n,d,p", [(3, 1, 2), (4, 2, 2), (3, 2, 3), (4, 2, 3)])
def test_counts_subspaces_brute_force(n, d, p):
    assert gaussian_binomial(n, d)(p) == oracles.count_subspaces_brute(n, d, p)


def test_known_values():
    assert gaussian_binomial(4, 2)(2) == 35
    assert gaussian_binomial(4, 2)(3) == 130


def test_g_quotient_examples():
    assert g_quotient(1, 2) == QPolynomial([1])
    assert g_quotient(2, 2) == QPolynomial([1, 0, 1])
    assert g_quotient(4, 2)(2) == 93
    assert g_quotient(4, 2) * qcomb.q_integer(3) == gaussian_binomial(6, 4)


@pytest.mark.parametrize("r", range(1, 13))
def test_divisibility(r):
    for n in range(1, 13):
        if math.gcd(r, n + 1) != 1:
            with pytest.raises(NonCoprime):
                g_quotient(r, n)
            continue
        g = g_quotient(r, n)
        assert g * qcomb.q_integer(n + 1) == gaussian_binomial(n + r, r)
        assert all(c >= 0 for c in g.coeffs)


def test_g_quotient_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        g_quotient(0, 2)
    with pytest.raises(NonCoprime):
        g_quotient(3, 2)


def test_long_division_remainder():
    quot, rem = QPolynomial([1, 0, 1]).divmod_monic(QPolynomial([1, 1]))
    assert quot * QPolynomial([1, 1]) + rem == QPolynomial([1, 0, 1])
    assert rem == QPolynomial([2])
    with pytest.raises(InvalidArgument):
        QPolynomial([1]).divmod_monic(QPolynomial([1, 2]))


def test_inexact_division_is_detected(monkeypatch):
    monkeypatch.setattr(qcomb, "gaussian_binomial", lambda n, d: QPolynomial([1, 0, 1]))
    with pytest.raises(InexactDivision):
        g_quotient(1, 1)


def test_formatting():
    assert str(QPolynomial([1, 0, 1])) == "1 + q^2"
    assert str(QPolynomial([0, -2, 1])) == "-2*q + q^2"
    assert str(QPolynomial([])) == "0"
    assert QPolynomial([1, 1]).latex() == "1 + q"
