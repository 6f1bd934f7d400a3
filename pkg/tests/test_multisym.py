import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from motzeta import multisym
from motzeta.errors import DimensionMismatch, InvalidIndex, NotInvariant, ParseError
from motzeta.multisym import (
    VectorVariablePoly,
    chow_coordinates,
    decompose_invariant,
    elementary_count,
    elementary_indices,
    elementary_multisym,
    is_invariant,
    parse_poly,
)

import oracles

SHAPES = [(d, n) for d in range(1, 4) for n in range(1, 4)]


def x(d, n, i, j):
    return VectorVariablePoly.variable(d, n, i, j)


def test_elementary_examples():
    assert elementary_multisym([1], 2, 1) == x(2, 1, 1, 1) + x(2, 1, 2, 1)
    assert elementary_multisym([1, 1], 2, 2) == x(2, 2, 1, 1) * x(2, 2, 2, 2) + x(2, 2, 1, 2) * x(2, 2, 2, 1)
    assert elementary_multisym([2], 2, 1) == x(2, 1, 1, 1) * x(2, 1, 2, 1)


@pytest.mark.parametrize("d,n", SHAPES)
def test_elementary_matches_sympy_expansion(d, n):
    for k in elementary_indices(d, n):
        e = elementary_multisym(k, d, n)
        assert e.terms == oracles.multisym_elementary_sympy(k, d, n)
        assert is_invariant(e)


def test_invalid_indices():
    with pytest.raises(InvalidIndex):
        elementary_multisym([0, 0], 2, 2)
    with pytest.raises(InvalidIndex):
        elementary_multisym([2, 1], 2, 2)
    with pytest.raises(InvalidIndex):
        elementary_multisym([1], 2, 2)
    with pytest.raises(DimensionMismatch):
        elementary_multisym([1], 0, 1)


def test_invariance_examples():
    assert is_invariant(x(2, 1, 1, 1) + x(2, 1, 2, 1))
    assert not is_invariant(x(2, 1, 1, 1))
    assert is_invariant(x(2, 2, 1, 1) * x(2, 2, 1, 2) + x(2, 2, 2, 1) * x(2, 2, 2, 2))
    # invariant under (1 2) but not (2 3)
    assert not is_invariant(x(3, 1, 1, 1) + x(3, 1, 2, 1))


def test_decompose_examples():
    p = x(2, 1, 1, 1) ** 2 + x(2, 1, 2, 1) ** 2
    assert str(decompose_invariant(p)) == "e[1]^2 - 2*e[2]"
    q = x(2, 2, 1, 1) * x(2, 2, 2, 2) + x(2, 2, 1, 2) * x(2, 2, 2, 1)
    assert str(decompose_invariant(q)) == "e[1,1]"
    r = x(2, 2, 1, 1) * x(2, 2, 1, 2) + x(2, 2, 2, 1) * x(2, 2, 2, 2)
    assert str(decompose_invariant(r)) == "e[1,0]*e[0,1] - e[1,1]"


def test_decompose_where_leading_terms_collide():
    # leading monomials of products of e_k coincide here, so naive elimination stalls
    p = x(2, 2, 1, 2) ** 2 * x(2, 2, 2, 1) + x(2, 2, 1, 1) * x(2, 2, 2, 2) ** 2
    assert decompose_invariant(p).expand() == p


def test_decompose_rejects_non_invariant():
    with pytest.raises(NotInvariant):
        decompose_invariant(x(2, 2, 1, 1))


def test_round_trips():
    rng = random.Random(7)
    for _ in range(50):
        d, n = rng.randint(1, 3), rng.randint(1, 2)
        p = multisym.random_invariant(rng, d, n)
        assert decompose_invariant(p).expand() == p


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(1, 2), st.randoms(use_true_random=False))
def test_power_sums_decompose(d, n, rnd):
    k = [rnd.randint(0, 3) for _ in range(n)]
    if not any(k):
        k[0] = 1
    p = VectorVariablePoly.constant(d, n, 0)
    for i in range(1, d + 1):
        term = VectorVariablePoly.constant(d, n, 1)
        for j, e in enumerate(k, start=1):
            term = term * x(d, n, i, j) ** e
        p = p + term
    assert decompose_invariant(p).expand() == p


@pytest.mark.parametrize("d,n", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_separation(d, n):
    seen = {}
    for ms in multisym.points_multisets(range(-2, 3), d, n):
        key = chow_coordinates(ms, d, n)
        assert key not in seen, (seen.get(key), ms)
        seen[key] = ms
    assert len(seen) == math.comb(5 ** n + d - 1, d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_permutation_invariance(d):
    rng = random.Random(d)
    for _ in range(10):
        pts = [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2)) for _ in range(d)]
        base = chow_coordinates(pts)
        for perm in itertools.permutations(pts):
            assert chow_coordinates(list(perm)) == base


def test_chow_examples():
    assert chow_coordinates([(2,), (3,)]) == (5, 6)
    assert chow_coordinates([(1,), (4,)]) == (5, 4)
    assert chow_coordinates([(1, 0), (0, 1)]) == (1, 1, 0, 1, 0)
    with pytest.raises(DimensionMismatch):
        chow_coordinates([(1, 0), (1,)])
    with pytest.raises(DimensionMismatch):
        chow_coordinates([(1, 0)], 2, 2)


@pytest.mark.parametrize("d,n", SHAPES)
def test_chow_agrees_with_polynomials(d, n):
    rng = random.Random(d * 10 + n)
    pts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n)) for _ in range(d)]
    coords = chow_coordinates(pts, d, n)
    for k, c in zip(elementary_indices(d, n), coords):
        assert c == elementary_multisym(k, d, n).evaluate(pts) == oracles.elementary_by_points(pts, k)


@pytest.mark.parametrize("d", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_counts(d, n):
    assert elementary_count(d, n) == math.comb(n + d, d) - 1
    assert len(elementary_indices(d, n)) == elementary_count(d, n)
    assert len(chow_coordinates([[0] * n] * d)) == elementary_count(d, n)


def test_count_examples():
    assert elementary_count(2, 2) == 5
    assert elementary_indices(2, 2) == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert elementary_count(1, 1) == 1
    assert elementary_count(3, 2) == 9


def test_parse_and_print():
    p = parse_poly("x[1][1]^2 + 1/2 * x[2][1]^2 - 3")
    assert (p.d, p.n) == (2, 1)
    assert p == x(2, 1, 1, 1) ** 2 + x(2, 1, 2, 1) ** 2 * Fraction(1, 2) - VectorVariablePoly.constant(2, 1, 3)
    assert parse_poly(str(p), 2, 1) == p
    assert str(elementary_multisym([1, 1], 2, 2)) == "x[1][1] * x[2][2] + x[1][2] * x[2][1]"
    assert parse_poly("x[1][1]", 3, 2).d == 3


@pytest.mark.parametrize("text", ["", "x[1]", "x[1][1] x[2][1]", "x[1][1]^", "2 *", "x[1][1] + * 2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_dimension_check():
    with pytest.raises(DimensionMismatch):
        parse_poly("x[3][1]", 2, 1)


def test_parse_points():
    assert multisym.parse_points("1,0;0,1") == [(1, 0), (0, 1)]
    assert multisym.parse_points("1/2, -3") == [(Fraction(1, 2), -3)]
    with pytest.raises(ParseError):
        multisym.parse_points("1,a")
