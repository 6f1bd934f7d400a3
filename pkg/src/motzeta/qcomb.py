"""Gaussian binomials and related q-analog polynomials.

Polynomials are dense integer coefficient tuples, lowest degree first.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InexactDivision, InvalidArgument, NonCoprime


class QPolynomial:
    """Univariate polynomial in q with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> float:
        # the zero polynomial has degree -inf
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial([other])
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("QPolynomial", self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def divmod_monic(self, divisor: "QPolynomial"):
        """Long division by a polynomial with leading coefficient 1."""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise InvalidArgument("divisor must be monic")
        rem = list(self.coeffs)
        dd = len(divisor.coeffs) - 1
        if len(rem) - 1 < dd:
            return QPolynomial(), QPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * b
        return QPolynomial(quot), QPolynomial(rem)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def to_list(self) -> list:
        return list(self.coeffs)

    def __str__(self):
        return format_univariate(self.coeffs, "q")

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)})"

    def latex(self) -> str:
        return format_univariate(self.coeffs, "q", latex=True)


def _coerce(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, int):
        return QPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as a QPolynomial")


def format_univariate(coeffs: Sequence[int], var: str, latex: bool = False) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = var
        else:
            mono = f"{var}^{{{i}}}" if latex and i >= 10 else f"{var}^{i}"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}{mono}" if latex else f"{a}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def q_integer(n: int) -> QPolynomial:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    return QPolynomial([1] * n)


@lru_cache(maxsize=None)
def _gauss(n: int, d: int) -> tuple:
    if d < 0 or d > n:
        return ()
    if d == 0 or d == n:
        return (1,)
    # binom(n, d) = binom(n-1, d) q^d + binom(n-1, d-1)
    return (QPolynomial(_gauss(n - 1, d)).shift(d) + QPolynomial(_gauss(n - 1, d - 1))).coeffs


def gaussian_binomial(n: int, d: int) -> QPolynomial:
    """The q-binomial coefficient as an exact polynomial; zero when d > n."""
    if n < 0 or d < 0:
        raise InvalidArgument("gaussian_binomial needs nonnegative arguments")
    return QPolynomial(_gauss(n, d))


def q_pascal_step(n: int, d: int):
    """Return (binom(n+1,d), binom(n,d), binom(n,d-1)).

    The three satisfy ``first == second * q**d + third``.
    """
    if not 1 <= d <= n:
        raise InvalidArgument(f"q_pascal_step needs 1 <= d <= n, got n={n}, d={d}")
    return gaussian_binomial(n + 1, d), gaussian_binomial(n, d), gaussian_binomial(n, d - 1)


def g_quotient(r: int, n: int) -> QPolynomial:
    """binom(n+r, r)_q / [n+1]_q for r coprime to n+1."""
    if r < 1 or n < 1:
        raise InvalidArgument("g_quotient needs r >= 1 and n >= 1")
    if math.gcd(r, n + 1) != 1:
        raise NonCoprime(f"gcd(r={r}, n+1={n + 1}) != 1")
    quot, rem = gaussian_binomial(n + r, r).divmod_monic(q_integer(n + 1))
    if not rem.is_zero():
        raise InexactDivision(f"binom({n + r},{r})_q not divisible by [{n + 1}]_q")
    return quot
