"""Finite fields F_{p^k} built from an explicit irreducible modulus.

Elements are encoded as integers 0..q-1: the base-p digits (low first)
are the coefficients of the representing polynomial.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import List, Sequence

import numpy as np

from .errors import InvalidField


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> List[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """Remainder of a by the monic polynomial m over F_p (low-first lists)."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    a = a[:dm]
    return a + [0] * (dm - len(a))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not any(_poly_mod(modulus, list(low) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple:
    """First monic irreducible of degree k, coefficients compared low degree first."""
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise InvalidField(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


class GaloisField:
    """F_{p^k} with the lexicographically smallest monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidField(f"{p} is not prime")
        if k < 1:
            raise InvalidField("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise InvalidField("modulus must be monic of degree k")
            if not is_irreducible(modulus, p):
                raise InvalidField(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.k, self.modulus = p, k, tuple(modulus)
        self.q = p ** k

    def __repr__(self):
        return f"GaloisField({self.p}, {self.k})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # integer-encoded arithmetic
    def digits(self, x: int) -> List[int]:
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def encode(self, digits: Sequence[int]) -> int:
        x = 0
        for d in reversed(digits):
            x = x * self.p + d % self.p
        return x

    def add_int(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg_int(self, a: int) -> int:
        return self.encode([-x for x in self.digits(a)])

    def mul_int(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def pow_int(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_int(result, a)
            a = self.mul_int(a, a)
            e >>= 1
        return result

    @cached_property
    def primitive(self) -> int:
        """Smallest encoded generator of the multiplicative group."""
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(1, self.q):
            if all(self.pow_int(g, n // r) != 1 for r in factors):
                return g
        raise InvalidField("multiplicative group is not cyclic")  # unreachable for a field

    @cached_property
    def tables(self):
        """(exp, log, zech) arrays for the primitive element g.

        exp[i] = g^i, log[x] = i with g^i = x (log[0] = -1), and
        zech[i] = log(1 + g^i) or -1 when 1 + g^i = 0.
        """
        q, g = self.q, self.primitive
        exp = np.empty(max(q - 1, 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            if log[x] != -1:
                raise InvalidField("generator order is smaller than q - 1")
            log[x] = i
            x = self.mul_int(x, g)
        if x != 1:
            raise InvalidField("generator order check failed")
        zech = np.empty(max(q - 1, 1), dtype=np.int64)
        for i in range(q - 1):
            zech[i] = log[self.add_int(1, int(exp[i]))]
        return exp, log, zech

    # element API
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InvalidField("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.encode(list(value)))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise InvalidField(f"code {code} out of range for {self}")
        return FieldElement(self, code)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field: GaloisField, code: int):
        self.field = field
        self.code = code

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidField("mixed fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add_int(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_int(self.code))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add_int(self.code, self.field.neg_int(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_int(self.code, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field.pow_int(self.code, e))

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.code == o

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FieldElement({self.field.digits(self.code)} in F_{self.field.q})"


@lru_cache(maxsize=64)
def field(p: int, k: int = 1) -> GaloisField:
    """Shared field instance (tables are built once per (p, k))."""
    return GaloisField(p, k)
