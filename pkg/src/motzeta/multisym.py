"""Multisymmetric polynomials: d vector variables X_i = (x_i1, ..., x_in).

S_d permutes the vector variables (rows of an exponent matrix).  The
elementary multisymmetric polynomials e_k are the coefficients of
t_1^k_1 ... t_n^k_n in prod_i (1 + x_i1 t_1 + ... + x_in t_n).

Over Q every invariant is a polynomial in the e_k.  Because the e_k satisfy
relations once n, d >= 2, leading-term elimination against products of
e_k can stall; :func:`decompose_invariant` instead solves, for each
multidegree, the exact linear system over the products of e_k of that
multidegree.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, InvalidIndex, NoDecomposition, NotInvariant, ParseError

Matrix = Tuple[Tuple[int, ...], ...]


def _check_shape(d: int, n: int):
    if d < 1 or n < 1:
        raise DimensionMismatch(f"need d >= 1 and n >= 1, got d={d}, n={n}")


class VectorVariablePoly:
    """Rational polynomial in the entries of a d x n matrix of variables."""

    __slots__ = ("d", "n", "terms")

    def __init__(self, d: int, n: int, terms: Dict[Matrix, Fraction] | None = None):
        _check_shape(d, n)
        self.d, self.n = d, n
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(tuple(int(e) for e in row) for row in mono)
            if len(mono) != d or any(len(row) != n for row in mono):
                raise DimensionMismatch(f"exponent matrix {mono} is not {d}x{n}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, d: int, n: int, c=1) -> "VectorVariablePoly":
        return cls(d, n, {_zero_matrix(d, n): Fraction(c)})

    @classmethod
    def variable(cls, d: int, n: int, i: int, j: int) -> "VectorVariablePoly":
        """x_ij with 1-based indices."""
        if not (1 <= i <= d and 1 <= j <= n):
            raise DimensionMismatch(f"x[{i}][{j}] outside {d}x{n}")
        m = [[0] * n for _ in range(d)]
        m[i - 1][j - 1] = 1
        return cls(d, n, {tuple(map(tuple, m)): Fraction(1)})

    def _same_shape(self, other):
        if (self.d, self.n) != (other.d, other.n):
            raise DimensionMismatch("polynomials live in different variable sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = VectorVariablePoly.constant(self.d, self.n, other)
        self._same_shape(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return VectorVariablePoly(self.d, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return VectorVariablePoly(self.d, self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return VectorVariablePoly(self.d, self.n, {m: c * other for m, c in self.terms.items()})
        self._same_shape(other)
        out: Dict[Matrix, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mat_add(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return VectorVariablePoly(self.d, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = VectorVariablePoly.constant(self.d, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, VectorVariablePoly):
            return NotImplemented
        return (self.d, self.n, self.terms) == (other.d, other.n, other.terms)

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.terms.items())))

    def permute(self, perm: Sequence[int]) -> "VectorVariablePoly":
        """Apply sigma: f(X_1..X_d) -> f(X_sigma^-1(1), ..., X_sigma^-1(d)).

        ``perm`` is 0-based: row i of each exponent matrix moves to row perm[i].
        """
        out = {}
        for m, c in self.terms.items():
            rows = [None] * self.d
            for i, row in enumerate(m):
                rows[perm[i]] = row
            out[tuple(rows)] = c
        return VectorVariablePoly(self.d, self.n, out)

    def evaluate(self, points: Sequence[Sequence]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for row, pt in zip(m, points):
                for e, x in zip(row, pt):
                    if e:
                        v *= Fraction(x) ** e
            total += v
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(map(sum, mc[0])), [[-e for e in r] for r in mc[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for i, row in enumerate(m, start=1):
                for j, e in enumerate(row, start=1):
                    if e:
                        factors.append(f"x[{i}][{j}]" + (f"^{e}" if e > 1 else ""))
            parts.append(_signed(c, factors, not parts))
        return " ".join(parts)

    def __repr__(self):
        return f"VectorVariablePoly(d={self.d}, n={self.n}, '{self}')"


def _signed(c: Fraction, factors: List[str], first: bool) -> str:
    a = abs(c)
    if not factors:
        body = str(a)
    elif a == 1:
        body = " * ".join(factors)
    else:
        body = " * ".join([str(a)] + factors)
    if first:
        return body if c > 0 else f"-{body}"
    return ("+ " if c > 0 else "- ") + body


def _zero_matrix(d, n) -> Matrix:
    return tuple((0,) * n for _ in range(d))


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _col_degree(m: Matrix) -> Tuple[int, ...]:
    return tuple(map(sum, zip(*m)))


def _orbit_rep(m: Matrix) -> Matrix:
    return tuple(sorted(m, reverse=True))


# elementary polynomials
def elementary_indices(d: int, n: int) -> List[Tuple[int, ...]]:
    """All k with 1 <= |k| <= d: by total degree, then lexicographically descending."""
    _check_shape(d, n)
    out = []
    for s in range(1, d + 1):
        level = [k for k in itertools.product(range(s, -1, -1), repeat=n) if sum(k) == s]
        out.extend(level)
    return out


def elementary_count(d: int, n: int) -> int:
    """Number of elementary multisymmetric polynomials, C(n+d, d) - 1."""
    _check_shape(d, n)
    return math.comb(n + d, d) - 1


def _check_index(k: Sequence[int], d: int, n: int) -> Tuple[int, ...]:
    k = tuple(int(x) for x in k)
    if len(k) != n or min(k) < 0:
        raise InvalidIndex(f"index {k} does not have {n} nonnegative entries")
    if not 1 <= sum(k) <= d:
        raise InvalidIndex(f"index {k} needs 1 <= sum <= {d}")
    return k


@lru_cache(maxsize=None)
def _elementary_terms(k: Tuple[int, ...], d: int, n: int) -> Dict[Matrix, Fraction]:
    terms: Dict[Matrix, Fraction] = {}
    # each row picks nothing (0) or one coordinate 1..n
    for choice in itertools.product(range(n + 1), repeat=d):
        counts = [0] * n
        for c in choice:
            if c:
                counts[c - 1] += 1
        if tuple(counts) != k:
            continue
        mono = tuple(tuple(1 if c == j + 1 else 0 for j in range(n)) for c in choice)
        terms[mono] = terms.get(mono, Fraction(0)) + 1
    return terms


def elementary_multisym(k: Sequence[int], d: int, n: int) -> VectorVariablePoly:
    _check_shape(d, n)
    k = _check_index(k, d, n)
    return VectorVariablePoly(d, n, _elementary_terms(k, d, n))


def is_invariant(p: VectorVariablePoly) -> bool:
    """Invariance under the adjacent transpositions, which generate S_d."""
    for i in range(p.d - 1):
        perm = list(range(p.d))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if p.permute(perm) != p:
            return False
    return True


class ElementaryExpression:
    """Rational polynomial in the e_k of a fixed shape (d, n).

    ``terms`` maps exponent tuples over :func:`elementary_indices` to
    coefficients.
    """

    def __init__(self, d: int, n: int, terms: Dict[Tuple[int, ...], Fraction]):
        self.d, self.n = d, n
        self.indices = elementary_indices(d, n)
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    def expand(self) -> VectorVariablePoly:
        out = VectorVariablePoly(self.d, self.n)
        for exps, c in self.terms.items():
            out = out + _e_product(exps, self.d, self.n) * c
        return out

    def __eq__(self, other):
        if not isinstance(other, ElementaryExpression):
            return NotImplemented
        return (self.d, self.n, self.terms) == (other.d, other.n, other.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), [-e for e in ec[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for k, e in zip(self.indices, exps):
                if e:
                    name = "e[" + ",".join(map(str, k)) + "]"
                    factors.append(name + (f"^{e}" if e > 1 else ""))
            parts.append(_signed(c, factors, not parts).replace(" * ", "*"))
        return " ".join(parts)

    def __repr__(self):
        return f"ElementaryExpression('{self}')"


@lru_cache(maxsize=None)
def _e_product_terms(exps: Tuple[int, ...], d: int, n: int) -> Dict[Matrix, Fraction]:
    if not any(exps):
        return {_zero_matrix(d, n): Fraction(1)}
    i = max(j for j, e in enumerate(exps) if e)
    rest = list(exps)
    rest[i] -= 1
    k = elementary_indices(d, n)[i]
    prev = VectorVariablePoly(d, n, _e_product_terms(tuple(rest), d, n))
    return (prev * VectorVariablePoly(d, n, _elementary_terms(k, d, n))).terms


def _e_product(exps: Tuple[int, ...], d: int, n: int) -> VectorVariablePoly:
    return VectorVariablePoly(d, n, _e_product_terms(tuple(exps), d, n))


def _e_monomials_of_degree(w: Tuple[int, ...], indices: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """All exponent vectors over ``indices`` whose products have column degree w."""
    out = []

    def rec(pos, remaining, acc):
        if not any(remaining):
            out.append(tuple(acc) + (0,) * (len(indices) - pos))
            return
        if pos == len(indices):
            return
        k = indices[pos]
        e = 0
        while all(r >= e * x for r, x in zip(remaining, k)):
            rec(pos + 1, tuple(r - e * x for r, x in zip(remaining, k)), acc + [e])
            e += 1

    rec(0, w, [])
    return sorted(out, reverse=True)


def _solve(rows: List[List[Fraction]], rhs: List[Fraction]):
    """Gauss-Jordan over Q; free variables are set to zero.  None if inconsistent."""
    ncol = len(rows[0]) if rows else 0
    aug = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    return sol


def decompose_invariant(p: VectorVariablePoly) -> ElementaryExpression:
    """Write an S_d-invariant polynomial as a polynomial in the e_k."""
    if not is_invariant(p):
        raise NotInvariant(f"{p} is not invariant under permutations of the vector variables")
    d, n = p.d, p.n
    indices = elementary_indices(d, n)
    by_degree: Dict[Tuple[int, ...], Dict[Matrix, Fraction]] = {}
    for m, c in p.terms.items():
        if m == _orbit_rep(m):
            by_degree.setdefault(_col_degree(m), {})[m] = c
    result: Dict[Tuple[int, ...], Fraction] = {}
    for w, target in sorted(by_degree.items()):
        cands = _e_monomials_of_degree(w, indices)
        expansions = [
            {m: c for m, c in _e_product_terms(e, d, n).items() if m == _orbit_rep(m)} for e in cands
        ]
        monos = sorted(set(target).union(*expansions), reverse=True)
        rows = [[ex.get(m, Fraction(0)) for ex in expansions] for m in monos]
        rhs = [target.get(m, Fraction(0)) for m in monos]
        sol = _solve(rows, rhs)
        if sol is None:
            raise NoDecomposition(f"no combination of elementary polynomials matches degree {w}")
        for e, c in zip(cands, sol):
            if c:
                result[e] = c
    return ElementaryExpression(d, n, result)


def chow_coordinates(points: Sequence[Sequence], d: int | None = None, n: int | None = None) -> Tuple[Fraction, ...]:
    """Values of all e_k at a multiset of d points of Q^n, in elementary_indices order."""
    pts = [tuple(Fraction(x) for x in pt) for pt in points]
    if d is None:
        d = len(pts)
    if n is None:
        n = len(pts[0]) if pts else 0
    if len(pts) != d or any(len(pt) != n for pt in pts):
        raise DimensionMismatch(f"expected {d} points of dimension {n}")
    _check_shape(d, n)
    # expand prod_i (1 + sum_j x_ij t_j), tracking monomials in t by exponent vector
    poly: Dict[Tuple[int, ...], Fraction] = {(0,) * n: Fraction(1)}
    for pt in pts:
        nxt = dict(poly)
        for k, c in poly.items():
            for j, x in enumerate(pt):
                if x:
                    kk = list(k)
                    kk[j] += 1
                    kk = tuple(kk)
                    nxt[kk] = nxt.get(kk, Fraction(0)) + c * x
        poly = nxt
    return tuple(poly.get(k, Fraction(0)) for k in elementary_indices(d, n))


# text format: terms "c * x[i][j]^e * ..." with rational c as num/den
_TOKEN = re.compile(r"\s*(?:x\[(\d+)\]\[(\d+)\]|(\d+)(?:/(\d+))?|([-+*^]))")


def parse_poly(text: str, d: int | None = None, n: int | None = None) -> VectorVariablePoly:
    """Parse a sum of terms; d and n default to the largest indices used."""
    toks = []
    pos, src = 0, text.strip()
    while pos < len(src):
        mt = _TOKEN.match(src, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected input at position {pos}: {src[pos:pos + 10]!r}")
        i, j, num, den, op = mt.groups()
        if i is not None:
            toks.append(("var", (int(i), int(j))))
        elif num is not None:
            toks.append(("num", Fraction(int(num), int(den) if den else 1)))
        else:
            toks.append(("op", op))
        pos = mt.end()
    terms: List[Tuple[Fraction, List[Tuple[int, int, int]]]] = []
    k = 0
    sign = 1
    expect_term = True
    while k < len(toks):
        kind, val = toks[k]
        if kind == "op" and val in "+-" and expect_term:
            sign = -sign if val == "-" else sign
            k += 1
            continue
        coef, factors = Fraction(sign), []
        while True:
            if k >= len(toks):
                raise ParseError("incomplete term")
            kind, val = toks[k]
            k += 1
            if kind == "num":
                coef *= val
            elif kind == "var":
                e = 1
                if k < len(toks) and toks[k] == ("op", "^"):
                    if k + 1 >= len(toks) or toks[k + 1][0] != "num" or toks[k + 1][1].denominator != 1:
                        raise ParseError("exponent must be a nonnegative integer")
                    e = int(toks[k + 1][1])
                    k += 2
                factors.append((val[0], val[1], e))
            else:
                raise ParseError(f"unexpected {val!r}")
            if k < len(toks) and toks[k] == ("op", "*"):
                k += 1
                continue
            break
        terms.append((coef, factors))
        sign = 1
        if k < len(toks):
            if toks[k][0] != "op" or toks[k][1] not in "+-":
                raise ParseError(f"expected '+' or '-' near token {k}")
            expect_term = True
    if not terms:
        raise ParseError("empty polynomial")
    used_i = [i for _, fs in terms for i, _, _ in fs]
    used_j = [j for _, fs in terms for _, j, _ in fs]
    d = d or max(used_i, default=1)
    n = n or max(used_j, default=1)
    out = VectorVariablePoly(d, n)
    for coef, factors in terms:
        mono = [[0] * n for _ in range(d)]
        for i, j, e in factors:
            if not (1 <= i <= d and 1 <= j <= n):
                raise DimensionMismatch(f"x[{i}][{j}] outside {d}x{n}")
            mono[i - 1][j - 1] += e
        out = out + VectorVariablePoly(d, n, {tuple(map(tuple, mono)): coef})
    return out


def parse_points(text: str) -> List[Tuple[Fraction, ...]]:
    """Points as ``"p1;p2;..."`` with comma-separated rational coordinates."""
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            pts.append(tuple(Fraction(c.strip()) for c in chunk.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad point {chunk!r}: {exc}") from None
    return pts


def random_invariant(rng, d: int, n: int, max_degree: int = 4, n_terms: int = 3) -> VectorVariablePoly:
    """Random polynomial in the e_k (total degree in the e_k <= max_degree)."""
    indices = elementary_indices(d, n)
    out = VectorVariablePoly(d, n)
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        exps = [0] * len(indices)
        for _ in range(deg):
            exps[rng.randrange(len(indices))] += 1
        coef = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        out = out + _e_product(tuple(exps), d, n) * coef
    return out


def points_multisets(coords: Iterable[int], d: int, n: int):
    pts = list(itertools.product(coords, repeat=n))
    return itertools.combinations_with_replacement(pts, d)
