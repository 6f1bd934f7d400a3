"""Reference computations that share no code paths with the library.

Each oracle recomputes a quantity from its definition: products of
q-powers instead of the Pascal recurrence, reduced echelon forms instead of
polynomials, direct Frobenius orbits instead of Moebius inversion, sympy
expansion instead of in-house series arithmetic.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import sympy

from motzeta.galois import GaloisField

Lsym, tsym = sympy.symbols("L t")


def gaussian_by_ratio(n: int, d: int, q: int) -> int:
    """binom(n, d)_q from prod (q^n - q^i) / (q^d - q^i)."""
    if d < 0 or d > n:
        return 0
    num = math.prod(q ** n - q ** i for i in range(d))
    den = math.prod(q ** d - q ** i for i in range(d))
    assert num % den == 0
    return num // den


def gaussian_poly_coeffs(n: int, d: int) -> list:
    """Coefficient list of binom(n, d)_q from the product of q-integers, via sympy."""
    if d < 0 or d > n:
        return [0]
    q = sympy.Symbol("q")
    num = sympy.prod([1 - q ** (n - i) for i in range(d)])
    den = sympy.prod([1 - q ** (i + 1) for i in range(d)])
    quo, rem = sympy.div(sympy.expand(num), sympy.expand(den), q)
    assert rem == 0
    return list(reversed(sympy.Poly(quo, q).all_coeffs()))


def count_subspaces(n: int, d: int, p: int) -> int:
    """d-dimensional subspaces of F_p^n, p prime, counted as reduced row echelon forms."""
    if d > n:
        return 0
    total = 0
    for pivots in itertools.combinations(range(n), d):
        # free entries: row r, column c > pivots[r], c not a pivot
        free = [(r, c) for r in range(d) for c in range(pivots[r] + 1, n) if c not in pivots]
        total += p ** len(free)
    return total


def count_subspaces_brute(n: int, d: int, p: int) -> int:
    """Same count by listing every d x n matrix in reduced echelon form explicitly."""
    seen = set()
    for entries in itertools.product(range(p), repeat=d * n):
        rows = [entries[r * n:(r + 1) * n] for r in range(d)]
        if _is_rref(rows, p):
            seen.add(tuple(map(tuple, rows)))
    return len(seen)


def _is_rref(rows, p) -> bool:
    last = -1
    pivots = []
    for row in rows:
        nz = [c for c, v in enumerate(row) if v % p]
        if not nz or nz[0] <= last or row[nz[0]] != 1:
            return False
        last = nz[0]
        pivots.append(last)
    return all(rows[r][c] == 0 for c in pivots for r in range(len(rows)) if pivots[r] != c)


def projective_points(F: GaloisField, m: int):
    """Normalized representatives (first nonzero coordinate 1) of P^m(F)."""
    elems = F.elements()
    for lead in range(m + 1):
        for tail in itertools.product(elems, repeat=m - lead):
            yield (F.zero,) * lead + (F.one,) + tuple(tail)


def _eval_monomial(point, coef, exps):
    v = point[0].field(coef)
    for x, e in zip(point, exps):
        v = v * x ** e
    return v


def naive_point_count(spec, F: GaloisField) -> int:
    """|X(F)| by evaluating every equation with field-element arithmetic."""
    count = 0
    for pt in projective_points(F, spec.ambient_dim):
        ok = True
        for eq in spec.equations:
            s = F.zero
            for c, e in eq:
                s = s + _eval_monomial(pt, c, e)
            if s:
                ok = False
                break
        count += ok
    return count


@lru_cache(maxsize=None)
def closed_points_by_orbits(m: int, p: int, max_degree: int) -> dict:
    """Closed points of P^m over F_p of degree <= max_degree, from Frobenius orbits.

    Works in F_{p^D} with D = lcm(1..max_degree); returns {degree: count}.
    """
    D = math.lcm(*range(1, max_degree + 1))
    F = GaloisField(p, D)
    seen = set()
    out = {d: 0 for d in range(1, max_degree + 1)}
    for pt in projective_points(F, m):
        key = tuple(x.code for x in pt)
        if key in seen:
            continue
        orbit = {key}
        cur = pt
        while True:
            cur = tuple(x.frobenius() for x in cur)
            k = tuple(x.code for x in cur)
            if k == key:
                break
            orbit.add(k)
        seen |= orbit
        if len(orbit) <= max_degree:
            out[len(orbit)] += 1
    return out


def effective_cycles_by_multisets(closed: dict, n: int) -> int:
    """Number of multisets of closed points whose degrees sum to n."""
    points = [d for d, a in closed.items() for _ in range(a)]
    total = 0
    for size in range(n + 1):
        for combo in itertools.combinations_with_replacement(range(len(points)), size):
            if sum(points[i] for i in combo) == n:
                total += 1
    return total


def geometric_product_coeffs(num, factors, order: int) -> list:
    """Coefficients of num / prod (1 - a t^k) for (a, k) in factors, up to t^order.

    Each factor is expanded as the truncated geometric sum of (a t^k)^j and
    the pieces are multiplied with sympy; no recurrence is involved.
    """
    expr = sympy.expand(num)
    for a, k in factors:
        geo = sum((a * tsym ** k) ** j for j in range(order // k + 1))
        expr = sympy.expand(expr * geo)
        expr = sum(expr.coeff(tsym, i) * tsym ** i for i in range(order + 1))
    return [sympy.expand(expr.coeff(tsym, i)) for i in range(order + 1)]


def to_sympy(e) -> sympy.Expr:
    """A RingElement as a sympy expression; symbols [X] become sympy symbols X."""
    out = sympy.Integer(0)
    for mono, c in e.terms.items():
        term = sympy.Integer(c)
        for name, k in mono:
            term *= (Lsym if name == "L" else sympy.Symbol(name)) ** k
        out += term
    return sympy.expand(out)


def multisym_elementary_sympy(k, d: int, n: int) -> dict:
    """e_k from the coefficient of t^k in prod_i (1 + sum_j x_ij t_j); keys are exponent matrices."""
    xs = [[sympy.Symbol(f"x_{i}_{j}") for j in range(n)] for i in range(d)]
    ts = sympy.symbols(f"t0:{n}")
    prod = sympy.expand(sympy.prod([1 + sum(xs[i][j] * ts[j] for j in range(n)) for i in range(d)]))
    coeff = sympy.Poly(prod, *ts).coeff_monomial(tuple(k))
    gens = [x for row in xs for x in row]
    out = {}
    if coeff == 0:
        return out
    for exps, c in sympy.Poly(coeff, *gens).terms():
        mat = tuple(tuple(exps[i * n:(i + 1) * n]) for i in range(d))
        out[mat] = Fraction(int(c))
    return out


def elementary_by_points(points, k) -> Fraction:
    """e_k(points) from the definition: coefficient of t^k in prod (1 + <p_i, t>)."""
    n = len(k)
    # polynomial in t as {exponent tuple: coefficient}
    poly = {(0,) * n: Fraction(1)}
    for pt in points:
        nxt = dict(poly)
        for exps, c in poly.items():
            for j in range(n):
                e = list(exps)
                e[j] += 1
                e = tuple(e)
                nxt[e] = nxt.get(e, 0) + c * Fraction(pt[j])
        poly = nxt
    return poly.get(tuple(k), Fraction(0))
