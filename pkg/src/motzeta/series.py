"""Power series in t over the ring of classes, and the zeta-function catalog.

A :class:`TruncatedSeries` knows its coefficients up to t^order and never
claims more.  A :class:`RationalSeries` is a numerator/denominator pair of
polynomials in t whose denominator has constant term 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import ring
from .errors import InvalidArgument, NonUnit, SymbolicCoefficients
from .ring import ONE, ZERO, L, RingElement, as_element

DEFAULT_ORDER = 16


def _elements(coeffs) -> tuple:
    out = []
    for c in coeffs:
        e = as_element(c)
        if e is None:
            raise TypeError(f"series coefficient {c!r} is not a ring element")
        out.append(e)
    return tuple(out)


class TruncatedSeries:
    """Coefficients c_0..c_N of a power series known modulo t^(N+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: Optional[int] = None):
        c = _elements(coeffs)
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise InvalidArgument("truncation order must be >= 0")
        if len(c) > order + 1:
            c = c[: order + 1]
        else:
            c = c + (ZERO,) * (order + 1 - len(c))
        self.coeffs = c

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InvalidArgument(f"cannot extend a series known to order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __add__(self, other):
        n = min(self.order, other.order)
        return TruncatedSeries([self[i] + other[i] for i in range(n + 1)], n)

    def __sub__(self, other):
        n = min(self.order, other.order)
        return TruncatedSeries([self[i] - other[i] for i in range(n + 1)], n)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        e = as_element(other)
        if e is None:
            return NotImplemented
        return TruncatedSeries([c * e for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def substitute(self, bindings) -> "TruncatedSeries":
        return self.map(lambda c: c.substitute(bindings))

    def reduce_mod_L(self) -> "TruncatedSeries":
        return self.map(lambda c: c.reduce_mod_L())

    def free_symbols(self) -> set:
        out = set()
        for c in self.coeffs:
            out |= c.free_symbols()
        return out

    def __str__(self):
        body = format_t_poly(self.coeffs)
        tail = f"O(t^{self.order + 1})"
        return tail if body == "0" else f"{body} + {tail}"

    def latex(self) -> str:
        body = format_t_poly(self.coeffs, latex=True)
        tail = f"O(t^{{{self.order + 1}}})"
        return tail if body == "0" else f"{body} + {tail}"

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class RationalSeries:
    """numerator(t) / denominator(t) with denominator(0) == 1.

    ``den_factors`` optionally records a factorization of the denominator,
    used only for display.
    """

    num: tuple
    den: tuple
    den_factors: Optional[tuple] = None

    def __post_init__(self):
        num = list(_elements(self.num))
        den = list(_elements(self.den))
        while len(num) > 1 and num[-1].is_zero():
            num.pop()
        while len(den) > 1 and den[-1].is_zero():
            den.pop()
        object.__setattr__(self, "num", tuple(num) or (ZERO,))
        object.__setattr__(self, "den", tuple(den) or (ZERO,))
        if self.den_factors is not None:
            object.__setattr__(self, "den_factors", tuple(_elements(f) for f in self.den_factors))

    @classmethod
    def from_factors(cls, num, factors) -> "RationalSeries":
        den = (ONE,)
        for f in factors:
            den = poly_mul(den, _elements(f))
        return cls(tuple(num), den, tuple(tuple(f) for f in factors))

    def expand(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return expand_rational(self, order)

    def substitute(self, bindings) -> "RationalSeries":
        factors = None
        if self.den_factors is not None:
            factors = tuple(tuple(c.substitute(bindings) for c in f) for f in self.den_factors)
        return RationalSeries(
            tuple(c.substitute(bindings) for c in self.num),
            tuple(c.substitute(bindings) for c in self.den),
            factors,
        )

    def reduce_mod_L(self) -> "RationalSeries":
        factors = None
        if self.den_factors is not None:
            factors = tuple(tuple(c.reduce_mod_L() for c in f) for f in self.den_factors)
        return RationalSeries(
            tuple(c.reduce_mod_L() for c in self.num),
            tuple(c.reduce_mod_L() for c in self.den),
            factors,
        )

    def _den_text(self, latex: bool) -> str:
        if self.den_factors:
            if latex:
                return "".join(f"({format_t_poly(f, latex=True)})" for f in self.den_factors)
            inner = "*".join(f"({format_t_poly(f)})" for f in self.den_factors)
            return inner if len(self.den_factors) == 1 else f"({inner})"
        return f"({format_t_poly(self.den, latex=latex)})"

    def __str__(self):
        return f"({format_t_poly(self.num)}) / {self._den_text(False)}"

    def latex(self) -> str:
        return r"\frac{" + format_t_poly(self.num, latex=True) + "}{" + self._den_text(True) + "}"


def format_t_poly(coeffs: Sequence[RingElement], latex: bool = False) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = "t"
        else:
            mono = f"t^{{{i}}}" if latex and i >= 10 else f"t^{i}"
        text = c.latex() if latex else str(c)
        neg = text.startswith("-")
        single = len(c.terms) == 1
        mul = "" if latex else "*"
        if not mono:
            body, sign = (text[1:], "-") if neg else (text, "+")
        elif single:
            core = text[1:] if neg else text
            sign = "-" if neg else "+"
            body = mono if core == "1" else f"{core}{mul}{mono}"
        else:
            sign = "+"
            body = f"({text}){mul}{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def poly_mul(a: Sequence[RingElement], b: Sequence[RingElement]) -> tuple:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two orders."""
    n = min(a.order, b.order)
    out = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            x = a[i]
            if not x.is_zero():
                acc = acc + x * b[k - i]
        out.append(acc)
    return TruncatedSeries(out, n)


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse in 1 + t R[[t]]; the constant term must be exactly 1."""
    if a[0] != 1:
        raise NonUnit(f"constant term {a[0]} is not 1")
    inv = [ONE]
    for k in range(1, a.order + 1):
        acc = ZERO
        for i in range(1, k + 1):
            acc = acc + a[i] * inv[k - i]
        inv.append(-acc)
    return TruncatedSeries(inv, a.order)


def series_scale_t(a: TruncatedSeries, factor) -> TruncatedSeries:
    """Substitute t -> factor * t."""
    factor = as_element(factor)
    out, p = [], ONE
    for c in a.coeffs:
        out.append(c * p)
        p = p * factor
    return TruncatedSeries(out, a.order)


def rational_scale_t(r: RationalSeries, factor) -> RationalSeries:
    """The rational form of r(factor * t)."""
    factor = as_element(factor)

    def scale(coeffs):
        return tuple(c * factor ** i for i, c in enumerate(coeffs))

    factors = None if r.den_factors is None else tuple(scale(f) for f in r.den_factors)
    return RationalSeries(scale(r.num), scale(r.den), factors)


def rational_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    factors = None
    if a.den_factors is not None and b.den_factors is not None:
        factors = a.den_factors + b.den_factors
    return RationalSeries(poly_mul(a.num, b.num), poly_mul(a.den, b.den), factors)


def series_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    out = TruncatedSeries([ONE], a.order)
    for _ in range(k):
        out = series_mul(out, a)
    return out


def expand_rational(r: RationalSeries, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    if r.den[0] != 1:
        raise NonUnit(f"denominator constant term {r.den[0]} is not 1")
    den = r.den
    out = []
    for k in range(order + 1):
        acc = r.num[k] if k < len(r.num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc)
    return TruncatedSeries(out, order)


@dataclass(frozen=True)
class Comparison:
    """Outcome of a coefficientwise check; false carries the first bad index."""

    ok: bool
    index: Optional[int] = None
    expected: object = None
    actual: object = None

    def __bool__(self):
        return self.ok


def compare_series(a: TruncatedSeries, b: TruncatedSeries, order: Optional[int] = None) -> Comparison:
    n = min(a.order, b.order) if order is None else order
    if n > min(a.order, b.order):
        raise InvalidArgument(f"series are not known to order {n}")
    for i in range(n + 1):
        if a[i] != b[i]:
            return Comparison(False, i, b[i], a[i])
    return Comparison(True)


def verify_rational(s: TruncatedSeries, r: RationalSeries) -> Comparison:
    """Check den * s == num coefficientwise up to s.order."""
    for k in range(s.order + 1):
        acc = ZERO
        for j in range(min(k, len(r.den) - 1) + 1):
            acc = acc + r.den[j] * s[k - j]
        want = r.num[k] if k < len(r.num) else ZERO
        if acc != want:
            return Comparison(False, k, want, acc)
    return Comparison(True)


# catalog of zeta functions
def _geometric_factor(a) -> tuple:
    """The polynomial 1 - a t."""
    return (ONE, -as_element(a))


def zeta_point(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return TruncatedSeries([ONE] * (order + 1), order)


def zeta_affine(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return series_scale_t(zeta_point(order), L ** n)


def zeta_affine_rational(n: int) -> RationalSeries:
    return RationalSeries.from_factors((ONE,), [_geometric_factor(L ** n)])


def zeta_projective(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Z(P^n): the coefficient of t^d is [Sym^d P^n] = binom(n+d, d) at L."""
    return TruncatedSeries([ring.sym_power_projective_class(d, n) for d in range(order + 1)], order)


def zeta_projective_rational(n: int) -> RationalSeries:
    """1 / ((1 - t)(1 - L t) ... (1 - L^n t))."""
    return RationalSeries.from_factors((ONE,), [_geometric_factor(L ** i) for i in range(n + 1)])


def zeta_conic_rational(c) -> RationalSeries:
    c = as_element(c)
    return RationalSeries.from_factors((ONE, c, L), [(ONE, ZERO, -ONE), (ONE, ZERO, -(L ** 2))])


def zeta_conic(c, order: int = DEFAULT_ORDER):
    """Zeta of a conic with class ``c``, as (expansion, rational form)."""
    r = zeta_conic_rational(c)
    return expand_rational(r, order), r


def zeta_from_minimal(z_min: TruncatedSeries, n: int, r: int) -> TruncatedSeries:
    """prod_{i<r} z_min(L^(i n) t), the zeta of B = P(E_min^r)."""
    if r < 1 or n < 1:
        raise InvalidArgument("zeta_from_minimal needs r >= 1 and n >= 1")
    out = z_min
    for i in range(1, r):
        out = series_mul(out, series_scale_t(z_min, L ** (i * n)))
    return out


SURFACE_NUMERATOR = (ONE, 1 + L ** 2, ZERO, L ** 2 + L ** 4, L ** 4)
SURFACE_DEN_FACTORS = (
    (ONE, ZERO, ZERO, -ONE),
    (ONE, ZERO, ZERO, -(L ** 3)),
    (ONE, ZERO, ZERO, -(L ** 6)),
)


def zeta_sb_surface_partial(b, sym3_terms: Sequence, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Zeta of a Severi-Brauer surface of class ``b``.

    The classes [Sym^(3i) B] are not determined by [B]; the caller supplies
    them in ``sym3_terms`` (entry i for t^(3i), entry 0 must be 1).
    """
    b = as_element(b)
    sym3 = _elements(sym3_terms)
    if not sym3 or sym3[0] != 1:
        raise InvalidArgument("sym3_terms[0] must be 1")
    if len(sym3) < order // 3 + 1:
        raise InvalidArgument(f"need {order // 3 + 1} entries of sym3_terms for order {order}")
    rest = RationalSeries.from_factors(SURFACE_NUMERATOR, SURFACE_DEN_FACTORS)
    inner = expand_rational(rest, max(order - 1, 0))
    coeffs = [ZERO] + [b * c for c in inner.coeffs]
    coeffs = coeffs[: order + 1]
    for i in range(order // 3 + 1):
        coeffs[3 * i] = coeffs[3 * i] + sym3[i]
    return TruncatedSeries(coeffs, order)


def sym_symbol_name(g: int, b: str = "B") -> str:
    """Symbol for the stable birational class of Sym^g(B)."""
    return b if g == 1 else f"Sym{g}_{b}"


def zeta_mod_L_severi_brauer(index_n: int, b: str = "B") -> RationalSeries:
    """Image of Z(B) modulo L for B of index n.

    Numerator sum_{i<n} <Sym^gcd(i,n) B> t^i with the i = 0 term equal to 1;
    denominator 1 - t^n.
    """
    if index_n < 1:
        raise InvalidArgument("index must be >= 1")
    ring.check_symbol_name(b)
    num = [ONE]
    for i in range(1, index_n):
        num.append(RingElement.symbol(sym_symbol_name(math.gcd(i, index_n), b)))
    return RationalSeries.from_factors(tuple(num), [(ONE,) + (ZERO,) * (index_n - 1) + (-ONE,)])


def blowup_zeta_transform(z_v: TruncatedSeries, z_point: TruncatedSeries) -> TruncatedSeries:
    """Zeta of the blow-up of a surface V at a closed point x.

    ``z_point`` is the zeta series of Spec k(x); the result is
    z_v(t) * z_point(L t).
    """
    return series_mul(z_v, series_scale_t(z_point, L))


# rational reconstruction
def _frac_to_element(x) -> Optional[RingElement]:
    """An element of Q(L) as an integer polynomial in L, or None."""
    numer, denom = x.numer, x.denom
    if denom.degree() > 0:
        quot, rem = numer.div(denom)
        if rem:
            return None
        numer, denom = quot, denom.ring.one
    c = Fraction(int(denom.LC.numerator), int(denom.LC.denominator))
    coeffs = {}
    for (e,), v in numer.terms():
        q = Fraction(int(v.numerator), int(v.denominator)) / c
        if q.denominator != 1:
            return None
        coeffs[e] = int(q)
    if not coeffs:
        return ZERO
    return RingElement.from_l_coeffs(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def _to_sympy_poly(e: RingElement, gen):
    import sympy

    return sympy.Poly(list(reversed(e.l_coeffs())) or [0], gen, domain="ZZ")


def find_rational_form(s: TruncatedSeries, max_den_degree: int) -> Optional[RationalSeries]:
    """Smallest-denominator f/g with g(0) = 1 and g s = f to the order of s.

    Denominator degrees 1..max_den_degree are tried in turn, with the
    numerator degree bounded by the denominator degree.  The linear system
    for g is solved over Q(L).  Returns None when nothing fits.
    """
    import sympy
    from sympy.polys.matrices import DomainMatrix

    if s.free_symbols():
        raise SymbolicCoefficients(f"series has free symbols {sorted(s.free_symbols())}")
    if max_den_degree < 1:
        raise InvalidArgument("max_den_degree must be >= 1")
    if s.order < 2 * max_den_degree + 2:
        raise InvalidArgument(f"order {s.order} too small for denominator degree {max_den_degree}")

    Ls = sympy.Symbol("L")
    K = sympy.QQ.frac_field(Ls)
    vals = [K.from_sympy(_to_sympy_poly(c, Ls).as_expr()) for c in s.coeffs]
    N = s.order
    for D in range(1, max_den_degree + 1):
        rows = []
        for i in range(D + 1, N + 1):
            rows.append([vals[i - j] for j in range(1, D + 1)] + [-vals[i]])
        M = DomainMatrix(rows, (len(rows), D + 1), K)
        rref, pivots = M.rref()
        if D in pivots:
            continue
        g = [K.one] + [K.zero] * D
        dense = rref.to_list()
        for row, col in enumerate(pivots):
            g[col + 1] = dense[row][D]
        den = [_frac_to_element(x) for x in g]
        if any(x is None for x in den):
            continue
        num = []
        for k in range(D + 1):
            acc = ZERO
            for j in range(k + 1):
                acc = acc + den[j] * s[k - j]
            num.append(acc)
        result = RationalSeries(tuple(num), tuple(den))
        if verify_rational(s, result):
            return result
    return None


def reduce_rational(r: RationalSeries) -> RationalSeries:
    """Cancel common factors when all coefficients are polynomials in L."""
    import sympy

    for c in r.num + r.den:
        if not c.is_l_polynomial():
            raise SymbolicCoefficients("lowest terms only available for L-polynomial coefficients")
    Ls, t = sympy.symbols("L t")

    def to_expr(coeffs):
        return sum(_to_sympy_poly(c, Ls).as_expr() * t ** i for i, c in enumerate(coeffs))

    expr = sympy.cancel(to_expr(r.num) / to_expr(r.den))
    numer, denom = sympy.fraction(expr)
    c0 = sympy.Poly(denom, t).as_expr().subs(t, 0)
    numer, denom = sympy.expand(numer / c0), sympy.expand(denom / c0)

    def back(expr):
        p = sympy.Poly(expr, t)
        out = []
        for c in reversed(p.all_coeffs()):
            cp = sympy.Poly(c, Ls)
            if any(not x.is_Integer for x in cp.all_coeffs()):
                raise InvalidArgument("reduction left non-integral coefficients")
            out.append(RingElement.from_l_coeffs(int(x) for x in reversed(cp.all_coeffs())))
        return tuple(out)

    return RationalSeries(back(numer), back(denom))
