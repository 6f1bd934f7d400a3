"""Exact arithmetic in Z[L, s_1, ..., s_m] standing in for K0(Var/K).

``L`` is the Lefschetz class; every other generator is an abstract class
symbol written ``[name]``.  Symbols are free: relations between them are
only applied through explicit rewrite helpers such as
:func:`rewrite_square`.

The module also carries the catalog of class identities for projective
spaces, blow-ups and Severi-Brauer varieties.
"""
from __future__ import annotations

import math
import re
from typing import Dict, Iterable, Mapping, Tuple, Union

from . import qcomb
from .errors import InvalidArgument, NonCoprime, ParseError, UnboundSymbol

LEFSCHETZ = "L"
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# A monomial is a tuple of (name, exponent) pairs sorted by name, no zero exponents.
Monomial = Tuple[Tuple[str, int], ...]


def _var_key(name: str):
    return (name == LEFSCHETZ, name)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def check_symbol_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise InvalidArgument(f"invalid class symbol name {name!r}")
    if name == LEFSCHETZ:
        raise InvalidArgument("'L' is reserved for the Lefschetz class")
    return name


class RingElement:
    """Immutable integer polynomial in L and class symbols.

    Supports ``+ - * **`` with other elements and plain ints.  Equality is
    structural after normalization, so ``RingElement(3) == 3``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Union[int, Mapping[Monomial, int], None] = None):
        if value is None:
            terms: Dict[Monomial, int] = {}
        elif isinstance(value, int):
            terms = {(): value} if value else {}
        else:
            terms = {}
            for mono, c in value.items():
                c = int(c)
                if c:
                    mono = tuple(sorted((k, e) for k, e in mono if e))
                    terms[mono] = terms.get(mono, 0) + c
            terms = {m: c for m, c in terms.items() if c}
        self._terms = terms
        self._hash = None

    # constructors
    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "RingElement":
        check_symbol_name(name)
        return cls({((name, power),): 1})

    @classmethod
    def lefschetz(cls, power: int = 1) -> "RingElement":
        return cls({((LEFSCHETZ, power),): 1})

    @classmethod
    def from_l_coeffs(cls, coeffs: Iterable[int]) -> "RingElement":
        """Polynomial in L from a coefficient list, lowest degree first."""
        return cls({((LEFSCHETZ, i),) if i else (): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> "RingElement":
        return _Parser(text).parse()

    # structure
    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set:
        return {k for m in self._terms for k, _ in m}

    def free_symbols(self) -> set:
        return self.variables() - {LEFSCHETZ}

    def is_l_polynomial(self) -> bool:
        return not self.free_symbols()

    def l_coeffs(self) -> list:
        """Coefficients in L, lowest first; only for elements without symbols."""
        if not self.is_l_polynomial():
            raise InvalidArgument(f"{self} contains class symbols")
        if not self._terms:
            return []
        out = [0] * (max(_mono_degree(m) for m in self._terms) + 1)
        for m, c in self._terms.items():
            out[_mono_degree(m)] = c
        return out

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    # arithmetic
    def __add__(self, other):
        other = as_element(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return _raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = as_element(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_element(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_element(other)
        if other is None:
            return NotImplemented
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return _raw({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument("only nonnegative integer powers are supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = as_element(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # homomorphisms
    def substitute(self, bindings: Mapping[str, Union["RingElement", int]]) -> "RingElement":
        """Ring homomorphism sending each bound generator to its value.

        Unbound generators pass through.  Keys are symbol names or ``"L"``.
        """
        if not bindings:
            return self
        vals = {k: as_element(v) for k, v in bindings.items()}
        powers: Dict[Tuple[str, int], RingElement] = {}
        out = ZERO
        for m, c in self._terms.items():
            keep = []
            acc = RingElement(c)
            for k, e in m:
                if k in vals:
                    p = powers.get((k, e))
                    if p is None:
                        p = powers[(k, e)] = vals[k] ** e
                    acc = acc * p
                else:
                    keep.append((k, e))
            if keep:
                acc = acc * _raw({tuple(keep): 1})
            out = out + acc
        return out

    def evaluate(self, bindings: Mapping[str, int]) -> int:
        """Integer value once every generator is bound."""
        val = self.substitute(bindings)
        if not val.is_constant():
            raise UnboundSymbol(f"unbound generators {sorted(val.variables())} in {self}")
        return val.constant_term()

    def reduce_mod_L(self) -> "RingElement":
        return _raw({m: c for m, c in self._terms.items() if LEFSCHETZ not in dict(m)})

    # display
    def _sorted_terms(self):
        names = sorted(self.variables(), key=_var_key)

        def key(item):
            d = dict(item[0])
            return (_mono_degree(item[0]), tuple(-d.get(n, 0) for n in names))

        return sorted(self._terms.items(), key=key)

    def _format(self, latex: bool) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            ordered = sorted(m, key=lambda ke: _var_key(ke[0]))
            factors = []
            for k, e in ordered:
                base = (r"\mathbb{L}" if latex else "L") if k == LEFSCHETZ else f"[{k}]"
                if e == 1:
                    factors.append(base)
                elif latex and e >= 10:
                    factors.append(f"{base}^{{{e}}}")
                else:
                    factors.append(f"{base}^{e}")
            a = abs(c)
            sep = "" if latex else "*"
            if not factors:
                body = str(a)
            elif a == 1:
                body = sep.join(factors)
            else:
                body = sep.join([str(a)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        return self._format(latex=False)

    def latex(self) -> str:
        return self._format(latex=True)

    def __repr__(self):
        return f"RingElement('{self}')"


def _raw(terms: Dict[Monomial, int]) -> RingElement:
    el = RingElement.__new__(RingElement)
    el._terms = terms
    el._hash = None
    return el


def as_element(x) -> RingElement | None:
    if isinstance(x, RingElement):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return RingElement(x)
    return None


ZERO = RingElement()
ONE = RingElement(1)
L = RingElement.lefschetz()


def symbol(name: str) -> RingElement:
    return RingElement.symbol(name)


def parse(text: str) -> RingElement:
    return RingElement.parse(text)


class _Parser:
    _TOKEN = re.compile(r"\s*(?:(\d+)|(L)\b|\[([^\]]*)\]|([-+*^()]))")

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            mt = self._TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise ParseError(f"unexpected input at position {pos} in {self.text!r}")
            num, ell, sym, op = mt.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif ell is not None:
                self.tokens.append(("gen", L))
            elif sym is not None:
                try:
                    self.tokens.append(("gen", RingElement.symbol(sym.strip())))
                except InvalidArgument as exc:
                    raise ParseError(str(exc)) from None
            else:
                self.tokens.append(("op", op))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> RingElement:
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        val = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            val = val + t if op == "+" else val - t
        return val

    def term(self):
        val = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            val = val * self.power()
        return val

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return RingElement(val)
        if kind == "gen":
            return val
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.power()
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


# ring operations under their catalog names
def ring_add(a, b) -> RingElement:
    return as_element(a) + as_element(b)


def ring_mul(a, b) -> RingElement:
    return as_element(a) * as_element(b)


def substitute(a, bindings) -> RingElement:
    return as_element(a).substitute(bindings)


def reduce_mod_L(a) -> RingElement:
    return as_element(a).reduce_mod_L()


def from_qpoly(p: qcomb.QPolynomial) -> RingElement:
    """Identify q with L."""
    return RingElement.from_l_coeffs(p.coeffs)


def rewrite_square(a: RingElement, name: str, value) -> RingElement:
    """Apply ``[name]^2 -> [name] * value`` until no power above 1 remains.

    With ``value = projective_class(n)`` this is the Severi-Brauer product
    relation ``[B]^2 = [B][P^n]``.  ``value`` must not mention ``name``.
    """
    value = as_element(value)
    if name in value.variables():
        raise InvalidArgument(f"replacement for [{name}]^2 must not contain [{name}]")
    out = ZERO
    for m, c in a.terms.items():
        d = dict(m)
        e = d.get(name, 0)
        if e >= 2:
            d[name] = 1
            out = out + _raw({tuple(sorted(d.items())): c}) * value ** (e - 1)
        else:
            out = out + _raw({m: c})
    return out


# catalog of class identities
def projective_class(n: int) -> RingElement:
    """[P^n] = 1 + L + ... + L^n."""
    if n < 0:
        raise InvalidArgument("projective_class needs n >= 0")
    return RingElement.from_l_coeffs([1] * (n + 1))


def affine_class(n: int) -> RingElement:
    return L ** n


def blowup_class(x, y, codim: int) -> RingElement:
    """Class of the blow-up of X along a smooth centre Y of the given codimension."""
    if codim < 1:
        raise InvalidArgument("blow-up codimension must be >= 1")
    return as_element(x) + as_element(y) * (projective_class(codim - 1) - 1)


def sb_minimal_decomposition(b_min, n: int, r: int) -> RingElement:
    """[B] from the minimal variety: [B_min](1 + L^n + ... + L^((r-1)n))."""
    if n < 1 or r < 1:
        raise InvalidArgument("sb_minimal_decomposition needs n >= 1 and r >= 1")
    return as_element(b_min) * RingElement({((LEFSCHETZ, i * n),) if i else (): 1 for i in range(r)})


def sb_product_class(b, n: int, d: int) -> RingElement:
    """[B^d] = [B][P^n]^(d-1); with d = 2 also the class of B x B^op."""
    if d < 1:
        raise InvalidArgument("sb_product_class needs d >= 1")
    return as_element(b) * projective_class(n) ** (d - 1)


def sb_sym2_class(b, gr1b) -> RingElement:
    """[Sym^2 B] = [B] + [Gr_1 B] L^2.

    Only valid for even-dimensional B.  A ring element does not record
    dimension, so the caller is responsible for that condition.
    """
    return as_element(b) + as_element(gr1b) * L ** 2


def sym_power_projective_class(d: int, n: int) -> RingElement:
    """[Sym^d P^n], the Gaussian binomial binom(n+d, d) at q = L."""
    if d < 0 or n < 0:
        raise InvalidArgument("sym_power_projective_class needs d, n >= 0")
    return from_qpoly(qcomb.gaussian_binomial(n + d, d))


def grassmannian_class(d: int, n: int) -> RingElement:
    """[Gr(d, n)] for d-dimensional subspaces of an n-dimensional space."""
    return from_qpoly(qcomb.gaussian_binomial(n, d))


def sym_power_sb_class(b, n: int, r: int) -> RingElement:
    """[Sym^r B] = g_{r,n}(L)[B] for an n-dimensional B and r coprime to n+1."""
    if r < 1 or n < 1:
        raise InvalidArgument("sym_power_sb_class needs r >= 1 and n >= 1")
    if math.gcd(r, n + 1) != 1:
        raise NonCoprime(f"no formula for r={r} when gcd(r, {n + 1}) != 1")
    return from_qpoly(qcomb.g_quotient(r, n)) * as_element(b)
