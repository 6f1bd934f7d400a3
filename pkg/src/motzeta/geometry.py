"""Brute-force point counts of projective varieties over finite fields.

From the counts N_e = |X(F_{q^e})| we recover the number of closed points
of each degree by Moebius inversion, then count effective zero-cycles
(= F_q-points of symmetric powers) from the Euler product
prod_d (1 - t^d)^(-a_d).
"""
from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Mapping, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    InsufficientCensus,
    InvalidArgument,
    NonIntegral,
    ParseError,
    UnboundSymbol,
)
from .galois import GaloisField, field, is_prime
from .series import Comparison, TruncatedSeries

DEFAULT_BUDGET = 2 ** 24

Term = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class ProjectiveVarietySpec:
    """Zero locus in P^m over F_p of homogeneous integer polynomials.

    Each equation is a tuple of (coefficient, exponent vector) terms with
    coefficients already reduced mod p.  No equations means X = P^m.
    """

    ambient_dim: int
    base_prime: int
    equations: Tuple[Tuple[Term, ...], ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise InvalidArgument("ambient dimension must be >= 0")
        if not is_prime(self.base_prime):
            raise InvalidArgument(f"{self.base_prime} is not prime")
        eqs = []
        for eq in self.equations:
            merged = {}
            for c, e in eq:
                e = tuple(int(x) for x in e)
                if len(e) != self.ambient_dim + 1 or min(e) < 0:
                    raise InvalidArgument(f"exponent vector {e} does not fit P^{self.ambient_dim}")
                merged[e] = (merged.get(e, 0) + int(c)) % self.base_prime
            terms = tuple(sorted((c, e) for e, c in merged.items() if c))
            if len({sum(e) for _, e in terms}) > 1:
                raise InvalidArgument(f"equation {format_equation(terms)} is not homogeneous")
            if terms:
                eqs.append(terms)
        object.__setattr__(self, "equations", tuple(eqs))

    @classmethod
    def projective_space(cls, m: int, p: int) -> "ProjectiveVarietySpec":
        return cls(m, p, ())


def format_equation(terms) -> str:
    parts = []
    for c, e in terms:
        factors = [str(c)] + [f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"


_TERM_RE = re.compile(r"^([+-]?\d*)((?:\*?x\d+(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_equation(text: str, m: int) -> Tuple[Term, ...]:
    """Parse ``c*x0^e0*...`` terms joined by ``+`` (a leading ``-`` on c is allowed)."""
    compact = re.sub(r"\s+", "", text)
    compact = re.sub(r"(?<=[^+\-^*])-", "+-", compact)
    terms = []
    for raw in compact.split("+"):
        if not raw:
            raise ParseError(f"empty term in {text!r}")
        mt = _TERM_RE.match(raw)
        if not mt or mt.group(1) in ("", "+", "-") and not mt.group(2):
            raise ParseError(f"cannot parse term {raw!r}")
        coef_txt, mono = mt.groups()
        bare = coef_txt in ("", "+", "-")
        coef = (-1 if coef_txt == "-" else 1) if bare else int(coef_txt)
        if mono and bare == mono.startswith("*"):
            raise ParseError(f"misplaced '*' in term {raw!r}")
        exps = [0] * (m + 1)
        for var, e in _FACTOR_RE.findall(mono):
            i = int(var)
            if i > m:
                raise ParseError(f"variable x{i} outside P^{m}")
            exps[i] += int(e) if e else 1
        terms.append((coef, tuple(exps)))
    return tuple(terms)


def parse_variety(text: str) -> ProjectiveVarietySpec:
    """Spec text: first line ``p m``, then one homogeneous equation per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty variety spec")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ParseError(f"first line must be 'p m', got {lines[0]!r}")
    p, m = int(head[0]), int(head[1])
    eqs = [parse_equation(ln, m) for ln in lines[1:]]
    try:
        return ProjectiveVarietySpec(m, p, tuple(eqs))
    except InvalidArgument as exc:
        raise ParseError(str(exc)) from None


def load_variety(path) -> ProjectiveVarietySpec:
    with open(path, encoding="utf-8") as fh:
        return parse_variety(fh.read())


def _kernel_inputs(x: ProjectiveVarietySpec, F: GaloisField):
    _, log, zech = F.tables
    coef_log, exps, eq_start = [], [], [0]
    for eq in x.equations:
        for c, e in eq:
            coef_log.append(int(log[c]))
            exps.extend(e)
        eq_start.append(len(coef_log))
    as_arr = lambda v: np.asarray(v, dtype=np.int64)  # noqa: E731
    return zech, as_arr(coef_log), as_arr(exps), as_arr(eq_start)


def _count_range(args):
    q, m, zech, coef_log, exps, eq_start, lo, hi, native = args
    fn = kernels.count_points if native else kernels.count_points_py
    return fn(q, m, zech, coef_log, exps, eq_start, lo, hi)


def enumerate_points(
    x: ProjectiveVarietySpec,
    F: GaloisField,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    backend: str | None = None,
) -> int:
    """Number of F-rational points of X, by scanning normalized representatives.

    ``budget`` caps (p^k)^(m+1); ``backend`` is "cython", "python" or None
    for the import-time default.
    """
    if F.p != x.base_prime:
        raise InvalidArgument(f"field characteristic {F.p} differs from spec prime {x.base_prime}")
    q, m = F.q, x.ambient_dim
    if q ** (m + 1) > budget:
        raise BudgetExceeded(f"{q}^{m + 1} tuples exceed the enumeration budget {budget}")
    if m == 0:
        # the single point [1]; only constant terms survive
        return int(all(sum(c for c, _ in eq) % x.base_prime == 0 for eq in x.equations))
    if backend is None:
        native = kernels.BACKEND == "cython"
    elif backend == "cython":
        if kernels.count_points_native is None:
            raise InvalidArgument("compiled kernel is not available")
        native = True
    elif backend == "python":
        native = False
    else:
        raise InvalidArgument(f"unknown backend {backend!r}")
    zech, coef_log, exps, eq_start = _kernel_inputs(x, F)
    total = kernels.chart_offsets(q, m)[-1]
    jobs = max(1, min(jobs, total))
    bounds = [total * i // jobs for i in range(jobs + 1)]
    tasks = [(q, m, zech, coef_log, exps, eq_start, bounds[i], bounds[i + 1], native) for i in range(jobs)]
    if jobs == 1:
        return _count_range(tasks[0])
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_range, tasks))


@dataclass(frozen=True)
class PointCensus:
    """N_e = |X(F_{q^e})| and closed-point counts a_d for e, d = 1..depth."""

    n_counts: Tuple[int, ...]
    closed_counts: Tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.n_counts)


def mobius(n: int) -> int:
    result, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    return -result if n > 1 else result


def closed_point_census(n_counts: Sequence[int]) -> PointCensus:
    """a_d = (1/d) sum_{e | d} mu(d/e) N_e."""
    n_counts = tuple(int(v) for v in n_counts)
    if not n_counts:
        raise InvalidArgument("need at least one point count")
    closed = []
    for d in range(1, len(n_counts) + 1):
        s = sum(mobius(d // e) * n_counts[e - 1] for e in range(1, d + 1) if d % e == 0)
        if s % d or s < 0:
            raise NonIntegral(f"counts {list(n_counts)} give a_{d} = {s}/{d}")
        closed.append(s // d)
    return PointCensus(n_counts, tuple(closed))


def point_census(
    x: ProjectiveVarietySpec,
    depth: int,
    k: int = 1,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    backend: str | None = None,
) -> PointCensus:
    """Census of X over F_q, q = p^k, from counts over F_{p^(k e)}, e = 1..depth."""
    if depth < 1:
        raise InvalidArgument("census depth must be >= 1")
    counts = [
        enumerate_points(x, field(x.base_prime, k * e), budget=budget, jobs=jobs, backend=backend)
        for e in range(1, depth + 1)
    ]
    return closed_point_census(counts)


def _euler_product(closed: Sequence[int], order: int) -> List[int]:
    coeffs = [1] + [0] * order
    for d, a in enumerate(closed, start=1):
        if d > order or a == 0:
            continue
        # multiply by (1 - t^d)^(-a): coefficient of t^(d j) is C(a + j - 1, j)
        factor = [0] * (order + 1)
        for j in range(order // d + 1):
            factor[d * j] = math.comb(a + j - 1, j)
        coeffs = [sum(coeffs[i] * factor[n - i] for i in range(n + 1)) for n in range(order + 1)]
    return coeffs


def sym_power_count(census: PointCensus, n: int) -> int:
    """|Sym^n(X)(F_q)|, the number of effective zero-cycles of degree n."""
    if n < 0:
        raise InvalidArgument("n must be >= 0")
    if n > census.depth:
        raise InsufficientCensus(f"census depth {census.depth} < {n}")
    return _euler_product(census.closed_counts, n)[n]


def hasse_weil_series(census: PointCensus, order: int) -> List[int]:
    """Coefficients 0..order of the Hasse-Weil zeta function."""
    if order > census.depth:
        raise InsufficientCensus(f"census depth {census.depth} < {order}")
    return _euler_product(census.closed_counts, order)


def compare_specialization(
    s: TruncatedSeries, census: PointCensus, q: int, symbol_values: Mapping[str, int] | None = None
) -> Comparison:
    """Check coefficient_i(L -> q, symbols -> values) == |Sym^i X(F_q)| for i <= s.order."""
    bindings = dict(symbol_values or {})
    missing = s.free_symbols() - set(bindings)
    if missing:
        raise UnboundSymbol(f"no value for symbols {sorted(missing)}")
    bindings["L"] = q
    counts = hasse_weil_series(census, s.order)
    for i, c in enumerate(s.coeffs):
        v = c.evaluate(bindings)
        if v != counts[i]:
            return Comparison(False, i, counts[i], v)
    return Comparison(True)
