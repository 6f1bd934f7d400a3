"""Reproducible identity checks, runnable as ``motzeta verify <name>``.

Each check returns ``(ok, detail)``; ``detail`` says what was compared or
where the first mismatch sits.
"""
from __future__ import annotations

import math
import random
from typing import Callable, Dict, Tuple

from . import geometry, multisym, qcomb, ring, series
from .galois import field
from .ring import L, ONE, RingElement, symbol

CheckResult = Tuple[bool, str]


def blown_up_plane(p: int) -> geometry.ProjectiveVarietySpec:
    """Blow-up of P^2 at [0:0:1], Segre-embedded in P^5.

    Coordinates z_(2i+j) = x_i u_j on P^2 x P^1: the 2x2 minors cut out the
    Segre image and z_1 = z_2 encodes x_0 u_1 = x_1 u_0.
    """
    eqs = []
    for i in range(3):
        for k in range(i + 1, 3):
            a = [0] * 6
            a[2 * i] += 1
            a[2 * k + 1] += 1
            b = [0] * 6
            b[2 * i + 1] += 1
            b[2 * k] += 1
            eqs.append(((1, tuple(a)), (-1, tuple(b))))
    eqs.append(((1, (0, 1, 0, 0, 0, 0)), (-1, (0, 0, 1, 0, 0, 0))))
    return geometry.ProjectiveVarietySpec(5, p, tuple(eqs))


def check_gaussian_sym(order: int = 4) -> CheckResult:
    for p, k in ((2, 1), (3, 1), (2, 2)):
        q = p ** k
        for n in range(3):
            census = geometry.point_census(geometry.ProjectiveVarietySpec.projective_space(n, p), order, k=k)
            for d in range(order + 1):
                got = geometry.sym_power_count(census, d)
                want = qcomb.gaussian_binomial(n + d, d)(q)
                if got != want:
                    return False, f"q={q} n={n} d={d}: zero-cycles {got} != binomial {want}"
    return True, f"q in (2,3,4), n <= 2, d <= {order}"


def check_projective_product(order: int = 12) -> CheckResult:
    for n in range(4):
        res = series.verify_rational(series.zeta_projective(n, order), series.zeta_projective_rational(n))
        if not res:
            return False, f"Z(P^{n}) fails at t^{res.index}"
    return True, f"n <= 3 to order {order}"


def check_group_scaling(order: int = 10) -> CheckResult:
    zp = series.zeta_projective
    pairs = [
        ("P1 = pt + A1", zp(1, order), series.zeta_point(order), series.zeta_affine(1, order)),
        ("P2 = P1 + A2", zp(2, order), zp(1, order), series.zeta_affine(2, order)),
    ]
    for name, whole, part, rest in pairs:
        res = series.compare_series(series.series_mul(part, rest), whole)
        if not res:
            return False, f"group law {name} fails at t^{res.index}"
    for n in range(3):
        for m in range(3):
            scaled = series.series_scale_t(zp(n, order), L ** m)
            for d in range(min(order, 8) + 1):
                if scaled[d] != ring.sym_power_projective_class(d, n) * L ** (m * d):
                    return False, f"scaling n={n} m={m} fails at t^{d}"
            # P^n x A^m is the disjoint union of A^(i+m), i = 0..n
            direct = series.RationalSeries.from_factors(
                (ONE,), [(ONE, -(L ** (i + m))) for i in range(n + 1)]
            ).expand(order)
            res = series.compare_series(scaled, direct)
            if not res:
                return False, f"Z(P^{n} x A^{m}) fails at t^{res.index}"
    return True, f"to order {order}"


def check_conic(order: int = 9) -> CheckResult:
    C = symbol("C")
    z, _ = series.zeta_conic(C, order)
    for i in range(order + 1):
        k = i // 2
        if i % 2 == 0:
            want = ring.projective_class(2 * k)
        else:
            want = C * sum((L ** (2 * j) for j in range(k + 1)), ring.ZERO)
        if z[i] != want:
            return False, f"t^{i}: {z[i]} != {want}"
    split, _ = series.zeta_conic(1 + L, 12)
    res = series.compare_series(split, series.zeta_projective(1, 12))
    if not res:
        return False, f"split conic differs from Z(P^1) at t^{res.index}"
    census = geometry.point_census(geometry.ProjectiveVarietySpec.projective_space(1, 2), 8)
    res = geometry.compare_specialization(series.zeta_conic(C, 8)[0], census, 2, {"C": 3})
    if not res:
        return False, f"q=2 specialization fails at t^{res.index}"
    return True, f"symbolic to order {order}, split to 12, F_2 to 8"


def check_index2(order: int = 8) -> CheckResult:
    for r in range(1, 4):
        got = series.zeta_from_minimal(series.zeta_projective(1, order), 2, r)
        res = series.compare_series(got, series.zeta_projective(2 * r - 1, order))
        if not res:
            return False, f"r={r} fails at t^{res.index}"
    B = symbol("C")
    twisted = series.zeta_from_minimal(series.zeta_conic(B, order)[0], 2, 2)
    if twisted[1] != ring.sb_minimal_decomposition(B, 2, 2):
        return False, "t^1 coefficient is not [C](1 + L^2)"
    return True, f"r <= 3 to order {order}"


def check_sb_surface(order: int = 12) -> CheckResult:
    B = symbol("B")
    sym3 = [ONE] + [symbol(f"Sym{3 * i}_B") for i in range(1, order // 3 + 1)]
    z = series.zeta_sb_surface_partial(B, sym3, order)
    if z[1] != B:
        return False, "t^1 is not [B]"
    if z[2] != B * (1 + L ** 2) or z[2] != ring.sb_sym2_class(B, B):
        return False, "t^2 is not [B](1 + L^2)"
    if z[4] != ring.sym_power_sb_class(B, 2, 4):
        return False, "t^4 is not g_{4,2}(L)[B]"
    for r in range(1, order + 1):
        if r % 3 and z[r] != ring.sym_power_sb_class(B, 2, r):
            return False, f"t^{r} is not g_{{{r},2}}(L)[B]"
    return check_sb_surface_split(order)


def check_sb_surface_split(order: int = 12) -> CheckResult:
    sym3 = [ring.sym_power_projective_class(3 * i, 2) for i in range(order // 3 + 1)]
    z = series.zeta_sb_surface_partial(ring.projective_class(2), sym3, order)
    res = series.compare_series(z, series.zeta_projective(2, order))
    if not res:
        return False, f"split surface differs from Z(P^2) at t^{res.index}"
    return True, f"split collapse to order {order}"


def check_mod_L(order: int = 9) -> CheckResult:
    B = symbol("B")
    modl = series.zeta_mod_L_severi_brauer(3).expand(order)
    pattern = [ONE, B, B]
    for i in range(order + 1):
        if modl[i] != pattern[i % 3]:
            return False, f"mod-L series t^{i} is {modl[i]}"
    sym3 = [ONE] + [symbol(f"Sym{3 * i}_B") for i in range(1, order // 3 + 1)]
    surf = series.zeta_sb_surface_partial(B, sym3, order).reduce_mod_L()
    surf = surf.substitute({f"Sym{3 * i}_B": 1 for i in range(1, order // 3 + 1)})
    res = series.compare_series(surf, modl)
    if not res:
        return False, f"surface zeta mod L differs at t^{res.index}"
    return True, f"period-3 pattern to order {order}"


def check_divisibility(limit: int = 12) -> CheckResult:
    count = 0
    for r in range(1, limit + 1):
        for n in range(1, limit + 1):
            if math.gcd(r, n + 1) == 1:
                qcomb.g_quotient(r, n)
                count += 1
    if qcomb.g_quotient(2, 2) != qcomb.QPolynomial([1, 0, 1]):
        return False, "g_{2,2} != 1 + q^2"
    return True, f"{count} exact divisions"


def check_blowup() -> CheckResult:
    cls = ring.blowup_class(ring.projective_class(2), 1, 2)
    if cls != RingElement.from_l_coeffs([1, 2, 1]):
        return False, f"[Bl_pt P^2] = {cls}"
    pts = geometry.enumerate_points(blown_up_plane(3), field(3, 1))
    if pts != cls.evaluate({"L": 3}) or pts != 16:
        return False, f"F_3 count {pts} != {cls.evaluate({'L': 3})}"
    V, X = symbol("V"), symbol("X")
    zv = series.TruncatedSeries([ONE, V, symbol("V2")])
    zx = series.TruncatedSeries([ONE, X, symbol("X2")])
    first = series.blowup_zeta_transform(zv, zx)[1]
    if first != V + L * X:
        return False, f"first-order coefficient {first}"
    z = series.blowup_zeta_transform(series.zeta_projective(2, 2), series.zeta_point(2))
    census = geometry.point_census(blown_up_plane(3), 2)
    res = geometry.compare_specialization(z, census, 3)
    if not res:
        return False, f"blow-up zeta vs F_3 census fails at t^{res.index}"
    return True, "class, F_3 count 16, zeta transform"


def check_multisym(seed: int = 2024, rounds: int = 50) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(rounds):
        d, n = rng.randint(1, 3), rng.randint(1, 2)
        p = multisym.random_invariant(rng, d, n)
        if multisym.decompose_invariant(p).expand() != p:
            return False, f"round trip failed for {p}"
    for d in range(1, 4):
        for n in range(1, 3):
            seen = {}
            for ms in multisym.points_multisets(range(-2, 3), d, n):
                key = multisym.chow_coordinates(ms, d, n)
                if key in seen:
                    return False, f"multisets {seen[key]} and {ms} share coordinates"
                seen[key] = ms
    for d in range(1, 5):
        for n in range(1, 5):
            want = math.comb(n + d, d) - 1
            got = len(multisym.chow_coordinates([[1] * n] * d, d, n))
            if multisym.elementary_count(d, n) != want or got != want:
                return False, f"count mismatch at d={d}, n={n}"
    return True, f"{rounds} round trips, exhaustive separation, counts"


def catalog_rational_zetas():
    """(name, rational form) for every catalog zeta with L-polynomial coefficients."""
    out = [("point", series.zeta_projective_rational(0))]
    out += [(f"affine {n}", series.zeta_affine_rational(n)) for n in range(1, 4)]
    out += [(f"projective {n}", series.zeta_projective_rational(n)) for n in range(1, 6)]
    out.append(("conic split", series.zeta_conic_rational(1 + L)))
    conic = series.zeta_projective_rational(1)
    for r in (2, 3):
        prod = conic
        for i in range(1, r):
            prod = series.rational_mul(prod, series.rational_scale_t(conic, L ** (2 * i)))
        out.append((f"sb-index2 split r={r}", prod))
    out.append(
        ("blowup", series.rational_mul(series.zeta_projective_rational(2), series.zeta_affine_rational(1)))
    )
    return out


def check_reconstruction(order: int = 16, bound: int = 6) -> CheckResult:
    for name, r in catalog_rational_zetas():
        s = r.expand(order)
        found = series.find_rational_form(s, bound)
        if found is None:
            return False, f"{name}: no rational form found"
        if found.expand(order) != s:
            return False, f"{name}: reconstruction does not reproduce the series"
        minimal = series.reduce_rational(r)
        if len(found.den) != len(minimal.den):
            return False, f"{name}: denominator degree {len(found.den) - 1} != {len(minimal.den) - 1}"
    return True, f"{len(catalog_rational_zetas())} catalog zetas from order {order}"


def check_zero_divisor() -> CheckResult:
    B = symbol("B")
    for n in (1, 2, 3):
        val = ring.rewrite_square(B * (B - ring.projective_class(n)), "B", ring.projective_class(n))
        if not val.is_zero():
            return False, f"n={n}: {val}"
    return True, "[B]([B] - [P^n]) = 0 for n = 1, 2, 3"


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "gaussian-sym": check_gaussian_sym,
    "projective-product": check_projective_product,
    "group-scaling": check_group_scaling,
    "conic": check_conic,
    "index2": check_index2,
    "sb-surface": check_sb_surface,
    "sb-surface-split": check_sb_surface_split,
    "mod-L": check_mod_L,
    "divisibility": check_divisibility,
    "blowup": check_blowup,
    "multisym": check_multisym,
    "reconstruction": check_reconstruction,
    "zero-divisor": check_zero_divisor,
}

# checks whose single integer parameter is a truncation order
ORDERED = {"projective-product", "group-scaling", "conic", "index2", "sb-surface", "sb-surface-split", "mod-L"}
