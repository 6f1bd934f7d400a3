"""Command-line front end: ``motzeta <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (printed to stderr as
``ERROR <CODE>: message``) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import checks, geometry, multisym, qcomb, ring, series
from .errors import InvalidArgument, MotzetaError, ParseError
from .galois import field
from .ring import L, RingElement

CLASS_NAMES = (
    "expr", "projective", "affine", "grassmannian", "sym-projective", "blowup",
    "sb-minimal", "sb-product", "sb-sym2", "sb-sym",
)
ZETA_NAMES = ("point", "affine", "projective", "conic", "sb-index2", "sb-surface-partial", "sb-mod-L", "blowup")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=_positive, default=None, help="truncation order (default 16)")
    common.add_argument("--at", type=int, default=None, metavar="Q", help="evaluate at L = Q")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for point enumeration")
    common.add_argument("--output", choices=("text", "json", "latex"), default="text")
    common.add_argument("--budget", type=_positive, default=geometry.DEFAULT_BUDGET, help="enumeration cap q^(m+1)")
    common.add_argument("--bind", action="append", default=[], metavar="NAME=EXPR", help="substitute a symbol")

    parser = _Parser(prog="motzeta", description="Exact computations in Z[L, symbols] with finite-field checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("class", parents=[common], help="classes of catalog varieties")
    p.add_argument("name", choices=CLASS_NAMES)
    p.add_argument("params", nargs="*")
    p.add_argument("--mod-L", action="store_true", dest="mod_l")
    p.add_argument("--rewrite", action="append", default=[], metavar="NAME=EXPR", help="apply [NAME]^2 -> [NAME]*EXPR")

    p = sub.add_parser("zeta", parents=[common], help="motivic zeta series")
    p.add_argument("name", choices=ZETA_NAMES)
    p.add_argument("params", nargs="*")
    p.add_argument("--rational", action="store_true")
    p.add_argument("--mod-L", action="store_true", dest="mod_l")

    p = sub.add_parser("qbinom", parents=[common], help="Gaussian binomial coefficients")
    p.add_argument("n", type=_positive)
    p.add_argument("d", type=_positive)
    p.add_argument("--g", action="store_true", help="print g_{n,d} = binom(n+d, n)_q / [d+1]_q instead")

    p = sub.add_parser("count", parents=[common], help="point counts of a variety spec file")
    p.add_argument("spec")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--ext", type=_positive, default=None, metavar="E")
    mode.add_argument("--sym", type=_positive, default=None, metavar="N")
    mode.add_argument("--zeta", action="store_true")
    p.add_argument("--field-degree", type=_positive, default=1, metavar="K", help="count over F_{p^K}")
    p.add_argument("--backend", choices=("cython", "python"), default=None)

    p = sub.add_parser("multisym", parents=[common], help="multisymmetric polynomials")
    msub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = msub.add_parser("elem", parents=[common])
    q.add_argument("d", type=_positive)
    q.add_argument("n", type=_positive)
    q.add_argument("k")
    q = msub.add_parser("decompose", parents=[common])
    q.add_argument("file")
    q.add_argument("--shape", default=None, metavar="D,N")
    q = msub.add_parser("chow", parents=[common])
    q.add_argument("d", type=_positive)
    q.add_argument("n", type=_positive)
    q.add_argument("points")

    p = sub.add_parser("verify", parents=[common], help="run a built-in identity check")
    p.add_argument("check", choices=sorted(checks.CHECKS) + ["all"])
    return parser


# rendering
def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_element(e: RingElement, mode: str, key: str = "class") -> str:
    if mode == "json":
        return _dump({key: str(e)})
    return e.latex() if mode == "latex" else str(e)


def render_int(v: int, mode: str, key: str = "value") -> str:
    return _dump({key: v}) if mode == "json" else str(v)


def render_series(s: series.TruncatedSeries, r: Optional[series.RationalSeries], mode: str) -> str:
    if mode == "json":
        obj = {"order": s.order, "coefficients": [str(c) for c in s.coeffs]}
        if r is not None:
            obj["rational"] = {"num": [str(c) for c in r.num], "den": [str(c) for c in r.den]}
        return _dump(obj)
    lines = []
    if r is not None:
        lines.append(r.latex() if mode == "latex" else str(r))
    lines.append(s.latex() if mode == "latex" else str(s))
    return "\n".join(lines)


def render_int_series(values: Sequence[int], mode: str) -> str:
    if mode == "json":
        return _dump({"order": len(values) - 1, "coefficients": list(values)})
    terms = series.format_t_poly([RingElement(v) for v in values], latex=mode == "latex")
    return terms


def render_qpoly(p: qcomb.QPolynomial, mode: str) -> str:
    if mode == "json":
        return _dump(p.to_list())
    return p.latex() if mode == "latex" else str(p)


# argument helpers
def _element(text: str) -> RingElement:
    return ring.parse(text)


def _int_param(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidArgument(f"{what} must be an integer, got {text!r}") from None


def _bindings(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip().strip("[]")
        if not sep or not name:
            raise InvalidArgument(f"binding {item!r} is not NAME=EXPR")
        ring.check_symbol_name(name)
        out[name] = _element(value)
    return out


def _params(params: Sequence[str], spec: Sequence[tuple], name: str) -> list:
    """Convert positional params by (kind, default) pairs; kind is 'int' or 'elem'."""
    if len(params) > len(spec):
        raise InvalidArgument(f"{name} takes at most {len(spec)} parameters, got {len(params)}")
    out = []
    for i, (kind, default) in enumerate(spec):
        if i < len(params):
            raw = params[i]
        elif default is not None:
            raw = default
        else:
            raise InvalidArgument(f"{name} needs {sum(1 for _, d in spec if d is None)} parameters")
        out.append(_int_param(raw, f"{name} parameter {i + 1}") if kind == "int" else _element(raw))
    return out


def _evaluate(e: RingElement, q: int) -> int:
    return e.evaluate({"L": q})


# subcommands
def cmd_class(args) -> str:
    table = {
        "expr": ([("elem", None)], lambda x: x),
        "projective": ([("int", None)], ring.projective_class),
        "affine": ([("int", None)], ring.affine_class),
        "grassmannian": ([("int", None), ("int", None)], ring.grassmannian_class),
        "sym-projective": ([("int", None), ("int", None)], ring.sym_power_projective_class),
        "blowup": ([("elem", None), ("elem", None), ("int", None)], ring.blowup_class),
        "sb-minimal": ([("elem", None), ("int", None), ("int", None)], ring.sb_minimal_decomposition),
        "sb-product": ([("elem", None), ("int", None), ("int", None)], ring.sb_product_class),
        "sb-sym2": ([("elem", None), ("elem", None)], ring.sb_sym2_class),
        "sb-sym": ([("elem", None), ("int", None), ("int", None)], ring.sym_power_sb_class),
    }
    spec, fn = table[args.name]
    value = fn(*_params(args.params, spec, args.name))
    for item in args.rewrite:
        (name, expr), = _bindings([item]).items()
        value = ring.rewrite_square(value, name, expr)
    value = value.substitute(_bindings(args.bind))
    if args.mod_l:
        value = value.reduce_mod_L()
    if args.at is not None:
        return render_int(_evaluate(value, args.at), args.output)
    return render_element(value, args.output)


def _zeta(name: str, params: List[str], order: int, want_rational: bool):
    if name == "point":
        _params(params, [], name)
        return series.zeta_point(order), series.zeta_projective_rational(0)
    if name == "affine":
        n, = _params(params, [("int", None)], name)
        if n < 0:
            raise InvalidArgument("affine needs n >= 0")
        return series.zeta_affine(n, order), series.zeta_affine_rational(n)
    if name == "projective":
        n, = _params(params, [("int", None)], name)
        return series.zeta_projective(n, order), series.zeta_projective_rational(n)
    if name == "conic":
        c, = _params(params, [("elem", "[C]")], name)
        s, r = series.zeta_conic(c, order)
        return s, r
    if name == "sb-index2":
        c, r = _params(params, [("elem", "[C]"), ("int", "2")], name)
        s = series.zeta_from_minimal(series.zeta_conic(c, order)[0], 2, r)
        conic = series.zeta_conic_rational(c)
        rat = conic
        for i in range(1, r):
            rat = series.rational_mul(rat, series.rational_scale_t(conic, L ** (2 * i)))
        return s, rat
    if name == "sb-surface-partial":
        b, = _params(params, [("elem", "[B]")], name)
        if want_rational:
            raise InvalidArgument("sb-surface-partial has no closed rational form: [Sym^3i B] are free symbols")
        sym3 = [ring.ONE] + [ring.symbol(series.sym_symbol_name(3 * i)) for i in range(1, order // 3 + 1)]
        return series.zeta_sb_surface_partial(b, sym3, order), None
    if name == "sb-mod-L":
        n, = _params(params, [("int", None)], name)
        r = series.zeta_mod_L_severi_brauer(n)
        return r.expand(order), r
    # blowup: P^2 blown up in k rational points
    k, = _params(params, [("int", "1")], name)
    if k < 0:
        raise InvalidArgument("blowup needs k >= 0")
    s, rat = series.zeta_projective(2, order), series.zeta_projective_rational(2)
    for _ in range(k):
        s = series.blowup_zeta_transform(s, series.zeta_point(order))
        rat = series.rational_mul(rat, series.zeta_affine_rational(1))
    return s, rat


def cmd_zeta(args) -> str:
    order = series.DEFAULT_ORDER if args.order is None else args.order
    s, r = _zeta(args.name, list(args.params), order, args.rational)
    bind = _bindings(args.bind)
    if bind:
        s = s.substitute(bind)
        r = r.substitute(bind) if r is not None else None
    if args.mod_l:
        s = s.reduce_mod_L()
        r = r.reduce_mod_L() if r is not None else None
    if args.at is not None:
        return render_int_series([_evaluate(c, args.at) for c in s.coeffs], args.output)
    return render_series(s, r if args.rational else None, args.output)


def cmd_qbinom(args) -> str:
    p = qcomb.g_quotient(args.n, args.d) if args.g else qcomb.gaussian_binomial(args.n, args.d)
    if args.at is not None:
        return render_int(p(args.at), args.output)
    return render_qpoly(p, args.output)


def cmd_count(args) -> str:
    try:
        x = geometry.load_variety(args.spec)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {args.spec}: {exc.strerror}") from None
    k = args.field_degree
    if k < 1:
        raise InvalidArgument("--field-degree must be >= 1")
    q = x.base_prime ** k
    opts = dict(budget=args.budget, jobs=max(args.jobs, 1), backend=args.backend)
    if args.zeta:
        order = series.DEFAULT_ORDER if args.order is None else args.order
        if order == 0:
            return render_int_series([1], args.output)
        census = geometry.point_census(x, order, k=k, **opts)
        return render_int_series(geometry.hasse_weil_series(census, order), args.output)
    if args.sym is not None:
        if args.sym == 0:
            return render_int(1, args.output, "count")
        census = geometry.point_census(x, args.sym, k=k, **opts)
        return render_int(geometry.sym_power_count(census, args.sym), args.output, "count")
    e = 1 if args.ext is None else args.ext
    if e < 1:
        raise InvalidArgument("--ext must be >= 1")
    n = geometry.enumerate_points(x, field(x.base_prime, k * e), **opts)
    return render_int(n, args.output, "count") if args.output != "json" else _dump({"q": q ** e, "count": n})


def _render_poly(p: multisym.VectorVariablePoly, mode: str) -> str:
    if mode == "json":
        terms = [[[list(row) for row in m], _frac(c)] for m, c in p.sorted_terms()]
        return _dump({"d": p.d, "n": p.n, "terms": terms})
    return str(p)


def cmd_multisym(args) -> str:
    if args.action == "elem":
        try:
            k = [int(v) for v in args.k.split(",")]
        except ValueError:
            raise ParseError(f"index {args.k!r} is not a comma-separated integer list") from None
        return _render_poly(multisym.elementary_multisym(k, args.d, args.n), args.output)
    if args.action == "decompose":
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidArgument(f"cannot read {args.file}: {exc.strerror}") from None
        d = n = None
        if args.shape:
            try:
                d, n = (int(v) for v in args.shape.split(","))
            except ValueError:
                raise InvalidArgument(f"--shape must be D,N, got {args.shape!r}") from None
        expr = multisym.decompose_invariant(multisym.parse_poly(text, d, n))
        if args.output == "json":
            terms = [
                [[[list(k), e] for k, e in zip(expr.indices, exps) if e], _frac(c)]
                for exps, c in expr.sorted_terms()
            ]
            return _dump({"d": expr.d, "n": expr.n, "terms": terms})
        return str(expr)
    coords = multisym.chow_coordinates(multisym.parse_points(args.points), args.d, args.n)
    if args.output == "json":
        return _dump({"indices": [list(k) for k in multisym.elementary_indices(args.d, args.n)],
                      "coordinates": [_frac(c) for c in coords]})
    return ", ".join(_frac(c) for c in coords)


def cmd_verify(args) -> tuple:
    names = sorted(checks.CHECKS) if args.check == "all" else [args.check]
    results = []
    for name in names:
        fn = checks.CHECKS[name]
        if name in checks.ORDERED and args.order is not None:
            ok, detail = fn(args.order)
        else:
            ok, detail = fn()
        results.append((name, ok, detail))
    all_ok = all(ok for _, ok, _ in results)
    if args.output == "json":
        out = _dump([{"check": n, "ok": ok, "detail": d} for n, ok, d in results])
    elif len(results) == 1:
        name, ok, detail = results[0]
        out = "OK" if ok else f"FAIL {detail}"
    else:
        out = "\n".join(f"{n}: {'OK' if ok else 'FAIL ' + d}" for n, ok, d in results)
    return out, 0 if all_ok else 1


COMMANDS = {
    "class": cmd_class,
    "zeta": cmd_zeta,
    "qbinom": cmd_qbinom,
    "count": cmd_count,
    "multisym": cmd_multisym,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"ERROR USAGE: {exc}\n")
        return 2
    try:
        result = COMMANDS[args.command](args)
    except MotzetaError as exc:
        sys.stderr.write(f"ERROR {exc.code}: {exc.message}\n")
        return 1
    except RecursionError:
        sys.stderr.write("ERROR INVALID_ARGUMENT: input nests too deeply\n")
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort guard for the exit contract
        sys.stderr.write(f"ERROR INTERNAL: {type(exc).__name__}: {exc}\n")
        return 1
    status = 0
    if isinstance(result, tuple):
        result, status = result
    sys.stdout.write(result + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
