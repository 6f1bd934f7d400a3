"""Exact class identities in K0(Var), motivic zeta functions, q-binomials,
multisymmetric polynomials, and a finite-field point-counting oracle."""

from .kernels import BACKEND
from .qcomb import QPolynomial, g_quotient, gaussian_binomial, q_pascal_step
from .ring import L, ONE, ZERO, RingElement, parse, symbol
from .series import RationalSeries, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "L",
    "ONE",
    "ZERO",
    "QPolynomial",
    "RationalSeries",
    "RingElement",
    "TruncatedSeries",
    "g_quotient",
    "gaussian_binomial",
    "parse",
    "q_pascal_step",
    "symbol",
]
