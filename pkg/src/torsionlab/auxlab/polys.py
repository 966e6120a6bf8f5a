"""Multivariate polynomials as {exponent tuple: coefficient} dicts.

Parsing goes through sympy; evaluation is exact in whichever field the point
coordinates live in.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import ParseError


def parse_poly(text: str, variables=("x", "y", "z")):
    """Dict of integer/rational coefficients keyed by exponent tuples."""
    syms = sympy.symbols(variables)
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals=dict(zip(variables, syms)))
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from None
    P = sympy.Poly(sympy.expand(expr), *syms)
    out = {}
    for mon, c in P.as_dict().items():
        c = sympy.Rational(c)
        out[tuple(mon)] = Fraction(int(c.p), int(c.q))
    return out


def to_sympy(poly, variables=("x", "y", "z")):
    syms = sympy.symbols(variables)
    expr = 0
    for mon, c in poly.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mon):
            term *= s ** e
        expr += term
    return expr


def evaluate(poly, point):
    acc = 0
    for mon, c in poly.items():
        term = c
        for v, e in zip(point, mon):
            if e:
                term = term * v ** e
        acc = acc + term
    return acc


def total_degree(poly) -> int:
    return max((sum(m) for m in poly), default=-1)


def is_homogeneous(poly) -> bool:
    return len({sum(m) for m in poly}) <= 1
