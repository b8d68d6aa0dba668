"""Independent reference computations built on sympy polynomial expansion.

Nothing here touches acsums arithmetic: products are expanded as ordinary
polynomials and only then reduced modulo R_d.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy as sp


def symbols(m: int):
    return sp.symbols(f"x1:{m + 1}")


def reduce_mod_rd(expr, xs, d: int):
    """(c0, {(j, k): coeff}, top) of a polynomial reduced modulo R_d."""
    poly = sp.Poly(sp.expand(expr), *xs)
    c0 = Fraction(0)
    lower: dict[tuple[int, int], Fraction] = {}
    top = Fraction(0)
    for exps, coeff in poly.terms():
        coeff = Fraction(int(sp.numer(coeff)), int(sp.denom(coeff)))
        nonzero = [(j, e) for j, e in enumerate(exps, start=1) if e]
        if not nonzero:
            c0 += coeff
        elif len(nonzero) > 1:
            continue
        else:
            j, e = nonzero[0]
            if e < d:
                lower[(j, e)] = lower.get((j, e), 0) + coeff
            elif e == d:
                top += coeff
    return c0, {k: v for k, v in lower.items() if v}, top


def canonical(a):
    """The same triple for an acsums TruncatedClass."""
    return (Fraction(a.c0), {k: Fraction(v) for k, v in a.lower.items()}, Fraction(a.top))


def to_sympy(a, xs):
    """Polynomial representative of a TruncatedClass (top as x_1^d)."""
    expr = sp.Rational(a.c0)
    for (j, k), c in a.lower.items():
        expr += sp.Rational(c) * xs[j - 1] ** k
    expr += sp.Rational(a.top) * xs[0] ** a.spec.d
    return expr


def truncated_series(expr, x, d: int) -> list[Fraction]:
    """Taylor coefficients of a univariate rational function up to degree d.

    Numerator and denominator are expanded separately, then divided as
    power series; this avoids sympy's generic series machinery.
    """
    num, den = sp.fraction(sp.together(expr))

    def coeffs(poly_expr):
        out = [Fraction(0)] * (d + 1)
        for (e,), c in sp.Poly(sp.expand(poly_expr), x).terms():
            if e <= d:
                out[e] = Fraction(int(sp.numer(c)), int(sp.denom(c)))
        return out

    p, q = coeffs(num), coeffs(den)
    if q[0] == 0:
        raise ZeroDivisionError("denominator vanishes at 0")
    out = []
    for k in range(d + 1):
        out.append((p[k] - sum(q[i] * out[k - i] for i in range(1, k + 1))) / q[0])
    return out


def univariate_contribution(n: int, a: list[int], coupling: int = 0) -> int:
    """Degree-2n coefficient of (1-x)^{2n+1} prod ((1+kx)/(1-kx))^{a_k} (1 + coupling x^{2n-1})."""
    x = sp.Symbol("x")
    expr = (1 - x) ** (2 * n + 1) * (1 + coupling * x ** (2 * n - 1))
    for k, ak in enumerate(a, start=1):
        expr *= ((1 + k * x) / (1 - k * x)) ** ak
    coeffs = truncated_series(expr, x, 2 * n)
    assert coeffs[2 * n].denominator == 1
    return int(coeffs[2 * n])


def binomial_top(p: int, d: int) -> int:
    """Coefficient of x^d in (1 - x)^p."""
    return (-1) ** d * math.comb(p, d)
