"""Chern classes of K-classes on m # CP^{2n}.

Two independent routes:

* the Chern character into rational cohomology followed by Newton's
  identities (works for any K-class of virtual rank 0), and
* the multiplicative closed form for the SACS family, evaluated in the
  integer cohomology ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ktheory import KSpec, SacsCoefficients
from .ring import (
    Domain,
    RingError,
    TruncatedClass,
    coefficient_of,
    generator,
    homogeneous_part,
    invert_unit,
    pow_int,
    substitute,
)

__all__ = [
    "ChernData",
    "NonIntegralError",
    "chern_character",
    "character_to_chern",
    "chern_classes",
    "total_chern_closed_form",
    "top_chern_of_sacs",
]


class NonIntegralError(RingError):
    """Recovered Chern classes have non-integral coefficients."""


@dataclass(frozen=True)
class ChernData:
    """Total Chern class of a virtual bundle, as an integer cohomology class."""

    spec: KSpec
    total: TruncatedClass

    def __post_init__(self):
        if self.total.spec != self.spec.ring:
            raise RingError("total Chern class must live in the integer ring with d = 2n")
        if self.total.c0 != 1:
            raise RingError("total Chern class must have constant term 1")

    @property
    def by_degree(self) -> tuple[TruncatedClass, ...]:
        """Homogeneous components c_1, ..., c_{2n}."""
        return tuple(homogeneous_part(self.total, k) for k in range(1, self.spec.d + 1))

    @property
    def c_top(self) -> int:
        return self.total.top

    def coefficient(self, j: int, k: int) -> int:
        """Coefficient of x_j^k in c_k (``k = 2n`` gives c_top)."""
        return coefficient_of(self.total, j, k)

    def to_dict(self) -> dict:
        """``c[0] = "1"``, ``c[k]`` lists the x_j^k coefficients for j = 1..m
        when 0 < k < 2n, and ``c[2n]`` is the top class."""
        m, d = self.spec.m, self.spec.d
        c: list = ["1"]
        for k in range(1, d):
            c.append([str(self.coefficient(j, k)) for j in range(1, m + 1)])
        c.append(str(self.c_top))
        return {"m": m, "n": self.spec.n, "c": c}


def _exp_minus_one(d: int) -> list[Fraction]:
    return [Fraction(0)] + [Fraction(1, math.factorial(k)) for k in range(1, d + 1)]


def chern_character(z: TruncatedClass) -> TruncatedClass:
    """Ring map eta_j -> exp(x_j) - 1 into rational cohomology."""
    image = _exp_minus_one(z.spec.d)
    target = z.spec.with_domain(Domain.RATIONAL)
    return substitute(z, {j: image for j in range(1, z.spec.m + 1)}, target)


def chern_classes(ch: TruncatedClass) -> list[TruncatedClass]:
    """Rational Chern classes c_0..c_d recovered from a reduced character.

    With power sums p_k = k! ch_k,
    p_k = c_1 p_{k-1} - c_2 p_{k-2} + ... + (-1)^{k-2} c_{k-1} p_1 + (-1)^{k-1} k c_k.
    """
    if ch.c0 != 0:
        raise RingError("character must have zero constant term (virtual rank 0)")
    spec = ch.spec if ch.spec.domain is Domain.RATIONAL else ch.spec.with_domain(Domain.RATIONAL)
    ch = ch.to_domain(Domain.RATIONAL)
    d = spec.d
    p = [TruncatedClass.zero(spec)]
    for k in range(1, d + 1):
        p.append(math.factorial(k) * homogeneous_part(ch, k))
    c = [TruncatedClass.one(spec)]
    for k in range(1, d + 1):
        rest = p[k]
        for i in range(1, k):
            term = c[i] * p[k - i]
            rest = rest - term if i % 2 else rest + term
        c.append(Fraction((-1) ** (k - 1), k) * rest)
    return c


def character_to_chern(ch: TruncatedClass) -> ChernData:
    """Integral total Chern class from the Chern character of a rank-0 class."""
    if ch.spec.d % 2:
        raise RingError("Chern data is defined for d = 2n")
    total = TruncatedClass.zero(ch.spec.with_domain(Domain.RATIONAL))
    for ck in chern_classes(ch):
        total = total + ck
    try:
        total = total.to_domain(Domain.INTEGER)
    except RingError as exc:
        raise NonIntegralError(f"non-integral Chern class: {total}") from exc
    return ChernData(KSpec(ch.spec.m, ch.spec.d // 2), total)


def total_chern_closed_form(coeffs: SacsCoefficients) -> ChernData:
    """Product formula for c(E), computed exactly in H*(m # CP^{2n}; Z)."""
    spec = coeffs.spec
    ring = spec.ring
    n = spec.n
    x = [None] + [generator(ring, j) for j in range(1, spec.m + 1)]
    total = pow_int(1 - sum(x[1:], TruncatedClass.zero(ring)), 2 * n + 1)
    for (j, k), a in coeffs.a.items():
        ratio = (1 + k * x[j]) * invert_unit(1 - k * x[j])
        total = total * pow_int(ratio, a)
    if coeffs.b:
        scale = math.factorial(2 * n - 2)
        lead = pow_int(x[1], 2 * n - 1)
        for j, b in coeffs.b.items():
            total = total * pow_int(1 + scale * (lead - pow_int(x[j], 2 * n - 1)), b)
    return ChernData(spec, total)


def top_chern_of_sacs(coeffs: SacsCoefficients) -> int:
    """c_{2n}(E): the coefficient of x_1^{2n} = ... = x_m^{2n}."""
    return total_chern_closed_form(coeffs).c_top
