"""Manifold invariants of m # CP^{2n} and the almost-complex decision predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .chern import top_chern_of_sacs
from .ktheory import SacsCoefficients, ShapeError, sacs_slots

__all__ = [
    "ManifoldInvariants",
    "WitnessRecord",
    "invariants",
    "hirzebruch_check",
    "acs_criterion",
    "prop31_witness",
]


@dataclass(frozen=True)
class ManifoldInvariants:
    m: int
    n: int
    dimension: int
    euler: int
    signature: int


def _check_mn(m: int, n: int) -> None:
    for name, v in (("m", m), ("n", n)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def invariants(m: int, n: int) -> ManifoldInvariants:
    """chi = m(2n-1) + 2, sigma = m (each summand contributes +1)."""
    _check_mn(m, n)
    return ManifoldInvariants(m, n, 4 * n, m * (2 * n - 1) + 2, m)


def hirzebruch_check(m: int, n: int) -> bool:
    """Whether chi = (-1)^n sigma mod 4 holds for m # CP^{2n}."""
    inv = invariants(m, n)
    return (inv.euler - (-1) ** n * inv.signature) % 4 == 0


@dataclass(frozen=True)
class WitnessRecord:
    coeffs: SacsCoefficients
    c_top: int
    chi: int
    verdict: bool

    @property
    def m(self) -> int:
        return self.coeffs.m

    @property
    def n(self) -> int:
        return self.coeffs.n

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "coeffs": self.coeffs.to_dict(),
            "c_top": str(self.c_top),
            "chi": self.chi,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "WitnessRecord":
        coeffs = SacsCoefficients.from_dict(data["coeffs"])
        if (data["m"], data["n"]) != (coeffs.m, coeffs.n):
            raise ShapeError("record m/n disagree with its coefficients")
        return cls(coeffs, int(data["c_top"]), int(data["chi"]), bool(data["verdict"]))


def acs_criterion(coeffs: SacsCoefficients) -> WitnessRecord:
    """Evaluate c_{2n}(E) for the structure ``coeffs`` and compare with chi."""
    c_top = top_chern_of_sacs(coeffs)
    chi = invariants(coeffs.m, coeffs.n).euler
    return WitnessRecord(coeffs, c_top, chi, c_top == chi)


def prop31_witness(m: int, n: int) -> SacsCoefficients:
    """For m = 2u + 1: a_j^1 = 2 for j = 1..u, everything else zero."""
    _check_mn(m, n)
    if m % 2 == 0:
        raise ValueError(f"the explicit witness needs odd m, got m={m}")
    u = (m - 1) // 2
    a_keys, _ = sacs_slots(m, n)
    assert all((j, 1) in a_keys for j in range(1, u + 1))
    return SacsCoefficients(m, n, {(j, 1): 2 for j in range(1, u + 1)})
