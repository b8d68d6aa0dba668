"""Identity suites over the K-theory and cohomology models.

Each check returns a :class:`CheckResult`; ``run_selftest`` bundles the
suites used by ``acsums selftest``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .chern import character_to_chern, chern_character, total_chern_closed_form
from .ktheory import (
    BasisKey,
    BasisKind,
    KSpec,
    SacsCoefficients,
    basis_element,
    conjugate,
    eta,
    kernel_basis,
    omega,
    phi,
    sacs_element,
    sacs_slots,
)
from .ring import TruncatedClass, pow_int
from .search import SearchBox, search_witnesses
from .topology import acs_criterion, hirzebruch_check, prop31_witness


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def coordinates(z: TruncatedClass) -> list[int]:
    """Coordinates of a reduced class in the basis {eta_j^k : k < 2n} + {omega}."""
    m, d = z.spec.m, z.spec.d
    lower = z.lower
    row = [lower.get((j, k), 0) for j in range(1, m + 1) for k in range(1, d)]
    row.append(z.top)
    return row


def exact_rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    return DomainMatrix([[QQ(v) for v in r] for r in rows], (len(rows), len(rows[0])), QQ).rank()


def solve_in_span(target: TruncatedClass, span: list[TruncatedClass]):
    """Rational coefficients c with sum c_i span[i] = target, or None."""
    cols = [coordinates(z) for z in span]
    rhs = coordinates(target)
    n_rows = len(rhs)
    aug = DomainMatrix([[QQ(c[r]) for c in cols] + [QQ(rhs[r])] for r in range(n_rows)],
                       (n_rows, len(cols) + 1), QQ)
    rref, pivots = aug.rref()
    if len(cols) in pivots:
        return None
    sol = [QQ(0)] * len(cols)
    dense = rref.to_Matrix()
    for row, p in enumerate(pivots):
        sol[p] = dense[row, len(cols)]
    return sol


def _e(spec: KSpec, j: int, k: int) -> TruncatedClass:
    return basis_element(spec, BasisKey(BasisKind.E, j, k))


def _f(spec: KSpec, j: int, k: int) -> TruncatedClass:
    return basis_element(spec, BasisKey(BasisKind.F, j, k))


def check_symmetric_powers(spec: KSpec) -> bool:
    for j in range(1, spec.m + 1):
        x = eta(spec, j)
        s = x + conjugate(x)
        for k in range(1, spec.n + 1):
            if pow_int(s, k) != 2 * _e(spec, j, k - 1) - _f(spec, j, k - 1):
                return False
    return True


def check_top_power(spec: KSpec) -> bool:
    n = spec.n
    for j in range(1, spec.m + 1):
        x = eta(spec, j)
        top = pow_int(x, 2 * n)
        if top != pow_int(x + conjugate(x), n):
            return False
        if top != 2 * _e(spec, j, n - 1) - _f(spec, j, n - 1) or top != omega(spec):
            return False
    return True


def check_conjugation_series(spec: KSpec) -> bool:
    for j in range(1, spec.m + 1):
        x = eta(spec, j)
        series = sum((((-1) ** k) * pow_int(x, k) for k in range(1, spec.d + 1)),
                     TruncatedClass.zero(spec.ring))
        if conjugate(x) != series or conjugate(conjugate(x)) != x:
            return False
    return True


def check_line_bundle_inverse(spec: KSpec) -> bool:
    return all((1 + eta(spec, j)) * conjugate(1 + eta(spec, j)) == 1
               for j in range(1, spec.m + 1))


def check_e_difference(spec: KSpec) -> bool:
    n = spec.n
    e1 = _e(spec, 1, n - 1)
    p1 = pow_int(eta(spec, 1), 2 * n - 1)
    return all(e1 - _e(spec, j, n - 1) == p1 - pow_int(eta(spec, j), 2 * n - 1)
               for j in range(2, spec.m + 1))


def check_f_in_w_span(spec: KSpec) -> bool:
    """f_j^k = w_j^{k+1} + integer combination of w_j^1..w_j^k."""
    for j in range(1, spec.m + 1):
        for k in range(0, spec.n):
            ws = [basis_element(spec, BasisKey(BasisKind.W, j, i)) for i in range(1, k + 2)]
            sol = solve_in_span(_f(spec, j, k), ws)
            if sol is None or sol[-1] != 1 or any(c.denominator != 1 for c in sol):
                return False
    return True


def check_kernel(spec: KSpec) -> tuple[bool, str]:
    basis = kernel_basis(spec)
    if len(basis) != spec.m * spec.n:
        return False, f"size {len(basis)} != {spec.m * spec.n}"
    if not all(phi(z).is_zero() for z in basis):
        return False, "phi(z) != 0"
    rank = exact_rank([coordinates(z) for z in basis])
    if rank != len(basis):
        return False, f"rank {rank} < {len(basis)}"
    return True, ""


def random_coefficients(rng: random.Random, m: int, n: int, lo: int = -3, hi: int = 3) -> SacsCoefficients:
    a_keys, b_keys = sacs_slots(m, n)
    return SacsCoefficients.from_vector(m, n, [rng.randint(lo, hi) for _ in a_keys + b_keys])


def check_oracle_equivalence(coeffs: SacsCoefficients) -> bool:
    newton = character_to_chern(chern_character(sacs_element(coeffs)))
    return newton == total_chern_closed_form(coeffs)


def _grid(m_max: int, n_max: int) -> Iterator[KSpec]:
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            yield KSpec(m, n)


def _suite(name: str, specs, fn: Callable) -> CheckResult:
    failed = []
    for spec in specs:
        out = fn(spec)
        ok, why = out if isinstance(out, tuple) else (out, "")
        if not ok:
            failed.append(f"(m={spec.m}, n={spec.n}) {why}".strip())
    return CheckResult(name, not failed, "; ".join(failed[:5]))


def run_selftest(m_max: int = 4, n_max: int = 4, samples: int = 100, seed: int = 0) -> list[CheckResult]:
    results = [
        _suite("symmetric powers", _grid(m_max, n_max), check_symmetric_powers),
        _suite("top power", _grid(m_max, n_max), check_top_power),
        _suite("conjugation series", _grid(m_max, n_max), check_conjugation_series),
        _suite("H * conj(H) = 1", _grid(m_max, n_max), check_line_bundle_inverse),
        _suite("e-difference identity", _grid(m_max, n_max), check_e_difference),
        _suite("f in w-span", _grid(min(m_max, 2), n_max), check_f_in_w_span),
        _suite("kernel basis", _grid(m_max, n_max), check_kernel),
    ]
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        coeffs = random_coefficients(rng, rng.randint(1, 3), rng.randint(1, 4))
        if not check_oracle_equivalence(coeffs):
            bad.append(str(coeffs.vector()))
    results.append(CheckResult("oracle equivalence", not bad, "; ".join(bad[:5])))

    bad = []
    for m in range(1, 2 * m_max, 2):
        for n in range(1, n_max + 1):
            rec = acs_criterion(prop31_witness(m, n))
            if not rec.verdict or rec.c_top != m * (2 * n - 1) + 2:
                bad.append(f"(m={m}, n={n})")
    results.append(CheckResult("explicit witness", not bad, "; ".join(bad)))

    bad = [f"(m={m}, n={n})" for m in range(1, 21) for n in range(1, 9)
           if hirzebruch_check(m, n) != (m % 2 == 1)]
    results.append(CheckResult("parity dichotomy", not bad, "; ".join(bad)))

    box = SearchBox(3, 1, 2)
    brute = search_witnesses(box, "brute")
    fast = search_witnesses(box, "decomposed")
    ok = (len(brute) == 6 and [r.coeffs for r in brute] == [r.coeffs for r in fast]
          and all(acs_criterion(r.coeffs).verdict for r in fast))
    results.append(CheckResult("search modes agree", ok, f"{len(brute)} vs {len(fast)}"))
    return results
