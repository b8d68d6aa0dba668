"""K-theory of m # CP^{2n} as Z[eta_1..eta_m]/R_{2n}.

eta_j is the pull-back of H - 1 from the j-th summand, omega = eta_1^{2n}
is the top class.  Conjugation t (induced by complex conjugation of
bundles) is the ring endomorphism eta_j -> -eta_j / (1 + eta_j).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .ring import (
    Domain,
    RingError,
    RingSpec,
    TruncatedClass,
    generator,
    pow_int,
    substitute,
)

__all__ = [
    "KSpec",
    "BasisKind",
    "BasisKey",
    "SacsCoefficients",
    "ShapeError",
    "eta",
    "omega",
    "conjugate",
    "basis_element",
    "stable_tangent",
    "kernel_basis",
    "phi",
    "sacs_element",
    "sacs_slots",
]


class ShapeError(RingError):
    """A coefficient vector does not match the parity shape for (m, n)."""


@dataclass(frozen=True)
class KSpec:
    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise RingError(f"{name} must be a positive integer, got {v!r}")

    @cached_property
    def ring(self) -> RingSpec:
        return RingSpec(self.m, 2 * self.n, Domain.INTEGER)

    @property
    def d(self) -> int:
        return 2 * self.n


class BasisKind(enum.Enum):
    ETA_POW = "eta_pow"
    H_POW = "h_pow"
    E = "e"
    F = "f"
    W = "w"
    OMEGA = "omega"


@dataclass(frozen=True)
class BasisKey:
    kind: BasisKind
    j: int = 1
    k: int = 0


def eta(spec: KSpec, j: int) -> TruncatedClass:
    return generator(spec.ring, j)


def omega(spec: KSpec) -> TruncatedClass:
    return TruncatedClass.top_class(spec.ring, 1)


def _conjugate_image(d: int) -> list[int]:
    # -eta/(1+eta) = -eta + eta^2 - ... + eta^d
    return [0] + [(-1) ** k for k in range(1, d + 1)]


def conjugate(z: TruncatedClass) -> TruncatedClass:
    """The involution t, applied by substitution on the canonical form."""
    image = _conjugate_image(z.spec.d)
    return substitute(z, {j: image for j in range(1, z.spec.m + 1)})


def phi(z: TruncatedClass) -> TruncatedClass:
    """c o r = 1 + t."""
    return z + conjugate(z)


def _eta_sum(spec: KSpec, j: int) -> TruncatedClass:
    x = eta(spec, j)
    return x + conjugate(x)


def basis_element(spec: KSpec, key: BasisKey) -> TruncatedClass:
    n = spec.n
    kind, j, k = key.kind, key.j, key.k
    if kind is BasisKind.OMEGA:
        return pow_int(eta(spec, 1), 2 * n)
    spec.ring.check_generator(j)
    if kind is BasisKind.ETA_POW:
        if not 1 <= k <= 2 * n:
            raise RingError(f"eta power {k} outside 1..{2 * n}")
        return pow_int(eta(spec, j), k)
    if kind is BasisKind.H_POW:
        return pow_int(1 + eta(spec, j), k)
    if kind in (BasisKind.E, BasisKind.F):
        if not 0 <= k <= n - 1:
            raise RingError(f"{kind.value}-index {k} outside 0..{n - 1}")
        x = eta(spec, j)
        tail = pow_int(_eta_sum(spec, j), k)
        head = x if kind is BasisKind.E else x - conjugate(x)
        return head * tail
    if kind is BasisKind.W:
        if not 1 <= k <= n:
            raise RingError(f"w-index {k} outside 1..{n}")
        h = 1 + eta(spec, j)
        return pow_int(h, k) - pow_int(h, -k)
    raise RingError(f"unknown basis kind {kind!r}")


def stable_tangent(spec: KSpec) -> TruncatedClass:
    """(2n+1) * sum_j conj(eta_j), the complex stable tangent class."""
    total = TruncatedClass.zero(spec.ring)
    for j in range(1, spec.m + 1):
        total = total + conjugate(eta(spec, j))
    return (2 * spec.n + 1) * total


def kernel_basis_keys(spec: KSpec) -> list[tuple[str, int, int]]:
    """Labels for :func:`kernel_basis`, in the same order."""
    m, n = spec.m, spec.n
    if n % 2:
        return [("w", j, k) for j in range(1, m + 1) for k in range(1, n + 1)]
    keys = [("w", j, k) for j in range(1, m + 1) for k in range(1, n)]
    keys += [("e-diff", j, n - 1) for j in range(2, m + 1)]
    keys.append(("2e-omega", 1, n - 1))
    return keys


def kernel_basis(spec: KSpec) -> list[TruncatedClass]:
    """Free generators of ker(r: K~ -> KO~), m*n of them.

    n odd: w_j^k for k = 1..n.  n even: w_j^k for k = 1..n-1, then
    e_1^{n-1} - e_j^{n-1} for j = 2..m, then 2 e_1^{n-1} - omega.
    """
    out = []
    for kind, j, k in kernel_basis_keys(spec):
        if kind == "w":
            out.append(basis_element(spec, BasisKey(BasisKind.W, j, k)))
        elif kind == "e-diff":
            out.append(basis_element(spec, BasisKey(BasisKind.E, 1, k))
                       - basis_element(spec, BasisKey(BasisKind.E, j, k)))
        else:
            out.append(2 * basis_element(spec, BasisKey(BasisKind.E, 1, k)) - omega(spec))
    return out


def sacs_slots(m: int, n: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Allowed ``a`` keys (j, k) and ``b`` keys j, in serialization order."""
    if n % 2:
        return [(j, k) for j in range(1, m + 1) for k in range(1, n + 1)], []
    a_keys = [(j, k) for j in range(1, m + 1) for k in range(1, n)]
    a_keys.append((1, n))
    a_keys.sort()
    return a_keys, list(range(2, m + 1))


@dataclass(frozen=True)
class SacsCoefficients:
    """Integer parameters (a_j^k, b_j) selecting one stable almost complex structure.

    Absent entries are zero; zero entries are dropped so that equal
    vectors compare equal.
    """

    m: int
    n: int
    a: Mapping[tuple[int, int], int] = field(default_factory=dict)
    b: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        KSpec(self.m, self.n)
        a_keys, b_keys = sacs_slots(self.m, self.n)
        allowed_a, allowed_b = set(a_keys), set(b_keys)
        a = {}
        for key, value in dict(self.a).items():
            key = tuple(key)
            if key not in allowed_a:
                raise ShapeError(f"a{key} is not a slot for m={self.m}, n={self.n}")
            a[key] = _as_int(value, f"a{key}")
        b = {}
        for j, value in dict(self.b).items():
            if j not in allowed_b:
                raise ShapeError(f"b[{j}] is not a slot for m={self.m}, n={self.n}")
            b[j] = _as_int(value, f"b[{j}]")
        object.__setattr__(self, "a", {k: a[k] for k in sorted(a) if a[k]})
        object.__setattr__(self, "b", {k: b[k] for k in sorted(b) if b[k]})

    def __hash__(self):
        return hash((self.m, self.n, tuple(self.a.items()), tuple(self.b.items())))

    @property
    def spec(self) -> KSpec:
        return KSpec(self.m, self.n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "SacsCoefficients":
        return cls(m, n)

    def vector(self) -> tuple[int, ...]:
        """Dense values in slot order: all a_j^k by (j, k), then b_j by j."""
        a_keys, b_keys = sacs_slots(self.m, self.n)
        return tuple(self.a.get(k, 0) for k in a_keys) + tuple(self.b.get(j, 0) for j in b_keys)

    @classmethod
    def from_vector(cls, m: int, n: int, values) -> "SacsCoefficients":
        a_keys, b_keys = sacs_slots(m, n)
        values = list(values)
        if len(values) != len(a_keys) + len(b_keys):
            raise ShapeError(f"expected {len(a_keys) + len(b_keys)} values, got {len(values)}")
        a = dict(zip(a_keys, values[: len(a_keys)]))
        b = dict(zip(b_keys, values[len(a_keys):]))
        return cls(m, n, a, b)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "a": [{"j": j, "k": k, "value": v} for (j, k), v in self.a.items()],
            "b": [{"j": j, "value": v} for j, v in self.b.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SacsCoefficients":
        if not isinstance(data, Mapping):
            raise ShapeError("coefficient record must be a JSON object")
        unknown = set(data) - {"m", "n", "a", "b"}
        if unknown:
            raise ShapeError(f"unknown fields: {sorted(unknown)}")
        try:
            m = _as_int(data["m"], "m")
            n = _as_int(data["n"], "n")
        except KeyError as exc:
            raise ShapeError(f"missing field {exc.args[0]!r}") from None
        a: dict[tuple[int, int], int] = {}
        for entry in data.get("a", []):
            _check_entry(entry, {"j", "k", "value"})
            key = (_as_int(entry["j"], "j"), _as_int(entry["k"], "k"))
            if key in a:
                raise ShapeError(f"duplicate a{key}")
            a[key] = _as_int(entry["value"], "value")
        b: dict[int, int] = {}
        for entry in data.get("b", []):
            _check_entry(entry, {"j", "value"})
            j = _as_int(entry["j"], "j")
            if j in b:
                raise ShapeError(f"duplicate b[{j}]")
            b[j] = _as_int(entry["value"], "value")
        return cls(m, n, a, b)


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ShapeError(f"{what} must be an integer, got {value!r}")
    return value


def _check_entry(entry, fields: set[str]) -> None:
    if not isinstance(entry, Mapping) or set(entry) != fields:
        raise ShapeError(f"entry {entry!r} must have exactly the fields {sorted(fields)}")


def sacs_element(coeffs: SacsCoefficients) -> TruncatedClass:
    """The K-class y = (2n+1) sum conj(eta_j) + sum a w + sum b (eta_1^{2n-1} - eta_j^{2n-1})."""
    spec = coeffs.spec
    y = stable_tangent(spec)
    for (j, k), value in coeffs.a.items():
        y = y + value * basis_element(spec, BasisKey(BasisKind.W, j, k))
    if coeffs.b:
        top1 = pow_int(eta(spec, 1), 2 * spec.n - 1)
        for j, value in coeffs.b.items():
            y = y + value * (top1 - pow_int(eta(spec, j), 2 * spec.n - 1))
    return y
