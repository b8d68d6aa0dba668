"""Exact arithmetic in the truncated quotient ring L[g_1, ..., g_m] / R_d.

R_d is generated by g_i * g_j (i != j), g_i^d - g_j^d and g_j^(d+1). An
element is stored as a constant term plus, for every generator, the
coefficients of g_j, g_j^2, ..., g_j^d.  The degree-d entries are *shares*
of the single top class: g_1^d = ... = g_m^d in the quotient, so only their
sum (``top``) is part of the value.  Equality and hashing look at
``(c0, lower, top)`` only.

Keeping the shares costs nothing (every ring operation is computed
generator by generator anyway) and makes restriction to one generator a
well-defined operation on the lift ``(+)_j L[g_j]/(g_j^(d+1))``.  When an
element is built from a bare ``top`` value, the share is attributed to
g_1, i.e. the top class is represented by g_1^d.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "Domain",
    "RingSpec",
    "RingError",
    "SpecMismatchError",
    "NotAUnitError",
    "TruncatedClass",
    "generator",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "pow_int",
    "invert_unit",
    "coefficient_of",
    "restrict_to_generator",
    "homogeneous_part",
    "substitute",
    "series_mul",
    "series_pow",
]


class RingError(ValueError):
    """Invalid ring parameters, indices or degrees."""


class SpecMismatchError(RingError):
    """Operands live in different rings."""


class NotAUnitError(RingError, ArithmeticError):
    """The element (or scalar) has no inverse in the coefficient domain."""


class Domain(enum.Enum):
    INTEGER = "integer"
    RATIONAL = "rational"


@dataclass(frozen=True)
class RingSpec:
    """Parameters of one quotient ring: ``m`` generators, top degree ``d``."""

    m: int
    d: int
    domain: Domain = Domain.INTEGER

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise RingError(f"m must be a positive integer, got {self.m!r}")
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise RingError(f"d must be a positive integer, got {self.d!r}")
        if not isinstance(self.domain, Domain):
            object.__setattr__(self, "domain", Domain(self.domain))

    def scalar(self, value) -> Scalar:
        """Coerce ``value`` into the coefficient domain, exactly."""
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value if self.domain is Domain.INTEGER else Fraction(value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Rational):
            value = Fraction(value)
            if self.domain is Domain.RATIONAL:
                return value
            if value.denominator != 1:
                raise RingError(f"{value} is not an integer")
            return value.numerator
        raise TypeError(f"unsupported scalar type {type(value).__name__}")

    def invert_scalar(self, value: Scalar) -> Scalar:
        if self.domain is Domain.INTEGER:
            if value not in (1, -1):
                raise NotAUnitError(f"{value} is not a unit in Z")
            return value
        if value == 0:
            raise NotAUnitError("0 is not invertible")
        return 1 / Fraction(value)

    def with_domain(self, domain: Domain) -> "RingSpec":
        return RingSpec(self.m, self.d, domain)

    def check_generator(self, j: int) -> None:
        if isinstance(j, bool) or not isinstance(j, int) or not 1 <= j <= self.m:
            raise RingError(f"generator index {j!r} out of range 1..{self.m}")


class TruncatedClass:
    """An immutable element of L[g_1..g_m]/R_d in canonical form."""

    __slots__ = ("spec", "c0", "_parts", "_hash")

    def __init__(self, spec: RingSpec, c0: Scalar = 0,
                 parts: Mapping[int, Sequence[Scalar]] | None = None):
        # ``parts`` maps j -> coefficients of g_j^1..g_j^d (length d)
        self.spec = spec
        self.c0 = spec.scalar(c0)
        clean: dict[int, tuple] = {}
        if parts:
            d = spec.d
            for j, coeffs in parts.items():
                spec.check_generator(j)
                coeffs = tuple(spec.scalar(c) for c in coeffs)
                if len(coeffs) != d:
                    raise RingError(f"generator {j}: expected {d} coefficients, got {len(coeffs)}")
                if any(coeffs):
                    clean[j] = coeffs
        self._parts = clean
        self._hash = None

    @classmethod
    def _raw(cls, spec: RingSpec, c0, parts: dict) -> "TruncatedClass":
        # trusted constructor: scalars already in-domain, tuples of length d
        obj = object.__new__(cls)
        obj.spec = spec
        obj.c0 = c0
        obj._parts = {j: v for j, v in parts.items() if any(v)}
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, spec: RingSpec, c0: Scalar = 0,
                   lower: Mapping[tuple[int, int], Scalar] | None = None,
                   top: Scalar = 0) -> "TruncatedClass":
        """Build from a degree-0 term, ``{(j, k): coeff}`` for 1 <= k < d, and ``top``."""
        d = spec.d
        rows: dict[int, list] = {}
        for (j, k), value in (lower or {}).items():
            spec.check_generator(j)
            if not 1 <= k < d:
                raise RingError(f"lower degree {k} outside 1..{d - 1}")
            rows.setdefault(j, [0] * d)[k - 1] += spec.scalar(value)
        top = spec.scalar(top)
        if top:
            rows.setdefault(1, [0] * d)[d - 1] += top
        return cls(spec, c0, rows)

    @classmethod
    def zero(cls, spec: RingSpec) -> "TruncatedClass":
        return cls._raw(spec, spec.scalar(0), {})

    @classmethod
    def one(cls, spec: RingSpec) -> "TruncatedClass":
        return cls._raw(spec, spec.scalar(1), {})

    @classmethod
    def constant(cls, spec: RingSpec, value: Scalar) -> "TruncatedClass":
        return cls._raw(spec, spec.scalar(value), {})

    @classmethod
    def top_class(cls, spec: RingSpec, j: int = 1) -> "TruncatedClass":
        """The generator of the top degree, represented as g_j^d."""
        spec.check_generator(j)
        row = [spec.scalar(0)] * spec.d
        row[-1] = spec.scalar(1)
        return cls._raw(spec, spec.scalar(0), {j: tuple(row)})

    @property
    def lower(self) -> dict[tuple[int, int], Scalar]:
        out = {}
        for j in sorted(self._parts):
            for k, c in enumerate(self._parts[j][:-1], start=1):
                if c:
                    out[(j, k)] = c
        return out

    @property
    def top(self) -> Scalar:
        return sum((v[-1] for v in self._parts.values()), self.spec.scalar(0))

    @property
    def top_shares(self) -> dict[int, Scalar]:
        """Per-generator contributions to ``top`` (they sum to ``top``)."""
        return {j: v[-1] for j, v in sorted(self._parts.items()) if v[-1]}

    def parts(self) -> dict[int, tuple]:
        """Copy of the per-generator coefficient rows (degrees 1..d)."""
        return dict(self._parts)

    def is_zero(self) -> bool:
        return not self.c0 and not self.lower and not self.top

    def is_unit(self) -> bool:
        try:
            self.spec.invert_scalar(self.c0)
        except NotAUnitError:
            return False
        return True

    def _key(self):
        return (self.spec, self.c0, tuple(self.lower.items()), self.top)

    def __eq__(self, other):
        if isinstance(other, TruncatedClass):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)):
            return not self.lower and not self.top and self.c0 == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"TruncatedClass({self.spec.m}, {self.spec.d}, {self.format()})"

    def __str__(self):
        return self.format()

    def format(self, name: str = "g") -> str:
        terms = []
        if self.c0:
            terms.append((self.c0, "1"))
        for (j, k), c in self.lower.items():
            terms.append((c, f"{name}{j}" if k == 1 else f"{name}{j}^{k}"))
        if self.top:
            d = self.spec.d
            terms.append((self.top, f"{name}1" if d == 1 else f"{name}1^{d}"))
        if not terms:
            return "0"
        out = []
        for i, (c, mono) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = str(mag) if mono == "1" else (mono if mag == 1 else f"{mag}*{mono}")
            out.append(("-" + body if sign == "-" else body) if i == 0 else f" {sign} {body}")
        return "".join(out)

    def to_dict(self) -> dict:
        """JSON-ready form; coefficients are decimal strings (``p/q`` over Q)."""
        return {
            "m": self.spec.m,
            "d": self.spec.d,
            "domain": self.spec.domain.value,
            "c0": str(self.c0),
            "terms": [[j, k, str(c)] for (j, k), c in self.lower.items()],
            "top": str(self.top),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TruncatedClass":
        spec = RingSpec(int(data["m"]), int(data["d"]), Domain(data.get("domain", "integer")))
        lower: dict[tuple[int, int], Scalar] = {}
        for j, k, c in data.get("terms", []):
            key = (int(j), int(k))
            if key in lower:
                raise RingError(f"duplicate term {key}")
            lower[key] = Fraction(c)
        return cls.from_terms(spec, Fraction(data.get("c0", "0")), lower,
                              Fraction(data.get("top", "0")))

    def to_domain(self, domain: Domain) -> "TruncatedClass":
        """Same element over another coefficient domain (raises if not integral)."""
        return TruncatedClass(self.spec.with_domain(domain), self.c0, self._parts)

    def _coerce(self, other) -> "TruncatedClass":
        if isinstance(other, TruncatedClass):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedClass.constant(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, TruncatedClass):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return pow_int(self, e)


def _same_spec(a: TruncatedClass, b: TruncatedClass) -> RingSpec:
    if a.spec != b.spec:
        raise SpecMismatchError(f"{a.spec} vs {b.spec}")
    return a.spec


def generator(spec: RingSpec, j: int) -> TruncatedClass:
    """The degree-one class g_j (for d = 1 this is the top class)."""
    spec.check_generator(j)
    row = [spec.scalar(0)] * spec.d
    row[0] = spec.scalar(1)
    return TruncatedClass._raw(spec, spec.scalar(0), {j: tuple(row)})


def add(a: TruncatedClass, b: TruncatedClass) -> TruncatedClass:
    spec = _same_spec(a, b)
    parts = dict(a._parts)
    for j, v in b._parts.items():
        u = parts.get(j)
        parts[j] = v if u is None else tuple(x + y for x, y in zip(u, v))
    return TruncatedClass._raw(spec, a.c0 + b.c0, parts)


def neg(a: TruncatedClass) -> TruncatedClass:
    return TruncatedClass._raw(a.spec, -a.c0, {j: tuple(-x for x in v) for j, v in a._parts.items()})


def sub(a: TruncatedClass, b: TruncatedClass) -> TruncatedClass:
    return add(a, neg(b))


def scale(a: TruncatedClass, c: Scalar) -> TruncatedClass:
    c = a.spec.scalar(c)
    return TruncatedClass._raw(a.spec, c * a.c0, {j: tuple(c * x for x in v) for j, v in a._parts.items()})


def mul(a: TruncatedClass, b: TruncatedClass) -> TruncatedClass:
    spec = _same_spec(a, b)
    d = spec.d
    zero = spec.scalar(0)
    parts = {}
    for j in a._parts.keys() | b._parts.keys():
        u = a._parts.get(j)
        v = b._parts.get(j)
        row = [zero] * d
        if u is not None:
            for i in range(d):
                row[i] += b.c0 * u[i]
        if v is not None:
            for i in range(d):
                row[i] += a.c0 * v[i]
        if u is not None and v is not None:
            # g^(p+1) * g^(q+1) lands at index p + q + 1
            for p in range(d - 1):
                up = u[p]
                if not up:
                    continue
                for q in range(d - 2 - p + 1):
                    if v[q]:
                        row[p + q + 1] += up * v[q]
        parts[j] = tuple(row)
    return TruncatedClass._raw(spec, a.c0 * b.c0, parts)


def invert_unit(a: TruncatedClass) -> TruncatedClass:
    """Inverse of a unit via the finite geometric series in its nilpotent part."""
    spec = a.spec
    inv_c0 = spec.invert_scalar(a.c0)
    d = spec.d
    # a = c0 (1 + N) with N = sum_j N_j and N_i N_j = 0, so
    # 1 / (1 + N) = 1 + sum_j (sum_{i=1..d} (-N_j)^i); each inner sum is a
    # univariate recurrence b_k = -sum_i w_i b_{k-i}
    parts = {}
    for j, row in a._parts.items():
        w = [inv_c0 * c for c in row]
        b = [1]
        for k in range(1, d + 1):
            b.append(-sum(w[i - 1] * b[k - i] for i in range(1, k + 1) if w[i - 1]))
        parts[j] = tuple(spec.scalar(inv_c0 * c) for c in b[1:])
    return TruncatedClass._raw(spec, inv_c0, parts)


def pow_int(a: TruncatedClass, e: int) -> TruncatedClass:
    """``a**e``; negative exponents require ``a`` to be a unit."""
    if isinstance(e, bool) or not isinstance(e, int):
        raise TypeError("exponent must be an integer")
    if e < 0:
        return pow_int(invert_unit(a), -e)
    result = TruncatedClass.one(a.spec)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def coefficient_of(a: TruncatedClass, j: int, k: int) -> Scalar:
    """Coefficient of g_j^k; ``k = 0`` gives the constant and ``k = d`` the shared top."""
    d = a.spec.d
    if not 0 <= k <= d:
        raise RingError(f"degree {k} outside 0..{d}")
    if k == 0:
        return a.c0
    if k == d:
        return a.top
    a.spec.check_generator(j)
    row = a._parts.get(j)
    return row[k - 1] if row is not None else a.spec.scalar(0)


def restrict_to_generator(a: TruncatedClass, j: int) -> list[Scalar]:
    """Coefficients (degrees 0..d) after sending every g_i, i != j, to zero.

    The degree-d entry is generator j's share of the top class.
    """
    a.spec.check_generator(j)
    row = a._parts.get(j)
    if row is None:
        return [a.c0] + [a.spec.scalar(0)] * a.spec.d
    return [a.c0, *row]


def homogeneous_part(a: TruncatedClass, k: int) -> TruncatedClass:
    """The degree-k component of ``a``."""
    d = a.spec.d
    if not 0 <= k <= d:
        raise RingError(f"degree {k} outside 0..{d}")
    zero = a.spec.scalar(0)
    if k == 0:
        return TruncatedClass._raw(a.spec, a.c0, {})
    parts = {}
    for j, v in a._parts.items():
        if v[k - 1]:
            row = [zero] * d
            row[k - 1] = v[k - 1]
            parts[j] = tuple(row)
    return TruncatedClass._raw(a.spec, zero, parts)


def series_mul(u: Sequence[Scalar], v: Sequence[Scalar], d: int) -> list[Scalar]:
    """Product of two univariate series, truncated after degree ``d``."""
    out = [0] * (d + 1)
    for p, x in enumerate(u[: d + 1]):
        if not x:
            continue
        for q in range(min(len(v), d + 1 - p)):
            if v[q]:
                out[p + q] += x * v[q]
    return out


def series_pow(u: Sequence[Scalar], e: int, d: int) -> list[Scalar]:
    """Non-negative power of a univariate series, truncated after degree ``d``."""
    if e < 0:
        raise ValueError("series_pow needs e >= 0; invert first")
    result = [1] + [0] * d
    base = list(u[: d + 1]) + [0] * max(0, d + 1 - len(u))
    while e:
        if e & 1:
            result = series_mul(result, base, d)
        e >>= 1
        if e:
            base = series_mul(base, base, d)
    return result


def substitute(a: TruncatedClass, images: Mapping[int, Sequence[Scalar]] | Iterable[Sequence[Scalar]],
               target: RingSpec | None = None) -> TruncatedClass:
    """Apply the ring map g_j -> images[j], where each image is a univariate
    series in g_j (degrees 0..d) with zero constant term.

    Such maps send each generator into its own summand, so they are
    well-defined on R_d.  ``target`` defaults to ``a.spec`` and may change
    the coefficient domain only.
    """
    target = target or a.spec
    if (target.m, target.d) != (a.spec.m, a.spec.d):
        raise SpecMismatchError("substitution must preserve m and d")
    if not isinstance(images, Mapping):
        images = dict(enumerate(images, start=1))
    d = target.d
    zero = target.scalar(0)
    parts = {}
    for j, row in a._parts.items():
        img = [target.scalar(c) for c in images[j]]
        if img[0]:
            raise RingError("substituted image must have zero constant term")
        acc = [zero] * (d + 1)
        power = [target.scalar(1)] + [zero] * d
        for k in range(1, d + 1):
            power = series_mul(power, img, d)
            c = row[k - 1]
            if c:
                for i in range(k, d + 1):
                    acc[i] += c * power[i]
        parts[j] = tuple(acc[1:])
    return TruncatedClass._raw(target, target.scalar(a.c0), parts)
