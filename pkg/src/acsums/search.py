"""Finite search for almost-complex witnesses inside a coefficient box.

Two routes that must agree:

* brute force: every vector in [-B, B]^slots through the closed-form
  total Chern class;
* decomposed: c_{2n} is a sum of per-generator contributions (products of
  distinct generators vanish), so tabulate each generator's contribution
  and solve the target sum with a dynamic program over generators.

For even n the b_j slots couple generator 1 and generator j.  The factor
(1 + (2n-2)! (x_1^{2n-1} - x_j^{2n-1}))^{b_j} splits into
(1 + (2n-2)! b_j x_1^{2n-1}) on generator 1 and (1 - (2n-2)! b_j x_j^{2n-1})
on generator j, since squares of degree-(2n-1) terms exceed degree 2n.
Generator 1's table is therefore indexed by S = sum_j b_j as well.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ktheory import SacsCoefficients, sacs_slots
from .ring import series_mul, series_pow
from .topology import WitnessRecord, acs_criterion, invariants

__all__ = [
    "SearchBox",
    "SearchMode",
    "CeilingExceeded",
    "ContributionTable",
    "contribution_table",
    "local_contribution",
    "search_witnesses",
    "BRUTE_FORCE_CEILING",
    "DECOMPOSED_CEILING",
]

BRUTE_FORCE_CEILING = 10**7
DECOMPOSED_CEILING = 10**9


class CeilingExceeded(RuntimeError):
    """The box is larger than the configured candidate ceiling."""


class SearchMode(enum.Enum):
    BRUTE_FORCE = "brute"
    DECOMPOSED = "decomposed"


@dataclass(frozen=True)
class SearchBox:
    m: int
    n: int
    bound: int

    def __post_init__(self):
        invariants(self.m, self.n)
        if isinstance(self.bound, bool) or not isinstance(self.bound, int) or self.bound < 0:
            raise ValueError(f"bound must be a nonnegative integer, got {self.bound!r}")

    @property
    def slots(self) -> int:
        a_keys, b_keys = sacs_slots(self.m, self.n)
        return len(a_keys) + len(b_keys)

    @property
    def candidate_count(self) -> int:
        return (2 * self.bound + 1) ** self.slots

    def values(self) -> range:
        return range(-self.bound, self.bound + 1)


def _ratio_powers(n_max_k: int, bound: int, d: int) -> dict[tuple[int, int], list[int]]:
    # ((1 + kx) / (1 - kx))^a for |a| <= bound, as truncated integer series
    out = {}
    for k in range(1, n_max_k + 1):
        geom = [k**i for i in range(d + 1)]  # 1 / (1 - kx)
        ratio = series_mul([1, k], geom, d)
        inv = [(-1) ** i * c for i, c in enumerate(ratio)]  # x -> -x inverts it
        for a in range(-bound, bound + 1):
            out[(k, a)] = series_pow(ratio if a >= 0 else inv, abs(a), d)
    return out


def local_contribution(n: int, a: tuple[int, ...], coupling: int = 0) -> int:
    """Degree-2n coefficient of
    (1 - x)^{2n+1} prod_k ((1+kx)/(1-kx))^{a_k} (1 + coupling x^{2n-1})."""
    d = 2 * n
    series = [(-1) ** i * math.comb(2 * n + 1, i) for i in range(d + 1)]
    powers = _ratio_powers(len(a), max((abs(v) for v in a), default=0), d)
    for k, ak in enumerate(a, start=1):
        if ak:
            series = series_mul(series, powers[(k, ak)], d)
    return series[d] + coupling * series[1]


@dataclass(frozen=True)
class ContributionTable:
    """Per-generator maps from local tuples to degree-2n contributions.

    ``tables[0]`` is generator 1.  For odd n a local tuple is
    (a_j^1..a_j^n).  For even n generator 1 uses (a_1^1..a_1^n, S) with
    S = sum of the b_j, and generator j >= 2 uses (a_j^1..a_j^{n-1}, b_j).
    """

    box: SearchBox
    tables: tuple[dict[tuple[int, ...], int], ...]

    def entries(self) -> int:
        return sum(len(t) for t in self.tables)


def contribution_table(box: SearchBox) -> ContributionTable:
    m, n, bound = box.m, box.n, box.bound
    d = 2 * n
    vals = box.values()
    base0 = [(-1) ** i * math.comb(2 * n + 1, i) for i in range(d + 1)]
    powers = _ratio_powers(n, bound, d)

    def base_series(a: tuple[int, ...]) -> list[int]:
        s = base0
        for k, ak in enumerate(a, start=1):
            if ak:
                s = series_mul(s, powers[(k, ak)], d)
        return s

    if n % 2:
        table = {}
        for a in itertools.product(vals, repeat=n):
            table[a] = base_series(a)[d]
        return ContributionTable(box, tuple(table for _ in range(m)))

    fact = math.factorial(2 * n - 2)
    s_range = range(-(m - 1) * bound, (m - 1) * bound + 1)
    first: dict[tuple[int, ...], int] = {}
    for a in itertools.product(vals, repeat=n):
        s = base_series(a)
        for total_b in s_range:
            first[a + (total_b,)] = s[d] + fact * total_b * s[1]
    other: dict[tuple[int, ...], int] = {}
    for a in itertools.product(vals, repeat=n - 1):
        s = base_series(a)
        for b in vals:
            other[a + (b,)] = s[d] - fact * b * s[1]
    return ContributionTable(box, (first,) + tuple(other for _ in range(m - 1)))


def _assemble(box: SearchBox, locals_by_gen: dict[int, tuple[int, ...]]) -> SacsCoefficients:
    n = box.n
    a: dict[tuple[int, int], int] = {}
    b: dict[int, int] = {}
    for j, t in locals_by_gen.items():
        if n % 2:
            for k, v in enumerate(t, start=1):
                a[(j, k)] = v
        elif j == 1:
            for k, v in enumerate(t[:n], start=1):
                a[(1, k)] = v
        else:
            for k, v in enumerate(t[: n - 1], start=1):
                a[(j, k)] = v
            b[j] = t[n - 1]
    return SacsCoefficients(box.m, box.n, a, b)


def _decomposed(box: SearchBox, ceiling: int) -> list[WitnessRecord]:
    table = contribution_table(box)
    if table.entries() > ceiling:
        raise CeilingExceeded(f"{table.entries()} table entries exceed ceiling {ceiling}")
    m, n = box.m, box.n
    even = n % 2 == 0
    target = invariants(m, n).euler
    order = list(range(2, m + 1)) + [1]  # generator 1 closes the b-sum for even n

    # suffix feasibility: value range and reachable residues mod 4
    suffix_lo, suffix_hi, suffix_res = [0] * (m + 1), [0] * (m + 1), [None] * (m + 1)
    suffix_res[m] = {0}
    for pos in range(m - 1, -1, -1):
        vals = table.tables[order[pos] - 1].values()
        suffix_lo[pos] = suffix_lo[pos + 1] + min(vals)
        suffix_hi[pos] = suffix_hi[pos + 1] + max(vals)
        residues = {v % 4 for v in vals}
        suffix_res[pos] = {(r + s) % 4 for r in residues for s in suffix_res[pos + 1]}

    def feasible(pos: int, partial: int) -> bool:
        need = target - partial
        return (suffix_lo[pos] <= need <= suffix_hi[pos]
                and need % 4 in suffix_res[pos])

    # layers[pos]: state -> list of (previous state, local tuple); state = (sum, b-sum)
    layers: list[dict[tuple[int, int], list]] = []
    frontier = {(0, 0): []}
    for pos, j in enumerate(order[:-1]):
        nxt: dict[tuple[int, int], list] = {}
        items = table.tables[j - 1].items()
        for state in frontier:
            s, bs = state
            for local, contrib in items:
                new = (s + contrib, bs + (local[-1] if even else 0))
                if feasible(pos + 1, new[0]):
                    nxt.setdefault(new, []).append((state, local))
        layers.append(nxt)
        frontier = nxt

    finals = []
    for state in frontier:
        s, bs = state
        for local, contrib in table.tables[0].items():
            if s + contrib != target:
                continue
            if even and local[-1] != bs:
                continue
            finals.append((state, local))

    records = []
    for state, local1 in finals:
        for path in _paths(layers, len(layers) - 1, state):
            chosen = {1: local1}
            for j, loc in zip(order[:-1], path):
                chosen[j] = loc
            coeffs = _assemble(box, chosen)
            records.append(WitnessRecord(coeffs, target, target, True))
    return records


def _paths(layers, pos: int, state):
    if pos < 0:
        yield ()
        return
    for prev, local in layers[pos][state]:
        for head in _paths(layers, pos - 1, prev):
            yield head + (local,)


def _brute_chunk(args) -> list[tuple[int, ...]]:
    m, n, bound, first = args
    box = SearchBox(m, n, bound)
    hits = []
    for rest in itertools.product(box.values(), repeat=box.slots - 1):
        vec = (first,) + rest
        if acs_criterion(SacsCoefficients.from_vector(m, n, vec)).verdict:
            hits.append(vec)
    return hits


def _brute_force(box: SearchBox, ceiling: int, workers: int) -> list[WitnessRecord]:
    if box.candidate_count > ceiling:
        raise CeilingExceeded(f"{box.candidate_count} candidates exceed ceiling {ceiling}")
    chunks = [(box.m, box.n, box.bound, v) for v in box.values()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_brute_chunk, chunks))
    else:
        parts = [_brute_chunk(c) for c in chunks]
    chi = invariants(box.m, box.n).euler
    return [WitnessRecord(SacsCoefficients.from_vector(box.m, box.n, v), chi, chi, True)
            for part in parts for v in part]


def search_witnesses(box: SearchBox, mode: SearchMode | str = SearchMode.DECOMPOSED,
                     ceiling: int | None = None, workers: int = 1) -> list[WitnessRecord]:
    """All witnesses in ``box``, sorted lexicographically by coefficient vector."""
    mode = SearchMode(mode)
    if mode is SearchMode.BRUTE_FORCE:
        records = _brute_force(box, BRUTE_FORCE_CEILING if ceiling is None else ceiling, workers)
    else:
        records = _decomposed(box, DECOMPOSED_CEILING if ceiling is None else ceiling)
    records.sort(key=lambda r: r.coeffs.vector())
    return records
