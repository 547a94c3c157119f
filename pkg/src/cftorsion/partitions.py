"""Admissible symmetric degree partitions for a target genus and torsion order.

The admissible quasi-period lengths come from ``g + m <= N <= m*g + 1``,
i.e. ``m`` runs over ``[ceil((N - 1) / g), N - g]``.  (Written the other way
round the interval would be empty for every g >= 2.)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EmptyRange
from .torsion import DegreeVector, degree_constraint_check


@dataclass(frozen=True, order=True)
class PartitionSpec:
    g: int
    N: int
    m: int
    deltas: tuple[int, ...]  # (delta_1, ..., delta_{m-1})

    def __post_init__(self):
        if len(self.deltas) != self.m - 1:
            raise ValueError(f"expected {self.m - 1} interior degrees, got {len(self.deltas)}")
        if sum(self.deltas) != self.N - self.g - 1:
            raise ValueError(f"degrees sum to {sum(self.deltas)}, not N - g - 1 = {self.N - self.g - 1}")

    @property
    def vector(self) -> DegreeVector:
        return DegreeVector.from_interior(self.g, self.deltas)

    def delta(self, i: int) -> int:
        """``delta_i`` for ``0 <= i <= m`` (both ends equal g + 1)."""
        return self.vector.delta(i)

    @classmethod
    def from_deltas(cls, g: int, deltas) -> "PartitionSpec":
        deltas = tuple(int(d) for d in deltas)
        return cls(g, g + 1 + sum(deltas), len(deltas) + 1, deltas)

    def label(self) -> str:
        return f"g={self.g} N={self.N} m={self.m} ({','.join(map(str, self.deltas))})"

    def to_record(self) -> dict:
        return {"g": self.g, "N": self.N, "m": self.m, "deltas": list(self.deltas)}

    @classmethod
    def from_record(cls, rec: dict) -> "PartitionSpec":
        return cls(rec["g"], rec["N"], rec["m"], tuple(rec["deltas"]))


def _check_target(g: int, N: int) -> None:
    if g < 2:
        raise ValueError("genus must be at least 2")
    if N < g + 1:
        raise ValueError("torsion order is at least g + 1")


def m_range(g: int, N: int) -> tuple[int, int]:
    _check_target(g, N)
    lo = -(-(N - 1) // g)
    hi = N - g
    if lo > hi:
        raise EmptyRange(f"no quasi-period length fits g={g}, N={N}")
    return lo, hi


def is_admissible(spec: PartitionSpec) -> bool:
    v = spec.vector
    if any(not 1 <= d <= spec.g for d in spec.deltas):
        return False
    if spec.deltas != spec.deltas[::-1]:
        return False
    return degree_constraint_check(v).ok


def _symmetric_tuples(length: int, total: int, g: int):
    """All palindromes of the given length with entries in [1, g] summing to ``total``."""
    half, odd = divmod(length, 2)
    for first in itertools.product(range(1, g + 1), repeat=half):
        mids = range(1, g + 1) if odd else (None,)
        for mid in mids:
            body = first + ((mid,) if odd else ()) + first[::-1]
            if sum(body) == total:
                yield body


def enumerate_partitions(g: int, N: int) -> list[PartitionSpec]:
    """Every admissible symmetric partition of ``N - g - 1``, ordered by (m, deltas)."""
    try:
        lo, hi = m_range(g, N)
    except EmptyRange:
        return []
    out = []
    for m in range(lo, hi + 1):
        for deltas in sorted(_symmetric_tuples(m - 1, N - g - 1, g)):
            spec = PartitionSpec(g, N, m, deltas)
            if is_admissible(spec):
                out.append(spec)
    return out
