"""Torsion order of the divisor at infinity and the degree constraints.

A periodic expansion with ``deg a_0 = g + 1`` gives order
``N = g + 1 + sum(deg a_i for 1 <= i < m)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GenusMismatch, NotPeriodic
from .laurent import CFExpansion


@dataclass(frozen=True)
class DegreeVector:
    """``deltas = (delta_0, ..., delta_{m-1})`` with ``delta_0 = g + 1``."""

    g: int
    deltas: tuple[int, ...]

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be at least 1")
        if not self.deltas or self.deltas[0] != self.g + 1:
            raise ValueError(f"delta_0 must equal g + 1 = {self.g + 1}")

    @classmethod
    def from_interior(cls, g: int, interior) -> "DegreeVector":
        return cls(g, (g + 1, *interior))

    @property
    def m(self) -> int:
        return len(self.deltas)

    @property
    def interior(self) -> tuple[int, ...]:
        return self.deltas[1:]

    @property
    def order(self) -> int:
        return sum(self.deltas)

    def delta(self, j: int) -> int:
        """``delta_j`` for ``0 <= j <= m``; ``delta_m = g + 1`` closes the quasi-period."""
        if j == self.m:
            return self.g + 1
        return self.deltas[j]

    @property
    def delta1(self) -> int:
        return self.delta(1)


def torsion_order(e: CFExpansion, g: int) -> int:
    if not e.is_periodic:
        raise NotPeriodic(f"expansion status is {e.status.value}")
    if e.a[0].degree != g + 1:
        raise GenusMismatch(f"deg a_0 = {e.a[0].degree} but g + 1 = {g + 1}")
    return g + 1 + sum(e.a[i].degree for i in range(1, e.m))


def degree_vector(e: CFExpansion) -> DegreeVector:
    if not e.is_periodic:
        raise NotPeriodic(f"expansion status is {e.status.value}")
    return DegreeVector(e.genus, e.degrees())


@dataclass
class Verdict:
    items: list[tuple[str, bool, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.items.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    @property
    def violations(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, ok, detail in self.items if not ok]

    def to_text(self) -> str:
        lines = [f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
                 for name, ok, detail in self.items]
        lines += [f"WARN {w}" for w in self.warnings]
        return "\n".join(lines)


def top_equalities(v: DegreeVector) -> list[bool]:
    """``eq[j]`` is True when ``delta_{j-1} + delta_j = g + 1 + delta_1`` (index 0 unused)."""
    top = v.g + 1 + v.delta1
    return [False] + [v.delta(j - 1) + v.delta(j) == top for j in range(1, v.m + 1)]


def degree_constraint_check(v: DegreeVector) -> Verdict:
    g, m = v.g, v.m
    out = Verdict()
    for i in range(1, m):
        d = v.deltas[i]
        out.add(f"1 <= delta_{i} <= g", 1 <= d <= g, f"delta_{i} = {d}")
    for i in range(1, m):
        out.add(f"delta_{m - i} = delta_{i}", v.deltas[m - i] == v.deltas[i])

    top = g + 1 + v.delta1
    eq = top_equalities(v)
    for j in range(1, m + 1):
        s = v.delta(j - 1) + v.delta(j)
        out.add(f"(i) j={j}: delta_{j-1}+delta_{j} <= g+1+delta_1", s <= top, f"{s} vs {top}")
        if not eq[j]:
            out.add(f"(iii) j={j}: delta_{j-1}+delta_{j} <= g+1", s <= g + 1, f"{s} vs {g + 1}")
    out.add("(i) equality at j=m", eq[m])
    for j in range(3, m // 2 + 1):
        three = eq[j - 2] and eq[j - 1] and eq[j]
        out.add(f"(ii) j={j}: no three consecutive equalities", not three)
    for j in range(2, m // 2 + 1):
        if eq[j - 1] and eq[j] and j - 1 >= 2:
            out.warnings.append(f"equality at two consecutive j = {j - 1}, {j} (expected never to occur)")

    N = v.order
    out.add("(iv) g+m <= N <= m*g+1", g + m <= N <= m * g + 1, f"N = {N}")
    if g > 1 and m > 2:
        out.add("(iv) N < 1+m*g", N < 1 + m * g, f"N = {N}")
    return out
