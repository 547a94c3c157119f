"""Continuants of the purely periodic tail and the h_j sequence.

``p_j / q_j`` are the convergents of ``1 / (sqrt(f) - a_0) = [a_1; a_2, ...]``,
seeded with ``p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import Poly, poly_divrem, poly_gcd
from .errors import InexactDivision, ZeroDenominator
from .laurent import CFExpansion, SKEW_SIGN, cf_expand

# c_j = kappa ** (H_SIGN * (-1) ** j); with this choice h_1 = f - a_0^2.
H_SIGN = 1


def c_factor(kappa: Fraction, j: int, sign: int = H_SIGN) -> Fraction:
    return kappa ** (sign * (1 if j % 2 == 0 else -1))


@dataclass(frozen=True)
class ContinuantTable:
    p: tuple[Poly, ...]  # p[k] holds p_{k-2}
    q: tuple[Poly, ...]

    def P(self, j: int) -> Poly:
        if j < -2 or j + 2 >= len(self.p):
            raise IndexError(f"p_{j} not in table")
        return self.p[j + 2]

    def Q(self, j: int) -> Poly:
        if j < -2 or j + 2 >= len(self.q):
            raise IndexError(f"q_{j} not in table")
        return self.q[j + 2]

    @property
    def top(self) -> int:
        return len(self.p) - 3


def continuants(partial_quotients: Sequence[Poly]) -> ContinuantTable:
    """Table for the tail ``a_1, a_2, ...`` (pass the quotients from a_1 on)."""
    p = [Poly(), Poly([1])]
    q = [Poly([1]), Poly()]
    for a in partial_quotients:
        p.append(a * p[-1] + p[-2])
        q.append(a * q[-1] + q[-2])
    return ContinuantTable(tuple(p), tuple(q))


def tail_table(e: CFExpansion) -> ContinuantTable:
    return continuants(e.a[1:])


@dataclass(frozen=True)
class RationalValue:
    """A univariate rational function in lowest terms with monic denominator."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RationalValue":
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            return cls(Poly(), Poly([1]))
        g = poly_gcd(num, den)
        num, den = num / g, den / g
        lc = den.lc
        return cls(num / lc, den / lc)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def degree(self):
        return self.num.degree - self.den.degree

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __str__(self):
        if self.is_polynomial():
            return self.num.to_expr()
        return f"({self.num.to_expr()})/({self.den.to_expr()})"


def _rv_sub(a: RationalValue, b: RationalValue) -> RationalValue:
    return RationalValue.make(a.num * b.den - b.num * a.den, a.den * b.den)


@dataclass(frozen=True)
class HSequence:
    h: tuple[RationalValue, ...]  # h[0] is h_1

    def __getitem__(self, j: int) -> RationalValue:
        if j < 1:
            raise IndexError("h is indexed from 1")
        return self.h[j - 1]

    def __len__(self):
        return len(self.h)


def h_sequence(e: CFExpansion, t: ContinuantTable, sign: int = H_SIGN) -> HSequence:
    """h_1 ... h_m of a quasi-periodic expansion.

    Works with numerator/denominator pairs and reduces each h_j before it is
    fed into h_{j+1}.
    """
    if not e.is_periodic:
        raise ValueError("h sequence needs a periodic expansion")
    m, kappa = e.m, e.kappa
    P, Q = t.P, t.Q
    c = lambda j: c_factor(kappa, j, sign)
    hs = [RationalValue.make(Q(m - 1) * c(1), P(m - 2))]
    if m >= 2:
        h1 = hs[0]
        num = P(m - 4) * h1.num * c(2) - Q(m - 3) * h1.den if m >= 2 else None
        hs.append(RationalValue.make(num, P(m - 3) * h1.den))
    for j in range(3, m + 1):
        prev = hs[-1]
        # c_j (p_{j-3} h_{j-1} + q_{j-3}) p_{m-j-2} - p_{j-4} q_{m-j-1}, over p_{m-j-1} p_{j-4}
        inner = P(j - 3) * prev.num + Q(j - 3) * prev.den
        num = inner * P(m - j - 2) * c(j) - P(j - 4) * Q(m - j - 1) * prev.den
        den = P(m - j - 1) * P(j - 4) * prev.den
        hs.append(RationalValue.make(num, den))
    return HSequence(tuple(hs))


def h_alternate(e: CFExpansion, t: ContinuantTable, hs: HSequence, j: int) -> RationalValue:
    """Second expression for h_j (j >= 5) in terms of h_{j-2} and h_{j-1}."""
    if j < 5:
        raise ValueError("alternate formula needs j >= 5")
    P, Q, a = t.P, t.Q, e.a
    h2, h1 = hs[j - 2], hs[j - 1]
    d = h2.den * h1.den
    inner = P(j - 4) * h2.num * h1.den + Q(j - 4) * d - a[j - 1] * P(j - 5) * h1.num * h2.den
    num = P(j - 3) * inner - P(j - 5) * Q(j - 2) * d
    return RationalValue.make(num, P(j - 5) * P(j - 4) * d)


@dataclass
class Report:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{n}: {d}" if d else n for n, ok, d in self.checks if not ok]

    def to_text(self) -> str:
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {n}" + (f" ({d})" if d else "")
                         for n, ok, d in self.checks)


def h_property_check(e: CFExpansion, hs: HSequence, t: ContinuantTable | None = None) -> Report:
    t = t or tail_table(e)
    m = e.m
    g = e.genus
    delta = [e.a[j].degree for j in range(m + 1)]
    rep = Report()
    for j in range(1, m + 1):
        h = hs[j]
        rep.add(f"h_{j} is a polynomial", h.is_polynomial(), str(h))
        if not h.is_zero():
            rep.add(f"deg h_{j} >= 0", h.degree >= 0, f"deg = {h.degree}")
            expected = g + 1 - delta[1] if j == 1 else g + 1 - delta[j - 1] - delta[j]
            rep.add(f"deg h_{j} = {expected}", h.degree == expected, f"deg = {h.degree}")
        if j > 1:
            vanishes = g + 1 + delta[1] == delta[j - 1] + delta[j]
            rep.add(f"h_{j} = 0 iff top equality at j={j}", h.is_zero() == vanishes)
    if m > 1:
        rep.add("h_m = 0", hs[m].is_zero())
    if m >= 2:
        rep.add("h_2 = 0 iff m <= 2", hs[2].is_zero() == (m <= 2))
    for j in range(2, m):
        rep.add(f"h_{m + 1 - j} = h_{j}", hs[m + 1 - j] == hs[j])
    for j in range(5, m + 1):
        alt = h_alternate(e, t, hs, j)
        rep.add(f"alternate formula at j={j}", alt == hs[j], str(alt))
    if m > 2:
        for j in range(3, m // 2 + 1):
            three = hs[j].is_zero() and hs[j - 1].is_zero() and hs[j - 2].is_zero()
            rep.add(f"not all of h_{j-2}, h_{j-1}, h_{j} vanish", not three)
    return rep


def verify_first_difference(f: Poly, e: CFExpansion, t: ContinuantTable | None = None) -> Report:
    """``f - a_0^2 = q_{m-1} / (kappa p_{m-2}) = q_{n-1} / p_{n-2}`` and its degree and lc."""
    t = t or tail_table(e)
    m, n, kappa = e.m, e.n, e.kappa
    a0, a1 = e.a[0], e.a[1]
    diff = f - a0 * a0
    rep = Report()
    quot, rem = poly_divrem(t.Q(m - 1), t.P(m - 2) * kappa)
    if not rem.is_zero():
        raise InexactDivision("q_{m-1} is not divisible by kappa p_{m-2}")
    rep.add("f - a_0^2 = q_{m-1}/(kappa p_{m-2})", quot == diff, diff.to_expr())
    if t.top >= n - 1:
        qn, rn = poly_divrem(t.Q(n - 1), t.P(n - 2))
        if not rn.is_zero():
            raise InexactDivision("q_{n-1} is not divisible by p_{n-2}")
        rep.add("f - a_0^2 = q_{n-1}/p_{n-2}", qn == diff)
    g = e.genus
    rep.add("deg(f - a_0^2) = g+1-deg a_1", diff.degree == g + 1 - a1.degree, f"deg = {diff.degree}")
    rep.add("lc(f - a_0^2) = 2/lc(a_1)", diff.lc == 2 / a1.lc, f"lc = {diff.lc}")
    return rep


def _g_u(u: Fraction) -> Poly:
    return Poly([64 * u * u + 1, -4 * (1 + 6 * u + 16 * u * u), 8 * (1 + 6 * u + 2 * u * u),
                 -(10 + 32 * u), 8 * (1 + u), -4, 1])


def conventions_passing(u: Fraction = Fraction(2)) -> list[int]:
    """Which sign choices for c_j make the h-sequence checks pass on G_u."""
    e = cf_expand(_g_u(Fraction(u)))
    t = tail_table(e)
    return [s for s in (1, -1) if h_property_check(e, h_sequence(e, t, s), t).ok]


@functools.cache
def assert_calibrated() -> None:
    passing = conventions_passing()
    if passing != [H_SIGN]:
        raise AssertionError(f"c_j convention {H_SIGN} does not match calibration {passing}")
    if SKEW_SIGN != H_SIGN:
        raise AssertionError("skew and h conventions disagree")
