"""Square roots in Q((1/x)) and the continued fraction of sqrt(f).

The expansion runs on exact surd states ``(P + sqrt f) / Q``: the partial
quotient is ``(P + A) // Q`` where ``A`` is the polynomial part of sqrt(f),
because the discarded tail of sqrt(f) has negative degree.  No truncated
series ever enters the recursion.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Poly, format_rational, parse_rational, rational_sqrt
from .errors import (FormViolation, NonSquareLeadingCoefficient, OddDegree,
                     PerfectSquare)

# a_{m-j} = kappa ** (SKEW_SIGN * (-1) ** j) * a_j inside a quasi-period.
# Fixed by expanding the G_u family (a_6 = a_1 / u, a_5 = u * a_2, a_4 = a_3 / u).
SKEW_SIGN = 1

DEFAULT_MAX_STEPS = 100


def skew_factor(kappa: Fraction, j: int, sign: int = SKEW_SIGN) -> Fraction:
    """The unit c with ``a_{m-j} = c * a_j``."""
    return kappa ** (sign * (1 if j % 2 == 0 else -1))


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated element of Q((1/x)); ``coefficients[k]`` multiplies x^(top_degree - k)."""

    top_degree: int
    coefficients: tuple[Fraction, ...]
    precision_floor: int

    def coefficient(self, exponent: int) -> Fraction:
        if exponent < self.precision_floor:
            raise ValueError(f"x^{exponent} lies below the precision floor {self.precision_floor}")
        k = self.top_degree - exponent
        if k < 0 or k >= len(self.coefficients):
            return Fraction(0)
        return self.coefficients[k]

    def polynomial_part(self) -> Poly:
        if self.precision_floor > 0:
            raise ValueError("polynomial part needs precision down to x^0")
        if self.top_degree < 0:
            return Poly()
        return Poly(self.coefficient(e) for e in range(self.top_degree + 1))

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        top = self.top_degree + other.top_degree
        floor = max(self.precision_floor + other.top_degree,
                    other.precision_floor + self.top_degree)
        out = []
        for e in range(top, floor - 1, -1):
            s = Fraction(0)
            for i, c in enumerate(self.coefficients):
                # x^(top - i) times x^(e - top + i) from the other factor
                j = other.top_degree - (e - (self.top_degree - i))
                if 0 <= j < len(other.coefficients):
                    s += c * other.coefficients[j]
            out.append(s)
        return LaurentSeries(top, tuple(out), floor)

    def to_expr(self, var: str = "x") -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                e = self.top_degree - k
                terms.append(f"{format_rational(c)}*{var}^{e}")
        return " + ".join(terms) + f" + O({var}^{self.precision_floor - 1})"


def sqrt_series(f: Poly, floor: int) -> LaurentSeries:
    """Square root of ``f`` in Q((1/x)), exact for exponents >= ``floor``.

    The branch with positive leading coefficient is returned.
    """
    if f.is_zero():
        raise ValueError("square root of the zero polynomial")
    if f.degree % 2:
        raise OddDegree(f"degree {f.degree} is odd")
    s0 = rational_sqrt(f.lc)
    if s0 is None or s0 == 0:
        raise NonSquareLeadingCoefficient(f"leading coefficient {format_rational(f.lc)} is not a rational square")
    d = f.degree // 2
    count = d - floor + 1
    if count <= 0:
        return LaurentSeries(d, (), floor)
    s = [s0]
    two_s0 = 2 * s0
    for k in range(1, count):
        target = f.coeff(2 * d - k)
        acc = sum((s[i] * s[k - i] for i in range(1, k)), Fraction(0))
        s.append((target - acc) / two_s0)
    return LaurentSeries(d, tuple(s), floor)


def sqrt_polynomial_part(f: Poly) -> Poly:
    return sqrt_series(f, 0).polynomial_part()


@dataclass(frozen=True)
class SurdState:
    """The complete quotient ``(P + sqrt f) / Q``; Q always divides f - P^2."""

    P: Poly
    Q: Poly
    f: Poly = field(repr=False)

    def __post_init__(self):
        if self.Q.is_zero() or not (self.f - self.P * self.P) % self.Q == Poly():
            raise ArithmeticError("surd state invariant broken: Q does not divide f - P^2")

    def partial_quotient(self, root_part: Poly) -> Poly:
        return (self.P + root_part) // self.Q

    def advance(self, a: Poly) -> "SurdState":
        P = a * self.Q - self.P
        Q = (self.f - P * P) / self.Q
        return SurdState(P, Q, self.f)


class Status(str, enum.Enum):
    QUASI_PERIODIC = "QuasiPeriodic"
    PERIODIC = "Periodic"
    BUDGET_EXCEEDED = "BudgetExceeded"
    TERMINATED = "Terminated"


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients of sqrt(f).

    When (quasi-)periodic, ``a`` holds ``a_0 ... a_n`` (one full period after
    ``a_0``), ``m`` the quasi-period length, ``kappa`` the skew value and
    ``n`` the period length.
    """

    a: tuple[Poly, ...]
    m: int | None
    kappa: Fraction | None
    n: int | None
    status: Status
    radicand: Poly | None = None

    @property
    def is_periodic(self) -> bool:
        return self.status in (Status.PERIODIC, Status.QUASI_PERIODIC)

    @property
    def genus(self) -> int:
        return self.a[0].degree - 1

    def degrees(self) -> tuple[int, ...]:
        """Degrees ``(deg a_0, ..., deg a_{m-1})``."""
        if self.m is None:
            raise ValueError("expansion is not periodic")
        return tuple(p.degree for p in self.a[: self.m])

    def to_record(self) -> dict:
        return {
            "a": [p.to_strings() for p in self.a],
            "m": self.m,
            "kappa": None if self.kappa is None else format_rational(self.kappa),
            "n": self.n,
            "status": self.status.value,
        }

    @classmethod
    def from_record(cls, rec: dict, radicand: Poly | None = None) -> "CFExpansion":
        return cls(
            a=tuple(Poly.from_strings(c) for c in rec["a"]),
            m=rec["m"],
            kappa=None if rec["kappa"] is None else parse_rational(rec["kappa"]),
            n=rec["n"],
            status=Status(rec["status"]),
            radicand=radicand,
        )

    def to_text(self) -> str:
        lines = [f"status: {self.status.value}"]
        if self.is_periodic:
            lines.append(f"m: {self.m}")
            lines.append(f"kappa: {format_rational(self.kappa)}")
            lines.append(f"n: {self.n}")
        for i, p in enumerate(self.a):
            lines.append(f"a_{i}: {p.to_expr()}")
        return "\n".join(lines)


def cf_expand(f: Poly, max_steps: int = DEFAULT_MAX_STEPS) -> CFExpansion:
    """Continued fraction expansion of sqrt(f) in Q((1/x)).

    The quasi-period is declared at the first ``i >= 1`` with constant
    ``Q_i``; then ``a_i = 2 * kappa * a_0`` with ``kappa = 1 / Q_i``.
    """
    root = sqrt_polynomial_part(f)
    if f == root * root:
        raise PerfectSquare("radicand is a perfect square; the expansion terminates")
    state = SurdState(Poly(), Poly([1]), f)
    quotients = []
    m = None
    for i in range(max_steps + 1):
        a = state.partial_quotient(root)
        quotients.append(a)
        if i >= 1 and state.Q.degree == 0:
            m = i
            break
        state = state.advance(a)
    if m is None:
        return CFExpansion(tuple(quotients), None, None, None, Status.BUDGET_EXCEEDED, f)

    a0, am = quotients[0], quotients[m]
    kappa = am.lc / (2 * a0.lc)
    if am != a0 * (2 * kappa):
        raise FormViolation(m, "constant Q_m but a_m is not a scalar multiple of a_0")
    if kappa == 1:
        return CFExpansion(tuple(quotients), m, kappa, m, Status.PERIODIC, f)
    for _ in range(m):
        state = state.advance(quotients[-1])
        quotients.append(state.partial_quotient(root))
    if quotients[2 * m] != 2 * a0:
        raise FormViolation(2 * m, "period does not close with 2*a_0")
    return CFExpansion(tuple(quotients), m, kappa, 2 * m, Status.QUASI_PERIODIC, f)


@dataclass
class PeriodFormReport:
    m: int
    kappa: Fraction
    checks: list[tuple[str, bool]]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def to_text(self) -> str:
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks)


def verify_period_form(e: CFExpansion, sign: int = SKEW_SIGN) -> PeriodFormReport:
    """Check the canonical shape of a periodic expansion of sqrt(f).

    Raises :class:`FormViolation` at the first failing index.
    """
    if not e.is_periodic:
        raise ValueError(f"expansion status is {e.status.value}, not periodic")
    a, m, kappa = e.a, e.m, e.kappa
    g = a[0].degree - 1
    checks = []
    for j in range(1, m):
        lo, hi = min(j, m - j), max(j, m - j)
        c = skew_factor(kappa, lo, sign)
        if a[hi] != a[lo] * c:
            raise FormViolation(lo, f"a_{hi} != {format_rational(c)} * a_{lo}")
        if not 1 <= a[j].degree <= g:
            raise FormViolation(j, f"deg a_{j} = {a[j].degree} outside [1, {g}]")
    checks.append(("interior skew symmetry", True))
    checks.append(("interior degrees in [1, g]", True))
    if a[m] != a[0] * (2 * kappa):
        raise FormViolation(m, "a_m != 2*kappa*a_0")
    checks.append(("a_m = 2*kappa*a_0", True))
    if kappa != 1:
        if m % 2 == 0:
            raise FormViolation(m, "strict quasi-period length must be odd")
        if len(a) < 2 * m + 1:
            raise FormViolation(m + 1, "full period not stored")
        for j in range(1, m):
            if a[m + j] != a[m - j]:
                raise FormViolation(m + j, f"a_{m + j} != a_{m - j}")
        if a[2 * m] != 2 * a[0]:
            raise FormViolation(2 * m, "period does not end with 2*a_0")
        checks.append(("second half mirrors the first and ends with 2*a_0", True))
        checks.append(("m odd", True))
    return PeriodFormReport(m, kappa, checks)
