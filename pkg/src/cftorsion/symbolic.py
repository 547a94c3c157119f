"""Symbolic search for curves with a prescribed degree partition.

For a partition ``(delta_1, ..., delta_{m-1})`` the unknowns are

* ``r_j``: coefficients of the monic ``a_0 = x^{g+1} + sum r_j x^j``;
* ``c_i_j``: coefficients of ``a_i`` for ``1 <= i <= m // 2`` (the rest of the
  quasi-period mirrors these with alternating powers of ``kappa``);
* ``b_j``: lower coefficients of ``h_1 = (2 / c_{1,delta_1}) x^{g+1-delta_1} + ...``;
* ``kappa``: the skew value (fixed to 1 when ``m`` is even).

The identity ``kappa p_{m-2} h_1 - q_{m-3} - 2 kappa a_0 q_{m-2} = 0`` is
expanded in ``x``; its coefficients are the equations.  Leading coefficients
``c_{i,delta_i}`` and ``kappa`` are known to be nonzero ("flagged"), so a
monomial in them is a unit and may be divided by.  Elimination works from the
highest power of ``x`` down, solving each equation for a variable that occurs
linearly with a unit coefficient.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import Poly, format_rational, rational_root
from .errors import (ConstraintViolated, InexactDivision, NonvanishingViolated,
                     RoundTripFailed)
from .laurent import SKEW_SIGN, cf_expand, skew_factor
from .multipoly import MultiPoly, RationalFunction, var_sort_key
from .partitions import PartitionSpec
from .torsion import torsion_order

KAPPA = "kappa"

DEFAULT_POOL: tuple[Fraction, ...] = tuple(
    Fraction(v) for v in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, Fraction(1, 3))
)


def r_name(j: int) -> str:
    return f"r_{j}"


def b_name(j: int) -> str:
    return f"b_{j}"


def c_name(i: int, j: int) -> str:
    return f"c_{i}_{j}"


def parse_c_name(name: str) -> tuple[int, int] | None:
    parts = name.split("_")
    if len(parts) == 3 and parts[0] == "c":
        return int(parts[1]), int(parts[2])
    return None


@dataclass(frozen=True)
class SymbolicSystem:
    spec: PartitionSpec
    variables: tuple[str, ...]
    flagged: frozenset[str]
    a0: MultiPoly
    a: dict  # i -> MultiPoly in x for 1 <= i <= m - 1
    kappa: MultiPoly
    h1: MultiPoly
    J: MultiPoly
    equations: tuple[tuple[int, MultiPoly], ...]  # (power of x, coefficient), descending

    @property
    def m(self) -> int:
        return self.spec.m

    def short_names(self) -> dict[str, str]:
        return short_names(self.spec)


def short_names(spec: PartitionSpec) -> dict[str, str]:
    """Canonical name -> the short names used in worked examples.

    ``c_{i,delta_i} -> l_i``, ``c_{i,0} -> k_i`` and, for quadratic ``a_i``,
    ``c_{i,1} -> c_i``.
    """
    out = {}
    for j in range(spec.g + 1):
        out[r_name(j)] = f"r{j}"
    for j in range(spec.g + 1 - spec.delta(1)):
        out[b_name(j)] = f"b{j}"
    out[KAPPA] = KAPPA
    for i in range(1, spec.m // 2 + 1):
        d = spec.delta(i)
        for j in range(d + 1):
            if j == d:
                out[c_name(i, j)] = f"l{i}"
            elif j == 0:
                out[c_name(i, j)] = f"k{i}"
            elif d == 2:
                out[c_name(i, j)] = f"c{i}"
            else:
                out[c_name(i, j)] = f"c{i}{j}"
    return out


def count_variables(spec: PartitionSpec) -> int:
    half = spec.m // 2
    return ((spec.delta(0) - spec.delta(1)) + (half + sum(spec.delta(i) for i in range(1, half + 1)))
            + (spec.m % 2) + (spec.g + 1))


def _continuants(quotients: Sequence, one, zero):
    p = {-2: zero, -1: one}
    q = {-2: one, -1: zero}
    for j, a in enumerate(quotients):
        p[j] = a * p[j - 1] + p[j - 2]
        q[j] = a * q[j - 1] + q[j - 2]
    return p, q


def build_system(spec: PartitionSpec) -> SymbolicSystem:
    g, m = spec.g, spec.m
    x = MultiPoly.var("x")
    variables: list[str] = []
    flagged: set[str] = set()

    a0 = x ** (g + 1)
    for j in range(g + 1):
        variables.append(r_name(j))
        a0 = a0 + MultiPoly.var(r_name(j)) * x ** j

    if m % 2:
        kappa = MultiPoly.var(KAPPA)
        variables.append(KAPPA)
        flagged.add(KAPPA)
    else:
        kappa = MultiPoly.const(1)

    a: dict[int, MultiPoly] = {}
    for i in range(1, m // 2 + 1):
        d = spec.delta(i)
        poly = MultiPoly()
        for j in range(d + 1):
            name = c_name(i, j)
            variables.append(name)
            poly = poly + MultiPoly.var(name) * x ** j
        flagged.add(c_name(i, d))
        a[i] = poly
    for i in range(1, m // 2 + 1):
        if m - i != i:
            a[m - i] = a[i] * _skew_power(kappa, i)

    if m >= 2:
        d1 = spec.delta(1)
        top = g + 1 - d1
        h1 = MultiPoly.var(c_name(1, d1), -1) * 2 * x ** top
        for j in range(top):
            variables.append(b_name(j))
            h1 = h1 + MultiPoly.var(b_name(j)) * x ** j
    else:
        # m = 1: a_1 = 2 kappa a_0 and h_1 = 2 / lc(a_1) = 1 / kappa
        h1 = kappa ** -1

    quotients = [a[i] for i in range(1, m)]
    p, q = _continuants(quotients, MultiPoly.const(1), MultiPoly())
    J = kappa * p[m - 2] * h1 - q[m - 3] - kappa * a0 * q[m - 2] * 2

    top_power = spec.N - spec.delta(1)
    coeffs = J.coefficients("x")
    for k, c in coeffs.items():
        if k >= top_power and not c.is_zero():
            raise AssertionError(f"coefficient of x^{k} should vanish identically, got {c}")
    equations = tuple((k, coeffs.get(k, MultiPoly())) for k in range(top_power - 1, -1, -1))
    return SymbolicSystem(spec, tuple(sorted(variables, key=var_sort_key)), frozenset(flagged),
                          a0, a, kappa, h1, J, equations)


def _skew_power(kappa: MultiPoly, i: int) -> MultiPoly:
    e = SKEW_SIGN * (1 if i % 2 == 0 else -1)
    return kappa ** e


class VerdictKind(str, enum.Enum):
    IMPOSSIBLE = "IMPOSSIBLE"
    FAMILY = "FAMILY"
    STUCK = "STUCK"


@dataclass(frozen=True)
class Step:
    variable: str
    value: MultiPoly
    power: int  # power of x whose coefficient was solved

    def rational(self) -> RationalFunction:
        return RationalFunction.from_laurent(self.value)


@dataclass
class EliminationTrace:
    spec: PartitionSpec
    steps: list[Step]
    residual: list[tuple[int, MultiPoly]]
    verdict: VerdictKind
    witness: tuple[int, MultiPoly] | None
    free_variables: tuple[str, ...]
    flagged: frozenset[str]
    discharged: list[int] = field(default_factory=list)
    pivot_order: tuple[str, ...] = ()

    def solved(self) -> dict[str, MultiPoly]:
        return {s.variable: s.value for s in self.steps}

    def step_for(self, var: str) -> Step:
        for s in self.steps:
            if s.variable == var:
                return s
        raise KeyError(var)

    # -- reporting -------------------------------------------------------
    def to_text(self, short: bool = True) -> str:
        names = short_names(self.spec)
        ren = (lambda p: p.rename(names)) if short else (lambda p: p)
        vname = (lambda v: names.get(v, v)) if short else (lambda v: v)
        lines = [f"partition: {self.spec.label()}"]
        for s in self.steps:
            rf = RationalFunction.from_laurent(ren(s.value))
            canon = "" if not short else f"   [{s.variable}]"
            lines.append(f"x^{s.power}: {vname(s.variable)} = {rf}{canon}")
        for k, eq in self.residual:
            lines.append(f"residual x^{k}: {RationalFunction.from_laurent(ren(eq))} = 0")
        lines.append(f"verdict: {self.verdict.value}")
        if self.witness is not None:
            k, w = self.witness
            lines.append(f"witness x^{k}: {RationalFunction.from_laurent(ren(w))}")
        lines.append("free: " + ", ".join(vname(v) for v in self.free_variables))
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "spec": self.spec.to_record(),
            "steps": [{"var": s.variable, "value": s.value.to_record(), "power": s.power} for s in self.steps],
            "residual": [{"power": k, "eq": e.to_record()} for k, e in self.residual],
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else
            {"power": self.witness[0], "value": self.witness[1].to_record()},
            "free": list(self.free_variables),
            "flagged": sorted(self.flagged, key=var_sort_key),
            "discharged": list(self.discharged),
            "pivot_order": list(self.pivot_order),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "EliminationTrace":
        w = rec.get("witness")
        return cls(
            spec=PartitionSpec.from_record(rec["spec"]),
            steps=[Step(s["var"], MultiPoly.from_record(s["value"]), s["power"]) for s in rec["steps"]],
            residual=[(r["power"], MultiPoly.from_record(r["eq"])) for r in rec["residual"]],
            verdict=VerdictKind(rec["verdict"]),
            witness=None if w is None else (w["power"], MultiPoly.from_record(w["value"])),
            free_variables=tuple(rec["free"]),
            flagged=frozenset(rec["flagged"]),
            discharged=list(rec.get("discharged", [])),
            pivot_order=tuple(rec.get("pivot_order", ())),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EliminationTrace":
        return cls.from_record(json.loads(text))


def default_priority(name: str):
    """b first, then constant terms k, then a_0 coefficients r, then middle c,
    then leading coefficients, then kappa."""
    if name.startswith("b_"):
        cls = 0
    elif name.startswith("r_"):
        cls = 2
    elif name == KAPPA:
        cls = 5
    else:
        ij = parse_c_name(name)
        cls = 1 if ij and ij[1] == 0 else 3
    return (cls, var_sort_key(name))


def _priority(flagged: frozenset[str], override: Sequence[str]):
    rank = {v: i for i, v in enumerate(override)}

    def key(name: str):
        base = default_priority(name)
        if name in flagged and name != KAPPA:
            base = (4, base[1])
        return (0, rank[name]) if name in rank else (1, base)

    return key


def normalize(eq: MultiPoly, flagged: frozenset[str]) -> MultiPoly:
    """Divide out units: rational content and monomials in flagged variables."""
    return eq.strip_factors(lambda v: v in flagged)[1]


def _is_unit(p: MultiPoly, flagged: frozenset[str]) -> bool:
    if not p.is_monomial():
        return False
    mono, _ = p.single_term()
    return all(v in flagged for v, _ in mono)


def find_pivot(core: MultiPoly, flagged: frozenset[str], key) -> tuple[str, MultiPoly] | None:
    """A variable occurring linearly with a unit coefficient, and its value."""
    for v in sorted(core.variables(), key=key):
        if v == "x" or core.degree(v) != 1 or core.min_degree(v) < 0:
            continue
        coef = core.coefficient(v, 1)
        if not _is_unit(coef, flagged):
            continue
        value = -core.coefficient(v, 0) * coef.inverse()
        if v in flagged and not _is_unit(value, flagged):
            continue
        return v, value
    return None


def eliminate(sys: SymbolicSystem, pivot_order: Sequence[str] = ()) -> EliminationTrace:
    """Triangular elimination from the highest power of x downward.

    ``pivot_order`` lists variables to prefer, ahead of the default ordering.
    An equation without a usable pivot is skipped and revisited after later
    solves.
    """
    flagged = sys.flagged
    key = _priority(flagged, tuple(pivot_order))
    current = {k: e for k, e in sys.equations}
    steps: list[Step] = []
    discharged: list[int] = []
    witness = None

    while True:
        acted = False
        for k in sorted(current, reverse=True):
            eq = current[k]
            if eq.is_zero():
                discharged.append(k)
                del current[k]
                acted = True
                break
            core = normalize(eq, flagged)
            if core.is_constant():
                witness = (k, eq)
                break
            pivot = find_pivot(core, flagged, key)
            if pivot is None:
                continue
            var, value = pivot
            steps.append(Step(var, value, k))
            del current[k]
            for k2 in current:
                current[k2] = current[k2].substitute(var, value)
            acted = True
            break
        if witness is not None or not acted:
            break

    solved = {s.variable for s in steps}
    free = tuple(v for v in sys.variables if v not in solved)
    residual = [(k, normalize(current[k], flagged)) for k in sorted(current, reverse=True)
                if witness is None or k != witness[0]]
    if witness is not None:
        verdict = VerdictKind.IMPOSSIBLE
        mono_vars = witness[1].variables()
        assert witness[1].is_constant() or (_is_unit(witness[1], flagged) and mono_vars <= flagged)
    elif all(eq.variables() <= flagged for _, eq in residual):
        verdict = VerdictKind.FAMILY
    else:
        verdict = VerdictKind.STUCK
    return EliminationTrace(sys.spec, steps, residual, verdict, witness, free, flagged,
                            discharged, tuple(pivot_order))


def replay(sys: SymbolicSystem, trace: EliminationTrace) -> list[tuple[int, MultiPoly]]:
    """Apply the recorded substitutions, in order, to the original equations.

    Returns the nonzero results, normalized; for a sound trace these are the
    residual equations (plus the witness equation when IMPOSSIBLE).
    """
    out = []
    for k, eq in sys.equations:
        for s in trace.steps:
            eq = eq.substitute(s.variable, s.value)
        if not eq.is_zero():
            out.append((k, normalize(eq, sys.flagged)))
    return out


def check_replay(sys: SymbolicSystem, trace: EliminationTrace) -> bool:
    expected = list(trace.residual)
    if trace.witness is not None:
        expected.append((trace.witness[0], normalize(trace.witness[1], sys.flagged)))
    return sorted(replay(sys, trace), key=lambda t: -t[0]) == sorted(expected, key=lambda t: -t[0])


# -- instantiation --------------------------------------------------------

def complete_assignment(trace: EliminationTrace, assignment: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Values of every variable: free ones from ``assignment``, solved ones by
    evaluating the recorded solutions, latest first."""
    values = {v: Fraction(assignment[v]) for v in trace.free_variables if v in assignment}
    missing = [v for v in trace.free_variables if v not in values]
    if missing:
        raise ConstraintViolated(f"no value given for free variable(s) {', '.join(missing)}")
    for v in trace.flagged:
        if v in values and values[v] == 0:
            raise NonvanishingViolated(f"{v} must be nonzero")
    for s in reversed(trace.steps):
        try:
            values[s.variable] = s.value.evaluate(values)
        except ZeroDivisionError as exc:
            raise NonvanishingViolated(str(exc)) from None
    for v in trace.flagged:
        if values.get(v, 1) == 0:
            raise NonvanishingViolated(f"{v} evaluates to zero")
    for k, eq in trace.residual:
        if eq.evaluate(values) != 0:
            raise ConstraintViolated(f"residual equation at x^{k} is not satisfied")
    return values


def rename_assignment(spec: PartitionSpec, assignment: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Accept short names (l1, k3, ...) as well as canonical ones."""
    back = {short: canon for canon, short in short_names(spec).items()}
    return {back.get(k, k): Fraction(v) for k, v in assignment.items()}


def curve_from_values(spec: PartitionSpec, values: Mapping[str, Fraction]) -> tuple[Poly, Fraction]:
    g, m = spec.g, spec.m
    kappa = Fraction(values[KAPPA]) if m % 2 else Fraction(1)
    a0 = Poly([values[r_name(j)] for j in range(g + 1)] + [1])
    a: dict[int, Poly] = {}
    for i in range(1, m // 2 + 1):
        a[i] = Poly([values[c_name(i, j)] for j in range(spec.delta(i) + 1)])
    for i in range(1, m // 2 + 1):
        if m - i != i:
            a[m - i] = a[i] * skew_factor(kappa, i)
    if m == 1:
        return a0 * a0 + 1 / kappa, kappa
    # q_{m-1} needs a_m = 2 kappa a_0 as its last quotient
    p, q = _continuants([a[i] for i in range(1, m)] + [a0 * (2 * kappa)], Poly([1]), Poly())
    try:
        tail = q[m - 1] / (p[m - 2] * kappa)
    except ArithmeticError as exc:
        raise InexactDivision(str(exc)) from None
    return a0 * a0 + tail, kappa


@dataclass(frozen=True)
class RoundTrip:
    f: Poly
    m: int
    kappa: Fraction
    N: int
    degrees: tuple[int, ...]

    def to_text(self) -> str:
        return (f"f = {self.f.to_expr()}\nround trip: m = {self.m}, kappa = {format_rational(self.kappa)}, "
                f"N = {self.N}, degrees = {self.degrees}")


def instantiate(trace: EliminationTrace, assignment: Mapping[str, Fraction],
                strict: bool = False) -> RoundTrip:
    """Concrete curve for an assignment of the free variables, round-trip verified."""
    spec = trace.spec
    if trace.verdict is not VerdictKind.FAMILY:
        raise ConstraintViolated(f"trace verdict is {trace.verdict.value}, not FAMILY")
    values = complete_assignment(trace, rename_assignment(spec, assignment))
    if strict and spec.m % 2 and values[KAPPA] == 1:
        raise NonvanishingViolated("kappa = 1 excluded for a strict quasi-period")
    f, kappa = curve_from_values(spec, values)
    try:
        e = cf_expand(f, max_steps=2 * spec.m + 2)
    except Exception as exc:  # any failure here means the solver produced garbage
        raise RoundTripFailed(f"expansion failed: {exc}") from exc
    expected = spec.vector.deltas
    if not e.is_periodic or e.m != spec.m or e.degrees() != expected:
        raise RoundTripFailed(f"expansion does not match {spec.label()}: m = {e.m}")
    if e.kappa != kappa:
        raise RoundTripFailed(f"skew value {e.kappa} != {kappa}")
    N = torsion_order(e, spec.g)
    if N != spec.N:
        raise RoundTripFailed(f"torsion order {N} != {spec.N}")
    return RoundTrip(f, e.m, e.kappa, N, e.degrees())


def instantiate_curve(trace: EliminationTrace, assignment: Mapping[str, Fraction]) -> Poly:
    return instantiate(trace, assignment).f


# -- sampling ---------------------------------------------------------------

def _solve_binomial(eq: MultiPoly, var: str, values: Mapping[str, Fraction]) -> list[Fraction]:
    """Rational roots in ``var`` of ``eq`` once every other variable is fixed,
    when that leaves ``A var^k + B`` (or a linear equation)."""
    others = {v: values[v] for v in eq.variables() if v != var}
    uni = eq.partial_evaluate(others)
    if uni.variables() - {var}:
        return []
    lo = uni.min_degree(var)
    if lo:
        uni = uni * MultiPoly.var(var, -lo)
    coeffs = uni.coefficients(var)
    nonzero = {k: c.constant_value() for k, c in coeffs.items() if not c.is_zero()}
    if set(nonzero) - {0} == set() or len(nonzero) != 2 or 0 not in nonzero:
        return []
    k = max(nonzero)
    target = -nonzero[0] / nonzero[k]
    root = rational_root(target, k)
    if root is None:
        return []
    return sorted({root, -root}) if k % 2 == 0 else [root]


def sample_assignments(trace: EliminationTrace, count: int, pool: Sequence[Fraction] = DEFAULT_POOL,
                       seed: int = 0, max_attempts: int | None = None,
                       strict: bool = False) -> list[dict[str, Fraction]]:
    """Distinct admissible assignments of the free variables.

    Free variables are drawn from ``pool``.  Each residual equation designates
    one of its variables, solved exactly as a rational k-th root; draws where
    no designation works are skipped.
    """
    if trace.verdict is not VerdictKind.FAMILY:
        return []
    rng = random.Random(seed)
    free = list(trace.free_variables)
    residual = [eq for _, eq in trace.residual]
    out: list[dict[str, Fraction]] = []
    seen = set()
    attempts = max_attempts or 200 * max(count, 1)
    for _ in range(attempts):
        if len(out) >= count:
            break
        draw = {v: rng.choice(pool) for v in free}
        if strict and KAPPA in draw and draw[KAPPA] == 1:
            continue
        candidate = _satisfy(residual, draw, trace.flagged, rng)
        if candidate is None:
            continue
        key = tuple(sorted(candidate.items()))
        if key in seen:
            continue
        try:
            complete_assignment(trace, candidate)
        except (ConstraintViolated, NonvanishingViolated):
            continue
        seen.add(key)
        out.append(candidate)
    return out


def _satisfy(residual, draw, flagged, rng) -> dict[str, Fraction] | None:
    values = dict(draw)
    fixed: set[str] = set()
    for eq in residual:
        if eq.evaluate(values) == 0:
            continue
        options = [v for v in sorted(eq.variables(), key=var_sort_key) if v not in fixed]
        rng.shuffle(options)
        for v in options:
            roots = [r for r in _solve_binomial(eq, v, values) if not (v in flagged and r == 0)]
            if roots:
                values[v] = rng.choice(roots)
                fixed.add(v)
                break
        else:
            return None
    if all(eq.evaluate(values) == 0 for eq in residual):
        return values
    return None


# -- worked examples ----------------------------------------------------------

# Pivot orders of the two reference eliminations for g = 2, N = 11.
WORKED_PIVOTS: dict[tuple[int, ...], tuple[str, ...]] = {
    (2, 1, 2, 1, 2): ("b_0", "c_1_0", "r_0", "r_2"),
    (2, 1, 1, 1, 1, 2): ("b_0", "c_1_0", "r_0", "r_2", "c_3_1", "c_2_0", "r_1", "c_1_1"),
}


def solve_partition(spec: PartitionSpec, pivot_order: Sequence[str] | None = None) -> EliminationTrace:
    if pivot_order is None:
        pivot_order = WORKED_PIVOTS.get(spec.deltas, ()) if spec.g == 2 else ()
    return eliminate(build_system(spec), pivot_order)
