"""Built-in fixture suite: the reference examples, checked end to end."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .families import (FLYNN, FLYNN_A, FLYNN_B, FLYNN_C, FLYNN_D, G_FAMILY, HIGHER_GENUS_ROWS,
                       flynn, g_u, g_u_quotients)
from .hseq import h_property_check, h_sequence, tail_table, verify_first_difference
from .igusa import distinguish_specialized, igusa_ABCD
from .laurent import cf_expand, verify_period_form
from .partitions import PartitionSpec, enumerate_partitions
from .symbolic import VerdictKind, instantiate, solve_partition
from .torsion import torsion_order

U_VALUES = tuple(Fraction(v) for v in (1, 2, -1, Fraction(1, 2), 3))


@dataclass
class FixtureResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _g_u_expansions() -> tuple[bool, str]:
    bad = []
    for u in U_VALUES:
        e = cf_expand(g_u(u))
        ok = (e.m == 7 and e.kappa == u and list(e.a[:8]) == g_u_quotients(u)
              and torsion_order(e, 2) == 11 and verify_period_form(e).ok
              and e.n == (7 if u == 1 else 14))
        if not ok:
            bad.append(str(u))
    return not bad, "bad u: " + ", ".join(bad) if bad else "m=7, kappa=u, order 11"


def _flynn_orders() -> tuple[bool, str]:
    orders = [torsion_order(cf_expand(flynn(t)), 2) for t in (1, 2, 3)]
    return orders == [11, 11, 11], f"orders {orders}"


def _h_suites() -> tuple[bool, str]:
    for f in [g_u(u) for u in U_VALUES] + [flynn(t) for t in (1, 2)]:
        e = cf_expand(f)
        t = tail_table(e)
        if not (h_property_check(e, h_sequence(e, t), t).ok and verify_first_difference(f, e, t).ok):
            return False, f"failed on {f.to_expr()}"
    return True, "h-sequence and first-difference identity on both families"


def _partitions() -> tuple[bool, str]:
    specs = enumerate_partitions(2, 11)
    rows_ok = all(PartitionSpec.from_deltas(g, d[1:]) in enumerate_partitions(g, 11)
                  for g, _, d in HIGHER_GENUS_ROWS if g >= 3)
    return len(specs) == 7 and rows_ok, f"{len(specs)} partitions for (2, 11); table rows admissible: {rows_ok}"


def _impossible() -> tuple[bool, str]:
    tr = solve_partition(PartitionSpec.from_deltas(2, (2, 1, 2, 1, 2)))
    return tr.verdict is VerdictKind.IMPOSSIBLE, f"verdict {tr.verdict.value}"


def _family() -> tuple[bool, str]:
    tr = solve_partition(PartitionSpec.from_deltas(2, (2, 1, 1, 1, 1, 2)))
    if tr.verdict is not VerdictKind.FAMILY:
        return False, f"verdict {tr.verdict.value}"
    for u in (Fraction(1), Fraction(2), Fraction(3)):
        rt = instantiate(tr, {"l2": -2, "l1": 1 / (8 * u), "k3": 0, "kappa": u})
        if rt.f != g_u(u) or rt.N != 11:
            return False, f"instantiation at u={u} gave {rt.f.to_expr()}"
    return True, "FAMILY; l1 = 1/(8 kappa), l2 = -2, k3 = 0 gives g_u"


def _igusa() -> tuple[bool, str]:
    bad = []
    for t in (1, 2, -1, Fraction(1, 3), 5):
        t = Fraction(t)
        want = (FLYNN_A(t), FLYNN_B(t), FLYNN_C(t), FLYNN_D(t))
        got = igusa_ABCD(flynn(t))
        for name, a, b in zip("ABCD", got, want):
            if a != b:
                bad.append(f"{name}(t={t})")
    return not bad, "mismatch: " + ", ".join(bad) if bad else "A, B, C, D match"


def _distinguish() -> tuple[bool, str]:
    rep = distinguish_specialized(FLYNN, G_FAMILY)
    return rep.verdict == "DISJOINT", f"verdict {rep.verdict}; witnesses " + ", ".join(
        f"(t={t}, u={u})" for t, u in rep.witnesses)


FIXTURES: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("g_u expansions (u in 1, 2, -1, 1/2, 3)", _g_u_expansions),
    ("Flynn f_t order 11 (t in 1, 2, 3)", _flynn_orders),
    ("h-sequence properties", _h_suites),
    ("partition enumeration", _partitions),
    ("partition (2,1,2,1,2) impossible", _impossible),
    ("partition (2,1,1,1,1,2) family", _family),
    ("Flynn Igusa reference values", _igusa),
    ("Flynn vs g_u disjoint", _distinguish),
]


def run_fixtures() -> list[FixtureResult]:
    out = []
    for name, fn in FIXTURES:
        try:
            ok, detail = fn()
        except Exception as exc:  # report, do not abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(FixtureResult(name, ok, detail))
    return out
