"""Igusa invariants of genus-2 sextics and comparison of one-parameter families.

``A``, ``B`` and ``C`` are sums over products of squared root differences;
their expressions in the coefficients are derived here by rewriting the root
sums in elementary symmetric polynomials, once per process.  ``D`` is the
discriminant, obtained from ``Res(f, f')``.
"""
from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (Poly, bareiss_determinant, format_rational, poly_divrem, poly_gcd,
                    resultant, sylvester_matrix)
from .errors import DegenerateFamily, NotSextic, NotSymmetric, SingularCurve
from .multipoly import MultiPoly

NROOTS = 6

# D = D_SIGN * Res(f, f') / lc(f) for sextics.  Fixed against Flynn's D_t at t = 1.
D_SIGN = -1

# Dense integer polynomials in the six roots: exponent tuple -> int.
RootPoly = dict


def _rp_mul(a: RootPoly, b: RootPoly) -> RootPoly:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _rp_add_into(acc: RootPoly, b: RootPoly, scale: int = 1) -> None:
    for m, c in b.items():
        s = acc.get(m, 0) + scale * c
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


def _unit(i: int, e: int = 1) -> tuple:
    return tuple(e if k == i else 0 for k in range(NROOTS))


def _sq_diff(i: int, j: int) -> RootPoly:
    """(z_i - z_j)^2."""
    return {_unit(i, 2): 1, _unit(j, 2): 1,
            tuple((1 if k in (i, j) else 0) for k in range(NROOTS)): -2}


def _product(pairs: Iterable[tuple[int, int]]) -> RootPoly:
    out: RootPoly = {(0,) * NROOTS: 1}
    for i, j in pairs:
        out = _rp_mul(out, _sq_diff(i, j))
    return out


def _matchings(items: list[int]):
    if not items:
        yield []
        return
    a = items[0]
    for b in items[1:]:
        rest = [c for c in items if c not in (a, b)]
        for mm in _matchings(rest):
            yield [(a, b)] + mm


def _triple_splits():
    """The 10 ways to split {0..5} into two triples (first triple contains 0)."""
    for T in itertools.combinations(range(NROOTS), 3):
        if 0 in T:
            yield T, tuple(i for i in range(NROOTS) if i not in T)


def _tri(T) -> list[tuple[int, int]]:
    return [(T[0], T[1]), (T[1], T[2]), (T[2], T[0])]


def root_sum_A() -> RootPoly:
    acc: RootPoly = {}
    for mm in _matchings(list(range(NROOTS))):
        _rp_add_into(acc, _product(mm))
    return acc


def root_sum_B() -> RootPoly:
    acc: RootPoly = {}
    for T, U in _triple_splits():
        _rp_add_into(acc, _product(_tri(T) + _tri(U)))
    return acc


def root_sum_C() -> RootPoly:
    acc: RootPoly = {}
    for T, U in _triple_splits():
        base = _product(_tri(T) + _tri(U))
        cross: RootPoly = {}
        for perm in itertools.permutations(U):
            _rp_add_into(cross, _product(zip(T, perm)))
        _rp_add_into(acc, _rp_mul(base, cross))
    return acc


# -- symmetric reduction ----------------------------------------------------

@functools.lru_cache(maxsize=None)
def _elementary(k: int) -> tuple:
    terms = {}
    for combo in itertools.combinations(range(NROOTS), k):
        terms[tuple(1 if i in combo else 0 for i in range(NROOTS))] = 1
    return tuple(terms.items())


@functools.lru_cache(maxsize=None)
def _e_product(exps: tuple[int, ...]) -> tuple:
    """Expansion of prod e_k^{exps[k-1]}, restricted to non-increasing exponent tuples."""
    full = _e_product_full(exps)
    return tuple((m, c) for m, c in full.items() if all(m[i] >= m[i + 1] for i in range(NROOTS - 1)))


@functools.lru_cache(maxsize=256)
def _e_product_full(exps: tuple[int, ...]) -> dict:
    if not any(exps):
        return {(0,) * NROOTS: 1}
    k = max(i for i, e in enumerate(exps) if e)  # peel one factor of e_{k+1}
    rest = list(exps)
    rest[k] -= 1
    return _rp_mul(_e_product_full(tuple(rest)), dict(_elementary(k + 1)))


def _is_symmetric(p: RootPoly) -> bool:
    for m, c in p.items():
        key = tuple(sorted(m, reverse=True))
        if p.get(key) != c:
            return False
    return True


def symmetric_reduce(p: RootPoly | MultiPoly) -> MultiPoly:
    """Rewrite a symmetric polynomial in the roots ``z_1..z_6`` via ``e_1..e_6``.

    Accepts the internal root representation or a :class:`MultiPoly` in
    variables ``z_1 .. z_6``; returns a :class:`MultiPoly` in ``e_1 .. e_6``.
    """
    if isinstance(p, MultiPoly):
        p = _from_multipoly(p)
    if not _is_symmetric(p):
        raise NotSymmetric("input is not symmetric in the six roots")
    work = {m: c for m, c in p.items() if all(m[i] >= m[i + 1] for i in range(NROOTS - 1))}
    out: dict = {}
    while work:
        lead = max(work)
        c = work[lead]
        exps = tuple(lead[i] - (lead[i + 1] if i + 1 < NROOTS else 0) for i in range(NROOTS))
        out[exps] = out.get(exps, 0) + c
        for m, d in _e_product(exps):
            s = work.get(m, 0) - c * d
            if s:
                work[m] = s
            else:
                work.pop(m, None)
    terms = {}
    for exps, c in out.items():
        if c:
            terms[tuple((f"e_{i + 1}", e) for i, e in enumerate(exps) if e)] = Fraction(c)
    return MultiPoly(terms)


def _from_multipoly(p: MultiPoly) -> RootPoly:
    out: RootPoly = {}
    for mono, c in p.terms.items():
        exps = [0] * NROOTS
        for v, e in mono:
            if not v.startswith("z_") or e < 0:
                raise NotSymmetric(f"unexpected variable {v}")
            exps[int(v[2:]) - 1] = e
        if c.denominator != 1:
            raise NotSymmetric("root polynomials must have integer coefficients here")
        out[tuple(exps)] = int(c)
    return out


def _to_coefficient_form(e_form: MultiPoly, weight: int) -> MultiPoly:
    """Substitute ``e_i = (-1)^i u_i / u_0`` and multiply by ``u_0^weight``."""
    out = MultiPoly()
    for mono, c in e_form.terms.items():
        total = 0
        term = MultiPoly.const(c)
        for v, e in mono:
            i = int(v[2:])
            total += e
            term = term * MultiPoly.var(f"u_{i}", e) * ((-1) ** (i * e))
        if weight - total < 0:
            raise ArithmeticError("coefficient form is not polynomial")
        if weight - total:
            term = term * MultiPoly.var("u_0", weight - total)
        out = out + term
    return out


@functools.lru_cache(maxsize=None)
def coefficient_forms() -> dict[str, MultiPoly]:
    """A, B, C as polynomials in ``u_0 .. u_6`` (``f = sum u_i x^(6-i)``)."""
    return {
        "A": _to_coefficient_form(symmetric_reduce(root_sum_A()), 2),
        "B": _to_coefficient_form(symmetric_reduce(root_sum_B()), 4),
        "C": _to_coefficient_form(symmetric_reduce(root_sum_C()), 6),
    }


def _u_values(f) -> list:
    """``u_0 .. u_6`` (descending coefficients) of a sextic given ascending."""
    return list(reversed(list(f)))


def _eval_form(form: MultiPoly, us: Sequence, one, zero):
    """Evaluate a coefficient form at ring elements (Fractions or Polys)."""
    cache: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = us[i] ** e
        return cache[key]

    total = zero
    for mono, c in form.terms.items():
        t = one * c
        for v, e in mono:
            t = t * power(int(v[2:]), e)
        total = total + t
    return total


@dataclass(frozen=True)
class IgusaInvariants:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    j1: Fraction
    j2: Fraction
    j3: Fraction

    def to_text(self) -> str:
        return "\n".join(f"{k}: {format_rational(getattr(self, k))}"
                         for k in ("A", "B", "C", "D", "j1", "j2", "j3"))

    def j(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.j1, self.j2, self.j3)


def _require_sextic(f: Poly) -> None:
    if f.degree != 6:
        raise NotSextic(f"degree {f.degree} is not 6")


def igusa_ABCD(f: Poly) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    _require_sextic(f)
    forms = coefficient_forms()
    us = _u_values(f.coeffs)
    one, zero = Fraction(1), Fraction(0)
    A, B, C = (_eval_form(forms[k], us, one, zero) for k in "ABC")
    D = D_SIGN * resultant(f, f.derivative()) / f.lc
    return A, B, C, D


def calibrate_d_sign() -> int:
    """Sign making ``sign * Res(f, f') / lc`` equal Flynn's ``D_t`` at t = 1."""
    f = Poly([1, 0, 2, 2, 5, 2, 1])
    target = Fraction(-1445888)
    base = resultant(f, f.derivative()) / f.lc
    signs = [s for s in (1, -1) if s * base == target]
    if len(signs) != 1:
        raise AssertionError("no sign reproduces the Flynn discriminant")
    return signs[0]


def igusa_j(f: Poly) -> tuple[Fraction, Fraction, Fraction]:
    return igusa(f).j()


def igusa(f: Poly) -> IgusaInvariants:
    A, B, C, D = igusa_ABCD(f)
    if D == 0:
        raise SingularCurve("discriminant vanishes")
    # j3 uses A^2 C: weight 10 like A^5 and A^3 B, so it is an isomorphism invariant
    return IgusaInvariants(A, B, C, D, A**5 / D, A**3 * B / D, A**2 * C / D)


# -- one-parameter families ---------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A sextic in x whose coefficients are polynomials in one parameter."""

    name: str
    coeffs: tuple[Poly, ...]  # ascending in x
    param: str = "t"

    @classmethod
    def from_multipoly(cls, name: str, p: MultiPoly, param: str) -> "Family":
        extra = p.variables() - {"x", param}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        cs = p.to_univariate_poly_coeffs("x")
        return cls(name, tuple(c.to_univariate(param) if not c.is_zero() else Poly() for c in cs), param)

    def at(self, value) -> Poly:
        v = Fraction(value)
        return Poly(c(v) for c in self.coeffs)

    def ABCD(self) -> tuple[Poly, Poly, Poly, Poly]:
        return _family_ABCD(self)

    def j_functions(self) -> list[tuple[Poly, Poly]]:
        """``(numerator, denominator)`` of j1, j2, j3 in lowest terms."""
        return _family_j(self)


@functools.lru_cache(maxsize=32)
def _family_ABCD(fam: Family) -> tuple[Poly, Poly, Poly, Poly]:
    if len(fam.coeffs) != 7 or fam.coeffs[6].is_zero():
        raise NotSextic(f"family {fam.name} is not a sextic in x")
    forms = coefficient_forms()
    us = _u_values(fam.coeffs)
    one, zero = Poly([1]), Poly()
    A, B, C = (_eval_form(forms[k], us, one, zero) for k in "ABC")
    D = family_discriminant(fam)
    return A, B, C, D


def family_discriminant(fam: Family) -> Poly:
    """``D_SIGN * Res_x(F, F') / lc`` computed over Q[param] by Bareiss."""
    f = list(fam.coeffs)
    df = [f[i] * i for i in range(1, len(f))]
    rows = sylvester_matrix(list(reversed(f)), list(reversed(df)))
    res = bareiss_determinant(rows)
    q, r = poly_divrem(res, f[-1])
    if not r.is_zero():
        raise ArithmeticError("Res(F, F') not divisible by the leading coefficient")
    return q * D_SIGN


def _reduced(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly(), Poly([1])
    g = poly_gcd(num, den)
    num, den = num / g, den / g
    return num / den.lc, den / den.lc


@functools.lru_cache(maxsize=32)
def _family_j(fam: Family) -> list[tuple[Poly, Poly]]:
    A, B, C, D = fam.ABCD()
    if D.is_zero():
        raise DegenerateFamily(f"{fam.name}: discriminant vanishes identically")
    js = [_reduced(A**5, D), _reduced(A**3 * B, D), _reduced(A**2 * C, D)]
    for k, (n, d) in enumerate(js, start=1):
        if n.degree <= 0 and d.degree == 0:
            raise DegenerateFamily(f"{fam.name}: j{k} is constant in {fam.param}")
    return js


def _numer_at(j_t0: Fraction, jfun: tuple[Poly, Poly]) -> Poly:
    """Numerator of ``j(t0) - n(u)/d(u)``, a polynomial in u."""
    n, d = jfun
    return d * j_t0 - n


def rational_roots(p: Poly) -> list[Fraction]:
    """Rational roots of a nonzero polynomial (rational root test)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    _, q = p.primitive_integer()
    cs = [int(c) for c in q.coeffs]
    roots = set()
    while cs and cs[0] == 0:
        roots.add(Fraction(0))
        cs = cs[1:]
    if len(cs) <= 1:
        return sorted(roots)
    if len(cs) == 2:
        roots.add(Fraction(-cs[0], cs[1]))
        return sorted(roots)
    qp = Poly(cs)
    for num in _divisors(abs(cs[0])):
        for den in _divisors(abs(cs[-1])):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and qp(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int, trial_limit: int = 10**6) -> list[int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= trial_limit:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1  # may be composite past the trial limit
    divs = [1]
    for prime, e in factors.items():
        divs = [x * prime**k for x in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass
class DistinctionReport:
    verdict: str  # "DISJOINT" or "OVERLAP"
    checks: list[tuple[str, str, Poly]] = field(default_factory=list)  # (t0, outcome, gcd)
    witnesses: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    method: str = "specialized"
    detail: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict} ({self.method})"]
        for t0, outcome, g in self.checks:
            lines.append(f"t0 = {t0}: {outcome}; gcd degree {g.degree if not g.is_zero() else '-inf'}")
        for t0, u in self.witnesses:
            lines.append(f"witness: t = {format_rational(t0)}, u = {format_rational(u)}")
        lines += self.detail
        return "\n".join(lines)


DEFAULT_T0 = tuple(Fraction(v) for v in (1, 2, -1, Fraction(1, 3), 5))


def distinguish_specialized(F: Family, G: Family, samples: Sequence = DEFAULT_T0) -> DistinctionReport:
    """For each sample t0, the u with ``j_k(G_u) = j_k(F_{t0})`` for all k are
    the common roots of three univariate numerators; a constant gcd means none."""
    jF = F.j_functions()  # raises DegenerateFamily
    jG = G.j_functions()
    report = DistinctionReport("DISJOINT")
    for t0 in samples:
        t0 = Fraction(t0)
        dvals = [d(t0) for _, d in jF]
        if any(v == 0 for v in dvals) or F.ABCD()[3](t0) == 0:
            report.checks.append((format_rational(t0), "skipped (singular or degenerate)", Poly([1])))
            continue
        vals = [n(t0) / d(t0) for n, d in jF]
        numers = [_numer_at(v, jg) for v, jg in zip(vals, jG)]
        g = Poly()
        for p in numers:
            g = p if g.is_zero() else (poly_gcd(g, p) if not p.is_zero() else g)
        if g.is_zero() or g.degree > 0:
            report.verdict = "OVERLAP"
            roots = rational_roots(g) if not g.is_zero() else []
            roots = [u for u in roots if G.ABCD()[3](u) != 0]
            report.witnesses += [(t0, u) for u in roots]
            report.checks.append((format_rational(t0), "common u found", g))
        else:
            report.checks.append((format_rational(t0), "no matching u", g))
    return report


# -- the full bivariate computation, done modulo primes ------------------------

FULL_SYMBOLIC_ENV = "CFTORSION_FULL_SYMBOLIC"
DEFAULT_PRIMES = (2**61 - 1, 2**31 - 1)


def full_symbolic_enabled() -> bool:
    return os.environ.get(FULL_SYMBOLIC_ENV, "") not in ("", "0")


def _mod_poly(p: Poly, prime: int) -> list[int]:
    out = []
    for c in p.coeffs:
        out.append(c.numerator * pow(c.denominator, -1, prime) % prime)
    return out


def _eval_mod(cs: list[int], x: int, prime: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % prime
    return acc


def _det_mod(mat: list[list[int]], prime: int) -> int:
    n = len(mat)
    m = [row[:] for row in mat]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv % prime
        inv = pow(pv, -1, prime)
        for r in range(col + 1, n):
            if m[r][col]:
                fac = m[r][col] * inv % prime
                row_r, row_c = m[r], m[col]
                for k in range(col, n):
                    row_r[k] = (row_r[k] - fac * row_c[k]) % prime
    return det % prime


def _interpolate_mod(xs: list[int], ys: list[int], prime: int) -> list[int]:
    """Newton interpolation; returns ascending coefficients mod prime."""
    n = len(xs)
    coef = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, prime) % prime
    poly = [0]
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = (new[k + 1] + c) % prime
            new[k] = (new[k] - c * xs[i]) % prime
        new[0] = (new[0] + coef[i]) % prime
        poly = new
    return _trim(poly)


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _divmod_mod(a: list[int], b: list[int], prime: int) -> tuple[list[int], list[int]]:
    a = a[:]
    b = _trim(b)
    inv = pow(b[-1], -1, prime)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        fac = a[-1] * inv % prime
        q[shift] = fac
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - fac * c) % prime
    return _trim(q), _trim(a)


def _gcd_mod(a: list[int], b: list[int], prime: int) -> list[int]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod_mod(a, b, prime)[1]
    return a


def _bivariate_numerator(jF: tuple[Poly, Poly], jG: tuple[Poly, Poly]) -> list[list[Poly]]:
    """``nF(t) dG(u) - nG(u) dF(t)`` as a list indexed by u-degree of Polys in t."""
    nF, dF = jF
    nG, dG = jG
    deg = max(len(nG.coeffs), len(dG.coeffs))
    return [dF * (-nG.coeff(k)) + nF * dG.coeff(k) for k in range(deg)]


def _resultant_in_u_mod(P: list[Poly], Q: list[Poly], prime: int) -> list[int]:
    """Res_u(P, Q) as a polynomial in t, mod prime, by evaluation/interpolation."""
    Pm = [_mod_poly(c, prime) for c in P]
    Qm = [_mod_poly(c, prime) for c in Q]
    dPu, dQu = len(P) - 1, len(Q) - 1
    dPt = max(c.degree for c in P if not c.is_zero())
    dQt = max(c.degree for c in Q if not c.is_zero())
    bound = dPu * dQt + dQu * dPt
    xs, ys = [], []
    t = 1
    while len(xs) < bound + 1:
        pu = [_eval_mod(c, t, prime) for c in Pm]
        qu = [_eval_mod(c, t, prime) for c in Qm]
        rows = sylvester_matrix(list(reversed(pu)), list(reversed(qu)))
        xs.append(t)
        ys.append(_det_mod(rows, prime))
        t += 1
    return _interpolate_mod(xs, ys, prime)


def _strip_mod(p: list[int], factor: Poly, prime: int) -> tuple[list[int], int]:
    fm = _trim(_mod_poly(factor, prime))
    count = 0
    while len(p) >= len(fm) and p:
        q, r = _divmod_mod(p, fm, prime)
        if r:
            break
        p, count = q, count + 1
    return p, count


def distinguish_full(F: Family, G: Family, trivial_factors: Sequence[Poly],
                     primes: Sequence[int] = DEFAULT_PRIMES) -> DistinctionReport:
    """res12(t), res13(t) over u, stripped of the trivial factors, and their gcd.

    Everything is computed modulo each prime.  A constant gcd modulo a prime
    not dividing either leading coefficient proves the gcd over Q is constant.
    """
    jF, jG = F.j_functions(), G.j_functions()
    nums = [_bivariate_numerator(a, b) for a, b in zip(jF, jG)]
    report = DistinctionReport("DISJOINT", method="full (modular)")
    for prime in primes:
        r12 = _resultant_in_u_mod(nums[0], nums[1], prime)
        r13 = _resultant_in_u_mod(nums[0], nums[2], prime)
        mults = []
        for fac in trivial_factors:
            r12, c12 = _strip_mod(r12, fac, prime)
            r13, c13 = _strip_mod(r13, fac, prime)
            mults.append((fac.to_expr("t"), c12, c13))
        g = _gcd_mod(r12, r13, prime)
        report.detail.append(f"p = {prime}: deg res12 = {len(r12) - 1}, deg res13 = {len(r13) - 1}, "
                             f"gcd degree {len(g) - 1 if g else '-inf'}")
        for expr, c12, c13 in mults:
            report.detail.append(f"  stripped ({expr}): res12^{c12}, res13^{c13}")
        if not r12 or not r13 or len(g) > 1:
            report.verdict = "OVERLAP"
    return report


def distinguish_families(F: Family, G: Family, trivial_factors: Sequence[Poly] = (),
                         full_symbolic: bool = False, samples: Sequence = DEFAULT_T0) -> DistinctionReport:
    if full_symbolic:
        return distinguish_full(F, G, trivial_factors)
    return distinguish_specialized(F, G, samples)
