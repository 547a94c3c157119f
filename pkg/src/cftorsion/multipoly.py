"""Sparse multivariate Laurent polynomials over Q in named variables.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name with
nonzero exponents.  Negative exponents are allowed: the elimination only
ever divides by units, i.e. monomials in variables known to be nonzero, so
every intermediate stays a Laurent polynomial.  :class:`RationalFunction`
is the usual numerator/denominator view of such an element.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .arith import Poly, format_rational

Monomial = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Monomial = ()

_NAME_RE = re.compile(r"^([A-Za-z]+)_?(\d*)_?(\d*)$")


def var_sort_key(name: str):
    """x first, then alphabetical prefix, then numeric indices."""
    if name == "x":
        return (0, "", 0, 0)
    mt = _NAME_RE.match(name)
    if not mt:
        return (2, name, 0, 0)
    head, i, j = mt.groups()
    return (1, head, int(i) if i else -1, int(j) if j else -1)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_degree(a: Monomial, var: str) -> int:
    for v, e in a:
        if v == var:
            return e
    return 0


def mono_without(a: Monomial, var: str) -> Monomial:
    return tuple(p for p in a if p[0] != var)


def mono_gcd(monos: Iterable[Monomial]) -> Monomial:
    """Largest monomial dividing all inputs (componentwise minimum, absent = 0)."""
    monos = list(monos)
    if not monos:
        return ONE_MONO
    names = set()
    for m in monos:
        names.update(v for v, _ in m)
    out = []
    for v in sorted(names):
        lo = min(mono_degree(m, v) for m in monos)
        if lo:
            out.append((v, lo))
    return tuple(out)


def _fmt_mono(m: Monomial, latex: bool = False) -> str:
    parts = []
    for v, e in sorted(m, key=lambda p: var_sort_key(p[0])):
        parts.append(v if e == 1 else f"{v}^{e}" if e > 0 else f"{v}^({e})")
    return "*".join(parts)


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero Fractions."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({ONE_MONO: Fraction(c)})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MultiPoly":
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def coerce(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        if isinstance(other, Poly):
            return cls.from_poly(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to MultiPoly")

    @classmethod
    def from_poly(cls, p: Poly, var: str = "x") -> "MultiPoly":
        return cls({(((var, i),) if i else ONE_MONO): c for i, c in enumerate(p.coeffs) if c})

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self) -> tuple[Monomial, Fraction]:
        if len(self.terms) != 1:
            raise ValueError("not a single term")
        return next(iter(self.terms.items()))

    def variables(self) -> set[str]:
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m, var) for m in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms:
            return 0
        return min(mono_degree(m, var) for m in self.terms)

    def is_polynomial(self) -> bool:
        return all(e > 0 for m in self.terms for _, e in m)

    def coefficient(self, var: str, k: int) -> "MultiPoly":
        """Coefficient of ``var^k`` as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            if mono_degree(m, var) == k:
                out[mono_without(m, var)] = c
        return MultiPoly._raw(out)

    def coefficients(self, var: str) -> dict[int, "MultiPoly"]:
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            buckets.setdefault(mono_degree(m, var), {})[mono_without(m, var)] = c
        return {k: MultiPoly._raw(v) for k, v in buckets.items()}

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-MultiPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly._raw({m: c * other for m, c in self.terms.items()})
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "MultiPoly":
        """Inverse of a single term (a unit in the Laurent ring)."""
        if not self.is_monomial():
            raise ZeroDivisionError("only single terms are invertible")
        m, c = self.single_term()
        return MultiPoly._raw({mono_pow(m, -1): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * MultiPoly.coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure -------------------------------------------------------
    def monomial_content(self) -> Monomial:
        return mono_gcd(self.terms)

    def rational_content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        from math import gcd

        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def leading_sign(self) -> int:
        m = max(self.terms, key=self._order_key)
        return 1 if self.terms[m] > 0 else -1

    @staticmethod
    def _order_key(m: Monomial):
        return sorted(((var_sort_key(v), e) for v, e in m))

    def strip_factors(self, strippable: Callable[[str], bool]) -> tuple["MultiPoly", MultiPoly]:
        """Split into ``unit * core`` where unit is a constant times a monomial
        in strippable variables.  The core has integer coprime coefficients
        and no strippable monomial factor (exponents shifted to start at 0)."""
        if not self.terms:
            return MultiPoly.const(1), self
        neg = []
        for v in {v for m in self.terms for v, _ in m if strippable(v)}:
            lo = min(mono_degree(m, v) for m in self.terms)
            if lo:
                neg.append((v, lo))
        g = tuple(sorted(neg))
        c = self.rational_content() * self.leading_sign()
        unit = MultiPoly._raw({g: c})
        core = self * unit.inverse()
        return unit, core

    def substitute(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Replace ``var`` by ``value``; negative powers need ``value`` a single term."""
        if var not in self.variables():
            return self
        value = MultiPoly.coerce(value)
        buckets = self.coefficients(var)
        powers: dict[int, MultiPoly] = {}
        out = MultiPoly()
        for k in sorted(buckets):
            if k not in powers:
                powers[k] = value ** k
            out = out + buckets[k] * powers[k]
        return out

    def substitute_many(self, values: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        out = self
        for v, val in values.items():
            out = out.substitute(v, val)
        return out

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                if v not in assignment:
                    raise KeyError(f"no value for {v}")
                val = Fraction(assignment[v])
                if e < 0 and val == 0:
                    raise ZeroDivisionError(f"{v} = 0 in a negative power")
                t *= val ** e
            total += t
        return total

    def partial_evaluate(self, assignment: Mapping[str, Fraction]) -> "MultiPoly":
        out: dict = {}
        for m, c in self.terms.items():
            keep = []
            for v, e in m:
                if v in assignment:
                    c = c * Fraction(assignment[v]) ** e
                else:
                    keep.append((v, e))
            if c:
                key = tuple(keep)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MultiPoly._raw(out)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            out[tuple(sorted((mapping.get(v, v), e) for v, e in m))] = c
        return MultiPoly._raw(out)

    def to_univariate(self, var: str = "x") -> Poly:
        extra = self.variables() - {var}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        d = self.degree(var)
        if self.min_degree(var) < 0:
            raise ValueError("negative powers present")
        coeffs = [Fraction(0)] * (d + 1)
        for m, c in self.terms.items():
            coeffs[mono_degree(m, var)] = c
        return Poly(coeffs)

    def to_univariate_poly_coeffs(self, var: str) -> list["MultiPoly"]:
        """Ascending coefficients in ``var`` (nonnegative powers only)."""
        if self.min_degree(var) < 0:
            raise ValueError("negative powers present")
        d = self.degree(var)
        buckets = self.coefficients(var)
        return [buckets.get(k, MultiPoly()) for k in range(d + 1)]

    # -- printing --------------------------------------------------------
    def sorted_terms(self):
        def key(item):
            m, _ = item
            return ([(-e if v == "x" else 0) for v, e in m if v == "x"] or [0],
                    sorted((var_sort_key(v), -e) for v, e in m))
        return sorted(self.terms.items(), key=key)

    def to_expr(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = _fmt_mono(m)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"MultiPoly({self.to_expr()!r})"

    def to_record(self) -> list:
        return [[[list(p) for p in m], format_rational(c)] for m, c in self.sorted_terms()]

    @classmethod
    def from_record(cls, rec: list) -> "MultiPoly":
        from .arith import parse_rational

        return cls({tuple(sorted((v, int(e)) for v, e in m)): parse_rational(c) for m, c in rec})


@dataclass(frozen=True)
class RationalFunction:
    """``numerator / denominator`` with polynomial (nonnegative-exponent) parts.

    Built from a Laurent polynomial by clearing the negative exponents into
    a monomial denominator and pulling the rational content out of the
    numerator.
    """

    numerator: MultiPoly
    denominator: MultiPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def from_laurent(cls, p: MultiPoly) -> "RationalFunction":
        if p.is_zero():
            return cls(MultiPoly(), MultiPoly.const(1))
        neg = tuple(sorted((v, -lo) for v in p.variables()
                           if (lo := p.min_degree(v)) < 0))
        den_mono = MultiPoly._raw({neg: Fraction(1)})
        num = p * den_mono
        content = num.rational_content()
        den_const = Fraction(content.denominator)
        num = num * den_const
        return cls(num, den_mono * den_const)

    def to_laurent(self) -> MultiPoly:
        return self.numerator * self.denominator.inverse()

    def evaluate(self, assignment) -> Fraction:
        d = self.denominator.evaluate(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes")
        return self.numerator.evaluate(assignment) / d

    def to_expr(self) -> str:
        num = self.numerator.to_expr()
        if self.denominator == MultiPoly.const(1):
            return num
        if len(self.numerator) > 1:
            num = f"({num})"
        den = self.denominator.to_expr()
        if len(self.denominator) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.to_expr()


# -- parsing ---------------------------------------------------------------

class ParseError(ValueError):
    pass


def _eval_node(node, allowed: Callable[[str], bool] | None):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, allowed)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ParseError(f"unsupported literal {node.value!r}")
        if isinstance(node.value, float):
            raise ParseError("decimal literals are not exact; write a fraction such as 1/2")
        return MultiPoly.const(node.value)
    if isinstance(node, ast.Name):
        if allowed is not None and not allowed(node.id):
            raise ParseError(f"unknown variable {node.id!r}")
        return MultiPoly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(node.operand, allowed)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, allowed)
        right = _eval_node(node.right, allowed)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.is_zero():
                raise ParseError("division by zero")
            if not right.is_monomial():
                raise ParseError("can only divide by a constant or a single term")
            return left / right
        if isinstance(node.op, ast.Pow):
            if not right.is_constant():
                raise ParseError("exponent must be a constant integer")
            k = right.constant_value()
            if k.denominator != 1:
                raise ParseError("exponent must be an integer")
            try:
                return left ** int(k)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc)) from None
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_multipoly(text: str, allowed: Callable[[str], bool] | None = None) -> MultiPoly:
    """Parse an expression like ``"x^6 - 4*x^5 + 64*u^2 + 1"`` exactly."""
    src = text.replace("^", "**").replace("−", "-").strip()
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval_node(tree, allowed)


def parse_poly(text: str, var: str = "x") -> Poly:
    """A univariate polynomial from an expression or an ascending coefficient list.

    ``"[65, -92, 72, -42, 16, -4, 1]"`` and ``"x^6-4*x^5+..."`` are both accepted.
    """
    s = text.strip()
    if s.startswith("["):
        import json

        try:
            items = json.loads(s) if '"' in s else [t.strip() for t in s.strip("[]").split(",") if t.strip()]
        except ValueError as exc:
            raise ParseError(f"bad coefficient list: {exc}") from None
        return Poly.from_strings([str(i) for i in items])
    mp = parse_multipoly(s, allowed=lambda name: name == var)
    try:
        return mp.to_univariate(var)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
