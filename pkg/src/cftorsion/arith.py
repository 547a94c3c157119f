"""Exact rationals and dense univariate polynomials over Q.

Rationals are :class:`fractions.Fraction`; this module adds the text format
and exact root extraction.  :class:`Poly` stores coefficients in ascending
order with no trailing zeros, so the zero polynomial is the empty tuple and
its degree is ``-inf`` (never ``-1``).
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import zip_longest
from typing import Callable, Iterable, Sequence

Rational = Fraction
NEG_INF = -math.inf


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """``p/q`` in lowest terms, or ``p`` when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """The rational k-th root of ``q`` if it exists (the positive one for even k)."""
    if k < 1:
        raise ValueError("root index must be positive")
    q = Fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r
    out = []
    for n in (q.numerator, q.denominator):
        r = _int_root(n, k)
        if r is None:
            return None
        out.append(r)
    return Fraction(out[0], out[1])


def rational_sqrt(q: Fraction) -> Fraction | None:
    return rational_root(q, 2)


def _int_root(n: int, k: int) -> int | None:
    if n in (0, 1):
        return n
    if k == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else _int_root_newton(n, k)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    r = _int_root_newton(n, k)
    return r if r**k == n else None


def _int_root_newton(n: int, k: int) -> int:
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


class Poly:
    """Dense polynomial in one variable with rational coefficients.

    >>> Poly([-1, 0, 1]) // Poly([-1, 1])
    Poly('x + 1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> "Poly":
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = cls([1])
        for r in roots:
            out = out * cls([-as_rational(r), 1])
        return out

    # -- basic data -------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly._raw([Fraction(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw([a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0)])

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw([a - b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw([])
            return Poly._raw([a * other for a in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return Poly._raw([a / other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q, r = poly_divrem(self, o)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divrem(self, o)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- evaluation and calculus -----------------------------------------
    def __call__(self, x):
        """Horner evaluation; ``x`` may be a rational or another polynomial."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if not isinstance(acc, int) else Fraction(acc)

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self / self.lc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly._raw([])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coeffs(self, fn: Callable[[Fraction], Fraction]) -> "Poly":
        return Poly(fn(c) for c in self.coeffs)

    def primitive_integer(self) -> tuple[Fraction, "Poly"]:
        """Split into ``content * primitive`` with integer, gcd-1, positive-lc primitive part."""
        if not self.coeffs:
            return Fraction(0), self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        nums = [int(c * den) for c in self.coeffs]
        g = math.gcd(*nums)
        if nums[-1] < 0:
            g = -g
        return Fraction(g, den), Poly._raw([Fraction(n // g) for n in nums])

    # -- text -------------------------------------------------------------
    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Poly":
        return cls(parse_rational(s) for s in items)

    def to_expr(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"Poly('{self.to_expr()}')"


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.degree < b.degree:
        return ZERO, a
    rem = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    inv = 1 / bc[-1]
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c * inv
        quot[k - db] = c
        for j in range(db):
            if bc[j]:
                rem[k - db + j] -= c * bc[j]
        rem[k] = Fraction(0)
    return Poly._raw(quot), Poly._raw(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; raises if both inputs are zero."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) by the Euclidean remainder sequence over Q.

    Agrees with the Sylvester determinant (see :func:`sylvester_resultant`).
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    result = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return result * b.lc**da
        r = poly_divrem(a, b)[1]
        if r.is_zero():
            return Fraction(0)
        if (da * db) % 2:
            result = -result
        result *= b.lc ** (da - r.degree)
        a, b = b, r


def sylvester_matrix(a: Sequence, b: Sequence) -> list[list]:
    """Sylvester matrix from coefficient lists in *descending* order."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = a[0] - a[0]
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(a) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(b) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: list[list], exact_div: Callable | None = None):
    """Fraction-free determinant over any integral domain with exact division.

    ``exact_div(a, b)`` must return ``a / b`` when ``b`` divides ``a``; it
    defaults to ``/`` (fine for fields and for :class:`Poly`, whose ``/``
    raises on inexact division).
    """
    div = exact_div or (lambda p, q: p / q)
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] - m[k][k]
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else div(val, prev)
            m[i][k] = m[i][k] - m[i][k]
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, Poly) else v == 0


def sylvester_resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) as the Sylvester determinant (independent of :func:`resultant`)."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if a.degree == 0 and b.degree == 0:
        return Fraction(1)
    rows = sylvester_matrix(list(reversed(a.coeffs)), list(reversed(b.coeffs)))
    return bareiss_determinant(rows)


def discriminant(f: Poly) -> Fraction:
    """``lc^(2n-2) * prod (r_i - r_j)^2`` via ``Res(f, f')``."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs positive degree")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc
