"""Named curves and one-parameter families of genus-2 sextics with torsion order 11."""
from __future__ import annotations

from fractions import Fraction

from .arith import Poly
from .igusa import Family


def g_u(u) -> Poly:
    """x^6 - 4x^5 + 8(1+u)x^4 - (10+32u)x^3 + 8(1+6u+2u^2)x^2 - 4(1+6u+16u^2)x + 64u^2 + 1."""
    u = Fraction(u)
    return Poly([64 * u * u + 1, -4 * (1 + 6 * u + 16 * u * u), 8 * (1 + 6 * u + 2 * u * u),
                 -(10 + 32 * u), 8 * (1 + u), -4, 1])


def g_u_quotients(u) -> list[Poly]:
    """a_0 .. a_7 of the expansion of sqrt(g_u), as computed (see g_u_quotients_reference for the reference listing)."""
    u = Fraction(u)
    a0 = Poly([-(8 * u + 1), 4 * u + 2, -2, 1])
    a1 = Poly([1 + 4 * u, -1, 1]) / (8 * u)
    return [
        a0,
        a1,
        Poly([2, -2]),
        Poly([0, Fraction(-1, 2)]),
        Poly([0, -1 / (2 * u)]),
        Poly([2 * u, -2 * u]),
        a1 / u,
        a0 * (2 * u),
    ]


def g_u_quotients_reference(u) -> list[Poly]:
    """The reference listing: a_1 and a_6 carry ``1 + u`` as constant term.

    The exact expansion gives ``1 + 4u`` there; this list is kept so the
    discrepancy stays visible in the acceptance checks.
    """
    u = Fraction(u)
    out = g_u_quotients(u)
    a1 = Poly([1 + u, -1, 1]) / (8 * u)
    out[1] = a1
    out[6] = a1 / u
    return out


def flynn(t) -> Poly:
    """x^6 + 2x^5 + (2t+3)x^4 + 2x^3 + (t^2+1)x^2 + 2t(1-t)x + t^2."""
    t = Fraction(t)
    return Poly([t * t, 2 * t * (1 - t), t * t + 1, 2, 2 * t + 3, 2, 1])


FLYNN = Family("flynn", (Poly([0, 0, 1]), Poly([0, 2, -2]), Poly([1, 0, 1]), Poly([2]),
                         Poly([3, 2]), Poly([2]), Poly([1])), "t")

G_FAMILY = Family("g", (Poly([1, 0, 64]), Poly([-4, -24, -64]), Poly([8, 48, 16]),
                        Poly([-10, -32]), Poly([8, 8]), Poly([-4]), Poly([1])), "u")

# Factors of res12/res13 whose vanishing only marks degenerate parameters:
# t itself and the cubic of D_t, and the cubic of A_t.
FLYNN_TRIVIAL_FACTORS = (Poly([0, 1]), Poly([9, -104, 432, 16]), Poly([3, -16, 56, 4]))

# Reference invariants of the Flynn family, ascending in t (B_t as listed; see FLYNN_B_COMPUTED).
FLYNN_A = Poly([3, -16, 56, 4]) * -8
FLYNN_B = Poly([9, -120, 1045, -1120, 539, 448, 16]) * 4
FLYNN_C = Poly([27, -492, 4328, -21984, 71544, -115456, 60168, 29984, 2688, 64]) * -8
FLYNN_D = Poly.monomial(7, -4096) * Poly([9, -104, 432, 16])

# B_t as computed from the root sums; it agrees with FLYNN_B only at t = 1 and t = -1.
FLYNN_B_COMPUTED = Poly([9, -120, 640, -1120, 944, 448, 16]) * 4

# Rows of the higher-genus table: (g, m, (delta_0, ..., delta_{m-1})), N = 11 throughout.
# The g = 4 row is listed with m = 4 but five degrees; its degrees give m = 5.
HIGHER_GENUS_ROWS = (
    (3, 6, (4, 2, 1, 1, 1, 2)),
    (4, 5, (5, 1, 2, 2, 1)),
    (5, 4, (6, 1, 3, 1)),
    (6, 3, (7, 2, 2)),
    (7, 4, (8, 1, 1, 1)),
    (8, 2, (9, 2)),
    (9, 2, (10, 1)),
    (10, 1, (11,)),
)
