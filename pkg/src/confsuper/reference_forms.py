"""Closed-form identities as tabulated in the literature, transcribed verbatim.

Each function takes accessors rather than concrete objects so the same
transcription can be evaluated symbolically (on Polynomial symbols) or on an
explicit system (on RationalFunctions). Accessors use 1-based indices:

    C(letter, i, j)   canonical coefficient, e.g. C("A", 1, 2)
    a(i, j)           tensor component
    da(i, j, k)       d_k a^{ij}
    dda(i, j, k, l)   d_k d_l a^{ij}

Where a transcription disagrees with a derivation the forms here are kept as
printed; the checks that use them report the mismatch.
"""

from __future__ import annotations

from fractions import Fraction

THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)
TWO_THIRDS = Fraction(2, 3)


def symmetry_equations(C, a, da):
    """The fifteen first-derivative equations as (label, lhs - rhs) pairs."""
    A = lambda i, j: C("A", i, j)
    B = lambda i, j: C("B", i, j)
    Cc = lambda i, j: C("C", i, j)
    a11, a22, a33 = a(1, 1), a(2, 2), a(3, 3)
    a12, a13, a23 = a(1, 2), a(1, 3), a(2, 3)
    out = []

    def eq(label, lhs, rhs):
        out.append((label, lhs - rhs))

    br1 = a12 * A(2, 2) - (a22 - a11) * A(1, 2) - a23 * A(1, 3) + a13 * A(2, 3)
    eq("3a12_1", 3 * da(1, 2, 1), br1)
    eq("3(a11-a22)_2", 3 * (da(1, 1, 2) - da(2, 2, 2)), 2 * (-br1))
    br3 = -a12 * Cc(2, 3) + (a33 - a11) * Cc(1, 3) + a23 * Cc(1, 2) - a13 * Cc(3, 3)
    eq("3a13_3", 3 * da(1, 3, 3), br3)
    eq("3(a33-a11)_1", 3 * (da(3, 3, 1) - da(1, 1, 1)), 2 * (-br3))
    eq("3a23_2", 3 * da(2, 3, 2),
       a23 * (B(3, 3) - B(2, 2)) - (a33 - a22) * B(2, 3) - a13 * B(1, 2) + a12 * B(1, 3))
    eq("3(a22-a11)_3", 3 * (da(2, 2, 3) - da(1, 1, 3)),
       2 * (-a23 * (A(1, 2) + B(3, 3) - B(2, 2)) + (a33 - a22) * B(2, 3) + a13 * (B(1, 2) + A(3, 3))
            + a12 * (A(2, 3) - B(1, 3)) + (a11 - a33) * A(1, 3)))
    br7 = -a23 * A(1, 2) + (a11 - a33) * A(1, 3) + a13 * A(3, 3) + a12 * A(2, 3)
    eq("3a13_1", 3 * da(1, 3, 1), br7)
    eq("3(a33-a11)_3", 3 * (da(3, 3, 3) - da(1, 1, 3)), 2 * br7)
    eq("3(a33-a11)_2", 3 * (da(3, 3, 2) - da(1, 1, 2)),
       2 * (a13 * (A(2, 3) - Cc(1, 2)) + (a22 - a33) * Cc(2, 3) + (a11 - a22) * A(1, 2)
            + a12 * (A(2, 2) + Cc(1, 3)) - a23 * (A(1, 3) + Cc(2, 2) - Cc(3, 3))))
    eq("3a23_3", 3 * da(2, 3, 3),
       a13 * Cc(1, 2) - (a22 - a33) * Cc(2, 3) - a12 * Cc(1, 3) - a23 * (Cc(3, 3) - Cc(2, 2)))
    br11 = -a13 * B(2, 3) + (a22 - a11) * B(1, 2) - a12 * B(2, 2) + a23 * B(1, 3)
    eq("3a12_2", 3 * da(1, 2, 2), br11)
    eq("3(a22-a11)_1", 3 * (da(2, 2, 1) - da(1, 1, 1)), 2 * (-br11))
    eq("3a23_1", 3 * da(2, 3, 1),
       a12 * (B(2, 3) + Cc(2, 2)) + a11 * (B(1, 3) + Cc(1, 2)) - a22 * Cc(1, 2) - a33 * B(1, 3)
       + a13 * (B(3, 3) + Cc(2, 3)) - a23 * (Cc(1, 3) + B(1, 2)))
    eq("3a12_3", 3 * da(1, 2, 3),
       a12 * (-2 * B(2, 3) + Cc(2, 2)) + a11 * (Cc(1, 2) - 2 * B(1, 3)) - a22 * Cc(1, 2)
       + 2 * a33 * B(1, 3) + a13 * (-2 * B(3, 3) + Cc(2, 3)) + a23 * (-Cc(1, 3) + 2 * B(1, 2)))
    eq("3a13_2", 3 * da(1, 3, 2),
       a12 * (B(2, 3) - 2 * Cc(2, 2)) + a11 * (B(1, 3) - 2 * Cc(1, 2)) + 2 * a22 * Cc(1, 2)
       - a33 * B(1, 3) + a13 * (B(3, 3) - 2 * Cc(2, 3)) + a23 * (2 * Cc(1, 3) - B(1, 2)))
    return out


def algebraic_obstruction(C, a):
    """The first obstruction, free of derivatives, as printed."""
    A = lambda i, j: C("A", i, j)
    B = lambda i, j: C("B", i, j)
    Cc = lambda i, j: C("C", i, j)
    a11, a22, a33 = a(1, 1), a(2, 2), a(3, 3)
    a12, a13, a23 = a(1, 2), a(1, 3), a(2, 3)
    return (a12 * (Cc(2, 2) - B(2, 3) + A(1, 3)) + (a11 - a22) * (Cc(1, 2) - A(2, 3))
            + (a11 - a33) * (A(2, 3) - B(1, 3)) + a13 * (Cc(2, 3) - B(2, 3) - A(1, 2))
            + a23 * (B(1, 2) - Cc(1, 3) + A(3, 3) - A(2, 2)))


def algebraic_obstruction_corrected(C, a):
    """Same expression with B^33 in the a^13 term, which is what the derivation produces."""
    return algebraic_obstruction(C, a) + a(1, 3) * (C("B", 2, 3) - C("B", 3, 3))


def second_order_obstructions(C, a, dda):
    """The three obstructions involving the D terms, as (label, lhs - rhs)."""
    D = lambda i, j: C("D", i, j)
    a11, a22, a33 = a(1, 1), a(2, 2), a(3, 3)
    a12, a13, a23 = a(1, 2), a(1, 3), a(2, 3)
    return [
        ("2a12_11", 2 * dda(1, 2, 1, 1) - (a12 * D(2, 2) + (a11 - a22) * D(1, 2) + a13 * D(2, 3) - a23 * D(1, 3))),
        ("2a13_11", 2 * dda(1, 3, 1, 1) - (a13 * D(3, 3) + (a11 - a33) * D(1, 3) + a12 * D(2, 3) - a23 * D(1, 2))),
        ("2a23_22", 2 * dda(2, 3, 2, 2)
         - (a23 * (D(3, 3) - D(2, 2)) + (a22 - a33) * D(2, 3) + a12 * D(1, 3) - a13 * D(1, 2))),
    ]


def d_quadratics(F):
    """The five D terms as quadratics in the ten functions; F(name) -> value."""
    A12, A13, A22, A23, A33 = (F(n) for n in ("A12", "A13", "A22", "A23", "A33"))
    B12, B22, B23, B33, C33 = (F(n) for n in ("B12", "B22", "B23", "B33", "C33"))
    return {
        "D12": TWO_THIRDS * (-A12 * B12 + A23 * B23 + B33 * A33 - B33 * A22 - A23 * C33),
        "D13": TWO_THIRDS * (-A13 * B12 - B22 * A23 - B23 * A33 + B23 * A22 + A23 * B33 + A12 * A23),
        "D22": TWO_THIRDS * (A12 * A12 + B12 * A22 - B22 * A12 + C33 * A13 + 2 * B33 * A12 - 2 * A33 * B12
                             - C33 * B23 - B33 * B22 + B23 * B23 + B33 * B33 - B12 * B12 - A33 * A33
                             + A33 * A22 - B23 * A13),
        "D23": TWO_THIRDS * (A23 * A33 + B12 * A23 - B23 * A12 - A13 * B33),
        "D33": TWO_THIRDS * (B33 * A12 - B12 * B12 - A33 * B12 - C33 * B23 - B33 * B22 + B23 * B23 + B33 * B33),
    }


def a12_derivatives(F):
    """d_x, d_y, d_z of A^12 as quadratics in the ten functions."""
    A12, A13, A22, A23, A33 = (F(n) for n in ("A12", "A13", "A22", "A23", "A33"))
    B12, B22, B23, B33, C33 = (F(n) for n in ("B12", "B22", "B23", "B33", "C33"))
    dx = (THIRD * A23 * A13 + A23 * B23 + B33 * A33 - THIRD * A12 * A22 - THIRD * A12 * B12
          - B33 * A22 - A23 * C33)
    dy = (Fraction(1, 2) * A23 * A23 + SIXTH * A12 * A12 + Fraction(1, 2) * B12 * B12 + SIXTH * A33 * A33
          - SIXTH * C33 * A13 - SIXTH * B33 * B33 - SIXTH * A22 * A33 - THIRD * B33 * A12
          + THIRD * A33 * B12 + SIXTH * B33 * B22 - SIXTH * B23 * B23 + SIXTH * C33 * B23)
    dz = THIRD * A23 * A33 + TWO_THIRDS * B12 * A23 + THIRD * A13 * A12 - THIRD * A23 * A22
    return (dx, dy, dz)


def flat_ideal(F):
    """I^(a) .. I^(f); the first five cut out flat Helmholtz systems, the sixth is a consequence."""
    A12, A13, A22, A23, A33 = (F(n) for n in ("A12", "A13", "A22", "A23", "A33"))
    B12, B22, B23, B33, C33 = (F(n) for n in ("B12", "B22", "B23", "B33", "C33"))
    return {
        "a": -A22 * B23 + B23 * A33 + B12 * A13 + A23 * B22 - A12 * A23 - A23 * B33,
        "b": (A33 * A33 + B12 * A33 - A33 * A22 - A12 * B33 - A13 * C33 + A12 * B22
              - B12 * A22 + A13 * B23 - A12 * A12),
        "c": B23 * C33 + B12 * A33 + B12 * B12 + B22 * B33 - B33 * B33 - A12 * B33 - B23 * B23,
        "d": -B12 * A23 - A33 * A23 + A13 * B33 + A12 * B23,
        "e": -B23 * A23 + C33 * A23 + A22 * B33 - A33 * B33 + B12 * A12,
        "f": (A13 * C33 + 2 * A13 * B23 + B22 * B33 - B33 * B33 + A33 * A22 - A33 * A33
              + 2 * A12 * B22 + A12 * A12 - 2 * B12 * A22 + B12 * B12 + B23 * C33 - B23 * B23
              - 3 * A23 * A23),
    }


def sphere_d_from_ideal(I):
    """The ideal-combination column of the sphere D terms, as printed."""
    return {
        "D12": -TWO_THIRDS * I["e"],
        "D13": -TWO_THIRDS * I["a"],
        "D22": -TWO_THIRDS * I["a"] + TWO_THIRDS * I["b"],
        "D23": -TWO_THIRDS * I["d"],
        "D33": -TWO_THIRDS * I["a"],
    }


def sphere_d_from_gradient(C, G, dG):
    """The gradient column: D^ij from G = log(lambda); G(k) = G_k, dG(k, l) = d_l G_k."""
    def lin(i, j):
        return C("A", i, j) * G(1) + C("B", i, j) * G(2) + C("C", i, j) * G(3)

    return {
        "D12": dG(1, 2) + G(1) * G(2) - lin(1, 2),
        "D13": dG(1, 3) + G(1) * G(3) - lin(1, 3),
        "D22": dG(2, 2) + G(2) * G(2) - dG(1, 1) - G(1) * G(1) - lin(2, 2),
        "D23": dG(2, 3) + G(2) * G(3) - lin(2, 3),
        "D33": dG(3, 3) + G(3) * G(3) - dG(1, 1) - G(1) * G(1) - lin(3, 3),
    }


def sphere_d_from_ideal_corrected(I):
    """Ideal-combination column with the D22 and D33 entries rederived from the gradient column."""
    out = sphere_d_from_ideal(I)
    out["D22"] = -TWO_THIRDS * (I["b"] + I["c"])
    out["D33"] = -TWO_THIRDS * I["c"]
    return out
