"""Division polynomials of y^2 = x^3 + a2 x^2 + a4 x + a6.

f_n is psi_n for odd n and psi_n / (2y) for even n, so every f_n is a
polynomial in x alone.  Its roots are the x-coordinates of the nonzero
points killed by n (excluding 2-torsion for even n).
"""
from __future__ import annotations

from .. import poly


def _invariants(E):
    a2, a4, a6 = E.a2, E.a4, E.a6
    b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    return b2, b4, b6, b8


def division_polynomials(E, n: int):
    """List [f_0, ..., f_n] as coefficient lists (lowest degree first)."""
    b2, b4, b6, b8 = _invariants(E)
    F = E.rhs_poly()
    F2x16 = poly.scale(poly.mul(F, F), 16)
    f = {0: [], 1: [1], 2: [1]}
    f[3] = poly.trim([b8, 3 * b6, 3 * b4, b2, 3])
    f[4] = poly.trim([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2])

    def get(k):
        if k in f:
            return f[k]
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                val = poly.sub(poly.mul(F2x16, poly.mul(get(m + 2), poly.power(get(m), 3))),
                               poly.mul(get(m - 1), poly.power(get(m + 1), 3)))
            else:
                val = poly.sub(poly.mul(get(m + 2), poly.power(get(m), 3)),
                               poly.mul(F2x16, poly.mul(get(m - 1), poly.power(get(m + 1), 3))))
        else:
            val = poly.mul(get(m), poly.sub(poly.mul(get(m + 2), poly.power(get(m - 1), 2)),
                                            poly.mul(get(m - 2), poly.power(get(m + 1), 2))))
        f[k] = val
        return val

    return [get(k) for k in range(n + 1)]


def division_poly(E, ell: int):
    """psi_ell for odd ell (leading coefficient ell); for even ell, psi_ell / 2y."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return division_polynomials(E, ell)[ell]


def psi3(E):
    return division_poly(E, 3)
