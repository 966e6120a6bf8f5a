"""Shared hypothesis strategies."""
from fractions import Fraction

from math import isqrt

from hypothesis import assume, strategies as st

from torsionlab.qfield import SUPPORTED_S, QuadraticField

small = st.integers(-60, 60)


@st.composite
def field_elems(draw, D=None, den=True):
    D = draw(st.sampled_from((-1, -2, -3, -7, -11, -19, -43, -67, -163, 5, 13))) if D is None else D
    K = QuadraticField(D)
    a, b = draw(small), draw(small)
    q = draw(st.integers(1, 12)) if den else 1
    return K(Fraction(a, q), Fraction(b, q))


@st.composite
def integral_elem(draw, K, norm_bound=10 ** 4):
    """a + b*omega, nonzero, with Norm <= norm_bound, drawn inside the norm ellipse."""
    D = abs(K.D)
    if K.D % 4 == 1:
        # Norm = ((2a + b)^2 + |D| b^2) / 4
        bmax = isqrt(4 * norm_bound // D)
        b = draw(st.integers(-bmax, bmax))
        R = isqrt(4 * norm_bound - D * b * b)
        a = draw(st.integers(-((b + R) // 2), (R - b) // 2))
    else:
        bmax = isqrt(norm_bound // D)
        b = draw(st.integers(-bmax, bmax))
        R = isqrt(norm_bound - D * b * b)
        a = draw(st.integers(-R, R))
    assume(a or b)
    return K(a) + K(b) * K.omega


supported = st.sampled_from(SUPPORTED_S)
