from fractions import Fraction

from hypothesis import strategies as st

from qvanhamme.exact_arith import QLaurent, QPolynomial, QRational

small_frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_int = st.integers(min_value=-4, max_value=4)

coeff_lists = st.lists(small_int, min_size=0, max_size=5)
nonzero_coeff_lists = coeff_lists.filter(lambda cs: any(cs))


@st.composite
def polys(draw, nonzero=False, max_size=5):
    cs = draw(st.lists(small_frac, min_size=1 if nonzero else 0, max_size=max_size))
    if nonzero and not any(cs):
        cs[-1] = Fraction(1)
    return QPolynomial(cs)


@st.composite
def laurents(draw, nonzero=False):
    return QLaurent(draw(polys(nonzero=nonzero)), draw(st.integers(-3, 3)))


@st.composite
def rationals(draw, nonzero=False):
    num = draw(polys(nonzero=nonzero, max_size=4))
    den = draw(polys(nonzero=True, max_size=4))
    return QRational(num, den, draw(st.integers(-3, 3)))


@st.composite
def factored_pair(draw):
    """f = c*a, g = c*b with c a random common factor; returns (f, g, c)."""
    c = draw(polys(nonzero=True, max_size=4))
    a = draw(polys(nonzero=True, max_size=4))
    b = draw(polys(max_size=4))
    return c * a, c * b, c


points = st.fractions(min_value=-7, max_value=7, max_denominator=5)
