"""Exact arithmetic over Q: polynomials in q, Laurent values, rational functions in q,
and reduced fractions in the two variables (a, q).

Coefficients are ``fractions.Fraction`` at the public surface.  Internally the dense
univariate and sparse bivariate arithmetic is delegated to FLINT (``python-flint``),
which supplies fast exact gcd and division over Q.

Canonical forms
---------------
QLaurent   q^shift * base with base(0) != 0 (zero is (0, 0)).
QRational  q^shift * num / den with num(0) != 0, den(0) != 0, gcd(num, den) = 1 and
           den monic.  Equal values therefore have identical representations, and
           ``==`` is structural.
ABiRational num / den in Q[a, q], coprime, den with leading coefficient 1 in lex
           order (a > q).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

import flint

from .errors import DivisionByZero, PoleAtPoint

BigRat = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "BigRat",
    "QPolynomial",
    "QLaurent",
    "QRational",
    "ABiRational",
    "BI_CTX",
    "poly_gcd",
    "ratfun_new",
    "ratfun_eval",
    "abirat_reduce",
    "bipoly",
    "bipoly_gens",
    "bipoly_from_q",
    "bipoly_a_coeffs",
    "bipoly_eval_a",
]


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _val(p: flint.fmpq_poly) -> int:
    """Lowest exponent carrying a nonzero coefficient (0 for the zero polynomial)."""
    if p.is_zero() or p[0] != 0:
        return 0
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


_Q = flint.fmpq_poly([0, 1])
_ONE = flint.fmpq_poly([1])
_ZERO = flint.fmpq_poly([])


# ---------------------------------------------------------------------------
# Univariate polynomials


class QPolynomial:
    """Dense polynomial in q with rational coefficients (immutable)."""

    __slots__ = ("_p",)

    def __init__(self, coeffs: Union[Sequence[Scalar], flint.fmpq_poly, "QPolynomial"] = ()):
        if isinstance(coeffs, flint.fmpq_poly):
            p = coeffs
        elif isinstance(coeffs, QPolynomial):
            p = coeffs._p
        else:
            p = flint.fmpq_poly([_fmpq(c) for c in coeffs])
        self._p = p

    @classmethod
    def const(cls, c: Scalar) -> "QPolynomial":
        return cls(flint.fmpq_poly([_fmpq(c)]))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "QPolynomial":
        if k < 0:
            raise ValueError("negative exponent; use QLaurent")
        return cls(flint.fmpq_poly([_fmpq(c)]).left_shift(k))

    @classmethod
    def q(cls) -> "QPolynomial":
        return cls(_Q)

    @property
    def flint(self) -> flint.fmpq_poly:
        return self._p

    @property
    def coeffs(self) -> tuple:
        return tuple(_frac(c) for c in self._p.coeffs())

    @property
    def degree(self) -> int:
        return self._p.degree()

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    @property
    def lc(self) -> Fraction:
        if self._p.is_zero():
            return Fraction(0)
        return _frac(self._p.leading_coefficient())

    def valuation(self) -> int:
        return _val(self._p)

    def monic(self) -> "QPolynomial":
        if self._p.is_zero():
            return self
        return QPolynomial(self._p / self._p.leading_coefficient())

    def is_integral(self) -> bool:
        return all(c.q == 1 for c in self._p.coeffs())

    def __call__(self, c: Scalar) -> Fraction:
        return _frac(self._p(_fmpq(c)))

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QPolynomial):
            return other._p
        if isinstance(other, (int, Fraction)):
            return flint.fmpq_poly([_fmpq(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else QPolynomial(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else QPolynomial(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else QPolynomial(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else QPolynomial(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return QPolynomial(-self._p)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return QPolynomial(self._p**e)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quo, rem = divmod(self._p, o)
        return QPolynomial(quo), QPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "QPolynomial":
        """Exact quotient; ValueError if ``other`` does not divide ``self``."""
        quo, rem = divmod(self, other)
        if rem:
            raise ValueError("inexact polynomial division")
        return quo

    def divides(self, other) -> bool:
        """True iff ``self`` divides ``other``."""
        o = self._coerce(other)
        if self._p.is_zero():
            return o.is_zero()
        return (o % self._p).is_zero()

    def gcd(self, other) -> "QPolynomial":
        return poly_gcd(self, other)

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q^k (k >= 0)."""
        return QPolynomial(self._p.left_shift(k))

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o

    def __hash__(self):
        return hash(("QPolynomial", self.coeffs))

    def __repr__(self):
        return f"QPolynomial({_fmt_poly(self._p)})"

    def __str__(self):
        return _fmt_poly(self._p)


def _fmt_coeff(c: flint.fmpq) -> str:
    return str(c.p) if c.q == 1 else f"{c.p}/{c.q}"


def _fmt_poly(p: flint.fmpq_poly, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    parts = []
    # highest degree first, so q - 1 rather than -1 + q
    for i, c in reversed(list(enumerate(p.coeffs()))):
        if c == 0:
            continue
        if i == 0:
            mono = ""
        elif i == 1:
            mono = var
        else:
            mono = f"{var}^{i}"
        if not mono:
            term = _fmt_coeff(c)
        elif c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        else:
            term = f"{_fmt_coeff(c)}*{mono}"
        parts.append(term)
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def poly_gcd(f: QPolynomial, g: QPolynomial) -> QPolynomial:
    """Monic gcd of two polynomials; gcd(f, 0) is f made monic, gcd(0, 0) = 0."""
    f = f if isinstance(f, QPolynomial) else QPolynomial.const(f)
    g = g if isinstance(g, QPolynomial) else QPolynomial.const(g)
    if g.is_zero():
        return f.monic()
    if f.is_zero():
        return g.monic()
    h = f._p.gcd(g._p)
    if h.leading_coefficient() != 1:
        h = h / h.leading_coefficient()
    return QPolynomial(h)


# ---------------------------------------------------------------------------
# Laurent polynomials


class QLaurent:
    """q^shift * base, with base(0) != 0 for nonzero values."""

    __slots__ = ("_b", "_s")

    def __init__(self, base: Union[QPolynomial, flint.fmpq_poly, Scalar] = 0, shift: int = 0):
        if isinstance(base, QPolynomial):
            b = base._p
        elif isinstance(base, flint.fmpq_poly):
            b = base
        else:
            b = flint.fmpq_poly([_fmpq(base)])
        if b.is_zero():
            shift = 0
        else:
            v = _val(b)
            if v:
                b = b.right_shift(v)
                shift += v
        self._b = b
        self._s = shift

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "QLaurent":
        return cls(flint.fmpq_poly([_fmpq(c)]), e)

    @property
    def base(self) -> QPolynomial:
        return QPolynomial(self._b)

    @property
    def shift(self) -> int:
        return self._s

    def is_zero(self) -> bool:
        return self._b.is_zero()

    def __bool__(self):
        return not self._b.is_zero()

    def coeff_dict(self) -> dict:
        """Map exponent -> nonzero coefficient."""
        return {i + self._s: _frac(c) for i, c in enumerate(self._b.coeffs()) if c != 0}

    @staticmethod
    def _coerce(other):
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, (int, Fraction, QPolynomial, flint.fmpq_poly)):
            return QLaurent(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._b.is_zero():
            return self
        if self._b.is_zero():
            return o
        s = min(self._s, o._s)
        return QLaurent(self._b.left_shift(self._s - s) + o._b.left_shift(o._s - s), s)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent(-self._b, self._s)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QLaurent(self._b * o._b, self._s + o._s)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e >= 0:
            return QLaurent(self._b**e, self._s * e)
        if self._b.degree() == 0:
            return QLaurent(flint.fmpq_poly([1 / self._b[0]]), self._s).__pow__(-e)
        raise ValueError("negative power of a non-monomial Laurent polynomial")

    def __truediv__(self, other):
        return QRational.coerce(self) / other

    def __rtruediv__(self, other):
        return QRational.coerce(other) / QRational.coerce(self)

    def __call__(self, c: Scalar) -> Fraction:
        c = Fraction(c)
        if self._b.is_zero():
            return Fraction(0)
        if c == 0:
            if self._s < 0:
                raise PoleAtPoint("negative power of q at q = 0")
            return _frac(self._b(0)) if self._s == 0 else Fraction(0)
        return _frac(self._b(_fmpq(c))) * c**self._s

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._s == o._s and self._b == o._b

    def __hash__(self):
        return hash(("QLaurent", self._s, tuple(self._b.coeffs())))

    def __repr__(self):
        return f"QLaurent({_fmt_poly(self._b)}, shift={self._s})"


# ---------------------------------------------------------------------------
# Rational functions in q


def _canon(n: flint.fmpq_poly, d: flint.fmpq_poly, s: int):
    if d.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if n.is_zero():
        return _ZERO, _ONE, 0
    v = _val(n)
    if v:
        n = n.right_shift(v)
        s += v
    v = _val(d)
    if v:
        d = d.right_shift(v)
        s -= v
    if d.degree() > 0:
        g = n.gcd(d)
        if g.degree() > 0:
            n = n / g
            d = d / g
    lc = d.leading_coefficient()
    if lc != 1:
        n = n / lc
        d = d / lc
    return n, d, s


class QRational:
    """Canonical reduced rational function q^shift * num / den over Q."""

    __slots__ = ("_n", "_d", "_s")

    def __init__(self, num=0, den=1, shift: int = 0):
        if isinstance(num, QLaurent):
            num, shift = num._b, shift + num._s
        if isinstance(den, QLaurent):
            den, shift = den._b, shift - den._s
        n = _to_fmpq_poly(num)
        d = _to_fmpq_poly(den)
        self._n, self._d, self._s = _canon(n, d, shift)

    @classmethod
    def _raw(cls, n, d, s) -> "QRational":
        obj = cls.__new__(cls)
        obj._n, obj._d, obj._s = n, d, s
        return obj

    @classmethod
    def coerce(cls, x) -> "QRational":
        if isinstance(x, QRational):
            return x
        if isinstance(x, QLaurent):
            if x._b.is_zero():
                return cls._raw(_ZERO, _ONE, 0)
            return cls._raw(x._b, _ONE, x._s)
        return cls(x)

    @property
    def num(self) -> QPolynomial:
        return QPolynomial(self._n)

    @property
    def den(self) -> QPolynomial:
        return QPolynomial(self._d)

    @property
    def shift(self) -> int:
        return self._s

    def numerator_poly(self) -> QPolynomial:
        """Lowest-terms polynomial numerator once the q-shift is cleared."""
        return QPolynomial(self._n.left_shift(self._s) if self._s > 0 else self._n)

    def denominator_poly(self) -> QPolynomial:
        """Lowest-terms polynomial denominator once the q-shift is cleared."""
        return QPolynomial(self._d.left_shift(-self._s) if self._s < 0 else self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self):
        return not self._n.is_zero()

    def is_laurent(self) -> bool:
        return self._d.degree() == 0

    def to_laurent(self) -> QLaurent:
        if self._d.degree() != 0:
            raise ValueError("not a Laurent polynomial")
        return QLaurent(self._n, self._s)

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QRational):
            return other
        if isinstance(other, (int, Fraction, QPolynomial, QLaurent)):
            return QRational.coerce(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._n.is_zero():
            return self
        if self._n.is_zero():
            return o
        s = min(self._s, o._s)
        n1 = self._n.left_shift(self._s - s) if self._s != s else self._n
        n2 = o._n.left_shift(o._s - s) if o._s != s else o._n
        d1, d2 = self._d, o._d
        if d1 == d2:
            return QRational._raw(*_canon(n1 + n2, d1, s))
        g = d1.gcd(d2)
        if g.degree() > 0:
            d1g, d2g = d1 / g, d2 / g
            return QRational._raw(*_canon(n1 * d2g + n2 * d1g, d1 * d2g, s))
        return QRational._raw(*_canon(n1 * d2 + n2 * d1, d1 * d2, s))

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(-self._n, self._d, self._s)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._n.is_zero() or o._n.is_zero():
            return QRational._raw(_ZERO, _ONE, 0)
        # cross-cancel before multiplying keeps the final gcd small
        n1, d1, n2, d2 = self._n, self._d, o._n, o._d
        if d2.degree() > 0 and n1.degree() > 0:
            g = n1.gcd(d2)
            if g.degree() > 0:
                n1, d2 = n1 / g, d2 / g
        if d1.degree() > 0 and n2.degree() > 0:
            g = n2.gcd(d1)
            if g.degree() > 0:
                n2, d1 = n2 / g, d1 / g
        n, d = n1 * n2, d1 * d2
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        return QRational._raw(n, d, self._s + o._s)

    __rmul__ = __mul__

    def inverse(self) -> "QRational":
        if self._n.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        n, d = self._d, self._n
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        return QRational._raw(n, d, -self._s)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self._n.is_zero():
            return QRational._raw(_ONE, _ONE, 0) if e == 0 else self
        return QRational._raw(self._n**e, self._d**e, self._s * e)

    def __call__(self, c: Scalar) -> Fraction:
        return ratfun_eval(self, c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._s == o._s and self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash(("QRational", self._s, tuple(self._n.coeffs()), tuple(self._d.coeffs())))

    def __repr__(self):
        return f"QRational(({_fmt_poly(self._n)}) / ({_fmt_poly(self._d)}), shift={self._s})"

    def __str__(self):
        head = f"q^{self._s} * " if self._s else ""
        if self._d.degree() == 0:
            return f"{head}({_fmt_poly(self._n)})"
        return f"{head}({_fmt_poly(self._n)}) / ({_fmt_poly(self._d)})"


def _to_fmpq_poly(x) -> flint.fmpq_poly:
    if isinstance(x, flint.fmpq_poly):
        return x
    if isinstance(x, QPolynomial):
        return x._p
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return flint.fmpq_poly([_fmpq(x)])
    raise TypeError(f"cannot convert {type(x).__name__} to a polynomial")


def ratfun_new(num, den) -> QRational:
    """Canonical reduced quotient of two Laurent polynomials (or polynomials/scalars)."""
    n = QRational.coerce(num)
    d = QRational.coerce(den)
    if d.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    return n / d


def ratfun_eval(x: QRational, c: Scalar) -> Fraction:
    """Value of x at q = c; PoleAtPoint when the reduced denominator vanishes there."""
    c = Fraction(c)
    fc = _fmpq(c)
    dv = x._d(fc)
    if dv == 0:
        raise PoleAtPoint(f"denominator vanishes at q = {c}")
    if x._n.is_zero():
        return Fraction(0)
    if c == 0:
        if x._s < 0:
            raise PoleAtPoint("negative power of q at q = 0")
        if x._s > 0:
            return Fraction(0)
    return _frac(x._n(fc) / dv) * c**x._s


# ---------------------------------------------------------------------------
# Bivariate fractions in (a, q)

BI_CTX = flint.fmpq_mpoly_ctx.get(("a", "q"), "lex")
_BA, _BQ = BI_CTX.gens()
_BONE = BI_CTX.from_dict({(0, 0): 1})
_BZERO = BI_CTX.from_dict({})


def bipoly_gens():
    """The generators (a, q) of Q[a, q]."""
    return _BA, _BQ


def bipoly(terms: dict) -> flint.fmpq_mpoly:
    """Bivariate polynomial from {(deg_a, deg_q): coeff}."""
    return BI_CTX.from_dict({k: _fmpq(v) for k, v in terms.items()})


def bipoly_from_q(p, a_deg: int = 0) -> flint.fmpq_mpoly:
    """Lift a polynomial in q (times a^a_deg) into Q[a, q]."""
    p = _to_fmpq_poly(p)
    return BI_CTX.from_dict({(a_deg, i): c for i, c in enumerate(p.coeffs()) if c != 0})


def bipoly_a_coeffs(f: flint.fmpq_mpoly) -> list:
    """Coefficients of f viewed as a polynomial in a, as QPolynomials (index = a-degree)."""
    if f.is_zero():
        return []
    buckets: dict = {}
    for (ea, eq), c in f.to_dict().items():
        buckets.setdefault(ea, {})[eq] = c
    out = []
    for ea in range(max(buckets) + 1):
        row = buckets.get(ea, {})
        if not row:
            out.append(QPolynomial())
            continue
        coeffs = [flint.fmpq(0)] * (max(row) + 1)
        for eq, c in row.items():
            coeffs[eq] = c
        out.append(QPolynomial(flint.fmpq_poly(coeffs)))
    return out


def _bi_deg_a(f: flint.fmpq_mpoly) -> int:
    return -1 if f.is_zero() else f.degrees()[0]


def bipoly_eval_a(f: flint.fmpq_mpoly, c: Scalar) -> QPolynomial:
    """Specialize a = c (rational) in f."""
    out = flint.fmpq_poly([])
    c = _fmpq(c)
    for ea, coeff in enumerate(bipoly_a_coeffs(f)):
        if coeff:
            out += coeff._p * c**ea
    return QPolynomial(out)


def _bipoly_subs_a_qpow(f: flint.fmpq_mpoly, e: int) -> QLaurent:
    """Specialize a = q^e in f (e may be negative)."""
    acc: dict = {}
    for (ea, eq), c in f.to_dict().items():
        k = eq + e * ea
        acc[k] = acc.get(k, 0) + c
    acc = {k: v for k, v in acc.items() if v != 0}
    if not acc:
        return QLaurent(0)
    lo = min(acc)
    coeffs = [flint.fmpq(0)] * (max(acc) - lo + 1)
    for k, v in acc.items():
        coeffs[k - lo] = v
    return QLaurent(flint.fmpq_poly(coeffs), lo)


def _bi_canon(n: flint.fmpq_mpoly, d: flint.fmpq_mpoly):
    if d.is_zero():
        raise DivisionByZero("bivariate fraction with zero denominator")
    if n.is_zero():
        return _BZERO, _BONE
    if not d.is_constant():
        g = n.gcd(d)
        if not g.is_constant():
            n = n / g
            d = d / g
    lc = d.leading_coefficient()
    if lc != 1:
        n = n / lc
        d = d / lc
    return n, d


class ABiRational:
    """Reduced fraction num/den of polynomials in Q[a, q]."""

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        self._n, self._d = _bi_canon(_to_bipoly(num), _to_bipoly(den))

    @classmethod
    def _raw(cls, n, d) -> "ABiRational":
        obj = cls.__new__(cls)
        obj._n, obj._d = n, d
        return obj

    @classmethod
    def monomial(cls, ea: int, eq: int, c: Scalar = 1) -> "ABiRational":
        """c * a^ea * q^eq with possibly negative exponents."""
        num = {(max(ea, 0), max(eq, 0)): c}
        den = {(max(-ea, 0), max(-eq, 0)): 1}
        return cls(bipoly(num), bipoly(den))

    @classmethod
    def from_q(cls, x) -> "ABiRational":
        x = QRational.coerce(x)
        return cls(bipoly_from_q(x.numerator_poly()), bipoly_from_q(x.denominator_poly()))

    @property
    def num(self) -> flint.fmpq_mpoly:
        return self._n

    @property
    def den(self) -> flint.fmpq_mpoly:
        return self._d

    def num_a_coeffs(self) -> list:
        return bipoly_a_coeffs(self._n)

    def den_a_coeffs(self) -> list:
        return bipoly_a_coeffs(self._d)

    @property
    def deg_a(self) -> tuple:
        """(deg_a(num), deg_a(den))."""
        return _bi_deg_a(self._n), _bi_deg_a(self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self):
        return not self._n.is_zero()

    @staticmethod
    def _coerce(other):
        if isinstance(other, ABiRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ABiRational(other)
        if isinstance(other, (QPolynomial, QLaurent, QRational)):
            return ABiRational.from_q(other)
        if isinstance(other, flint.fmpq_mpoly):
            return ABiRational._raw(other, _BONE)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return ABiRational._raw(*_bi_canon(self._n + o._n, self._d))
        return ABiRational._raw(*_bi_canon(self._n * o._d + o._n * self._d, self._d * o._d))

    __radd__ = __add__

    def __neg__(self):
        return ABiRational._raw(-self._n, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ABiRational._raw(*_bi_canon(self._n * o._n, self._d * o._d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._n.is_zero():
            raise DivisionByZero("division by zero bivariate fraction")
        return ABiRational._raw(*_bi_canon(self._n * o._d, self._d * o._n))

    def __pow__(self, e: int):
        if e < 0:
            return ABiRational(1) / (self ** (-e))
        return ABiRational._raw(self._n**e, self._d**e)

    def subs_a(self, c: Scalar) -> QRational:
        """Specialize a = c; PoleAtPoint if the reduced denominator vanishes identically."""
        den = bipoly_eval_a(self._d, c)
        if den.is_zero():
            raise PoleAtPoint(f"denominator vanishes at a = {c}")
        return QRational(bipoly_eval_a(self._n, c), den)

    def subs_a_qpow(self, e: int) -> QRational:
        """Specialize a = q^e."""
        den = _bipoly_subs_a_qpow(self._d, e)
        if den.is_zero():
            raise PoleAtPoint(f"denominator vanishes at a = q^{e}")
        return ratfun_new(_bipoly_subs_a_qpow(self._n, e), den)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash(("ABiRational", str(self._n), str(self._d)))

    def __repr__(self):
        return f"ABiRational(({self._n}) / ({self._d}))"


def _to_bipoly(x) -> flint.fmpq_mpoly:
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return BI_CTX.from_dict({(0, 0): _fmpq(x)}) if x != 0 else _BZERO
    if isinstance(x, QPolynomial):
        return bipoly_from_q(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a bivariate polynomial")


def abirat_reduce(num, den) -> ABiRational:
    """Reduce num/den in Q[a, q] to lowest terms (den normalized to leading coefficient 1)."""
    return ABiRational(num, den)

