"""Constructors for the q-objects that appear in the congruences.

Conventions: ``[k] = (1 - q^k)/(1 - q)`` for every integer k, ``(q^s; q^d)_k`` is the
product of ``1 - q^(s + j d)`` for ``0 <= j < k``, and any term containing
``1/(q^d; q^d)_j`` with ``j < 0`` is zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import flint

from .errors import InvalidParams
from .exact_arith import (
    ABiRational,
    QLaurent,
    QPolynomial,
    QRational,
    bipoly,
    bipoly_gens,
)

__all__ = [
    "MVariant",
    "ClaimParams",
    "APochSign",
    "one_minus_qpow",
    "cyclotomic",
    "q_int",
    "q_poch",
    "a_poch",
    "q_binom",
    "residue_m",
    "modulus",
    "wz_F",
    "wz_G",
    "cubic_sum",
    "a_param_sum",
    "mainth_lhs",
    "mainth_rhs",
    "binom2",
]


def binom2(x: int) -> int:
    """x choose 2 for any integer x."""
    return x * (x - 1) // 2


class MVariant(enum.Enum):
    """Truncation point of the main sum: the residue m, or the full range n - 1."""

    AT_M = "m"
    FULL = "full"

    @classmethod
    def parse(cls, value) -> "MVariant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "m": cls.AT_M,
            "atm": cls.AT_M,
            "half": cls.AT_M,
            "at_m": cls.AT_M,
            "full": cls.FULL,
            "n-1": cls.FULL,
            "atnminus1": cls.FULL,
            "p-1": cls.FULL,
        }
        try:
            return aliases[key]
        except KeyError:
            raise InvalidParams(f"unknown M variant {value!r} (use 'm' or 'full')") from None


def residue_m(n: int, d: int, r: int) -> int:
    """Least nonnegative m with m*d + r divisible by n."""
    if n < 1 or d < 1:
        raise InvalidParams(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if math.gcd(n, d) != 1:
        raise InvalidParams(f"gcd(n, d) = gcd({n}, {d}) != 1")
    if n == 1:
        return 0
    return (-r * pow(d, -1, n)) % n


@dataclass(frozen=True)
class ClaimParams:
    n: int
    d: int
    r: int
    M_variant: MVariant = MVariant.AT_M
    m: int = field(init=False)

    def __post_init__(self):
        if math.gcd(self.r, self.d) != 1:
            raise InvalidParams(f"gcd(r, d) = gcd({self.r}, {self.d}) != 1")
        object.__setattr__(self, "M_variant", MVariant.parse(self.M_variant))
        object.__setattr__(self, "m", residue_m(self.n, self.d, self.r))

    @property
    def M(self) -> int:
        return self.m if self.M_variant is MVariant.AT_M else self.n - 1

    @property
    def N(self) -> int:
        """The exponent m*d + r, a multiple of n."""
        return self.m * self.d + self.r


# ---------------------------------------------------------------------------
# univariate building blocks


def one_minus_qpow(e: int) -> QLaurent:
    """1 - q^e as a Laurent polynomial."""
    if e == 0:
        return QLaurent(0)
    if e > 0:
        return QLaurent(flint.fmpq_poly([1] + [0] * (e - 1) + [-1]))
    # 1 - q^e = q^e (q^{-e} - 1)
    return QLaurent(flint.fmpq_poly([-1] + [0] * (-e - 1) + [1]), e)


def q_int(k: int) -> QLaurent:
    if k == 0:
        return QLaurent(0)
    if k > 0:
        return QLaurent(flint.fmpq_poly([1] * k))
    return QLaurent(flint.fmpq_poly([-1] * (-k)), k)


def q_poch(s: int, d: int, k: int) -> QLaurent:
    """(q^s; q^d)_k."""
    if k < 0:
        raise ValueError("q_poch needs k >= 0")
    acc = QLaurent(1)
    for j in range(k):
        e = s + j * d
        if e == 0:
            return QLaurent(0)
        acc = acc * one_minus_qpow(e)
    return acc


@lru_cache(maxsize=None)
def _cyclotomic_flint(n: int) -> flint.fmpq_poly:
    p = flint.fmpq_poly([-1] + [0] * (n - 1) + [1])
    for t in range(1, n):
        if n % t == 0:
            p = p / _cyclotomic_flint(t)
    return p


def cyclotomic(n: int) -> QPolynomial:
    """The n-th cyclotomic polynomial, by exact division of q^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic needs n >= 1")
    return QPolynomial(_cyclotomic_flint(n))


def q_binom(n: int, k: int) -> QPolynomial:
    """Gaussian binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        return QPolynomial()
    k = min(k, n - k)
    acc = flint.fmpq_poly([1])
    for i in range(1, k + 1):
        # partial products are themselves Gaussian binomials, so every division is exact
        acc = acc * one_minus_qpow(n - k + i).base.flint / one_minus_qpow(i).base.flint
    return QPolynomial(acc)


def modulus(n: int, e: int) -> QPolynomial:
    """[n] * Phi_n(q)^e."""
    if n < 1:
        raise ValueError("modulus needs n >= 1")
    return q_int(n).base * cyclotomic(n) ** e


# ---------------------------------------------------------------------------
# indeterminate a


class APochSign(enum.Enum):
    A = "a"
    A_INVERSE = "a_inverse"


def _a_factor(t: int, sign: APochSign):
    """Factor 1 - a q^t (sign A) or 1 - q^t/a (sign A_INVERSE) as (poly, a_den, q_den)."""
    a, q = bipoly_gens()
    if sign is APochSign.A:
        if t >= 0:
            return 1 - a * q**t, 0, 0
        return q ** (-t) - a, 0, -t
    if t >= 0:
        return a - q**t, 1, 0
    return a * q ** (-t) - 1, 1, -t


def a_poch(e: int, sign, d: int, k: int) -> ABiRational:
    """(a q^e; q^d)_k for sign 'a', (q^e / a; q^d)_k for sign 'a_inverse'."""
    sign = APochSign(sign if not isinstance(sign, APochSign) else sign.value)
    num = bipoly({(0, 0): 1})
    ea = eq = 0
    for j in range(k):
        f, da, dq = _a_factor(e + j * d, sign)
        num = num * f
        ea += da
        eq += dq
    return ABiRational(num, bipoly({(ea, eq): 1}))


# ---------------------------------------------------------------------------
# sums


def cubic_sum(d: int, r: int, M: int) -> QRational:
    """Sum over 0 <= k <= M of (-1)^k q^(d C(k+1,2) - k r) [2dk+r] (q^r;q^d)_k^3 / (q^d;q^d)_k^3."""
    # every term shares the denominator chain (q^d;q^d)_k^3, so accumulate over the
    # largest one and reduce once
    nums = []
    poch = QLaurent(1)
    for k in range(M + 1):
        if k:
            poch = poch * one_minus_qpow(r + (k - 1) * d)
        sign = -1 if k % 2 else 1
        head = QLaurent.monomial(d * (k * (k + 1) // 2) - k * r, sign) * q_int(2 * d * k + r)
        nums.append(head * poch**3)
    steps = [one_minus_qpow((j + 1) * d).base.flint ** 3 for j in range(M)]
    return _chain_sum(nums, steps)


def _chain_sum(nums: list, steps: list) -> QRational:
    """sum_k nums[k] / prod_{j<k} steps[j], nums as QLaurent, steps as fmpq_poly."""
    K = len(nums) - 1
    live = [(k, x) for k, x in enumerate(nums) if not x.is_zero()]
    if not live:
        return QRational(0)
    s0 = min(x.shift for _, x in live)
    total = flint.fmpq_poly([])
    tail = flint.fmpq_poly([1])
    # tail = prod_{j=k}^{K-1} steps[j] when processing index k
    by_k = dict(live)
    for k in range(K, -1, -1):
        if k < K:
            tail = tail * steps[k]
        x = by_k.get(k)
        if x is not None:
            total += x.base.flint.left_shift(x.shift - s0) * tail
    den = tail
    return QRational(total, den, s0)


def a_param_sum(d: int, r: int, lo: int, hi: int) -> ABiRational:
    """Sum over lo <= k <= hi of
    (-1)^k q^(d C(k+1,2) - k r) [2dk+r] (a q^r, q^r/a, q^r; q^d)_k / (a q^d, q^d/a, q^d; q^d)_k.
    """
    if hi < lo:
        return ABiRational(0)
    a, q = bipoly_gens()
    one = bipoly({(0, 0): 1})
    # the powers of a from the two "/a" products cancel between numerator and denominator
    num_fac = []
    den_fac = []
    num_qshift = []
    for j in range(hi):
        t = r + j * d
        f1, _, s1 = _a_factor(t, APochSign.A)
        f2, _, s2 = _a_factor(t, APochSign.A_INVERSE)
        f3 = one_minus_qpow(t)
        num_fac.append(f1 * f2 * _lift(f3.base))
        num_qshift.append(-s1 - s2 + f3.shift)
        u = (j + 1) * d
        g1, _, _ = _a_factor(u, APochSign.A)
        g2, _, _ = _a_factor(u, APochSign.A_INVERSE)
        den_fac.append(g1 * g2 * (1 - q**u))

    terms = []
    pnum = one
    pshift = 0
    for k in range(hi + 1):
        if k:
            pnum = pnum * num_fac[k - 1]
            pshift += num_qshift[k - 1]
        if k < lo:
            continue
        qi = q_int(2 * d * k + r)
        sign = -1 if k % 2 else 1
        shift = d * (k * (k + 1) // 2) - k * r + qi.shift + pshift
        terms.append((k, sign * _lift(qi.base) * pnum, shift))
    live = [t for t in terms if not t[1].is_zero()]
    if not live:
        return ABiRational(0)
    s0 = min(s for _, _, s in live)
    by_k = {k: (f, s) for k, f, s in live}
    total = bipoly({})
    tail = one
    for k in range(hi, lo - 1, -1):
        if k < hi:
            tail = tail * den_fac[k]
        if k in by_k:
            f, s = by_k[k]
            total += f * q ** (s - s0) * tail
    den = tail
    for j in range(lo):
        den = den * den_fac[j]
    if s0 >= 0:
        return ABiRational(total * q**s0, den)
    return ABiRational(total, den * q ** (-s0))


def _lift(p: QPolynomial):
    from .exact_arith import bipoly_from_q

    return bipoly_from_q(p)


def mainth_lhs(p: ClaimParams) -> QRational:
    return cubic_sum(p.d, p.r, p.M)


def mainth_rhs(p: ClaimParams) -> QRational:
    """(-1)^m q^(d C(m,2) + m r) ([N] + [N]^3 sum_{k=1}^m (-1)^k q^(d C(k+1,2)) (1+q^(dk)) / [kd]^2)."""
    d, r, m = p.d, p.r, p.m
    qN = QRational.coerce(q_int(p.N))
    inner = QRational(0)
    for k in range(1, m + 1):
        sign = -1 if k % 2 else 1
        top = QLaurent.monomial(d * k * (k + 1) // 2, sign) * (1 + QLaurent.monomial(d * k))
        inner = inner + top / q_int(k * d) ** 2
    sign = -1 if m % 2 else 1
    pref = QRational.coerce(QLaurent.monomial(d * binom2(m) + m * r, sign))
    return pref * (qN + qN**3 * inner)


# ---------------------------------------------------------------------------
# WZ pair


def _wz_check(k: int, l: int):
    if k < 0 or l < 0:
        raise InvalidParams(f"WZ terms need k, l >= 0 (got k={k}, l={l})")


def wz_F(k: int, l: int, d: int, r: int) -> QRational:
    """F(k, l); zero when l > k."""
    _wz_check(k, l)
    if k - l < 0:
        return QRational(0)
    sign = -1 if (k + l) % 2 else 1
    head = QLaurent.monomial(d * binom2(k - l + 1) - r * k + r * l, sign) * q_int(2 * d * k + r)
    num = head * q_poch(r, d, k) ** 2 * q_poch(r, d, k + l)
    den = q_poch(d, d, k) ** 2 * q_poch(d, d, k - l) * q_poch(r, d, l) ** 2
    return QRational.coerce(num) / QRational.coerce(den)


def wz_G(k: int, l: int, d: int, r: int) -> QRational:
    """G(k, l); zero when k = 0 or l > k."""
    _wz_check(k, l)
    if k == 0 or k - l < 0:
        return QRational(0)
    sign = -1 if (k + l) % 2 else 1
    head = QLaurent.monomial(d * binom2(k - l + 1) - r * k + r * l, sign)
    num = head * q_poch(r, d, k) ** 2 * q_poch(r, d, k + l - 1)
    den = one_minus_qpow(1) * q_poch(d, d, k - 1) ** 2 * q_poch(d, d, k - l) * q_poch(r, d, l) ** 2
    return QRational.coerce(num) / QRational.coerce(den)
