"""Rational p-adic arithmetic, Euler polynomials, and the classical supercongruences
checked numerically at concrete primes."""

from __future__ import annotations

import math
import time
from fractions import Fraction
from functools import lru_cache
from math import comb

from .congruence import Verdict
from .errors import InvalidParams, NotPAdicInteger
from .q_objects import MVariant

__all__ = [
    "is_prime",
    "vp",
    "mod_pow",
    "neg_residue",
    "euler_poly",
    "euler_poly_coeffs",
    "euler_number",
    "poch_rat",
    "verify_vanhamme",
    "verify_sun",
    "verify_guowang",
    "verify_corollary",
    "verify_euler_bridge",
    "sun_rhs",
    "corollary_rhs",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int):
    """p-adic valuation of a rational; math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def mod_pow(x, p: int, t: int) -> int:
    """Residue of a p-adic integral rational modulo p^t, in [0, p^t)."""
    x = Fraction(x)
    if vp(x, p) < 0:
        raise NotPAdicInteger(f"{x} has negative {p}-adic valuation")
    mod = p**t
    return x.numerator * pow(x.denominator, -1, mod) % mod


def neg_residue(alpha, p: int) -> int:
    """<-alpha>_p: least nonnegative residue of -alpha modulo p."""
    return mod_pow(-Fraction(alpha), p, 1)


@lru_cache(maxsize=None)
def euler_poly_coeffs(k: int) -> tuple:
    """Coefficients (lowest degree first) of E_k(x), from
    sum_{j=0}^{k} C(k, j) E_j(x) + E_k(x) = 2 x^k."""
    if k == 0:
        return (Fraction(1),)
    acc = [Fraction(0)] * (k + 1)
    for j in range(k):
        c = comb(k, j)
        for i, e in enumerate(euler_poly_coeffs(j)):
            acc[i] += c * e
    out = [-a / 2 for a in acc]
    out[k] += 1
    return tuple(out)


def euler_poly(k: int, x) -> Fraction:
    x = Fraction(x)
    val = Fraction(0)
    for c in reversed(euler_poly_coeffs(k)):
        val = val * x + c
    return val


def euler_number(k: int) -> Fraction:
    return 2**k * euler_poly(k, Fraction(1, 2))


def poch_rat(x, k: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+k-1)."""
    x = Fraction(x)
    acc = Fraction(1)
    for j in range(k):
        acc *= x + j
    return acc


def _check_prime(p: int):
    if not is_prime(p) or p <= 3:
        raise InvalidParams(f"p must be a prime > 3, got {p}")


def _compare(lhs: Fraction, rhs: Fraction, p: int, t: int, label: str) -> Verdict:
    a = mod_pow(lhs, p, t)
    b = mod_pow(rhs, p, t)
    detail = f"{label}: lhs = {lhs} == {a}, rhs = {rhs} == {b} (mod {p}^{t})"
    if a == b:
        return Verdict.ok(detail, (a, b))
    return Verdict.fail(detail, (a, b))


def _hyper_sum(alpha: Fraction, step: int, M: int) -> Fraction:
    """sum_{k=0}^{M} (-1)^k (step*k + 1) (alpha)_k^3 / k!^3."""
    total = Fraction(0)
    ratio = Fraction(1)
    for k in range(M + 1):
        if k:
            ratio *= (alpha + k - 1) / k
        total += (-1) ** k * (step * k + 1) * ratio**3
    return total


_VANHAMME = {
    # variant -> s, with alpha = 1/s and summand factor (2 s k + 1)
    "B2": 2,
    "E2": 3,
    "F2": 4,
}


def verify_vanhamme(p: int, variant: str) -> Verdict:
    """Truncated cubic sums at alpha = 1/2, 1/3, 1/4 modulo p^3."""
    start = time.perf_counter()
    variant = variant.upper()
    if variant not in _VANHAMME:
        raise InvalidParams(f"variant must be one of B2, E2, F2, got {variant}")
    _check_prime(p)
    s = _VANHAMME[variant]
    if variant != "B2" and p % s != 1:
        raise InvalidParams(f"{variant} needs p == 1 (mod {s}), got p = {p}")
    h = (p - 1) // s
    lhs = _hyper_sum(Fraction(1, s), 2 * s, h)
    if variant == "E2":
        rhs = Fraction(p)
    else:
        rhs = Fraction(p * (-1) ** h)
    return _compare(lhs, rhs, p, 3, variant).timed(start)


def _M(M, full: int, short: int) -> int:
    return short if MVariant.parse(M) is MVariant.AT_M else full


def sun_rhs(p: int) -> Fraction:
    return p * (-1) ** ((p - 1) // 2) + p**3 * euler_number(p - 3)


def verify_sun(p: int, M=MVariant.AT_M) -> Verdict:
    """alpha = 1/2 sum against p(-1)^((p-1)/2) + p^3 E_(p-3) modulo p^4; M = (p-1)/2 ('m'/'half') or p-1 ('full')."""
    start = time.perf_counter()
    _check_prime(p)
    top = _M(M, p - 1, (p - 1) // 2)
    lhs = _hyper_sum(Fraction(1, 2), 4, top)
    return _compare(lhs, sun_rhs(p), p, 4, f"M={top}").timed(start)


def verify_guowang(p: int, alpha, M=MVariant.AT_M) -> Verdict:
    """Parametric extension modulo p^4 for a p-adic integer alpha."""
    start = time.perf_counter()
    _check_prime(p)
    alpha = Fraction(alpha)
    if vp(alpha, p) < 0:
        raise NotPAdicInteger(f"alpha = {alpha} is not a {p}-adic integer")
    a = neg_residue(alpha, p)
    top = _M(M, p - 1, a)
    lhs = Fraction(0)
    ratio = Fraction(1)
    for k in range(top + 1):
        if k:
            ratio *= (alpha + k - 1) / k
        lhs += (-1) ** k * (2 * k + alpha) * ratio**3
    s = alpha + a
    rhs = (-1) ** a * s + s**3 * euler_poly(p - 3, alpha)
    return _compare(lhs, rhs, p, 4, f"alpha={alpha}, M={top}").timed(start)


def corollary_rhs(p: int, s: int, d: int, r: int) -> Fraction:
    m = (-r * pow(d, -1, p**s)) % p**s
    N = m * d + r
    h = sum(Fraction((-1) ** k, k * k) for k in range(1, m + 1))
    return (-1) ** m * N + 2 * (-1) ** m * Fraction(N**3, d * d) * h


def verify_corollary(p: int, s: int, d: int, r: int, M=MVariant.AT_M) -> Verdict:
    """Prime-power modulus version modulo p^(s+3); M = m or p^s - 1."""
    start = time.perf_counter()
    _check_prime(p)
    if s < 1 or d < 1:
        raise InvalidParams("need s >= 1 and d >= 1")
    if d % p == 0:
        raise InvalidParams(f"p = {p} divides d = {d}")
    if math.gcd(r, d) != 1:
        raise InvalidParams(f"gcd(r, d) = gcd({r}, {d}) != 1")
    ps = p**s
    m = (-r * pow(d, -1, ps)) % ps
    top = _M(M, ps - 1, m)
    alpha = Fraction(r, d)
    lhs = Fraction(0)
    ratio = Fraction(1)
    for k in range(top + 1):
        if k:
            ratio *= (alpha + k - 1) / k
        lhs += (-1) ** k * (2 * d * k + r) * ratio**3
    return _compare(lhs, corollary_rhs(p, s, d, r), p, s + 3, f"m={m}, M={top}").timed(start)


def verify_euler_bridge(p: int, d: int, r: int) -> Verdict:
    """sum_{k=1}^{m} (-1)^k / k^2 == ((-1)^m / 2) E_{p-3}(r/d) (mod p), m = <-r/d>_p."""
    start = time.perf_counter()
    _check_prime(p)
    alpha = Fraction(r, d)
    m = neg_residue(alpha, p)
    lhs = sum((Fraction((-1) ** k, k * k) for k in range(1, m + 1)), Fraction(0))
    rhs = Fraction((-1) ** m, 2) * euler_poly(p - 3, alpha)
    return _compare(lhs, rhs, p, 1, f"m={m}").timed(start)
