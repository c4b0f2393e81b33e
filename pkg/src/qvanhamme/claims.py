"""One verifier per congruence, identity and WZ certificate of the cubic q-sum family.

Every verifier returns a :class:`~qvanhamme.congruence.Verdict` and raises
:class:`~qvanhamme.errors.InvalidParams` when its preconditions fail.  Undefined terms
(a zero factor in a denominator) turn into an INAPPLICABLE verdict.
"""

from __future__ import annotations

import enum
import functools
import time
from fractions import Fraction

from .congruence import Status, Verdict, a_congruent, congruent, denom_coprime
from .errors import DivisionByZero, InvalidParams, PoleAtPoint
from .exact_arith import QLaurent, QRational, bipoly_from_q, bipoly_gens
from .q_objects import (
    ClaimParams,
    MVariant,
    a_param_sum,
    binom2,
    cyclotomic,
    mainth_lhs,
    mainth_rhs,
    modulus,
    one_minus_qpow,
    q_binom,
    q_int,
    q_poch,
    cubic_sum,
    wz_F,
    wz_G,
)

__all__ = [
    "ClaimId",
    "verify_sym3",
    "verify_modphi2",
    "verify_liangduan",
    "verify_truncon",
    "verify_denoms",
    "verify_fmm",
    "verify_gm1k",
    "verify_identity",
    "verify_identity_rec",
    "verify_jackson_trunc",
    "verify_wz_relation",
    "verify_telescoping",
    "verify_mainth",
    "verify_guo2018",
    "verify_guo2022",
    "identity_lhs",
    "identity_rhs",
    "identity_S",
]


class ClaimId(enum.Enum):
    SYM3 = "sym3"
    MOD_PHI2 = "modphi2"
    LIANGDUAN_A = "liangduan"
    TRUNCON = "truncon"
    DENOMS = "denoms"
    FMM = "fmm"
    GM1K = "gm1k"
    IDENTITY = "identity"
    IDENTITY_REC = "identity_rec"
    JACKSON_TRUNC = "jackson_trunc"
    WZ_RELATION = "wz_relation"
    TELESCOPING = "telescoping"
    MAINTH = "mainth"
    GUO2018 = "guo2018"
    GUO2022 = "guo2022"

    @classmethod
    def parse(cls, name: str) -> "ClaimId":
        key = name.strip().lower().replace("-", "_")
        for c in cls:
            if key in (c.value, c.name.lower(), c.name.lower().replace("_", "")):
                return c
        raise InvalidParams(f"unknown claim {name!r}")


def _verifier(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            v = fn(*args, **kwargs)
        except (DivisionByZero, PoleAtPoint) as exc:
            v = Verdict.inapplicable(f"undefined term: {exc}")
        return v.timed(start)

    return wrapper


def _need_n_gt_1(p: ClaimParams):
    if p.n <= 1:
        raise InvalidParams("this claim assumes n > 1")


def _R(x) -> QRational:
    return QRational.coerce(x)


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# ---------------------------------------------------------------------------
# integer congruence


@_verifier
def verify_sym3(n: int, d: int, r: int, k: int | None = None) -> Verdict:
    """Integer congruence mod n behind the reflection k -> n - m - 2 - k.

    With ``k=None`` every k in [0, n - m - 2] is checked.
    """
    p = ClaimParams(n, d, r)
    m = p.m
    if k is not None and not 0 <= k <= n - m - 2:
        if n == 1:
            return Verdict.ok("trivial modulo 1")
        raise InvalidParams(f"k must lie in [0, {n - m - 2}]")
    if n == 1:
        return Verdict.ok("trivial modulo 1")
    ks = range(n - m - 1) if k is None else [k]
    if not ks:
        return Verdict.inapplicable("empty k-range (m = n - 1)")
    for kk in ks:
        lhs = 3 * d * binom2(n - m - 1) + d * binom2(n - kk) + d * kk - 2 * d - 2 * kk * r + 2 * r
        rhs = d * binom2(m + kk + 2) - (m + 1 + kk) * r
        if (lhs - rhs) % n:
            return Verdict.fail(f"k={kk}: {lhs} - {rhs} = {lhs - rhs} not divisible by {n}")
    return Verdict.ok(f"checked k in [0, {n - m - 2}]" if k is None else f"k={k}")


# ---------------------------------------------------------------------------
# indeterminate-a congruences


@_verifier
def verify_modphi2(n: int, d: int, r: int, cross_check: bool = True) -> Verdict:
    """Tail sum over m < k < n with indeterminate a vanishes modulo Phi_n(q)^2."""
    p = ClaimParams(n, d, r)
    _need_n_gt_1(p)
    if p.m >= n - 1:
        return Verdict.ok("empty sum")
    tail = a_param_sum(d, r, p.m + 1, n - 1)
    return a_congruent(tail, 0, cyclotomic(n) ** 2, cross_check=cross_check)


def liangduan_modulus(p: ClaimParams):
    """[n] Phi_n(q) (a - q^N)(1 - a q^N) in Q[a, q], N = |m d + r| (q is a unit, so the sign of N is immaterial)."""
    a, q = bipoly_gens()
    e = abs(p.N)
    base = bipoly_from_q(modulus(p.n, 1))
    return base * (a - q**e) * (1 - a * q**e)


@_verifier
def verify_liangduan(n: int, d: int, r: int, cross_check: bool = True) -> Verdict:
    """m-truncated and (n-1)-truncated a-sums agree modulo [n]Phi_n(q)(a - q^N)(1 - a q^N)."""
    p = ClaimParams(n, d, r)
    _need_n_gt_1(p)
    if p.m == n - 1:
        return Verdict.ok("both truncations identical (m = n - 1)")
    # the difference of the two truncations is exactly the tail over m < k <= n - 1
    tail = a_param_sum(d, r, p.m + 1, n - 1)
    v = a_congruent(tail, 0, liangduan_modulus(p), cross_check=cross_check)
    if not v.passed:
        return v
    for e in (p.N, -p.N):
        try:
            val = tail.subs_a_qpow(e)
        except PoleAtPoint as exc:
            return Verdict.inapplicable(f"specialization a = q^{e} undefined: {exc}")
        if not val.is_zero():
            return Verdict.fail(f"truncations differ at a = q^{e}: difference {val}", val)
    return Verdict.ok("bivariate congruence and both specializations a = q^(+-N) exact")


@_verifier
def verify_truncon(n: int, d: int, r: int) -> Verdict:
    """Cubic sum truncated at m agrees with the one truncated at n - 1 modulo [n]Phi_n(q)^3."""
    p = ClaimParams(n, d, r)
    return congruent(cubic_sum(d, r, p.m), cubic_sum(d, r, n - 1), modulus(n, 3))


# ---------------------------------------------------------------------------
# denominators


@_verifier
def verify_denoms(n: int, d: int, r: int, strict: bool = False) -> Verdict:
    """Reduced denominators of the three auxiliary quotients are coprime to the modulus.

    Parts (i) and (ii) are checked against 1 - q^n.  Part (iii) is checked against
    [n]Phi_n(q)^3 unless ``strict`` is set, in which case 1 - q^n is used; the strict
    form fails at (n, d, r, k) = (3, 2, 1, 1) with gcd q - 1.
    """
    p = ClaimParams(n, d, r)
    _need_n_gt_1(p)
    m, N = p.m, p.N
    full = one_minus_qpow(n).base
    if m == 0:
        return Verdict.ok("all products empty (m = 0)")

    x = _R(q_poch(r, d, m) * q_poch(r + (m + 1) * d, d, m)) / q_poch(d, d, m) ** 2
    v = denom_coprime(x, full)
    if not v.passed:
        return Verdict.fail(f"first quotient: {v.witness}", v.data)

    for k in range(1, m + 1):
        v = denom_coprime(_R(one_minus_qpow(N)) / one_minus_qpow(d * k), full)
        if not v.passed:
            return Verdict.fail(f"second quotient k={k}: {v.witness}", v.data)

    target = full if strict else modulus(n, 3)
    for k in range(1, m + 1):
        x = _R(q_int(N) * q_poch(d, d, k - 1)) / q_poch(-m * d, d, k)
        v = denom_coprime(x, target)
        if not v.passed:
            mode = "strict 1 - q^n" if strict else "[n]Phi_n^3"
            return Verdict.fail(f"third quotient k={k} ({mode}): {v.witness}", v.data)
    return Verdict.ok("parts (i)-(iii) coprime")


# ---------------------------------------------------------------------------
# WZ boundary terms


def fmm_rhs(p: ClaimParams) -> QRational:
    d, r, m = p.d, p.r, p.m
    qN = _R(q_int(p.N))
    s = _R(0)
    for k in range(1, m + 1):
        s = s + _R(QLaurent.monomial(d * k)) / q_int(d * k) ** 2
    pref = _R(QLaurent.monomial(d * binom2(m) + m * r, _sgn(m)))
    return pref * qN * (1 - qN**2 * s)


@_verifier
def verify_fmm(n: int, d: int, r: int) -> Verdict:
    """F(m, m) against its closed form modulo [n]Phi_n(q)^3."""
    p = ClaimParams(n, d, r)
    _need_n_gt_1(p)
    return congruent(wz_F(p.m, p.m, d, r), fmm_rhs(p), modulus(n, 3))


def gm1k_rhs(p: ClaimParams, k: int) -> QRational:
    d, m = p.d, p.m
    num = QLaurent.monomial(-m * d * k) * q_int(p.N) ** 3 * q_poch(d, d, k)
    den = q_int(d * k) * q_int(d * k - (m + 1) * d) * q_poch(-m * d, d, k)
    return _R(num) / _R(den)


@_verifier
def verify_gm1k(n: int, d: int, r: int) -> Verdict:
    """G(m+1, k) against its closed form modulo [n]Phi_n(q)^3 for every 1 <= k <= m."""
    p = ClaimParams(n, d, r)
    _need_n_gt_1(p)
    if p.m == 0:
        return Verdict.inapplicable("empty k-range (m = 0)")
    mod = modulus(n, 3)
    for k in range(1, p.m + 1):
        v = congruent(wz_G(p.m + 1, k, d, r), gm1k_rhs(p, k), mod)
        if not v.passed:
            return Verdict(v.status, f"k={k}: {v.witness}", data=v.data)
    return Verdict.ok(f"k in [1, {p.m}]")


# ---------------------------------------------------------------------------
# harmonic-type q-identity


def identity_lhs(n: int) -> QRational:
    total = _R(0)
    for k in range(1, n + 1):
        num = QLaurent.monomial(-n * k) * q_poch(1, 1, k)
        den = q_int(k) * q_int(k - n - 1) * q_poch(-n, 1, k)
        total = total + _R(num) / _R(den)
    return _R(QLaurent.monomial(binom2(n + 1), _sgn(n))) * total


def identity_rhs(n: int) -> QRational:
    total = _R(0)
    for k in range(1, n + 1):
        top = QLaurent.monomial(binom2(k + 1), _sgn(k)) * (1 + QLaurent.monomial(k))
        top = top + QLaurent.monomial(k)
        total = total + _R(top) / q_int(k) ** 2
    return total


def identity_S(n: int) -> QRational:
    """Left side rewritten through Gaussian binomials."""
    total = _R(0)
    for k in range(1, n + 1):
        # q^((1-k)k/2) = q^(-C(k,2))
        num = QLaurent.monomial(-binom2(k), _sgn(k))
        den = q_int(k) * q_int(k - n - 1) * QLaurent(q_binom(n, k))
        total = total + _R(num) / _R(den)
    return _R(QLaurent.monomial(binom2(n + 1), _sgn(n))) * total


def identity_step(n: int) -> QRational:
    """q^(n+1)/[n+1]^2 + (-1)^(n+1) q^C(n+2,2) (1 + q^(n+1)) / [n+1]^2."""
    top = QLaurent.monomial(n + 1) + QLaurent.monomial(binom2(n + 2), _sgn(n + 1)) * (
        1 + QLaurent.monomial(n + 1)
    )
    return _R(top) / q_int(n + 1) ** 2


@_verifier
def verify_identity(n: int) -> Verdict:
    """Exact equality of both sides of the harmonic-type q-identity."""
    if n < 1:
        raise InvalidParams("identity needs n >= 1")
    lhs, rhs = identity_lhs(n), identity_rhs(n)
    if lhs == rhs:
        return Verdict.ok()
    return Verdict.fail(f"difference {lhs - rhs}", lhs - rhs)


@_verifier
def verify_identity_rec(n: int) -> Verdict:
    """S_{n+1} - S_n equals the stated step, with S_n in Gaussian-binomial form."""
    if n < 1:
        raise InvalidParams("identity recurrence needs n >= 1")
    diff = identity_S(n + 1) - identity_S(n)
    step = identity_step(n)
    if diff == step:
        return Verdict.ok()
    return Verdict.fail(f"S_(n+1) - S_n - step = {diff - step}", diff - step)


# ---------------------------------------------------------------------------
# terminating Jackson specialization


@_verifier
def verify_jackson_trunc(n: int, d: int, r: int) -> Verdict:
    """Terminating 6phi5 specialization at a = q^(md+r) summed exactly to its closed form."""
    p = ClaimParams(n, d, r)
    m, N = p.m, p.N
    for k in range(m + 1):
        for s in (N + d, d - N):
            if q_poch(s, d, k).is_zero():
                return Verdict.inapplicable(f"(q^{s}; q^{d})_{k} vanishes")
    total = _R(0)
    for k in range(m + 1):
        head = QLaurent.monomial(d * (k * (k + 1) // 2) - k * r, _sgn(k)) * q_int(2 * d * k + r)
        num = head * q_poch(-m * d, d, k) * q_poch(N + r, d, k) * q_poch(r, d, k)
        den = q_poch(N + d, d, k) * q_poch(d - N, d, k) * q_poch(d, d, k)
        total = total + _R(num) / _R(den)
    closed = _R(q_int(r) * q_poch(d + r, d, m)) / _R(q_poch(d - N, d, m))
    if total == closed:
        return Verdict.ok()
    return Verdict.fail(f"sum - closed form = {total - closed}", total - closed)


# ---------------------------------------------------------------------------
# WZ pair and telescoping


@_verifier
def verify_wz_relation(d: int, r: int, kmax: int, lmax: int) -> Verdict:
    """F(k, l-1) - F(k, l) = G(k+1, l) - G(k, l) exactly on [0, kmax] x [1, lmax]."""
    if kmax < 1 or lmax < 1 or d < 1:
        raise InvalidParams("need d, kmax, lmax >= 1")
    F = functools.lru_cache(maxsize=None)(lambda k, l: wz_F(k, l, d, r))
    G = functools.lru_cache(maxsize=None)(lambda k, l: wz_G(k, l, d, r))
    for k in range(kmax + 1):
        for l in range(1, lmax + 1):
            lhs = F(k, l - 1) - F(k, l)
            rhs = G(k + 1, l) - G(k, l)
            if lhs != rhs:
                return Verdict.fail(f"(k, l) = ({k}, {l}): difference {lhs - rhs}", (k, l))
    return Verdict.ok(f"[0, {kmax}] x [1, {lmax}]")


@_verifier
def verify_telescoping(n: int, d: int, r: int) -> Verdict:
    """sum_{k<=m} F(k, 0) = F(m, m) + sum_{1<=k<=m} G(m+1, k), and the left side is the cubic sum."""
    p = ClaimParams(n, d, r)
    m = p.m
    lhs = _R(0)
    for k in range(m + 1):
        lhs = lhs + wz_F(k, 0, d, r)
    rhs = wz_F(m, m, d, r)
    for k in range(1, m + 1):
        rhs = rhs + wz_G(m + 1, k, d, r)
    if lhs != rhs:
        return Verdict.fail(f"telescoped sides differ by {lhs - rhs}", lhs - rhs)
    direct = cubic_sum(d, r, m)
    if lhs != direct:
        return Verdict.fail(f"sum of F(k, 0) differs from the cubic sum by {lhs - direct}")
    return Verdict.ok()


# ---------------------------------------------------------------------------
# the main congruence and its specializations


@_verifier
def verify_mainth(n: int, d: int, r: int, M=MVariant.AT_M) -> Verdict:
    """Both sides of the main q-supercongruence agree modulo [n]Phi_n(q)^3."""
    p = ClaimParams(n, d, r, MVariant.parse(M))
    return congruent(mainth_lhs(p), mainth_rhs(p), modulus(n, 3))


def _odd_n(n: int):
    if n <= 1 or n % 2 == 0:
        raise InvalidParams(f"n must be odd and > 1, got {n}")


def _guo_sum(M: int) -> QRational:
    # summed term by term, independently of cubic_sum
    total = _R(0)
    for k in range(M + 1):
        num = QLaurent.monomial(k * k, _sgn(k)) * q_int(4 * k + 1) * q_poch(1, 2, k) ** 3
        total = total + _R(num) / _R(q_poch(2, 2, k) ** 3)
    return total


@_verifier
def verify_guo2018(n: int) -> Verdict:
    """alpha = 1/2 case modulo [n]Phi_n(q)^2, truncated at (n-1)/2."""
    _odd_n(n)
    h = (n - 1) // 2
    rhs = _R(QLaurent.monomial((n - 1) ** 2 // 4, _sgn(h)) * q_int(n))
    return congruent(_guo_sum(h), rhs, modulus(n, 2))


def guo2022_rhs(n: int) -> QRational:
    h = (n - 1) // 2
    qn = _R(q_int(n))
    corr = Fraction(n * n - 1, 24) * _R(one_minus_qpow(1)) ** 2 * qn**3
    head = _R(QLaurent.monomial((1 - n * n) // 4, _sgn(h))) * (
        _R(QLaurent.monomial(binom2(n))) * qn + corr
    )
    tail = _R(0)
    for k in range(1, h + 1):
        num = QLaurent.monomial(k) * q_poch(2, 2, k)
        den = q_int(2 * k) * q_int(2 * k - 1) * q_poch(1, 2, k)
        tail = tail + _R(num) / _R(den)
    return head + qn**3 * tail


@_verifier
def verify_guo2022(n: int, M=MVariant.AT_M) -> Verdict:
    """alpha = 1/2 case with the Euler-number refinement modulo [n]Phi_n(q)^3, truncated at (n-1)/2 or n-1."""
    _odd_n(n)
    M = MVariant.parse(M)
    top = (n - 1) // 2 if M is MVariant.AT_M else n - 1
    return congruent(_guo_sum(top), guo2022_rhs(n), modulus(n, 3))


def run_claim(claim, **kw) -> Verdict:
    """Dispatch by claim id; keyword names follow the CLI flags."""
    claim = ClaimId.parse(claim) if not isinstance(claim, ClaimId) else claim
    n, d, r = kw.get("n"), kw.get("d"), kw.get("r")

    def need(*names):
        missing = [x for x in names if kw.get(x) is None]
        if missing:
            raise InvalidParams(f"{claim.value} needs --{', --'.join(missing)}")

    if claim is ClaimId.IDENTITY:
        need("n")
        return verify_identity(n)
    if claim is ClaimId.IDENTITY_REC:
        need("n")
        return verify_identity_rec(n)
    if claim is ClaimId.GUO2018:
        need("n")
        return verify_guo2018(n)
    if claim is ClaimId.GUO2022:
        need("n")
        return verify_guo2022(n, kw.get("M") or MVariant.AT_M)
    if claim is ClaimId.WZ_RELATION:
        need("d", "r")
        return verify_wz_relation(d, r, kw.get("kmax") or 4, kw.get("lmax") or 4)
    need("n", "d", "r")
    if claim is ClaimId.SYM3:
        return verify_sym3(n, d, r, kw.get("k"))
    if claim is ClaimId.MOD_PHI2:
        return verify_modphi2(n, d, r)
    if claim is ClaimId.LIANGDUAN_A:
        return verify_liangduan(n, d, r)
    if claim is ClaimId.TRUNCON:
        return verify_truncon(n, d, r)
    if claim is ClaimId.DENOMS:
        return verify_denoms(n, d, r, strict=bool(kw.get("strict_denoms")))
    if claim is ClaimId.FMM:
        return verify_fmm(n, d, r)
    if claim is ClaimId.GM1K:
        return verify_gm1k(n, d, r)
    if claim is ClaimId.JACKSON_TRUNC:
        return verify_jackson_trunc(n, d, r)
    if claim is ClaimId.TELESCOPING:
        return verify_telescoping(n, d, r)
    if claim is ClaimId.MAINTH:
        return verify_mainth(n, d, r, kw.get("M") or MVariant.AT_M)
    raise InvalidParams(f"unhandled claim {claim}")  # pragma: no cover
