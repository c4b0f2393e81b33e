"""Congruences of rational functions modulo a polynomial.

x == y (mod m) means: writing x - y = N/D in lowest terms (q-power shifts folded into
N or D), m divides N and gcd(D, m) = 1.  When gcd(D, m) != 1 the question is not
meaningful and the verdict is INAPPLICABLE rather than FAIL.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

import flint
from flint.utils.flint_exceptions import DomainError

from .errors import InvalidModulus
from .exact_arith import (
    ABiRational,
    QPolynomial,
    QRational,
    bipoly_a_coeffs,
    bipoly_eval_a,
    bipoly_from_q,
    poly_gcd,
)

__all__ = ["Status", "Verdict", "congruent", "denom_coprime", "a_congruent"]


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: str = ""
    elapsed: float = 0.0
    data: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.status is not Status.PASS and not self.witness:
            raise ValueError(f"{self.status.value} verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def timed(self, start: float) -> "Verdict":
        return replace(self, elapsed=time.perf_counter() - start)

    @classmethod
    def ok(cls, witness: str = "", data=None) -> "Verdict":
        return cls(Status.PASS, witness, data=data)

    @classmethod
    def fail(cls, witness: str, data=None) -> "Verdict":
        return cls(Status.FAIL, witness, data=data)

    @classmethod
    def inapplicable(cls, witness: str, data=None) -> "Verdict":
        return cls(Status.INAPPLICABLE, witness, data=data)


def _as_modulus(mod) -> QPolynomial:
    if not isinstance(mod, QPolynomial):
        mod = QPolynomial.const(mod) if isinstance(mod, (int, Fraction)) else QPolynomial(mod)
    if mod.degree < 1:
        raise InvalidModulus(f"modulus must be nonconstant, got {mod}")
    return mod


def _decide(N: QPolynomial, D: QPolynomial, mod: QPolynomial) -> Verdict:
    g = poly_gcd(D, mod)
    if g.degree > 0:
        return Verdict.inapplicable(f"gcd(denominator, modulus) = {g}", g)
    rem = N % mod
    if rem.is_zero():
        return Verdict.ok()
    return Verdict.fail(f"remainder {rem}", rem)


def congruent(x, y, mod) -> Verdict:
    """Decide x == y modulo the polynomial ``mod``."""
    start = time.perf_counter()
    mod = _as_modulus(mod)
    diff = QRational.coerce(x) - QRational.coerce(y)
    return _decide(diff.numerator_poly(), diff.denominator_poly(), mod).timed(start)


def denom_coprime(x, mod) -> Verdict:
    """PASS iff the reduced denominator of x is coprime to ``mod``; witness is the gcd."""
    start = time.perf_counter()
    x = QRational.coerce(x)
    mod = mod if isinstance(mod, QPolynomial) else QPolynomial(mod)
    den = x.denominator_poly()
    g = poly_gcd(den, mod)
    if g.degree > 0:
        return Verdict.fail(f"gcd({den}, modulus) = {g}", g).timed(start)
    return Verdict.ok(f"reduced denominator {den}", den).timed(start)


# ---------------------------------------------------------------------------
# bivariate


def _as_bimodulus(mod) -> flint.fmpq_mpoly:
    if isinstance(mod, ABiRational):
        if not mod.den.is_constant():
            raise InvalidModulus("bivariate modulus must be a polynomial")
        mod = mod.num / mod.den.leading_coefficient()
    elif isinstance(mod, QPolynomial):
        mod = bipoly_from_q(mod)
    if mod.is_zero() or mod.is_constant():
        raise InvalidModulus(f"modulus must be nonconstant, got {mod}")
    return mod


def _bi_decide(N, D, mod) -> Verdict:
    g = D.gcd(mod)
    if not g.is_constant():
        return Verdict.inapplicable(f"gcd(denominator, modulus) = {g}", g)
    try:
        N / mod
    except DomainError:
        rem = divmod(N, mod)[1]
        return Verdict.fail(f"modulus does not divide numerator; remainder {rem}", rem)
    return Verdict.ok()


def _sample_points(N, D, mod, count: int):
    """Rational a-values where the specialization is a well-posed univariate congruence."""
    c = 2
    tried = 0
    while count > 0 and tried < 50 * (count + 5):
        tried += 1
        for val in (Fraction(c), Fraction(-c), Fraction(1, c)):
            if count == 0:
                break
            Dc = bipoly_eval_a(D, val)
            mc = bipoly_eval_a(mod, val)
            if Dc.is_zero() or mc.degree < 1 or poly_gcd(Dc, mc).degree > 0:
                continue
            count -= 1
            yield val, bipoly_eval_a(N, val), Dc, mc
        c += 1


def a_congruent(x, y, mod, cross_check: bool = True) -> Verdict:
    """Decide x == y modulo a polynomial in Q[a, q].

    The bivariate decision uses exact division and gcd in Q[a, q].  With
    ``cross_check`` the difference is also specialized at deg_a(N) + 1 rational
    values of a; a PASS must survive every specialization, and for a modulus free of a
    a FAIL must show up in at least one of them.
    """
    start = time.perf_counter()
    mod = _as_bimodulus(mod)
    diff = ABiRational._coerce(x) - ABiRational._coerce(y)
    N, D = diff.num, diff.den
    verdict = _bi_decide(N, D, mod)
    if not cross_check or verdict.status is Status.INAPPLICABLE:
        return verdict.timed(start)

    deg_a = max(len(bipoly_a_coeffs(N)) - 1, 0)
    mod_has_a = len(bipoly_a_coeffs(mod)) > 1
    checked = 0
    saw_fail = False
    for c, Nc, Dc, mc in _sample_points(N, D, mod, deg_a + 1):
        checked += 1
        sub = _decide(Nc, Dc, mc)
        if verdict.passed and not sub.passed:
            return Verdict.fail(
                f"cross-check disagreement: bivariate PASS but a={c} gives {sub.status.value} ({sub.witness})"
            ).timed(start)
        if sub.status is Status.FAIL:
            saw_fail = True
    if checked < deg_a + 1:
        return Verdict.inapplicable(
            f"cross-check found only {checked} usable a-values (needed {deg_a + 1})"
        ).timed(start)
    if verdict.status is Status.FAIL and not mod_has_a and not saw_fail:
        return Verdict.fail(
            f"cross-check disagreement: bivariate FAIL but all {checked} specializations pass"
        ).timed(start)
    return verdict.timed(start)

