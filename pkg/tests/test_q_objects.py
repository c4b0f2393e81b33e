from fractions import Fraction
from math import gcd

import flint
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracle
from qvanhamme.congruence import congruent
from qvanhamme.errors import InvalidParams
from qvanhamme.exact_arith import ABiRational, QLaurent, QPolynomial, QRational, bipoly_gens
from qvanhamme.q_objects import (
    APochSign,
    ClaimParams,
    MVariant,
    a_poch,
    cyclotomic,
    mainth_lhs,
    mainth_rhs,
    modulus,
    q_binom,
    q_int,
    q_poch,
    residue_m,
    wz_F,
    wz_G,
)

q = QPolynomial.q()
one = QPolynomial.const(1)
A, Q = bipoly_gens()
SAMPLE = [Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(-2, 5), Fraction(7, 3)]


def R(x):
    return QRational.coerce(x)


def divisors(n):
    return [t for t in range(1, n + 1) if n % t == 0]


# ---------------------------------------------------------------------------
# cyclotomic


def test_cyclotomic_examples():
    assert cyclotomic(1) == q - 1
    assert cyclotomic(2) == q + 1
    assert cyclotomic(6) == q**2 - q + 1


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_product_and_oracle(n):
    prod = one
    for t in divisors(n):
        prod = prod * cyclotomic(t)
    assert prod == q**n - 1
    phi = cyclotomic(n)
    assert phi.is_integral() and phi.lc == 1
    assert list(phi.coeffs) == [Fraction(int(c)) for c in flint.fmpz_poly.cyclotomic(n).coeffs()]


@pytest.mark.parametrize("n", range(1, 61))
@pytest.mark.parametrize("e", range(0, 5))
def test_modulus_constant_term_is_unit(n, e):
    assert modulus(n, e).coeffs[0] in (1, -1)


def test_modulus_examples():
    assert modulus(2, 2) == (1 + q) ** 3
    assert modulus(3, 3) == (1 + q + q**2) ** 4
    assert modulus(6, 1) == cyclotomic(2) * cyclotomic(3) * cyclotomic(6) ** 2


# ---------------------------------------------------------------------------
# q-integers and Pochhammers


def test_q_int_examples():
    assert q_int(3) == QLaurent(1 + q + q**2)
    assert q_int(1) == QLaurent(1)
    assert q_int(0).is_zero()
    assert q_int(-2) == QLaurent(-q - 1, -2)


@given(st.integers(-12, 12), st.sampled_from(SAMPLE))
def test_q_int_matches_definition(k, c):
    assert q_int(k)(c) == oracle.q_int(k, c)


def test_q_poch_examples():
    assert q_poch(1, 2, 2) == QLaurent((1 - q) * (1 - q**3))
    assert q_poch(5, 3, 0) == QLaurent(1)
    assert q_poch(-2, 2, 1) == QLaurent(q**2 - 1, -2)


def test_q_poch_zero_factor():
    assert q_poch(-2, 1, 4).is_zero()


@given(st.integers(-6, 6), st.integers(1, 4), st.integers(0, 5), st.sampled_from(SAMPLE))
def test_q_poch_matches_definition(s, d, k, c):
    assert q_poch(s, d, k)(c) == oracle.q_poch(s, d, k, c)


@given(st.integers(-6, 6), st.integers(1, 4), st.integers(0, 5))
def test_q_poch_classical_limit(s, d, k):
    # each factor (1 - q^e)/(1 - q) tends to e at q = 1
    ratio = R(q_poch(s, d, k)) / R(QLaurent(1 - q)) ** k
    assert ratio.is_laurent()
    expected = Fraction(1)
    for j in range(k):
        expected *= s + j * d
    assert ratio(1) == expected


def test_a_poch_examples():
    assert a_poch(1, APochSign.A, 2, 2) == ABiRational((1 - A * Q) * (1 - A * Q**3))
    assert a_poch(4, APochSign.A, 3, 0) == ABiRational(1)
    assert a_poch(4, APochSign.A_INVERSE, 3, 0) == ABiRational(1)
    assert a_poch(1, APochSign.A_INVERSE, 2, 1) == ABiRational(A - Q, A)


@given(st.integers(-4, 4), st.integers(1, 3), st.integers(0, 4), st.integers(2, 5))
def test_a_poch_specializes(e, d, k, c):
    got = a_poch(e, APochSign.A_INVERSE, d, k).subs_a(c)
    expected = QRational(1)
    for j in range(k):
        expected = expected * (1 - R(QLaurent.monomial(e + j * d)) / c)
    assert got == expected


# ---------------------------------------------------------------------------
# q-binomials


def test_q_binom_examples():
    assert q_binom(2, 1) == 1 + q
    assert q_binom(7, 0) == one
    assert q_binom(4, 2) == 1 + q + 2 * q**2 + q**3 + q**4
    assert q_binom(3, -1).is_zero() and q_binom(3, 4).is_zero()


@given(st.integers(0, 12), st.integers(0, 12))
def test_q_binom_symmetry_degree_and_pascal(n, k):
    assume(k <= n)
    b = q_binom(n, k)
    assert b == q_binom(n, n - k)
    assert b.degree == k * (n - k)
    assert list(b.coeffs) == oracle.q_binom(n, k)


# ---------------------------------------------------------------------------
# truncation point


def test_residue_m_examples():
    assert residue_m(3, 2, 1) == 1
    assert residue_m(7, 1, 1) == 6
    assert residue_m(5, 2, 1) == 2
    with pytest.raises(InvalidParams):
        residue_m(4, 2, 1)


@given(st.integers(1, 60), st.integers(1, 12), st.integers(-30, 30))
def test_residue_m_property(n, d, r):
    assume(gcd(n, d) == 1)
    m = residue_m(n, d, r)
    assert 0 <= m < n
    assert (m * d + r) % n == 0


def test_claim_params_validation():
    p = ClaimParams(5, 2, 1)
    assert p.m == 2 and p.M == 2 and p.N == 5
    assert ClaimParams(5, 2, 1, MVariant.FULL).M == 4
    with pytest.raises(InvalidParams):
        ClaimParams(4, 2, 1)
    with pytest.raises(InvalidParams):
        ClaimParams(5, 2, 4)


def test_m_variant_aliases():
    for alias in ("m", "half", "AtM"):
        assert MVariant.parse(alias) is MVariant.AT_M
    for alias in ("full", "n-1", "p-1"):
        assert MVariant.parse(alias) is MVariant.FULL


# ---------------------------------------------------------------------------
# WZ pair


def test_wz_examples():
    for d, r in [(1, 1), (2, 1), (3, -2)]:
        assert wz_F(0, 0, d, r) == R(q_int(r))
    assert wz_F(0, 1, 2, 1).is_zero()
    assert wz_G(1, 1, 2, 1) == QRational(1)


def test_wz_zero_rules():
    for d, r in [(1, 1), (2, -1), (3, 2)]:
        for l in range(0, 4):
            assert wz_G(0, l, d, r).is_zero()
        for k in range(0, 3):
            assert wz_F(k, k + 1, d, r).is_zero()
            assert wz_G(k, k + 2, d, r).is_zero()


def test_wz_negative_index_rejected():
    with pytest.raises(InvalidParams):
        wz_F(-1, 0, 2, 1)


@pytest.mark.parametrize("d,r", [(1, 1), (2, 1), (2, -1), (3, 2), (4, 3)])
def test_wz_diagonal_identity(d, r):
    for k in range(0, 7):
        expected = R(q_int(2 * d * k + r)) * R(q_poch(r, d, 2 * k)) / R(q_poch(d, d, k)) ** 2
        assert wz_F(k, k, d, r) == expected


# ---------------------------------------------------------------------------
# both sides of the main congruence


def test_mainth_lhs_two_terms():
    p = ClaimParams(3, 2, 1)
    expected = R(q_int(1)) - R(QLaurent(q)) * R(q_int(5)) * (R(q_poch(1, 2, 1)) / R(q_poch(2, 2, 1))) ** 3
    assert mainth_lhs(p) == expected


def test_mainth_n_equals_one():
    for d, r in [(1, 1), (2, 1), (3, -1), (5, 2)]:
        p = ClaimParams(1, d, r)
        assert p.m == 0
        assert mainth_lhs(p) == R(q_int(r))
        assert mainth_rhs(p) == R(q_int(r))


def test_mainth_zero_pochhammer():
    p = ClaimParams(2, 1, 0)
    assert p.m == 0
    assert mainth_lhs(p).is_zero()


def test_mainth_rhs_examples():
    i = lambda k: R(q_int(k))
    qq = R(QLaurent(q))
    rhs3 = -qq * (i(3) - i(3) ** 3 * qq**2 * (1 + qq**2) / i(2) ** 2)
    assert mainth_rhs(ClaimParams(3, 2, 1)) == rhs3
    inner = -(qq**2) * (1 + qq**2) / i(2) ** 2 + qq**6 * (1 + qq**4) / i(4) ** 2
    # prefactor q^(d C(m,2) + m r) = q^(2 + 2) at (d, r, m) = (2, 1, 2)
    rhs5 = qq**4 * (i(5) + i(5) ** 3 * inner)
    assert mainth_rhs(ClaimParams(5, 2, 1)) == rhs5


def test_mainth_rhs_prefactor_exponent_matters():
    # a q^6 prefactor is not congruent to the left side
    p = ClaimParams(5, 2, 1)
    wrong = mainth_rhs(p) * R(QLaurent(q**2))
    assert not congruent(mainth_lhs(p), wrong, modulus(5, 3)).passed
    assert congruent(mainth_lhs(p), mainth_rhs(p), modulus(5, 3)).passed


@pytest.mark.parametrize("n,d,r", [(3, 2, 1), (5, 2, 1), (7, 3, -1), (6, 5, 2), (4, 3, 1)])
@pytest.mark.parametrize("M", ["m", "full"])
def test_mainth_lhs_pointwise_oracle(n, d, r, M):
    p = ClaimParams(n, d, r, MVariant.parse(M))
    lhs = mainth_lhs(p)
    for c in SAMPLE:
        assert lhs(c) == sum(oracle.cubic_term(d, r, k, c) for k in range(p.M + 1))
