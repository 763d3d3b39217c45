import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from rabizeta.errors import DomainError, PoleError
from rabizeta.specfun import (
    bernoulli_number,
    bernoulli_poly,
    bernoulli_table,
    dirichlet_L_mod2,
    gamma,
    hurwitz_zeta,
    riemann_zeta,
)


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


# --- gamma -----------------------------------------------------------------


@pytest.mark.parametrize("s, expected", [(1, 1.0), (0.5, math.sqrt(math.pi)), (5, 24.0)])
def test_gamma_examples(s, expected):
    assert rel(gamma(s), expected) < 1e-14


@pytest.mark.parametrize("s", [0.3, 7.5, 33.2, -2.5, 2 + 3j, 10 - 10j, -4.5 + 0.5j])
def test_gamma_against_mpmath(s):
    assert rel(gamma(s), complex(mp.gamma(s))) < 1e-12


@pytest.mark.parametrize("s", [0, -1, -7])
def test_gamma_poles(s):
    with pytest.raises(PoleError):
        gamma(s)


# --- Hurwitz and Riemann zeta ------------------------------------------------


def test_hurwitz_examples():
    assert rel(hurwitz_zeta(2, 0.5), math.pi**2 / 2) < 1e-13
    assert rel(hurwitz_zeta(-1, 1.0), -1 / 12) < 1e-13


def test_hurwitz_brute_force_partial_sum():
    # 10^6 terms plus the Euler-Maclaurin remainder of the tail
    n = np.arange(10**6, dtype=float) + 2.75
    M = 10**6 + 2.75
    tail = M**-2 / 2 + M**-3 / 2 + 3 * M**-4 / 12
    brute = math.fsum(n**-3) + tail
    assert rel(hurwitz_zeta(3, 2.75), brute) < 1e-12


@pytest.mark.parametrize("s", [2.5, 30.0, 1.001, 0.5, -0.5, -7.3, -12.0, -25.5,
                               1.5 + 10j, 2 - 5j, -3.5 + 2j, 0.5 + 9.9j])
@pytest.mark.parametrize("a", [0.05, 0.5, 1.0, 7.3, 100.0])
def test_hurwitz_against_mpmath(s, a):
    # mpmath loses digits at large s and a unless the working precision is raised
    with mp.workdps(80):
        ref = complex(mp.zeta(s, a))
    got = complex(hurwitz_zeta(s, a))
    if ref == 0:
        assert abs(got) < 1e-12
    else:
        assert rel(got, ref) < 1e-10


def test_hurwitz_real_input_returns_float():
    assert isinstance(hurwitz_zeta(2.0, 1.5), float)
    assert isinstance(hurwitz_zeta(2 + 0j, 1.5), complex)


def test_hurwitz_errors():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0.0)


@pytest.mark.parametrize("s, expected", [(2, math.pi**2 / 6), (0, -0.5), (-3, 1 / 120)])
def test_riemann_examples(s, expected):
    assert rel(riemann_zeta(s), expected) < 1e-13


@pytest.mark.parametrize("s", [2, 3, 4, -1, -3])
def test_example_identity_half_shift(s):
    assert rel((2.0**s - 1) * riemann_zeta(s), hurwitz_zeta(s, 0.5)) < 1e-10


@pytest.mark.parametrize("k", range(1, 9))
@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])
def test_hurwitz_special_values(k, a):
    assert abs(hurwitz_zeta(1 - k, float(a)) + float(bernoulli_poly(k, a)) / k) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(1.05, 20.0), st.floats(0.01, 50.0), st.floats(-8.0, 8.0))
def test_hurwitz_shift_property(sr, a, si):
    s = complex(sr, si)
    lhs = hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 1)
    assert rel(lhs, a ** (-s)) < 1e-10


# --- L_chi ---------------------------------------------------------------------


def test_L_examples():
    assert rel(dirichlet_L_mod2(1, 1.0), math.log(2)) < 1e-13
    assert rel(dirichlet_L_mod2(0, 1.0), 0.5) < 1e-13


def test_L_alternating_oracle():
    # pair consecutive terms and add half the first omitted term
    n = np.arange(10**5, dtype=float)
    terms = (-1.0) ** n * (n + 1.5) ** -3.0
    est = math.fsum(terms) + 0.5 * (10**5 + 1.5) ** -3.0
    assert rel(dirichlet_L_mod2(3, 1.5), est) < 1e-12


@pytest.mark.parametrize("s", [1.0, 1.0 + 1e-9, 0.7, 1.3, 1 + 0.2j, 3.5, -2.5, 2 + 7j])
@pytest.mark.parametrize("tau", [0.2, 1.0, 1.8, 6.5])
def test_L_against_mpmath(s, tau):
    ref = complex(mp.nsum(lambda n: (-1) ** n * (n + tau) ** (-s), [0, mp.inf]))
    assert rel(dirichlet_L_mod2(s, tau), ref) < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.floats(-5.0, 10.0), st.floats(0.05, 30.0))
def test_L_shift_property(s, tau):
    lhs = dirichlet_L_mod2(s, tau) + dirichlet_L_mod2(s, tau + 1)
    assert abs(lhs - tau ** (-s)) <= 1e-10 * max(1.0, abs(tau ** (-s)))


def test_L_domain():
    with pytest.raises(DomainError):
        dirichlet_L_mod2(2, 0.0)


# --- Bernoulli -----------------------------------------------------------------


def test_bernoulli_table_invariants():
    tab = bernoulli_table(32).numbers
    assert tab[0] == 1 and tab[1] == Fraction(-1, 2)
    assert all(tab[2 * k + 1] == 0 for k in range(1, 16))
    for k in range(1, 32):
        assert sum(math.comb(k + 1, j) * tab[j] for j in range(k + 1)) == 0
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_poly_examples():
    assert bernoulli_poly(1, Fraction(0)) == Fraction(-1, 2)
    assert bernoulli_poly(2, Fraction(1)) == Fraction(1, 6)
    assert bernoulli_poly(1, Fraction(1)) == Fraction(1, 2)


def test_bernoulli_poly_generating_function():
    # w e^{-xw} / (1 - e^{-w}) = sum (-1)^k B_k(x) w^k / k!
    w = sp.symbols("w")
    x = sp.Rational(3, 10)
    ser = sp.series(w * sp.exp(-x * w) / (1 - sp.exp(-w)), w, 0, 8).removeO()
    for k in range(8):
        coef = ser.coeff(w, k) * sp.factorial(k) * (-1) ** k
        assert abs(float(coef) - bernoulli_poly(k, 0.3)) < 1e-14
    assert sp.Rational(bernoulli_poly(6, Fraction(3, 10))) == sp.expand(
        ser.coeff(w, 6) * sp.factorial(6))


@pytest.mark.parametrize("k", range(1, 11))
@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(5, 2)])
def test_bernoulli_closure(k, x):
    lhs = sum(math.comb(k + 1, j) * bernoulli_poly(j, x) for j in range(k + 1))
    assert lhs == (k + 1) * x**k
