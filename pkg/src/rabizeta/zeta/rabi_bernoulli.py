"""Rabi-Bernoulli polynomials and special values of the spectral zeta function.

At ``eps = 0`` write ``Z(beta) = 2 e^{g^2 beta} Phi(beta) / (1 - e^{-beta})`` with

    Phi(beta) = 1 + sum_{lambda >= 1} (beta Delta)^{2 lambda} int Theta_{2 lambda}(g, beta; mu) dmu,

an entire function with Taylor coefficients ``Omega^(j)``.  The Rabi-Bernoulli
polynomials are

    (RB)_k = (-1)^k k! sum_{i=0}^k (-1)^{k-i} / (k-i)! Omega^(i) B_{k-i}(1)

and give ``zeta(1 - k; g^2 + 1) = -(2/k) (RB)_k``.  The Bernoulli values
enter at argument 1, so ``B_1(1) = +1/2``; with that reading
``(RB)_1 = B_1(1)``, ``(RB)_2 = B_2 + Delta^2`` and
``(RB)_3 = B_3 + 3 Delta^2 B_1(1) + 2 g^2 Delta^2``.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy as sp

from ..errors import DomainError, IllConditionedWarning
from ..fock import ModelParams
from ..partition.kernels import theta_exponent
from ..partition.simplex import _collapsed_gl
from ..specfun import bernoulli_poly

__all__ = [
    "omega_coefficients",
    "omega_exact",
    "rb_polynomial",
    "rb_polynomial_exact",
    "rb_table",
    "special_value",
]

# tensor Gauss-Legendre orders per simplex dimension; high shells carry small weights
_GL_ORDER = {2: 32, 4: 12, 6: 6, 8: 4, 10: 3, 12: 3}


def _check(params):
    if params.eps != 0:
        raise DomainError("Rabi-Bernoulli polynomials are defined at eps = 0")


def _phi(g, delta, beta, L):
    acc = 1.0 + 0.0j
    for lam in range(1, L + 1):
        mu, w = _collapsed_gl(2 * lam, _GL_ORDER.get(2 * lam, 2))
        acc += (beta * delta) ** (2 * lam) * (np.exp(theta_exponent(g, beta, mu)) @ w)
    return acc


def omega_coefficients(params: ModelParams, j_max: int, radius: float = 0.5, nodes: int = 64):
    """Taylor coefficients ``Omega^(0..j_max)`` of ``Phi`` from a Cauchy integral.

    ``Phi`` is sampled at ``nodes`` points of ``|beta| = radius`` (the series
    with tensor Gauss-Legendre simplex rules, valid at complex ``beta``) and
    transformed with the FFT.  A warning is issued when rounding, amplified
    by ``radius^{-j}``, could reach ``1e-8``.
    """
    _check(params)
    if j_max < 0 or nodes <= j_max:
        raise DomainError("need 0 <= j_max < nodes")
    if not radius > 0:
        raise DomainError("radius must be positive")
    g, delta = params.g, params.delta
    # shells with 2 lambda > j_max start at beta^{j_max + 1} and only alias in
    L = max(1, j_max // 2)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    betas = radius * np.exp(1j * theta)
    vals = np.array([_phi(g, delta, b, L) if delta else 1.0 + 0.0j for b in betas])
    coef = np.fft.fft(vals) / nodes
    out = []
    big = float(np.abs(vals).max())
    for j in range(j_max + 1):
        c = coef[j] / radius**j
        out.append(float(c.real))
        if 1e-15 * big / radius**j > 1e-8:
            warnings.warn(f"Omega^({j}) is amplified by radius^-{j}; rounding may exceed 1e-8",
                          IllConditionedWarning, stacklevel=2)
    if any(abs(c) > big / radius**j * (1 + 1e-9) for j, c in enumerate(out)):
        warnings.warn("Omega coefficients exceed the Cauchy envelope", IllConditionedWarning,
                      stacklevel=2)
    return out


# ---------------------------------------------------------------------------
# exact low orders
# ---------------------------------------------------------------------------


def _theta_bracket_sym(lam, t, mus, ch=sp.cosh, sh=sp.sinh):
    """Symbolic bracket of ``Theta_{2 lam}``, mirroring the numerical kernel.

    ``ch`` and ``sh`` may be replaced by truncated Taylor polynomials.
    """
    m = [sp.Integer(0)] + list(mus)
    d = len(mus)
    alt = sum((-1) ** a * ch(t * m[a]) for a in range(d + 1))
    xi = -8 * sh(t * (1 - m[d]) / 2) ** 2 * (-1) ** d * alt
    for a in range(d):
        for b in range(a + 1, d):
            if (b - a) % 2:
                xi -= 4 * (ch(t * (1 - m[b + 1])) - ch(t * (1 - m[b]))) * (ch(t * m[a]) - ch(t * m[a + 1]))
    psi = 4 * sum((-1) ** a * sh(t * (sp.Rational(1, 2) - m[a])) for a in range(d + 1)) ** 2
    return -2 * (ch(t) + 1) + 4 * ch(t * (1 - m[d])) + xi + psi


def _trunc(expr, b, order):
    poly = sp.Poly(sp.expand(expr), b)
    return sum(c * b**k for (k,), c in poly.terms() if k <= order)


def _theta_series(lam, b, mus, g2, order):
    """``Theta_{2 lam}`` as a polynomial in ``b`` through ``b^order``."""
    K = order + 3

    def ch(x):
        return sum(x ** (2 * n) / sp.factorial(2 * n) for n in range(K // 2 + 1))

    def sh(x):
        return sum(x ** (2 * n + 1) / sp.factorial(2 * n + 1) for n in range(K // 2 + 1))

    br = _trunc(_theta_bracket_sym(lam, b, mus, ch, sh), b, order + 1)
    # the bracket vanishes at b = 0, so br / b is a polynomial; b / sh b is even
    q = sp.expand(sp.cancel(br / b))
    inv = _trunc(sp.series(b / sp.sinh(b), b, 0, order + 1).removeO(), b, order)
    expo = _trunc(g2 * q * inv, b, order)
    acc, term = sp.Integer(1), sp.Integer(1)
    for n in range(1, order + 1):
        term = _trunc(term * expo / n, b, order)
        acc += term
    return sp.expand(acc)


def _simplex_integral(expr, mus):
    # innermost mu_1 from 0 to mu_2, ..., mu_d from 0 to 1
    for k, v in enumerate(mus):
        upper = mus[k + 1] if k + 1 < len(mus) else 1
        expr = sp.integrate(sp.expand(expr), (v, 0, upper))
    return sp.expand(expr)


@lru_cache(maxsize=None)
def omega_exact(j_max: int):
    """Exact ``Omega^(0..j_max)`` as polynomials in symbols ``g2 = g^2`` and ``D2 = Delta^2``.

    Feasible for small ``j_max`` (the shells are expanded in ``beta`` and
    integrated over the simplex symbolically).
    """
    g2, D2, b = sp.symbols("g2 D2 beta")
    out = [sp.Integer(1)] + [sp.Integer(0)] * j_max
    for lam in range(1, j_max // 2 + 1):
        d = 2 * lam
        mus = sp.symbols(f"mu1:{d + 1}")
        order = j_max - d
        ser = _theta_series(lam, b, mus, g2, order)
        for p in range(order + 1):
            cp = sp.expand(ser.coeff(b, p))
            out[d + p] += D2**lam * _simplex_integral(cp, mus)
    return tuple(sp.expand(v) for v in out)


def _b1(n: int):
    return sp.Rational(*_frac(bernoulli_poly(n, Fraction(1))))


def _frac(f: Fraction):
    return f.numerator, f.denominator


def _rb_sum(k, omegas, bern):
    acc = 0
    for i in range(k + 1):
        acc += (-1) ** (k - i) * omegas[i] * bern(k - i) / math.factorial(k - i)
    return (-1) ** k * math.factorial(k) * acc


def rb_polynomial(k: int, params: ModelParams, omegas=None, **kw) -> float:
    """Numerical ``(RB)_k(g^2, Delta^2)`` from :func:`omega_coefficients`."""
    if k < 1:
        raise DomainError("k must be >= 1")
    _check(params)
    omegas = omega_coefficients(params, k, **kw) if omegas is None else omegas
    return float(_rb_sum(k, omegas, lambda n: float(bernoulli_poly(n, Fraction(1)))))


def rb_polynomial_exact(k: int):
    """Exact ``(RB)_k`` as a sympy polynomial in ``g2`` and ``D2``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    om = omega_exact(k)
    return sp.expand(_rb_sum(k, om, _b1))


def rb_table(k_max: int = 3):
    """Closed forms ``B_1, B_2 + D2, B_3 + 3 D2 B_1 + 2 g2 D2`` with ``B_j = B_j(1)``."""
    g2, D2 = sp.symbols("g2 D2")
    B = [_b1(n) for n in range(4)]
    table = {1: B[1], 2: B[2] + D2, 3: B[3] + 3 * D2 * B[1] + 2 * g2 * D2}
    return {k: sp.expand(v) for k, v in table.items() if k <= k_max}


def special_value(k: int, params: ModelParams, **kw) -> float:
    """``zeta(1 - k; g^2 + 1) = -(2/k) (RB)_k``."""
    return -2.0 / k * rb_polynomial(k, params, **kw)
