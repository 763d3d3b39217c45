"""Classical special functions: Gamma, Hurwitz/Riemann zeta, the alternating
Dirichlet series for the character mod 2, and Bernoulli numbers/polynomials.

The Hurwitz zeta function is evaluated by Euler-Maclaurin summation with a
shift ``m``: the first ``m`` terms are summed directly and the remainder is
replaced by the integral plus Bernoulli corrections through ``B_24``.
Accuracy is documented on the real axis and in the strip ``|Im s| <= 10``.
"""

from __future__ import annotations

import cmath
import math
import numbers
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as _sp

from .errors import DomainError, PoleError

__all__ = [
    "BernoulliTable",
    "bernoulli_table",
    "bernoulli_number",
    "bernoulli_poly",
    "gamma",
    "hurwitz_zeta",
    "riemann_zeta",
    "dirichlet_L_mod2",
]

EM_ORDER = 12


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BernoulliTable:
    """Exact Bernoulli numbers ``B_0 .. B_max_index`` with ``B_1 = -1/2``."""

    max_index: int
    numbers: tuple

    def __getitem__(self, k):
        return self.numbers[k]


_bern_lock = threading.Lock()
_bern_cache = [Fraction(1)]


def bernoulli_table(max_index: int) -> BernoulliTable:
    """Return exact Bernoulli numbers up to ``max_index``.

    The shared cache only grows under a lock and is never mutated in place,
    so concurrent readers always see a consistent prefix.
    """
    if max_index < 0:
        raise DomainError("max_index must be >= 0")
    if len(_bern_cache) <= max_index:
        with _bern_lock:
            while len(_bern_cache) <= max_index:
                m = len(_bern_cache)
                acc = Fraction(0)
                for j, bj in enumerate(_bern_cache):
                    if bj:
                        acc += math.comb(m + 1, j) * bj
                _bern_cache.append(-acc / (m + 1))
    return BernoulliTable(max_index, tuple(_bern_cache[: max_index + 1]))


def bernoulli_number(k: int) -> Fraction:
    return bernoulli_table(k).numbers[k]


def bernoulli_poly(k: int, x):
    """Bernoulli polynomial ``B_k(x)``.

    Uses the convention ``w e^{-xw} / (1 - e^{-w}) = sum (-1)^k B_k(x) w^k / k!``,
    which is the classical one (``B_1(x) = x - 1/2``). Exact ``Fraction``
    arithmetic is used when ``x`` is an ``int`` or ``Fraction``.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    tab = bernoulli_table(k).numbers
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = Fraction(x)
        return sum((math.comb(k, j) * tab[j] * x ** (k - j) for j in range(k + 1)), Fraction(0))
    # Horner in x with coefficients C(k, j) B_j for x^(k-j)
    acc = 0.0
    for j in range(k + 1):
        acc = acc * x + math.comb(k, j) * float(tab[j])
    return acc


_EM_COEFFS = None


def _em_coeffs():
    global _EM_COEFFS
    if _EM_COEFFS is None:
        tab = bernoulli_table(2 * EM_ORDER).numbers
        _EM_COEFFS = tuple(float(tab[2 * k] / math.factorial(2 * k)) for k in range(1, EM_ORDER + 1))
    return _EM_COEFFS


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------


def _is_real_input(s) -> bool:
    return isinstance(s, numbers.Real)


def _nonpositive_int(s) -> bool:
    s = complex(s)
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def gamma(s):
    """Euler Gamma function; raises :class:`PoleError` at 0, -1, -2, ..."""
    if _nonpositive_int(s):
        raise PoleError(f"Gamma has a pole at s={s}")
    if _is_real_input(s):
        return float(_sp.gamma(float(s)))
    return complex(_sp.gamma(complex(s)))


def rgamma(s):
    """Reciprocal Gamma, entire (zero at the poles of Gamma)."""
    if _is_real_input(s):
        return float(_sp.rgamma(float(s)))
    return complex(_sp.rgamma(complex(s)))


# ---------------------------------------------------------------------------
# Hurwitz zeta
# ---------------------------------------------------------------------------


def _shift(s) -> int:
    if _nonpositive_int(s):
        # the Euler-Maclaurin series terminates: exact with no direct terms
        return 0
    s = complex(s)
    if s.real < 0:
        # direct terms grow like m^(1-s); keep m just large enough for the
        # correction series through B_24 to stay convergent
        return max(3, math.ceil(1.2 * (abs(s) + 2 * EM_ORDER) / (2 * math.pi)))
    return max(10, math.ceil(abs(s)) + 10)


def _em_regular(s, a, m):
    """Return ``(reg, x)`` with ``zeta(s, a) = reg + x**(1-s)/(s-1)``."""
    x = m + a
    if m:
        n = np.arange(m, dtype=float) + a
        head = np.sum(n ** (-s))
        reg = complex(head) if isinstance(s, complex) else float(head)
    else:
        reg = 0.0
    reg = reg + 0.5 * x ** (-s)
    fact = s * x ** (-s - 1)
    for k, c in enumerate(_em_coeffs(), start=1):
        if fact == 0:
            break
        reg = reg + c * fact
        fact = fact * (s + 2 * k - 1) * (s + 2 * k) / (x * x)
    return reg, x


def _hurwitz_reflected(s, a):
    """Hurwitz's formula for Re s < -3, reduced to a shift in (0, 1]."""
    k = math.ceil(a) - 1
    frac = a - k
    sig = 1 - s
    nterms = min(10**6, math.ceil(10 ** (17.0 / complex(sig).real)) + 16)
    n = np.arange(1, nterms + 1, dtype=float)
    w = n ** (-sig)
    ang = 2 * np.pi * ((n * frac) % 1.0)
    c = np.sum(np.cos(ang) * w)
    sn = np.sum(np.sin(ang) * w)
    pref = 2 * _sp.gamma(sig) / (2 * np.pi) ** sig
    val = pref * (np.cos(np.pi * sig / 2) * c + np.sin(np.pi * sig / 2) * sn)
    if k:
        j = np.arange(k, dtype=float) + frac
        val = val - np.sum(j ** (-s))
    return complex(val) if isinstance(s, complex) else float(np.real(val))


def _coerce_s(s):
    if _is_real_input(s):
        return float(s), True
    s = complex(s)
    return s, False


def hurwitz_zeta(s, a: float):
    """Hurwitz zeta ``sum_{n>=0} (n + a)^{-s}``, continued to ``s != 1``.

    Parameters
    ----------
    s : real or complex
        Order. Real input returns a float, complex input a complex.
    a : float
        Shift, must be positive.

    Notes
    -----
    Euler-Maclaurin is used everywhere except ``Re s < -3`` at non-integer
    ``s``, where the direct terms would cancel catastrophically and Hurwitz's
    Fourier-series formula is used instead.
    """
    s, real = _coerce_s(s)
    a = float(a)
    if a <= 0:
        raise DomainError(f"Hurwitz zeta needs a > 0, got a={a}")
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s=1")
    if complex(s).real < -3 and not _nonpositive_int(s):
        val = _hurwitz_reflected(s, a)
    else:
        m = _shift(s)
        reg, x = _em_regular(s, a, m)
        val = reg + x ** (1 - s) / (s - 1)
    if real:
        return float(val.real) if isinstance(val, complex) else float(val)
    return complex(val)


def riemann_zeta(s):
    """Riemann zeta, ``hurwitz_zeta(s, 1)``."""
    return hurwitz_zeta(s, 1.0)


def _expm1_ratio(u):
    """``(exp(u) - 1) / u`` without cancellation near ``u = 0``."""
    if abs(u) < 0.1:
        term = 1.0
        acc = 1.0
        for k in range(2, 16):
            term = term * u / k
            acc = acc + term
        return acc
    if isinstance(u, complex):
        return (cmath.exp(u) - 1.0) / u
    return math.expm1(u) / u


def dirichlet_L_mod2(s, tau: float):
    """Alternating Hurwitz-type series ``sum_{n>=0} (-1)^n (n + tau)^{-s}``.

    Computed as ``2^{-s} [zeta(s, tau/2) - zeta(s, (tau+1)/2)]`` with the two
    ``s = 1`` poles cancelled analytically, so the function is entire in ``s``.
    """
    s, real = _coerce_s(s)
    tau = float(tau)
    if tau <= 0:
        raise DomainError(f"L_chi needs tau > 0, got tau={tau}")
    a, b = 0.5 * tau, 0.5 * (tau + 1.0)
    if abs(s - 1) > 0.5:
        val = 2.0 ** (-s) * (hurwitz_zeta(s, a) - hurwitz_zeta(s, b))
        return float(val.real) if real and isinstance(val, complex) else val
    m = _shift(s)
    ra, xa = _em_regular(s, a, m)
    rb, xb = _em_regular(s, b, m)
    logr = math.log(xa / xb)
    pole = -(xb ** (1 - s)) * logr * _expm1_ratio((1 - s) * logr)
    val = 2.0 ** (-s) * (ra - rb + pole)
    if real:
        return float(val.real) if isinstance(val, complex) else float(val)
    return complex(val)
