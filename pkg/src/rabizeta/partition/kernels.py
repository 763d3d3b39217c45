"""Integrands of the partition-function series.

All functions take simplex points ``mu`` as an array of shape ``(d,)`` or
``(P, d)`` with ascending rows; ``mu_0 = 0`` is prepended internally.  The
"time" argument ``t`` (inverse temperature) may be complex, which the
Cauchy-integral coefficient extraction relies on.

The exponents are returned in the form ``(g^2 / sh t) * bracket`` where the
bracket is accumulated in one pass.  The individual pieces grow like
``g^2 / t`` for small ``t`` and cancel, so summing them before scaling keeps
the cancellation at the level of one rounding per term.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError

__all__ = [
    "xi",
    "psi_minus",
    "psi_plus",
    "theta_exponent",
    "theta_even",
    "xi_odd_exponent",
    "Xi_odd",
    "xi_psi_plus_bound_check",
    "alternating_sum",
]


def _prep(mu, lam=None):
    mu = np.asarray(mu, dtype=float)
    single = mu.ndim == 1
    mu2 = np.atleast_2d(mu)
    if lam is not None and mu2.shape[1] != lam:
        raise DomainError(f"expected {lam} simplex coordinates, got {mu2.shape[1]}")
    m = np.concatenate([np.zeros((mu2.shape[0], 1)), mu2], axis=1)
    return m, single


def _out(v, single):
    return v[0] if single else v


def _check_t(t):
    if np.isrealobj(t) and not t > 0:
        raise DomainError(f"inverse temperature must be positive, got {t}")


def _xi_bracket(m, t):
    """``xi * sh(t) / g^2`` for padded points ``m`` of shape (P, lam+1)."""
    lam = m.shape[1] - 1
    sgn = (-1.0) ** np.arange(lam + 1)
    first = -8.0 * np.sinh(0.5 * t * (1.0 - m[:, lam])) ** 2 * (-1.0) ** lam \
        * (np.cosh(t * m) * sgn).sum(axis=1)
    if lam < 2:
        return first
    # sum over 0 <= a < b <= lam-1 with b - a odd, via parity prefix sums
    ch_mu = np.cosh(t * m)
    ch_rest = np.cosh(t * (1.0 - m))
    dlow = ch_mu[:, :lam] - ch_mu[:, 1:lam + 1]
    a_even = (np.arange(lam) % 2 == 0)
    cum_even = np.cumsum(np.where(a_even, dlow, 0.0), axis=1)
    cum_odd = np.cumsum(np.where(a_even, 0.0, dlow), axis=1)
    b = np.arange(1, lam)
    partner = np.where((b % 2 == 0)[None, :], cum_odd[:, b - 1], cum_even[:, b - 1])
    dhigh = ch_rest[:, b + 1] - ch_rest[:, b]
    return first - 4.0 * (dhigh * partner).sum(axis=1)


def _psi_bracket(m, t, kind):
    lam = m.shape[1] - 1
    sgn = (-1.0) ** np.arange(lam + 1)
    f = np.sinh if kind == "minus" else np.cosh
    return 4.0 * ((f(t * (0.5 - m)) * sgn).sum(axis=1)) ** 2


def xi(lam: int, mu, t, g: float):
    """The finite sum ``xi_lambda(mu; t)`` including the odd-gap double sum."""
    m, single = _prep(mu, lam)
    return _out(g * g / np.sinh(t) * _xi_bracket(m, t), single)


def psi_minus(lam: int, mu, t, g: float):
    """``(4 g^2 / sh t) [sum_gamma (-1)^gamma sh(t(1/2 - mu_gamma))]^2``."""
    m, single = _prep(mu, lam)
    return _out(g * g / np.sinh(t) * _psi_bracket(m, t, "minus"), single)


def psi_plus(lam: int, mu, t, g: float):
    """Same as :func:`psi_minus` with ``ch`` in place of ``sh``."""
    m, single = _prep(mu, lam)
    return _out(g * g / np.sinh(t) * _psi_bracket(m, t, "plus"), single)


def theta_exponent(g: float, t, mu):
    """Exponent of ``Theta_{2 lambda}`` for points of even dimension."""
    m, single = _prep(mu)
    d = m.shape[1] - 1
    if d % 2:
        raise DomainError("Theta needs an even number of simplex coordinates")
    br = -2.0 * (np.cosh(t) + 1.0) + 4.0 * np.cosh(t * (1.0 - m[:, d])) \
        + _xi_bracket(m, t) + _psi_bracket(m, t, "minus")
    return _out(g * g / np.sinh(t) * br, single)


def theta_even(g: float, beta, mu):
    """``Theta_{2 lambda}(g, beta; mu)``, which lies in ``(0, 1]`` for real beta."""
    _check_t(beta)
    return np.exp(theta_exponent(g, beta, mu))


def xi_odd_exponent(g: float, t, mu):
    """Exponent of ``Xi_{2 lambda + 1}`` for points of odd dimension."""
    m, single = _prep(mu)
    d = m.shape[1] - 1
    if d % 2 == 0:
        raise DomainError("Xi needs an odd number of simplex coordinates")
    br = -2.0 * (np.cosh(t) - 1.0) + _xi_bracket(m, t) + _psi_bracket(m, t, "plus")
    return _out(g * g / np.sinh(t) * br, single)


def Xi_odd(g: float, beta, mu):
    """``Xi_{2 lambda + 1} = exp(-2 g^2 tanh(beta/2) + xi + psi^+)``."""
    _check_t(beta)
    return np.exp(xi_odd_exponent(g, beta, mu))


def xi_psi_plus_bound_check(lam: int, mu, t: float, g: float, atol: float = 1e-12):
    """Whether ``Xi_{2 lam + 1} <= exp(-2 g^2 tanh(t/2))`` at the given point(s)."""
    mu = np.asarray(mu, dtype=float)
    if mu.shape[-1] != 2 * lam + 1:
        raise DomainError(f"expected {2 * lam + 1} simplex coordinates")
    excess = xi_odd_exponent(g, t, mu) + 2.0 * g * g * np.tanh(0.5 * t)
    return bool(np.all(excess <= atol * max(1.0, g * g)))


def alternating_sum(mu):
    """``sum_{gamma >= 1} (-1)^gamma mu_gamma`` along the last axis."""
    mu = np.asarray(mu, dtype=float)
    sgn = (-1.0) ** np.arange(1, mu.shape[-1] + 1)
    return (mu * sgn).sum(axis=-1)
