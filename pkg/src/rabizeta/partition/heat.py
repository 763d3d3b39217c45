"""The lambda = 0 term of the heat kernel and its Gauss-Hermite trace."""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.hermite import hermgauss

from ..errors import DomainError

__all__ = ["mehler_kernel", "heat_kernel_lambda0", "heat_trace_lambda0"]


def _check_t(t):
    if not t > 0:
        raise DomainError(f"time must be positive, got {t}")


def mehler_kernel(x, y, t: float):
    """Mehler kernel of ``a^dag a`` (ground energy 0) in position space.

    ``K(x, y, t) = exp(-[(1 + q^2)(x^2 + y^2) - 4 q x y] / (2 (1 - q^2))) / sqrt(pi (1 - q^2))``
    with ``q = e^{-t}``.
    """
    _check_t(t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    q = math.exp(-t)
    one_m_q2 = -math.expm1(-2.0 * t)
    quad = ((1.0 + q * q) * (x * x + y * y) - 4.0 * q * x * y) / (2.0 * one_m_q2)
    return np.exp(-quad) / math.sqrt(math.pi * one_m_q2)


def heat_kernel_lambda0(x: float, y: float, t: float, params, N: int) -> np.ndarray:
    """The 2x2 lambda = 0 heat-kernel term, damped by ``e^{-N t}``.

    ``e^{-Nt} K(x, y, t) e^{-2 g^2 tanh(t/2)} [[ch a, -sh a], [-sh a, ch a]]`` with
    ``a = sqrt(2) g (x + y) (1 - e^{-t}) / (1 + e^{-t}) + eps t``.
    """
    _check_t(t)
    g, eps = params.g, params.eps
    th = math.tanh(0.5 * t)
    arg = math.sqrt(2.0) * g * (x + y) * th + eps * t
    pref = math.exp(-N * t - 2.0 * g * g * th) * float(mehler_kernel(x, y, t))
    c, s = math.cosh(arg), math.sinh(arg)
    return pref * np.array([[c, -s], [-s, c]])


def heat_trace_lambda0(t: float, params, N: int = 0, nodes: int = 80) -> float:
    """``int tr K_0(x, x, t) dx`` by Gauss-Hermite after rescaling ``x = y / sqrt(tanh(t/2))``.

    The exact value is ``e^{-Nt} 2 ch(eps t) / (1 - e^{-t})``.
    """
    _check_t(t)
    g, eps = params.g, params.eps
    th = math.tanh(0.5 * t)
    y, w = hermgauss(nodes)
    x = y / math.sqrt(th)
    # K(x, x) = exp(-th x^2) / sqrt(pi (1 - e^{-2t})); the Gaussian is the Hermite weight
    arg = 2.0 * math.sqrt(2.0) * g * th * x + eps * t
    f = 2.0 * np.cosh(arg)
    norm = math.exp(-N * t - 2.0 * g * g * th) / math.sqrt(math.pi * -math.expm1(-2.0 * t) * th)
    return float(norm * np.dot(w, f))
