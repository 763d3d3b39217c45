"""Iterated simplex integrals ``J_lambda(t)``.

    J_lambda(t) = int_{0 <= mu_1 <= ... <= mu_lambda <= 1}
                  exp[t (1 - 2 sum_gamma (-1)^{lambda - gamma} mu_gamma)] dmu,   J_0 = e^t.

Write ``H_m(t) = t^m e^{-t} J_m(t)``.  Scaling the simplex to ``[0, t]`` and
differentiating in the upper limit gives

    H_m'(t) = (-1)^{m-1} e^{-2t} H_{m-1}(-t),    H_0 = 1.

Everything here follows from that identity:

* ``expansion(lam)`` integrates it exactly, giving
  ``J_lam(t) = sum_k (a_k e^t + b_k e^{-t}) t^{-k}`` with rational ``a_k, b_k``;
* ``recursion_table(lam)`` integrates it by parts without expanding, which
  expresses ``J_lam`` through lower ``J_m(t)`` and ``J_m(-t)`` with
  polynomial coefficients in ``1/t`` (the ``p_k`` and ``q_k`` tables);
* ``taylor_coefficients`` uses the vertex form of the integral, a divided
  difference of ``exp`` at ``p`` nodes ``+1`` and ``q`` nodes ``-1``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from .simplex import SeriesConfig, simplex_integrate

__all__ = [
    "j_lambda",
    "j_lambda_quadrature",
    "expansion",
    "recursion_table",
    "evaluate_recursion",
    "taylor_coefficients",
    "shell_coefficients",
    "phi_polynomials",
    "shell_value",
]

TAYLOR_RADIUS = 8.0


def _check_lam(lam):
    if int(lam) != lam or lam < 0:
        raise DomainError(f"lambda must be a non-negative integer, got {lam}")
    return int(lam)


def _exp_poly_integral(a: int):
    """``int_0^t u^a e^{-2u} du`` as ``({(j, b): c})`` meaning ``sum c t^j e^{b t}``."""
    out = {(0, 0): Fraction(math.factorial(a), 2 ** (a + 1))}
    for j in range(a + 1):
        out[(j, -2)] = -Fraction(math.factorial(a), math.factorial(j) * 2 ** (a - j + 1))
    return out


@lru_cache(maxsize=None)
def _h_terms(m: int):
    """``H_m`` as a tuple of ``((a, b), c)``: ``sum c t^a e^{b t}``, ``b`` in {0, -2}."""
    if m == 0:
        return (((0, 0), Fraction(1)),)
    acc = {}
    sign = -1 if (m - 1) % 2 else 1
    for (a, b), c in _h_terms(m - 1):
        # c (-u)^a e^{-b u} e^{-2u}
        coef = sign * c * (-1) ** a
        if -b - 2 == 0:
            key = (a + 1, 0)
            acc[key] = acc.get(key, 0) + coef / (a + 1)
        else:
            for key, v in _exp_poly_integral(a).items():
                acc[key] = acc.get(key, 0) + coef * v
    return tuple(sorted((k, v) for k, v in acc.items() if v != 0))


@lru_cache(maxsize=None)
def expansion(lam: int):
    """Exact ``{k: (a_k, b_k)}`` with ``J_lam(t) = sum_k (a_k e^t + b_k e^{-t}) t^{-k}``."""
    lam = _check_lam(lam)
    out = {}
    for (a, b), c in _h_terms(lam):
        k = lam - a
        ak, bk = out.get(k, (Fraction(0), Fraction(0)))
        if b == 0:
            ak += c
        else:
            bk += c
        out[k] = (ak, bk)
    return {k: v for k, v in sorted(out.items()) if v != (0, 0)}


def _eval_expansion(lam, t):
    et, emt = math.exp(t), math.exp(-t)
    acc = 0.0
    for k, (a, b) in expansion(lam).items():
        acc += (float(a) * et + float(b) * emt) * t ** (-k)
    return acc


@lru_cache(maxsize=None)
def taylor_coefficients(lam: int, n_terms: int = 80):
    """Exact ``c_n`` with ``J_lam(t) = sum_n c_n t^n``."""
    lam = _check_lam(lam)
    p, q = lam // 2 + 1, (lam + 1) // 2

    def comb_rep(r, i):
        # multisets of size i from r symbols
        if r == 0:
            return 1 if i == 0 else 0
        return math.comb(r + i - 1, i)

    out = []
    for n in range(n_terms):
        h = sum(comb_rep(p, i) * comb_rep(q, n - i) * (-1) ** (n - i) for i in range(n + 1))
        out.append(Fraction(h, math.factorial(n + lam)))
    return tuple(out)


def _eval_taylor(lam, t):
    coeffs = taylor_coefficients(lam)
    acc = 0.0
    tn = 1.0
    small = 0
    for n, c in enumerate(coeffs):
        term = float(c) * tn
        acc += term
        # odd-lambda coefficients vanish at alternate orders, so wait for two
        # consecutive negligible terms
        if n > abs(t) + 2 and abs(term) <= 1e-18 * abs(acc):
            small += 1
            if small == 2:
                break
        else:
            small = 0
        tn *= t
    return acc


def j_lambda(lam: int, t: float, method: str = "auto") -> float:
    """``J_lambda(t)``.

    Parameters
    ----------
    method : {"auto", "taylor", "recursion", "expansion"}
        ``auto`` uses the Taylor series for ``|t| <= 8`` (the closed forms
        lose digits to ``t^{-k}`` cancellation near 0) and the exact
        exponential expansion beyond.  ``recursion`` evaluates the
        integration-by-parts table.  See :func:`j_lambda_quadrature` for the
        sampled route.
    """
    lam = _check_lam(lam)
    t = float(t)
    if lam == 0:
        return math.exp(t)
    if t == 0:
        return 1.0 / math.factorial(lam)
    if method == "auto":
        method = "taylor" if abs(t) <= TAYLOR_RADIUS else "expansion"
    if method == "taylor":
        return _eval_taylor(lam, t)
    if method == "expansion":
        return _eval_expansion(lam, t)
    if method == "recursion":
        return evaluate_recursion(lam, t)
    raise DomainError(f"unknown method {method!r}")


def j_lambda_quadrature(lam: int, t: float, cfg: SeriesConfig | None = None):
    """``(value, stat_err)`` of ``J_lambda(t)`` by direct simplex integration."""
    lam = _check_lam(lam)
    if lam == 0:
        return math.exp(t), 0.0
    sgn = (-1.0) ** (lam - np.arange(1, lam + 1))

    def f(mu):
        return np.exp(t * (1.0 - 2.0 * (mu * sgn).sum(axis=1)))

    return simplex_integrate(f, lam, cfg, tag=("jlambda", lam))


# ---------------------------------------------------------------------------
# integration-by-parts recursion
# ---------------------------------------------------------------------------
# Terms are (kind, a, m) -> coefficient, meaning
#   kind "H": t^a H_m(t)      kind "E": t^a e^{-2t} H_m(-t)


def _add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def _A(k: int, m: int):
    """``int_0^t u^k H_m(u) du``."""
    if m == 0:
        return ((("H", k + 1, 0), Fraction(1, k + 1)),)
    acc = {}
    _add(acc, ("H", k + 1, m), Fraction(1, k + 1))
    sign = -1 if (m - 1) % 2 else 1
    for key, c in _B(k + 1, m - 1):
        _add(acc, key, -Fraction(sign, k + 1) * c)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _B(k: int, m: int):
    """``int_0^t u^k e^{-2u} H_m(-u) du``."""
    cj = [Fraction(math.factorial(k), math.factorial(j) * 2 ** (k - j + 1)) for j in range(k + 1)]
    acc = {}
    for j, c in enumerate(cj):
        _add(acc, ("E", j, m), -c)
    if m == 0:
        _add(acc, ("H", 0, 0), cj[0])
        return tuple(acc.items())
    sign = (-1) ** m
    for j, c in enumerate(cj):
        for key, v in _A(j, m - 1):
            _add(acc, key, sign * c * v)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def recursion_table(lam: int):
    """Coefficients of ``J_lam`` in terms of lower ``J_m(+/-t)``.

    Returns ``(p, q)``: dicts mapping ``m`` to a polynomial in ``x = 1/t``
    (a dict power -> Fraction), with

        J_lam(t) = sum_m p[m](1/t) J_m(-t) + sum_m q[m](1/t) J_m(t).
    """
    lam = _check_lam(lam)
    if lam == 0:
        return {}, {0: {0: Fraction(1)}}
    sign = -1 if (lam - 1) % 2 else 1
    p, q = {}, {}
    for (kind, a, m), c in _B(0, lam - 1):
        c = sign * c
        power = lam - a - m  # t^(a + m - lam) = x^power
        if kind == "H":
            tgt = q
        else:
            tgt = p
            c = c * (-1) ** m
        poly = tgt.setdefault(m, {})
        _add(poly, power, c)
    p = {m: dict(sorted(v.items())) for m, v in sorted(p.items()) if v}
    q = {m: dict(sorted(v.items())) for m, v in sorted(q.items()) if v}
    return p, q


def evaluate_recursion(lam: int, t: float) -> float:
    """Evaluate ``J_lam(t)`` from :func:`recursion_table` with exact lower ``J_m``."""
    lam = _check_lam(lam)
    if lam == 0:
        return math.exp(t)
    p, q = recursion_table(lam)
    x = 1.0 / t
    acc = 0.0
    for m, poly in p.items():
        acc += sum(float(c) * x**k for k, c in poly.items()) * j_lambda(m, -t, "expansion")
    for m, poly in q.items():
        acc += sum(float(c) * x**k for k, c in poly.items()) * j_lambda(m, t, "expansion")
    return acc


# ---------------------------------------------------------------------------
# shells of the g = 0 series
# ---------------------------------------------------------------------------


def shell_coefficients(lam: int):
    """``{k: u_k}`` with ``(J_{2 lam}(t) + J_{2 lam}(-t)) / 2 = sum_k u_k c_k(t) t^{-k}``.

    ``c_k = ch`` for even ``k`` and ``sh`` for odd ``k``.
    """
    lam = _check_lam(lam)
    out = {}
    for k, (a, b) in expansion(2 * lam).items():
        u = a + (-1) ** k * b
        if u:
            out[k] = u
    return out


def phi_polynomials(lam: int):
    """``(phi_1, phi_2)`` as dicts power -> Fraction: the sh and ch coefficients of shell ``lam``."""
    u = shell_coefficients(lam)
    phi1 = {k: v for k, v in u.items() if k % 2}
    phi2 = {k: v for k, v in u.items() if k % 2 == 0}
    return phi1, phi2


def shell_value(lam: int, t: float) -> float:
    """``(J_{2 lam}(t) + J_{2 lam}(-t)) / 2``."""
    return 0.5 * (j_lambda(2 * lam, t) + j_lambda(2 * lam, -t))
