"""Partition functions of the asymmetric Rabi model as explicit series in ``beta * Delta``.

The full partition function is

    Z(beta) = 2 e^{g^2 beta} / (1 - e^{-beta}) * [ ch(eps beta)
              + sum_{lambda >= 1} (beta Delta)^{2 lambda} int Theta_{2 lambda} ch(eps beta (1 - 2 A)) dmu ]

with ``A = sum_gamma (-1)^gamma mu_gamma``.  At ``eps = 0`` the parity
Hamiltonians have

    Z^{+/-}(beta) = e^{g^2 beta} / (1 - e^{-beta}) * [1 + sum (beta Delta)^{2 lambda} int Theta_{2 lambda}]
                    -/+ e^{g^2 beta} / (1 + e^{-beta}) * sum (beta Delta)^{2 lambda + 1} int Xi_{2 lambda + 1}.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, SeriesTruncationWarning
from .kernels import alternating_sum, theta_exponent, xi_odd_exponent
from .simplex import LAMBDA_CAP, SeriesConfig, simplex_rule

__all__ = [
    "SeriesResult",
    "partition_full",
    "partition_parity",
    "even_terms",
    "odd_terms",
    "envelope_tail",
]


@dataclass
class SeriesResult:
    """Outcome of a truncated partition series.

    ``per_lambda_terms`` (and ``odd_terms`` for parity) are the bracketed
    contributions before the prefactor; ``value``, ``stat_err`` and
    ``trunc_err`` are in units of the partition function.
    """

    value: float
    per_lambda_terms: list
    stat_err: float
    trunc_err: float
    prefactor: float = 1.0
    odd_terms: list = field(default_factory=list)
    odd_prefactor: float = 0.0
    lambda_max: int = 0

    @property
    def total_err(self) -> float:
        return self.stat_err + self.trunc_err

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "per_lambda_terms": [float(v) for v in self.per_lambda_terms],
            "odd_terms": [float(v) for v in self.odd_terms],
            "stat_err": float(self.stat_err),
            "trunc_err": float(self.trunc_err),
            "prefactor": float(self.prefactor),
            "odd_prefactor": float(self.odd_prefactor),
            "lambda_max": int(self.lambda_max),
        }


def _check_beta(beta):
    if not (np.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be positive, got {beta}")


def envelope_tail(x: float, L: int, first_power: int = 2) -> float:
    """``sum_{lambda > L} x^{2 lambda + p - 2} / (2 lambda + p - 2)!`` with ``p = first_power``.

    With ``Theta <= 1`` (and ``Xi <= 1``) this bounds the series tail.
    """
    x = abs(x)
    acc = 0.0
    k = 2 * (L + 1) + first_power - 2
    term = x**k / math.factorial(k)
    while term > 1e-300:
        acc += term
        term *= x * x / ((k + 1) * (k + 2))
        k += 2
        if term < 1e-17 * acc:
            break
    return acc


def _geometric_tail(terms, cap):
    nz = [abs(v) for v in terms if v != 0]
    if len(nz) < 2:
        return 0.0
    r = min(nz[-1] / nz[-2], cap)
    if r >= 1:
        return math.inf
    return nz[-1] * r / (1.0 - r)


def even_terms(g, eps, beta, L, cfg, tag="full"):
    """Return ``([t_0..t_L], [err_0..err_L])`` of the even bracket; beta may be complex."""
    terms = [np.cosh(eps * beta)]
    errs = [0.0]
    for lam in range(1, L + 1):
        rule = simplex_rule(2 * lam, cfg, tag=(tag, lam))
        vals = []
        for pts in rule.points:
            v = np.exp(theta_exponent(g, beta, pts))
            if eps:
                v = v * np.cosh(eps * beta * (1.0 - 2.0 * alternating_sum(pts)))
            vals.append(v)
        est, err = rule.apply(np.stack(vals))
        terms.append(est)
        errs.append(err)
    return terms, errs


def odd_terms(g, beta, L, cfg, tag="odd"):
    """Integrals of ``Xi_{2 lambda + 1}`` for ``lambda = 0..L-1``."""
    terms, errs = [], []
    for lam in range(L):
        rule = simplex_rule(2 * lam + 1, cfg, tag=(tag, lam))
        vals = np.stack([np.exp(xi_odd_exponent(g, beta, pts)) for pts in rule.points])
        est, err = rule.apply(vals)
        terms.append(est)
        errs.append(err)
    return terms, errs


def _choose_L(cfg, x, floor_value):
    L = cfg.lambda_max
    if cfg.auto_raise:
        while L < LAMBDA_CAP and envelope_tail(x, L) > cfg.target_rel_err * floor_value:
            L += 1
    return L


def partition_full(params, beta: float, cfg: SeriesConfig | None = None) -> SeriesResult:
    """Partition function ``Z(beta)`` of the asymmetric Rabi model from the series.

    Examples
    --------
    >>> from rabizeta.fock import ModelParams
    >>> r = partition_full(ModelParams(0.0, 0.0, 0.0), 1.0)
    >>> round(r.value, 12) == round(2 / (1 - math.exp(-1)), 12)
    True
    """
    cfg = cfg or SeriesConfig()
    _check_beta(beta)
    g, delta, eps = params.g, params.delta, params.eps
    x = beta * delta
    L = _choose_L(cfg, x, 1.0) if delta else 0
    ints, ierrs = even_terms(g, eps, beta, L, cfg, tag="full")
    terms = [float(ints[0])] + [float(x ** (2 * k) * ints[k]) for k in range(1, L + 1)]
    errs = [0.0] + [abs(x ** (2 * k)) * ierrs[k] for k in range(1, L + 1)]
    cap = x * x / ((2 * L + 1) * (2 * L + 2))
    trunc = _geometric_tail(terms, cap)
    pref = 2.0 * math.exp(g * g * beta) / -math.expm1(-beta)
    bracket = math.fsum(terms)
    res = SeriesResult(
        value=pref * bracket,
        per_lambda_terms=terms,
        stat_err=pref * math.sqrt(math.fsum(e * e for e in errs)),
        trunc_err=pref * trunc,
        prefactor=pref,
        lambda_max=L,
    )
    if res.trunc_err > cfg.target_rel_err * abs(res.value):
        warnings.warn(f"series tail {res.trunc_err:.3g} exceeds target at beta={beta}",
                      SeriesTruncationWarning, stacklevel=2)
    return res


def partition_parity(params, sign: int, beta: float, cfg: SeriesConfig | None = None) -> SeriesResult:
    """Partition function of the parity Hamiltonian ``H_+`` (sign=+1) or ``H_-`` (sign=-1)."""
    cfg = cfg or SeriesConfig()
    if params.eps != 0:
        raise DomainError("parity partition functions need eps = 0")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    _check_beta(beta)
    g, delta = params.g, params.delta
    x = beta * delta
    L = _choose_L(cfg, x, 1.0) if delta else 0
    ev, ev_err = even_terms(g, 0.0, beta, L, cfg, tag="even")
    even = [float(ev[0])] + [float(x ** (2 * k) * ev[k]) for k in range(1, L + 1)]
    even_err = [0.0] + [x ** (2 * k) * ev_err[k] for k in range(1, L + 1)]
    if delta:
        od, od_err = odd_terms(g, beta, L + 1, cfg, tag="odd")
    else:
        od, od_err = [], []
    odd = [float(x ** (2 * k + 1) * od[k]) for k in range(len(od))]
    odd_err = [abs(x) ** (2 * k + 1) * od_err[k] for k in range(len(od))]
    pe = math.exp(g * g * beta) / -math.expm1(-beta)
    po = math.exp(g * g * beta) / (1.0 + math.exp(-beta))
    value = pe * math.fsum(even) - sign * po * math.fsum(odd)
    stat = math.hypot(pe * math.sqrt(math.fsum(e * e for e in even_err)),
                      po * math.sqrt(math.fsum(e * e for e in odd_err)))
    trunc = pe * _geometric_tail(even, x * x / ((2 * L + 1) * (2 * L + 2))) \
        + po * _geometric_tail(odd, x * x / ((2 * L + 2) * (2 * L + 3)))
    res = SeriesResult(value, even, stat, trunc, pe, odd, po, L)
    if res.trunc_err > cfg.target_rel_err * abs(res.value):
        warnings.warn(f"series tail {res.trunc_err:.3g} exceeds target at beta={beta}",
                      SeriesTruncationWarning, stacklevel=2)
    return res
