"""Closed-form limits of the spectral zeta functions and reports along parameter grids.

With ``tau = g^2 + N`` and ``r = sqrt(Delta^2 + eps^2)``:

* ``g -> 0``:      zeta -> zeta(s, N + r) + zeta(s, N - r)
* ``Delta -> 0``:  zeta -> zeta(s, N + eps) + zeta(s, N - eps)
* ``g -> inf``:    zeta -> zeta(s, N + eps) + zeta(s, N - eps)

and for the parity Hamiltonians (``eps = 0``)

* ``g -> 0``:      zeta^{+/-} -> (1/2) {zeta(s, N+Delta) + zeta(s, N-Delta)
                                         +/- [L(s, N+Delta) - L(s, N-Delta)]}
* ``g -> inf``:    zeta^{+/-} -> zeta(s, N)

where ``L(s, a) = sum_n (-1)^n (n + a)^{-s}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import DomainError
from ..fock import ModelParams
from ..specfun import dirichlet_L_mod2, hurwitz_zeta
from .eigen import ZetaResult, default_N, jc_zeta, parity_zeta_eigen, spectral_zeta_eigen
from .mellin import parity_zeta_mellin, spectral_zeta_mellin

__all__ = [
    "LimitReport",
    "limit_g0_target",
    "limit_delta0_target",
    "limit_ginf_target",
    "parity_g0_target",
    "spectral_zeta",
    "parity_zeta",
    "zeta_limit_g0",
    "zeta_limit_delta0",
    "zeta_limit_g_inf",
    "parity_limit_report",
    "jc_limit_report",
    "relative",
]


@dataclass
class LimitReport:
    """Values along a grid and their distances to a closed-form limit.

    ``passed`` holds when the distance at the last grid point is the
    smallest, i.e. the grid approaches the limit.
    """

    target: complex
    grid: list
    values: list
    distances: list
    brackets: list = field(default_factory=list)
    label: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.distances) and self.distances[-1] == min(self.distances)

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.distances, self.distances[1:]))

    def to_dict(self) -> dict:
        t = complex(self.target)
        return {
            "label": self.label,
            "target": [t.real, t.imag],
            "grid": [float(x) for x in self.grid],
            "values": [[complex(v).real, complex(v).imag] for v in self.values],
            "distances": [float(d) for d in self.distances],
            "err_brackets": [float(b) for b in self.brackets],
            "pass": self.passed,
        }


def _pair(s, a, b):
    return complex(hurwitz_zeta(s, a)) + complex(hurwitz_zeta(s, b))


def limit_g0_target(delta, eps, s, N):
    r = math.hypot(delta, eps)
    return _pair(s, N + r, N - r)


def limit_delta0_target(eps, s, N):
    return _pair(s, N + eps, N - eps)


limit_ginf_target = limit_delta0_target


def parity_g0_target(delta, s, N, sign):
    """``g -> 0`` limit of ``zeta^{sign}``; the ``+`` block has the ``L`` difference added."""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    z = _pair(s, N + delta, N - delta)
    ell = complex(dirichlet_L_mod2(s, N + delta)) - complex(dirichlet_L_mod2(s, N - delta))
    return 0.5 * (z + sign * ell)


def spectral_zeta(params: ModelParams, s, tau=None, route: str = "eigen", **kw) -> ZetaResult:
    """Dispatch to the eigenvalue sum or the Mellin route."""
    if route == "eigen":
        return spectral_zeta_eigen(params, s, tau, **kw)
    if route == "mellin":
        return spectral_zeta_mellin(params, s, tau, **kw)
    raise DomainError(f"unknown route {route!r}")


def parity_zeta(params: ModelParams, sign: int, s, tau=None, route: str = "eigen", **kw) -> ZetaResult:
    """``zeta^{sign}(s; tau)`` of a parity Hamiltonian by either route."""
    if route == "eigen":
        return parity_zeta_eigen(params, sign, s, tau, **kw)
    if route == "mellin":
        return parity_zeta_mellin(params, sign, s, tau, **kw)
    raise DomainError(f"unknown route {route!r}")


def _report(target, grid, results, label):
    vals = [r.value for r in results]
    return LimitReport(target, list(grid), vals, [abs(v - target) for v in vals],
                       [r.err_bracket for r in results], label)


def zeta_limit_g0(delta, eps, s, g_grid, N=None, route="mellin", **kw) -> LimitReport:
    """``zeta(s; g^2 + N)`` along a grid of ``g`` decreasing to 0."""
    N = default_N(ModelParams(0.0, delta, eps)) if N is None else int(N)
    res = [spectral_zeta(ModelParams(g, delta, eps), s, g * g + N, route, **kw) for g in g_grid]
    return _report(limit_g0_target(delta, eps, s, N), g_grid, res, "g0")


def zeta_limit_delta0(g, eps, s, delta_grid, N=None, route="eigen", **kw) -> LimitReport:
    """``zeta(s; g^2 + N)`` along a grid of ``Delta`` decreasing to 0.

    ``N`` defaults to the admissible shift of the largest ``Delta`` on the grid.
    """
    if N is None:
        N = default_N(ModelParams(0.0, max(abs(d) for d in delta_grid), eps))
    res = [spectral_zeta(ModelParams(g, d, eps), s, g * g + N, route, **kw) for d in delta_grid]
    return _report(limit_delta0_target(eps, s, N), delta_grid, res, "delta0")


def zeta_limit_g_inf(delta, eps, s, g_grid, N=None, route="eigen", **kw) -> LimitReport:
    """``zeta(s; g^2 + N)`` along an ascending ``g`` grid."""
    N = default_N(ModelParams(0.0, delta, eps)) if N is None else int(N)
    res = [spectral_zeta(ModelParams(g, delta, eps), s, g * g + N, route, **kw) for g in g_grid]
    return _report(limit_ginf_target(eps, s, N), g_grid, res, "ginf")


def parity_limit_report(delta, s, sign, scenario, grid, N=None, route="eigen", **kw) -> LimitReport:
    """Parity zeta along a ``g`` grid against the ``g -> 0`` or ``g -> inf`` closed form."""
    N = default_N(ModelParams(0.0, delta, 0.0)) if N is None else int(N)
    if scenario == "g0":
        target = parity_g0_target(delta, s, N, sign)
    elif scenario == "ginf":
        target = complex(hurwitz_zeta(s, N))
    else:
        raise DomainError(f"unknown parity scenario {scenario!r}")
    res = [parity_zeta(ModelParams(g, delta, 0.0), sign, s, g * g + N, route, **kw) for g in grid]
    return _report(target, grid, res, f"parity_{scenario}{'+' if sign > 0 else '-'}")


def jc_limit_report(s, tau, scenario, fixed, grid) -> LimitReport:
    """Jaynes-Cummings zeta along a grid of ``g`` (scenario "g0", ``fixed`` = Delta)
    or of ``Delta`` (scenario "delta0", ``fixed`` = g)."""
    if scenario == "g0":
        delta = fixed
        target = _pair(s, 0.5 + delta + tau, 0.5 - delta + tau)
        res = [jc_zeta(g, delta, s, tau) for g in grid]
    elif scenario == "delta0":
        g = fixed
        target = jc_zeta(g, 0.0, s, tau).value
        res = [jc_zeta(g, d, s, tau) for d in grid]
    else:
        raise DomainError(f"unknown Jaynes-Cummings scenario {scenario!r}")
    return _report(complex(target), grid, res, f"jc_{scenario}")


def relative(value, target) -> float:
    """``|value - target| / |target|``."""
    return float(abs(value - target) / abs(target))

