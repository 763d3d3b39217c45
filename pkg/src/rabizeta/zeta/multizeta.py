"""Shell-by-shell Hurwitz expansion of the ``g = 0`` spectral zeta function.

At ``g = 0`` the kernel ``Theta`` is 1 and shell ``lambda`` of the partition
series is ``(beta Delta)^{2 lambda} (J_{2 lambda}(eps beta) + J_{2 lambda}(-eps beta)) / 2``.
Writing the shell through the ``J`` closed form ``sum_k u_k c_k(x) x^{-k}``
(``c_k = ch`` for even ``k``, ``sh`` for odd ``k``) and taking the Mellin
transform term by term gives

    Delta^{2 lambda} sum_k u_k eps^{-k} Gamma(s') / Gamma(s)
        [zeta(s', N - eps) +/- zeta(s', N + eps)],     s' = s + 2 lambda - k,

with ``+`` for even ``k``.  At ``eps = 0`` the shell reduces to
``Delta^{2 lambda} Gamma(s + 2 lambda) / (Gamma(s) (2 lambda)!) 2 zeta(s + 2 lambda, N)``.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from ..fock import ModelParams
from ..partition.jfunc import shell_coefficients
from ..specfun import gamma, hurwitz_zeta, rgamma
from .eigen import default_N
from .limits import limit_g0_target

__all__ = ["shell_zeta", "multizeta_expansion_check"]


def shell_zeta(lam: int, delta: float, eps: float, s, N: int) -> complex:
    """Mellin transform of shell ``lam`` of the ``g = 0`` series (with ``e^{-N beta}``)."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError(f"need Re s > 1, got s={s}")
    if N - abs(eps) <= 0:
        raise DomainError("need N > |eps|")
    pre = delta ** (2 * lam)
    if eps == 0:
        s2 = s + 2 * lam
        return complex(pre * gamma(s2) * rgamma(s) / math.factorial(2 * lam)
                       * 2 * hurwitz_zeta(s2, N))
    acc = 0j
    for k, u in shell_coefficients(lam).items():
        s2 = s + 2 * lam - k
        lo, hi = complex(hurwitz_zeta(s2, N - eps)), complex(hurwitz_zeta(s2, N + eps))
        pair = lo + hi if k % 2 == 0 else lo - hi
        acc += float(u) * eps ** (-k) * complex(gamma(s2)) * pair
    return complex(pre * acc * rgamma(s))


def multizeta_expansion_check(params: ModelParams, s, lambda_max: int = 2, N: int | None = None,
                              reference=None) -> dict:
    """Residual of the truncated shell expansion against the ``g = 0`` zeta value.

    Parameters
    ----------
    params : ModelParams
        Must have ``g = 0``.
    s : complex
        ``Re s > 1``.
    lambda_max : int
        Highest shell kept.
    N : int, optional
        Hurwitz shift, default ``default_N(params)``.
    reference : complex or ZetaResult, optional
        Value to compare with (e.g. a Mellin-route result).  Defaults to the
        closed form ``zeta(s, N + r) + zeta(s, N - r)``.

    Returns
    -------
    dict
        ``shells`` (per-shell values), ``expansion``, ``reference`` and
        ``residual``.  Dropping shells above ``lambda_max`` leaves a residual
        of order ``Delta^{2 lambda_max + 2}``.

    Notes
    -----
    For ``0 < |eps| << 1`` the ``eps^{-k}`` terms cancel to leading order and
    lose digits; pass ``eps = 0`` exactly for the symmetric case.
    """
    if params.g != 0:
        raise DomainError("the shell expansion is for g = 0")
    if lambda_max < 0:
        raise DomainError("lambda_max must be >= 0")
    N = default_N(params) if N is None else int(N)
    shells = [shell_zeta(lam, params.delta, params.eps, s, N) for lam in range(lambda_max + 1)]
    total = sum(shells)
    if reference is None:
        ref = limit_g0_target(params.delta, params.eps, s, N)
    else:
        ref = complex(getattr(reference, "value", reference))
    return {
        "shells": shells,
        "expansion": total,
        "reference": ref,
        "residual": float(abs(total - ref)),
        "N": N,
    }
