"""Spectral zeta functions summed over computed eigenvalues.

The sum over the lowest ``j_cut`` levels is completed with a ladder model
of the remaining spectrum.  Far up, the shifted levels ``lambda_j + g^2``
approach the displaced-oscillator ladders ``m + eps`` and ``m - eps`` (one
ladder ``m`` for each parity Hamiltonian), so the tail is a pair of Hurwitz
zeta values started where the computed levels stop.  Each ladder's offset is corrected by its mean deviation over the
upper half of the computed levels, and the spread about that mean,
propagated to first and second order, gives the bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..fock import ModelParams, parity_spectrum, spectrum
from ..specfun import hurwitz_zeta

__all__ = [
    "default_N",
    "ZetaResult",
    "spectral_zeta_eigen",
    "parity_zeta_eigen",
    "ladder_tail",
    "jc_zeta",
]

J_CUT = 200


def default_N(params: ModelParams) -> int:
    """``floor(|Delta| + |eps| + 1)``, the smallest admissible integer shift."""
    return math.floor(abs(params.delta) + abs(params.eps) + 1.0)


@dataclass
class ZetaResult:
    """A spectral zeta value with an error bracket and route tag."""

    value: complex
    err_bracket: float
    method: str
    metadata: dict = field(default_factory=dict)

    def overlaps(self, other: "ZetaResult", slack: float = 0.0) -> bool:
        return abs(self.value - other.value) <= self.err_bracket + other.err_bracket + slack

    def to_dict(self) -> dict:
        v = complex(self.value)
        return {
            "value_re": v.real,
            "value_im": v.imag,
            "err_bracket": float(self.err_bracket),
            "method": self.method,
            "metadata": self.metadata,
        }


def _as_s(s):
    s = complex(s)
    if s.real <= 1:
        raise DomainError(f"the eigenvalue sum needs Re s > 1, got s={s}")
    return s


def _power_sum(levels, s):
    out = np.sum(np.asarray(levels, dtype=complex) ** (-s))
    return complex(out)


def ladder_tail(shifted, c: float, s, offsets, drift: bool = True):
    """Model tail beyond the computed levels and its bracket.

    Parameters
    ----------
    shifted : ndarray
        Computed levels ``lambda_j + g^2``, ascending.
    c : float
        ``tau - g^2``; the summands are ``(shifted + c)^{-s}``.
    offsets : sequence of float
        Ladder offsets ``o``; the model levels are ``m + o`` for ``m >= 0``.
    drift : bool
        Whether the far levels may still move from the fitted offsets to
        ``offsets`` (true for ``g > 0``, where the crossover sits near
        ``m ~ 1/g^2``).  The gap is then added to the bracket.

    Returns
    -------
    (tail, err, info)
    """
    J = len(shifted)
    offsets = list(offsets)
    m = np.arange(J + 1, dtype=float)
    vals = np.concatenate([m + o for o in offsets])
    lab = np.concatenate([np.full(m.size, i) for i in range(len(offsets))])
    order = np.lexsort((lab, vals))
    model = vals[order][:J]
    used = np.bincount(lab[order][:J], minlength=len(offsets))
    labels = lab[order][:J]
    window = np.arange(J // 2, J)
    dev = shifted[window] - model[window]
    # per-ladder mean offset correction; the spread about it sets the bracket
    shift = np.zeros(len(offsets))
    spread = np.zeros(len(offsets))
    for i in range(len(offsets)):
        d = dev[labels[window] == i]
        if d.size:
            shift[i] = d.mean()
            spread[i] = np.abs(d - shift[i]).max()
    sig = s.real
    starts = [used[i] + offsets[i] + shift[i] + c for i in range(len(offsets))]
    if min(starts) <= 0:
        raise DomainError("ladder model reaches a non-positive base; increase j_cut or tau")
    tail = sum(hurwitz_zeta(s, a) for a in starts)
    z1 = [hurwitz_zeta(sig + 1.0, a) for a in starts]
    z2 = sum(hurwitz_zeta(sig + 2.0, a) for a in starts)
    dmax = float(spread.max())
    gap = spread + (np.abs(shift) if drift else 0.0)
    err = abs(s) * float(np.dot(gap, z1)) + 0.5 * abs(s * (s + 1)) * dmax * dmax * z2
    crude = 2.0 * hurwitz_zeta(sig, float(shifted[-1]) + c)
    return complex(tail), float(err), {"max_deviation": dmax, "ladder_shift": shift.tolist(),
                                       "ladder_counts": used.tolist(),
                                       "crude_tail_bound": crude}


def _finish(levels, tau, s, tol, offsets, g, method, extra):
    lam0 = float(levels[0])
    if lam0 + tau <= 0:
        raise DomainError(f"tau={tau} does not make the spectrum positive (lowest level {lam0})")
    head = _power_sum(levels + tau, s)
    tail, tail_err, info = ladder_tail(levels + g * g, tau - g * g, s, offsets, drift=g > 0)
    # eigenvalue uncertainty tol moves each summand by about |s| tol |x|^{-sigma-1}
    trunc = abs(s) * tol * float(np.sum(np.abs(levels + tau) ** (-s.real - 1.0)))
    meta = {"j_cut": len(levels), "tau": tau, "head": [head.real, head.imag],
            "tail": [tail.real, tail.imag], "tail_err": tail_err, "level_err": trunc}
    meta.update(info)
    meta.update(extra)
    return ZetaResult(head + tail, tail_err + trunc, method, meta)


def spectral_zeta_eigen(params: ModelParams, s, tau: float | None = None, j_cut: int = J_CUT,
                        tol: float = 1e-10, spec=None) -> ZetaResult:
    """``sum_j (lambda_j + tau)^{-s}`` over the AQRM spectrum.

    ``tau`` defaults to ``g^2 + default_N(params)``.  A precomputed
    :class:`~rabizeta.fock.Spectrum` may be passed as ``spec``.
    """
    s = _as_s(s)
    tau = params.g ** 2 + default_N(params) if tau is None else float(tau)
    sp = spec if spec is not None else spectrum(params, j_cut, tol)
    levels = np.asarray(sp.eigenvalues[:j_cut], dtype=float)
    return _finish(levels, tau, s, sp.tol, (params.eps, -params.eps), params.g, "eigen_sum",
                   {"truncation_dim": sp.truncation_dim})


def parity_zeta_eigen(params: ModelParams, sign: int, s, tau: float | None = None,
                      j_cut: int = J_CUT, tol: float = 1e-10) -> ZetaResult:
    """``sum_j (lambda^{sign}_j + tau)^{-s}`` for a parity Hamiltonian."""
    s = _as_s(s)
    tau = params.g ** 2 + default_N(params) if tau is None else float(tau)
    sp = parity_spectrum(params, sign, j_cut, tol)
    levels = np.asarray(sp.eigenvalues, dtype=float)
    return _finish(levels, tau, s, sp.tol, (0.0,), params.g, "eigen_sum",
                   {"truncation_dim": sp.truncation_dim, "sign": sign})


def jc_zeta(g: float, delta: float, s, tau: float, n_cut: int = 20000) -> ZetaResult:
    """Spectral zeta of the Jaynes-Cummings model.

    ``sum_{n >= 0} sum_{+/-} (n + 1/2 +/- sqrt(Delta^2 + g^2 (n + 1)) + tau)^{-s}``,
    summed directly to ``n_cut`` with an Euler-Maclaurin tail on each branch.
    """
    s = _as_s(s)
    n = np.arange(n_cut, dtype=float)
    root = np.sqrt(delta * delta + g * g * (n + 1.0))
    lo = n + 0.5 - root + tau
    hi = n + 0.5 + root + tau
    if lo.min() <= 0:
        raise DomainError("tau is too small: a Jaynes-Cummings level base is non-positive")
    head = _power_sum(lo, s) + _power_sum(hi, s)
    # beyond n_cut, (x - r)^{-s} + (x + r)^{-s} = 2 x^{-s} + s(s+1) r^2 x^{-s-2} + O(r^4 x^{-s-4})
    # with x = n + 1/2 + tau and r^2 = Delta^2 + g^2 (x + 1/2 - tau)
    a = n_cut + 0.5 + tau
    sig = s.real
    b = 0.5 - tau
    tail = 2.0 * hurwitz_zeta(s, a) + s * (s + 1) * (
        g * g * hurwitz_zeta(s + 1, a) + (delta * delta + g * g * b) * hurwitz_zeta(s + 2, a))
    k4 = abs(s * (s + 1) * (s + 2) * (s + 3)) / 12.0
    err = k4 * 2.0 * (delta**4 * hurwitz_zeta(sig + 4, a)
                      + 2.0 * g**4 * (hurwitz_zeta(sig + 2, a) + b * b * hurwitz_zeta(sig + 4, a)))
    return ZetaResult(head + tail, float(2.0 * err), "jc_direct", {"n_cut": n_cut, "tau": tau})
