"""Spectral zeta functions as Mellin transforms of the partition series.

    zeta(s; tau) = 1/Gamma(s) int_0^inf t^{s-1} Z(t) e^{-t tau} dt.

The ``lambda = 0`` part of the series, ``2 e^{g^2 t} ch(eps t) / (1 - e^{-t})``,
is integrated in closed form into ``zeta(s, c + eps) + zeta(s, c - eps)`` with
``c = tau - g^2``.  The remaining shells are integrated numerically with
composite Gauss-Legendre panels in ``u = ln t``.

At each node the shell integrals are written as the ``g = 0`` shell (exact,
from ``J_lambda``) minus a sampled deficit ``int (1 - Theta) ch(...)``,
estimated as the exact ``g = 0`` shell times the ``ch``-weighted mean of
``1 - Theta``.  The
``g = 0`` shells sum to ``ch(r t) - ch(eps t)`` with ``r = sqrt(Delta^2 +
eps^2)``, so the part of the series beyond the sampled shells is known at
``g = 0``; it is carried with the last sampled ratio ``rho = deficit /
g=0 shell``, which grows with ``lambda`` towards 1, and ``(1 - rho)`` times
that tail is reported as truncation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

from ..errors import ConvergenceError, DomainError
from ..fock import ModelParams, parity_spectrum
from ..partition.jfunc import shell_value
from ..partition.kernels import alternating_sum, theta_exponent, xi_odd_exponent
from ..partition.simplex import LAMBDA_CAP, SeriesConfig, simplex_rule
from ..specfun import dirichlet_L_mod2, hurwitz_zeta, rgamma
from .eigen import ZetaResult, _finish, default_N

__all__ = [
    "QuadSettings",
    "spectral_zeta_mellin",
    "parity_zeta_mellin",
    "modified_mellin_difference",
    "modified_mellin_target",
    "modified_mellin_report",
]


@dataclass(frozen=True)
class QuadSettings:
    """Panel quadrature for the Mellin integral.

    Parameters
    ----------
    t_min : float
        Lower cut; the dropped piece is bounded analytically.
    panel_width : float
        Panel width in ``ln t``.
    order, check_order : int
        Gauss-Legendre orders; their difference is the quadrature error.
    tail_tol : float
        The upper cut ``T`` makes the envelope bound on ``int_T^inf`` smaller
        than this.
    t_max : float
        Largest admissible ``T``.
    """

    t_min: float = 1e-4
    panel_width: float = 0.75
    order: int = 12
    check_order: int = 7
    tail_tol: float = 1e-10
    t_max: float = 400.0

    def __post_init__(self):
        if not 0 < self.t_min < 1 or self.panel_width <= 0 or self.t_max <= 1:
            raise DomainError("invalid quadrature settings")
        if self.order < 2 or self.check_order < 2 or self.order == self.check_order:
            raise DomainError("need two distinct Gauss-Legendre orders >= 2")


MELLIN_CONFIG = SeriesConfig(points_per_lambda=2**12)


# ---------------------------------------------------------------------------
# shell families
# ---------------------------------------------------------------------------
# Each family is a series sum_lam (t Delta)^{dim(lam)} I_lam(t).  The g = 0
# integrals I0_lam and their full sum are known; the deficit I0 - I is sampled.


class _Family:
    def __init__(self, name, g, eps, delta):
        self.name, self.g, self.eps, self.delta = name, g, eps, delta

    def lams(self):
        start = 0 if self.name == "odd" else 1
        return range(start, LAMBDA_CAP + 1)

    def dim(self, lam):
        return 2 * lam if self.name == "even" else 2 * lam + 1

    def exact0(self, lam, t):
        if self.name == "even":
            if self.eps:
                return shell_value(lam, self.eps * t)
            return 1.0 / math.factorial(2 * lam)
        return 1.0 / math.factorial(2 * lam + 1)

    def full0(self, t):
        x = self.delta * t
        if self.name == "even":
            r = math.hypot(self.delta, self.eps)
            return math.cosh(r * t) - math.cosh(self.eps * t)
        if self.name == "odd":
            return math.sinh(x)
        return math.sinh(x) - x

    def deficit(self, t, pts, weights, i0):
        """Sampled ``int (1 - Theta) w dmu`` for one replicate of points."""
        g = self.g
        if self.name == "even":
            v = -np.expm1(theta_exponent(g, t, pts))
            if self.eps:
                # ratio estimate: exact int w dmu times the w-weighted mean of 1 - Theta;
                # w = ch(eps t (1 - 2A)) spans e^{|eps| t} and sampling it directly is noisy
                w = weights * np.cosh(self.eps * t * (1.0 - 2.0 * alternating_sum(pts)))
                return i0 * (v @ w) / w.sum()
            return v @ weights
        e = xi_odd_exponent(g, t, pts)
        if self.name == "odd_mod":
            e = e + 2.0 * g * g * math.tanh(0.5 * t)
        return -np.expm1(e) @ weights


def _family_node(fam: _Family, t: float, cfg: SeriesConfig):
    """Per-replicate series value at ``t``, its truncation error and the last lambda used."""
    x = fam.delta * t
    full = fam.full0(t)
    cap = LAMBDA_CAP if cfg.auto_raise else max(cfg.lambda_max, 1)
    acc0 = 0.0
    acc_d = np.zeros(1)
    rho = 0.0
    last = 0
    for lam in fam.lams():
        if lam > cap:
            break
        dim = fam.dim(lam)
        i0 = fam.exact0(lam, t)
        p = x**dim
        acc0 += p * i0
        last = lam
        if fam.g:
            rule = simplex_rule(dim, cfg, tag=("mellin", fam.name, lam))
            per = np.array([fam.deficit(t, pts, rule.weights, i0) for pts in rule.points])
            # nested rules give one replicate, which broadcasts against QMC ones
            acc_d = acc_d + p * per
            rho = min(max(float(per.mean()) / i0, 0.0), 1.0) if i0 > 0 else 1.0
        if full - acc0 <= 1e-15 * abs(full):
            break
    tail = max(full - acc0, 0.0)
    if not fam.g:
        return np.full(acc_d.size, full), 0.0, last
    return full - acc_d - rho * tail, (1.0 - rho) * tail, last


# ---------------------------------------------------------------------------
# panel quadrature
# ---------------------------------------------------------------------------


def _upper_cut(sigma, s, amp, kappa, quad: QuadSettings):
    """Smallest ``T`` on a geometric grid with ``int_T^inf t^{sigma-1} amp e^{-kappa t} / |Gamma(s)| <= tail_tol``."""
    if kappa <= 0:
        raise DomainError("the Mellin integrand does not decay; increase tau")
    scale = abs(rgamma(s)) * amp * special.gamma(sigma) * kappa ** (-sigma)
    T = 4.0
    while T <= quad.t_max:
        bound = scale * special.gammaincc(sigma, kappa * T)
        if bound <= quad.tail_tol:
            return T, float(bound)
        T *= 1.2
    raise ConvergenceError(f"no upper cut below t_max={quad.t_max} meets the tail tolerance "
                           f"(decay rate {kappa:.3g})")


def _panel_nodes(quad: QuadSettings, T: float):
    u0, u1 = math.log(quad.t_min), math.log(T)
    n = max(1, math.ceil((u1 - u0) / quad.panel_width))
    edges = np.linspace(u0, u1, n + 1)
    rules = []
    for order in (quad.order, quad.check_order):
        x, w = leggauss(order)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        u = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wu = (half[:, None] * w[None, :]).ravel()
        # dt = t du
        rules.append((np.exp(u), wu * np.exp(u)))
    return rules, n


def _integrate(node_fn, s, sigma, amp, kappa, head, quad: QuadSettings):
    """``1/Gamma(s) int t^{s-1} F(t) dt`` with ``F`` given per replicate by ``node_fn``."""
    T, tail_bound = _upper_cut(sigma, s, amp, kappa, quad)
    rules, n_panels = _panel_nodes(quad, T)
    rg = rgamma(s)
    totals = []
    trunc = 0.0
    lam_used = 0
    for k, (tn, wt) in enumerate(rules):
        acc = 0.0
        for t, w in zip(tn, wt):
            vals, terr, last = node_fn(float(t))
            kern = w * t ** (s - 1.0) * rg
            acc = acc + kern * vals
            if k == 0:
                trunc += abs(kern) * terr
                lam_used = max(lam_used, last)
        totals.append(np.asarray(acc))
    main, check = totals
    value = complex(main.mean())
    stat = float(np.std(main, ddof=1) / math.sqrt(main.size)) if main.size > 1 else 0.0
    quad_err = abs(value - complex(check.mean()))
    head_err = head * quad.t_min ** (sigma + 1.0) / (sigma + 1.0) * abs(rg)
    meta = {"T": T, "panels": n_panels, "nodes": int(rules[0][0].size + rules[1][0].size),
            "tail_bound": tail_bound, "head_bound": head_err, "quad_err": quad_err,
            "stat_err": stat, "trunc_err": trunc, "lambda_used": lam_used}
    return value, quad_err + stat + trunc + tail_bound + head_err, meta


def _prepare(params, s, tau):
    s = complex(s)
    if s.real <= 1:
        raise DomainError(f"the Mellin route needs Re s > 1, got s={s}")
    tau = params.g ** 2 + default_N(params) if tau is None else float(tau)
    return s, tau, tau - params.g ** 2


# ---------------------------------------------------------------------------
# public routes
# ---------------------------------------------------------------------------


def spectral_zeta_mellin(params: ModelParams, s, tau: float | None = None,
                         cfg: SeriesConfig | None = None,
                         quad: QuadSettings | None = None) -> ZetaResult:
    """AQRM spectral zeta ``zeta(s; tau)`` from the Mellin transform of the partition series.

    Needs ``tau - g^2 > sqrt(Delta^2 + eps^2)``, which the default
    ``tau = g^2 + N`` satisfies.
    """
    cfg = cfg or MELLIN_CONFIG
    quad = quad or QuadSettings()
    s, tau, c = _prepare(params, s, tau)
    g, delta, eps = params.g, params.delta, params.eps
    r = math.hypot(delta, eps)
    if c <= r:
        raise DomainError(f"need tau - g^2 > sqrt(Delta^2 + eps^2) = {r:.6g}, got {c:.6g}")
    base = hurwitz_zeta(s, c + eps) + hurwitz_zeta(s, c - eps)
    meta = {"tau": tau, "base": [complex(base).real, complex(base).imag]}
    if delta == 0:
        return ZetaResult(complex(base), 0.0, "mellin", meta)
    fam = _Family("even", g, eps, delta)

    def node(t):
        vals, terr, last = _family_node(fam, t, cfg)
        pref = 2.0 * math.exp(-c * t) / -math.expm1(-t)
        return pref * vals, pref * terr, last

    # 0 <= series <= ch(r t) - ch(eps t) <= e^{r t} / 2; near 0 the integrand is ~ Delta^2 t
    integral, err, qmeta = _integrate(node, s, s.real, 1.0 / -math.expm1(-4.0), c - r,
                                      2.0 * delta * delta, quad)
    meta.update(qmeta)
    return ZetaResult(complex(base) + integral, err, "mellin", meta)


def parity_zeta_mellin(params: ModelParams, sign: int, s, tau: float | None = None,
                       cfg: SeriesConfig | None = None,
                       quad: QuadSettings | None = None) -> ZetaResult:
    """``zeta^{sign}(s; tau)`` of a parity Hamiltonian from the parity partition series."""
    if params.eps != 0:
        raise DomainError("parity zeta functions need eps = 0")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    cfg = cfg or MELLIN_CONFIG
    quad = quad or QuadSettings()
    s, tau, c = _prepare(params, s, tau)
    g, delta = params.g, params.delta
    if c <= delta:
        raise DomainError(f"need tau - g^2 > Delta = {delta:.6g}, got {c:.6g}")
    base = hurwitz_zeta(s, c)
    meta = {"tau": tau, "sign": sign, "base": [complex(base).real, complex(base).imag]}
    if delta == 0:
        return ZetaResult(complex(base), 0.0, "mellin", meta)
    even = _Family("even", g, 0.0, delta)
    odd = _Family("odd", g, 0.0, delta)

    def node(t):
        ve, te, le = _family_node(even, t, cfg)
        vo, to, lo = _family_node(odd, t, cfg)
        ec = math.exp(-c * t)
        pe, po = ec / -math.expm1(-t), ec / (1.0 + math.exp(-t))
        return pe * ve - sign * po * vo, pe * te + po * to, max(le, lo)

    integral, err, qmeta = _integrate(node, s, s.real, 1.0 / -math.expm1(-4.0), c - delta,
                                      delta + delta * delta, quad)
    meta.update(qmeta)
    return ZetaResult(complex(base) + integral, err, "mellin", meta)


def modified_mellin_target(delta: float, s, c: float):
    """Closed-form ``lambda = 0`` part ``2 Delta s L_chi(s + 1, c)`` of the modified Mellin difference."""
    return 2.0 * delta * complex(s) * complex(dirichlet_L_mod2(complex(s) + 1.0, c))


def _modified_power(a, s: float, g: float, n: int):
    """``1/Gamma(s) int t^{s-1} e^{-a t} e^{2 g^2 tanh(t/2)} dt`` by generalized Gauss-Laguerre."""
    y, w = special.roots_genlaguerre(n, s - 1.0)
    a = np.asarray(a, dtype=float)[:, None]
    vals = np.exp(2.0 * g * g * np.tanh(0.5 * y[None, :] / a)) @ w
    return a[:, 0] ** (-s) * vals / special.gamma(s)


def _modified_eigen(params, s: float, tau: float, j_cut: int):
    g = params.g
    parts = {}
    for sg in (1, -1):
        sp = parity_spectrum(params, sg, j_cut, 1e-10)
        lv = np.asarray(sp.eigenvalues, dtype=float)
        base = lv + tau
        if base.min() <= 0:
            raise DomainError(f"tau={tau} does not make the parity spectrum positive")
        head = _modified_power(base, s, g, 60)
        head_err = float(np.abs(head - _modified_power(base, s, g, 40)).sum())
        # e^{2 g^2 tanh(t/2)} = 1 + g^2 t + g^4 t^2 / 2 + O(t^3), so far up each level
        # contributes a^{-s} + g^2 s a^{-s-1} + O(a^{-s-2})
        t0 = _finish(lv, tau, complex(s), sp.tol, (0.0,), g, "eigen_sum", {})
        t1 = _finish(lv, tau, complex(s + 1.0), sp.tol, (0.0,), g, "eigen_sum", {})
        tail = complex(t0.metadata["tail"][0]) + g * g * s * complex(t1.metadata["tail"][0])
        a_top = float(base[-1])
        rest = (g**4 * s * (s + 1) + 2.0 * g * g * s * (s + 1) * (s + 2) / 12.0) \
            * hurwitz_zeta(s + 2.0, a_top)
        err = head_err + t0.metadata["tail_err"] + g * g * s * t1.metadata["tail_err"] \
            + rest + t0.metadata["level_err"]
        parts[sg] = (float(head.sum()) + tail.real, err)
    return parts[-1][0] - parts[1][0], parts[-1][1] + parts[1][1]


def modified_mellin_difference(params: ModelParams, s, tau: float | None = None,
                               route: str = "series", cfg: SeriesConfig | None = None,
                               quad: QuadSettings | None = None, j_cut: int = 200) -> ZetaResult:
    """Mellin transform of ``Z^-(t) - Z^+(t)`` against ``e^{-t tau} e^{2 g^2 tanh(t/2)} dt``.

    The ``lambda = 0`` part equals :func:`modified_mellin_target`; the rest
    is an integral of ``exp(xi + psi^+) <= 1`` shells, which vanish as
    ``g -> inf``.

    Parameters
    ----------
    route : {"series", "eigen"}
        ``series`` integrates the parity partition series.  ``eigen``
        transforms each parity level separately with generalized
        Gauss-Laguerre rules (real ``s`` only) and closes the sum with the
        ladder tail.  Each level carries a factor up to ``e^{2 g^2}``, so it
        is meant for small ``g``.
    """
    if params.eps != 0:
        raise DomainError("the modified Mellin difference needs eps = 0")
    s, tau, c = _prepare(params, s, tau)
    g, delta = params.g, params.delta
    target = modified_mellin_target(delta, s, c)
    meta = {"tau": tau, "target": [target.real, target.imag]}
    if route == "series":
        cfg = cfg or MELLIN_CONFIG
        quad = quad or QuadSettings()
        if c <= delta:
            raise DomainError(f"need tau - g^2 > Delta = {delta:.6g}, got {c:.6g}")
        if delta == 0:
            return ZetaResult(target, 0.0, "mellin", meta)
        fam = _Family("odd_mod", g, 0.0, delta)

        def node(t):
            vals, terr, last = _family_node(fam, t, cfg)
            pref = 2.0 * math.exp(-c * t) / (1.0 + math.exp(-t))
            return pref * vals, pref * terr, last

        rest, err, qmeta = _integrate(node, s, s.real, 1.0, c - delta, delta**3, quad)
        meta.update(qmeta)
        meta["remainder"] = [rest.real, rest.imag]
        return ZetaResult(target + rest, err, "mellin", meta)
    if route != "eigen":
        raise DomainError(f"unknown route {route!r}")
    if s.imag:
        raise DomainError("the eigen route of the modified difference needs real s")
    value, err = _modified_eigen(params, s.real, tau, j_cut)
    meta.update({"j_cut": j_cut, "cancellation_factor": math.exp(2.0 * g * g)})
    # the levels carry e^{2 g^2}-sized pieces that cancel in the difference
    err += 1e-15 * math.exp(2.0 * g * g) * abs(value) * j_cut
    return ZetaResult(complex(value), err, "eigen_sum", meta)


def modified_mellin_report(delta: float, s, g_grid, N: int | None = None,
                           cfg: SeriesConfig | None = None, quad: QuadSettings | None = None) -> dict:
    """Modified Mellin differences along a ``g`` grid with ``tau = g^2 + N``.

    Distances are reported both to ``2 Delta s L_chi(s+1, N)`` (the exact
    ``lambda = 0`` part) and to ``2 Delta L_chi(s-1, N)``.
    """
    s = complex(s)
    N = default_N(ModelParams(0.0, delta, 0.0)) if N is None else int(N)
    target = modified_mellin_target(delta, s, N)
    literal = 2.0 * delta * complex(dirichlet_L_mod2(s - 1.0, N))
    values, errs = [], []
    for g in g_grid:
        res = modified_mellin_difference(ModelParams(g, delta, 0.0), s, g * g + N, "series", cfg, quad)
        values.append(res.value)
        errs.append(res.err_bracket)
    d = [abs(v - target) for v in values]
    d_lit = [abs(v - literal) for v in values]
    return {
        "target": [target.real, target.imag],
        "target_literal": [literal.real, literal.imag],
        "grid": [float(g) for g in g_grid],
        "values": [[v.real, v.imag] for v in values],
        "err_brackets": errs,
        "distances": d,
        "distances_literal": d_lit,
        "pass": bool(all(b < a for a, b in zip(d, d[1:]))),
    }
