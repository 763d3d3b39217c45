"""Fock-space truncations of the asymmetric Rabi Hamiltonian.

The full Hamiltonian ``a^dag a + Delta sigma_z + g (a + a^dag) sigma_x + eps sigma_x``
is written in the basis ``|n> (x) |+/->_x`` of sigma_x eigenstates, interleaved
as index ``2n + s``.  In that ordering the matrix is banded with two
off-diagonals: ``Delta`` couples ``(n,+)`` to ``(n,-)`` and the displacement
term hops ``n -> n+1`` inside each block with sign ``+g`` or ``-g``.

At ``eps = 0`` the parity operator splits the Hamiltonian into the two
tridiagonal matrices ``a^dag a + g (a + a^dag) +/- Delta (-1)^n``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from .errors import ConvergenceError, DomainError

__all__ = [
    "ModelParams",
    "Spectrum",
    "CurveTable",
    "build_aqrm",
    "aqrm_bands",
    "build_parity",
    "sym_eigen",
    "spectrum",
    "parity_spectrum",
    "curve_table",
    "crossing_count",
    "cluster_sizes",
    "partition_diag",
]

MAX_DOUBLINGS = 6
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``g``, splitting ``delta`` and bias ``eps``; the mode frequency is 1."""

    g: float
    delta: float
    eps: float = 0.0

    def __post_init__(self):
        for name in ("g", "delta", "eps"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
        if self.g < 0:
            raise DomainError(f"g must be >= 0, got {self.g}")

    @property
    def omega(self) -> float:
        return 1.0

    def replace(self, **kw) -> "ModelParams":
        d = {"g": self.g, "delta": self.delta, "eps": self.eps}
        d.update(kw)
        return ModelParams(**d)


@dataclass
class Spectrum:
    """Lowest eigenvalues of a truncated Hamiltonian.

    Attributes
    ----------
    eigenvalues : ndarray
        Ascending, unshifted eigenvalues; all of them are converged.
    truncation_dim : int
        Final Fock cutoff ``M``.
    converged_count : int
        Number of levels that were stable under the last doubling of ``M``.
    tol : float
        Requested stability tolerance.
    changes : list of float
        Max level change observed at each doubling, in order.
    """

    eigenvalues: np.ndarray
    truncation_dim: int
    converged_count: int
    tol: float
    changes: list = field(default_factory=list)

    def __len__(self):
        return len(self.eigenvalues)


def aqrm_bands(params: ModelParams, M: int) -> np.ndarray:
    """Lower band storage (3 rows) of the interleaved AQRM matrix."""
    if M < 1:
        raise DomainError(f"Fock cutoff must be >= 1, got M={M}")
    n = np.arange(M + 1, dtype=float)
    size = 2 * (M + 1)
    bands = np.zeros((3, size))
    bands[0, 0::2] = n + params.eps
    bands[0, 1::2] = n - params.eps
    bands[1, 0::2] = params.delta
    hop = params.g * np.sqrt(n[:-1] + 1.0)
    bands[2, 0:-2:2] = hop
    bands[2, 1:-2:2] = -hop
    return bands


def build_aqrm(params: ModelParams, M: int) -> np.ndarray:
    """Dense symmetric matrix of the AQRM truncated at ``n <= M``."""
    bands = aqrm_bands(params, M)
    size = bands.shape[1]
    A = np.diag(bands[0])
    for k in (1, 2):
        off = bands[k, : size - k]
        A += np.diag(off, -k) + np.diag(off, k)
    return A


def _parity_diagonals(params: ModelParams, sign: int, M: int):
    if params.eps != 0:
        raise DomainError("parity decomposition needs eps = 0")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if M < 1:
        raise DomainError(f"Fock cutoff must be >= 1, got M={M}")
    n = np.arange(M + 1, dtype=float)
    d = n + sign * params.delta * (-1.0) ** n
    e = params.g * np.sqrt(n[1:])
    return d, e


def build_parity(params: ModelParams, sign: int, M: int) -> np.ndarray:
    """Tridiagonal parity Hamiltonian ``a^dag a + g(a + a^dag) + sign*Delta*(-1)^n``."""
    d, e = _parity_diagonals(params, sign, M)
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


def sym_eigen(A, vectors: bool = False):
    """Eigen-decomposition of a real symmetric matrix, ascending.

    Raises :class:`DomainError` for non-symmetric input and
    :class:`ConvergenceError` if LAPACK reports failure.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    scale = max(np.abs(A).max(initial=0.0), 1e-300)
    if np.abs(A - A.T).max(initial=0.0) > 1e-12 * scale:
        raise DomainError("matrix is not symmetric")
    try:
        if vectors:
            w, v = np.linalg.eigh(A)
            return w, v
        return np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver failed: {exc}", iterations=None) from exc


def _lowest_aqrm(params, M, j):
    bands = aqrm_bands(params, M)
    j = min(j, bands.shape[1])
    try:
        return sla.eig_banded(bands, lower=True, eigvals_only=True,
                              select="i", select_range=(0, j - 1))
    except sla.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


def _lowest_parity(params, sign, M, j):
    d, e = _parity_diagonals(params, sign, M)
    j = min(j, d.size)
    try:
        return sla.eigh_tridiagonal(d, e, eigvals_only=True,
                                    select="i", select_range=(0, j - 1))
    except sla.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


def default_cutoff(g: float, j_max: int) -> int:
    return max(64, 4 * j_max + math.ceil(16 * g * g))


def _converge(solve, j_max, tol, M0, max_doublings):
    if j_max < 1:
        raise DomainError("j_max must be >= 1")
    if not tol > 0:
        raise DomainError("tol must be positive")
    # every truncation must hold at least j_max levels
    M = max(int(M0), j_max)
    prev = solve(M)
    changes = []
    for it in range(1, max_doublings + 1):
        M *= 2
        cur = solve(M)
        change = float(np.max(np.abs(cur - prev)))
        changes.append(change)
        prev = cur
        if change < tol:
            return cur, M, changes
    raise ConvergenceError(
        f"lowest {j_max} levels not stable to {tol:g} after {max_doublings} doublings "
        f"(last change {changes[-1]:.3g} at M={M})",
        iterations=max_doublings,
    )


def spectrum(params: ModelParams, j_max: int, tol: float = 1e-9, M0: int | None = None,
             max_doublings: int = MAX_DOUBLINGS) -> Spectrum:
    """Lowest ``j_max`` eigenvalues of the AQRM, converged under cutoff doubling.

    Starts from ``M = max(64, 4 j_max + ceil(16 g^2))`` unless ``M0`` is given,
    and doubles until the largest change over the tracked levels is below ``tol``.
    """
    M0 = default_cutoff(params.g, j_max) if M0 is None else int(M0)
    ev, M, changes = _converge(lambda m: _lowest_aqrm(params, m, j_max),
                               j_max, tol, M0, max_doublings)
    return Spectrum(ev, M, len(ev), tol, changes)


def parity_spectrum(params: ModelParams, sign: int, j_max: int, tol: float = 1e-9,
                    M0: int | None = None, max_doublings: int = MAX_DOUBLINGS) -> Spectrum:
    """Lowest ``j_max`` eigenvalues of the parity Hamiltonian with the given sign."""
    M0 = default_cutoff(params.g, j_max) if M0 is None else int(M0)
    ev, M, changes = _converge(lambda m: _lowest_parity(params, sign, m, j_max),
                               j_max, tol, M0, max_doublings)
    return Spectrum(ev, M, len(ev), tol, changes)


def partition_diag(params: ModelParams, beta: float, sign: int | None = None,
                   rel_tol: float = 1e-12) -> float:
    """``sum_j exp(-beta lambda_j)`` over a truncated spectrum (full or parity block).

    Enough levels are kept that the dropped Boltzmann weights fall below
    ``rel_tol`` relative to the ground-state term.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    per_n = 1 if sign is not None else 2
    gap = -math.log(rel_tol) / beta + 4.0 * (abs(params.delta) + abs(params.eps)) + 2.0
    j = per_n * (math.ceil(gap) + 1)
    if sign is None:
        ev = spectrum(params, j, 1e-10).eigenvalues
    else:
        ev = parity_spectrum(params, sign, j, 1e-10).eigenvalues
    w = np.exp(-beta * (ev - ev[0]))
    return float(math.exp(-beta * ev[0]) * math.fsum(w))


def cluster_sizes(eigenvalues, tol: float = CLUSTER_TOL) -> list:
    """Sizes of runs of sorted eigenvalues whose neighbours lie within ``tol``."""
    ev = np.sort(np.asarray(eigenvalues, dtype=float))
    if ev.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(ev) > tol)
    edges = np.concatenate(([0], breaks + 1, [ev.size]))
    return np.diff(edges).tolist()


# ---------------------------------------------------------------------------
# spectral curves
# ---------------------------------------------------------------------------


@dataclass
class CurveTable:
    """Shifted levels ``lambda_j(g) + g^2`` on a grid of couplings."""

    g_grid: np.ndarray
    shifted_levels: np.ndarray
    eps: float
    delta: float

    def __post_init__(self):
        self.g_grid = np.asarray(self.g_grid, dtype=float)
        self.shifted_levels = np.asarray(self.shifted_levels, dtype=float)
        if self.shifted_levels.shape[0] != self.g_grid.size:
            raise DomainError("one row of levels per grid point is required")

    @property
    def n_levels(self) -> int:
        return self.shifted_levels.shape[1]

    def header(self):
        return ["g"] + [f"E{j}" for j in range(self.n_levels)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())
        for g, row in zip(self.g_grid, self.shifted_levels):
            w.writerow([repr(float(g))] + [repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, eps: float, delta: float) -> "CurveTable":
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float)
        data = data.reshape(len(rows) - 1, len(rows[0]))
        return cls(data[:, 0], data[:, 1:], eps, delta)

    def to_dict(self) -> dict:
        return {
            "g_grid": [float(x) for x in self.g_grid],
            "shifted_levels": [[float(v) for v in row] for row in self.shifted_levels],
            "eps": float(self.eps),
            "delta": float(self.delta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CurveTable":
        d = json.loads(text)
        levels = np.array(d["shifted_levels"], dtype=float).reshape(len(d["g_grid"]), -1)
        return cls(np.array(d["g_grid"]), levels, d["eps"], d["delta"])


def curve_table(params: ModelParams, g_grid, j_max: int, tol: float = 1e-9,
                workers: int | None = None) -> CurveTable:
    """Sweep ``g`` over ``g_grid`` (``params.g`` is ignored) and tabulate shifted levels.

    Levels are tracked by sorted index, so crossings show up as kinks.
    Grid points run in a thread pool when ``workers`` > 1; the output does not
    depend on scheduling because results are collected in grid order.
    """
    g_grid = np.asarray(g_grid, dtype=float)
    if g_grid.size == 0:
        raise DomainError("g_grid must be nonempty")
    if np.any(np.diff(g_grid) <= 0):
        raise DomainError("g_grid must be strictly ascending")

    def row(g):
        sp = spectrum(params.replace(g=float(g)), j_max, tol)
        return sp.eigenvalues + g * g

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, g_grid))
    else:
        rows = [row(g) for g in g_grid]
    return CurveTable(g_grid, np.vstack(rows), params.eps, params.delta)


def crossing_count(curve: CurveTable, j: int, baseline: float) -> int:
    """Number of sign changes of ``curve[:, j] - baseline`` along the grid."""
    diff = curve.shifted_levels[:, j] - baseline
    sgn = np.sign(diff)
    sgn = sgn[sgn != 0]
    return int(np.count_nonzero(sgn[1:] != sgn[:-1]))
