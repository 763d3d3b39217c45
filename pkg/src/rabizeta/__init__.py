"""Spectral zeta functions of the asymmetric quantum Rabi model."""

from .errors import ConvergenceError, DomainError, IllConditionedWarning, PoleError, RabiZetaError
from .fock import ModelParams, Spectrum, spectrum
from .zeta import ZetaResult, default_N, parity_zeta, spectral_zeta

__version__ = "0.1.0"
