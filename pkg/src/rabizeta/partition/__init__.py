"""Partition-function series, simplex integrals, the lambda=0 heat kernel and J_lambda."""

from .kernels import (
    Xi_odd,
    psi_minus,
    psi_plus,
    theta_even,
    theta_exponent,
    xi,
    xi_odd_exponent,
    xi_psi_plus_bound_check,
)
from .series import SeriesResult, partition_full, partition_parity
from .simplex import SeriesConfig, simplex_integrate, simplex_rule
