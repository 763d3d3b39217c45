"""Spectral zeta functions: eigenvalue sums, Mellin route, limits and Rabi-Bernoulli values."""

from .eigen import ZetaResult, default_N, jc_zeta, ladder_tail, parity_zeta_eigen, spectral_zeta_eigen
from .limits import (
    LimitReport,
    jc_limit_report,
    limit_delta0_target,
    limit_g0_target,
    limit_ginf_target,
    parity_g0_target,
    parity_limit_report,
    parity_zeta,
    relative,
    spectral_zeta,
    zeta_limit_delta0,
    zeta_limit_g0,
    zeta_limit_g_inf,
)
from .mellin import (
    QuadSettings,
    modified_mellin_difference,
    modified_mellin_report,
    modified_mellin_target,
    parity_zeta_mellin,
    spectral_zeta_mellin,
)
from .multizeta import multizeta_expansion_check, shell_zeta
from .rabi_bernoulli import (
    omega_coefficients,
    omega_exact,
    rb_polynomial,
    rb_polynomial_exact,
    rb_table,
    special_value,
)
