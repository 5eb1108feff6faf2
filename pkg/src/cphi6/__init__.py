"""Verification toolkit for 3-adic congruences of 6-colored generalized
Frobenius partitions: q-series arithmetic, eta-quotient expansion, the
U_A / U_B tower and its fundamental arrays."""

from .etaq import EtaQuotient, PochProduct, expand_eta, expand_poch, named_generator
from .frob6 import cphi6_enumerate, cphi6_oracle_andrews, cphi6_series, lambda_alpha
from .report import Report
from .series import EXACT, CoeffRing, Series, u_operator, val3
from .tpoly import TPoly

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "CoeffRing",
    "EtaQuotient",
    "PochProduct",
    "Report",
    "Series",
    "TPoly",
    "cphi6_enumerate",
    "cphi6_oracle_andrews",
    "cphi6_series",
    "expand_eta",
    "expand_poch",
    "lambda_alpha",
    "named_generator",
    "u_operator",
    "val3",
]
