"""Complete elliptic integrals, sharp logarithmic bounds and their verification."""

from .elliptic import Modulus, agm, ellip_e, ellip_k, grotzsch_mu, mu_inverse
from .errors import ConvergenceError, DomainError, IndeterminateSign, PatternViolation
from .hypergeom import HypParams, gauss_2f1, gauss_2f1_derivative
from .precision import DOUBLE, EXTENDED, LADDER, RealContext, get_context

__version__ = "0.1.0"

__all__ = [
    "Modulus",
    "agm",
    "ellip_e",
    "ellip_k",
    "grotzsch_mu",
    "mu_inverse",
    "ConvergenceError",
    "DomainError",
    "IndeterminateSign",
    "PatternViolation",
    "HypParams",
    "gauss_2f1",
    "gauss_2f1_derivative",
    "DOUBLE",
    "EXTENDED",
    "LADDER",
    "RealContext",
    "get_context",
]
