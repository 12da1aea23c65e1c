"""Exact continued-fraction, generating-function and zeta-function toolkit
for quadratic irrationals."""

from .cf import CFExpansion, convergents, e_matrix, expand, n0_n1
from .genfun import direct_series, generating_vector, radius_of_convergence
from .levy import LEVY_AE, levy_ae_montecarlo, levy_birkhoff, levy_empirical, levy_exact, levy_report
from .matrix import IntMatrix
from .parsing import ParseError, RationalInputError, parse_input
from .qfield import QuadraticNumber, QuadraticSurd, gauss_step, surd_new
from .ratfun import Poly, PowerSeries, RationalFunction, series_expand
from .torus import ToralAutomorphism, entropy, fix_count, from_quadratic, zeta, zeta_series
from .zetaid import det_v, det_v_formula, main_identity_check, w_direct, w_from_uvxy

__version__ = "0.1.0"

__all__ = [
    "CFExpansion",
    "IntMatrix",
    "LEVY_AE",
    "ParseError",
    "Poly",
    "PowerSeries",
    "QuadraticNumber",
    "QuadraticSurd",
    "RationalFunction",
    "RationalInputError",
    "ToralAutomorphism",
    "convergents",
    "det_v",
    "det_v_formula",
    "direct_series",
    "e_matrix",
    "entropy",
    "expand",
    "fix_count",
    "from_quadratic",
    "gauss_step",
    "generating_vector",
    "levy_ae_montecarlo",
    "levy_birkhoff",
    "levy_empirical",
    "levy_exact",
    "levy_report",
    "main_identity_check",
    "n0_n1",
    "parse_input",
    "radius_of_convergence",
    "series_expand",
    "surd_new",
    "w_direct",
    "w_from_uvxy",
    "zeta",
    "zeta_series",
]
