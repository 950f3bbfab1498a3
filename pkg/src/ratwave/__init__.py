"""Rational approximations of Daubechies filter banks that stay exactly paraunitary."""

from .bank import (
    MomentReport,
    QuadraticReport,
    Signal,
    WaveletBank2,
    analyze,
    check_linear,
    check_quadratic,
    from_param,
    haar_bank,
    moments,
    synthesize,
    to_param,
)
from .daubechies import DaubechiesSpec, generate
from .laurent import LaurentPoly, neg_part, series_inverse_trunc, tilde
from .params import (
    CorrectionMatrix,
    HankelSystem,
    ParamPair,
    PhiParam,
    build_theta,
    coprod,
    correct_to_canonical,
    pair_roundtrip_check,
    prod,
    roundtrip_check,
    solve_system,
)
from .rationalize import ApproxStrategy, RationalizationResult, approximate_phi, best_rational, rationalize_bank, screen
from .scalars import FLOAT, RATIONAL

__version__ = "0.1.0"
