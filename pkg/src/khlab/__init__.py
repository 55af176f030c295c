"""Exact computation of bracket/Jones polynomials, Khovanov and Lee homology,
the Rasmussen invariant and the diagonal-unitary trace formulation, for knot
and link diagrams given as PD codes or braid words."""

__version__ = "0.1.0"

from .bracket import bracket_A, bracket_q, bracket_skein, jones
from .complex import BigradedComplex, GradingShift, build_complex, build_dr_complex, check_d_squared, dims
from .diagram import (
    BraidWord,
    KnotDiagram,
    apply_reidemeister,
    close_braid,
    connected_sum,
    mirror,
    parse_braid,
    parse_diagram,
    parse_pd,
    render_pd,
)
from .frobenius import KHOVANOV, LEE, FrobeniusAlgebraSpec
from .homology import HomologyTable, euler_check, homology, poincare
from .lee import RasmussenResult, lee_homology, rasmussen_s
from .linalg import smith_normal_form
from .polynomials import LaurentPoly, PoincarePoly

__all__ = [
    "__version__",
    "BigradedComplex",
    "BraidWord",
    "FrobeniusAlgebraSpec",
    "GradingShift",
    "HomologyTable",
    "KHOVANOV",
    "KnotDiagram",
    "LEE",
    "LaurentPoly",
    "PoincarePoly",
    "RasmussenResult",
    "apply_reidemeister",
    "bracket_A",
    "bracket_q",
    "bracket_skein",
    "build_complex",
    "build_dr_complex",
    "check_d_squared",
    "close_braid",
    "connected_sum",
    "dims",
    "euler_check",
    "homology",
    "jones",
    "lee_homology",
    "mirror",
    "parse_braid",
    "parse_diagram",
    "parse_pd",
    "poincare",
    "rasmussen_s",
    "render_pd",
    "smith_normal_form",
]
