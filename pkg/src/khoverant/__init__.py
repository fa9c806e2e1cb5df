"""Integral Khovanov homology of link diagrams and checks of its extremal structure."""

from .classify import classify, signature, turaev1_flags
from .diagnostics import extremal_profile, obstruction_report
from .diagram import LinkDiagram, PDError, mirror, parse_pd
from .homology import KhTable, kh, unshifted_kh
from .legendrian import kh_tb_bound, legendrian_front, tb_interval
from .polynomials import LaurentPoly, jones

__version__ = "0.1.0"

__all__ = [
    "LinkDiagram", "PDError", "parse_pd", "mirror", "jones", "LaurentPoly", "kh",
    "unshifted_kh", "KhTable", "classify", "signature", "turaev1_flags", "extremal_profile",
    "obstruction_report", "kh_tb_bound", "tb_interval", "legendrian_front",
]
