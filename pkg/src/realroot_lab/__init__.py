"""Exact coefficient operators on real-rooted polynomials, Sturm certificates
and certified series enclosures."""

__version__ = "0.1.0"

from .exactpoly import Poly, RootVerdict, ZeroKind, classify_zeros, count_real_roots, squarefree_part
from .series import Enclosure, SeriesGen, TailCertificate, TailNotCertified
from .transforms import AlphaSeq, f_d, j_op, malo_schur_compose, s_r, s_tilde_r, u_alpha, v_alpha

__all__ = [
    "AlphaSeq",
    "Enclosure",
    "Poly",
    "RootVerdict",
    "SeriesGen",
    "TailCertificate",
    "TailNotCertified",
    "ZeroKind",
    "classify_zeros",
    "count_real_roots",
    "f_d",
    "j_op",
    "malo_schur_compose",
    "s_r",
    "s_tilde_r",
    "squarefree_part",
    "u_alpha",
    "v_alpha",
]
