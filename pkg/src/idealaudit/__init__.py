"""Exact invariants of m-primary ideals in local rings and an audit of the
inequalities that relate them."""

from .groebner import NotMPrimary, RingPresentation
from .invariants import IdealHandle, invariant_bundle, loewy_length, mu, ord
from .monomial import MonomialIdeal, integral_closure, normalized_volume
from .multiplicity import Unstabilized, multiplicity
from .polyarith import GF, QQ, PolyRing, Polynomial
from .session import parse_session

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "IdealHandle",
    "MonomialIdeal",
    "NotMPrimary",
    "PolyRing",
    "Polynomial",
    "RingPresentation",
    "Unstabilized",
    "integral_closure",
    "invariant_bundle",
    "loewy_length",
    "mu",
    "multiplicity",
    "normalized_volume",
    "ord",
    "parse_session",
]
