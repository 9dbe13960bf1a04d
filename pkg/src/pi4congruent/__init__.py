"""Deciding and certifying pi/4- and 3pi/4-congruent numbers."""

from .arith import DomainError
from .classify import Outcome, Verdict, classify, root_number, waldspurger_coefficient
from .curve import Angle, Triangle, TwistCurve

__all__ = [
    "Angle",
    "DomainError",
    "Outcome",
    "Triangle",
    "TwistCurve",
    "Verdict",
    "classify",
    "root_number",
    "waldspurger_coefficient",
]
