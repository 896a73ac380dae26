"""Exact Chern-class bounds for degrees of irrationality, with independent checks.

Modules: ``ring`` (truncated graded rings), ``chern`` (Chern class calculus),
``jacobian`` and ``prym`` (the two bounds), ``poly`` (exact polynomials and
resultants), ``secant`` (chord counts on genus-2 curves), ``playground``
(split bundles over prime fields) and ``cli``.
"""

from .chern import BundleClass, chern_from_character, character_from_chern, twist_chern
from .jacobian import JacobianBoundReport, jacobian_bound
from .prym import PrymBoundReport, PrymConvention, prym_bound
from .ring import EvaluationRule, GradedRing, RingElement, integrate

__version__ = "0.1.0"

__all__ = [
    "BundleClass",
    "EvaluationRule",
    "GradedRing",
    "JacobianBoundReport",
    "PrymBoundReport",
    "PrymConvention",
    "RingElement",
    "character_from_chern",
    "chern_from_character",
    "integrate",
    "jacobian_bound",
    "prym_bound",
    "twist_chern",
]
