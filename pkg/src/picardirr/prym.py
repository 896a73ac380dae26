"""Top Chern class of the twisted Prym-Picard bundle.

The ring is generated by ``x`` and ``u`` (the pullback of the Prym
polarization ``xi``) in degree ``g - 1``, where ``g`` is the genus of the base
curve.  ``G`` has rank ``g - 1`` and ``c_i(G) = 2^i u^i / i!``; the twist by
``x`` is integrated against the pushforward rule
``x^k u^(g-1-k) -> 2^(k-1) (g-1)! / k!``.

At ``k = 0`` that formula gives ``(g-1)!/2``, whereas the self-intersection
of the polarization pulled back along a birational map is ``(g-1)!``.  The two
readings are the ``UNIFORM`` and ``GEOMETRIC_K0`` conventions; they differ by
``2^(g-2)`` in the total.  The map from the desingularization to the Prym
variety is read as ``pi o nu`` (desingularize first, then map down); only the
evaluation rule enters the computation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .chern import BundleClass, chern_from_character, top_chern, twist_chern
from .jacobian import _check_genus, fraction_dict
from .ring import EvaluationRule, GradedRing, integrate, integrate_terms


class PrymConvention(enum.Enum):
    UNIFORM = "uniform"
    GEOMETRIC_K0 = "geometric_k0"

    @classmethod
    def parse(cls, text: "str | PrymConvention") -> "PrymConvention":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_")
        aliases = {"geometrick0": "geometric_k0", "geometric": "geometric_k0"}
        return cls(aliases.get(key, key))


def prym_ring(g: int) -> GradedRing:
    return GradedRing(("x", "u"), g - 1)


def prym_picard_bundle(g: int) -> BundleClass:
    _check_genus(g)
    ring = prym_ring(g)
    u = ring.gen("u")
    c = ring.one()
    power = ring.one()
    for i in range(1, g):
        power = power * u
        c = c + power.scale(Fraction(2**i, factorial(i)))
    return BundleClass(g - 1, c, label="G")


def prym_picard_from_character(g: int) -> BundleClass:
    """Same bundle, built from ``ch(G) = (g-1) + 2u``."""
    _check_genus(g)
    ring = prym_ring(g)
    ch = ring.scalar(g - 1) + ring.gen("u").scale(2)
    return BundleClass(g - 1, chern_from_character(g - 1, ch), label="G")


def prym_rule(g: int, conv: PrymConvention = PrymConvention.UNIFORM) -> EvaluationRule:
    _check_genus(g)
    conv = PrymConvention.parse(conv)

    def value(exp):
        k = exp[0]
        if k == 0 and conv is PrymConvention.GEOMETRIC_K0:
            return factorial(g - 1)
        return Fraction(2**k, 2) * Fraction(factorial(g - 1), factorial(k))

    return EvaluationRule(prym_ring(g), value, name=f"prym(g={g}, {conv.value})")


@dataclass(frozen=True)
class PrymBoundReport:
    g: int
    convention: PrymConvention
    top_chern_value: Fraction
    paper_claim: int
    agrees_with_paper: bool
    terms: tuple[Fraction, ...] = ()

    @property
    def k0_convention(self) -> str:
        return self.convention.value

    def violations(self) -> list[str]:
        expected = self.paper_claim
        if self.convention is PrymConvention.GEOMETRIC_K0:
            expected += 2 ** (self.g - 2)
        if self.top_chern_value != expected:
            return [f"c_(g-1)(G~) == {expected} under {self.k0_convention} (got {self.top_chern_value})"]
        return []

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "k0_convention": self.k0_convention,
            "top_chern": fraction_dict(self.top_chern_value),
            "paper_claim": self.paper_claim,
            "agrees_with_paper": self.agrees_with_paper,
        }


def twisted_prym_picard_bundle(g: int) -> BundleClass:
    G = prym_picard_bundle(g)
    return twist_chern(G, G.ring.gen("x"))


def prym_bound(g: int, conv: PrymConvention = PrymConvention.UNIFORM) -> PrymBoundReport:
    conv = PrymConvention.parse(conv)
    top = top_chern(twisted_prym_picard_bundle(g))
    rule = prym_rule(g, conv)
    value = integrate(top, rule)
    contrib = integrate_terms(top, rule)
    terms = tuple(contrib.get((k, g - 1 - k), Fraction(0)) for k in range(g))
    claim = 2 ** (2 * g - 3)
    return PrymBoundReport(g, conv, value, claim, value == claim, terms)
