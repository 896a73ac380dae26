"""Top Chern class of the twisted Picard bundle on the g-th symmetric product.

The ring is generated by ``x`` (the divisor ``p0 + C^(g-1)``) and ``t`` (the
pulled-back theta class), truncated in degree ``g``.  The Picard bundle has
``c(F) = exp(t)`` and ``F~ = F (x) O(x)``; its top Chern class integrates to
``2^g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .chern import BundleClass, character_from_chern, euler_characteristic, top_chern, twist_chern
from .ring import EvaluationRule, GradedRing, exp_class, integrate, integrate_terms

GENUS_CAP = 64


class InconsistentReport(ArithmeticError):
    """A computed quantity violates an identity it is required to satisfy."""


def _check_genus(g: int, cap: int | None = None) -> None:
    if not isinstance(g, int) or g < 2:
        raise ValueError(f"genus must be an integer >= 2, got {g!r}")
    if cap is not None and g > cap:
        raise ValueError(f"genus {g} exceeds the configured cap {cap}")


def symmetric_product_ring(g: int) -> GradedRing:
    return GradedRing(("x", "t"), g)


def jacobian_rule(g: int) -> EvaluationRule:
    """``x^a t^(g-a) -> g!/a!`` on the g-th symmetric product."""
    _check_genus(g)
    ring = symmetric_product_ring(g)
    return EvaluationRule(ring, lambda e: Fraction(factorial(g), factorial(e[0])), name=f"jacobian(g={g})")


def theta_rule(g: int) -> EvaluationRule:
    """Fundamental class of the Jacobian itself: ``t^g -> g!``."""
    _check_genus(g)
    ring = GradedRing(("t",), g)
    return EvaluationRule(ring, {(g,): factorial(g)}, name=f"theta(g={g})")


def picard_bundle(g: int, ring: GradedRing | None = None) -> BundleClass:
    """Rank ``g``, ``c_i = t^i / i!``."""
    _check_genus(g)
    ring = ring or symmetric_product_ring(g)
    t = ring.gen("t")
    return BundleClass(g, exp_class(t), label="F")


def twisted_picard_bundle(g: int) -> BundleClass:
    F = picard_bundle(g)
    Ft = twist_chern(F, F.ring.gen("x"))
    return BundleClass(Ft.rank, Ft.chern, label="F~")


def top_chern_terms(g: int, cg=None) -> list[Fraction]:
    """Integrated contribution of ``x^k t^(g-k)`` for ``k = 0..g``."""
    if cg is None:
        cg = top_chern(twisted_picard_bundle(g))
    contrib = integrate_terms(cg, jacobian_rule(g))
    return [contrib.get((k, g - k), Fraction(0)) for k in range(g + 1)]


def chi_F(g: int) -> Fraction:
    ring = theta_rule(g).ring
    return euler_characteristic(picard_bundle(g, ring), theta_rule(g))


def chi_F_theta(g: int) -> Fraction:
    """Euler characteristic of ``F(Theta)``, via ``ch(F) * exp(theta)``."""
    rule = theta_rule(g)
    ring = rule.ring
    F = picard_bundle(g, ring)
    ch = character_from_chern(g, F.chern) * exp_class(ring.gen("t"))
    return euler_characteristic(BundleClass.from_character(g, ch, label="F(Theta)"), rule)


def cohomology_row(g: int) -> list[int]:
    """``h^i(JC, F (x) P_alpha) = binom(g-1, i)`` for ``alpha`` on the curve."""
    _check_genus(g)
    return [comb(g - 1, i) for i in range(g)]


@dataclass(frozen=True)
class JacobianBoundReport:
    g: int
    top_chern_value: Fraction
    bound: int
    h0_FTheta: int
    chi_F: Fraction
    cohomology_row: list[int]
    det2_rank_lower: int
    maxrank_codims: list[tuple[int, int]]
    embedding_degree: int
    embedding_h0: int
    terms: list[Fraction] = field(default_factory=list, compare=False)

    def violations(self) -> list[str]:
        """Names of the identities this report fails (empty when consistent)."""
        g = self.g
        bad = []
        if self.bound != 2**g:
            bad.append(f"bound == 2^g (got {self.bound})")
        if self.h0_FTheta != 2 * g:
            bad.append(f"h0(F(Theta)) == 2g (got {self.h0_FTheta})")
        if self.chi_F != 0:
            bad.append(f"chi(F) == 0 (got {self.chi_F})")
        alt = sum((-1) ** i * h for i, h in enumerate(self.cohomology_row))
        if alt != self.chi_F:
            bad.append(f"alternating cohomology sum == chi(F) (got {alt})")
        if self.cohomology_row != [comb(g - 1, i) for i in range(g)]:
            bad.append("cohomology row == binom(g-1, i)")
        if self.det2_rank_lower != g * g + 1:
            bad.append(f"det2 rank lower bound == g^2+1 (got {self.det2_rank_lower})")
        if self.embedding_degree != 3 * g - 1:
            bad.append("embedding degree == 3g-1")
        if self.embedding_h0 != 2 * g:
            bad.append("embedding h0 == 2g")
        return bad

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "bound": self.bound,
            "top_chern": fraction_dict(self.top_chern_value),
            "h0_FTheta": self.h0_FTheta,
            "chi_F": fraction_dict(self.chi_F),
            "cohomology_row": list(self.cohomology_row),
            "det2_rank_lower": self.det2_rank_lower,
            "maxrank_codims": [list(p) for p in self.maxrank_codims],
            "embedding_degree": self.embedding_degree,
            "embedding_h0": self.embedding_h0,
        }


def fraction_dict(q: Fraction) -> dict[str, str]:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def jacobian_bound(g: int, cap: int = GENUS_CAP) -> JacobianBoundReport:
    _check_genus(g, cap)
    cg = top_chern(twisted_picard_bundle(g))
    value = integrate(cg, jacobian_rule(g))
    if value.denominator != 1:
        raise InconsistentReport(f"c_g(F~) = {value} is not an integer for g={g}")
    chi_twisted = chi_F_theta(g)
    if chi_twisted.denominator != 1:
        raise InconsistentReport(f"chi(F(Theta)) = {chi_twisted} is not an integer for g={g}")
    h0 = int(chi_twisted)
    embedding_degree = 3 * g - 1
    return JacobianBoundReport(
        g=g,
        top_chern_value=value,
        bound=int(value),
        h0_FTheta=h0,
        chi_F=chi_F(g),
        cohomology_row=cohomology_row(g),
        # dim Gr(g, H^0(F~)) + 1
        det2_rank_lower=g * (h0 - g) + 1,
        maxrank_codims=[(k, 1 + k - g) for k in range(g, 2 * g + 1)],
        embedding_degree=embedding_degree,
        # Riemann-Roch on the curve, degree above 2g-2
        embedding_h0=embedding_degree - g + 1,
        terms=top_chern_terms(g, cg),
    )
