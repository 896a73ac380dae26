"""Chern class calculus for vector-bundle classes in a truncated graded ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

from .ring import EvaluationRule, RingElement, integrate, ring_sum


def gbinom(m: int, j: int) -> Fraction:
    """Generalized binomial ``m (m-1) ... (m-j+1) / j!``; valid for negative ``m``."""
    if j < 0:
        return Fraction(0)
    num = 1
    for i in range(j):
        num *= m - i
    return Fraction(num, factorial(j))


def _homogeneous_parts(a: RingElement) -> list[RingElement]:
    return [a.component(k) for k in range(a.ring.dim + 1)]


def chern_from_character(rank: int, ch: RingElement) -> RingElement:
    """Total Chern class from a Chern character via Newton's identities.

    Power sums are ``p_k = k! ch_k`` and ``k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i``.
    """
    if ch.constant_term() != rank:
        raise ValueError(f"Chern character has constant term {ch.constant_term()}, expected rank {rank}")
    ring = ch.ring
    chk = _homogeneous_parts(ch)
    p = [None] + [chk[k].scale(factorial(k)) for k in range(1, ring.dim + 1)]
    e = [ring.one()]
    for k in range(1, ring.dim + 1):
        acc = ring_sum(ring, ((e[k - i] * p[i]).scale(1 if i % 2 else -1) for i in range(1, k + 1)))
        e.append(acc.scale(Fraction(1, k)))
    return ring_sum(ring, e)


def character_from_chern(rank: int, c: RingElement) -> RingElement:
    """Inverse of :func:`chern_from_character`."""
    if c.constant_term() != 1:
        raise ValueError(f"total Chern class has constant term {c.constant_term()}, expected 1")
    ring = c.ring
    e = _homogeneous_parts(c)
    p = [None]
    for k in range(1, ring.dim + 1):
        pieces = [(e[i] * p[k - i]).scale(1 if i % 2 else -1) for i in range(1, k)]
        pieces.append(e[k].scale(k if k % 2 else -k))
        p.append(ring_sum(ring, pieces))
    return ring_sum(ring, [ring.scalar(rank)] + [p[k].scale(Fraction(1, factorial(k))) for k in range(1, ring.dim + 1)])


@dataclass(frozen=True)
class BundleClass:
    """Rank plus total Chern class; the Chern character is derived on demand."""

    rank: int
    chern: RingElement
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if self.chern.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")

    @classmethod
    def from_character(cls, rank: int, ch: RingElement, label: str = "") -> "BundleClass":
        bundle = cls(rank, chern_from_character(rank, ch), label)
        # the two conversions are mutually inverse; keep the exact input
        bundle.__dict__["character"] = ch
        return bundle

    @classmethod
    def trivial(cls, ring, rank: int) -> "BundleClass":
        return cls(rank, ring.one(), "trivial")

    @property
    def ring(self):
        return self.chern.ring

    @cached_property
    def character(self) -> RingElement:
        return character_from_chern(self.rank, self.chern)

    def c(self, k: int) -> RingElement:
        return self.chern.component(k)


def twist_chern(E: BundleClass, ell: RingElement) -> BundleClass:
    """Chern class of ``E (x) L`` where ``c_1(L) = ell``.

    ``c_k(E(x)L) = sum_i binom(rank - i, k - i) c_i(E) ell^(k-i)``.
    """
    if ell.ring != E.ring:
        raise ValueError("twisting class lives in a different ring")
    if not ell.is_homogeneous(1):
        raise ValueError("twisting class must be homogeneous of degree 1")
    ring = E.ring
    ell_pows = [ring.one()]
    for _ in range(ring.dim):
        ell_pows.append(ell_pows[-1] * ell)
    parts = _homogeneous_parts(E.chern)
    pieces = []
    for k in range(ring.dim + 1):
        for i in range(k + 1):
            if parts[i].is_zero():
                continue
            coeff = gbinom(E.rank - i, k - i)
            if coeff:
                pieces.append((parts[i] * ell_pows[k - i]).scale(coeff))
    return BundleClass(E.rank, ring_sum(ring, pieces), E.label)


def top_chern(E: BundleClass) -> RingElement:
    if E.rank > E.ring.dim:
        raise ValueError(f"rank {E.rank} exceeds ring dimension {E.ring.dim}")
    return E.c(E.rank)


def euler_characteristic(E: BundleClass, rule: EvaluationRule) -> Fraction:
    """Riemann-Roch on an abelian variety (trivial Todd class): integrate ``ch``."""
    return integrate(E.character.component(E.ring.dim), rule)


def tensor_character(E: BundleClass, ch_line: RingElement) -> RingElement:
    """Chern character of ``E`` tensored by a class with character ``ch_line``."""
    return E.character * ch_line
