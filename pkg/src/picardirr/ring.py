"""Truncated graded commutative rings over the rationals.

A :class:`GradedRing` is ``Q[g_1, ..., g_m] / (monomials of degree > dim)``
with every generator in degree one.  Elements are immutable sparse maps from
exponent vectors to :class:`~fractions.Fraction` coefficients.  Top-degree
classes are turned into numbers by an :class:`EvaluationRule`, which plays the
role of the fundamental class of the ambient variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Callable, Iterable, Mapping

Exponent = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact, got {type(c).__name__}")


@dataclass(frozen=True)
class GradedRing:
    """Generator labels (all of degree 1) and the truncation degree."""

    names: tuple[str, ...]
    dim: int

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError(f"dim must be a non-negative integer, got {self.dim!r}")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def gen(self, name: str | int) -> "RingElement":
        i = self.names.index(name) if isinstance(name, str) else name
        exp = tuple(1 if j == i else 0 for j in range(self.ngens))
        return RingElement(self, {exp: Fraction(1)})

    def gens(self) -> tuple["RingElement", ...]:
        return tuple(self.gen(i) for i in range(self.ngens))

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.scalar(1)

    def scalar(self, c) -> "RingElement":
        return RingElement(self, {(0,) * self.ngens: _as_fraction(c)})

    def monomials(self, degree: int | None = None) -> list[Exponent]:
        """Exponent vectors of the given degree (or all degrees <= dim), lex-descending."""
        degrees = range(self.dim + 1) if degree is None else [degree]
        out = []
        for d in degrees:
            if d < 0 or d > self.dim:
                continue
            for combo in combinations_with_replacement(range(self.ngens), d):
                exp = [0] * self.ngens
                for i in combo:
                    exp[i] += 1
                out.append(tuple(exp))
        return sorted(set(out), reverse=True)

    def __repr__(self):
        return f"GradedRing({list(self.names)}, dim={self.dim})"


def ring_new(names: Iterable[str], dim: int) -> GradedRing:
    return GradedRing(tuple(names), dim)


class RingElement:
    """Immutable element of a :class:`GradedRing` in canonical sparse form."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[Exponent, object] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != ring.ngens or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {ring}")
            if sum(exp) > ring.dim:
                continue
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.ring = ring
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    @classmethod
    def _trusted(cls, ring: GradedRing, terms: dict[Exponent, Fraction]) -> "RingElement":
        # terms already hold valid exponents and Fractions; only zeros are dropped
        self = object.__new__(cls)
        self.ring = ring
        self._terms = dict(sorted(((e, c) for e, c in terms.items() if c), reverse=True))
        self._hash = None
        return self

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.ring.ngens)

    def is_zero(self) -> bool:
        return not self._terms

    def component(self, degree: int) -> "RingElement":
        """Homogeneous part of the given degree."""
        return RingElement._trusted(self.ring, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self._terms)

    def _check(self, other: "RingElement") -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            self._check(other)
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return RingElement._trusted(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._trusted(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            return self.scale(other)
        self._check(other)
        dim = self.ring.dim
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) > dim:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return RingElement._trusted(self.ring, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / _as_fraction(c))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "RingElement":
        c = _as_fraction(c)
        return RingElement._trusted(self.ring, {e: c * v for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"RingElement({to_text(self)!r})"


def ring_sum(ring: GradedRing, elements: Iterable[RingElement]) -> RingElement:
    """Sum many elements without rebuilding intermediate results."""
    terms: dict[Exponent, Fraction] = {}
    for a in elements:
        if a.ring != ring:
            raise ValueError(f"ring mismatch: {a.ring} vs {ring}")
        for e, c in a._terms.items():
            terms[e] = terms.get(e, 0) + c
    return RingElement._trusted(ring, terms)


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def scale(a: RingElement, c) -> RingElement:
    return a.scale(c)


def exp_class(ell: RingElement) -> RingElement:
    """``sum_i ell^i / i!`` up to the truncation degree; ``ell`` must be nilpotent."""
    if ell.constant_term():
        raise ValueError("exp_class needs an element with zero constant term")
    total = ell.ring.one()
    power = ell.ring.one()
    for i in range(1, ell.ring.dim + 1):
        power = power * ell
        if power.is_zero():
            break
        total = total + power.scale(Fraction(1, factorial(i)))
    return total


def _monomial_text(ring: GradedRing, exp: Exponent) -> str:
    parts = []
    for name, e in zip(ring.names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(a: RingElement) -> str:
    """Canonical form ``c*x^a*t^b + ...``, monomials in descending lex order."""
    if a.is_zero():
        return "0"
    pieces = []
    for exp, c in a.items():
        mono = _monomial_text(a.ring, exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces)


class EvaluationRule:
    """Linear functional on top-degree monomials.

    ``values`` is either a mapping from every exponent vector of degree
    ``ring.dim`` to a rational, or a callable computing that value.  A table
    is always materialized so that the rule is total on top degree and
    nothing else.
    """

    def __init__(self, ring: GradedRing, values: Mapping[Exponent, object] | Callable[[Exponent], object], name: str = ""):
        top = ring.monomials(ring.dim)
        if callable(values):
            table = {e: _as_fraction(values(e)) for e in top}
        else:
            table = {tuple(e): _as_fraction(v) for e, v in values.items()}
            missing = set(top) - set(table)
            extra = set(table) - set(top)
            if missing or extra:
                raise ValueError(f"rule must cover exactly the top-degree monomials (missing {sorted(missing)}, extra {sorted(extra)})")
        self.ring = ring
        self.name = name
        self._table = table

    def __call__(self, exp: Exponent) -> Fraction:
        return self._table[tuple(exp)]

    @property
    def table(self) -> dict[Exponent, Fraction]:
        return dict(self._table)

    def __repr__(self):
        return f"EvaluationRule({self.name or 'anonymous'}, {self.ring})"


def integrate(a: RingElement, rule: EvaluationRule) -> Fraction:
    """Pair ``a`` against the fundamental class; terms below top degree contribute 0."""
    if a.ring != rule.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {rule.ring}")
    dim = a.ring.dim
    return sum((c * rule(e) for e, c in a.items() if sum(e) == dim), Fraction(0))


def integrate_terms(a: RingElement, rule: EvaluationRule) -> dict[Exponent, Fraction]:
    """Per-monomial contributions to :func:`integrate` (zero contributions dropped)."""
    if a.ring != rule.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {rule.ring}")
    dim = a.ring.dim
    out = {}
    for e, c in a.items():
        if sum(e) == dim and c * rule(e):
            out[e] = c * rule(e)
    return out
