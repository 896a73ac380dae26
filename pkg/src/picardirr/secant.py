"""Chord counting for a genus-2 curve embedded in P^3.

The curve ``y^2 = f(x)`` with ``deg f = 2g + 1`` is embedded by the
Riemann-Roch space of ``(3g - 1) p0`` (``p0`` the point at infinity).  For
``g = 2`` the basis is ``1, x, x^2, y`` and the number of chords through a
general point ``s`` of P^3 should be ``2^g = 4``.

Counting is done on ordered pairs of affine points ``(u, v), (w, z)``.  The
chord through them contains ``s`` iff the 3x4 matrix with rows
``(1, u, u^2, v)``, ``(1, w, w^2, z)``, ``s`` has rank 2.  Two minors suffice
away from the diagonal:

* columns 0,1,2: ``(w - u) * A(u, w)`` with
  ``A = s0 u w - s1 (u + w) + s2``; ``A = 0`` says the projections from the
  image of infinity are collinear on the conic;
* columns 0,1,3: ``s3 (w - u) + v (s1 - s0 w) + z (s0 u - s1)``.

The second minor is solved for ``z``; substituting in ``z^2 = f(w)`` and using
``v^2 = f(u)`` leaves ``v * D = E`` with ``D, E`` polynomial in ``u, w``.
Squaring once more gives ``R(u, w) = E^2 - f(u) D^2``, and ``Res_w(A, R)`` is a
polynomial in ``u`` whose roots are the x-coordinates of chord endpoints,
together with the diagonal ``A(u, u) = 0`` (tangent lines and vertical chords
through the projection) and the locus ``s0 u - s1 = 0`` where ``A`` loses its
``w``-degree.  Both are divided out; what remains has degree 8 for a general
``s``, two endpoints per chord.  Elimination in ``e1 = u + w, e2 = u w`` would
avoid the diagonal but is harder to certify.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import QQ, ExactPoly, PrimeField, gcd, resultant, squarefree_decomposition, to_text
from .seeding import derive_seed

INFINITY = "inf"


@dataclass(frozen=True)
class HyperellipticModel:
    """``y^2 = f(x)`` with ascending integer coefficients, ``deg f = 2g + 1``."""

    g: int
    f_coeffs: tuple[int, ...]
    domain: object = QQ

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.f_coeffs)
        object.__setattr__(self, "f_coeffs", coeffs)
        if self.g < 1:
            raise ValueError("genus must be positive")
        f = self.f
        if f.degree() != 2 * self.g + 1:
            raise ValueError(f"f must have degree {2 * self.g + 1} (leading coefficient nonzero), got {f.degree()}")
        if gcd(f, f.diff()).degree() > 0:
            raise ValueError("f is not squarefree; the affine model is singular")

    @property
    def f(self) -> ExactPoly:
        return ExactPoly.from_coeffs(self.f_coeffs, "x", self.domain)

    def f_in(self, var: str, vars: Sequence[str]) -> ExactPoly:
        return ExactPoly.from_coeffs(self.f_coeffs, var, self.domain).with_vars(vars)

    def contains(self, point) -> bool:
        if point == INFINITY:
            return True
        a, b = (self.domain(c) for c in point)
        return b * b == self.f.eval(a)

    def shifted(self, c: int) -> "HyperellipticModel":
        """Model ``y^2 = f(x + c)``."""
        f = self.f.compose_univariate(ExactPoly.from_coeffs([c, 1], "x", self.domain))
        coeffs = [int(v) if self.domain == QQ else v.v for v in f.coeffs()]
        return HyperellipticModel(self.g, tuple(coeffs), self.domain)


@dataclass(frozen=True)
class EmbeddingBasis:
    """Basis monomials ``(i, 0) = x^i`` and ``(j, 1) = y x^j`` with their pole orders at infinity."""

    monomials: tuple[tuple[int, int], ...]
    pole_orders: tuple[int, ...]

    def labels(self) -> list[str]:
        out = []
        for k, is_y in self.monomials:
            xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if is_y:
                out.append("y" if not xs else f"y*{xs}")
            else:
                out.append(xs or "1")
        return out


def embedding_basis(model: HyperellipticModel) -> EmbeddingBasis:
    """Riemann-Roch basis of ``(3g - 1) p0``: ``x`` has a pole of order 2, ``y`` of order ``2g + 1``."""
    g = model.g
    top = 3 * g - 1
    monos = [(i, 0) for i in range(top // 2 + 1)]
    monos += [(j, 1) for j in range(top) if 2 * g + 1 + 2 * j <= top]
    poles = [2 * k + (2 * g + 1 if is_y else 0) for k, is_y in monos]
    return EmbeddingBasis(tuple(monos), tuple(poles))


def embed_point(model: HyperellipticModel, basis: EmbeddingBasis, point) -> tuple:
    """Image of an affine point ``(a, b)`` or of ``INFINITY`` in P^(2g-1)."""
    dom = model.domain
    if point == INFINITY:
        top = max(basis.pole_orders)
        return tuple(dom.one if p == top else dom.zero for p in basis.pole_orders)
    if not model.contains(point):
        raise ValueError(f"point {point} is not on the curve y^2 = {to_text(model.f)}")
    a, b = (dom(c) for c in point)
    return tuple(a**k * (b if is_y else dom.one) for k, is_y in basis.monomials)


def classical_secant_count(n: int, g_prime: int) -> int:
    """Chords of a degree-``n`` genus-``g'`` space curve through a general point."""
    if n < 3:
        raise ValueError("need a non-degenerate space curve (n >= 3)")
    return (n - 1) * (n - 2) // 2 - g_prime


@dataclass
class RemovedFactor:
    label: str
    factor: ExactPoly
    multiplicity: int

    def to_dict(self) -> dict:
        return {"label": self.label, "factor": to_text(self.factor), "multiplicity": self.multiplicity}


@dataclass
class ChordCountCertificate:
    s: tuple[int, ...]
    raw_resultant_degree: int
    removed_factors: list[RemovedFactor]
    cleaned_degree: int
    squarefree: bool
    chord_count: int | None
    retry_count: int = 0
    degenerate: bool = False
    reason: str = ""
    cleaned: ExactPoly | None = None
    involution_invariant: bool = False
    multiplicities: list[tuple[str, int]] = field(default_factory=list)
    attempts: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.degenerate and self.squarefree and self.cleaned_degree == 8 and self.chord_count == 4

    def to_dict(self) -> dict:
        return {
            "s": list(self.s),
            "raw_resultant_degree": self.raw_resultant_degree,
            "removed_factors": [r.to_dict() for r in self.removed_factors],
            "cleaned_degree": self.cleaned_degree,
            "cleaned": to_text(self.cleaned) if self.cleaned is not None else None,
            "squarefree": self.squarefree,
            "involution_invariant": self.involution_invariant,
            "multiplicities": [list(m) for m in self.multiplicities],
            "chord_count": self.chord_count,
            "retry_count": self.retry_count,
            "degenerate": self.degenerate,
            "reason": self.reason,
            "attempts": list(self.attempts),
            "notes": list(self.notes),
        }


V2 = ("x", "w")
# Res_w of the conic minor (degree 1 in w) against the relation (degree 10 in w)
RAW_DEGREE = 16


def _det3(rows) -> ExactPoly:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def chord_system(model: HyperellipticModel, s: Sequence[int]) -> dict[str, ExactPoly]:
    """Polynomials of the ordered-pair chord system in ``(x, w)``; ``x`` plays ``u``."""
    s0, s1, s2, s3 = (Fraction(c) for c in s)
    u = ExactPoly.variable("x", V2)
    w = ExactPoly.variable("w", V2)
    one = ExactPoly.constant(1, V2)
    minor012 = _det3([[one, u, u * u], [one, w, w * w], [one * s0, one * s1, one * s2]])
    diagonal = w - u
    conic = minor012.exquo(diagonal)
    fu, fw = model.f_in("x", V2), model.f_in("w", V2)
    # minor013 = s3 (w - u) + v b + z a
    a = u * s0 - s1
    b = -w * s0 + s1
    den = diagonal * b * (2 * s3)
    num = fw * a * a - diagonal * diagonal * (s3 * s3) - fu * b * b
    return {
        "minor012": minor012,
        "conic": conic,
        "num": num,
        "den": den,
        "relation": num * num - fu * den * den,
    }


def _involution_invariant(h: ExactPoly, s: Sequence[int]) -> bool:
    """Is ``h`` stable under ``u -> (s1 u - s2) / (s0 u - s1)``, which swaps chord endpoints?"""
    s0, s1, s2, _ = (Fraction(c) for c in s)
    P = ExactPoly.from_coeffs([-s2, s1])
    Q = ExactPoly.from_coeffs([-s1, s0])
    d = h.degree()
    image = ExactPoly.constant(0, ("x",))
    for k, c in enumerate(h.coeffs()):
        image = image + P**k * Q ** (d - k) * c
    if image.is_zero() or image.degree() != d:
        return False
    return image.monic() == h.monic()


def _strip_factor(poly: ExactPoly, base: ExactPoly) -> tuple[ExactPoly, list[ExactPoly]]:
    """Divide out every common factor with ``base``, one gcd at a time."""
    pulled = []
    if base.is_constant():
        return poly, pulled
    while True:
        g = gcd(poly, base)
        if g.degree() <= 0:
            return poly, pulled
        product = poly.exquo(g)
        if product * g != poly:
            raise ArithmeticError("removed factor does not multiply back")
        poly = product
        pulled.append(g)


def count_chords_once(model: HyperellipticModel, s: Sequence[int]) -> ChordCountCertificate:
    """One elimination for a fixed target ``s``; no retries."""
    if model.g != 2:
        raise ValueError("chord counting is implemented for genus 2")
    if model.domain != QQ:
        raise ValueError("chord counting runs over the rationals")
    s = tuple(int(c) for c in s)
    if len(s) != 4 or not any(s):
        raise ValueError("s must be a nonzero 4-vector")
    s0, s1, s2, s3 = s

    def degenerate(reason, raw_degree=-1, removed=()):
        return ChordCountCertificate(s, raw_degree, list(removed), 0, False, None, degenerate=True, reason=reason)

    if s3 == 0:
        return degenerate("s3 = 0: s is fixed by y -> -y, chords pair up over equal x-coordinates and the solve for v degenerates")
    system = chord_system(model, s)
    if system["den"].is_zero():
        return degenerate("denominator identically zero")
    conic = system["conic"]
    if conic.degree("w") < 1:
        return degenerate("conic minor is free of w (leading-coefficient degeneracy)")
    raw = resultant(conic, system["relation"], "w")
    if raw.is_zero():
        return degenerate("resultant vanishes identically (positive-dimensional chord locus)")
    raw = raw.with_vars(("x",))
    removed: list[RemovedFactor] = []
    poly = raw
    denominator = ExactPoly.from_coeffs([-s1, s0])
    diagonal = ExactPoly.from_coeffs([s2, -2 * s1, s0])
    for label, base in (("denominator s0*u - s1", denominator), ("diagonal A(u, u)", diagonal)):
        poly, pulled = _strip_factor(poly, base)
        for piece in pulled:
            if removed and removed[-1].label == label and removed[-1].factor == piece:
                removed[-1].multiplicity += 1
            else:
                removed.append(RemovedFactor(label, piece, 1))
    notes = []
    if raw.degree() < RAW_DEGREE:
        notes.append(f"leading-degeneracy: raw resultant degree {raw.degree()} < {RAW_DEGREE}")
    lead = poly.lc()
    if lead != 1:
        removed.append(RemovedFactor("leading constant", ExactPoly.constant(lead, ("x",)), 1))
    cleaned = poly.monic()
    # every removed factor multiplies back to the raw resultant
    check = cleaned
    for r in removed:
        check = check * r.factor**r.multiplicity
    if check != raw:
        raise ArithmeticError("removed factors do not reproduce the raw resultant")
    deg = cleaned.degree()
    sqf = deg > 0 and gcd(cleaned, cleaned.diff()).degree() == 0
    mults = [] if sqf or deg <= 0 else [(to_text(a), m) for a, m in squarefree_decomposition(cleaned)]
    invariant = deg > 0 and _involution_invariant(cleaned, s)
    cert = ChordCountCertificate(
        s=s,
        raw_resultant_degree=raw.degree(),
        removed_factors=removed,
        cleaned_degree=deg,
        squarefree=sqf,
        chord_count=deg // 2 if sqf and deg % 2 == 0 else None,
        cleaned=cleaned,
        involution_invariant=invariant,
        multiplicities=mults,
        notes=notes,
    )
    if deg < 8:
        cert.degenerate = True
        cert.reason = f"cleaned degree {deg} < 8: s is on a special surface (tangent developable, cone over infinity or vertical chords)"
    elif not sqf:
        cert.degenerate = True
        cert.reason = "cleaned polynomial is not squarefree: some chord is counted with multiplicity"
    elif deg % 2:
        cert.degenerate = True
        cert.reason = f"cleaned degree {deg} is odd"
    elif not invariant:
        cert.degenerate = True
        cert.reason = "cleaned polynomial is not stable under the endpoint involution"
    return cert


def random_target(rng: random.Random, bound: int = 50) -> tuple[int, ...]:
    while True:
        s = tuple(rng.randint(-bound, bound) for _ in range(4))
        if any(s):
            return s


def count_chords_g2(model: HyperellipticModel, s: Sequence[int], seed: int | None = None, max_retries: int = 5, bound: int = 50) -> ChordCountCertificate:
    """Count chords through ``s``; degenerate targets are retried with fresh ones drawn from ``seed``.

    Without a seed a degenerate certificate is returned as is.
    """
    cert = count_chords_once(model, s)
    attempts = []
    rng = random.Random(seed) if seed is not None else None
    retries = 0
    while cert.degenerate and rng is not None and retries < max_retries:
        attempts.append({"s": list(cert.s), "reason": cert.reason})
        retries += 1
        cert = count_chords_once(model, random_target(rng, bound))
    cert.retry_count = retries
    cert.attempts = attempts
    return cert


def _trial(args) -> ChordCountCertificate:
    model, master, index, bound, retries = args
    seed = derive_seed(master, index)
    rng = random.Random(seed)
    s = random_target(rng, bound)
    return count_chords_g2(model, s, seed=derive_seed(master, index, 1), max_retries=retries, bound=bound)


def run_secant_trials(model: HyperellipticModel, trials: int, master_seed: int, bound: int = 50, max_retries: int = 5, jobs: int = 1) -> list[ChordCountCertificate]:
    """Independent trials with seeds derived from ``master_seed``; output order follows trial index."""
    work = [(model, master_seed, i, bound, max_retries) for i in range(trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_trial, work))
    return [_trial(a) for a in work]


def shift_target(s: Sequence[int], c: int) -> tuple[int, ...]:
    """Coordinates of ``s`` for the model ``y^2 = f(x + c)`` (basis ``1, x, x^2, y``)."""
    s0, s1, s2, s3 = s
    return (s0, s1 - c * s0, s2 - 2 * c * s1 + c * c * s0, s3)


def prime_model(f_coeffs: Sequence[int], p: int, g: int = 2) -> HyperellipticModel:
    return HyperellipticModel(g, tuple(f_coeffs), PrimeField(p))
