"""Rational maps to P^n from split bundles on P^n over a prime field.

For ``E = O(a_1) + ... + O(a_n)`` on P^n, a section is an n-tuple of forms of
degrees ``a_i``.  An (n+1)-dimensional space ``V`` of sections defines
``phi_V``: a point ``x`` goes to the kernel of the n x (n+1) evaluation matrix,
i.e. to the unique (up to scalar) section of ``V`` vanishing at ``x``.  The
fiber over ``[s]`` is therefore ``Z(s)`` away from the base locus, and its
degree is ``c_n(E) = a_1 ... a_n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

import numpy as np

from .chern import BundleClass, top_chern
from .poly import ExactPoly, PrimeField, resultant
from .ring import EvaluationRule, GradedRing, integrate
from .seeding import derive_seed

Form = dict  # exponent tuple -> int in [0, p)


@dataclass(frozen=True)
class SplitBundleSpec:
    n: int
    twists: tuple[int, ...]
    p: int = 101

    def __post_init__(self):
        twists = tuple(sorted(int(a) for a in self.twists))
        object.__setattr__(self, "twists", twists)
        if self.n not in (2, 3):
            raise ValueError("only P^2 and P^3 are supported")
        if len(twists) != self.n:
            raise ValueError(f"need {self.n} twists, got {len(twists)}")
        if any(a < 1 for a in twists):
            raise ValueError("twists must be positive")
        PrimeField(self.p)

    @property
    def nvars(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class SectionTuple:
    forms: tuple[Form, ...]

    def degrees(self) -> tuple[int, ...]:
        return tuple(next(iter(map(sum, f)), 0) for f in self.forms)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
    return sorted(out, reverse=True)


def random_form(rng: random.Random, nvars: int, degree: int, p: int) -> Form:
    form = {e: rng.randrange(p) for e in monomials(nvars, degree)}
    return {e: c for e, c in form.items() if c}


def eval_form(form: Form, point: Sequence[int], p: int) -> int:
    total = 0
    for e, c in form.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term = term * pow(x, k, p) % p
        total += term
    return total % p


def eval_form_many(form: Form, points: np.ndarray, p: int) -> np.ndarray:
    """Evaluate on every row of ``points`` (int64, entries in [0, p))."""
    total = np.zeros(len(points), dtype=np.int64)
    for e, c in form.items():
        term = np.full(len(points), c, dtype=np.int64)
        for j, k in enumerate(e):
            for _ in range(k):
                term = term * points[:, j] % p
        total = (total + term) % p
    return total


def random_section(spec: SplitBundleSpec, rng: random.Random) -> SectionTuple:
    return SectionTuple(tuple(random_form(rng, spec.nvars, a, spec.p) for a in spec.twists))


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _kernel_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel of ``rows`` over F_p."""
    m = [[v % p for v in r] for r in rows]
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc] % p
        basis.append(vec)
    return basis


def normalize_point(v: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(c for c in v if c % p)
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in v)


def _coefficient_vector(spec: SplitBundleSpec, sec: SectionTuple) -> list[int]:
    vec = []
    for form, a in zip(sec.forms, spec.twists):
        vec.extend(form.get(e, 0) for e in monomials(spec.nvars, a))
    return vec


def check_independent(spec: SplitBundleSpec, V: Sequence[SectionTuple]) -> bool:
    return _rank_mod_p([_coefficient_vector(spec, s) for s in V], spec.p) == len(V)


def random_section_space(spec: SplitBundleSpec, rng: random.Random) -> tuple[list[SectionTuple], int]:
    """``n + 1`` independent random sections; also returns the number of dependent draws discarded."""
    redraws = 0
    while True:
        V = [random_section(spec, rng) for _ in range(spec.n + 1)]
        if check_independent(spec, V):
            return V, redraws
        redraws += 1


def evaluation_matrix(spec: SplitBundleSpec, V: Sequence[SectionTuple], x: Sequence[int]) -> list[list[int]]:
    return [[eval_form(V[j].forms[i], x, spec.p) for j in range(len(V))] for i in range(spec.n)]


def phi_V(spec: SplitBundleSpec, V: Sequence[SectionTuple], x: Sequence[int], check: bool = True) -> tuple[int, ...] | None:
    """Kernel line of the evaluation matrix at ``x``, or ``None`` when ``x`` is in the base locus."""
    if len(V) != spec.n + 1:
        raise ValueError(f"V must have {spec.n + 1} sections")
    if check and not check_independent(spec, V):
        raise ValueError("sections of V are linearly dependent")
    M = evaluation_matrix(spec, V, x)
    kernel = _kernel_mod_p(M, spec.p)
    if len(kernel) != 1:
        return None
    return normalize_point(kernel[0], spec.p)


def section_of(spec: SplitBundleSpec, V: Sequence[SectionTuple], coords: Sequence[int]) -> SectionTuple:
    """``sum_j coords[j] * V[j]``."""
    p = spec.p
    forms = []
    for i in range(spec.n):
        acc: Form = {}
        for c, sec in zip(coords, V):
            if not c:
                continue
            for e, v in sec.forms[i].items():
                acc[e] = (acc.get(e, 0) + c * v) % p
        forms.append({e: v for e, v in acc.items() if v})
    return SectionTuple(tuple(forms))


def vanishes_at(spec: SplitBundleSpec, s: SectionTuple, x: Sequence[int]) -> bool:
    return all(eval_form(f, x, spec.p) == 0 for f in s.forms)


def projective_points(nvars: int, p: int) -> np.ndarray:
    """All points of P^(nvars-1)(F_p), first nonzero coordinate equal to 1."""
    chunks = []
    for lead in range(nvars):
        tail = nvars - lead - 1
        if tail:
            grids = np.indices((p,) * tail, dtype=np.int64).reshape(tail, -1).T
        else:
            grids = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(grids), nvars), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grids
        chunks.append(block)
    return np.concatenate(chunks)


def random_point(rng: random.Random, nvars: int, p: int) -> tuple[int, ...]:
    while True:
        v = [rng.randrange(p) for _ in range(nvars)]
        if any(v):
            return normalize_point(v, p)


def _apply_linear(form: Form, A: Sequence[Sequence[int]], p: int) -> Form:
    """``form(A x)``: substitute ``X_i -> sum_j A[i][j] X_j``."""
    nvars = len(A)
    out: Form = {}
    for e, c in form.items():
        # expand prod_i (row_i . X)^e_i
        partial = {(0,) * nvars: c}
        for i, k in enumerate(e):
            for _ in range(k):
                nxt: Form = {}
                for pe, pc in partial.items():
                    for j in range(nvars):
                        if A[i][j]:
                            ne = list(pe)
                            ne[j] += 1
                            ne = tuple(ne)
                            nxt[ne] = (nxt.get(ne, 0) + pc * A[i][j]) % p
                partial = nxt
        for pe, pc in partial.items():
            out[pe] = (out.get(pe, 0) + pc) % p
    return {e: c for e, c in out.items() if c}


def _chart(form: Form, fixed: int, names: tuple[str, str], F: PrimeField) -> ExactPoly:
    """Dehomogenize a ternary form by setting coordinate ``fixed`` to 1."""
    terms = {}
    for e, c in form.items():
        rest = tuple(k for j, k in enumerate(e) if j != fixed)
        terms[rest] = terms.get(rest, 0) + c
    return ExactPoly(terms, names, F)


def _restrict_resultant_count(forms: Sequence[Form], p: int) -> int | None:
    """Intersection count of two plane curves through [0:0:1]-projection; ``None`` if they share a component."""
    F = PrimeField(p)
    a1 = sum(next(iter(forms[0])))
    a2 = sum(next(iter(forms[1])))
    # chart X1 = 1: roots in x = X0 / X1 of the projected resultant
    f1, f2 = (_chart(f, 1, ("x", "z"), F) for f in forms)
    r1 = resultant(f1, f2, "z")
    if r1.is_zero():
        return None
    # chart X0 = 1: points with X1 = 0 show up as the root y = 0
    g1, g2 = (_chart(f, 0, ("y", "z"), F) for f in forms)
    r2 = resultant(g1, g2, "z")
    if r2.is_zero():
        return None
    r2 = r2.with_vars(("y",))
    order_at_zero = next(k for k, c in enumerate(r2.coeffs()) if c)
    count = r1.with_vars(("x",)).degree() + order_at_zero
    if count > a1 * a2:
        raise ArithmeticError(f"intersection count {count} exceeds Bezout bound {a1 * a2}")
    return count


def in_span(spec: SplitBundleSpec, V: Sequence[SectionTuple], s: SectionTuple) -> bool:
    rows = [_coefficient_vector(spec, v) for v in V]
    return _rank_mod_p(rows + [_coefficient_vector(spec, s)], spec.p) == _rank_mod_p(rows, spec.p)


def fiber_degree(spec: SplitBundleSpec, V: Sequence[SectionTuple] | None, s: SectionTuple, method: str = "restrict-resultant", seed: int = 0, max_tries: int = 20) -> int | None:
    """Length of ``Z(s)`` (``restrict-resultant``) or its number of F_p-points (``enumerate``).

    ``None`` signals a positive-dimensional zero locus.  When ``V`` is given,
    ``s`` must lie in its span.
    """
    p = spec.p
    if not any(s.forms):
        raise ValueError("s must be nonzero")
    if V is not None and not in_span(spec, V, s):
        raise ValueError("s is not in the span of V")
    if method == "enumerate":
        pts = projective_points(spec.nvars, p)
        mask = np.ones(len(pts), dtype=bool)
        for f in s.forms:
            mask &= eval_form_many(f, pts, p) == 0
        return int(mask.sum())
    if method != "restrict-resultant":
        raise ValueError(f"unknown method {method!r}")
    if spec.n != 2:
        raise ValueError("restrict-resultant is implemented on P^2 only")
    if any(not f for f in s.forms):
        return None
    # the projection center [0:0:1] must avoid both curves: pure X2^a coefficient nonzero
    rng = random.Random(derive_seed(seed, 0xC0))
    forms = list(s.forms)
    for _ in range(max_tries):
        if all(f.get((0, 0, a), 0) for f, a in zip(forms, spec.twists)):
            return _restrict_resultant_count(forms, p)
        while True:
            A = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
            if _rank_mod_p(A, p) == 3:
                break
        forms = [_apply_linear(f, A, p) for f in s.forms]
    raise RuntimeError("could not find a projection center off both curves")


def split_top_chern(spec: SplitBundleSpec) -> int:
    """``c_n(E)`` from ``c(E) = prod (1 + a_i h)`` in ``Q[h]/(h^(n+1))``."""
    ring = GradedRing(("h",), spec.n)
    h = ring.gen("h")
    c = ring.one()
    for a in spec.twists:
        c = c * (ring.one() + h.scale(a))
    E = BundleClass(spec.n, c, label="split")
    value = integrate(top_chern(E), EvaluationRule(ring, {(spec.n,): 1}, name="P^n"))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral top Chern class {value}")
    return int(value)


@dataclass
class DrawReport:
    twists: tuple[int, ...]
    draw: int
    seed: int
    dependent_redraws: int
    degenerate_redraws: int
    points_checked: int
    base_locus_points: int
    fiber_rule_ok: bool
    target: tuple[int, ...] | None
    restrict_resultant: int | None
    enumerated: int | None
    expected: int

    @property
    def matches(self) -> bool:
        """Degree claim; on P^3 only the rational-point lower bound is available."""
        if len(self.twists) == 2:
            return self.restrict_resultant == self.expected
        return self.enumerated is not None and 1 <= self.enumerated <= self.expected

    def violations(self) -> list[str]:
        out = []
        if not self.fiber_rule_ok:
            out.append(f"draw {self.draw}: phi_V(x) does not vanish at x")
        if self.target is None:
            out.append(f"draw {self.draw}: no non-degenerate draw after {self.degenerate_redraws} redraws")
            return out
        if not self.matches:
            out.append(f"draw {self.draw}: fiber degree {self.restrict_resultant} != c_n(E) = {self.expected}")
        if self.enumerated is not None:
            bound = self.restrict_resultant if self.restrict_resultant is not None else self.expected
            if not 1 <= self.enumerated <= bound:
                out.append(f"draw {self.draw}: {self.enumerated} rational fiber points outside [1, {bound}]")
        return out

    def to_dict(self) -> dict:
        return {
            "twists": list(self.twists),
            "draw": self.draw,
            "seed": self.seed,
            "dependent_redraws": self.dependent_redraws,
            "degenerate_redraws": self.degenerate_redraws,
            "points_checked": self.points_checked,
            "base_locus_points": self.base_locus_points,
            "fiber_rule_ok": self.fiber_rule_ok,
            "target": list(self.target) if self.target else None,
            "restrict_resultant": self.restrict_resultant,
            "enumerated": self.enumerated,
            "expected": self.expected,
            "matches": self.matches,
        }


def run_draw(spec: SplitBundleSpec, seed: int, draw: int = 0, points: int = 100, enumerate_points: bool = True, max_redraws: int = 10) -> DrawReport:
    """One section space: fiber rule on ``points`` random points, then the fiber degree over one of them."""
    rng = random.Random(seed)
    expected = split_top_chern(spec)
    degenerate = 0
    dependent = 0
    while True:
        V, dep = random_section_space(spec, rng)
        dependent += dep
        ok = True
        in_base = 0
        target = None
        for _ in range(points):
            x = random_point(rng, spec.nvars, spec.p)
            k = phi_V(spec, V, x, check=False)
            if k is None:
                in_base += 1
                continue
            if not vanishes_at(spec, section_of(spec, V, k), x):
                ok = False
            if target is None:
                target = k
        if target is None:
            degenerate += 1
            if degenerate > max_redraws:
                break
            continue
        s = section_of(spec, V, target)
        count = fiber_degree(spec, None, s, seed=seed) if spec.n == 2 else None
        if spec.n == 2 and count is None:
            degenerate += 1
            if degenerate > max_redraws:
                break
            continue
        enumerated = fiber_degree(spec, None, s, method="enumerate") if enumerate_points or spec.n > 2 else None
        if count is None and enumerated > expected:
            # a finite Z(s) has at most c_n(E) points, so this one is positive-dimensional
            degenerate += 1
            if degenerate > max_redraws:
                break
            continue
        return DrawReport(spec.twists, draw, seed, dependent, degenerate, points, in_base, ok, target, count, enumerated, expected)
    return DrawReport(spec.twists, draw, seed, dependent, degenerate, points, 0, False, None, None, None, expected)


def _draw(args) -> DrawReport:
    return run_draw(*args)


def run_playground(spec: SplitBundleSpec, trials: int, master_seed: int, points: int = 100, enumerate_points: bool = True, jobs: int = 1) -> list[DrawReport]:
    """``trials`` independent section spaces; seeds depend on the twist list and the draw index only."""
    tag = prod(a + 7 for a in spec.twists) * 1000 + spec.n
    work = [(spec, derive_seed(master_seed, tag, i), i, points, enumerate_points) for i in range(trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_draw, work))
    return [_draw(a) for a in work]
