"""Exact univariate and bivariate polynomials over Q or a prime field.

Resultants go through the subresultant pseudo-remainder sequence, so over
``Q[x]`` coefficients only exact divisions are ever performed.  Prime-field
scalars are :class:`Mod` values; rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

DEFAULT_VARS = ("x", "w", "y", "z")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mod:
    """Element of Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def inverse(self) -> "Mod":
        if not self.v:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, o):
        return Mod(self._other(o), self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Mod(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Mod):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Rationals:
    name = "QQ"
    characteristic = 0

    def __call__(self, c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, str)):
            return Fraction(c)
        raise TypeError(f"cannot coerce {c!r} into QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2**31 or not is_prime(p):
            raise ValueError(f"{p!r} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, c):
        if isinstance(c, Mod):
            if c.p != self.p:
                raise ValueError(f"cannot coerce an F_{c.p} element into F_{self.p}")
            return c
        if isinstance(c, int):
            return Mod(c, self.p)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
            return Mod(c.numerator * pow(c.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {c!r} into {self.name}")

    @property
    def zero(self):
        return Mod(0, self.p)

    @property
    def one(self):
        return Mod(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


class ExactPoly:
    """Immutable sparse polynomial in at most two variables.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients of ``domain``.  A polynomial with no variables is a constant.
    """

    __slots__ = ("domain", "vars", "_terms")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, vars: Sequence[str] = ("x",), domain=QQ):
        vars = tuple(vars)
        if len(vars) > 2:
            raise ValueError(f"at most two variables are supported, got {vars}")
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variables {vars}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(vars) or any(e < 0 for e in exp):
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            c = domain(c)
            if c:
                s = clean.get(exp, domain.zero) + c
                if s:
                    clean[exp] = s
                else:
                    clean.pop(exp, None)
        self.domain = domain
        self.vars = vars
        self._terms = clean

    @classmethod
    def _trusted(cls, terms, vars, domain) -> "ExactPoly":
        self = object.__new__(cls)
        self.domain = domain
        self.vars = vars
        self._terms = {e: c for e, c in terms.items() if c}
        return self

    # construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, var: str = "x", domain=QQ) -> "ExactPoly":
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, (var,), domain)

    @classmethod
    def variable(cls, name: str, vars: Sequence[str] | None = None, domain=QQ) -> "ExactPoly":
        vars = tuple(vars or (name,))
        return cls({tuple(1 if v == name else 0 for v in vars): 1}, vars, domain)

    @classmethod
    def constant(cls, c, vars: Sequence[str] = (), domain=QQ) -> "ExactPoly":
        return cls({(0,) * len(vars): c}, vars, domain)

    def with_vars(self, vars: Sequence[str]) -> "ExactPoly":
        """Re-express over a superset (or reordering) of the current variables."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars and self.degree(v) > 0]
        if missing:
            raise ValueError(f"cannot drop variables {missing}")
        terms = {}
        for exp, c in self._terms.items():
            d = dict(zip(self.vars, exp))
            terms[tuple(d.get(v, 0) for v in vars)] = c
        return ExactPoly._trusted(terms, vars, self.domain)

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self.vars), self.domain.zero)

    def _index(self, var: str | None) -> int:
        if var is None:
            if len(self.vars) != 1:
                raise ValueError(f"specify a variable for {self.vars}")
            return 0
        try:
            return self.vars.index(var)
        except ValueError:
            return -1

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var``; -1 for the zero polynomial, 0 if ``var`` is absent."""
        if not self._terms:
            return -1
        i = self._index(var)
        if i < 0:
            return 0
        return max(e[i] for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def lc(self, var: str | None = None):
        """Leading coefficient in ``var`` (univariate: a scalar)."""
        if len(self.vars) == 1 and var in (None, self.vars[0]):
            if not self._terms:
                return self.domain.zero
            return self._terms[(self.degree(),)]
        coeffs = self.coeffs(var)
        return coeffs[-1] if coeffs else self.domain.zero

    def coeffs(self, var: str | None = None) -> list:
        """Ascending coefficients with respect to ``var``.

        For a univariate polynomial these are scalars; for a bivariate one they
        are univariate :class:`ExactPoly` values in the other variable.
        """
        i = self._index(var)
        if i < 0:
            raise ValueError(f"{var} is not a variable of {self.vars}")
        n = self.degree(self.vars[i])
        if len(self.vars) == 1:
            return [self._terms.get((k,), self.domain.zero) for k in range(n + 1)]
        other = self.vars[1 - i]
        buckets: list[dict] = [dict() for _ in range(n + 1)]
        for e, c in self._terms.items():
            buckets[e[i]][(e[1 - i],)] = c
        return [ExactPoly._trusted(b, (other,), self.domain) for b in buckets]

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence, var: str, vars: Sequence[str], domain) -> "ExactPoly":
        """Inverse of :meth:`coeffs`: ``sum_k coeffs[k] * var^k`` over ``vars``."""
        vars = tuple(vars)
        i = vars.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            if isinstance(c, ExactPoly):
                for e, v in c._terms.items():
                    exp = [0] * len(vars)
                    exp[i] = k
                    for name, d in zip(c.vars, e):
                        if d:
                            exp[vars.index(name)] = d
                    terms[tuple(exp)] = v
            elif c:
                exp = [0] * len(vars)
                exp[i] = k
                terms[tuple(exp)] = domain(c)
        return cls._trusted(terms, vars, domain)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            if other.domain != self.domain:
                raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")
            if other.vars != self.vars:
                if not other.vars or set(other.vars) <= set(self.vars):
                    return other.with_vars(self.vars)
                if not self.vars or set(self.vars) <= set(other.vars):
                    return other
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return ExactPoly.constant(other, self.vars, self.domain)

    def _lift(self, other: "ExactPoly") -> "ExactPoly":
        return self.with_vars(other.vars) if other.vars != self.vars else self

    def __add__(self, other):
        other = self._coerce(other)
        a = self._lift(other)
        terms = dict(a._terms)
        for e, c in other._terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return ExactPoly._trusted(terms, a.vars, a.domain)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly._trusted({e: -c for e, c in self._terms.items()}, self.vars, self.domain)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            c = self.domain(other)
            return ExactPoly._trusted({e: c * v for e, v in self._terms.items()}, self.vars, self.domain)
        other = self._coerce(other)
        a = self._lift(other)
        terms: dict = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return ExactPoly._trusted(terms, a.vars, a.domain)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = ExactPoly.constant(1, self.vars, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            if self.domain != other.domain:
                return False
            if self.vars != other.vars:
                try:
                    other = self._coerce(other)
                    a = self._lift(other)
                except ValueError:
                    return False
                return a._terms == other._terms
            return self._terms == other._terms
        try:
            return self == ExactPoly.constant(other, self.vars, self.domain)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def scale(self, c) -> "ExactPoly":
        return self * self.domain(c)

    def diff(self, var: str | None = None) -> "ExactPoly":
        i = self._index(var)
        if i < 0:
            return ExactPoly._trusted({}, self.vars, self.domain)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return ExactPoly._trusted(terms, self.vars, self.domain)

    def subs(self, var: str, value) -> "ExactPoly":
        """Substitute a scalar for ``var``; the variable is dropped."""
        i = self._index(var)
        if i < 0:
            return self
        value = self.domain(value)
        rest = tuple(v for v in self.vars if v != var)
        terms: dict = {}
        for e, c in self._terms.items():
            ne = tuple(d for j, d in enumerate(e) if j != i)
            term = c * value ** e[i]
            terms[ne] = terms[ne] + term if ne in terms else term
        return ExactPoly._trusted(terms, rest, self.domain)

    def eval(self, point):
        """Evaluate at a scalar (univariate) or a ``{var: value}`` mapping."""
        if not isinstance(point, Mapping):
            if len(self.vars) != 1:
                raise ValueError("pass a mapping for bivariate evaluation")
            point = {self.vars[0]: point}
        p = self
        for v in self.vars:
            p = p.subs(v, point[v])
        return p.constant_value()

    def compose_univariate(self, other: "ExactPoly") -> "ExactPoly":
        """``self(other)`` for univariate ``self``."""
        if len(self.vars) != 1:
            raise ValueError("compose_univariate needs a univariate polynomial")
        result = ExactPoly.constant(0, other.vars, self.domain)
        for c in reversed(self.coeffs()):
            result = result * other + c
        return result

    def reduce_mod(self, p: int) -> "ExactPoly":
        """Image over F_p of a polynomial over Q."""
        if self.domain != QQ:
            raise ValueError("reduce_mod expects a polynomial over QQ")
        F = PrimeField(p)
        return ExactPoly({e: F(c) for e, c in self._terms.items()}, self.vars, F)

    # univariate division ------------------------------------------------

    def divmod(self, other: "ExactPoly") -> tuple["ExactPoly", "ExactPoly"]:
        """Euclidean division of univariate polynomials over the coefficient field."""
        if len(self.vars) > 1 or len(other.vars) > 1:
            raise ValueError("divmod is univariate only")
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        var = (self.vars or other.vars or ("x",))[0]
        a = self.with_vars((var,)).coeffs(var) if self else []
        b = other.with_vars((var,)).coeffs(var)
        q, r = _dense_divmod(a, b, self.domain)
        return (ExactPoly.from_coeffs(q, var, self.domain), ExactPoly.from_coeffs(r, var, self.domain))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other) -> "ExactPoly":
        """Exact quotient; raises :class:`ArithmeticError` on a nonzero remainder."""
        if not isinstance(other, ExactPoly):
            c = self.domain(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (self.domain.one / c)
        other = self._coerce(other)
        a = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return a * (a.domain.one / other.constant_value())
        # multivariate division by leading terms in lex order
        lead_b = max(other._terms)
        cb = other._terms[lead_b]
        rem = dict(a._terms)
        quo: dict = {}
        while rem:
            lead = max(rem)
            if any(x < y for x, y in zip(lead, lead_b)):
                raise ArithmeticError(f"{other} does not divide {self}")
            qe = tuple(x - y for x, y in zip(lead, lead_b))
            qc = rem[lead] / cb
            quo[qe] = qc
            for e, c in other._terms.items():
                ne = tuple(x + y for x, y in zip(qe, e))
                v = rem.get(ne, a.domain.zero) - qc * c
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return ExactPoly._trusted(quo, a.vars, a.domain)

    def divides(self, other: "ExactPoly") -> bool:
        try:
            other.exquo(self)
        except ArithmeticError:
            return False
        return True

    def monic(self) -> "ExactPoly":
        if self.is_zero():
            return self
        lead = self._terms[max(self._terms)]
        return self * (self.domain.one / lead)

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive (QQ only)."""
        if self.domain != QQ:
            raise ValueError("content is defined over QQ")
        if self.is_zero():
            return Fraction(0)
        den = 1
        for c in self._terms.values():
            den = ilcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = igcd(num, int(c * den))
        return Fraction(num, den)

    def primitive(self) -> "ExactPoly":
        """Integral, content-1 representative with positive leading coefficient."""
        if self.is_zero():
            return self
        p = self * (1 / self.content())
        if p._terms[max(p._terms)] < 0:
            p = -p
        return p

    # printing -----------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"ExactPoly({to_text(self)!r}, vars={self.vars}, domain={self.domain!r})"


# ---------------------------------------------------------------------------
# dense helpers (ascending coefficient lists over a ring supporting + - *)


def _strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _dense_divmod(a: Sequence, b: Sequence, domain) -> tuple[list, list]:
    r = _strip(list(a))
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = domain.one / b[-1]
    db = len(b) - 1
    q = [domain.zero] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] = r[k + i] - c * bc
        _strip(r)
    return q, r


def _exquo_scalar(a, b):
    if isinstance(a, ExactPoly):
        return a.exquo(b)
    return a / b


def _prem(f: list, g: list) -> list:
    """Pseudo-remainder ``lc(g)^(deg f - deg g + 1) f mod g`` without division."""
    f = list(f)
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return _strip(f)
    lc = g[-1]
    n = df - dg + 1
    while f and len(f) - 1 >= dg:
        k = len(f) - 1 - dg
        lf = f[-1]
        f = [c * lc for c in f]
        for i, gc in enumerate(g):
            f[k + i] = f[k + i] - lf * gc
        f.pop()
        _strip(f)
        n -= 1
    if n > 0:
        scale = lc**n
        f = [c * scale for c in f]
    return _strip(f)


def _subresultant_resultant(f: list, g: list, one, zero):
    """Resultant of dense ``f, g`` (deg f >= deg g >= 0) over an integral domain.

    Subresultant PRS; every division below is exact in the coefficient ring.
    """
    n, m = len(f) - 1, len(g) - 1
    d = n - m
    b = one if (d + 1) % 2 == 0 else -one
    h = [x * b for x in _prem(f, g)]
    lc = g[-1]
    c = lc**d
    last = c
    c = -c
    last_degree = m
    while h:
        k = len(h) - 1
        last_degree = k
        f, g, d, m = g, h, m - k, k
        b = -lc * c**d
        h = [_exquo_scalar(x, b) for x in _prem(f, g)]
        lc = g[-1]
        if d > 1:
            c = _exquo_scalar((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        last = -c
    if last_degree > 0:
        return zero
    return last


def resultant(f: ExactPoly, g: ExactPoly, var: str | None = None) -> ExactPoly:
    """Resultant with respect to ``var``; the result no longer involves ``var``.

    Follows the convention ``Res(f, g) = lc(f)^deg g * prod g(roots of f)``.
    """
    if f.domain != g.domain:
        raise ValueError("domain mismatch")
    vars = f.vars if len(f.vars) >= len(g.vars) else g.vars
    f, g = f.with_vars(vars), g.with_vars(vars)
    if var is None:
        if len(vars) != 1:
            raise ValueError("specify the elimination variable")
        var = vars[0]
    if var not in vars:
        raise ValueError(f"{var} is not a variable of {vars}")
    rest = tuple(v for v in vars if v != var)
    dom = f.domain
    n, m = f.degree(var), g.degree(var)
    if n <= 0 and m <= 0:
        raise ValueError(f"both polynomials are constant in {var}")
    if f.is_zero() or g.is_zero():
        return ExactPoly.constant(0, rest, dom)
    fc, gc = f.coeffs(var), g.coeffs(var)
    one = ExactPoly.constant(1, rest, dom) if rest else dom.one
    zero = ExactPoly.constant(0, rest, dom) if rest else dom.zero
    if n >= m:
        r = _subresultant_resultant(fc, gc, one, zero)
    else:
        r = _subresultant_resultant(gc, fc, one, zero)
        if (n * m) % 2:
            r = -r
    if isinstance(r, ExactPoly):
        return r
    return ExactPoly.constant(r, rest, dom)


def sylvester_resultant(f: ExactPoly, g: ExactPoly) -> object:
    """Univariate resultant as a Sylvester determinant (fraction-free Bareiss).

    Independent of :func:`resultant`; used as a cross-check.
    """
    if len(f.vars) != 1 or f.vars != g.vars:
        raise ValueError("sylvester_resultant is univariate")
    a, b = f.coeffs()[::-1], g.coeffs()[::-1]
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    if size == 0:
        return f.domain.one
    zero = f.domain.zero
    rows = []
    for i in range(m):
        rows.append([zero] * i + list(a) + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + list(b) + [zero] * (size - m - 1 - i))
    return _det(rows, f.domain)


def _det(rows: list[list], domain):
    mat = [list(r) for r in rows]
    n = len(mat)
    sign = 1
    prev = domain.one
    for k in range(n - 1):
        if not mat[k][k]:
            for i in range(k + 1, n):
                if mat[i][k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return domain.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev
        prev = mat[k][k]
    return mat[n - 1][n - 1] * sign


def gcd(f: ExactPoly, g: ExactPoly) -> ExactPoly:
    """Monic gcd of univariate polynomials (``gcd(0, 0) = 0``)."""
    if len(f.vars) > 1 or len(g.vars) > 1:
        raise ValueError("gcd is univariate only")
    var = (f.vars or g.vars or ("x",))[0]
    f, g = f.with_vars((var,)), g.with_vars((var,))
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.domain == QQ:
        # primitive PRS: integer arithmetic, content removed at each step
        a, b = f.primitive(), g.primitive()
        if a.degree() < b.degree():
            a, b = b, a
        while not b.is_zero():
            r = ExactPoly.from_coeffs(_prem(a.coeffs(), b.coeffs()), var, QQ)
            a, b = b, r.primitive()
        return a.monic()
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: ExactPoly) -> ExactPoly:
    """``f / gcd(f, f')`` normalized to be monic."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if len(f.vars) != 1:
        raise ValueError("squarefree_part is univariate only")
    if f.degree() == 0:
        return ExactPoly.constant(1, f.vars, f.domain)
    df = f.diff()
    if df.is_zero():
        raise ValueError("derivative vanishes identically (inseparable polynomial)")
    return f.exquo(gcd(f, df)).monic()


def squarefree_decomposition(f: ExactPoly) -> list[tuple[ExactPoly, int]]:
    """Yun's algorithm: monic squarefree ``a_i`` with ``f = lc * prod a_i^i``."""
    if f.is_zero() or len(f.vars) != 1:
        raise ValueError("need a nonzero univariate polynomial")
    if f.domain.characteristic and f.degree() >= f.domain.characteristic:
        raise ValueError("Yun's algorithm needs degree below the characteristic")
    out = []
    if f.degree() == 0:
        return out
    f = f.monic()
    df = f.diff()
    a = gcd(f, df)
    b = f.exquo(a)
    c = df.exquo(a)
    d = c - b.diff()
    i = 1
    while b.degree() > 0:
        a = gcd(b, d)
        if a.degree() > 0:
            out.append((a, i))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.diff()
        i += 1
    return out


def degree(f: ExactPoly, var: str | None = None) -> int:
    return f.degree(var)


def evaluate(f: ExactPoly, point):
    return f.eval(point)


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\^|\*\*|[-+*/()]))")


def _var_order(names: Iterable[str]) -> tuple[str, ...]:
    names = set(names)
    known = [v for v in DEFAULT_VARS if v in names]
    return tuple(known + sorted(names - set(known)))


def parse(text: str, vars: Sequence[str] | None = None, domain=QQ, allowed: Sequence[str] | None = DEFAULT_VARS) -> ExactPoly:
    """Parse ``3*x^2*w - x + 1``-style text.

    Integer literals, variables, ``+ - * ^`` and parentheses; ``a/b`` is
    accepted between integer literals so that printed rationals round-trip.
    Variables default to those appearing in the text, ordered x, w, y, z.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if allowed is not None and name not in allowed:
                raise ValueError(f"unknown variable {name!r}")
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial text")
    names = [t[1] for t in tokens if t[0] == "var"]
    vars = tuple(vars) if vars is not None else _var_order(names)
    unknown = set(names) - set(vars)
    if unknown:
        raise ValueError(f"variables {sorted(unknown)} not in {vars}")
    if len(vars) > 2:
        raise ValueError(f"at most two variables are supported, got {vars}")

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take(kind=None, value=None):
        nonlocal i
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error near token {i}: expected {value or kind}, got {tok[1]!r}")
        i += 1
        return tok

    def expr():
        acc = unary()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = unary()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return term()

    def term():
        acc = power()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            if op == "*":
                acc = acc * power()
            else:
                den = take("num")[1]
                if den == 0:
                    raise ValueError("division by zero literal")
                acc = acc * (domain.one / domain(den))
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            base = base ** take("num")[1]
        return base

    def atom():
        tok = peek()
        if tok[0] == "num":
            take()
            return ExactPoly.constant(tok[1], vars, domain)
        if tok[0] == "var":
            take()
            return ExactPoly.variable(tok[1], vars, domain)
        if tok == ("op", "("):
            take()
            inner = expr()
            take("op", ")")
            return inner
        raise ValueError(f"parse error near token {i}: {tok[1]!r}")

    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input after token {i}")
    return result


def to_text(f: ExactPoly) -> str:
    """Deterministic printer; monomials in descending lex order."""
    if f.is_zero():
        return "0"
    pieces = []
    for exp in sorted(f._terms, reverse=True):
        c = f._terms[exp]
        if isinstance(c, Mod):
            neg, mag = False, c.v
        else:
            neg, mag = c < 0, abs(c)
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(f.vars, exp) if e
        )
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)
