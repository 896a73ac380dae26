import random
from fractions import Fraction

import pytest

from picardirr.poly import (
    QQ,
    ExactPoly,
    PrimeField,
    degree,
    gcd,
    is_prime,
    parse,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sylvester_resultant,
    to_text,
)

XY = ("x", "y")


def from_roots(lead, roots, var="x", domain=QQ):
    f = ExactPoly.constant(lead, (var,), domain)
    for r in roots:
        f = f * ExactPoly.from_coeffs([-r, 1], var, domain)
    return f


def random_poly(rng, deg, bound=9, var="x"):
    coeffs = [rng.randint(-bound, bound) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return ExactPoly.from_coeffs(coeffs, var)


def scalar(p: ExactPoly):
    return p.constant_value()


def test_spec_examples():
    r = resultant(parse("y^2 - x", vars=XY), parse("y - 1", vars=XY), "y")
    assert r == parse("1 - x")
    assert resultant(parse("x^2 - 2"), parse("x^2 - 2")).is_zero()
    f = "x^5 - x - 1"
    r = resultant(parse(f"y^2 - ({f})", vars=XY), parse("y", vars=XY), "y")
    assert r == -parse(f)
    assert squarefree_part(parse("(x-1)^2*(x+2)")).monic() == parse("(x-1)*(x+2)")
    assert gcd(parse("x^2 - 1"), parse("x - 1")) == parse("x - 1")


def test_bidegree_bound():
    rng = random.Random(3)
    vars = ("x", "w")
    for _ in range(5):
        polys = []
        for _ in range(2):
            terms = {(i, j): rng.randint(-5, 5) for i in range(3) for j in range(3)}
            polys.append(ExactPoly(terms, vars))
        r = resultant(polys[0], polys[1], "w")
        assert degree(r, "x") <= 8


def test_root_product_identity():
    rng = random.Random(17)
    for _ in range(40):
        a, b = rng.choice([1, -2, 3]), rng.choice([1, 2, -5])
        alphas = [rng.randint(-6, 6) for _ in range(rng.randint(1, 5))]
        betas = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
        f, g = from_roots(a, alphas), from_roots(b, betas)
        expected = Fraction(a) ** len(betas) * Fraction(b) ** len(alphas)
        for al in alphas:
            for be in betas:
                expected *= al - be
        assert scalar(resultant(f, g)) == expected


def test_resultant_sign_rule():
    rng = random.Random(23)
    for _ in range(40):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        f, g = random_poly(rng, n), random_poly(rng, m)
        assert scalar(resultant(g, f)) == (-1) ** (n * m) * scalar(resultant(f, g))


def test_agrees_with_sylvester_determinant():
    rng = random.Random(29)
    for _ in range(40):
        f, g = random_poly(rng, rng.randint(1, 7)), random_poly(rng, rng.randint(1, 7))
        assert scalar(resultant(f, g)) == sylvester_resultant(f, g)


def test_agrees_with_sympy_when_first_degree_is_larger():
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(2, 7)
        f, g = random_poly(rng, n), random_poly(rng, rng.randint(1, n))
        ref = sympy.resultant(sympy.sympify(to_text(f).replace("^", "**")), sympy.sympify(to_text(g).replace("^", "**")), x)
        assert Fraction(str(ref)) == scalar(resultant(f, g))


def test_zero_iff_common_factor():
    rng = random.Random(37)
    for _ in range(30):
        f, g = random_poly(rng, rng.randint(1, 4)), random_poly(rng, rng.randint(1, 4))
        common = random_poly(rng, 1)
        assert resultant(f * common, g * common).is_zero()
        zero = resultant(f, g).is_zero()
        assert zero == (gcd(f, g).degree() > 0)


def test_bivariate_resultant_vanishes_on_common_roots():
    # Res_y(f, g)(x0) = 0 whenever f(x0, y) and g(x0, y) share a root
    f = parse("y^2 + x*y - 6", vars=XY)
    g = parse("y - x + 1", vars=XY)
    r = resultant(f, g, "y")
    for x0 in range(-5, 6):
        y0 = x0 - 1
        assert (f.eval({"x": x0, "y": y0}) == 0) == (r.eval(x0) == 0)


def test_mod_p_agreement():
    rng = random.Random(41)
    for p in (101, 10007, 2**31 - 1):
        for _ in range(10):
            f, g = random_poly(rng, rng.randint(1, 6)), random_poly(rng, rng.randint(1, 6))
            r = scalar(resultant(f, g))
            rp = scalar(resultant(f.reduce_mod(p), g.reduce_mod(p)))
            assert int(rp) == r.numerator * pow(r.denominator, -1, p) % p


def test_prime_field_rejects_composites():
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31 - 3)
    with pytest.raises(ValueError):
        PrimeField(100)
    with pytest.raises(ValueError):
        PrimeField(2**61 - 1)


def test_squarefree_decomposition_recombines():
    rng = random.Random(43)
    for _ in range(15):
        parts = [random_poly(rng, rng.randint(1, 2)) for _ in range(3)]
        f = parts[0] * parts[1] ** 2 * parts[2] ** 3
        total = ExactPoly.constant(1, ("x",))
        for h, k in squarefree_decomposition(f):
            total = total * h**k
        assert total.monic() == f.monic()
        sf = squarefree_part(f)
        assert gcd(sf, sf.diff()).degree() == 0


def test_division():
    f = parse("x^4 - 1")
    q, r = f.divmod(parse("x^2 + 1"))
    assert q == parse("x^2 - 1") and r.is_zero()
    assert parse("x^2 + x*w", vars=("x", "w")).exquo(parse("x", vars=("x", "w"))) == parse("x + w", vars=("x", "w"))
    with pytest.raises(ArithmeticError):
        parse("x^2 + 1").exquo(parse("x + 1"))


def test_parser_roundtrip():
    rng = random.Random(47)
    for _ in range(30):
        terms = {(rng.randint(0, 4), rng.randint(0, 4)): Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)}
        f = ExactPoly(terms, ("x", "w"))
        assert parse(to_text(f), vars=("x", "w")) == f


def test_parser_errors():
    for bad in ("x +", "x^-1", "2.5*x", "q + 1", "(x"):
        with pytest.raises(ValueError):
            parse(bad)
