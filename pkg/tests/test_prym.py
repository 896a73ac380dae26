from fractions import Fraction
from math import comb

import pytest

from picardirr.prym import (
    PrymConvention,
    prym_bound,
    prym_picard_bundle,
    prym_picard_from_character,
    prym_rule,
)

U = PrymConvention.UNIFORM
G = PrymConvention.GEOMETRIC_K0


def test_bundle_classes():
    B = prym_picard_bundle(3)
    u = B.ring.gen("u")
    assert B.chern == B.ring.one() + u.scale(2) + (u**2).scale(2)
    assert prym_picard_bundle(2).chern == prym_picard_bundle(2).ring.one() + prym_picard_bundle(2).ring.gen("u").scale(2)
    for g in range(2, 12):
        assert prym_picard_from_character(g).chern == prym_picard_bundle(g).chern


def test_rule_values():
    r = prym_rule(3, U)
    assert (r((0, 2)), r((1, 1)), r((2, 0))) == (1, 2, 2)
    r = prym_rule(3, G)
    assert (r((0, 2)), r((1, 1)), r((2, 0))) == (2, 2, 2)
    r = prym_rule(2, U)
    assert r((0, 1)) == Fraction(1, 2) and r((1, 0)) == 1


@pytest.mark.parametrize("g,uniform,geometric", [(2, 2, 3), (3, 8, 10), (4, 32, 36)])
def test_small_values(g, uniform, geometric):
    assert prym_bound(g, U).top_chern_value == uniform
    assert prym_bound(g, G).top_chern_value == geometric


def test_sweep_both_conventions():
    for g in range(2, 31):
        u = prym_bound(g, U)
        assert u.top_chern_value == 2 ** (2 * g - 3)
        assert u.agrees_with_paper and u.violations() == []
        geo = prym_bound(g, G)
        assert geo.top_chern_value == 2 ** (2 * g - 3) + 2 ** (g - 2)
        assert not geo.agrees_with_paper and geo.violations() == []


def test_per_term_identity():
    for g in range(2, 13):
        for conv in (U, G):
            terms = prym_bound(g, conv).terms
            for k in range(1, g):
                assert terms[k] == 2 ** (g - 2) * comb(g - 1, k)
        assert prym_bound(g, U).terms[0] == Fraction(2 ** (g - 2))
        assert prym_bound(g, G).terms[0] == 2 ** (g - 1)


def test_convention_parsing():
    assert PrymConvention.parse("uniform") is U
    assert PrymConvention.parse("GeometricK0") is G
    assert PrymConvention.parse("geometric-k0") is G
    with pytest.raises(ValueError):
        PrymConvention.parse("other")


def test_report_dict():
    d = prym_bound(3, G).to_dict()
    assert d["k0_convention"] == "geometric_k0"
    assert d["top_chern"] == {"num": "10", "den": "1"}
    assert d["paper_claim"] == 8
