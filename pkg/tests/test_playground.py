import random

import numpy as np
import pytest

from picardirr.playground import (
    SectionTuple,
    SplitBundleSpec,
    check_independent,
    eval_form,
    eval_form_many,
    fiber_degree,
    phi_V,
    projective_points,
    random_point,
    random_section_space,
    run_draw,
    run_playground,
    section_of,
    split_top_chern,
    vanishes_at,
)


def linear(coeffs):
    return {tuple(1 if j == i else 0 for j in range(len(coeffs))): c for i, c in enumerate(coeffs) if c}


def test_spec_validation():
    assert SplitBundleSpec(2, (2, 1)).twists == (1, 2)
    for bad in [(2, (1,)), (2, (0, 1)), (4, (1, 1, 1, 1))]:
        with pytest.raises(ValueError):
            SplitBundleSpec(*bad)
    with pytest.raises(ValueError):
        SplitBundleSpec(2, (1, 1), p=100)


@pytest.mark.parametrize("n,twists,expected", [(2, (1, 2), 2), (3, (1, 1, 1), 1), (2, (2, 3), 6), (3, (1, 2, 3), 6)])
def test_split_top_chern(n, twists, expected):
    assert split_top_chern(SplitBundleSpec(n, twists)) == expected


def test_split_top_chern_against_product():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.choice([2, 3])
        twists = tuple(rng.randint(1, 6) for _ in range(n))
        assert split_top_chern(SplitBundleSpec(n, twists)) == np.prod(twists)


def test_coordinate_sections_give_a_linear_isomorphism():
    # V = {(X0, X1) ... } chosen so that the kernel at x is x itself
    spec = SplitBundleSpec(2, (1, 1), p=101)
    # section j: (form_0, form_1); M(x) = [[x1, -x0, 0], [x2, 0, -x0]] has kernel (x0, x1, x2)
    V = [
        SectionTuple((linear([0, 1, 0]), linear([0, 0, 1]))),
        SectionTuple((linear([-1 % 101, 0, 0]), {})),
        SectionTuple(({}, linear([-1 % 101, 0, 0]))),
    ]
    assert check_independent(spec, V)
    rng = random.Random(0)
    for _ in range(50):
        x = random_point(rng, 3, 101)
        k = phi_V(spec, V, x)
        if x[0] == 0:
            assert k is None  # base locus is the line X0 = 0
        else:
            assert k == x


def test_fiber_rule_consistency():
    for twists in [(1, 1), (1, 2), (2, 3)]:
        spec = SplitBundleSpec(2, twists)
        rng = random.Random(hash(twists) % 1000)
        for _ in range(10):
            V, _ = random_section_space(spec, rng)
            for _ in range(10):
                x = random_point(rng, 3, spec.p)
                k = phi_V(spec, V, x)
                if k is not None:
                    assert vanishes_at(spec, section_of(spec, V, k), x)


def test_phi_is_deterministic_for_fixed_seed():
    spec = SplitBundleSpec(2, (1, 2))

    def once():
        rng = random.Random(99)
        V, _ = random_section_space(spec, rng)
        return phi_V(spec, V, random_point(rng, 3, spec.p))

    assert once() == once() is not None


def test_dependent_space_rejected():
    spec = SplitBundleSpec(2, (1, 1))
    rng = random.Random(1)
    V, _ = random_section_space(spec, rng)
    with pytest.raises(ValueError):
        phi_V(spec, [V[0], V[1], V[0]], (1, 2, 3))


@pytest.mark.parametrize("twists", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)])
def test_restrict_resultant_degree(twists):
    spec = SplitBundleSpec(2, twists)
    rng = random.Random(sum(twists))
    V, _ = random_section_space(spec, rng)
    s = section_of(spec, V, (1, 2, 3))
    assert fiber_degree(spec, V, s) == twists[0] * twists[1]
    assert 0 <= fiber_degree(spec, V, s, method="enumerate") <= twists[0] * twists[1]


def test_projection_center_on_curve_is_handled():
    # both forms vanish at [0:0:1]; a coordinate change is needed
    spec = SplitBundleSpec(2, (1, 2))
    s = SectionTuple(({(1, 0, 0): 1, (0, 1, 0): 3}, {(2, 0, 0): 1, (0, 2, 0): 100, (1, 0, 1): 5}))
    assert fiber_degree(spec, None, s) == 2


def test_positive_dimensional_zero_locus_flagged():
    spec = SplitBundleSpec(2, (1, 2))
    line = {(1, 0, 0): 1, (0, 0, 1): 4}
    # second form is a multiple of the first
    quad = {(2, 0, 0): 1, (1, 0, 1): 4, (1, 1, 0): 7, (0, 1, 1): 28}
    assert fiber_degree(spec, None, SectionTuple((line, quad))) is None


def test_section_must_be_in_span():
    spec = SplitBundleSpec(2, (1, 1))
    rng = random.Random(4)
    V, _ = random_section_space(spec, rng)
    outsider = SectionTuple((linear([1, 0, 0]), linear([0, 1, 0])))
    if not check_independent(spec, V + [outsider]):
        pytest.skip("random V happens to contain the test section")
    with pytest.raises(ValueError):
        fiber_degree(spec, V, outsider)


def test_enumeration_matches_pointwise_evaluation():
    p = 7
    pts = projective_points(3, p)
    assert len(pts) == p * p + p + 1
    form = {(2, 0, 0): 3, (0, 1, 1): 5, (1, 0, 1): 1}
    fast = eval_form_many(form, pts, p)
    assert [int(v) for v in fast] == [eval_form(form, tuple(int(c) for c in x), p) for x in pts]


def test_enumerate_counts_two_lines():
    spec = SplitBundleSpec(2, (1, 1), p=11)
    s = SectionTuple((linear([1, 0, 0]), linear([0, 1, 0])))
    assert fiber_degree(spec, None, s, method="enumerate") == 1


@pytest.mark.parametrize("twists", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_draws_consistent(twists):
    spec = SplitBundleSpec(2, twists)
    for d in run_playground(spec, 4, 5, points=30):
        assert d.violations() == []
        assert d.fiber_rule_ok
        assert d.restrict_resultant == d.expected
        assert 1 <= d.enumerated <= d.restrict_resultant


def test_p3_draw_uses_rational_point_bound():
    d = run_draw(SplitBundleSpec(3, (1, 1, 1), p=31), seed=8, points=20)
    assert d.restrict_resultant is None
    assert d.enumerated == 1
    assert d.violations() == []


def test_run_is_deterministic():
    spec = SplitBundleSpec(2, (1, 2))
    a = [d.to_dict() for d in run_playground(spec, 3, 11, points=20)]
    b = [d.to_dict() for d in run_playground(spec, 3, 11, points=20, jobs=2)]
    assert a == b
