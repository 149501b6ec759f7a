import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import gt_pattern_count, in_omega_bruteforce
from wncohom.modules import (NotDominant, UnsupportedInput, Weight, adjoint_module, atypicality, f_tilde_point,
                             kac_module, maximal_proper_submodule, omega_dominant, projective_over,
                             rank_variety_report, sample_points, ses_consistent, simple_gl_data,
                             simple_gl_module, simple_supermodule, tensor_consistent, trivial_module,
                             weyl_dimension)
from wncohom.wn import build_wn


def dominant(n, bound):
    return [lam for lam in itertools.product(range(-bound, bound + 1), repeat=n)
            if all(lam[i] >= lam[i + 1] for i in range(n - 1))]


@pytest.mark.parametrize("lam", dominant(3, 2))
def test_weyl_matches_gelfand_tsetlin_count(lam):
    assert weyl_dimension(lam) == gt_pattern_count(lam)


@pytest.mark.parametrize("lam", [(0, 0), (2, 0), (1, -1), (3, 1), (1, 0, 0), (1, 0, -1), (2, 1, 0)])
def test_gl_module_dimension_and_relations(lam):
    L0 = simple_gl_module(lam)
    assert L0.dim == gt_pattern_count(lam)
    assert L0.relation_failures() == []
    assert max(L0.weights()) == tuple(Fraction(c) for c in lam)


def test_non_dominant_weight_is_rejected():
    with pytest.raises(NotDominant):
        simple_gl_data((0, 1))


def test_weight_parsing():
    assert Weight.parse("2,-1").ints() == (2, -1)
    with pytest.raises(ValueError):
        Weight.parse("2,a")
    with pytest.raises(ValueError):
        Weight.parse("1,2,3", 2)


@pytest.mark.parametrize("lam", [(0, 0), (1, 1), (2, 0), (1, 0), (0, -1)])
def test_kac_module_is_a_module(lam):
    K = kac_module(lam)
    assert K.dim == 4 * gt_pattern_count(lam)
    assert K.relation_failures() == []


def test_kac_module_rank_three():
    K = kac_module((1, 0, 0))
    assert K.dim == 8 * 3 and K.relation_failures() == []


@pytest.mark.parametrize("lam,dim", [((0, 0), 1), ((0, -1), 3), ((1, 1), 3), ((2, 1), 5)])
def test_known_simple_dimensions(lam, dim):
    L = simple_supermodule(lam)
    assert L.dim == dim
    assert L.relation_failures() == []


def test_typical_kac_module_is_simple():
    K = kac_module((2, 0))
    assert maximal_proper_submodule(K, (2, 0)).dim == 0


@pytest.mark.parametrize("lam", dominant(2, 3))
def test_radical_detects_atypicality(lam):
    rad = maximal_proper_submodule(kac_module(lam), lam)
    assert (rad.dim > 0) == (atypicality(lam).value == "atypical")


@pytest.mark.parametrize("n", [2, 3])
def test_atypicality_closed_form(n):
    for lam in dominant(n, 4):
        a = atypicality(lam).value == "atypical"
        assert a == in_omega_bruteforce(lam) == omega_dominant(lam)


def test_adjoint_and_trivial_modules():
    assert adjoint_module(2).relation_failures() == []
    assert trivial_module(3).dim == 1


def test_constructions_stay_modules():
    K, C = kac_module((1, 1)), simple_supermodule((0, -1))
    assert K.tensor(C).relation_failures() == []
    assert C.dual().relation_failures() == []
    assert C.dual().dim == C.dim


def test_projectivity_of_small_modules():
    x = f_tilde_point(2, 1, [0])  # ∂_1, [x,x] = 0
    assert not projective_over(x, trivial_module(2))
    assert projective_over(x, kac_module((0, 0)))  # free over Λ(g_-1)


def test_projectivity_requires_odd_element():
    with pytest.raises(UnsupportedInput):
        projective_over(build_wn(2).element((1,), 1), trivial_module(2))


def test_sample_points_are_seeded():
    assert sample_points(3, 5, seed=1) == sample_points(3, 5, seed=1)
    pts = sample_points(2, 4, seed=0)
    assert pts[:3] == [(1, 0), (0, 1), (1, 1)]
    for p in pts[3:]:
        assert all(abs(c.numerator) <= 7 and c.denominator <= 7 and c for c in p)


def test_rank_variety_verdicts():
    assert rank_variety_report(trivial_module(2)).verdict == "full-variety-consistent"
    assert rank_variety_report(kac_module((0, 0))).verdict == "zero-variety-consistent"
    assert rank_variety_report(simple_supermodule((1, 1))).verdict == "full-variety-consistent"


points = st.tuples(st.fractions(-7, 7, max_denominator=7), st.fractions(-7, 7, max_denominator=7)).filter(any)


@given(points)
def test_short_exact_sequence_consistency(p):
    K = kac_module((1, 1))
    rad = maximal_proper_submodule(K, (1, 1))
    x = f_tilde_point(2, p[0], [p[1]])
    assert ses_consistent(K.submodule(rad), K, K.quotient(rad), x)


@given(points)
def test_tensor_consistency(p):
    x = f_tilde_point(2, p[0], [p[1]])
    assert tensor_consistent(simple_supermodule((0, -1)), kac_module((0, 0)), x)
