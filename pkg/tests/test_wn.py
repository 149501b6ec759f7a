import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import Derivation, as_pairs, supercommutator, supercommutator_acts_as_derivation
from wncohom.wn import (RankMismatch, UnsupportedRank, WBasisElement, WElement, beta, build_wn,
                        check_subalgebra_closure, diagonal, lambda_basis, parse_basis_element, root_system,
                        span_of, stabilizer_matches_torus, subalgebra, verify_beta_fiber)


def basis_strategy(n):
    return st.sampled_from(build_wn(n).basis)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dimensions(n):
    alg = build_wn(n)
    assert alg.dim == n * 2 ** n
    assert alg.graded_dims() == {k: n * comb(n, k + 1) for k in range(-1, n)}


def test_rank_one_is_rejected():
    with pytest.raises(UnsupportedRank):
        build_wn(1)


def test_parse_round_trip():
    for b in build_wn(3).basis:
        assert parse_basis_element(str(b)) == b
    assert parse_basis_element("xi{1,3}d2") == WBasisElement.make((1, 3), 2)
    with pytest.raises(ValueError):
        parse_basis_element("xi{1,1}d2")


def test_element_arithmetic_and_grading():
    x = WElement.parse(3, "2*xi{1,2}d3 - xi{2,3}d1")
    assert x.parity() == 1 and x.z_degree() == 1
    assert (x - x).is_zero()
    with pytest.raises(RankMismatch):
        build_wn(2).bracket(WElement.basis(2, (), 1), WElement.basis(3, (), 1))


@pytest.mark.parametrize("n", [2, 3])
def test_bracket_matches_independent_operator_model(n):
    alg = build_wn(n)
    for a, b in itertools.product(alg.basis, repeat=2):
        got = {(k.I, k.i): Fraction(v) for k, v in alg.bracket_basis(a, b).items() if v}
        want = as_pairs(supercommutator(Derivation.basis(n, a.I, a.i), Derivation.basis(n, b.I, b.i)))
        assert got == want, (a, b)


@given(basis_strategy(4), basis_strategy(4))
def test_bracket_matches_oracle_at_rank_four(a, b):
    got = {(k.I, k.i): Fraction(v) for k, v in build_wn(4).bracket_basis(a, b).items() if v}
    assert got == as_pairs(supercommutator(Derivation.basis(4, a.I, a.i), Derivation.basis(4, b.I, b.i)))


@given(basis_strategy(3), basis_strategy(3))
def test_commutator_is_a_derivation(a, b):
    assert supercommutator_acts_as_derivation(Derivation.basis(3, a.I, a.i), Derivation.basis(3, b.I, b.i))


@given(basis_strategy(3), basis_strategy(3))
def test_bracket_respects_grading(a, b):
    alg = build_wn(3)
    for c in alg.bracket_basis(a, b):
        assert c.z_degree == a.z_degree + b.z_degree
        assert c.parity == (a.parity + b.parity) % 2
        assert c.weight(3) == tuple(x + y for x, y in zip(a.weight(3), b.weight(3)))


def test_euler_field_measures_degree():
    alg = build_wn(3)
    E = sum((alg.element((i,), i) for i in range(2, 4)), alg.element((1,), 1))
    for b in alg.basis:
        assert alg.bracket(E, WElement(3, {b: 1})) == b.z_degree * WElement(3, {b: 1})


def test_lambda_basis_size():
    assert len(lambda_basis(4)) == 16


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("name", ["g0", "b0", "b_max", "b_min", "f", "f_tilde", "g_plus"])
def test_named_subalgebras_close(n, name):
    assert check_subalgebra_closure(subalgebra(n, name)).closed


def test_detecting_dimensions():
    for n in (2, 3, 4):
        assert subalgebra(n, "f").dim == 2 * n
        assert subalgebra(n, "f_tilde").dim == 2 * n - 1


def test_span_of_generates_g0_from_simple_roots():
    alg = build_wn(3)
    gens = [alg.element((i,), i + 1) for i in (1, 2)] + [alg.element((i + 1,), i) for i in (1, 2)]
    assert span_of(gens).dim == 8  # sl(3) only: the trace lies outside the derived algebra


def test_beta_requires_degrees():
    alg = build_wn(2)
    with pytest.raises(ValueError):
        beta(alg.element((1,), 1), alg.element((1, 2), 1))


@pytest.mark.parametrize("n", [2, 3])
def test_beta_fibre(n):
    assert verify_beta_fiber(diagonal(n, range(1, n + 1))).passed
    rep = verify_beta_fiber(diagonal(n, range(n)))
    assert rep.case == "c1-zero" and rep.passed


def test_beta_on_a_family_member_by_hand():
    # x = ∂_1 + 3 ξ_1ξ_2∂_2 gives β(x) = 3 ξ_2∂_2 at n = 2
    alg = build_wn(2)
    xm, xp = alg.element((), 1), 3 * alg.element((1, 2), 2)
    assert beta(xm, xp) == 3 * alg.element((2,), 2)


@pytest.mark.parametrize("n", [2, 3])
def test_stabiliser(n):
    assert stabilizer_matches_torus(n, list(range(n)))


def test_root_multiplicities_sum_to_dimension():
    roots = root_system(3)
    assert sum(r.multiplicity for r in roots) == build_wn(3).dim
    assert sum(r.simple for r in roots) == 2
