import itertools

from hypothesis import given, strategies as st

from wncohom.superspace import (BasisVector, WedgeBasisIndex, SuperSpace, dual, normalize_positions, wedge_act, wedge_dimension,
                                wedge_indices, wedge_power)


def space(ne, no):
    vecs = [BasisVector(f"e{k}", 0, 0, (1, 0)) for k in range(ne)] + \
           [BasisVector(f"o{k}", 1, 1, (0, 1)) for k in range(no)]
    return SuperSpace(tuple(vecs))


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 5))
def test_wedge_count_matches_closed_form(ne, no, p):
    assert len(wedge_indices(space(ne, no), p)) == wedge_dimension(ne, no, p)


def test_even_squares_vanish_odd_squares_do_not():
    V = space(1, 1)
    assert normalize_positions(V, [0, 0]) is None
    assert normalize_positions(V, [1, 1]) == (1, WedgeBasisIndex((), (1, 1)))


@given(st.permutations([0, 1, 2, 3, 4]))
def test_reordering_sign_is_a_character(perm):
    # two evens and three odds: the sign only sees transpositions of even pairs
    V = space(2, 3)
    sign, _ = normalize_positions(V, list(perm))
    evens = [x for x in perm if x < 2]
    odd_even = sum(1 for a, b in itertools.combinations(perm, 2) if a > b and not (a >= 2 and b >= 2))
    assert sign == (-1) ** odd_even
    assert len(evens) == 2


def test_wedge_power_grading_and_dual():
    V = space(2, 1)
    W = wedge_power(V, 2)
    assert W.dim == wedge_dimension(2, 1, 2)
    assert {b.weight for b in W.basis} == {(2, 0), (1, 1), (0, 2)}
    assert all(b.weight == tuple(-c for c in a.weight) for a, b in zip(V.basis, dual(V).basis))


def test_identity_acts_as_degree():
    V = space(2, 2)
    ident = {i: {i: 1} for i in range(V.dim)}
    for p in range(4):
        for idx in wedge_indices(V, p):
            assert wedge_act(V, ident, 0, idx) == ({idx: p} if p else {})
