import pytest
from hypothesis import given, strategies as st

from flcover.errors import ComplexityBound, OrderError
from flcover.order import (FiniteLattice, FinitePreorder, check_lattice, check_preorder, down_closure,
                           format_set, is_up_set, lattice_join, small_subsets, subsets, up_closure,
                           up_sets)


def n5():
    return FiniteLattice.generated(["bot", "a", "b", "c", "top"], [(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)])


@st.composite
def preorders(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return FinitePreorder.generated([f"p{i}" for i in range(n)], pairs)


@st.composite
def preorder_and_set(draw):
    P = draw(preorders())
    X = draw(st.frozensets(st.integers(0, P.size - 1)))
    return P, X


def test_generated_closure_is_a_preorder():
    P = FinitePreorder.generated(["a", "b", "c"], [(0, 1), (1, 2)])
    assert P.leq(0, 2) and P.leq(1, 1)
    assert check_preorder(P).ok


def test_raw_relation_is_kept_and_checked():
    P = FinitePreorder(["a", "b", "c"], [(0, 1), (1, 2)])
    rep = check_preorder(P)
    assert not rep["reflexivity"].passed
    assert rep["transitivity"].witnesses[0] == ("a", "b", "c")


def test_chain_lattice_operations():
    L = FiniteLattice.chain(["0", "h", "1"])
    assert L.join(0, 2) == 2 and L.meet(1, 2) == 1
    assert L.bottom == 0 and L.top == 2
    assert L.join_all([]) == 0 and L.meet_all([]) == 2


def test_non_distributive_lattice():
    L = n5()
    assert L.join(1, 3) == 4
    assert L.meet(2, 3) == 0
    # b ^ (a v c) = b but (b ^ a) v (b ^ c) = a
    assert L.meet(2, L.join(1, 3)) == 2
    assert L.join(L.meet(2, 1), L.meet(2, 3)) == 1


def test_lattice_rejects_non_lattices():
    with pytest.raises(OrderError):
        FiniteLattice.generated(["a", "b"], [])
    rep = check_lattice(FinitePreorder.generated(["x", "y", "z", "w"], [(0, 2), (0, 3), (1, 2), (1, 3)]))
    assert not rep.ok
    assert not rep["join"].passed and not rep["bottom"].passed


def test_antisymmetry_failure_is_reported():
    rep = check_lattice(FinitePreorder.generated(["a", "b"], [(0, 1), (1, 0)]))
    assert rep["antisymmetry"].witnesses == [("a", "b")]


def test_reversed_swaps_up_and_down():
    L = FiniteLattice.chain(["0", "h", "1"])
    R = L.reversed()
    assert R.up(1) == L.down(1) == frozenset({0, 1})


def test_generators_recover_the_order():
    L = n5()
    assert FinitePreorder.generated(L.names, L.generators()) == FinitePreorder(L.names, L.pairs)


def test_subset_enumeration():
    assert len(list(subsets(4))) == 16
    assert list(subsets(2)) == [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
    assert sum(1 for _ in small_subsets(5, 2)) == 1 + 5 + 10
    with pytest.raises(ComplexityBound):
        list(subsets(17))


def test_up_sets_of_a_chain():
    L = FiniteLattice.chain(["0", "h", "1"])
    assert sorted(map(sorted, up_sets(L))) == [[], [0, 1, 2], [1, 2], [2]]


def test_format_set_uses_names():
    assert format_set(("bot", "top"), {1, 0}) == "{bot,top}"
    assert format_set(("bot", "top"), ()) == "{}"


def test_lattice_join_helper():
    assert lattice_join(n5(), [1, 3]) == 4


@given(preorder_and_set())
def test_up_closure_is_a_closure_operator(arg):
    P, X = arg
    U = up_closure(P, X)
    assert X <= U
    assert up_closure(P, U) == U
    assert is_up_set(P, U)
    for Y in (U | {0}, U - {0}):
        if X <= Y:
            assert U <= up_closure(P, Y)


@given(preorder_and_set())
def test_up_and_down_closure_are_dual(arg):
    P, X = arg
    assert down_closure(P, X) == up_closure(P.reversed(), X)


@given(preorders(max_size=5))
def test_up_sets_are_exactly_the_closed_subsets(P):
    found = set(up_sets(P))
    expected = {X for X in subsets(P.size) if up_closure(P, X) == X}
    assert found == expected
