import pytest
from hypothesis import given, settings, strategies as st

from flcover.algebra import same_tables
from flcover.cover import (CoverSystem, Extensional, LatticeJoin, check_cover_axioms,
                           check_modal_fl_cover, check_residuated_cover, covered_by, enumerate_propositions,
                           is_proposition, is_strong, j, materialize, prop_algebra, up)
from flcover.errors import PreconditionError
from flcover.fixtures import algebra_fixtures, bool2, cov2, luk3, rcov1, rcov1_modal, topological
from flcover.order import FiniteLattice, FinitePreorder, subsets, up_sets
from flcover.representation import canonical_cover_system, j_closed_form_agrees


def names(S, X):
    return sorted(S.names[x] for x in X)


def test_cov2_local_closure_and_propositions():
    S = cov2()
    assert check_cover_axioms(S).ok
    assert names(S, j(S, {1})) == ["a", "b"]
    assert names(S, j(S, {0})) == ["a"]
    assert [names(S, X) for X in enumerate_propositions(S)] == [[], ["a"], ["a", "b"]]


def test_rcov1_propositions():
    S = rcov1()
    assert check_residuated_cover(S).ok
    assert [names(S, X) for X in enumerate_propositions(S)] == [[], ["e"]]


def test_rcov1_modal_gives_the_two_element_boolean_algebra():
    S = rcov1_modal()
    assert check_modal_fl_cover(S).ok
    assert same_tables(prop_algebra(S).algebra, bool2())


def test_cover_by_an_incomparable_point_breaks_existence():
    P = FinitePreorder.discrete(["a", "b"])
    S = CoverSystem(P, Extensional.from_lists(2, [[{1}], [{1}]]))
    rep = check_cover_axioms(S)
    assert [r.check_id for r in rep.failures()] == ["existence"]
    assert rep["existence"].witnesses == [("a",)]


def test_prop_algebra_refuses_failing_systems():
    S = rcov1_modal().replace(R=frozenset())
    assert not check_modal_fl_cover(S)["R-reflexive"].passed
    with pytest.raises(PreconditionError):
        prop_algebra(S)


def test_eps_up_set_is_a_proposition():
    for A in algebra_fixtures():
        S = canonical_cover_system(A)
        assert is_proposition(S, S.preorder.up(S.epsilon))
    S = rcov1()
    assert is_proposition(S, S.preorder.up(S.epsilon))


def test_topological_cover_system():
    S = topological([set(), {"a"}, {"a", "b"}, {"b"}])
    assert S.names == ("empty", "o_a", "o_a_b", "o_b")
    assert check_cover_axioms(S).ok
    whole = S.index("o_a_b")
    assert covered_by(S, whole, {S.index("o_a"), S.index("o_b")})
    assert not covered_by(S, whole, {S.index("o_a")})
    assert covered_by(S, S.index("empty"), set())
    props = enumerate_propositions(S)
    # the proposition generated by the two halves contains their union
    assert S.preorder.up(whole) <= j(S, up(S, {S.index("o_a"), S.index("o_b")}))
    assert all(j(S, X) <= X for X in props)


@pytest.mark.parametrize("A", algebra_fixtures(), ids=lambda A: A.name)
def test_lattice_join_closed_form_matches_cover_scan(A):
    assert j_closed_form_agrees(canonical_cover_system(A))


def n5_system():
    L = FiniteLattice.generated(["bot", "a", "b", "c", "top"], [(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)])
    return CoverSystem(L.reversed(), LatticeJoin(L), name="N5")


def test_non_distributive_lattice_join_system():
    S = n5_system()
    M = materialize(S)
    assert check_cover_axioms(S).ok and check_cover_axioms(M).ok
    assert all(j(S, X) == j(M, X) for X in subsets(S.n))
    brute = enumerate_propositions(S, method="brute")
    assert brute == enumerate_propositions(S, method="closed")
    assert brute == enumerate_propositions(M)
    assert len(brute) == 5


def test_canonical_systems_are_strong():
    for A in (bool2(), luk3()):
        assert is_strong(canonical_cover_system(A))


def test_closed_form_requires_canonical_shape():
    with pytest.raises(PreconditionError):
        enumerate_propositions(cov2(), method="closed")


def systems():
    return st.sampled_from([cov2(), rcov1(), rcov1_modal(), n5_system(),
                            topological([set(), {"a"}, {"a", "b"}, {"b"}])]
                           + [canonical_cover_system(A) for A in algebra_fixtures()])


@settings(max_examples=60)
@given(systems(), st.data())
def test_j_is_a_closure_operator_on_up_sets(S, data):
    ups = list(up_sets(S.preorder))
    X = data.draw(st.sampled_from(ups))
    Y = data.draw(st.sampled_from(ups))
    jX = j(S, X)
    assert X <= jX
    assert j(S, jX) == jX
    if X <= Y:
        assert jX <= j(S, Y)
    assert j(S, X & Y) <= jX & j(S, Y)


@settings(max_examples=60)
@given(systems(), st.data())
def test_propositions_are_closed_under_meets_and_j(S, data):
    props = enumerate_propositions(S)
    X = data.draw(st.sampled_from(props))
    Y = data.draw(st.sampled_from(props))
    assert is_proposition(S, X & Y)
    assert is_proposition(S, j(S, X | Y))
