import pytest
from hypothesis import given, strategies as st

from corpus import enumerated
from flcover.algebra import (AXIOMS, FLAlgebra, bucalo_equivalence, check_lemma1, check_modal_fl,
                             check_residuated_lattice, check_storage, holds, holds_all, is_modal_fl,
                             residual_left, residual_right, same_tables, troelstra_equivalence)
from flcover.errors import PreconditionError, ResidualMissing
from flcover.fixtures import algebra_fixtures, bool2, heyting3, luk3, one_element
from flcover.order import FiniteLattice
from flcover.search import enumerate_algebras

FIXTURES = {A.name: A for A in algebra_fixtures()}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_are_modal_fl_algebras(name):
    A = FIXTURES[name]
    assert check_residuated_lattice(A).ok
    assert check_storage(A).ok
    assert check_modal_fl(A).ok
    assert is_modal_fl(A)


def test_join_as_fusion_is_not_residuated():
    # a v b preserves no empty join, so the residual b =>l 0 has no candidate
    L = FiniteLattice.chain(["0", "h", "1"])
    A = FLAlgebra.from_functions(L, L.join, 0)
    rep = check_residuated_lattice(A)
    for law in ("associativity", "unit", "monotonicity"):
        assert rep[law].passed
    assert rep["residual-l"].witnesses == [("h", "0"), ("1", "0"), ("1", "h")]
    with pytest.raises(ResidualMissing):
        A.imp_l


def test_luk3_residuals():
    A = luk3()
    h, zero, one = A.index("h"), A.index("0"), A.index("1")
    assert residual_left(A, h, zero) == h
    assert residual_right(A, h, zero) == h
    assert A.neg_l(one) == zero and A.neg_l(zero) == one
    assert A.imp_l[h][h] == one


def test_heyting_residual_is_relative_pseudocomplement():
    A = heyting3()
    assert A.neg_l(A.index("h")) == A.index("0")
    assert A.imp_l[A.index("1")][A.index("h")] == A.index("h")


def test_identity_bang_on_luk3_breaks_s4():
    A = luk3().replace(bang=(0, 1, 2))
    rep = check_storage(A)
    assert [r.check_id for r in rep.failures()] == ["s4"]
    assert rep["s4"].witnesses[0] == ("h", "h")
    with pytest.raises(PreconditionError):
        check_lemma1(A)


def test_constant_zero_quest_breaks_c2():
    rep = check_modal_fl(luk3().replace(quest=(0, 0, 0)))
    assert [r.check_id for r in rep.failures()] == ["c2"]
    assert rep["c2"].witnesses == [("h",), ("1",)]


def test_bool2_quest_edit_names_c2_at_top():
    rep = check_modal_fl(bool2().replace(quest=(0, 0)))
    assert rep["c2"].witnesses == [("top",)]


def test_checks_need_their_components():
    A = bool2().replace(bang=None)
    with pytest.raises(PreconditionError):
        check_storage(A)
    with pytest.raises(PreconditionError):
        check_modal_fl(bool2().replace(zero=None))


def test_lemma1_on_fixtures():
    for A in algebra_fixtures():
        assert check_lemma1(A).ok


def test_troelstra_equivalence_on_commutative_corpus():
    corpus = [A for A in enumerated("bang-monotone | !bang-monotone") if A.is_commutative()]
    assert corpus
    for A in corpus + algebra_fixtures():
        left, right = troelstra_equivalence(A)
        assert left == right, A.name


def test_bucalo_equivalence_on_fixtures():
    for A in algebra_fixtures():
        left, right = bucalo_equivalence(A)
        assert left and right


def test_bucalo_conditions_without_monotonicity_are_weaker():
    # found by exhaustive search: ! is not monotone, (s4) fails, every listed condition holds
    L = FiniteLattice.chain(["e0", "e1", "e2"])
    A = FLAlgebra(L, ((0, 0, 0), (0, 1, 2), (0, 2, 2)), 1, 0, bang=(0, 1, 0))
    assert A.is_commutative() and check_residuated_lattice(A).ok
    assert bucalo_equivalence(A) == (False, True)
    assert not holds(A, "bang-monotone")
    assert check_storage(A)["s4"].witnesses[0] == ("e1", "e2")


def test_bucalo_with_monotonicity_matches_storage():
    for n in (2, 3):
        for A in enumerate_algebras(n, "bang-monotone | !bang-monotone"):
            if A.zero != 0 or not A.is_commutative():
                continue
            with_mono = holds_all(A, ("s1", "s2", "bucalo.3a", "bucalo.3b", "bucalo.4a",
                                      "bucalo.4b", "bang-monotone"))
            assert holds_all(A, ("s1", "s2", "s3", "s4")) == with_mono


def test_same_tables_detects_renaming():
    A = one_element()
    assert same_tables(A, A.replace(name="other"))
    assert not same_tables(bool2(), bool2().replace(quest=(0, 0)))


def test_axiom_registry_names_components():
    assert AXIOMS["c1"][1] == frozenset({"bang", "quest"})
    assert AXIOMS["associativity"][1] == frozenset()


@st.composite
def modal_algebras(draw):
    return draw(st.sampled_from(enumerated("modal-fl")))


@given(modal_algebras(), st.data())
def test_residuation_law_holds_pointwise(A, data):
    a, b, c = (data.draw(st.integers(0, A.n - 1)) for _ in range(3))
    assert A.leq(A.fuse(a, b), c) == A.leq(a, A.imp_l[b][c]) == A.leq(b, A.imp_r[a][c])


@given(modal_algebras(), st.data())
def test_bang_is_a_deflationary_idempotent_below_unit(A, data):
    a = data.draw(st.integers(0, A.n - 1))
    t = A.bang
    assert A.leq(t[a], a) and t[t[a]] == t[a] and A.leq(t[a], A.unit)
    assert A.fuse(t[a], t[a]) == t[a]
