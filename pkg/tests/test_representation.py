import pytest

from corpus import enumerated
from flcover.cover import check_modal_fl_cover, diamond, j, prop_algebra
from flcover.errors import PreconditionError
from flcover.fixtures import algebra_fixtures, bool2, luk3
from flcover.negation import neg_left
from flcover.representation import canonical_cover_system, verify_representation, verify_strong


def named(S, X):
    return sorted(S.names[x] for x in X)


def test_canonical_bool2_components():
    S = canonical_cover_system(bool2())
    bot, top = S.index("bot"), S.index("top")
    assert named(S, S.I) == ["bot", "top"]
    assert S.R == frozenset({(bot, bot), (bot, top), (top, top)})
    assert named(S, S.zero) == ["bot"]
    assert named(S, j(S, set())) == ["bot"]
    assert named(S, diamond(S, {bot})) == ["bot"]
    assert named(S, neg_left(S, {bot})) == ["bot", "top"]
    assert named(S, neg_left(S, S.points)) == ["bot"]


def test_canonical_preorder_reverses_the_lattice():
    A = luk3()
    S = canonical_cover_system(A)
    for a in range(A.n):
        for b in range(A.n):
            assert S.preorder.leq(a, b) == A.leq(b, a)


@pytest.mark.parametrize("A", algebra_fixtures(), ids=lambda A: A.name)
def test_principal_up_sets_are_the_propositions(A):
    S = canonical_cover_system(A)
    assert check_modal_fl_cover(S).ok
    props = prop_algebra(S).props
    assert sorted(props, key=sorted) == sorted((S.preorder.up(a) for a in range(A.n)), key=sorted)


def test_representation_reports_every_clause():
    rep = verify_representation(luk3())
    assert rep.ok
    for clause in ("eq6-bang", "eq7-quest", "eq8-bang-join", "bijection", "residuals"):
        assert rep[clause].passed


def test_corpus_representations_are_strong():
    for A in enumerated("modal-fl"):
        assert verify_strong(A), A.name


def test_algebra_without_storage_is_rejected():
    with pytest.raises(PreconditionError):
        canonical_cover_system(luk3().replace(bang=(0, 1, 2)))
