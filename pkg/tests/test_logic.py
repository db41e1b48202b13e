import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import bool2_model, luk3_model
from flcover.cover import is_proposition
from flcover.errors import ArityError, FreeVariable, ParseError, PreconditionError, UnknownSymbol
from flcover.logic import (And, Atom, Bot, Elem, Exists, Forall, ImpL, ImpR, Model, NegL, NegR, One, Or,
                           Quest, Signature, Top, Var, format_formula, free_variables, is_true,
                           parse_formula, random_formula, satisfies, substitute, truth_set)
from flcover.negation import neg_left, neg_right
from flcover.representation import canonical_cover_system
from flcover.fixtures import bool2

SIG = Signature(("c",), (("p", 0), ("q", 0), ("P", 1), ("Q", 2)))
U = ("u", "w")


def P(t):
    return Atom("P", (t,))


def names(S, X):
    return sorted(S.names[x] for x in X)


def test_substitution():
    u = Elem("u")
    assert substitute(P(Var("v0")), "v0", u) == P(u)
    bound = Forall("v0", P(Var("v0")))
    assert substitute(bound, "v0", u) == bound
    phi = And(P(Var("v0")), Exists("v1", Atom("Q", (Var("v0"), Var("v1")))))
    assert substitute(phi, "v0", u) == And(P(u), Exists("v1", Atom("Q", (u, Var("v1")))))


def test_free_variables():
    phi = parse_formula("forall x. Q(x, v3) & P(c)", SIG, U)
    assert free_variables(phi) == frozenset({"v3"})


def test_negations_desugar():
    assert NegL(Top()) == ImpL(Top(), parse_formula("0", SIG))
    assert parse_formula("negr negl p", SIG) == NegR(NegL(Atom("p")))


def test_precedence_and_associativity():
    p, q = Atom("p"), Atom("q")
    assert parse_formula("p & q | p ->l q ->r p", SIG) == ImpL(Or(And(p, q), p), ImpR(q, p))
    assert parse_formula("?!p & q", SIG) == And(Quest(parse_formula("!p", SIG)), q)
    assert parse_formula("p | (exists x. P(x)) | q", SIG) == Or(Or(p, Exists("x", P(Var("x")))), q)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as e:
        parse_formula("p & ", SIG)
    assert e.value.pos == 4
    with pytest.raises(ParseError):
        parse_formula("p $ q", SIG)
    with pytest.raises(UnknownSymbol):
        parse_formula("R(c)", SIG)
    with pytest.raises(UnknownSymbol):
        parse_formula("P(zz)", SIG, U)
    with pytest.raises(ArityError):
        parse_formula("Q(c)", SIG)
    with pytest.raises(ParseError):
        parse_formula("forall c. P(c)", SIG)


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_print_then_parse_is_identity(seed):
    phi = random_formula(random.Random(seed), SIG, U, max_depth=5)
    assert parse_formula(format_formula(phi), SIG, U) == phi


def test_bool2_model_truth_sets():
    M = bool2_model()
    S = M.system
    u = Elem("u")
    assert names(S, truth_set(M, Quest(P(u)))) == ["bot"]
    assert names(S, truth_set(M, One())) == ["bot", "top"]
    assert truth_set(M, Top()) == S.points
    assert names(S, truth_set(M, Bot())) == ["bot"]


def test_bool2_model_satisfaction():
    M = bool2_model()
    assert satisfies(M, "top", Top())
    assert satisfies(M, "bot", Bot()) and not satisfies(M, "top", Bot())
    assert is_true(M, Top())
    assert not is_true(M, P(Elem("u")))
    assert is_true(M, P(Var("v0"))) == is_true(M, P(Elem("u")))


def test_open_formula_has_no_truth_set():
    with pytest.raises(FreeVariable):
        truth_set(bool2_model(), P(Var("v0")))


def test_quantifiers_are_substitutional():
    M = luk3_model()
    S = M.system
    x = Var("x")
    assert truth_set(M, Forall("x", P(x))) == truth_set(M, P(Elem("u"))) & truth_set(M, P(Elem("w")))
    assert names(S, truth_set(M, Exists("x", P(x)))) == ["0", "1", "h"]


def test_model_rejects_non_propositions():
    S = canonical_cover_system(bool2())
    with pytest.raises(PreconditionError):
        Model(S, ("u",), {}, {"P": {("u",): {S.index("top")}}})
    with pytest.raises(PreconditionError):
        Model(S, (), {}, {})


@settings(max_examples=100)
@given(st.sampled_from([bool2_model(), luk3_model()]), st.integers(0, 2**32 - 1))
def test_truth_sets_are_propositions_and_negations_are_orthogonals(M, seed):
    sig = M.signature
    phi = random_formula(random.Random(seed), sig, M.universe, max_depth=4, closed=True)
    X = truth_set(M, phi)
    assert is_proposition(M.system, X)
    assert truth_set(M, NegL(phi)) == neg_left(M.system, X)
    assert truth_set(M, NegR(phi)) == neg_right(M.system, X)
