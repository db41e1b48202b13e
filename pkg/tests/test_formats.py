import pytest

from corpus import bool2_model, luk3_model
from flcover.algebra import same_tables
from flcover.cover import prop_algebra
from flcover.errors import FormatError, StructureError
from flcover.fixtures import algebra_fixtures, bool2, cov2, rcov1, rcov1_modal
from flcover.formats import (format_algebra, format_cover, format_model, format_prop_algebra,
                             load_document, parse_document)
from flcover.representation import canonical_cover_system

BOOL2_TEXT = format_algebra(bool2())


@pytest.mark.parametrize("A", algebra_fixtures(), ids=lambda A: A.name)
def test_algebra_round_trip(A):
    B = parse_document(format_algebra(A)).find("algebra").value
    assert same_tables(A, B) and B.name == A.name


@pytest.mark.parametrize("S", [cov2(), rcov1(), rcov1_modal()]
                         + [canonical_cover_system(A) for A in algebra_fixtures()], ids=lambda S: S.name)
def test_cover_round_trip(S):
    T = parse_document(format_cover(S)).find("cover").value
    assert format_cover(T) == format_cover(S)
    assert T.names == S.names and T.preorder == S.preorder
    assert (T.dot, T.epsilon, T.zero, T.I, T.R) == (S.dot, S.epsilon, S.zero, S.I, S.R)


def test_model_round_trip_in_one_document():
    for M in (bool2_model(), luk3_model()):
        text = format_cover(M.system) + "\n" + format_model(M, "M", M.system.name)
        N = parse_document(text).find("model").value
        assert N.universe == M.universe and N.predicates == M.predicates
        assert format_model(N, "M", M.system.name) == format_model(M, "M", M.system.name)


def test_prop_algebra_output_parses_back():
    P = prop_algebra(rcov1_modal())
    B = parse_document(format_prop_algebra(P)).find("algebra").value
    assert same_tables(B, P.algebra)


def test_model_may_reference_a_sibling_file(tmp_path):
    M = bool2_model()
    (tmp_path / "c.flc").write_text(format_cover(M.system))
    (tmp_path / "m.flc").write_text(format_model(M, "M", "c.flc"))
    N = load_document(tmp_path / "m.flc").find("model").value
    assert N.predicates == M.predicates


def test_comments_and_blank_lines_are_ignored():
    text = "# leading comment\n\n" + BOOL2_TEXT.replace("unit = top", "unit = top   # the unit")
    assert same_tables(parse_document(text).find("algebra").value, bool2())


@pytest.mark.parametrize("edit", [
    lambda t: t.replace("  top*top = top\n", ""),
    lambda t: t.replace("unit = top", "unit = mid"),
    lambda t: t.replace("unit = top", "unit = top\nunit = bot"),
    lambda t: t.replace("[algebra BOOL2]", "[widget BOOL2]"),
    lambda t: t.replace("bot*top = bot", "bot*top == bot"),
], ids=["missing-entry", "unknown-element", "duplicate-key", "unknown-block", "bad-line"])
def test_malformed_algebras(edit):
    with pytest.raises(FormatError):
        parse_document(edit(BOOL2_TEXT))


def test_format_errors_carry_line_numbers():
    with pytest.raises(FormatError) as e:
        parse_document(BOOL2_TEXT.replace("unit = top", "unit = mid"))
    assert e.value.line == 4


def test_non_lattice_order_is_a_structure_error():
    text = "[algebra V]\nelements = a b\nunit = a\nfusion:\n  a*a = a\n  a*b = b\n  b*a = b\n  b*b = b\n"
    with pytest.raises(StructureError) as e:
        parse_document(text)
    assert e.value.report is not None and not e.value.report.ok
