import shutil
from pathlib import Path

import pytest

from flcover.cli import main
from flcover.formats import format_algebra, load_document, parse_document
from flcover.fixtures import bool2, heyting3, luk3

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def data(tmp_path):
    for f in DATA.glob("*.flc"):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


def run(capsys, *argv):
    capsys.readouterr()
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("kind, name", [("algebra", "bool2"), ("algebra", "luk3"), ("algebra", "heyt3"),
                                        ("cover", "cov2"), ("cover", "rcov1m"), ("cover", "bool2_cover"),
                                        ("model", "bool2_model"), ("model", "luk3_model")])
def test_sample_files_pass(data, capsys, kind, name):
    code, out = run(capsys, "check", kind, data / f"{name}.flc")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0].startswith("# flc check")
    assert any(line.startswith("# input sha256=") for line in lines)
    assert any(line.startswith("# result=PASS") for line in lines)
    assert all(line.endswith("PASS") for line in lines if line.startswith("CHECK"))


def test_failed_check_exits_one_with_witness(tmp_path, capsys):
    f = tmp_path / "bad.flc"
    f.write_text(format_algebra(luk3().replace(bang=(0, 1, 2))))
    code, out = run(capsys, "check", "algebra", f)
    assert code == 1
    assert "CHECK s4 FAIL witness=(h,h)" in out.out.splitlines()
    assert "# result=FAIL" in out.out


def test_missing_file_and_wrong_block_exit_two(tmp_path, capsys):
    assert run(capsys, "check", "algebra", tmp_path / "nothing.flc")[0] == 2
    f = tmp_path / "a.flc"
    f.write_text(format_algebra(bool2()))
    assert run(capsys, "check", "cover", f)[0] == 2


def test_non_lattice_order_exits_one(tmp_path, capsys):
    f = tmp_path / "v.flc"
    f.write_text("[algebra V]\nelements = a b\nunit = a\nfusion:\n  a*a = a\n  a*b = b\n  b*a = b\n  b*b = b\n")
    code, out = run(capsys, "check", "algebra", f)
    assert code == 1
    assert "FAIL" in out.out


def test_represent_then_prop_recovers_the_algebra(data, tmp_path, capsys):
    cover = tmp_path / "canon.flc"
    code, out = run(capsys, "represent", data / "luk3.flc", "--verify", "--out", cover)
    assert code == 0
    assert "CHECK represent-strong PASS" in out.out
    assert run(capsys, "check", "cover", cover)[0] == 0
    alg = tmp_path / "prop.flc"
    assert run(capsys, "prop", cover, "--out", alg)[0] == 0
    assert load_document(alg).find("algebra").value.n == 3


def test_prop_refuses_a_cover_without_fusion(data, tmp_path, capsys):
    assert run(capsys, "prop", data / "cov2.flc", "--out", tmp_path / "x.flc")[0] == 1
    assert not (tmp_path / "x.flc").exists()


def test_eval(data, capsys):
    model = data / "bool2_model.flc"
    assert run(capsys, "eval", model, "-f", "?P(u)")[1].out.strip() == "{bot}"
    assert run(capsys, "eval", model, "-f", "T")[1].out.strip() == "{bot,top}"
    assert run(capsys, "eval", model, "-f", "P(u)", "--at", "top")[1].out.strip() == "false"
    code, out = run(capsys, "eval", model, "-f", "P(v0)", "--closed-instances")
    assert code == 0 and out.out.strip() == "P(u): {bot}"
    assert run(capsys, "eval", model, "-f", "P(v0)")[0] == 1
    assert run(capsys, "eval", model, "-f", "P(u) &")[0] == 2
    assert run(capsys, "eval", model, "-f", "P(u, u)")[0] == 1
    assert run(capsys, "eval", model, "-f", "T", "--at", "nowhere")[0] == 1


@pytest.mark.parametrize("make, verdict", [(bool2, "true"), (luk3, "true"), (heyting3, "false")])
def test_classical(tmp_path, capsys, make, verdict):
    f = tmp_path / "a.flc"
    f.write_text(format_algebra(make()))
    code, out = run(capsys, "classical", f)
    assert code == 0
    assert out.out.splitlines() == [f"classical-fl {verdict}", f"grishin {verdict}", f"classical {verdict}"]


def test_search_output_reparses(capsys):
    code, out = run(capsys, "search", "--size", "2", "--predicate", "modal-fl")
    assert code == 0
    assert out.out.splitlines()[-1] == "# count=2"
    doc = parse_document(out.out)
    assert len(doc.of_kind("algebra")) == 2


def test_search_errors(capsys):
    assert run(capsys, "search", "--size", "9")[0] == 2
    assert run(capsys, "search", "--size", "2", "--predicate", "s1 &")[0] == 2
    code, out = run(capsys, "search", "--size", "3", "--predicate", "s1..s4 & !s5")
    assert code == 0 and out.out.strip() == "# count=0"
