from pathlib import Path

import pytest

from amalgext.cli import main, run
from amalgext.instfile import ParseError, ValidationError, parse, parse_text

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
ALL_FIXTURES = ["d-infinity.amg", "psl2z.amg", "sl2z.amg", "psl2z-f5.amg", "sl2z-f5.amg"]


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def test_all_bundled_fixtures_parse_and_validate():
    for name in ALL_FIXTURES:
        inst = parse(fixture(name))
        built = inst.build()
        assert built.datum.K1.order >= 1
        assert built.name == name[:-4]


def test_sl2z_fixture_matches_programmatic_datum(sl2z):
    built = parse(fixture("sl2z.amg")).build()
    d = built.datum
    assert d.K1.order == 4 and d.K2.order == 6 and d.I.order == 2
    assert list(d.emb1.mapping) == list(sl2z.emb1.mapping)
    assert list(d.emb2.mapping) == list(sl2z.emb2.mapping)
    std = built.grep("std2")
    assert std.dim == 2


def test_non_homomorphic_embedding_reports_line_and_pair(tmp_path):
    bad = tmp_path / "bad.amg"
    bad.write_text(
        "[instance]\n"
        "name = broken\n"
        "characteristic = 2\n"
        "[group K1]\n"
        "perm a = 1 2 3 0\n"
        "[group K2]\n"
        "perm b = 1 2 3 4 5 0\n"
        "[subgroup I]\n"
        "perm z = 1 0\n"
        "embed K1 = 0 1\n"
        "embed K2 = 0 3\n"
    )
    with pytest.raises(ValidationError) as err:
        parse(str(bad))
    assert "line 10" in str(err.value)
    assert "(z, z)" in str(err.value)


def test_parse_errors_carry_line_numbers(tmp_path):
    with pytest.raises(ParseError) as err:
        parse_text("[instance]\nname = x\ncharacteristic = 4\n")
    assert "characteristic 4 is not prime" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_text("[instance\n")
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_text("noise\n")
    assert "line 1" in str(err.value)


def test_grep_block_invalid_in_overridden_characteristic():
    inst = parse(fixture("d-infinity.amg"))
    # flip2 uses -1 entries, so it stays valid in characteristic 3 as well
    built = inst.build(3)
    assert built.grep("flip2").dim == 2


def test_cli_validate_ok_exit_zero(capsys):
    assert main(["validate", fixture("psl2z.amg")]) == 0
    out = capsys.readouterr().out
    assert "RESULT: PASS" in out
    assert out.startswith("# amalgext report format 1")


def test_cli_missing_file_exit_two():
    code, text = run(["validate", "no-such-file.amg"])
    assert code == 2
    assert "error" in text


def test_cli_invalid_file_exit_two(tmp_path):
    bad = tmp_path / "bad.amg"
    bad.write_text("[instance]\nname = x\ncharacteristic = 2\n")
    code, text = run(["validate", str(bad)])
    assert code == 2
    assert "error" in text


def test_cli_unknown_grep_exit_two():
    code, text = run(["les", fixture("psl2z.amg"), "--v1", "nope", "--v2", "triv"])
    assert code == 2
    assert "nope" in text


def test_cli_les_command_passes():
    code, text = run(["les", fixture("sl2z.amg"), "--char", "2", "--degree", "5",
                      "--v1", "triv", "--v2", "triv"])
    assert code == 0
    assert "long exact sequence: PASS" in text
    assert text.count("FAIL") == 0


def test_cli_mv_check_passes():
    code, text = run(["mv-check", fixture("d-infinity.amg"), "--char", "2", "--radius", "3"])
    assert code == 0
    assert "injective: PASS" in text
    assert "middle exact: PASS" in text
    assert "surjective: PASS" in text


def test_cli_tree_reports_degrees_and_writes_dot(tmp_path):
    dot = tmp_path / "out.dot"
    code, text = run(["tree", fixture("sl2z.amg"), "--radius", "3", "--dot", str(dot)])
    assert code == 0
    assert "interior K1 degrees: [2]" in text
    assert "interior K2 degrees: [3]" in text
    content = dot.read_text()
    assert content.startswith("graph tree_ball {")
    code2, text2 = run(["tree", fixture("sl2z.amg"), "--radius", "3", "--dot", str(dot)])
    assert content == dot.read_text()


def test_cli_chain_command():
    code, text = run(["chain", fixture("psl2z.amg"), "--radius", "4"])
    assert code == 0
    assert "H_1 = 0: PASS" in text and "H_0 = k: PASS" in text


def test_cli_ext_over_each_group():
    for over, expected in (("G", "ext_G: 1 2 2 2"), ("K1", "ext_K1: 1 1 1 1"),
                           ("I", "ext_I: 1 0 0 0")):
        code, text = run(["ext", fixture("d-infinity.amg"), "--degree", "3", "--over", over])
        assert code == 0
        assert expected in text


def test_cli_char_override_runs_f3_checks():
    code, text = run(["les", fixture("sl2z.amg"), "--char", "3", "--degree", "4"])
    assert code == 0
    assert "characteristic: 3" in text


def test_cli_reports_byte_identical_across_runs():
    args = ["les", fixture("sl2z.amg"), "--degree", "4", "--v1", "std2", "--v2", "std2"]
    out1 = run(args)
    out2 = run(args)
    assert out1 == out2
    args = ["mv-check", fixture("sl2z-f5.amg"), "--radius", "3", "--grep", "std2"]
    assert run(args) == run(args)


def test_cli_out_file_matches_stdout(tmp_path):
    out = tmp_path / "report.txt"
    code, text = run(["chain", fixture("sl2z.amg"), "--radius", "2", "--out", str(out)])
    assert code == 0
    assert out.read_text() == text
