import pytest
import yaml

from qgroup.cli import main


def test_enumerate_order_check_word(tmp_path, capsys):
    out = tmp_path / "we7.npz"
    assert main(["enumerate", "--catalog", "WE7", "--subgroup", "a,b,c,d,e,c'", "--out", str(out)]) == 0
    assert "index: 56" in capsys.readouterr().out
    assert main(["order", "--table", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "2903040"
    assert main(["check-word", "--table", str(out), "--word", "(cc'bdeae')^9"]) == 0
    text = capsys.readouterr().out
    assert "order: 2" in text and "central: yes" in text
    assert main(["check-word", "--table", str(out), "--word", "a^"]) == 2


def test_enumerate_presentation_file(tmp_path, capsys):
    f = tmp_path / "d4.pres"
    f.write_text("graph: Y_111\n")
    assert main(["enumerate", "--presentation", str(f), "--subgroup", "b,c", "--strategy", "felsch"]) == 0
    assert "index: 32" in capsys.readouterr().out
    assert main(["enumerate", "--presentation", str(f), "--max-cosets", "5"]) == 3


def test_verify_exit_codes(tmp_path, capsys):
    assert main(["verify", "q999"]) == 2
    assert main(["verify", "q221-tc", "--report", str(tmp_path / "r.yaml")]) == 0
    assert yaml.safe_load((tmp_path / "r.yaml").read_text())["values"]["index"] == 5632
    assert main(["verify", "q111", "--max-cosets", "1000"]) == 3
    assert main(["verify", "u6-order"]) == 1


def test_verify_report_to_stdout(capsys):
    assert main(["verify", "q111-star", "--report", "-", "--timings"]) == 0
    doc = yaml.safe_load(capsys.readouterr().out)
    assert doc["scenario"] == "q111-star" and "timings" in doc


def test_u6(capsys):
    assert main(["u6", "--complete-diagram", "eo"]) == 0
    out = capsys.readouterr().out
    assert "v1+v3+w v6" in out and "1 class(es)" in out
    assert main(["u6", "--check-assignment"]) == 0
    assert "scalar" in capsys.readouterr().out
    assert main(["u6", "--check-assignment", "--e-form", "printed"]) == 1


def test_nsub_verify(capsys):
    assert main(["nsub", "verify", "--variant", "rel1", "--report", "-"]) == 1
    doc = yaml.safe_load(capsys.readouterr().out)
    assert doc["scenario"] == "nsub-verify-rel1"


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["enumerate"])
