from pathlib import Path

import pytest
import yaml

from qgroup import scenarios

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.yaml")), ids=lambda p: p.stem)
def test_golden_reports(path, report):
    rep = report(path.stem)
    assert yaml.safe_load(scenarios.dump_reports([rep])) == yaml.safe_load(path.read_text())


def test_registry_names():
    names = scenarios.scenario_names()
    assert len(names) == 13
    assert {"q111", "y321", "u6-order", "nsub-verify-rel3", "main-theorem-report"} <= set(names)


def test_unknown_scenario():
    with pytest.raises(scenarios.UnknownScenario):
        scenarios.run_scenario("q999")


def test_coset_limit_becomes_an_error():
    rep = scenarios.run_scenario("q111", scenarios.Options(max_cosets=1000))
    assert rep.error and not rep.passed
    assert rep.summary().startswith("ERROR")


def test_report_serialization_excludes_timings_by_default(report):
    rep = report("q221-tc")
    assert rep.timings
    assert "timings" not in rep.to_dict()
    assert "timings" in rep.to_dict(timings=True)


def test_skipped_checks_do_not_fail_a_report():
    rep = scenarios.Report("demo")
    rep.check("open question", None)
    rep.check("done", True)
    assert rep.passed
    assert [c["status"] for c in rep.to_dict()["checks"]] == ["skipped", "pass"]
    rep.check("broken", False)
    assert not rep.passed and rep.summary() == "FAIL demo: 2/3 checks pass"


def test_inputs_are_hashed(report):
    rep = report("q221-tc")
    assert set(rep.inputs) == {"catalog.yaml", "presentations/K.pres"}
    assert all(len(h) == 16 for h in rep.inputs.values())
