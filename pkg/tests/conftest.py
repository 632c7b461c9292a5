import pytest

from qgroup import scenarios

_REPORTS = {}


def scenario_report(name, **kw):
    """Run a scenario once per session and reuse the report."""
    key = (name, tuple(sorted(kw.items())))
    if key not in _REPORTS:
        _REPORTS[key] = scenarios.run_scenario(name, scenarios.Options(**kw))
    return _REPORTS[key]


@pytest.fixture(scope="session")
def report():
    return scenario_report
