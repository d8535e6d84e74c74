import datetime

import pytest

from ldforecast.config import default_config
from ldforecast.data import ForecastDataset
from ldforecast.templates import default_templates


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true", default=False,
                     help="rewrite the frozen golden forecasts instead of comparing")


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


@pytest.fixture(scope="session")
def config():
    return default_config()


@pytest.fixture(scope="session")
def templates():
    return default_templates("en")


@pytest.fixture
def make_dataset():
    def make(sky=None, wind=None, tmax=None, tmin=None, municipality_id="36038"):
        return ForecastDataset(
            municipality_id=municipality_id,
            issue_date=datetime.date(2013, 12, 9),
            sky=tuple(sky or [101] * 12),
            wind=tuple(wind or [299] * 12),
            tmax=tuple(tmax or [15, 15, 15, 15]),
            tmin=tuple(tmin or [7, 7, 7, 7]),
        )

    return make


# one PASS/FAIL line per acceptance criterion at the end of the run
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items(), key=lambda kv: _order(kv[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


def _order(name):
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if name.startswith("test_ac") else ""
    return (int(digits) if digits else 99, name)
