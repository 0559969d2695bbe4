from pathlib import Path

import pytest

from banglish_demand.catalog import DeviceCatalog, load_catalog

FIXTURES = Path(__file__).parent / "fixtures"
PIPELINE = FIXTURES / "pipeline"


@pytest.fixture(scope="session")
def phone_catalog() -> DeviceCatalog:
    return load_catalog(FIXTURES / "phone_list.csv")


@pytest.fixture
def small_catalog() -> DeviceCatalog:
    return DeviceCatalog.from_models(["iPhone XS", "Galaxy S20"])


_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(report.user_properties).get("detail", "")
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append(("PASS" if report.passed else "FAIL", name, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for verdict, name, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name}  {detail}")
