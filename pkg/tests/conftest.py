import sys

import pytest

from mckaydiv.permcore import GroupSpec, generate_elements


@pytest.fixture(scope="session")
def s3():
    return generate_elements(GroupSpec.named("symmetric", 3))


@pytest.fixture(scope="session")
def s4():
    return generate_elements(GroupSpec.named("symmetric", 4))


@pytest.fixture(scope="session")
def agl15():
    return generate_elements(GroupSpec.from_cycles("AGL(1,5)", ["(1,2,3,4,5)", "(2,3,5,4)"]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
