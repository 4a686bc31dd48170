import pytest

from g7hurwitz.matgroup import build_g7, lattice

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def host():
    return build_g7()


@pytest.fixture(scope="session")
def lat(host):
    return lattice(host)


@pytest.fixture(scope="session")
def named(lat):
    return dict(zip(lat.names, lat.records))


@pytest.fixture
def record_criterion(request):
    """Call with (number, title, passed, detail) once per acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
