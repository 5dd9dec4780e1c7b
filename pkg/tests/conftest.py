import pytest

from prarray.gf2poly import parse


# (number, description, outcome, seconds) rows filled by the acceptance tests
ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, outcome, secs in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(f"{outcome} criterion {num} ({secs:.2f}s): {desc}")


@pytest.fixture
def sect5_polys():
    """The four degree-12 exponent-455 polynomials of the 13x35 study."""
    return {
        "f1": parse("1011101001111"),
        "f2": parse("1100101101111"),
        "f3": parse("1110001011111"),
        "f4": parse("1010011011111"),
    }


@pytest.fixture
def deg6_exp21():
    return parse("x^6+x^5+x^4+x^2+1"), parse("x^6+x^4+x^2+x+1")
