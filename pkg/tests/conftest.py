import sympy
import pytest

from igusazeta.newton import NewtonPolyhedron
from igusazeta.polynomial import parse_polynomial

EXAMPLE = "x^3 + x*y + y^2 + z^2"
A, B, C, D = (3, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 2)


def sympy_of(Z, t=None):
    """A ZetaRational with rational or sympy-field coefficients as a sympy expression."""
    t = t if t is not None else sympy.Symbol(Z.var)

    def coef(c):
        return c.as_expr() if hasattr(c, "as_expr") else sympy.Rational(c.numerator, c.denominator)

    num = sum(coef(c) * t ** k for k, c in enumerate(Z.num.coeffs))
    den = sum(coef(c) * t ** k for k, c in enumerate(Z.den_poly().coeffs))
    return num / den


def same_function(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


@pytest.fixture(scope="session")
def example():
    return parse_polynomial(EXAMPLE, 3)


@pytest.fixture(scope="session")
def example_np(example):
    return NewtonPolyhedron(example)


def face_of(np_, *verts):
    return np_._by_key[(frozenset(verts), frozenset())]


# lines from the acceptance checks, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
