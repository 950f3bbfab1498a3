from fractions import Fraction

from hypothesis import strategies as st

from ratwave.laurent import LaurentPoly

# filled by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def fractions(bound=100):
    return st.builds(
        Fraction,
        st.integers(-bound, bound),
        st.integers(1, bound),
    )


@st.composite
def laurent_polys(draw, min_exp=-4, max_len=6, bound=50):
    lo = draw(st.integers(min_exp, 4))
    coeffs = draw(st.lists(fractions(bound), max_size=max_len))
    return LaurentPoly(coeffs, lo)


@st.composite
def polys_nonzero_constant(draw, max_deg=5):
    c0 = draw(fractions(50).filter(lambda f: f != 0))
    rest = draw(st.lists(fractions(50), max_size=max_deg))
    return LaurentPoly([c0] + rest, 0)
