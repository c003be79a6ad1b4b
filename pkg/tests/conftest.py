from fractions import Fraction

from hypothesis import settings, strategies as st

from wschur.algebra import Family, Polynomial, key

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_VARS = [key(Family.X, 1), key(Family.X, 2), key(Family.A, 1), key(Family.W, 2), key(Family.V, 1)]

coefficients = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


@st.composite
def polynomials(draw, max_terms=4, max_exp=2, variables=SMALL_VARS):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {v: draw(st.integers(0, max_exp)) for v in variables}
        mono = tuple(sorted((k, e) for k, e in exps.items() if e))
        terms[mono] = terms.get(mono, 0) + draw(coefficients)
    return Polynomial(terms)


@st.composite
def nonzero_polynomials(draw, **kw):
    p = draw(polynomials(**kw))
    if p.is_zero():
        p = p + 1
    return p


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
