from hypothesis import strategies as st

from cphi6.series import EXACT, CoeffRing, Series
from cphi6.tpoly import TPoly

RINGS = [EXACT, CoeffRing.mod3k(5), CoeffRing.mod3k(12), CoeffRing.mod3k(25)]

coef = st.integers(min_value=-10**6, max_value=10**6)


@st.composite
def series(draw, ring=None, max_len=25, min_start=-3, max_start=3):
    ring = draw(st.sampled_from(RINGS)) if ring is None else ring
    start = draw(st.integers(min_start, max_start))
    values = draw(st.lists(coef, min_size=0, max_size=max_len))
    extra = draw(st.integers(0, 3))
    return Series.from_list(ring, values, start, start + len(values) + extra)


@st.composite
def series_triples(draw):
    ring = draw(st.sampled_from(RINGS))
    return tuple(draw(series(ring=ring)) for _ in range(3))


@st.composite
def laurent_polys(draw, lo=-5, hi=5, bound=100):
    exps = draw(st.lists(st.integers(lo, hi), unique=True, max_size=hi - lo + 1))
    return TPoly({e: draw(st.integers(-bound, bound)) for e in exps})


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
