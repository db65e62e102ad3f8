from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def positive_rationals(max_num=30, max_den=12):
    return st.builds(
        Fraction,
        st.integers(min_value=1, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def rational_sequences(min_size=1, max_size=12):
    return st.lists(positive_rationals(), min_size=min_size, max_size=max_size).map(tuple)


# acceptance criteria append (criterion id, passed, detail) here
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(ACCEPTANCE_LINES, key=lambda t: int(t[0].split()[-1])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {cid}: {detail}")
