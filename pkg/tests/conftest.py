import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graded_posets(draw, max_rank=4, max_width=3, with_top=False):
    """Random graded posets: covers only join adjacent ranks, every element above rank 0 covers something."""
    rank = draw(st.integers(min_value=0, max_value=max_rank))
    levels = [["r0_0"]]
    for r in range(1, rank + 1):
        width = 1 if (with_top and r == rank) else draw(st.integers(1, max_width))
        levels.append([f"r{r}_{i}" for i in range(width)])
    covers = []
    for r in range(1, rank + 1):
        below = levels[r - 1]
        for y in levels[r]:
            if with_top and r == rank:
                chosen = below
            else:
                chosen = draw(st.lists(st.sampled_from(below), min_size=1, unique=True))
            covers += [(x, y) for x in chosen]
    if with_top:
        # every non-top element needs something above it
        for r in range(rank):
            for x in levels[r]:
                if not any(a == x for a, _ in covers):
                    covers.append((x, draw(st.sampled_from(levels[r + 1]))))
    elements = [e for lvl in levels for e in lvl]
    return elements, covers


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
