from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from khoverant.cli import load_fixtures  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[int, tuple[str, bool, float, str]] = {}


@pytest.fixture(scope="session")
def registry():
    return load_fixtures()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, secs, note = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d  %s  %-58s %7.2f s  %s"
                                    % (k, "PASS" if ok else "FAIL", title, secs, note))


def braid_pd(word: list[int], strands: int) -> str:
    """PD text of a braid closure.

    ``word`` lists generators ``+k`` / ``-k`` (1-based).  Strands run left to
    right, position 1 at the bottom; ``+k`` puts the strand falling from
    position ``k + 1`` over, which makes the crossing positive.
    """
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    quads = []
    for g in word:
        k = abs(g) - 1
        a, b = cur[k], cur[k + 1]
        a2, b2 = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # under strand rises from lower left (a) to upper right (b2)
            quads.append((a, a2, b2, b))
        else:
            # under strand falls from upper left (b) to lower right (a2)
            quads.append((b, a, a2, b2))
        cur[k], cur[k + 1] = a2, b2
    # close up: the last label at each position is identified with the first
    ren = {cur[p]: p + 1 for p in range(strands)}
    quads = [tuple(ren.get(v, v) for v in q) for q in quads]
    return " ".join("X(%d,%d,%d,%d)" % q for q in quads)
