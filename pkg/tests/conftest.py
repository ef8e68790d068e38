import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sdcodes.classify import classify_chain  # noqa: E402
from sdcodes.cli import fixture_path  # noqa: E402
from sdcodes.gf2core import read_matrix  # noqa: E402

FIXTURE_AUT = (6, 9, 12, 14, 18, 21, 24, 36, 144, 168, 216, 342, 504)


@pytest.fixture(scope="session")
def corpus():
    """Complete classifications for n = 2, 4, ..., 16, keyed by n."""
    return classify_chain(16)


@pytest.fixture(scope="session")
def corpus_codes(corpus):
    return [e.code for n in sorted(corpus) for e in corpus[n].entries]


@pytest.fixture(scope="session")
def c38_matrices():
    return {a: read_matrix(fixture_path(f"c38_{a}.txt")) for a in FIXTURE_AUT}


@pytest.fixture(scope="session")
def sextremal_matrices():
    return [read_matrix(fixture_path(f"c38_s{i}.txt")) for i in (1, 2)]


@pytest.fixture(scope="session")
def brute_codes():
    """Every self-dual code of length n <= 10 by exhaustive enumeration."""
    import oracles

    return {n: oracles.all_self_dual_codes(n) for n in range(2, 11, 2)}


def pytest_terminal_summary(terminalreporter):
    from _acceptance_log import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in lines:
            terminalreporter.write_line(ln)
