import os
from pathlib import Path

import pytest

from hmotifs import Hypergraph
from hmotifs.synthetic import random_hypergraph

ENRON_ENV = "HMOTIFS_ENRON"
_ENRON_DEFAULT = Path(__file__).resolve().parent.parent / "data" / "email-Enron.txt"


def enron_path() -> Path | None:
    """Location of the email-Enron hyperedge list, if one is available."""
    env = os.environ.get(ENRON_ENV)
    for cand in (Path(env) if env else None, _ENRON_DEFAULT):
        if cand is not None and cand.is_file():
            return cand
    return None


@pytest.fixture
def chain():
    # {1,2},{2,3},{3,4}
    return Hypergraph.from_edges([[1, 2], [2, 3], [3, 4]])


@pytest.fixture
def closed_triple():
    return Hypergraph.from_edges([[1, 2, 3], [2, 3, 4], [3, 4, 5]])


@pytest.fixture
def small_random():
    return random_hypergraph(20, 30, 5, seed=3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(mod.TITLES):
        parts = mod.REPORT.get(c)
        if not parts:
            terminalreporter.write_line(f"criterion {c:>2} NOT RUN  {mod.TITLES[c]}")
            continue
        ok = all(v[0] for v in parts.values())
        detail = " | ".join(f"{k}: {'pass' if v[0] else 'FAIL'} - {v[1]}" for k, v in parts.items())
        terminalreporter.write_line(
            f"criterion {c:>2} {'PASS' if ok else 'FAIL'}  {mod.TITLES[c]} :: {detail}"
        )
