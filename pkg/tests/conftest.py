import itertools

import pytest

from supervenience.cli import data_file
from supervenience.model import GeneralizedModel
from supervenience.syntax import parse_model


def load(name):
    return parse_model(data_file(name).read_text())


@pytest.fixture(scope="session")
def witness_m():
    return load("M.json")


@pytest.fixture(scope="session")
def witness_m2():
    return load("Mprime.json")


def all_small_ternary_models(max_worlds=2, atoms=("p", "q")):
    """Independent brute-force generator used as an oracle (no search module)."""
    for k in range(1, max_worlds + 1):
        ws = [f"x{i}" for i in range(k)]
        triples = list(itertools.product(ws, repeat=3))
        for rbits in range(1 << len(triples)):
            tern = {w: [] for w in ws}
            for i, (w, u, v) in enumerate(triples):
                if rbits >> i & 1:
                    tern[w].append((u, v))
            for vbits in range(1 << (k * len(atoms))):
                val = {p: [ws[i] for i in range(k) if vbits >> (j * k + i) & 1]
                       for j, p in enumerate(atoms)}
                yield GeneralizedModel(ws, val, ternary=tern)


# acceptance criteria report one line each in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
