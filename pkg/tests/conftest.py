import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from oracle import all_cycle_set_tables  # noqa: E402

from ybhecke.cycleset import constant, validate_cycle_set  # noqa: E402

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

# psi(s_1) = psi(s_3) = (12)(34), psi(s_2) = psi(s_4) = (14)(23), written 0-based
PAIRED4 = [[1, 0, 3, 2], [3, 2, 1, 0], [1, 0, 3, 2], [3, 2, 1, 0]]

NAMED = {
    "singleton": [[0]],
    "trivial2": [[0, 1], [0, 1]],
    "swap2": [[1, 0], [1, 0]],
    "cyclic3": [[1, 2, 0]] * 3,
    "swap_fixed3": [[1, 0, 2]] * 3,
    "paired4": PAIRED4,
    "swaps4": [[1, 0, 3, 2]] * 4,
    "cyclic4": [[1, 2, 3, 0]] * 4,
}

SMALL_TABLES = [t for n in (1, 2, 3) for t in all_cycle_set_tables(n)]
CATALOG = [validate_cycle_set(t) for t in SMALL_TABLES] + [
    validate_cycle_set(NAMED[k]) for k in ("paired4", "swaps4", "cyclic4")
]


@pytest.fixture
def swap2():
    return constant([1, 0])


@pytest.fixture
def cyclic3():
    return constant([1, 2, 0])


@pytest.fixture
def paired4():
    return validate_cycle_set(PAIRED4)


def write_cycle_set(path, table):
    import json

    path.write_text(json.dumps({"size": len(table), "table": [[x + 1 for x in r] for r in table]}))
    return path


@pytest.fixture
def cs_file(tmp_path):
    def make(name):
        return str(write_cycle_set(tmp_path / f"{name}.json", NAMED[name]))

    return make
