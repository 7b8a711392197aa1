import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from orthomod.bilogic import AttributeClass, BilogicObject, Scenario
from orthomod.subspace import coordinate_subspace, random_subspace

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def all_index_sets(n):
    """Every subset of range(n), as frozensets."""
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]


def coord(indices, n):
    return coordinate_subspace(indices, n)


@st.composite
def subspaces(draw, n=None, field=None):
    """Random subspace of a drawn (or fixed) dimension via seeded Gaussian draws."""
    n = draw(st.integers(1, 8)) if n is None else n
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**32 - 1))
    field = draw(st.sampled_from(["real", "complex"])) if field is None else field
    return random_subspace(n, k, seed, field=field)


@st.composite
def subspace_tuples(draw, size, field=None):
    n = draw(st.integers(1, 8))
    field = draw(st.sampled_from(["real", "complex"])) if field is None else field
    return tuple(draw(subspaces(n=n, field=field)) for _ in range(size))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_scenario(seed, n=None):
    """Scenario with 3-6 random attribute subspaces of a common dimension and two objects."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7)) if n is None else n
    k = int(rng.integers(1, n))
    names = [f"x{i}" for i in range(int(rng.integers(3, 7)))]
    attrs = [AttributeClass(name, "regular", random_subspace(n, k, rng, field="real")) for name in names]

    def pick():
        size = int(rng.integers(1, min(3, len(names)) + 1))
        return [str(x) for x in rng.choice(names, size=size, replace=False)]

    objs = [BilogicObject("a", pick()), BilogicObject("b", pick())]
    return Scenario(n, "real", attrs, objs, seed=seed)
