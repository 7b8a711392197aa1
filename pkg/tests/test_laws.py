import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthomod import laws
from orthomod.errors import InvalidInputError, PreconditionError
from orthomod.subspace import (
    complement,
    contains_subspace,
    full_space,
    random_subspace,
    span,
    zero_subspace,
)

from .conftest import all_index_sets, coord, subspaces


def test_orthomodular_trivial_cases():
    a = random_subspace(5, 2, 1)
    assert laws.check_orthomodular(a, a).holds
    assert laws.check_orthomodular(zero_subspace(5), a).holds


def test_precondition_is_an_error_not_a_failure():
    with pytest.raises(PreconditionError):
        laws.check_orthomodular(span((1, 0)), span((0, 1)))
    with pytest.raises(PreconditionError):
        laws.check_modular(span((1, 0)), span((0, 1)), span((1, 1)))


def test_modular_trivial_cases():
    y = random_subspace(4, 3, 2)
    x = laws.random_subspace_of(y, 1, np.random.default_rng(0))
    r_full = laws.modular_sides(x, y, full_space(4))
    assert all(np.allclose(s.projector(), y.projector()) for s in r_full)
    r_zero = laws.modular_sides(x, y, zero_subspace(4))
    assert all(np.allclose(s.projector(), x.projector()) for s in r_zero)
    assert laws.check_modular(x, y, full_space(4)).holds


def test_distributivity_fixed_witness():
    x, y, z = span((1, 0)), span((0, 1)), span((1, 1))
    r = laws.check_distributivity(x, y, z)
    assert not r.holds
    lhs, rhs = laws.distributivity_sides(x, y, z)
    assert (lhs.dim, rhs.dim) == (1, 0)
    assert r.witness.distance == pytest.approx(1.0)
    assert abs(laws.recheck(r) - r.witness.distance) <= 10 * 1e-8


def test_distributivity_holds_when_x_below_y_equal_z():
    rng = np.random.default_rng(3)
    for n in range(2, 7):
        x, y = laws.random_nested_pair(n, rng)
        assert laws.check_distributivity(x, y, y).holds


def test_distributivity_holds_on_coordinate_triples():
    sets = all_index_sets(3)
    for s, t, u in itertools.product(sets, repeat=3):
        assert laws.check_distributivity(coord(s, 3), coord(t, 3), coord(u, 3)).holds


def test_counterexample_search():
    assert laws.find_distributivity_counterexample(1, 50, 0) is None
    w = laws.find_distributivity_counterexample(2, 100, 7)
    assert w is not None
    assert not laws.check_distributivity(w.x, w.y, w.z).holds
    assert laws.find_distributivity_counterexample(2, 0, 7) is None
    # also in higher dimension, via coplanar lines
    assert laws.find_distributivity_counterexample(6, 10, 7) is not None


def test_counterexample_search_is_deterministic():
    a = laws.find_distributivity_counterexample(3, 10, 5)
    b = laws.find_distributivity_counterexample(3, 10, 5)
    assert np.array_equal(a.x.basis, b.x.basis) and a.distance == b.distance


def test_random_nested_pair_containment():
    rng = np.random.default_rng(0)
    for n in range(1, 9):
        for _ in range(20):
            x, y = laws.random_nested_pair(n, rng)
            assert contains_subspace(x, y)


def test_aggregate_reports():
    r = laws.sample_orthomodular(5, 50, 1)
    assert r.holds and r.instances == 50 and r.failures == 0 and r.witness is None
    d = laws.sample_distributivity(3, 20, 1)
    assert not d.holds and d.failures == 20
    assert abs(laws.recheck(d) - d.witness.distance) <= 1e-7


def test_trials_independent_of_order():
    # trial t depends only on (seed, t)
    r1 = laws.random_nested_pair(5, laws.trial_rng(9, 3))
    r2 = laws.random_nested_pair(5, laws.trial_rng(9, 3))
    assert np.array_equal(r1[1].basis, r2[1].basis)


def test_excluded_middle_demo():
    s = span((1, 0))
    assert laws.excluded_middle_demo(s, (1, 1)) == laws.ExcludedMiddle(False, False, True)
    assert laws.excluded_middle_demo(s, (1, 0)) == laws.ExcludedMiddle(True, False, True)
    assert laws.excluded_middle_demo(s, (0, 3)) == laws.ExcludedMiddle(False, True, True)
    with pytest.raises(InvalidInputError):
        laws.excluded_middle_demo(s, (0, 0))


def test_law_report_invariant():
    with pytest.raises(ValueError):
        laws.LawReport("x", False)


@settings(max_examples=100)
@given(subspaces())
def test_lattice_excluded_middle(s):
    assert laws.lattice_excluded_middle(s)


@settings(max_examples=50)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_modular_and_orthomodular_property(n, seed):
    rng = np.random.default_rng(seed)
    x, y = laws.random_nested_pair(n, rng)
    z = random_subspace(n, int(rng.integers(0, n + 1)), rng)
    assert laws.check_orthomodular(x, y).holds
    assert laws.check_modular(x, y, z).holds
    # and the orthomodular identity in its other form
    assert contains_subspace(complement(y), complement(x))
