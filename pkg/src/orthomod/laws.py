"""Checks of lattice laws on subspaces, plus a counterexample search for distributivity."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInputError, PreconditionError
from .subspace import (
    DEFAULT_POLICY,
    NumericPolicy,
    Subspace,
    _check_vector,
    complement,
    contains_subspace,
    contains_vector,
    equals,
    full_space,
    join,
    meet,
    random_subspace,
    random_subspace_of,
)

ORTHOMODULAR = "orthomodular"
MODULAR = "modular"
DISTRIBUTIVITY = "distributivity"


@dataclass(frozen=True, eq=False)
class Witness:
    """An instance of a law together with both computed sides."""

    x: Subspace
    y: Subspace
    z: Optional[Subspace]
    lhs: np.ndarray
    rhs: np.ndarray
    distance: float


@dataclass(frozen=True, eq=False)
class LawReport:
    law_name: str
    holds: bool
    witness: Optional[Witness] = None
    instances: int = 1
    failures: int = dc_field(default=None)

    def __post_init__(self):
        if self.failures is None:
            object.__setattr__(self, "failures", 0 if self.holds else 1)
        if self.holds == (self.witness is not None):
            raise ValueError("a witness must be present exactly when the law fails")


def _report(name: str, x, y, z, lhs: Subspace, rhs: Subspace, policy: NumericPolicy) -> LawReport:
    pl, pr = lhs.projector(), rhs.projector()
    distance = float(np.linalg.norm(pl - pr))
    if distance <= policy.eq_tol:
        return LawReport(name, True)
    return LawReport(name, False, Witness(x, y, z, pl, pr, distance))


def _require_below(x: Subspace, y: Subspace, policy: NumericPolicy) -> None:
    if not contains_subspace(x, y, policy):
        raise PreconditionError("law requires x ⊆ y, which does not hold")


def orthomodular_sides(x, y, policy=DEFAULT_POLICY):
    return join(x, meet(complement(x, policy), y, policy), policy), y


def modular_sides(x, y, z, policy=DEFAULT_POLICY):
    return join(x, meet(y, z, policy), policy), meet(y, join(x, z, policy), policy)


def distributivity_sides(x, y, z, policy=DEFAULT_POLICY):
    return meet(x, join(y, z, policy), policy), join(meet(x, y, policy), meet(x, z, policy), policy)


def check_orthomodular(x: Subspace, y: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> LawReport:
    """``x ⊆ y  ⇒  x ∨ (x' ∧ y) = y``."""
    _require_below(x, y, policy)
    return _report(ORTHOMODULAR, x, y, None, *orthomodular_sides(x, y, policy), policy)


def check_modular(x: Subspace, y: Subspace, z: Subspace,
                  policy: NumericPolicy = DEFAULT_POLICY) -> LawReport:
    """``x ⊆ y  ⇒  x ∨ (y ∧ z) = y ∧ (x ∨ z)``."""
    _require_below(x, y, policy)
    return _report(MODULAR, x, y, z, *modular_sides(x, y, z, policy), policy)


def check_distributivity(x: Subspace, y: Subspace, z: Subspace,
                         policy: NumericPolicy = DEFAULT_POLICY) -> LawReport:
    """``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)``. Failing is a legitimate outcome."""
    return _report(DISTRIBUTIVITY, x, y, z, *distributivity_sides(x, y, z, policy), policy)


def recheck(report: LawReport, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Recompute the projector distance of a failing report from its witness alone."""
    w = report.witness
    if w is None:
        raise ValueError("report has no witness")
    sides = {
        ORTHOMODULAR: lambda: orthomodular_sides(w.x, w.y, policy),
        MODULAR: lambda: modular_sides(w.x, w.y, w.z, policy),
        DISTRIBUTIVITY: lambda: distributivity_sides(w.x, w.y, w.z, policy),
    }[report.law_name]()
    return float(np.linalg.norm(sides[0].projector() - sides[1].projector()))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial generator; trials are independent of execution order."""
    return np.random.default_rng([seed, trial])


def random_nested_pair(n: int, rng: np.random.Generator, policy: NumericPolicy = DEFAULT_POLICY,
                       field: str = "complex") -> tuple[Subspace, Subspace]:
    """Random ``x ⊆ y`` in dimension ``n``; containment holds by construction."""
    k_y = int(rng.integers(0, n + 1))
    k_x = int(rng.integers(0, k_y + 1))
    y = random_subspace(n, k_y, rng, policy, field)
    return random_subspace_of(y, k_x, rng, policy), y


def _aggregate(name: str, trials: int, one: Callable[[np.random.Generator], LawReport],
               seed: int) -> LawReport:
    first = None
    failures = 0
    for t in range(trials):
        r = one(trial_rng(seed, t))
        if not r.holds:
            failures += 1
            first = first or r
    if first is None:
        return LawReport(name, True, None, trials, 0)
    return LawReport(name, False, first.witness, trials, failures)


def sample_orthomodular(n: int, trials: int, seed: int, policy: NumericPolicy = DEFAULT_POLICY,
                        field: str = "complex") -> LawReport:
    def one(rng):
        x, y = random_nested_pair(n, rng, policy, field)
        return check_orthomodular(x, y, policy)

    return _aggregate(ORTHOMODULAR, trials, one, seed)


def sample_modular(n: int, trials: int, seed: int, policy: NumericPolicy = DEFAULT_POLICY,
                   field: str = "complex") -> LawReport:
    def one(rng):
        x, y = random_nested_pair(n, rng, policy, field)
        z = random_subspace(n, int(rng.integers(0, n + 1)), rng, policy, field)
        return check_modular(x, y, z, policy)

    return _aggregate(MODULAR, trials, one, seed)


def random_coplanar_lines(n: int, rng: np.random.Generator, policy: NumericPolicy = DEFAULT_POLICY,
                          field: str = "complex") -> tuple[Subspace, Subspace, Subspace]:
    """Three random lines inside one random plane (the whole space when ``n == 1``)."""
    plane = random_subspace(n, min(n, 2), rng, policy, field)
    return tuple(random_subspace_of(plane, 1, rng, policy) for _ in range(3))


def sample_distributivity(n: int, trials: int, seed: int, policy: NumericPolicy = DEFAULT_POLICY,
                          field: str = "complex") -> LawReport:
    """Distributivity on random coplanar lines; a failure is the expected outcome for n >= 2."""
    def one(rng):
        x, y, z = random_coplanar_lines(n, rng, policy, field)
        return check_distributivity(x, y, z, policy)

    return _aggregate(DISTRIBUTIVITY, trials, one, seed)


def find_distributivity_counterexample(n: int, trials: int, seed: int,
                                       policy: NumericPolicy = DEFAULT_POLICY,
                                       field: str = "complex") -> Optional[Witness]:
    """First triple of random coplanar lines violating distributivity, or ``None``.

    Lines in general position in dimension > 2 satisfy the law trivially
    (both sides are zero), so the three lines share a random plane.
    """
    if n < 1 or trials < 0:
        raise InvalidInputError("need n >= 1 and trials >= 0")
    for t in range(trials):
        rng = trial_rng(seed, t)
        x, y, z = random_coplanar_lines(n, rng, policy, field)
        r = check_distributivity(x, y, z, policy)
        if not r.holds:
            return r.witness
    return None


@dataclass(frozen=True)
class ExcludedMiddle:
    in_S: bool
    in_S_complement: bool
    in_join: bool


def excluded_middle_demo(S: Subspace, v, policy: NumericPolicy = DEFAULT_POLICY) -> ExcludedMiddle:
    """Membership of ``v`` in ``S``, ``S'`` and ``S ∨ S'``.

    The join is always the whole space, so ``in_join`` is always true even
    when both other memberships are false.
    """
    v = _check_vector(S, v)
    if not np.any(v):
        raise InvalidInputError("the zero vector belongs to every subspace; use a nonzero state")
    comp = complement(S, policy)
    both = join(S, comp, policy)
    return ExcludedMiddle(
        contains_vector(S, v, policy),
        contains_vector(comp, v, policy),
        contains_vector(both, v, policy),
    )


def lattice_excluded_middle(S: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    return equals(join(S, complement(S, policy), policy), full_space(S.ambient_dim, S.field), policy)
