"""Bi-logic operators on top of the subspace lattice.

Objects are conjunctions of attribute classes. The conscious (asymmetric)
reading of an object is the meet of its attribute subspaces; generalization,
condensation and displacement are built from joins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidInputError, ScenarioError
from .subspace import (
    DEFAULT_POLICY,
    NumericPolicy,
    Subspace,
    complement,
    contains_subspace,
    equals,
    join,
    meet,
)

log = logging.getLogger(__name__)

KINDS = ("regular", "temporal", "reality")


@dataclass(frozen=True)
class AttributeClass:
    name: str
    kind: str
    subspace: Subspace

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"attribute {self.name!r}: kind must be one of {KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class BilogicObject:
    name: str
    attributes: tuple[str, ...]

    def __post_init__(self):
        attrs = tuple(self.attributes)
        object.__setattr__(self, "attributes", attrs)
        if not attrs:
            raise InvalidInputError(f"object {self.name!r} has no attributes")
        if len(set(attrs)) != len(attrs):
            raise InvalidInputError(f"object {self.name!r} lists an attribute twice")


@dataclass(frozen=True, eq=False)
class Scenario:
    """Attribute classes and objects over one ambient space.

    ``formulas`` and ``state_vectors`` are carried along for the CLI; the
    Bi-logic operators ignore them.
    """

    ambient_dim: int
    field: str
    attributes: tuple[AttributeClass, ...]
    objects: tuple[BilogicObject, ...] = ()
    policy: NumericPolicy = DEFAULT_POLICY
    seed: int = 0
    allow_unequal_dims: bool = False
    formulas: Mapping[str, str] = field(default_factory=dict)
    state_vectors: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "objects", tuple(self.objects))
        seen = set()
        for i, a in enumerate(self.attributes):
            path = ("attributes", i)
            if a.name in seen:
                raise ScenarioError(f"duplicate attribute name {a.name!r}", path)
            seen.add(a.name)
            if a.subspace.ambient_dim != self.ambient_dim:
                raise ScenarioError(
                    f"attribute {a.name!r} lives in dimension {a.subspace.ambient_dim}, "
                    f"scenario dimension is {self.ambient_dim}", path)
            if a.subspace.field != self.field:
                raise ScenarioError(f"attribute {a.name!r} is {a.subspace.field}, scenario is {self.field}", path)
        dims = {a.subspace.dim for a in self.attributes}
        if len(dims) > 1:
            msg = f"attribute subspaces have unequal dimensions {sorted(dims)}"
            if not self.allow_unequal_dims:
                raise ScenarioError(msg + " (pass allow_unequal_dims to permit)", ("attributes",))
            log.warning(msg)
        names = set()
        for i, o in enumerate(self.objects):
            if o.name in names:
                raise ScenarioError(f"duplicate object name {o.name!r}", ("objects", i))
            names.add(o.name)
            for j, ref in enumerate(o.attributes):
                if ref not in seen:
                    raise ScenarioError(f"object {o.name!r} references unknown attribute {ref!r}",
                                        ("objects", i, "attributes", j))

    def attribute(self, name: str) -> AttributeClass:
        for a in self.attributes:
            if a.name == name:
                return a
        raise InvalidInputError(f"unknown attribute {name!r}")

    def object(self, name: str) -> BilogicObject:
        for o in self.objects:
            if o.name == name:
                return o
        raise InvalidInputError(f"unknown object {name!r}")

    def subspaces(self) -> dict[str, Subspace]:
        return {a.name: a.subspace for a in self.attributes}


def _attribute_spaces(names: Iterable[str], s: Scenario) -> list[Subspace]:
    return [s.attribute(n).subspace for n in names]


def asymmetric_repr(obj: BilogicObject, s: Scenario) -> Subspace:
    """Meet of the object's attribute subspaces, folded left.

    A zero-dimensional result means the attribute combination is unrealizable;
    that is a value, not an error.
    """
    return reduce(lambda a, b: meet(a, b, s.policy), _attribute_spaces(obj.attributes, s))


def generalize(obj: BilogicObject, s: Scenario) -> Subspace:
    return reduce(lambda a, b: join(a, b, s.policy), _attribute_spaces(obj.attributes, s))


def is_unrealizable(obj: BilogicObject, s: Scenario) -> bool:
    return asymmetric_repr(obj, s).dim == 0


def symmetric_classes(objs: Sequence[BilogicObject], s: Scenario) -> list[list[str]]:
    """Partition objects by equality of their generalized subspaces.

    Classes appear in order of their first member; members keep input order.
    """
    classes: list[tuple[Subspace, list[str]]] = []
    for o in objs:
        g = generalize(o, s)
        for rep, members in classes:
            if equals(rep, g, s.policy):
                members.append(o.name)
                break
        else:
            classes.append((g, [o.name]))
    return [members for _, members in classes]


@dataclass(frozen=True)
class NegationIdentity:
    generalized_equal: bool
    complement_contained: bool


def negated(obj: BilogicObject) -> BilogicObject:
    """``¬p``: under generalization it is written over the same attribute classes."""
    return BilogicObject("¬" + obj.name, obj.attributes)


def negation_identity_check(obj: BilogicObject, s: Scenario) -> NegationIdentity:
    """Compare the generalized forms of ``p`` and ``¬p``.

    ``complement_contained`` asks whether the orthocomplement of the conscious
    representation lies inside the generalization; it does exactly when the
    generalization is the whole space.
    """
    g = generalize(obj, s)
    same = equals(g, generalize(negated(obj), s), s.policy)
    contained = contains_subspace(complement(asymmetric_repr(obj, s), s.policy), g, s.policy)
    return NegationIdentity(same, contained)


def condense(a: BilogicObject, b: BilogicObject, s: Scenario) -> Subspace:
    return join(asymmetric_repr(a, s), asymmetric_repr(b, s), s.policy)


def displace(target: BilogicObject, source: BilogicObject, transferred: Iterable[str],
             s: Scenario) -> Subspace:
    """Join the target with the meet of the transferred source attributes.

    Transferring nothing leaves the target unchanged; transferring every
    source attribute is condensation.
    """
    transferred = set(transferred)
    extra = transferred - set(source.attributes)
    if extra:
        raise InvalidInputError(
            f"not attributes of {source.name!r}: {', '.join(sorted(extra))}")
    base = asymmetric_repr(target, s)
    if not transferred:
        return base
    moved = [n for n in source.attributes if n in transferred]
    part = reduce(lambda a, b: meet(a, b, s.policy), _attribute_spaces(moved, s))
    return join(base, part, s.policy)


def attribute_kinds_report(s: Scenario) -> dict[str, dict[str, list[str]]]:
    """Temporal and reality attributes per object; objects with neither are omitted."""
    kinds = {a.name: a.kind for a in s.attributes}
    report = {}
    for o in s.objects:
        entry = {
            k: [n for n in o.attributes if kinds[n] == k]
            for k in ("temporal", "reality")
        }
        if any(entry.values()):
            report[o.name] = entry
    return report
