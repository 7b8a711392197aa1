"""Loading and validating scenario files (JSON documents, see ``scenario.schema.json``)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .bilogic import AttributeClass, BilogicObject, Scenario
from .errors import OrthomodError, ScenarioError
from .formula import parse
from .subspace import DEFAULT_POLICY, NumericPolicy, orthonormalize, random_subspace

SCENARIO_DIR = resources.files("orthomod") / "scenarios"

# One file per Freud characteristic, in the order the demo runs them.
DEMO_SCENARIOS = (
    "no_contradiction.scenario",
    "displacement.scenario",
    "condensation.scenario",
    "timelessness.scenario",
    "psychic_reality.scenario",
)


def _schema() -> dict:
    return json.loads((SCENARIO_DIR / "scenario.schema.json").read_text(encoding="utf-8"))


def shipped(name: str) -> Path:
    """Path of a scenario file bundled with the package."""
    return Path(str(SCENARIO_DIR / name))


def name_key(name: str) -> int:
    """Stable 64-bit integer derived from an attribute name."""
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:8], "little")


@dataclass(frozen=True, eq=False)
class ScenarioFile:
    scenario: Scenario
    path: str
    description: str = ""
    characteristic: str = ""
    demo: tuple[dict, ...] = ()


def _vector(raw: list, field: str, n: int, path: tuple) -> np.ndarray:
    if len(raw) != n:
        raise ScenarioError(f"vector has {len(raw)} entries, scenario dimension is {n}", path)
    if field == "real":
        if any(isinstance(x, list) for x in raw):
            raise ScenarioError("complex entry in a real scenario", path)
        return np.array(raw, dtype=np.float64)
    return np.array([complex(*x) if isinstance(x, list) else complex(x) for x in raw])


def _policy(raw: dict, eq_tol: float | None) -> NumericPolicy:
    policy = NumericPolicy(**raw) if raw else DEFAULT_POLICY
    return replace(policy, eq_tol=eq_tol) if eq_tol is not None else policy


def build_scenario(doc: dict[str, Any], *, path: str = "<memory>", seed: int | None = None,
                   eq_tol: float | None = None, allow_unequal_dims: bool = False) -> ScenarioFile:
    """Validate a parsed scenario document and materialize its subspaces.

    ``seed``, ``eq_tol`` and ``allow_unequal_dims`` override the document.
    """
    errors = sorted(jsonschema.Draft202012Validator(_schema()).iter_errors(doc),
                    key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise ScenarioError(e.message, e.absolute_path)

    n = doc["dimension"]
    field = doc.get("field", "complex")
    seed = doc.get("seed", 0) if seed is None else seed
    try:
        policy = _policy(doc.get("policy", {}), eq_tol)
    except OrthomodError as exc:
        raise ScenarioError(str(exc), ("policy",)) from None

    attributes = []
    for i, raw in enumerate(doc["attributes"]):
        where = ("attributes", i)
        if "basis" in raw:
            try:
                vecs = [_vector(v, field, n, where + ("basis", j)) for j, v in enumerate(raw["basis"])]
            except ScenarioError as exc:
                raise ScenarioError(f"attribute {raw['name']!r}: {exc.message}", exc.path) from None
            sub = orthonormalize(vecs, policy, ambient_dim=n, field=field)
        else:
            k = raw["random_dim"]
            if k > n:
                raise ScenarioError(f"random_dim {k} exceeds dimension {n}", where)
            sub = random_subspace(n, k, [seed, name_key(raw["name"])], policy, field)
        attributes.append(AttributeClass(raw["name"], raw.get("kind", "regular"), sub))

    objects = []
    for i, o in enumerate(doc.get("objects", [])):
        try:
            objects.append(BilogicObject(o["name"], o["attributes"]))
        except OrthomodError as exc:
            raise ScenarioError(str(exc), ("objects", i)) from None

    formulas = dict(doc.get("formulas", {}))
    for name, text in formulas.items():
        try:
            parse(text)
        except OrthomodError as exc:
            raise ScenarioError(str(exc), ("formulas", name)) from None
    states = {k: _vector(v, field, n, ("state_vectors", k)) for k, v in doc.get("state_vectors", {}).items()}

    scenario = Scenario(
        ambient_dim=n,
        field=field,
        attributes=attributes,
        objects=objects,
        policy=policy,
        seed=seed,
        allow_unequal_dims=allow_unequal_dims or doc.get("allow_unequal_dims", False),
        formulas=formulas,
        state_vectors=states,
    )
    return ScenarioFile(scenario, path, doc.get("description", ""), doc.get("characteristic", ""),
                        tuple(doc.get("demo", ())))


def load_scenario_file(path, **overrides) -> ScenarioFile:
    p = Path(path)
    try:
        text = p.read_bytes().decode("utf-8")
    except FileNotFoundError:
        raise ScenarioError(f"no such file: {p}") from None
    except UnicodeDecodeError as exc:
        raise ScenarioError(f"file is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return build_scenario(doc, path=str(p), **overrides)


def load_scenario(path, **overrides) -> Scenario:
    return load_scenario_file(path, **overrides).scenario
