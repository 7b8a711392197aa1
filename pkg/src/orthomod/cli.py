"""``orthomod`` command line: parse, eval, member, laws, bilogic, demo.

Exit status: 0 on success, 1 on a domain error (bad scenario, unbound
variable, syntax error), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

import numpy as np

from . import bilogic, laws
from .errors import InvalidInputError, OrthomodError, ScenarioError
from .formula import And, Assignment, Bottom, Not, Or, Top, Var, eval_subspace, parse, pretty_print
from .scenario import DEMO_SCENARIOS, ScenarioFile, load_scenario_file, shipped
from .subspace import (
    DEFAULT_POLICY,
    NumericPolicy,
    Subspace,
    contains_subspace,
    contains_vector,
    membership_residual,
)

# --------------------------------------------------------------------------- serialization


def _scalar(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    return float(x)


def subspace_json(s: Subspace) -> dict:
    basis = s.echelon_basis()
    return {"dim": s.dim, "basis": [[_scalar(x) for x in basis[:, j]] for j in range(s.dim)]}


def ast_json(f) -> dict:
    if isinstance(f, Var):
        return {"var": f.name}
    if isinstance(f, Not):
        return {"not": ast_json(f.child)}
    if isinstance(f, (And, Or)):
        return {"and" if isinstance(f, And) else "or": [ast_json(f.left), ast_json(f.right)]}
    return {"const": 1 if isinstance(f, Top) else 0}


def ast_lines(f, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(f, Var):
        return [f"{pad}Var {f.name}"]
    if isinstance(f, Top):
        return [f"{pad}Top"]
    if isinstance(f, Bottom):
        return [f"{pad}Bottom"]
    if isinstance(f, Not):
        return [f"{pad}Not"] + ast_lines(f.child, indent + 1)
    head = "And" if isinstance(f, And) else "Or"
    return [f"{pad}{head}"] + ast_lines(f.left, indent + 1) + ast_lines(f.right, indent + 1)


def _fmt_num(x) -> str:
    if isinstance(x, list):
        re_, im = x
        return f"{re_:.6g}{im:+.6g}j"
    return f"{x:.6g}"


def subspace_text(s: Subspace, indent: str = "  ") -> list[str]:
    data = subspace_json(s)
    lines = [f"{indent}dim: {data['dim']}"]
    if data["basis"]:
        lines.append(f"{indent}basis:")
        lines += [f"{indent}  [" + ", ".join(_fmt_num(x) for x in v) + "]" for v in data["basis"]]
    return lines


def _witness_json(w: laws.Witness | None):
    if w is None:
        return None
    out = {"x": subspace_json(w.x), "y": subspace_json(w.y), "distance": w.distance}
    if w.z is not None:
        out["z"] = subspace_json(w.z)
    out["lhs_dim"] = int(round(np.trace(w.lhs).real))
    out["rhs_dim"] = int(round(np.trace(w.rhs).real))
    out["lhs_projector"] = [[_scalar(x) for x in row] for row in w.lhs]
    out["rhs_projector"] = [[_scalar(x) for x in row] for row in w.rhs]
    return out


def law_json(r: laws.LawReport) -> dict:
    return {"law": r.law_name, "holds": r.holds, "instances": r.instances,
            "failures": r.failures, "witness": _witness_json(r.witness)}


# --------------------------------------------------------------------------- commands


def _load(args, path=None) -> ScenarioFile:
    sf = load_scenario_file(path or args.scenario, seed=args.seed, eq_tol=args.policy_eq_tol,
                            allow_unequal_dims=args.allow_unequal_dims)
    args.policy_used = asdict(sf.scenario.policy)
    args.seed_used = sf.scenario.seed
    return sf


def _assignment(sf: ScenarioFile) -> Assignment:
    s = sf.scenario
    bindings = {o.name: bilogic.asymmetric_repr(o, s) for o in s.objects}
    bindings.update(s.subspaces())  # attribute names win over object names
    return Assignment(bindings, s.ambient_dim, s.field)


def _formula_text(sf: ScenarioFile, name_or_text: str) -> str:
    return sf.scenario.formulas.get(name_or_text, name_or_text)


def _state(sf: ScenarioFile, name: str | None) -> tuple[str, np.ndarray]:
    states = sf.scenario.state_vectors
    if name is None:
        if len(states) != 1:
            raise InvalidInputError("choose a state vector with --state: " + ", ".join(sorted(states)))
        name = next(iter(states))
    if name not in states:
        raise InvalidInputError(f"unknown state vector {name!r}")
    return name, states[name]


def run_parse(args) -> tuple[dict, list[str]]:
    f = parse(args.formula)
    return ({"formula": args.formula, "pretty": pretty_print(f), "ast": ast_json(f)},
            ast_lines(f) + [f"pretty: {pretty_print(f)}"])


def _eval_one(sf: ScenarioFile, formula: str) -> tuple[dict, list[str]]:
    text = _formula_text(sf, formula)
    result = eval_subspace(parse(text), _assignment(sf), sf.scenario.policy)
    return ({"formula": text, "result": subspace_json(result)},
            [f"{text}"] + subspace_text(result))


def run_eval(args) -> tuple[dict, list[str]]:
    return _eval_one(_load(args), args.formula)


def _member_one(sf: ScenarioFile, formula: str, state: str | None) -> tuple[dict, list[str]]:
    name, v = _state(sf, state)
    if not np.any(v):
        raise InvalidInputError(f"state {name!r} is the zero vector, which belongs to every subspace")
    text = _formula_text(sf, formula)
    s = eval_subspace(parse(text), _assignment(sf), sf.scenario.policy)
    member = contains_vector(s, v, sf.scenario.policy)
    residual = membership_residual(s, v)
    return ({"formula": text, "state": name, "member": member, "residual": residual},
            [f"{text} @ {name}: {str(member).lower()} (residual {residual:.6g})"])


def run_member(args) -> tuple[dict, list[str]]:
    sf = _load(args)
    formulas = args.formulas or sorted(sf.scenario.formulas)
    results, lines = [], []
    for f in formulas:
        r, t = _member_one(sf, f, args.state)
        results.append(r)
        lines += t
    return {"results": results}, lines


def _scenario_laws(sf: ScenarioFile) -> list[laws.LawReport]:
    """Every ordered attribute pair/triple of the scenario, one aggregate report per law."""
    s = sf.scenario
    attrs = [a.subspace for a in s.attributes]
    p = s.policy
    out = []
    for name, arity, check in (
        (laws.ORTHOMODULAR, 2, laws.check_orthomodular),
        (laws.MODULAR, 3, laws.check_modular),
        (laws.DISTRIBUTIVITY, 3, laws.check_distributivity),
    ):
        count, failures, first = 0, 0, None
        for idx in np.ndindex(*([len(attrs)] * arity)):
            args_ = [attrs[i] for i in idx]
            if name != laws.DISTRIBUTIVITY and not contains_subspace(args_[0], args_[1], p):
                continue
            r = check(*args_, p)
            count += 1
            if not r.holds:
                failures += 1
                first = first or r
        out.append(laws.LawReport(name, first is None, first.witness if first else None, count, failures))
    return out


def run_laws(args) -> tuple[dict, list[str]]:
    if args.random is not None:
        n, trials, seed = args.random
        if n < 1 or trials < 0:
            raise InvalidInputError("--random needs N >= 1 and TRIALS >= 0")
        if trials == 0:
            args.seed_used = seed
            return {"dimension": n, "trials": 0, "seed": seed, "laws": []}, ["no trials"]
        policy = DEFAULT_POLICY if args.policy_eq_tol is None else NumericPolicy(eq_tol=args.policy_eq_tol)
        args.policy_used, args.seed_used = asdict(policy), seed
        reports = [
            laws.sample_orthomodular(n, trials, seed, policy, args.field),
            laws.sample_modular(n, trials, seed, policy, args.field),
            laws.sample_distributivity(n, trials, seed, policy, args.field),
        ]
        head = {"dimension": n, "trials": trials, "seed": seed, "field": args.field}
    elif args.scenario:
        reports = _scenario_laws(_load(args))
        head = {"scenario": args.scenario}
    else:
        raise InvalidInputError("give a scenario file or --random N TRIALS SEED")
    lines = []
    for r in reports:
        ok = r.instances - r.failures
        if r.holds:
            line = f"{r.law_name}: holds {ok}/{r.instances}"
        else:
            line = f"{r.law_name}: fails {r.failures}/{r.instances}"
        if r.witness is not None:
            w = _witness_json(r.witness)
            line += f" (witness: lhs dim {w['lhs_dim']} vs rhs dim {w['rhs_dim']}, distance {w['distance']:.6g})"
        lines.append(line)
    return {**head, "laws": [law_json(r) for r in reports]}, lines


def _names(raw: list[str] | None) -> list[str]:
    out = []
    for item in raw or []:
        out += [x for x in item.split(",") if x]
    return out


def bilogic_step(sf: ScenarioFile, step: dict) -> tuple[dict, list[str]]:
    """Run one Bi-logic operation described by a dict (shared by ``bilogic`` and ``demo``)."""
    s = sf.scenario
    op = step["op"]
    if op in ("repr", "generalize", "negation"):
        objs = [s.object(step["object"])] if step.get("object") else list(s.objects)
        results, lines = [], []
        for o in objs:
            if op == "negation":
                r = bilogic.negation_identity_check(o, s)
                results.append({"object": o.name, **asdict(r)})
                lines.append(f"{o.name}: generalized_equal={str(r.generalized_equal).lower()} "
                             f"complement_contained={str(r.complement_contained).lower()}")
                continue
            sub = bilogic.asymmetric_repr(o, s) if op == "repr" else bilogic.generalize(o, s)
            entry = {"object": o.name, "result": subspace_json(sub)}
            tag = ""
            if op == "repr":
                entry["unrealizable"] = sub.dim == 0
                tag = " (unrealizable)" if sub.dim == 0 else ""
            results.append(entry)
            lines += [f"{o.name}:{tag}"] + subspace_text(sub)
        return {"op": op, "results": results}, lines
    if op == "symmetry":
        names = step.get("objects")
        objs = [s.object(n) for n in names] if names else list(s.objects)
        classes = bilogic.symmetric_classes(objs, s)
        return ({"op": op, "classes": classes},
                ["classes:"] + ["  {" + ", ".join(c) + "}" for c in classes])
    if op == "condense":
        a, b = s.object(step["a"]), s.object(step["b"])
        res = bilogic.condense(a, b, s)
        facts = {
            "contains_a": contains_subspace(bilogic.asymmetric_repr(a, s), res, s.policy),
            "contains_b": contains_subspace(bilogic.asymmetric_repr(b, s), res, s.policy),
        }
        return ({"op": op, "a": a.name, "b": b.name, "result": subspace_json(res), **facts},
                [f"condense({a.name}, {b.name}):"] + subspace_text(res))
    if op == "displace":
        target, source = s.object(step["target"]), s.object(step["source"])
        transfer = list(step.get("transfer", []))
        res = bilogic.displace(target, source, transfer, s)
        src_repr = bilogic.asymmetric_repr(source, s)
        facts = {
            "contains_target": contains_subspace(bilogic.asymmetric_repr(target, s), res, s.policy),
            "contains_source": contains_subspace(src_repr, res, s.policy),
            "omitted": {n: contains_subspace(s.attribute(n).subspace, res, s.policy)
                        for n in source.attributes if n not in transfer},
        }
        facts["omitted"] = sorted(n for n, inside in facts["omitted"].items() if not inside)
        label = f"displace({target.name} <- {source.name}, transfer=[{', '.join(transfer)}]):"
        return ({"op": op, "target": target.name, "source": source.name, "transfer": transfer,
                 "result": subspace_json(res), **facts},
                [label] + subspace_text(res)
                + [f"  contains source: {str(facts['contains_source']).lower()}",
                   f"  not contained: {', '.join(facts['omitted']) or '-'}"])
    if op == "kinds":
        rep = bilogic.attribute_kinds_report(s)
        lines = [f"{o}: temporal=[{', '.join(k['temporal'])}] reality=[{', '.join(k['reality'])}]"
                 for o, k in rep.items()] or ["no temporal or reality attributes"]
        return {"op": op, "report": rep}, lines
    if op == "eval":
        r, lines = _eval_one(sf, step["formula"])
        return {"op": op, **r}, lines
    if op == "member":
        r, lines = _member_one(sf, step["formula"], step.get("state"))
        return {"op": op, **r}, lines
    raise InvalidInputError(f"unknown operation {op!r}")


def run_bilogic(args) -> tuple[dict, list[str]]:
    sf = _load(args)
    step = {"op": args.sub}
    if args.sub in ("repr", "generalize", "negation") and args.object:
        step["object"] = args.object
    elif args.sub == "symmetry" and args.objects:
        step["objects"] = _names(args.objects)
    elif args.sub == "condense":
        step.update(a=args.a, b=args.b)
    elif args.sub == "displace":
        step.update(target=args.target, source=args.source, transfer=_names(args.transfer))
    return bilogic_step(sf, step)


def run_demo(args) -> tuple[dict, list[str]]:
    paths = args.scenarios or [shipped(n) for n in DEMO_SCENARIOS]
    results, lines = [], []
    for p in paths:
        sf = _load(args, p)
        if not sf.demo:
            raise ScenarioError("scenario has no demo steps", ("demo",))
        steps = []
        lines.append(f"== {sf.characteristic or p}")
        for step in sf.demo:
            r, t = bilogic_step(sf, step)
            steps.append(r)
            lines += t
        results.append({"scenario": str(p.name if hasattr(p, "name") else p),
                        "characteristic": sf.characteristic, "steps": steps})
    return {"demos": results}, lines


# --------------------------------------------------------------------------- entry point


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="emit a machine-readable JSON report")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="override the scenario seed")
    p.add_argument("--policy-eq-tol", type=float, default=argparse.SUPPRESS,
                   help="override the projector-distance equality tolerance")
    p.add_argument("--allow-unequal-dims", action="store_true", default=argparse.SUPPRESS,
                   help="accept attribute subspaces of different dimensions")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="include wall-clock time in the JSON report")
    return p


_GLOBAL_DEFAULTS = {"json": False, "seed": None, "policy_eq_tol": None, "allow_unequal_dims": False,
                    "timing": False}


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand. Each parser gets
    # its own copy: argparse parents share Action objects.
    parser = argparse.ArgumentParser(prog="orthomod", parents=[_common()],
                                     description="Quantum-logic lattice of subspaces and Bi-logic operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[_common()], help="parse a formula and print its syntax tree")
    p.add_argument("formula")
    p.set_defaults(run=run_parse)

    p = sub.add_parser("eval", parents=[_common()], help="evaluate a formula to a subspace")
    p.add_argument("scenario")
    p.add_argument("formula", help="formula text or the name of a formula in the scenario")
    p.set_defaults(run=run_eval)

    p = sub.add_parser("member", parents=[_common()], help="membership of a state vector in formulas")
    p.add_argument("scenario")
    p.add_argument("formulas", nargs="*", help="formula texts or names (default: all named formulas)")
    p.add_argument("--state", help="name of a state vector in the scenario")
    p.set_defaults(run=run_member)

    p = sub.add_parser("laws", parents=[_common()], help="check orthomodular, modular and distributive laws")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--random", nargs=3, type=int, metavar=("N", "TRIALS", "SEED"))
    p.add_argument("--field", choices=("real", "complex"), default="complex")
    p.set_defaults(run=run_laws)

    p = sub.add_parser("bilogic", parents=[_common()], help="Bi-logic operators on scenario objects")
    p.add_argument("sub", choices=("repr", "generalize", "symmetry", "negation", "condense", "displace", "kinds"))
    p.add_argument("scenario")
    p.add_argument("--object")
    p.add_argument("--objects", action="append", help="comma-separated object names (symmetry)")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--target")
    p.add_argument("--source")
    p.add_argument("--transfer", action="append", help="comma-separated source attributes")
    p.set_defaults(run=run_bilogic)

    p = sub.add_parser("demo", parents=[_common()], help="run the shipped demo scenarios")
    p.add_argument("scenarios", nargs="*", help="scenario files with demo steps (default: the five shipped)")
    p.set_defaults(run=run_demo)
    return parser


def _usage_check(args, parser):
    if args.command == "bilogic":
        need = {"condense": ("a", "b"), "displace": ("target", "source")}.get(args.sub, ())
        missing = [f"--{n}" for n in need if getattr(args, n) is None]
        if missing:
            parser.error(f"bilogic {args.sub} requires {' '.join(missing)}")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    _usage_check(args, parser)
    start = time.perf_counter()
    try:
        payload, lines = args.run(args)
    except OrthomodError as exc:
        print(f"error: {exc}", file=err)
        return 1
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"command": args.command, "argv": list(sys.argv[1:] if argv is None else argv),
                  "results": payload, "seed": getattr(args, "seed_used", args.seed),
                  "policy": getattr(args, "policy_used", None)}
        if args.timing:
            report["wall_time_s"] = elapsed
        out.write(json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
