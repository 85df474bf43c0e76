"""Command line front end.

Every subcommand loads its inputs, calls one library operation and prints a
JSON report on stdout. Exit codes: 0 ok, 2 validation failure, 3 parse
failure, 4 scale exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import io
from .causal import (
    CausalDag,
    DeleteEdge,
    DoVariable,
    dag_to_category,
    enumerate_immoralities,
    imset_equal,
    intervene,
    markov_equivalent,
    standard_imset,
    to_dot,
)
from .elements import (
    category_of_elements,
    check_opfibration_fibers,
    collider_query,
    do_bind,
    migrate_left_kan,
    migrate_pullback,
    migrate_right_kan,
    pattern_query,
    source_edge_query,
    subschema_inclusion,
)
from .errors import CatCausalError, ParseError, ScaleExceeded, ValidationError
from .fincat import FinCategory, SetFunctor
from .homology import (
    DEFAULT_TRUNCATION,
    causal_effect,
    chain_complex,
    classifying_space_profile,
    hocolim_profile,
    homology_profile,
    to_triplets,
)
from .library import MAX_MORPHISMS, MAX_OBJECTS
from .nerve import nerve
from .simplex import audit_identities, check_kan_condition


def _truncation(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("truncation must be >= 1")
    return n


def _load_dag(path: str) -> CausalDag:
    kind, value = io.load(path)
    if kind != "dag":
        raise ValidationError(f"{path} is a {kind}, not a DAG")
    return value


def _load_category(path: str) -> tuple[str, Any, FinCategory]:
    kind, value = io.load(path)
    return kind, value, io.as_category(kind, value)


def _load_instance(path: str, schema: FinCategory) -> SetFunctor:
    """Read an instance and attach it to an already loaded schema."""
    data = io.load_json(path)
    if io.detect_kind(data) != "instance":
        raise ValidationError(f"{path} is not an instance")
    if "schema" in data:
        declared = io.load_category(data["schema"], Path(path).parent)
        if io.category_to_json(declared) != io.category_to_json(schema):
            raise ValidationError(f"{path} declares a schema different from the one given")
    try:
        return io.instance_from_json(data, schema=schema)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed instance: {exc!r}") from exc


def _load_any(args) -> tuple[str, Any]:
    """Load ``args.path``; instances are attached to ``--model`` when given."""
    if getattr(args, "model", None):
        _, _, schema = _load_category(args.model)
        return "instance", _load_instance(args.path, schema)
    return io.load(args.path)


def cmd_validate(args) -> dict:
    kind, value = _load_any(args)
    report: dict[str, Any] = {"kind": kind, "valid": True}
    if kind == "dag":
        report["summary"] = f"{len(value.variables)} variables, {len(value.edges)} edges, acyclic"
        report["dag"] = value.to_json()
    elif kind in ("category", "quiver"):
        c = value
        report["summary"] = f"{len(c.objects)} objects, {len(c.morphisms)} morphisms, category laws hold"
        report["objects"] = len(c.objects)
        report["morphisms"] = len(c.morphisms)
    elif kind == "instance":
        ec = category_of_elements(value)
        fibers = check_opfibration_fibers(ec)
        report["summary"] = f"{value.size()} rows over {len(value.category.objects)} objects, functorial"
        report["rows"] = {value.category.olabel(x): len(value.tables[x]) for x in value.category.objects}
        report["opfibration"] = fibers.holds
    elif kind == "functor":
        report["summary"] = f"functor on {len(value.source.objects)} objects, laws hold"
    elif kind == "sset":
        bad = audit_identities(value)
        report["valid"] = not bad
        report["summary"] = f"truncation {value.truncation}, sizes {list(value.sizes)}, identities hold"
        report["nondegenerate"] = list(value.nondegenerate_counts())
    elif kind == "profile":
        report["summary"] = f"profile at truncation {value.truncation}"
    return report


def cmd_nerve(args) -> dict:
    _, _, c = _load_category(args.path)
    if len(c.objects) > MAX_OBJECTS or len(c.morphisms) > MAX_MORPHISMS:
        if not args.force:
            raise ScaleExceeded(f"{len(c.objects)} objects / {len(c.morphisms)} morphisms exceed the desk-scale limits")
    nv = nerve(c, args.truncation)
    x = nv.sset
    report: dict[str, Any] = {
        "truncation": x.truncation,
        "simplices": list(x.sizes),
        "nondegenerate": list(x.nondegenerate_counts()),
        "identity_audit": audit_identities(x) or "ok",
    }
    if args.horns:
        report["horns"] = check_kan_condition(x, min(args.horn_dim, x.truncation), args.horns == "inner").as_dict()
    if args.full:
        report["nerve"] = nv.to_json()
    return report


def cmd_homology(args) -> dict:
    kind, value = _load_any(args)
    if kind == "instance":
        profile = hocolim_profile(value, args.truncation)
        report = {"space": "hocolim"}
    elif kind == "sset":
        cc = chain_complex(value)
        profile = homology_profile(cc)
        report = {"space": "sset"}
    else:
        c = io.as_category(kind, value)
        profile = classifying_space_profile(c, args.truncation)
        report = {"space": "classifying"}
    report["profile"] = profile.to_json()
    if args.export:
        x = value if kind == "sset" else nerve(
            category_of_elements(value).category if kind == "instance" else io.as_category(kind, value),
            args.truncation,
        ).sset
        cc = chain_complex(x)
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for n in range(1, cc.truncation + 1):
            f = out / f"boundary_{n}.txt"
            f.write_text(to_triplets(cc.boundary(n)))
            files.append(f.name)
        report["exported"] = files
    return report


def cmd_imset(args) -> dict:
    dags = [_load_dag(p) for p in args.paths]
    imsets = [standard_imset(g) for g in dags]
    report: dict[str, Any] = {"imsets": [u.to_json() for u in imsets]}
    if args.compare:
        if len(imsets) != 2:
            raise ValidationError("--compare needs exactly two DAGs")
        same = imset_equal(imsets[0], imsets[1])
        report["result"] = "equal" if same else "different"
    return report


def cmd_markov_eq(args) -> dict:
    g1, g2 = _load_dag(args.first), _load_dag(args.second)
    verdict = markov_equivalent(g1, g2)
    return {
        "equivalent": verdict.equivalent,
        "witness": verdict.witness,
        "immoralities": [[list(t) for t in enumerate_immoralities(g)] for g in (g1, g2)],
    }


def _parse_edge(text: str) -> tuple[str, str]:
    if "->" not in text:
        raise ValidationError(f"edge must be written a->b, got {text!r}")
    a, b = text.split("->", 1)
    return a.strip(), b.strip()


def cmd_intervene(args) -> dict:
    g = _load_dag(args.path)
    if args.do:
        iv = DoVariable(args.do)
    else:
        iv = DeleteEdge(*_parse_edge(args.delete_edge))
    h = intervene(g, iv)
    return {"dag": h.to_json(), "dot": to_dot(h)}


def cmd_query(args) -> dict:
    _, _, schema = _load_category(args.model)
    inst = _load_instance(args.instance, schema)
    if args.pattern == "collider":
        matches = collider_query(inst)
        return {"pattern": "collider", "count": len(matches), "solutions": [m.labels(schema) for m in matches]}
    if args.pattern == "source-edge":
        table = source_edge_query(inst)
        return {
            "pattern": "source-edge",
            "all_solvable": all(table.values()),
            "solutions": [{"vertex": v, "edges": es} for v, es in table.items()],
        }
    data = io.load_json(args.pattern)
    shape = io.load_category(data["shape"], Path(args.pattern).parent)
    nu = io.functor_from_json(data, source=shape, target=schema)
    answers = pattern_query(inst, nu)
    return {
        "pattern": args.pattern,
        "count": len(answers),
        "solutions": [{shape.olabel(x): row for x, row in a.items()} for a in answers],
    }


def cmd_migrate(args) -> dict:
    data = io.load_json(args.functor)
    f = io.functor_from_json(data, base=Path(args.functor).parent)
    if args.kind == "pullback":
        result = migrate_pullback(f, _load_instance(args.instance, f.target))
    elif args.kind == "left":
        result = migrate_left_kan(f, _load_instance(args.instance, f.source))
    else:
        result = migrate_right_kan(f, _load_instance(args.instance, f.source))
    result.check_functorial()
    return {"kind": args.kind, "instance": io.instance_to_json(result)}


def cmd_effect(args) -> dict:
    kind, model, schema = _load_category(args.model)
    inst = _load_instance(args.instance, schema)
    before = hocolim_profile(inst, args.truncation)
    report: dict[str, Any] = {}
    if args.do and "=" in args.do:
        var, row = args.do.split("=", 1)
        x = io.object_ref(schema, var.strip())
        after_inst = do_bind(inst, x, io.row_ref(inst.tables[x], row.strip()))
        report["intervention"] = {"bind": schema.olabel(x), "row": row.strip()}
    elif args.do or args.delete_edge:
        if kind != "dag":
            raise ValidationError("variable and edge interventions need a DAG model")
        iv = DoVariable(args.do) if args.do else DeleteEdge(*_parse_edge(args.delete_edge))
        cut = dag_to_category(intervene(model, iv))
        after_inst = migrate_pullback(subschema_inclusion(cut, schema), inst)
        report["intervention"] = {"do": args.do} if args.do else {"delete_edge": args.delete_edge}
    else:
        after_inst = inst
        report["intervention"] = None
    after = hocolim_profile(after_inst, args.truncation)
    report.update(causal_effect(before, after).to_json())
    return report


def _text(report: Any, prefix: str = "") -> list[str]:
    if isinstance(report, dict):
        lines = []
        for k in sorted(report):
            lines += _text(report[k], f"{prefix}{k}.")
        return lines
    return [f"{prefix[:-1]}: {json.dumps(report, sort_keys=True, ensure_ascii=False)}"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catcausal", description="Finite categories, nerves and causal models.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a category, quiver, DAG, instance, functor or sset file")
    p.add_argument("path")
    p.add_argument("--model", help="schema for an instance file that does not embed one")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("nerve", help="nerve of a category with identity and horn audits")
    p.add_argument("path")
    p.add_argument("--truncation", type=_truncation, default=DEFAULT_TRUNCATION)
    p.add_argument("--horns", choices=("inner", "all"))
    p.add_argument("--horn-dim", type=int, default=3)
    p.add_argument("--full", action="store_true", help="include face and degeneracy tables")
    p.add_argument("--force", action="store_true", help="skip the size limit")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("homology", help="homology profile of a category, instance or sset")
    p.add_argument("path")
    p.add_argument("--truncation", type=_truncation, default=DEFAULT_TRUNCATION)
    p.add_argument("--export", metavar="DIR", help="write boundary matrices as triplet files")
    p.add_argument("--model", help="schema for an instance file that does not embed one")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("imset", help="standard imsets of DAGs")
    p.add_argument("paths", nargs="+")
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=cmd_imset)

    p = sub.add_parser("markov-eq", help="skeleton and immorality comparison")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_markov_eq)

    p = sub.add_parser("intervene", help="graph surgery on a DAG")
    p.add_argument("path")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--do", metavar="VAR")
    g.add_argument("--delete-edge", metavar="A->B")
    p.set_defaults(func=cmd_intervene)

    p = sub.add_parser("query", help="solve lifting queries against an instance")
    p.add_argument("model")
    p.add_argument("instance")
    p.add_argument("--pattern", required=True, help="collider, source-edge, or a pattern JSON file")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("migrate", help="move an instance along a functor")
    p.add_argument("functor")
    p.add_argument("instance")
    p.add_argument("--kind", choices=("pullback", "left", "right"), required=True)
    p.set_defaults(func=cmd_migrate)

    p = sub.add_parser("effect", help="compare hocolim homology before and after an intervention")
    p.add_argument("model")
    p.add_argument("instance")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--do", metavar="VAR[=ROW]")
    g.add_argument("--delete-edge", metavar="A->B")
    p.add_argument("--truncation", type=_truncation, default=DEFAULT_TRUNCATION)
    p.set_defaults(func=cmd_effect)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except CatCausalError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness!r}", file=sys.stderr)
        return exc.exit_code
    except RecursionError:
        print(f"{args.command}: input too large", file=sys.stderr)
        return 4
    if args.format == "text":
        sys.stdout.write("\n".join(_text(report)) + "\n")
    else:
        sys.stdout.write(io.dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
