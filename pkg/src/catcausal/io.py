"""Reading and writing the JSON and DOT formats used by the command line.

Formats (objects and morphisms may be named by label or by integer id):

* category, by label: ``{"objects": [...], "morphisms": [[name, src, tgt], ...],
  "composition": [[g, f, g∘f], ...]}``; identities ``id_X`` are implicit.
* category, by id: ``{"objects": [{"id", "label"}], "morphisms": [{"id",
  "label", "src", "tgt"}], "identities": {obj: mor}, "composition":
  [[g, f, g∘f], ...]}``. Without ``identities`` it is a quiver and is read as
  its free category.
* quiver: ``{"vertices": [...], "edges": [[src, tgt], ...]}``, read as its
  free category. Edges may also be ``{"name", "source", "target"}``.
* dag: ``{"variables": [...], "edges": [[a, b], ...]}`` or a DOT digraph.
* instance: ``{"schema": <category | path>, "tables": {obj: [rows]},
  "actions": {mor: {row: row}}}``.
* functor: ``{"source": <category | path>, "target": <category | path>,
  "objects": {obj: obj}, "morphisms": {mor: mor}}``.
* sset: the output of ``TruncatedSSet.to_json``.
* profile: ``{"truncation": N, "betti": [...], "torsion": [[...], ...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Hashable, Mapping

from .causal import CausalDag, dag_to_category, parse_dot
from .elements import validate_instance
from .errors import DanglingRow, ParseError, ValidationError
from .fincat import (
    FinCategory,
    Functor,
    Quiver,
    SetFunctor,
    category_from_labels,
    free_category,
    validate_category,
    validate_functor,
)
from .homology import HomologyProfile
from .simplex import TruncatedSSet

KINDS = ("category", "quiver", "dag", "instance", "functor", "sset", "profile")


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def is_dot(path: str | Path, text: str) -> bool:
    if str(path).endswith((".dot", ".gv")):
        return True
    head = text.lstrip().split(None, 1)[0].lower() if text.strip() else ""
    return head in ("digraph", "graph", "strict")


def load_json(path: str | Path) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def detect_kind(data: Any) -> str:
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object at top level")
    kind = data.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}")
        return kind
    keys = set(data)
    if "tables" in keys:
        return "instance"
    if "betti" in keys:
        return "profile"
    if "levels" in keys:
        return "sset"
    if {"source", "target"} <= keys:
        return "functor"
    if "variables" in keys:
        return "dag"
    if "vertices" in keys:
        return "quiver"
    if "objects" in keys:
        return "category"
    raise ParseError("cannot tell what kind of document this is")


def load(path: str | Path) -> tuple[str, Any]:
    """Read any supported file and return ``(kind, value)``."""
    text = read_text(path)
    if is_dot(path, text):
        return "dag", parse_dot(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    return from_json(data, base=Path(path).parent)


def from_json(data: Any, base: Path = Path(".")) -> tuple[str, Any]:
    kind = detect_kind(data)
    reader = {
        "category": category_from_json,
        "quiver": lambda d: free_category(quiver_from_json(d)),
        "dag": dag_from_json,
        "instance": lambda d: instance_from_json(d, base=base),
        "functor": lambda d: functor_from_json(d, base=base),
        "sset": TruncatedSSet.from_json,
        "profile": HomologyProfile.from_json,
    }[kind]
    try:
        return kind, reader(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed {kind} document: {exc!r}") from exc


def _endpoints(item) -> tuple[str, str, str | None]:
    if isinstance(item, dict):
        return str(item["source"]), str(item["target"]), item.get("name")
    if len(item) == 3:
        return str(item[1]), str(item[2]), str(item[0])
    s, t = item
    return str(s), str(t), None


def _is_id_format(data: Mapping) -> bool:
    return any(isinstance(o, dict) for o in data.get("objects", []))


def category_from_id_json(data: Mapping) -> FinCategory:
    """The id-keyed form: objects ``{"id", "label"}``, morphisms ``{"id", "label",
    "src", "tgt"}``, ``identities`` and a full ``composition`` table."""
    objs = [int(o["id"]) for o in data["objects"]]
    olabels = {int(o["id"]): str(o.get("label", o["id"])) for o in data["objects"]}
    mors = [(int(m["id"]), int(m["src"]), int(m["tgt"])) for m in data["morphisms"]]
    mlabels = {int(m["id"]): str(m.get("label", m["id"])) for m in data["morphisms"]}
    if "identities" not in data:
        q = Quiver(tuple(objs), tuple(mors), olabels, mlabels)
        return free_category(q)
    ids = {int(k): int(v) for k, v in data["identities"].items()}
    comp = {(int(g), int(f)): int(gf) for g, f, gf in data.get("composition", [])}
    return validate_category(objs, mors, ids, comp, object_labels=olabels, morphism_labels=mlabels)


def category_from_json(data: Mapping) -> FinCategory:
    if _is_id_format(data):
        return category_from_id_json(data)
    objects = [str(o) for o in data["objects"]]
    arrows = []
    for item in data.get("morphisms", []):
        s, t, name = _endpoints(item)
        if name is None:
            raise ParseError("category morphisms need names")
        for end in (s, t):
            if end not in objects:
                raise ValidationError(f"morphism {name} references unknown object {end}", name)
        arrows.append((name, s, t))
    names = {f"id_{o}" for o in objects} | {a for a, _, _ in arrows}
    table = {}
    for g, f, gf in data.get("composition", []):
        for m in (g, f, gf):
            if m not in names:
                raise ValidationError(f"composition references unknown morphism {m}", m)
        table[(g, f)] = gf
    return category_from_labels(objects, arrows, table)


def quiver_from_json(data: Mapping) -> Quiver:
    verts = [str(v) for v in data["vertices"]]
    vid = {v: i for i, v in enumerate(verts)}
    edges, labels = [], {}
    for k, item in enumerate(data.get("edges", [])):
        s, t, name = _endpoints(item)
        for end in (s, t):
            if end not in vid:
                raise ValidationError(f"edge references unknown vertex {end}", end)
        edges.append((k, vid[s], vid[t]))
        labels[k] = name or f"{s}->{t}"
    return Quiver(tuple(range(len(verts))), tuple(edges), dict(enumerate(verts)), labels)


def dag_from_json(data: Mapping) -> CausalDag:
    return CausalDag.build([str(v) for v in data["variables"]], [(str(a), str(b)) for a, b in data.get("edges", [])])


def load_category(ref: Any, base: Path = Path(".")) -> FinCategory:
    """A category from an inline document or a path to one (DOT, DAG, quiver, category)."""
    if isinstance(ref, str):
        kind, value = load(base / ref)
    else:
        kind, value = from_json(ref, base)
    return as_category(kind, value)


def as_category(kind: str, value: Any) -> FinCategory:
    if kind == "dag":
        return dag_to_category(value)
    if kind in ("category", "quiver"):
        return value
    raise ValidationError(f"a {kind} is not a category")


def _resolve(ids: Mapping[str, int], count: int, ref: Any, what: str) -> int:
    if isinstance(ref, str) and ref in ids:
        return ids[ref]
    if isinstance(ref, int) and not isinstance(ref, bool) and 0 <= ref < count:
        return ref
    if isinstance(ref, str) and ref.isdigit() and int(ref) < count:
        return int(ref)
    raise ValidationError(f"unknown {what} {ref!r}", ref)


def object_ref(c: FinCategory, ref: Any) -> int:
    return _resolve({c.olabel(x): x for x in c.objects}, len(c.objects), ref, "object")


def morphism_ref(c: FinCategory, ref: Any) -> int:
    return _resolve({c.mlabel(m): m for m in c.morphisms}, len(c.morphisms), ref, "morphism")


def _row(value: Any) -> Hashable:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def row_ref(rows: tuple, ref: Any) -> Hashable:
    """Match a row given as JSON key (always a string) or value against a table."""
    if ref in rows:
        return ref
    by_text = {str(r): r for r in rows}
    if str(ref) in by_text:
        return by_text[str(ref)]
    raise ValidationError(f"unknown row {ref!r}", ref)


def instance_from_json(data: Mapping, schema: FinCategory | None = None, base: Path = Path(".")) -> SetFunctor:
    if schema is None:
        if "schema" not in data:
            raise ValidationError("instance has no schema")
        schema = load_category(data["schema"], base)
    tables = {}
    for ref, rows in data.get("tables", {}).items():
        tables[object_ref(schema, ref)] = tuple(_row(r) for r in rows)
    full = {x: tables.get(x, ()) for x in schema.objects}
    actions = {}
    for ref, act in data.get("actions", {}).items():
        m = morphism_ref(schema, ref)
        src, tgt = full[schema.src[m]], full[schema.tgt[m]]
        mapping = {}
        for r, v in act.items():
            try:
                mapping[row_ref(src, r)] = row_ref(tgt, _row(v))
            except ValidationError as exc:
                raise DanglingRow(f"{schema.mlabel(m)}: {exc}", (m, r)) from exc
        actions[m] = mapping
    return validate_instance(schema, tables, actions)


def functor_from_json(
    data: Mapping,
    base: Path = Path("."),
    source: FinCategory | None = None,
    target: FinCategory | None = None,
) -> Functor:
    """Object images are required; non-identity morphisms out of a free category
    may be given on generators only."""
    src = source if source is not None else load_category(data["source"], base)
    tgt = target if target is not None else load_category(data["target"], base)
    omap = {object_ref(src, k): object_ref(tgt, v) for k, v in data.get("objects", {}).items()}
    mmap = {morphism_ref(src, k): morphism_ref(tgt, v) for k, v in data.get("morphisms", {}).items()}
    for x in src.objects:
        if x not in omap:
            raise ValidationError(f"no image for object {src.olabel(x)}", x)
        mmap.setdefault(src.identities[x], tgt.identities[omap[x]])
    if src.paths is not None:
        edge_mor = {src.paths[m][0]: m for m in src.morphisms if len(src.paths[m]) == 1}
        for m in src.morphisms:
            if m not in mmap and src.paths[m]:
                img = None
                for e in src.paths[m]:
                    g = mmap.get(edge_mor[e])
                    if g is None:
                        raise ValidationError(f"no image for generator {src.mlabel(edge_mor[e])}", e)
                    img = g if img is None else tgt.compose(g, img)
                mmap[m] = img
    for m in src.morphisms:
        if m not in mmap:
            raise ValidationError(f"no image for morphism {src.mlabel(m)}", m)
    return validate_functor(src, tgt, omap, mmap)


def category_to_json(c: FinCategory) -> dict:
    """The id-keyed form, readable back by :func:`category_from_json`."""
    return {
        "objects": [{"id": x, "label": c.olabel(x)} for x in c.objects],
        "morphisms": [
            {"id": m, "label": c.mlabel(m), "src": c.src[m], "tgt": c.tgt[m]} for m in c.morphisms
        ],
        "identities": {str(x): c.identities[x] for x in c.objects},
        "composition": sorted([g, f, gf] for (g, f), gf in c.composition.items()),
    }


def _row_json(r: Hashable) -> Any:
    if isinstance(r, tuple):
        return [_row_json(x) for x in r]
    return r


def instance_to_json(inst: SetFunctor) -> dict:
    c = inst.category
    return {
        "schema": category_to_json(c),
        "tables": {c.olabel(x): [_row_json(r) for r in inst.tables[x]] for x in c.objects},
        "actions": {
            c.mlabel(m): {json.dumps(_row_json(r)) if isinstance(r, tuple) else str(r): _row_json(v)
                          for r, v in inst.actions[m].items()}
            for m in c.morphisms
            if not c.is_identity(m)
        },
    }


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
