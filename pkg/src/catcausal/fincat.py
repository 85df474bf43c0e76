"""Finite categories, functors, natural transformations and Yoneda-style checks.

Objects and morphisms are small non-negative integer ids; labels are kept
alongside for reporting only. Every enumeration walks ids in ascending order,
so "first witness" answers are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BadIdentity,
    CyclicQuiver,
    MissingComposite,
    NonAssociative,
    NonFunctorial,
    NotAFunctor,
    ValidationError,
)

__all__ = [
    "Quiver",
    "FinCategory",
    "Functor",
    "NatTransformation",
    "SetFunctor",
    "UniversalArrowCandidate",
    "UniversalityVerdict",
    "BijectionReport",
    "validate_category",
    "category_from_labels",
    "free_category",
    "opposite",
    "identity_functor",
    "compose_functors",
    "validate_functor",
    "enumerate_functors",
    "enumerate_nat_transformations",
    "representable",
    "corepresentable",
    "check_universal_arrow",
    "check_free_category_universality",
    "yoneda_check",
    "crp_check",
    "is_retract",
    "connected_components",
]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (edge id, source, target)
    vertex_labels: Mapping[int, str] = field(default_factory=dict, compare=False)
    edge_labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex id")
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate edge id")
        vs = set(self.vertices)
        for e, s, t in self.edges:
            if s not in vs or t not in vs:
                raise ValidationError(f"edge {e} references unknown vertex", (e, s, t))

    def vlabel(self, v: int) -> str:
        return self.vertex_labels.get(v, str(v))

    def elabel(self, e: int) -> str:
        return self.edge_labels.get(e, f"e{e}")

    def find_cycle(self) -> list[int] | None:
        """Vertex sequence of some directed cycle, or None when acyclic."""
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for _, s, t in sorted(self.edges):
            out[s].append(t)
        color = {v: 0 for v in self.vertices}
        parent: dict[int, int] = {}
        for root in self.vertices:
            if color[root]:
                continue
            stack = [(root, iter(out[root]))]
            color[root] = 1
            while stack:
                v, it = stack[-1]
                for w in it:
                    if color[w] == 0:
                        color[w] = 1
                        parent[w] = v
                        stack.append((w, iter(out[w])))
                        break
                    if color[w] == 1:
                        cycle = [v]
                        while cycle[-1] != w:
                            cycle.append(parent[cycle[-1]])
                        cycle.reverse()
                        return cycle + [w]
                else:
                    color[v] = 2
                    stack.pop()
        return None


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category given by an explicit composition table.

    Build through :func:`validate_category` (or a constructor that calls it);
    the raw dataclass does not check its own laws.
    """

    objects: tuple[int, ...]
    morphisms: tuple[int, ...]
    src: Mapping[int, int]
    tgt: Mapping[int, int]
    identities: Mapping[int, int]
    composition: Mapping[tuple[int, int], int]
    object_labels: Mapping[int, str] = field(default_factory=dict)
    morphism_labels: Mapping[int, str] = field(default_factory=dict)
    # edge-id path for each morphism; only set for free categories
    paths: Mapping[int, tuple[int, ...]] | None = None
    quiver: Quiver | None = None

    def olabel(self, x: int) -> str:
        return self.object_labels.get(x, str(x))

    def mlabel(self, m: int) -> str:
        return self.morphism_labels.get(m, f"m{m}")

    def compose(self, g: int, f: int) -> int:
        return self.composition[(g, f)]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for m in self.morphisms:
            homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs.get((x, y), ())

    @cached_property
    def identity_set(self) -> frozenset[int]:
        return frozenset(self.identities.values())

    def is_identity(self, m: int) -> bool:
        return m in self.identity_set

    @cached_property
    def out_morphisms(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            out[self.src[m]].append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def op(self) -> "FinCategory":
        return opposite(self)

    def has_terminal_object(self) -> bool:
        return any(all(len(self.hom(x, t)) == 1 for x in self.objects) for t in self.objects)

    def has_initial_object(self) -> bool:
        return any(all(len(self.hom(i, x)) == 1 for x in self.objects) for i in self.objects)

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(
    objects: Iterable[int],
    morphisms: Iterable[tuple[int, int, int]],
    identities: Mapping[int, int],
    composition: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]],
    *,
    object_labels: Mapping[int, str] | None = None,
    morphism_labels: Mapping[int, str] | None = None,
    paths: Mapping[int, tuple[int, ...]] | None = None,
    quiver: Quiver | None = None,
) -> FinCategory:
    """Check every category law exhaustively and return the category."""
    objs = tuple(sorted(objects))
    if len(set(objs)) != len(objs):
        raise ValidationError("duplicate object id")
    mors = sorted(morphisms)
    ids = [m for m, _, _ in mors]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate morphism id")
    objset = set(objs)
    src = {m: s for m, s, _ in mors}
    tgt = {m: t for m, _, t in mors}
    for m, s, t in mors:
        if s not in objset or t not in objset:
            raise ValidationError(f"morphism {m} has unknown endpoint", m)
    if not isinstance(composition, Mapping):
        composition = {(g, f): gf for g, f, gf in composition}
    comp = dict(composition)

    for x in objs:
        if x not in identities:
            raise BadIdentity(f"object {x} has no identity", x)
        i = identities[x]
        if i not in src or src[i] != x or tgt[i] != x:
            raise BadIdentity(f"identity of {x} is not an endomorphism of {x}", i)

    for f in ids:
        for g in ids:
            if src[g] == tgt[f] and (g, f) not in comp:
                raise MissingComposite(f"no composite for ({g}, {f})", (g, f))
    for (g, f), gf in comp.items():
        if g not in src or f not in src:
            raise ValidationError(f"composition mentions unknown morphism ({g}, {f})", (g, f))
        if src[g] != tgt[f]:
            raise ValidationError(f"composite given for non-composable pair ({g}, {f})", (g, f))
        if gf not in src or src[gf] != src[f] or tgt[gf] != tgt[g]:
            raise ValidationError(f"composite {gf} of ({g}, {f}) has wrong type", (g, f, gf))

    for f in ids:
        if comp[(identities[tgt[f]], f)] != f or comp[(f, identities[src[f]])] != f:
            raise BadIdentity(f"identity law fails for {f}", f)

    for f in ids:
        for g in ids:
            if src[g] != tgt[f]:
                continue
            gf = comp[(g, f)]
            for h in ids:
                if src[h] != tgt[g]:
                    continue
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    raise NonAssociative(f"associativity fails at ({h}, {g}, {f})", (h, g, f))

    return FinCategory(
        objects=objs,
        morphisms=tuple(ids),
        src=src,
        tgt=tgt,
        identities=dict(identities),
        composition=comp,
        object_labels=dict(object_labels or {}),
        morphism_labels=dict(morphism_labels or {}),
        paths=paths,
        quiver=quiver,
    )


def category_from_labels(
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    table: Mapping[tuple[str, str], str] | None = None,
) -> FinCategory:
    """Small-category builder keyed by labels.

    Identities ``id_X`` and every composite with an identity are filled in;
    ``table`` supplies the remaining composites as ``(g, f) -> g∘f``.
    """
    oid = {o: i for i, o in enumerate(objects)}
    labels = [f"id_{o}" for o in objects] + [a for a, _, _ in arrows]
    mid = {lab: i for i, lab in enumerate(labels)}
    mors = [(i, i, i) for i in range(len(objects))]
    mors += [(mid[a], oid[s], oid[t]) for a, s, t in arrows]
    comp: dict[tuple[int, int], int] = {}
    for m, s, t in mors:
        comp[(t, m)] = m
        comp[(m, s)] = m
    for (g, f), gf in (table or {}).items():
        comp[(mid[g], mid[f])] = mid[gf]
    return validate_category(
        range(len(objects)),
        mors,
        {i: i for i in range(len(objects))},
        comp,
        object_labels=dict(enumerate(objects)),
        morphism_labels={i: lab for lab, i in mid.items()},
    )


def free_category(q: Quiver) -> FinCategory:
    """Path category of an acyclic quiver.

    Morphism ids: identities first (vertex order), then paths by length and
    lexicographic edge-id sequence.
    """
    cycle = q.find_cycle()
    if cycle is not None:
        raise CyclicQuiver("quiver has a directed cycle: " + " -> ".join(q.vlabel(v) for v in cycle), cycle)
    edges = sorted(q.edges)
    esrc = {e: s for e, s, _ in edges}
    etgt = {e: t for e, _, t in edges}
    out: dict[int, list[int]] = {v: [] for v in q.vertices}
    for e, s, _ in edges:
        out[s].append(e)

    paths: list[tuple[int, ...]] = []
    frontier = [(e,) for e, _, _ in edges]
    while frontier:
        paths.extend(frontier)
        frontier = [p + (e,) for p in frontier for e in out[etgt[p[-1]]]]
    paths.sort(key=lambda p: (len(p), p))

    verts = sorted(q.vertices)
    ident = {v: i for i, v in enumerate(verts)}
    path_id: dict[tuple, int] = {("id", v): i for v, i in ident.items()}
    mors = [(i, v, v) for v, i in ident.items()]
    path_of: dict[int, tuple[int, ...]] = {i: () for i in ident.values()}
    labels = {i: f"id_{q.vlabel(v)}" for v, i in ident.items()}
    for k, p in enumerate(paths, start=len(verts)):
        path_id[p] = k
        path_of[k] = p
        mors.append((k, esrc[p[0]], etgt[p[-1]]))
        labels[k] = q.elabel(p[0]) if len(p) == 1 else "∘".join(q.elabel(e) for e in reversed(p))

    def pid(p: tuple[int, ...], v: int) -> int:
        return path_id[("id", v)] if not p else path_id[p]

    src = {m: s for m, s, _ in mors}
    tgt = {m: t for m, _, t in mors}
    comp = {}
    for f, _, _ in mors:
        for g, _, _ in mors:
            if src[g] == tgt[f]:
                comp[(g, f)] = pid(path_of[f] + path_of[g], src[f])
    return validate_category(
        verts,
        mors,
        ident,
        comp,
        object_labels={v: q.vlabel(v) for v in verts},
        morphism_labels=labels,
        paths=path_of,
        quiver=q,
    )


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(
        objects=c.objects,
        morphisms=c.morphisms,
        src=dict(c.tgt),
        tgt=dict(c.src),
        identities=dict(c.identities),
        composition={(f, g): gf for (g, f), gf in c.composition.items()},
        object_labels=c.object_labels,
        morphism_labels={m: lab + "^op" for m, lab in c.morphism_labels.items()},
    )


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: Mapping[int, int]
    mor_map: Mapping[int, int]

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def ob(self, x: int) -> int:
        return self.obj_map[x]

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (
            tuple(self.obj_map[x] for x in self.source.objects),
            tuple(self.mor_map[m] for m in self.source.morphisms),
        )

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def validate_functor(
    source: FinCategory, target: FinCategory, obj_map: Mapping[int, int], mor_map: Mapping[int, int]
) -> Functor:
    tobjs = set(target.objects)
    for x in source.objects:
        if obj_map.get(x) not in tobjs:
            raise NotAFunctor(f"object {x} has no image", x)
    for m in source.morphisms:
        fm = mor_map.get(m)
        if fm not in target.src:
            raise NotAFunctor(f"morphism {m} has no image", m)
        if target.src[fm] != obj_map[source.src[m]] or target.tgt[fm] != obj_map[source.tgt[m]]:
            raise NotAFunctor(f"morphism {m} not sent between the images of its ends", m)
    for x in source.objects:
        if mor_map[source.identities[x]] != target.identities[obj_map[x]]:
            raise NotAFunctor(f"identity of {x} not preserved", x)
    for (g, f), gf in source.composition.items():
        if target.compose(mor_map[g], mor_map[f]) != mor_map[gf]:
            raise NotAFunctor(f"composite ({g}, {f}) not preserved", (g, f))
    return Functor(source, target, dict(obj_map), dict(mor_map))


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g: Functor, f: Functor) -> Functor:
    """g∘f; requires f.target is g.source."""
    if f.target is not g.source:
        raise NotAFunctor("functors are not composable")
    return Functor(
        f.source,
        g.target,
        {x: g.obj_map[f.obj_map[x]] for x in f.source.objects},
        {m: g.mor_map[f.mor_map[m]] for m in f.source.morphisms},
    )


def _composition_schedule(c: FinCategory, order: Sequence[int]) -> dict[int, list[tuple[int, int, int]]]:
    """Group composition triples by the position at which all three are assigned."""
    pos = {m: k for k, m in enumerate(order)}
    sched: dict[int, list[tuple[int, int, int]]] = {}
    for (g, f), gf in c.composition.items():
        last = max(pos[g], pos[f], pos[gf])
        sched.setdefault(last, []).append((g, f, gf))
    return sched


def enumerate_functors(
    c: FinCategory,
    d: FinCategory,
    obj_allowed: Callable[[int], Iterable[int]] | None = None,
    mor_allowed: Callable[[int], Iterable[int]] | None = None,
) -> list[Functor]:
    """All functors c -> d, optionally restricted per object/morphism.

    Backtracks over object images, then morphism images in id order, pruning
    with the composition table as soon as a triple is fully assigned.
    """
    objs = c.objects
    ocands = [
        [y for y in d.objects if obj_allowed is None or y in set(obj_allowed(x))] for x in objs
    ]
    linked = {(c.src[m], c.tgt[m]) for m in c.morphisms}
    order = list(c.morphisms)
    sched = _composition_schedule(c, order)
    mallowed = {m: None if mor_allowed is None else set(mor_allowed(m)) for m in order}
    results: list[Functor] = []

    def assign_objects(k: int, omap: dict[int, int]):
        if k == len(objs):
            assign_morphisms(0, omap, {})
            return
        x = objs[k]
        for y in ocands[k]:
            omap[x] = y
            ok = True
            for j in range(k + 1):
                w = objs[j]
                if (w, x) in linked and not d.hom(omap[w], y):
                    ok = False
                    break
                if (x, w) in linked and not d.hom(y, omap[w]):
                    ok = False
                    break
            if ok:
                assign_objects(k + 1, omap)
            del omap[x]

    def assign_morphisms(k: int, omap: dict[int, int], mmap: dict[int, int]):
        if k == len(order):
            results.append(Functor(c, d, dict(omap), dict(mmap)))
            return
        m = order[k]
        s, t = omap[c.src[m]], omap[c.tgt[m]]
        if c.is_identity(m):
            cands: Iterable[int] = (d.identities[s],)
        else:
            cands = d.hom(s, t)
        allow = mallowed[m]
        for y in cands:
            if allow is not None and y not in allow:
                continue
            mmap[m] = y
            if all(d.composition[(mmap[g], mmap[f])] == mmap[gf] for g, f, gf in sched.get(k, ())):
                assign_morphisms(k + 1, omap, mmap)
            del mmap[m]

    assign_objects(0, {})
    return results


@dataclass(frozen=True, eq=False)
class SetFunctor:
    """A covariant functor from a finite category into finite sets.

    ``tables[x]`` is the ordered row set over object ``x``; ``actions[m]`` is a
    dict from rows of the source table to rows of the target table.
    """

    category: FinCategory
    tables: Mapping[int, tuple]
    actions: Mapping[int, Mapping]

    def act(self, m: int, row):
        return self.actions[m][row]

    def size(self) -> int:
        return sum(len(t) for t in self.tables.values())

    def same_as(self, other: "SetFunctor") -> bool:
        return (
            self.category is other.category
            and all(tuple(self.tables[x]) == tuple(other.tables[x]) for x in self.category.objects)
            and all(dict(self.actions[m]) == dict(other.actions[m]) for m in self.category.morphisms)
        )

    def check_functorial(self) -> None:
        c = self.category
        for x in c.objects:
            ident = self.actions[c.identities[x]]
            for r in self.tables[x]:
                if ident[r] != r:
                    raise NonFunctorial(f"identity of {c.olabel(x)} moves row {r!r}", (c.identities[x], r))
        for (g, f), gf in c.composition.items():
            ag, af, agf = self.actions[g], self.actions[f], self.actions[gf]
            for r in self.tables[c.src[f]]:
                if ag[af[r]] != agf[r]:
                    raise NonFunctorial(
                        f"action of {c.mlabel(gf)} differs from {c.mlabel(g)} after {c.mlabel(f)} on row {r!r}",
                        (g, f),
                    )


def representable(c: FinCategory, r: int) -> SetFunctor:
    """Hom(r, -) as a set-valued functor on c; rows are morphism ids."""
    tables = {x: c.hom(r, x) for x in c.objects}
    actions = {f: {m: c.compose(f, m) for m in tables[c.src[f]]} for f in c.morphisms}
    return SetFunctor(c, tables, actions)


def corepresentable(c: FinCategory, x: int) -> SetFunctor:
    """Hom(-, x) as a set-valued functor on the opposite of c."""
    op = c.op
    tables = {y: c.hom(y, x) for y in c.objects}
    # a morphism f: a -> b of c is f^op: b -> a in op, acting by precomposition
    actions = {f: {m: c.compose(m, f) for m in tables[c.tgt[f]]} for f in c.morphisms}
    return SetFunctor(op, tables, actions)


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: Functor | SetFunctor
    target: Functor | SetFunctor
    components: Mapping[int, object]  # morphism id, or row->row dict for set-valued functors


def _enumerate_set_nats(k1: SetFunctor, k2: SetFunctor) -> list[NatTransformation]:
    c = k1.category
    slots = [(x, r) for x in c.objects for r in k1.tables[x]]
    pos = {s: i for i, s in enumerate(slots)}
    checks: dict[int, list[tuple[int, int, int]]] = {}
    # alpha_{tgt f}(K1 f (r)) == K2 f (alpha_{src f}(r))
    for f in c.morphisms:
        a, b = c.src[f], c.tgt[f]
        for r in k1.tables[a]:
            i, j = pos[(a, r)], pos[(b, k1.actions[f][r])]
            checks.setdefault(max(i, j), []).append((f, i, j))
    out: list[NatTransformation] = []
    chosen: list = [None] * len(slots)

    def rec(k: int):
        if k == len(slots):
            comps: dict[int, dict] = {x: {} for x in c.objects}
            for (x, r), v in zip(slots, chosen):
                comps[x][r] = v
            out.append(NatTransformation(k1, k2, comps))
            return
        x, _ = slots[k]
        for v in k2.tables[x]:
            chosen[k] = v
            if all(chosen[j] == k2.actions[f][chosen[i]] for f, i, j in checks.get(k, ())):
                rec(k + 1)
        chosen[k] = None

    if any(k1.tables[x] and not k2.tables[x] for x in c.objects):
        return []
    rec(0)
    return out


def _enumerate_functor_nats(f: Functor, g: Functor) -> list[NatTransformation]:
    c, d = f.source, f.target
    objs = c.objects
    pos = {x: i for i, x in enumerate(objs)}
    checks: dict[int, list[int]] = {}
    for m in c.morphisms:
        checks.setdefault(max(pos[c.src[m]], pos[c.tgt[m]]), []).append(m)
    out: list[NatTransformation] = []
    comps: dict[int, int] = {}

    def rec(k: int):
        if k == len(objs):
            out.append(NatTransformation(f, g, dict(comps)))
            return
        x = objs[k]
        for a in d.hom(f.obj_map[x], g.obj_map[x]):
            comps[x] = a
            if all(
                d.compose(g.mor_map[m], comps[c.src[m]]) == d.compose(comps[c.tgt[m]], f.mor_map[m])
                for m in checks.get(k, ())
            ):
                rec(k + 1)
            del comps[x]

    rec(0)
    return out


def enumerate_nat_transformations(f, g) -> list[NatTransformation]:
    """Every natural transformation f => g.

    Works for parallel functors between finite categories and for pairs of
    set-valued functors on the same category.
    """
    if isinstance(f, SetFunctor) and isinstance(g, SetFunctor):
        if f.category is not g.category:
            raise ValidationError("set-valued functors live on different categories")
        return _enumerate_set_nats(f, g)
    if f.source is not g.source or f.target is not g.target:
        raise ValidationError("functors are not parallel")
    return _enumerate_functor_nats(f, g)


@dataclass(frozen=True)
class UniversalArrowCandidate:
    functor: Functor  # S: D -> C
    c: int
    r: int
    u: int


@dataclass(frozen=True)
class UniversalityVerdict:
    holds: bool
    witness_object: int | None = None
    witness_arrow: int | None = None
    solutions: int | None = None

    def __bool__(self):
        return self.holds


def check_universal_arrow(cand: UniversalArrowCandidate) -> UniversalityVerdict:
    s = cand.functor
    d, cc = s.source, s.target
    if cc.src[cand.u] != cand.c or cc.tgt[cand.u] != s.obj_map[cand.r]:
        raise ValidationError("u is not an arrow c -> S(r)")
    for dd in d.objects:
        for f in cc.hom(cand.c, s.obj_map[dd]):
            n = sum(1 for fp in d.hom(cand.r, dd) if cc.compose(s.mor_map[fp], cand.u) == f)
            if n != 1:
                return UniversalityVerdict(False, dd, f, n)
    return UniversalityVerdict(True)


def check_free_category_universality(q: Quiver, targets: Iterable[FinCategory]) -> UniversalityVerdict:
    """Finite check that the edge embedding q -> U(free(q)) is a universal arrow.

    For every target category D and quiver map phi: q -> U(D), exactly one
    functor free(q) -> D must extend phi. The witness reports the edge-map
    index of the first failing phi.
    """
    fq = free_category(q)
    edge_mor = {fq.paths[m][0]: m for m in fq.morphisms if len(fq.paths[m]) == 1}
    edges = sorted(q.edges)
    verts = sorted(q.vertices)
    for d in targets:
        for vimg in product(d.objects, repeat=len(verts)):
            vmap = dict(zip(verts, vimg))
            choices = [d.hom(vmap[s], vmap[t]) for _, s, t in edges]
            for k, eimg in enumerate(product(*choices)):
                phi = {edge_mor[e]: img for (e, _, _), img in zip(edges, eimg)}
                n = len(
                    enumerate_functors(
                        fq,
                        d,
                        obj_allowed=lambda x: (vmap[x],),
                        mor_allowed=lambda m: (phi[m],) if m in phi else d.morphisms,
                    )
                )
                if n != 1:
                    return UniversalityVerdict(False, None, k, n)
    return UniversalityVerdict(True)


@dataclass(frozen=True)
class BijectionReport:
    holds: bool
    left_size: int
    right_size: int
    mapping: tuple = ()
    note: str = ""

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {"holds": self.holds, "left": self.left_size, "right": self.right_size, "note": self.note}


def _bijection(images: list, codomain: Sequence, note: str = "") -> BijectionReport:
    ok = len(set(images)) == len(images) and set(images) == set(codomain) and len(images) == len(codomain)
    return BijectionReport(ok, len(images), len(codomain), tuple(enumerate(images)), note)


def yoneda_check(c: FinCategory, r: int, k: SetFunctor) -> BijectionReport:
    """Nat(Hom(r, -), K) against K(r) via alpha |-> alpha_r(id_r)."""
    if k.category is not c:
        raise ValidationError("K is not defined on this category")
    nats = enumerate_nat_transformations(representable(c, r), k)
    images = [a.components[r][c.identities[r]] for a in nats]
    return _bijection(images, k.tables[r], "alpha -> alpha_r(id_r)")


def crp_check(c: FinCategory, x: int, y: int) -> BijectionReport:
    """Hom(x, y) against Nat(Hom(-, x), Hom(-, y)), enumerated on the opposite category."""
    hx, hy = corepresentable(c, x), corepresentable(c, y)
    nats = enumerate_nat_transformations(hx, hy)
    images = [a.components[x][c.identities[x]] for a in nats]
    return _bijection(images, c.hom(x, y), "alpha -> alpha_x(id_x)")


def is_retract(c: FinCategory, a: int, b: int) -> tuple[int, int] | None:
    """First (i, r) with i: a -> b, r: b -> a and r∘i = id_a, or None."""
    ida = c.identities[a]
    for i in c.hom(a, b):
        for r in c.hom(b, a):
            if c.compose(r, i) == ida:
                return (i, r)
    return None


def connected_components(c: FinCategory) -> list[list[int]]:
    """Objects grouped by the undirected reachability of the underlying graph."""
    adj: dict[int, set[int]] = {x: set() for x in c.objects}
    for m in c.morphisms:
        adj[c.src[m]].add(c.tgt[m])
        adj[c.tgt[m]].add(c.src[m])
    seen: set[int] = set()
    comps = []
    for x in c.objects:
        if x in seen:
            continue
        comp, dq = [], deque([x])
        seen.add(x)
        while dq:
            v = dq.popleft()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
        comps.append(sorted(comp))
    return comps
