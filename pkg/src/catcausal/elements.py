"""Instances over a schema, categories of elements, lifting queries and migration.

An instance is a :class:`~catcausal.fincat.SetFunctor`; this module adds its
validation, the Grothendieck construction with its projection, lifting-problem
solving, and the three migration functors (pullback, left and right Kan
extension) computed over explicit comma categories.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DanglingRow,
    MissingAction,
    NonCommutingSquare,
    NotPullbackInstance,
    ScaleExceeded,
    UnknownRow,
    UnknownVariable,
    ValidationError,
)
from .fincat import (
    BijectionReport,
    FinCategory,
    Functor,
    Quiver,
    SetFunctor,
    compose_functors,
    enumerate_functors,
    enumerate_nat_transformations,
    free_category,
    validate_category,
    validate_functor,
)
from .fincat import category_from_labels
from .library import walking_arrow, walking_collider

InstanceAssignment = SetFunctor

__all__ = [
    "InstanceAssignment",
    "ElementsCategory",
    "FiberReport",
    "LiftingProblem",
    "LiftingVerdict",
    "MigrationContext",
    "validate_instance",
    "category_of_elements",
    "check_opfibration_fibers",
    "solve_lifting",
    "check_lifting_property",
    "collider_query",
    "source_edge_query",
    "pattern_query",
    "migrate_pullback",
    "migrate_left_kan",
    "migrate_right_kan",
    "comma_over",
    "comma_under",
    "verify_pullback_square",
    "check_adjunction",
    "do_bind",
    "subschema_inclusion",
]


def validate_instance(
    schema: FinCategory,
    tables: Mapping[int, Sequence[Hashable]],
    actions: Mapping[int, Mapping[Hashable, Hashable]],
) -> SetFunctor:
    """Build an instance, filling identity actions and composites of given actions.

    Only actions that cannot be derived (non-identity, not a composite of
    supplied ones) must be supplied; every supplied or derived action is then
    audited for functoriality.
    """
    for x in tables:
        if x not in schema.src.values() and x not in schema.objects:
            raise ValidationError(f"table for unknown object {x}", x)
    tabs = {x: tuple(tables.get(x, ())) for x in schema.objects}
    for x, rows in tabs.items():
        if len(set(rows)) != len(rows):
            raise ValidationError(f"duplicate row in table {schema.olabel(x)}", x)
    acts: dict[int, dict] = {}
    for m, act in actions.items():
        if m not in schema.src:
            raise ValidationError(f"action for unknown morphism {m}", m)
        s, t = set(tabs[schema.src[m]]), set(tabs[schema.tgt[m]])
        for r, v in act.items():
            if r not in s:
                raise DanglingRow(f"{schema.mlabel(m)} acts on unknown row {r!r}", (m, r))
            if v not in t:
                raise DanglingRow(f"{schema.mlabel(m)} sends {r!r} to unknown row {v!r}", (m, v))
        if set(act) != s:
            raise MissingAction(f"{schema.mlabel(m)} is not total on {schema.olabel(schema.src[m])}", m)
        acts[m] = dict(act)
    for x in schema.objects:
        acts.setdefault(schema.identities[x], {r: r for r in tabs[x]})
    for m in schema.morphisms:
        if not tabs[schema.src[m]]:
            acts.setdefault(m, {})
    changed = True
    while changed:
        changed = False
        for (g, f), gf in schema.composition.items():
            if gf not in acts and g in acts and f in acts:
                acts[gf] = {r: acts[g][acts[f][r]] for r in tabs[schema.src[f]]}
                changed = True
    for m in schema.morphisms:
        if m not in acts:
            raise MissingAction(f"no action given or derivable for {schema.mlabel(m)}", m)
    inst = SetFunctor(schema, tabs, {m: acts[m] for m in schema.morphisms})
    inst.check_functorial()
    return inst


def singleton_instance(schema: FinCategory) -> SetFunctor:
    return validate_instance(schema, {x: (0,) for x in schema.objects}, {m: {0: 0} for m in schema.morphisms})


@dataclass(frozen=True, eq=False)
class ElementsCategory:
    category: FinCategory
    projection: Functor
    instance: SetFunctor
    element: Mapping[int, tuple[int, Hashable]]  # object id -> (schema object, row)
    arrow: Mapping[int, tuple[int, Hashable]]  # morphism id -> (schema morphism, source row)

    def object_id(self, s: int, row: Hashable) -> int:
        return self._ids[(s, row)]

    @property
    def _ids(self) -> dict:
        cached = self.__dict__.get("_idc")
        if cached is None:
            cached = {v: k for k, v in self.element.items()}
            object.__setattr__(self, "_idc", cached)
        return cached


def category_of_elements(inst: SetFunctor) -> ElementsCategory:
    """Objects (s, x) with x in inst(s); morphisms (f, x): (s, x) -> (s', inst(f)(x))."""
    c = inst.category
    element: dict[int, tuple[int, Hashable]] = {}
    oid: dict[tuple[int, Hashable], int] = {}
    for s in c.objects:
        for r in inst.tables[s]:
            oid[(s, r)] = len(element)
            element[len(element)] = (s, r)
    arrow: dict[int, tuple[int, Hashable]] = {}
    mid: dict[tuple[int, Hashable], int] = {}
    mors = []
    for f in c.morphisms:
        for r in inst.tables[c.src[f]]:
            k = len(arrow)
            arrow[k] = (f, r)
            mid[(f, r)] = k
            mors.append((k, oid[(c.src[f], r)], oid[(c.tgt[f], inst.actions[f][r])]))
    identities = {oid[(s, r)]: mid[(c.identities[s], r)] for (s, r) in oid}
    comp = {}
    for k1, (f, r) in arrow.items():
        r2 = inst.actions[f][r]
        for g in c.out_morphisms[c.tgt[f]]:
            comp[(mid[(g, r2)], k1)] = mid[(c.compose(g, f), r)]
    cat = validate_category(
        element.keys(),
        mors,
        identities,
        comp,
        object_labels={k: f"({c.olabel(s)},{r})" for k, (s, r) in element.items()},
        morphism_labels={k: f"({c.mlabel(f)},{r})" for k, (f, r) in arrow.items()},
    )
    proj = Functor(cat, c, {k: s for k, (s, _) in element.items()}, {k: f for k, (f, _) in arrow.items()})
    return ElementsCategory(cat, proj, inst, element, arrow)


@dataclass(frozen=True)
class FiberReport:
    holds: bool
    fibers: Mapping[int, tuple[tuple[int, ...], tuple[int, ...]]]  # c -> (objects, morphisms over id_c)
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.holds


def check_opfibration_fibers(ec: ElementsCategory) -> FiberReport:
    """Audit the fibers of the projection.

    The fiber over c is the subcategory of elements over c and morphisms sent
    to id_c. Checked: those morphisms project to id_c and are identities (the
    fiber is discrete), and every f: c -> c' has exactly one lift out of each
    element over c.
    """
    cat, p, c = ec.category, ec.projection, ec.instance.category
    fibers = {}
    failures = []
    for s in c.objects:
        objs = tuple(k for k in cat.objects if p.obj_map[k] == s)
        ids = c.identities[s]
        mors = tuple(m for m in cat.morphisms if p.mor_map[m] == ids)
        for m in mors:
            if cat.src[m] not in objs or cat.tgt[m] not in objs:
                failures.append(f"morphism {cat.mlabel(m)} over id leaves the fiber of {c.olabel(s)}")
            if not cat.is_identity(m):
                failures.append(f"fiber of {c.olabel(s)} has non-identity {cat.mlabel(m)}")
        if len(objs) != len(ec.instance.tables[s]):
            failures.append(f"fiber of {c.olabel(s)} has {len(objs)} objects")
        fibers[s] = (objs, mors)
    for f in c.morphisms:
        for k in fibers[c.src[f]][0]:
            lifts = [m for m in cat.out_morphisms[k] if p.mor_map[m] == f]
            if len(lifts) != 1:
                failures.append(f"{len(lifts)} lifts of {c.mlabel(f)} at {cat.olabel(k)}")
    return FiberReport(not failures, fibers, tuple(failures))


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """Square with f: A -> B, p: X -> Y, mu: A -> X, nu: B -> Y and p∘mu = nu∘f."""

    f: Functor
    p: Functor
    mu: Functor
    nu: Functor

    def __post_init__(self):
        f, p, mu, nu = self.f, self.p, self.mu, self.nu
        if mu.source is not f.source or mu.target is not p.source:
            raise ValidationError("mu must run from dom(f) to dom(p)")
        if nu.source is not f.target or nu.target is not p.target:
            raise ValidationError("nu must run from cod(f) to cod(p)")
        for a in f.source.objects:
            if p.obj_map[mu.obj_map[a]] != nu.obj_map[f.obj_map[a]]:
                raise NonCommutingSquare(f"square fails on object {a}", a)
        for m in f.source.morphisms:
            if p.mor_map[mu.mor_map[m]] != nu.mor_map[f.mor_map[m]]:
                raise NonCommutingSquare(f"square fails on morphism {m}", m)


def solve_lifting(lp: LiftingProblem) -> list[Functor]:
    """All h: B -> X with p∘h = nu and h∘f = mu, in lexicographic order."""
    f, p, mu, nu = lp.f, lp.p, lp.mu, lp.nu
    b_cat, x_cat = f.target, p.source
    ocands: dict[int, set[int]] = {}
    for b in b_cat.objects:
        ocands[b] = {x for x in x_cat.objects if p.obj_map[x] == nu.obj_map[b]}
    for a in f.source.objects:
        ocands[f.obj_map[a]] &= {mu.obj_map[a]}
    mcands: dict[int, set[int]] = {}
    by_image: dict[int, list[int]] = {}
    for xi in x_cat.morphisms:
        by_image.setdefault(p.mor_map[xi], []).append(xi)
    for beta in b_cat.morphisms:
        mcands[beta] = set(by_image.get(nu.mor_map[beta], ()))
    for alpha in f.source.morphisms:
        mcands[f.mor_map[alpha]] &= {mu.mor_map[alpha]}
    return enumerate_functors(b_cat, x_cat, ocands.__getitem__, mcands.__getitem__)


def _functors_over(src: FinCategory, p: Functor, base: Functor) -> list[Functor]:
    """Functors g: src -> dom(p) with p∘g = base."""
    x_cat = p.source
    by_obj: dict[int, list[int]] = {}
    for x in x_cat.objects:
        by_obj.setdefault(p.obj_map[x], []).append(x)
    by_mor: dict[int, list[int]] = {}
    for m in x_cat.morphisms:
        by_mor.setdefault(p.mor_map[m], []).append(m)
    return enumerate_functors(
        src,
        x_cat,
        lambda a: by_obj.get(base.obj_map[a], ()),
        lambda m: by_mor.get(base.mor_map[m], ()),
    )


@dataclass(frozen=True)
class LiftingVerdict:
    holds: bool
    side: str
    checked: int
    failures: tuple[tuple[Functor, Functor], ...] = ()

    def __bool__(self):
        return self.holds


def check_lifting_property(
    f: Functor,
    p: Functor,
    side: str = "right",
    probe: Iterable[tuple[Functor, Functor]] | None = None,
    limit: int = 100_000,
) -> LiftingVerdict:
    """Does every commuting (mu, nu) admit a lift?

    ``side`` only names the reading: f has the left lifting property with
    respect to p exactly when p has the right one with respect to f.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if probe is None:
        squares = []
        for nu in enumerate_functors(f.target, p.target):
            for mu in _functors_over(f.source, p, compose_functors(nu, f)):
                squares.append((mu, nu))
                if len(squares) > limit:
                    raise ScaleExceeded(f"more than {limit} lifting problems")
    else:
        squares = list(probe)
    failures = tuple((mu, nu) for mu, nu in squares if not solve_lifting(LiftingProblem(f, p, mu, nu)))
    return LiftingVerdict(not failures, side, len(squares), failures)


def _inclusion(small: FinCategory, big: FinCategory, objs: Sequence[int], mors: Sequence[int]) -> Functor:
    return Functor(small, big, dict(zip(small.objects, objs)), dict(zip(small.morphisms, mors)))


@dataclass(frozen=True)
class ColliderMatch:
    parents: tuple[int, int]  # schema objects (a, c), a < c
    child: int
    rows: tuple[Hashable, Hashable, Hashable]  # rows over a, b, c
    shielded: bool  # a and c adjacent

    def labels(self, schema: FinCategory) -> dict:
        a, c = self.parents
        return {
            "collider": [schema.olabel(a), schema.olabel(self.child), schema.olabel(c)],
            "rows": list(self.rows),
            "immorality": not self.shielded,
        }


def _generator_edges(schema: FinCategory) -> list[int]:
    if schema.paths is None:
        raise ValidationError("collider queries need a schema that is the free category of a DAG")
    return [m for m in schema.morphisms if len(schema.paths[m]) == 1]


def collider_query(inst: SetFunctor) -> list[ColliderMatch]:
    """All bindings of the walking collider A -> B <- C into the data.

    One lifting problem per collider a -> b <- c of the schema (a before c)
    and per choice of rows for A, B, C; every solved problem is reported.
    """
    schema = inst.category
    gens = _generator_edges(schema)
    ec = category_of_elements(inst)
    p = ec.projection
    shape = walking_collider()
    corners = category_from_labels(["A", "B", "C"], [])
    f = _inclusion(corners, shape, shape.objects, [shape.identities[x] for x in shape.objects])
    adjacent = {(schema.src[m], schema.tgt[m]) for m in gens}
    out = []
    for e1 in gens:
        for e2 in gens:
            a, b, c = schema.src[e1], schema.tgt[e1], schema.src[e2]
            if schema.tgt[e2] != b or not a < c:
                continue
            nu = _inclusion(
                shape,
                schema,
                [a, b, c],
                [schema.identities[a], schema.identities[b], schema.identities[c], e1, e2],
            )
            for mu in _functors_over(corners, p, compose_functors(nu, f)):
                for h in solve_lifting(LiftingProblem(f, p, mu, nu)):
                    rows = tuple(ec.element[h.obj_map[x]][1] for x in shape.objects)
                    out.append(ColliderMatch((a, c), b, rows, (a, c) in adjacent or (c, a) in adjacent))
    return out


def source_edge_query(inst: SetFunctor) -> dict[Hashable, list[Hashable]]:
    """For each vertex row, the edge rows whose source it is.

    The instance must live on :func:`~catcausal.library.graph_schema`-shaped
    schema (objects V, E; arrows s, t: E -> V). A vertex with an empty list
    is a lifting problem without solution.
    """
    schema = inst.category
    labels = {schema.olabel(x): x for x in schema.objects}
    mlabels = {schema.mlabel(m): m for m in schema.morphisms}
    if set(labels) != {"V", "E"} or "s" not in mlabels:
        raise ValidationError("source-edge queries need the graph schema (V, E, s, t)")
    v_obj, e_obj, s_mor = labels["V"], labels["E"], mlabels["s"]
    ec = category_of_elements(inst)
    p = ec.projection
    shape = walking_arrow("E", "V", "s")
    vpt = category_from_labels(["V"], [])
    f = _inclusion(vpt, shape, [1], [shape.identities[1]])
    nu = _inclusion(
        shape, schema, [e_obj, v_obj], [schema.identities[e_obj], schema.identities[v_obj], s_mor]
    )
    out: dict[Hashable, list[Hashable]] = {}
    for mu in _functors_over(vpt, p, compose_functors(nu, f)):
        v_row = ec.element[mu.obj_map[0]][1]
        sols = solve_lifting(LiftingProblem(f, p, mu, nu))
        out[v_row] = [ec.element[h.obj_map[0]][1] for h in sols]
    return out


def pattern_query(inst: SetFunctor, nu: Functor) -> list[dict[int, Hashable]]:
    """Every lift of ``nu: shape -> schema`` through the projection of the elements.

    This is the lifting problem with empty top-left corner; each answer maps
    shape objects to rows.
    """
    ec = category_of_elements(inst)
    empty = category_from_labels([], [])
    f = Functor(empty, nu.source, {}, {})
    mu = Functor(empty, ec.category, {}, {})
    sols = solve_lifting(LiftingProblem(f, ec.projection, mu, nu))
    return [{x: ec.element[h.obj_map[x]][1] for x in nu.source.objects} for h in sols]


@dataclass(frozen=True, eq=False)
class MigrationContext:
    functor: Functor  # F: S -> T
    instance: SetFunctor  # over T for pullback, over S for the Kan extensions


def _unpack(ctx_or_functor, instance=None) -> tuple[Functor, SetFunctor]:
    if isinstance(ctx_or_functor, MigrationContext):
        return ctx_or_functor.functor, ctx_or_functor.instance
    return ctx_or_functor, instance


def migrate_pullback(ctx_or_functor, eps: SetFunctor | None = None) -> SetFunctor:
    """Delta_F: precompose an instance on T with F: S -> T."""
    f, eps = _unpack(ctx_or_functor, eps)
    if eps.category is not f.target:
        raise ValidationError("instance must live on the target of F")
    s = f.source
    return SetFunctor(
        s,
        {x: tuple(eps.tables[f.obj_map[x]]) for x in s.objects},
        {m: dict(eps.actions[f.mor_map[m]]) for m in s.morphisms},
    )


@dataclass(frozen=True, eq=False)
class CommaCategory:
    category: FinCategory
    pairs: Mapping[int, tuple[int, int]]  # comma object -> (s, phi)
    morphisms: Mapping[int, int]  # comma morphism -> S morphism
    projection: Functor  # to S


def comma_over(f: Functor, t: int) -> CommaCategory:
    """(F ↓ t): objects (s, phi: F s -> t), morphisms g: s -> s' with phi'∘F g = phi."""
    s_cat, t_cat = f.source, f.target
    pairs = [(s, phi) for s in s_cat.objects for phi in t_cat.hom(f.obj_map[s], t)]
    oid = {pr: i for i, pr in enumerate(pairs)}
    mors, gmap = [], {}
    for (s, phi) in pairs:
        for g in s_cat.out_morphisms[s]:
            s2 = s_cat.tgt[g]
            for phi2 in t_cat.hom(f.obj_map[s2], t):
                if t_cat.compose(phi2, f.mor_map[g]) == phi:
                    k = len(mors)
                    mors.append((k, oid[(s, phi)], oid[(s2, phi2)]))
                    gmap[k] = g
    return _comma(s_cat, pairs, oid, mors, gmap)


def comma_under(t: int, f: Functor) -> CommaCategory:
    """(t ↓ F): objects (s, phi: t -> F s), morphisms g: s -> s' with F g∘phi = phi'."""
    s_cat, t_cat = f.source, f.target
    pairs = [(s, phi) for s in s_cat.objects for phi in t_cat.hom(t, f.obj_map[s])]
    oid = {pr: i for i, pr in enumerate(pairs)}
    mors, gmap = [], {}
    for (s, phi) in pairs:
        for g in s_cat.out_morphisms[s]:
            phi2 = t_cat.compose(f.mor_map[g], phi)
            k = len(mors)
            mors.append((k, oid[(s, phi)], oid[(s_cat.tgt[g], phi2)]))
            gmap[k] = g
    return _comma(s_cat, pairs, oid, mors, gmap)


def _comma(s_cat, pairs, oid, mors, gmap) -> CommaCategory:
    by_key = {(src, tgt, gmap[k]): k for k, src, tgt in mors}
    identities = {i: by_key[(i, i, s_cat.identities[s])] for i, (s, _) in enumerate(pairs)}
    comp = {}
    for k1, src1, t1 in mors:
        for k2, src2, t2 in mors:
            if src2 == t1:
                comp[(k2, k1)] = by_key[(src1, t2, s_cat.compose(gmap[k2], gmap[k1]))]
    cat = validate_category(range(len(pairs)), mors, identities, comp)
    proj = Functor(cat, s_cat, {i: s for i, (s, _) in enumerate(pairs)}, dict(gmap))
    return CommaCategory(cat, dict(enumerate(pairs)), dict(gmap), proj)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b, order):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the least element as root
            if order[rb] < order[ra]:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _left_kan(f: Functor, delta: SetFunctor):
    s_cat, t_cat = f.source, f.target
    if delta.category is not s_cat:
        raise ValidationError("instance must live on the source of F")
    tables, classes = {}, {}
    for t in t_cat.objects:
        cm = comma_over(f, t)
        elems = [(s, phi, r) for (s, phi) in cm.pairs.values() for r in delta.tables[s]]
        order = {e: i for i, e in enumerate(elems)}
        uf = _UnionFind(elems)
        for k in cm.category.morphisms:
            s, phi = cm.pairs[cm.category.src[k]]
            s2, phi2 = cm.pairs[cm.category.tgt[k]]
            g = cm.morphisms[k]
            for r in delta.tables[s]:
                uf.union((s, phi, r), (s2, phi2, delta.actions[g][r]), order)
        rep = {e: uf.find(e) for e in elems}
        classes[t] = rep
        tables[t] = tuple(sorted(set(rep.values()), key=order.__getitem__))
    actions = {}
    for tau in t_cat.morphisms:
        t, t2 = t_cat.src[tau], t_cat.tgt[tau]
        actions[tau] = {
            row: classes[t2][(row[0], t_cat.compose(tau, row[1]), row[2])] for row in tables[t]
        }
    return SetFunctor(t_cat, tables, actions), classes


def migrate_left_kan(ctx_or_functor, delta: SetFunctor | None = None) -> SetFunctor:
    """Sigma_F: colimit of the instance over each comma category (F ↓ t).

    Rows are the least triples (s, phi, x) of their zig-zag class.
    """
    f, delta = _unpack(ctx_or_functor, delta)
    return _left_kan(f, delta)[0]


def _right_kan(f: Functor, delta: SetFunctor):
    s_cat, t_cat = f.source, f.target
    if delta.category is not s_cat:
        raise ValidationError("instance must live on the source of F")
    tables, indexes = {}, {}
    for t in t_cat.objects:
        cm = comma_under(t, f)
        keys = [cm.pairs[i] for i in cm.category.objects]
        idx = {k: i for i, k in enumerate(keys)}
        constraints: dict[int, list[tuple[int, int, int]]] = {}
        for k in cm.category.morphisms:
            a, b = cm.category.src[k], cm.category.tgt[k]
            constraints.setdefault(max(a, b), []).append((cm.morphisms[k], a, b))
        rows: list[tuple] = []
        chosen: list = [None] * len(keys)

        def rec(i: int):
            if i == len(keys):
                rows.append(tuple(chosen))
                return
            for r in delta.tables[keys[i][0]]:
                chosen[i] = r
                if all(delta.actions[g][chosen[a]] == chosen[b] for g, a, b in constraints.get(i, ())):
                    rec(i + 1)
            chosen[i] = None

        rec(0)
        tables[t] = tuple(rows)
        indexes[t] = idx
    actions = {}
    for tau in t_cat.morphisms:
        t, t2 = t_cat.src[tau], t_cat.tgt[tau]
        i1, i2 = indexes[t], indexes[t2]
        actions[tau] = {
            row: tuple(row[i1[(s, t_cat.compose(psi, tau))]] for (s, psi) in i2) for row in tables[t]
        }
    return SetFunctor(t_cat, tables, actions), indexes


def migrate_right_kan(ctx_or_functor, delta: SetFunctor | None = None) -> SetFunctor:
    """Pi_F: limit of the instance over each comma category (t ↓ F).

    Rows are compatible families, as tuples ordered like the comma objects.
    """
    f, delta = _unpack(ctx_or_functor, delta)
    return _right_kan(f, delta)[0]


@dataclass(frozen=True)
class PullbackVerdict:
    holds: bool
    object_bijection: Mapping[int, tuple[int, int]] = field(default_factory=dict)
    morphism_bijection: Mapping[int, tuple[int, int]] = field(default_factory=dict)
    note: str = ""

    def __bool__(self):
        return self.holds


def verify_pullback_square(f: Functor, delta: SetFunctor, eps: SetFunctor) -> PullbackVerdict:
    """Exhibit the elements of delta = eps∘F as the fiber product S x_T (elements of eps)."""
    s_cat = f.source
    if not delta.same_as(migrate_pullback(f, eps)):
        raise NotPullbackInstance("delta is not the pullback of eps along F")
    ed, ee = category_of_elements(delta), category_of_elements(eps)
    pe = ee.projection
    fib_objs = [(s, e) for s in s_cat.objects for e in ee.category.objects if pe.obj_map[e] == f.obj_map[s]]
    fib_mors = [(g, m) for g in s_cat.morphisms for m in ee.category.morphisms if pe.mor_map[m] == f.mor_map[g]]
    omap = {}
    for k, (s, r) in ed.element.items():
        omap[k] = (s, ee.object_id(f.obj_map[s], r))
    mmap = {}
    emid = {v: k for k, v in ee.arrow.items()}
    for k, (g, r) in ed.arrow.items():
        mmap[k] = (g, emid[(f.mor_map[g], r)])
    notes = []
    if sorted(omap.values()) != sorted(fib_objs) or len(set(omap.values())) != len(omap):
        notes.append("objects do not biject")
    if sorted(mmap.values()) != sorted(fib_mors) or len(set(mmap.values())) != len(mmap):
        notes.append("morphisms do not biject")
    for k, (g, m) in mmap.items():
        src = (s_cat.src[g], ee.category.src[m])
        tgt = (s_cat.tgt[g], ee.category.tgt[m])
        if omap[ed.category.src[k]] != src or omap[ed.category.tgt[k]] != tgt:
            notes.append(f"morphism {k} endpoints disagree")
            break
    return PullbackVerdict(not notes, omap, mmap, "; ".join(notes))


def _nat_key(alpha, source: SetFunctor) -> tuple:
    return tuple(tuple(alpha[x][r] for r in source.tables[x]) for x in source.category.objects)


def check_adjunction(f: Functor, delta: SetFunctor, eps: SetFunctor) -> dict[str, BijectionReport]:
    """Both migration adjunctions at (delta on S, eps on T), with explicit bijections.

    ``"sigma-delta"``: Hom(Sigma_F delta, eps) -> Hom(delta, Delta_F eps) by
    restricting along the unit x |-> [(s, id, x)].
    ``"delta-pi"``: Hom(Delta_F eps, delta) -> Hom(eps, Pi_F delta) by
    y |-> (beta_s(eps(phi)(y)))_{(s, phi)}.
    """
    s_cat, t_cat = f.source, f.target
    pulled = migrate_pullback(f, eps)
    sig, classes = _left_kan(f, delta)
    pi, indexes = _right_kan(f, delta)

    left = enumerate_nat_transformations(sig, eps)
    right = {_nat_key(n.components, delta) for n in enumerate_nat_transformations(delta, pulled)}
    images = []
    for n in left:
        comp = {
            s: {r: n.components[f.obj_map[s]][classes[f.obj_map[s]][(s, t_cat.identities[f.obj_map[s]], r)]]
                for r in delta.tables[s]}
            for s in s_cat.objects
        }
        images.append(_nat_key(comp, delta))
    sd = BijectionReport(
        len(set(images)) == len(images) == len(right) and set(images) == right,
        len(left),
        len(right),
        note="Hom(Sigma_F delta, eps) ~ Hom(delta, Delta_F eps)",
    )

    left2 = enumerate_nat_transformations(pulled, delta)
    right2 = {_nat_key(n.components, eps) for n in enumerate_nat_transformations(eps, pi)}
    images2 = []
    for n in left2:
        comp = {}
        for t in t_cat.objects:
            comp[t] = {
                y: tuple(n.components[s][eps.actions[phi][y]] for (s, phi) in indexes[t])
                for y in eps.tables[t]
            }
        images2.append(_nat_key(comp, eps))
    dp = BijectionReport(
        len(set(images2)) == len(images2) == len(right2) and set(images2) == right2,
        len(left2),
        len(right2),
        note="Hom(Delta_F eps, delta) ~ Hom(eps, Pi_F delta)",
    )
    return {"sigma-delta": sd, "delta-pi": dp}


def subschema_inclusion(sub: FinCategory, big: FinCategory) -> Functor:
    """The inclusion of ``sub`` into ``big``, matching objects and morphisms by label."""
    objs = {big.olabel(x): x for x in big.objects}
    mors = {big.mlabel(m): m for m in big.morphisms}
    try:
        omap = {x: objs[sub.olabel(x)] for x in sub.objects}
        mmap = {m: mors[sub.mlabel(m)] for m in sub.morphisms}
    except KeyError as exc:
        raise ValidationError(f"{exc.args[0]} has no counterpart in the larger schema", exc.args[0]) from exc
    return validate_functor(sub, big, omap, mmap)


def do_bind(inst: SetFunctor, variable: int, row: Hashable) -> SetFunctor:
    """Bind ``variable`` to ``row``: cut its incoming edges and restrict its table.

    The schema must be a free category on a quiver; it is rebuilt without the
    edges into ``variable`` and the instance is pulled back along the
    inclusion before the table is restricted.
    """
    schema = inst.category
    if schema.quiver is None:
        raise ValidationError("do_bind needs a schema that is the free category of a quiver")
    if variable not in schema.objects:
        raise UnknownVariable(f"unknown object {variable}", variable)
    if row not in inst.tables[variable]:
        raise UnknownRow(f"{row!r} is not a row of {schema.olabel(variable)}", (variable, row))
    q = schema.quiver
    cut = Quiver(
        q.vertices,
        tuple(e for e in q.edges if e[2] != variable),
        q.vertex_labels,
        q.edge_labels,
    )
    if len(cut.edges) == len(q.edges):
        new_schema = schema
        incl = None
    else:
        new_schema = free_category(cut)
        by_path = {p: m for m, p in schema.paths.items() if p}
        incl = Functor(
            new_schema,
            schema,
            {x: x for x in new_schema.objects},
            {m: (schema.identities[new_schema.src[m]] if not p else by_path[p]) for m, p in new_schema.paths.items()},
        )
    base = migrate_pullback(incl, inst) if incl is not None else inst
    tables = dict(base.tables)
    tables[variable] = (row,)
    actions = {}
    for m in new_schema.morphisms:
        if new_schema.src[m] == variable:
            actions[m] = {row: base.actions[m][row]}
        else:
            actions[m] = dict(base.actions[m])
    out = SetFunctor(new_schema, tables, actions)
    out.check_functorial()
    return out
