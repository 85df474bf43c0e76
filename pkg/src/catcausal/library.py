"""Built-in small categories, query shapes and random instance generation."""
from __future__ import annotations

import random
from itertools import combinations, permutations

from .fincat import FinCategory, Quiver, SetFunctor, category_from_labels, free_category

MAX_OBJECTS = 4
MAX_MORPHISMS = 12


def empty_category() -> FinCategory:
    return category_from_labels([], [])


def point() -> FinCategory:
    return category_from_labels(["*"], [])


def discrete(k: int, names: list[str] | None = None) -> FinCategory:
    return category_from_labels(names or [f"x{i}" for i in range(k)], [])


def poset(n: int) -> FinCategory:
    """The ordinal [n] = {0 < 1 < ... < n} as a category."""
    objs = [str(i) for i in range(n + 1)]
    arrows = [(f"{a}<{b}", str(a), str(b)) for a, b in combinations(range(n + 1), 2)]
    table = {}
    for a, b, c in combinations(range(n + 1), 3):
        table[(f"{b}<{c}", f"{a}<{b}")] = f"{a}<{c}"
    return category_from_labels(objs, arrows, table)


def quiver_from_edges(names: list[str], edges: list[tuple[str, str]]) -> Quiver:
    vid = {v: i for i, v in enumerate(names)}
    return Quiver(
        tuple(range(len(names))),
        tuple((k, vid[s], vid[t]) for k, (s, t) in enumerate(edges)),
        dict(enumerate(names)),
        {k: f"{s}->{t}" for k, (s, t) in enumerate(edges)},
    )


def free_on(names: list[str], edges: list[tuple[str, str]]) -> FinCategory:
    return free_category(quiver_from_edges(names, edges))


def z2() -> FinCategory:
    """The group Z/2 as a one-object category."""
    return category_from_labels(["*"], [("s", "*", "*")], {("s", "s"): "id_*"})


def walking_idempotent() -> FinCategory:
    return category_from_labels(["*"], [("e", "*", "*")], {("e", "e"): "e"})


def walking_isomorphism() -> FinCategory:
    return category_from_labels(
        ["a", "b"],
        [("i", "a", "b"), ("j", "b", "a")],
        {("j", "i"): "id_a", ("i", "j"): "id_b"},
    )


def split_idempotent() -> FinCategory:
    """a is a retract of b: r∘i = id_a and e = i∘r is idempotent on b."""
    return category_from_labels(
        ["a", "b"],
        [("i", "a", "b"), ("r", "b", "a"), ("e", "b", "b")],
        {
            ("r", "i"): "id_a",
            ("i", "r"): "e",
            ("e", "e"): "e",
            ("e", "i"): "i",
            ("r", "e"): "r",
        },
    )


def walking_collider() -> FinCategory:
    """A -> B <- C."""
    return category_from_labels(["A", "B", "C"], [("p", "A", "B"), ("q", "C", "B")])


def walking_arrow(src: str = "0", tgt: str = "1", name: str = "f") -> FinCategory:
    return category_from_labels([src, tgt], [(name, src, tgt)])


def graph_schema() -> FinCategory:
    """Two objects V, E with source and target maps s, t: E -> V."""
    return category_from_labels(["V", "E"], [("s", "E", "V"), ("t", "E", "V")])


def small_dag_quivers() -> list[tuple[str, list[str], list[tuple[str, str]]]]:
    """Every DAG on at most three vertices, up to isomorphism."""
    return [
        ("dag1", ["a"], []),
        ("dag2-empty", ["a", "b"], []),
        ("dag2-edge", ["a", "b"], [("a", "b")]),
        ("dag3-empty", ["a", "b", "c"], []),
        ("dag3-edge", ["a", "b", "c"], [("a", "b")]),
        ("dag3-chain", ["a", "b", "c"], [("a", "b"), ("b", "c")]),
        ("dag3-fork", ["a", "b", "c"], [("b", "a"), ("b", "c")]),
        ("dag3-collider", ["a", "b", "c"], [("a", "c"), ("b", "c")]),
        ("dag3-complete", ["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")]),
    ]


def library_categories() -> dict[str, FinCategory]:
    """The property-test corpus: every category here has <= 4 objects, <= 12 morphisms."""
    lib: dict[str, FinCategory] = {}
    for k in (1, 2, 3):
        lib[f"discrete{k}"] = discrete(k)
    for n in range(4):
        lib[f"poset{n}"] = poset(n)
    for name, vs, es in small_dag_quivers():
        lib[f"free-{name}"] = free_on(vs, es)
    lib["z2"] = z2()
    lib["idempotent"] = walking_idempotent()
    lib["isomorphism"] = walking_isomorphism()
    return lib


def all_labelled_dags(n: int) -> list[frozenset[tuple[int, int]]]:
    """Every labelled DAG on vertices 0..n-1, by brute force over edge subsets."""
    pairs = list(permutations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if _acyclic(n, edges):
            out.append(frozenset(edges))
    return out


def _acyclic(n: int, edges) -> bool:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for a, b in edges:
        out[a].append(b)
        indeg[b] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def random_instance(
    schema: FinCategory, rng: random.Random, max_rows: int = 3, attempts: int = 50
) -> SetFunctor:
    """A random functorial instance with at most ``max_rows`` rows per table.

    Row ids are ``0..k-1``. Actions are found by randomized backtracking; the
    table sizes are redrawn when no functorial action exists (for example an
    isomorphism between tables of different size).
    """
    order = [m for m in schema.morphisms if not schema.is_identity(m)]
    for _ in range(attempts):
        tables = {x: tuple(range(rng.randint(0, max_rows))) for x in schema.objects}
        slots = [(m, r) for m in order for r in tables[schema.src[m]]]
        acts: dict[int, dict] = {m: {} for m in schema.morphisms}
        for x in schema.objects:
            acts[schema.identities[x]] = {r: r for r in tables[x]}

        def consistent() -> bool:
            for (g, f), gf in schema.composition.items():
                ag, af, agf = acts[g], acts[f], acts[gf]
                for r, mid in af.items():
                    if mid in ag and r in agf and ag[mid] != agf[r]:
                        return False
            return True

        def rec(k: int) -> bool:
            if k == len(slots):
                return True
            m, r = slots[k]
            cands = list(tables[schema.tgt[m]])
            rng.shuffle(cands)
            for v in cands:
                acts[m][r] = v
                if consistent() and rec(k + 1):
                    return True
                del acts[m][r]
            return False

        if rec(0):
            inst = SetFunctor(schema, tables, acts)
            inst.check_functorial()
            return inst
    raise RuntimeError("could not draw a functorial instance")
