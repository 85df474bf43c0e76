"""Brute-force reference implementations used only by the tests.

Each function recomputes a quantity from first principles without calling
the library routine it checks.
"""
from __future__ import annotations

import itertools
from math import comb

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from catcausal.fincat import FinCategory, Functor


def chain_count(c: FinCategory, n: int) -> int:
    """Number of functors [n] -> c, by dynamic programming over end objects."""
    ways = {x: 1 for x in c.objects}
    for _ in range(n):
        nxt = {x: 0 for x in c.objects}
        for m in c.morphisms:
            nxt[c.tgt[m]] += ways[c.src[m]]
        ways = nxt
    return sum(ways.values())


def nondegenerate_chain_count(c: FinCategory, n: int) -> int:
    ident = set(c.identities.values())
    ways = {x: 1 for x in c.objects}
    for _ in range(n):
        nxt = {x: 0 for x in c.objects}
        for m in c.morphisms:
            if m not in ident:
                nxt[c.tgt[m]] += ways[c.src[m]]
        ways = nxt
    return sum(ways.values())


def path_count(vertices, edges) -> int:
    """Directed paths (including empty ones) in a DAG, by memoised DFS."""
    out = {v: [] for v in vertices}
    for s, t in edges:
        out[s].append(t)
    memo = {}

    def from_(v):
        if v not in memo:
            memo[v] = 1 + sum(from_(w) for w in out[v])
        return memo[v]

    return sum(from_(v) for v in vertices)


def binomial_nondegenerate(n: int, m: int) -> int:
    return comb(n + 1, m + 1)


def all_functors_brute(b: FinCategory, x: FinCategory) -> list[Functor]:
    """Every functor b -> x by exhaustive search over object maps and hom-set choices."""
    out = []
    for omap_vals in itertools.product(x.objects, repeat=len(b.objects)):
        omap = dict(zip(b.objects, omap_vals))
        choices = [x.hom(omap[b.src[m]], omap[b.tgt[m]]) for m in b.morphisms]
        for mvals in itertools.product(*choices):
            mmap = dict(zip(b.morphisms, mvals))
            if any(mmap[b.identities[o]] != x.identities[omap[o]] for o in b.objects):
                continue
            if all(x.compose(mmap[g], mmap[f]) == mmap[gf] for (g, f), gf in b.composition.items()):
                out.append(Functor(b, x, omap, mmap))
    return out


def lifts_brute(f: Functor, p: Functor, mu: Functor, nu: Functor) -> set:
    sols = set()
    for h in all_functors_brute(f.target, p.source):
        if any(p.obj_map[h.obj_map[o]] != nu.obj_map[o] for o in f.target.objects):
            continue
        if any(p.mor_map[h.mor_map[m]] != nu.mor_map[m] for m in f.target.morphisms):
            continue
        if any(h.obj_map[f.obj_map[o]] != mu.obj_map[o] for o in f.source.objects):
            continue
        if any(h.mor_map[f.mor_map[m]] != mu.mor_map[m] for m in f.source.morphisms):
            continue
        sols.add(h.key())
    return sols


def immoralities_brute(variables, edges) -> set:
    """Unordered-parent immoralities {a, c} -> b by an O(V^3) triple scan."""
    e = set(edges)
    adj = lambda u, v: (u, v) in e or (v, u) in e  # noqa: E731
    out = set()
    for a in variables:
        for b in variables:
            for c in variables:
                if a != c and (a, b) in e and (c, b) in e and not adj(a, c):
                    out.add((frozenset((a, c)), b))
    return out


def components_union_find(c: FinCategory) -> int:
    parent = {x: x for x in c.objects}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for m in c.morphisms:
        a, b = find(c.src[m]), find(c.tgt[m])
        if a != b:
            parent[a] = b
    return len({find(x) for x in c.objects})


def has_cone_point(c: FinCategory) -> bool:
    """A terminal or initial object makes the classifying space contractible."""
    for t in c.objects:
        if all(len(c.hom(x, t)) == 1 for x in c.objects):
            return True
        if all(len(c.hom(t, x)) == 1 for x in c.objects):
            return True
    return False


def snf_invariants(m: list[list[int]]) -> tuple[tuple[int, ...], int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0 or cols == 0:
        return (), 0
    s = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    diag = tuple(abs(int(s[i, i])) for i in range(min(rows, cols)) if s[i, i] != 0)
    return diag, len(diag)


def cosimplicial_identity_failures(max_rank: int) -> tuple[int, list[str]]:
    """Evaluate the five generator identities pointwise for every rank <= max_rank.

    Returns (number of instances checked, failures). Maps are compared by
    their value tuples, computed here by explicit pointwise composition.
    """
    from catcausal.simplex import codegeneracy, coface

    def comp(g, f):
        assert f.n == g.m
        return tuple(g.values[v] for v in f.values)

    checked, bad = 0, []
    for n in range(0, max_rank + 1):
        # d_j d_i = d_i d_{j-1}, i < j, on [n]
        for j in range(n + 3):
            for i in range(j):
                lhs = comp(coface(n + 1, j), coface(n, i))
                rhs = comp(coface(n + 1, i), coface(n, j - 1))
                checked += 1
                if lhs != rhs:
                    bad.append(f"dd n={n} i={i} j={j}")
        # s_j s_i = s_i s_{j+1}, i <= j, on [n]
        for j in range(0, n - 1):
            for i in range(0, j + 1):
                lhs = comp(codegeneracy(n - 1, j), codegeneracy(n, i))
                rhs = comp(codegeneracy(n - 1, i), codegeneracy(n, j + 1))
                checked += 1
                if lhs != rhs:
                    bad.append(f"ss n={n} i={i} j={j}")
        # mixed: s_j d_i on [n], s_j: [n+1] -> [n]
        for j in range(0, n + 1):
            for i in range(0, n + 2):
                lhs = comp(codegeneracy(n + 1, j), coface(n, i))
                if i < j:
                    rhs = comp(coface(n - 1, i), codegeneracy(n, j - 1))
                    tag = "sd<"
                elif i in (j, j + 1):
                    rhs = tuple(range(n + 1))
                    tag = "sd="
                else:
                    rhs = comp(coface(n - 1, i - 1), codegeneracy(n, j))
                    tag = "sd>"
                checked += 1
                if lhs != rhs:
                    bad.append(f"{tag} n={n} i={i} j={j}")
    return checked, bad
