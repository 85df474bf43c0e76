from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from catcausal.causal import CausalDag, DoVariable, dag_to_category, imset_equal, intervene, markov_equivalent, standard_imset
from catcausal.elements import (
    category_of_elements,
    check_adjunction,
    check_opfibration_fibers,
    migrate_pullback,
    verify_pullback_square,
)
from catcausal.fincat import compose_functors, enumerate_functors, identity_functor
from catcausal.homology import hocolim_profile
from catcausal.io import category_to_json, from_json
from catcausal.library import library_categories, random_instance
from catcausal.simplex import MonotoneMap, epi_mono_factorize, recompose
from oracles import components_union_find, path_count

LIB = library_categories()
SMALL = sorted(k for k, c in LIB.items() if len(c.objects) <= 3)
SETTINGS = settings(max_examples=60, deadline=None)


@st.composite
def dags(draw, max_vars: int = 5):
    n = draw(st.integers(1, max_vars))
    names = [f"v{i}" for i in range(n)]
    order = draw(st.permutations(names))
    edges = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return CausalDag.build(names, edges)


@st.composite
def monotone(draw):
    m, n = draw(st.integers(0, 6)), draw(st.integers(0, 6))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return MonotoneMap(m, n, tuple(vals))


@SETTINGS
@given(monotone())
def test_epi_mono_round_trip(f):
    sig, dels = epi_mono_factorize(f)
    assert recompose(f.m, sig, dels) == f
    assert len(set(f.values)) == f.m + 1 - len(sig)


@SETTINGS
@given(dags())
def test_dag_category_counts_paths(g):
    c = dag_to_category(g)
    assert len(c.morphisms) == path_count(g.variables, g.edges)


@SETTINGS
@given(dags())
def test_imset_total_zero_and_self_equivalent(g):
    u = standard_imset(g)
    assert u.total() == 0 and imset_equal(u, u) and markov_equivalent(g, g).equivalent


@SETTINGS
@given(dags(), st.data())
def test_do_is_idempotent_and_removes_parents(g, data):
    v = data.draw(st.sampled_from(g.variables))
    once = intervene(g, DoVariable(v))
    assert once.parents(v) == () or not once.parents(v)
    assert intervene(once, DoVariable(v)) == once


@SETTINGS
@given(dags(4), dags(4))
def test_imset_equality_agrees_with_markov_equivalence(g, h):
    if set(g.variables) != set(h.variables):
        return
    assert imset_equal(standard_imset(g), standard_imset(h)) == markov_equivalent(g, h).equivalent


@SETTINGS
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_elements_laws(name, seed):
    c = LIB[name]
    inst = random_instance(c, random.Random(seed))
    ec = category_of_elements(inst)
    assert len(ec.category.objects) == inst.size()
    assert check_opfibration_fibers(ec).holds
    assert hocolim_profile(inst, 2).betti[0] == components_union_find(ec.category)


@SETTINGS
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.integers(0, 10**6))
def test_pullback_square_and_adjunctions(s, t, seed):
    rng = random.Random(seed)
    fs = enumerate_functors(LIB[s], LIB[t])
    if not fs:
        return
    f = rng.choice(fs)
    eps = random_instance(LIB[t], rng, 2)
    delta = migrate_pullback(f, eps)
    assert verify_pullback_square(f, delta, eps).holds
    assert all(r.holds for r in check_adjunction(f, random_instance(LIB[s], rng, 2), eps).values())


@SETTINGS
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_pullback_along_composite(name, seed):
    rng = random.Random(seed)
    c = LIB[name]
    fs = enumerate_functors(c, c)
    f, g = rng.choice(fs), rng.choice(fs)
    eps = random_instance(c, rng, 2)
    lhs = migrate_pullback(compose_functors(g, f), eps)
    rhs = migrate_pullback(f, migrate_pullback(g, eps))
    assert lhs.same_as(rhs)
    assert migrate_pullback(identity_functor(c), eps).same_as(eps)


@SETTINGS
@given(st.sampled_from(sorted(LIB)))
def test_category_json_round_trip(name):
    c = LIB[name]
    _, back = from_json(category_to_json(c))
    assert category_to_json(back) == category_to_json(c)
