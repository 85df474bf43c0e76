from __future__ import annotations

import pytest

from catcausal.causal import (
    CausalDag,
    DeleteEdge,
    DoVariable,
    Imset,
    dag_to_category,
    elementary_imset,
    enumerate_immoralities,
    imset_equal,
    intervene,
    markov_equivalent,
    parse_dot,
    standard_imset,
    to_dot,
)
from catcausal.errors import (
    GroundSetMismatch,
    OverlappingArguments,
    ParseError,
    UnknownEdge,
    UnknownVariable,
    ValidationError,
    VariableSetMismatch,
)
from catcausal.library import all_labelled_dags
from oracles import immoralities_brute

CHAIN = CausalDag.build("abc", [("a", "b"), ("b", "c")])
FORK = CausalDag.build("abc", [("b", "a"), ("b", "c")])
COLLIDER = CausalDag.build("abc", [("a", "c"), ("b", "c")])
COMPLETE = CausalDag.build("abc", [("a", "b"), ("a", "c"), ("b", "c")])


def imset(ground, terms):
    u = Imset.of(ground, {})
    return Imset.of(ground, {u.mask(s): v for s, v in terms.items()})


def test_dag_validation():
    with pytest.raises(ValidationError):
        CausalDag.build("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ValidationError):
        CausalDag.build("a", [("a", "a")])
    with pytest.raises(ValidationError):
        CausalDag.build("ab", [("a", "b"), ("a", "b")])
    with pytest.raises(UnknownVariable):
        CausalDag.build("ab", [("a", "z")])


def test_dag_to_category_counts():
    assert len(dag_to_category(COLLIDER).morphisms) == 5
    assert len(dag_to_category(CHAIN).morphisms) == 6
    c = dag_to_category(CausalDag.build("ab", []))
    assert (len(c.objects), len(c.morphisms)) == (2, 2)


def test_intervene_examples():
    assert intervene(CHAIN, DoVariable("b")).edges == {("b", "c")}
    assert intervene(COLLIDER, DeleteEdge("a", "c")).edges == {("b", "c")}
    assert intervene(CHAIN, DoVariable("a")) == CHAIN


def test_intervene_errors():
    with pytest.raises(UnknownVariable):
        intervene(CHAIN, DoVariable("z"))
    with pytest.raises(UnknownEdge):
        intervene(CHAIN, DeleteEdge("a", "c"))


def test_intervene_properties_on_all_small_dags():
    for edges in all_labelled_dags(3):
        g = CausalDag.build("012", [(str(a), str(b)) for a, b in edges])
        for v in g.variables:
            once = intervene(g, DoVariable(v))
            assert intervene(once, DoVariable(v)) == once
            assert once.edges <= g.edges
        for a, b in g.edges:
            cut = intervene(g, DeleteEdge(a, b))
            assert len(dag_to_category(cut).morphisms) <= len(dag_to_category(g).morphisms)


def test_collider_imset_matches_displayed_value():
    expect = imset("abc", {(): 1, ("a",): -1, ("b",): -1, ("a", "b"): 1})
    assert imset_equal(standard_imset(COLLIDER), expect)
    assert str(standard_imset(COLLIDER)) == "δ_∅ - δ_a - δ_b + δ_ab"


def test_chain_and_edgeless_imsets():
    expect = imset("abc", {("a", "b", "c"): 1, ("a", "b"): -1, ("b", "c"): -1, ("b",): 1})
    assert imset_equal(standard_imset(CHAIN), expect)
    edgeless = CausalDag.build("ab", [])
    expect = imset("ab", {("a", "b"): 1, ("a",): -1, ("b",): -1, (): 1})
    assert imset_equal(standard_imset(edgeless), expect)


def test_elementary_imsets():
    u = elementary_imset("abc", "a", "b")
    assert imset_equal(u, imset("abc", {("a", "b"): 1, (): 1, ("a",): -1, ("b",): -1}))
    # same sign convention as the collider's standard imset
    assert imset_equal(u, standard_imset(COLLIDER))
    v = elementary_imset("abc", "a", "b", {"c"})
    assert imset_equal(v, imset("abc", {("a", "b", "c"): 1, ("c",): 1, ("a", "c"): -1, ("b", "c"): -1}))
    assert u.total() == 0 and v.total() == 0
    with pytest.raises(OverlappingArguments):
        elementary_imset("abc", "a", "b", {"a"})


def test_imset_equality_examples():
    assert imset_equal(standard_imset(CHAIN), standard_imset(FORK))
    assert not imset_equal(standard_imset(CHAIN), standard_imset(COLLIDER))
    u = standard_imset(COMPLETE)
    assert imset_equal(u, u)
    with pytest.raises(GroundSetMismatch):
        imset_equal(u, standard_imset(CausalDag.build("ab", [])))


def test_imset_equality_ignores_variable_order():
    g = CausalDag.build("cab", [("a", "b"), ("b", "c")])
    assert imset_equal(standard_imset(CHAIN), standard_imset(g))


def test_imset_json_keys_are_sorted_subsets():
    data = standard_imset(FORK).to_json()
    assert data == {"ground": ["a", "b", "c"], "coeffs": {"a,b": -1, "a,b,c": 1, "b": 1, "b,c": -1}}


def test_markov_equivalence_examples():
    assert markov_equivalent(CHAIN, FORK).equivalent
    v = markov_equivalent(CHAIN, CausalDag.build("abc", [("a", "b"), ("c", "b")]))
    assert not v.equivalent and "immorality" in v.witness
    assert markov_equivalent(COMPLETE, COMPLETE).equivalent
    with pytest.raises(VariableSetMismatch):
        markov_equivalent(CHAIN, CausalDag.build("ab", []))


def test_immorality_examples():
    assert enumerate_immoralities(COLLIDER) == [("a", "c", "b")]
    assert enumerate_immoralities(COMPLETE) == []
    assert enumerate_immoralities(CHAIN) == []


def test_immoralities_match_triple_scan():
    for edges in all_labelled_dags(4):
        names = "0123"
        e = [(names[a], names[b]) for a, b in edges]
        g = CausalDag.build(names, e)
        got = {(frozenset((a, c)), b) for a, b, c in enumerate_immoralities(g)}
        assert got == immoralities_brute(names, e)


def test_standard_imset_sums_to_zero():
    for n in (1, 2, 3, 4):
        for edges in all_labelled_dags(n):
            g = CausalDag.build([str(i) for i in range(n)], [(str(a), str(b)) for a, b in edges])
            assert standard_imset(g).total() == 0


def test_labelled_dag_counts():
    assert [len(all_labelled_dags(n)) for n in range(1, 5)] == [1, 3, 25, 543]


def test_parse_dot_variants():
    g = parse_dot('strict digraph "m" {\n rankdir=LR;\n node [shape=box];\n a -> b -> c [color=red]; /* x */\n d\n}')
    assert g.variables == ("a", "b", "c", "d")
    assert g.edges == {("a", "b"), ("b", "c")}
    assert parse_dot('digraph { "x y" -> z; }').edges == {("x y", "z")}


def test_parse_dot_rejects_bad_input():
    with pytest.raises(ParseError):
        parse_dot("graph { a -- b }")
    with pytest.raises(ParseError):
        parse_dot("not a graph")
    with pytest.raises(ValidationError):
        parse_dot("digraph { a -> b; b -> a; }")


def test_dot_round_trip():
    assert parse_dot(to_dot(COMPLETE)) == COMPLETE
