from __future__ import annotations

import pytest

from catcausal.errors import BadIdentity, CyclicQuiver, MissingComposite, NonAssociative, NotAFunctor
from catcausal.fincat import (
    Functor,
    Quiver,
    SetFunctor,
    UniversalArrowCandidate,
    category_from_labels,
    check_free_category_universality,
    check_universal_arrow,
    compose_functors,
    connected_components,
    crp_check,
    enumerate_functors,
    enumerate_nat_transformations,
    free_category,
    identity_functor,
    is_retract,
    representable,
    validate_category,
    validate_functor,
    yoneda_check,
)
from catcausal.library import (
    discrete,
    free_on,
    library_categories,
    point,
    poset,
    split_idempotent,
    walking_arrow,
    z2,
)
from oracles import all_functors_brute, path_count


def test_single_object_category():
    c = validate_category([0], [(0, 0, 0)], {0: 0}, {(0, 0): 0})
    assert len(c.morphisms) == 1 and c.is_identity(0)


def test_z2_is_a_category():
    c = z2()
    s = c.morphisms[1]
    assert c.compose(s, s) == c.identities[0]


def test_missing_composite_is_reported():
    with pytest.raises(MissingComposite) as exc:
        validate_category([0], [(0, 0, 0), (1, 0, 0)], {0: 0}, {(0, 0): 0, (0, 1): 1, (1, 0): 1})
    assert exc.value.witness == (1, 1)


def test_bad_identity_is_reported():
    with pytest.raises(BadIdentity):
        validate_category([0], [(0, 0, 0), (1, 0, 0)], {0: 0}, {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1})


def test_non_associative_triple():
    # a = 1, b = 2 with a∘a = b and a∘b = a: (a∘a)∘b = b∘b = a but a∘(a∘b) = a∘a = b
    mors = [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
    comp = {(0, 0): 0}
    for m in (1, 2):
        comp[(0, m)] = m
        comp[(m, 0)] = m
    comp.update({(1, 1): 2, (1, 2): 1, (2, 1): 2, (2, 2): 1})
    with pytest.raises(NonAssociative) as exc:
        validate_category([0], mors, {0: 0}, comp)
    h, g, f = exc.value.witness
    assert comp[(h, comp[(g, f)])] != comp[(comp[(h, g)], f)]


def test_free_category_of_chain():
    c = free_on(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert len(c.objects) == 3
    assert len(c.morphisms) == 6
    assert sum(1 for m in c.morphisms if len(c.paths[m]) == 2) == 1
    assert "b->c∘a->b" in {c.mlabel(m) for m in c.morphisms}


def test_free_category_single_vertex():
    c = free_category(Quiver((0,), ()))
    assert len(c.morphisms) == 1


def test_free_category_rejects_self_loop():
    with pytest.raises(CyclicQuiver) as exc:
        free_category(Quiver((0,), ((0, 0, 0),)))
    assert exc.value.witness


def test_free_category_path_count_matches_dp():
    for name, c in library_categories().items():
        if c.quiver is None:
            continue
        q = c.quiver
        assert len(c.morphisms) == path_count(q.vertices, [(s, t) for _, s, t in q.edges]), name


def test_enumerate_functors_matches_brute_force():
    lib = library_categories()
    names = ["discrete2", "poset1", "poset2", "free-dag3-fork", "z2", "idempotent", "isomorphism"]
    for a in names:
        for b in names:
            fast = {f.key() for f in enumerate_functors(lib[a], lib[b])}
            slow = {f.key() for f in all_functors_brute(lib[a], lib[b])}
            assert fast == slow, (a, b)


def test_functor_validation_rejects_bad_maps():
    p1 = poset(1)
    with pytest.raises(NotAFunctor):
        validate_functor(p1, p1, {0: 1, 1: 0}, {0: 1, 1: 0, 2: 2})


def test_functor_composition_is_associative_and_unital():
    lib = library_categories()
    a, b, c = lib["poset1"], lib["poset2"], lib["free-dag3-chain"]
    for f in enumerate_functors(a, b):
        assert compose_functors(identity_functor(b), f) == f
        assert compose_functors(f, identity_functor(a)) == f
        for g in enumerate_functors(b, c)[:5]:
            for h in enumerate_functors(c, b)[:5]:
                assert compose_functors(h, compose_functors(g, f)) == compose_functors(compose_functors(h, g), f)


def test_nat_transformations_identity_case():
    p = point()
    i = identity_functor(p)
    assert len(enumerate_nat_transformations(i, i)) == 1


def test_nat_transformations_representable_on_poset1():
    p1 = poset(1)
    h0 = representable(p1, 0)
    assert len(enumerate_nat_transformations(h0, h0)) == 1


def test_nat_transformations_between_constants_without_arrow():
    d2 = discrete(2)
    p = point()
    cx = Functor(p, d2, {0: 0}, {0: d2.identities[0]})
    cy = Functor(p, d2, {0: 1}, {0: d2.identities[1]})
    assert enumerate_nat_transformations(cx, cy) == []


def test_yoneda_examples():
    p1 = poset(1)
    r = yoneda_check(p1, 0, representable(p1, 0))
    assert r.holds and r.left_size == 1 == r.right_size
    empty = SetFunctor(p1, {0: (), 1: ()}, {m: {} for m in p1.morphisms})
    r = yoneda_check(p1, 0, empty)
    assert r.holds and r.left_size == 0 == r.right_size
    p2 = poset(2)
    r = yoneda_check(p2, 1, representable(p2, 0))
    assert r.holds and r.right_size == 1


def test_crp_examples():
    assert crp_check(point(), 0, 0).holds
    c = free_on(["a", "b"], [("a", "b")])
    r = crp_check(c, 0, 1)
    assert r.holds and r.left_size == 1 == r.right_size
    d2 = discrete(2)
    r = crp_check(d2, 0, 1)
    assert r.holds and r.left_size == 0 == r.right_size


def test_identity_is_a_universal_arrow_everywhere():
    for c in library_categories().values():
        i = identity_functor(c)
        for x in c.objects:
            assert check_universal_arrow(UniversalArrowCandidate(i, x, x, c.identities[x])).holds


def test_constant_functor_at_non_initial_object_fails():
    # S: poset1 -> point is constant; r = 1 is not initial, so d = 0 has no f': 1 -> 0
    p1 = poset(1)
    pt = point()
    s = Functor(p1, pt, {0: 0, 1: 0}, {m: 0 for m in p1.morphisms})
    v = check_universal_arrow(UniversalArrowCandidate(s, 0, 1, 0))
    assert not v.holds and v.solutions == 0 and v.witness_object == 0
    assert check_universal_arrow(UniversalArrowCandidate(s, 0, 0, 0)).holds


def test_free_category_universal_arrow_on_two_vertex_quiver():
    q = Quiver((0, 1), ((0, 0, 1),))
    lib = library_categories()
    assert check_free_category_universality(q, [lib["poset1"], lib["z2"], lib["isomorphism"], discrete(2)]).holds


def test_free_category_universal_arrow_on_triangle_quiver():
    # the two parallel paths 0 -> 2 may land on equal or distinct arrows of the target
    q = Quiver((0, 1, 2), ((0, 0, 1), (1, 1, 2), (2, 0, 2)))
    targets = [poset(2), free_on(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])]
    assert check_free_category_universality(q, targets).holds


def test_retracts():
    c = poset(1)
    assert is_retract(c, 0, 0) == (c.identities[0], c.identities[0])
    assert is_retract(c, 1, 0) is None
    s = split_idempotent()
    i, r = is_retract(s, 0, 1)
    assert s.compose(r, i) == s.identities[0]
    assert (s.mlabel(i), s.mlabel(r)) == ("i", "r")


def test_opposite_transposes():
    c = walking_arrow()
    op = c.op
    f = 2
    assert (op.src[f], op.tgt[f]) == (c.tgt[f], c.src[f])
    assert dict(op.op.composition) == dict(c.composition)


def test_category_from_labels_table():
    c = category_from_labels(["*"], [("e", "*", "*")], {("e", "e"): "e"})
    assert c.compose(1, 1) == 1


def test_connected_components():
    assert connected_components(discrete(3)) == [[0], [1], [2]]
    assert connected_components(free_on(["a", "b", "c"], [("a", "c")])) == [[0, 2], [1]]
