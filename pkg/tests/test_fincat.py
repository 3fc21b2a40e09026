import itertools

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from gcat.catalog import poset_functor, random_monotone, random_poset, tiny_categories
from gcat.errors import (DanglingEndpoint, EndpointMismatch, MissingComposite, NonAssociative,
                         NotAPartialOrder)
from gcat.fincat import (FinCat, FinFunctor, category_violations, chain, constant_functor, discrete,
                         find_isomorphism, functors, identity_functor, inclusion, is_poset, poset_from_covers, poset_to_category,
                         pullback, pullback_mediator, subcategory, terminal, validate_category, validate_functor)
from gcat.sset import categorify, face_poset, nerve, sd

ISO_DATA = (["x", "y"], [("f", "x", "y"), ("g", "y", "x")],
            {("g", "f"): "id_x", ("f", "g"): "id_y"})


def test_terminal_validates():
    C = validate_category(["*"], [], {})
    assert C.morphisms == ("id_*",)
    assert C.table["id_*", "id_*"] == "id_*"


def test_isomorphism_category_validates():
    C = validate_category(*ISO_DATA)
    assert len(C.morphisms) == 4
    assert C.table["g", "f"] == "id_x"


def test_missing_composite_rejected():
    objs, mors, comp = ISO_DATA
    comp = dict(comp)
    del comp["g", "f"]
    with pytest.raises(MissingComposite):
        validate_category(objs, mors, comp)


def test_non_associative_rejected():
    # t∘t = e and p∘p = p with t∘p = p∘t = t breaks (t∘t)∘p = t∘(t∘p)
    with pytest.raises(NonAssociative):
        validate_category(["*"], [("t", "*", "*"), ("p", "*", "*")],
                          {("t", "t"): "id_*", ("p", "p"): "p", ("t", "p"): "t", ("p", "t"): "t"})


def test_dangling_endpoint():
    with pytest.raises(DanglingEndpoint):
        validate_category(["x"], [("f", "x", "nowhere")], {})


def test_poset_examples():
    C = poset_to_category(["0", "1"], [("0", "1")])
    assert (len(C.objects), len(C.morphisms)) == (2, 3)
    A = poset_to_category(["a", "b"], [])
    assert (len(A.objects), len(A.morphisms)) == (2, 2)
    assert is_poset(C) and is_poset(A)
    with pytest.raises(NotAPartialOrder):
        poset_to_category(["0", "1"], [("0", "1"), ("1", "0")])


def test_is_poset_false_for_groups_and_isos():
    iso = validate_category(*ISO_DATA)
    assert not is_poset(iso)
    assert not is_poset(tiny_categories()[5])


def test_functor_examples():
    C = chain(2)
    validate_functor(C, C, identity_functor(C))
    D = tiny_categories()[4]
    validate_functor(C, D, constant_functor(C, D, "x"))
    bad = {f: "f" for f in C.morphisms}
    with pytest.raises(EndpointMismatch):
        validate_functor(C, D, {x: "x" for x in C.objects}, bad)


def test_find_isomorphism_examples():
    a = chain(1)
    b = poset_to_category(["a", "b"], [("a", "b")])
    F = find_isomorphism(a, b)
    assert F is not None and F.ob == {"0": "a", "1": "b"}
    assert find_isomorphism(a, discrete(["a", "b"])) is None


def test_categorified_subdivision_is_face_poset():
    X = nerve(chain(1))
    faces = poset_to_category(["{0}", "{1}", "{0,1}"], [("{0}", "{0,1}"), ("{1}", "{0,1}")])
    assert find_isomorphism(categorify(sd(X)), faces) is not None
    assert find_isomorphism(face_poset(X), faces) is not None


def test_pullback_over_terminal_is_product():
    # the two-element chain squared: 4 objects, 9 morphisms
    c1, T = chain(1), terminal()
    Q, _, _ = pullback(constant_functor(c1, T, "*"), constant_functor(c1, T, "*"))
    assert (len(Q.objects), len(Q.morphisms)) == (4, 9)
    validate_category(Q)


def test_pullback_along_identity():
    C = chain(2)
    B = poset_to_category(["a", "b"], [("a", "b")])
    F = poset_functor(C, B, {"0": "a", "1": "b", "2": "b"})
    P, p1, _ = pullback(F, identity_functor(B))
    assert p1.is_bijective()


def test_pullback_of_inclusions_is_intersection():
    B = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    U, V = subcategory(B, ["a", "b"]), subcategory(B, ["b", "c"])
    P, _, _ = pullback(inclusion(U, B), inclusion(V, B))
    assert [x for x in P.objects] == ["(b,b)"]


def _cone_count(F, G, T):
    P, p1, p2 = pullback(F, G)
    for a in functors(T, F.source):
        for b in functors(T, G.source):
            if a.then(F) != b.then(G):
                continue
            m = pullback_mediator(P, a, b)
            assert not category_violations(P)
            validate_functor(T, P, m)
            assert m.then(p1) == a and m.then(p2) == b
            others = [h for h in functors(T, P) if h.then(p1) == a and h.then(p2) == b]
            assert len(others) == 1


def test_pullback_universal_property_small():
    B = poset_to_category(["a", "b"], [("a", "b")])
    F = identity_functor(B)
    G = constant_functor(chain(1), B, "b")
    for T in (terminal(), chain(1), discrete(["u", "v"])):
        _cone_count(F, G, T)


@given(seeds)
def test_revalidation_is_idempotent(seed):
    C = random_poset(rng_for(seed), 6)
    assert validate_category(C) is C
    assert category_violations(C) == []


@given(seeds)
def test_self_isomorphism_exists(seed):
    C = random_poset(rng_for(seed), 6)
    F = find_isomorphism(C, C)
    assert F is not None
    validate_functor(C, C, F)
    validate_functor(C, C, F.inverse())


@given(seeds)
def test_pullback_square_commutes(seed):
    rng = rng_for(seed)
    E = random_poset(rng, 4, prefix="e")
    C = random_poset(rng, 4, prefix="c")
    D = random_poset(rng, 4, prefix="d")
    F, G = random_monotone(rng, C, E), random_monotone(rng, D, E)
    P, p1, p2 = pullback(F, G)
    validate_category(P)
    assert p1.then(F) == p2.then(G)


def test_all_tiny_categories_validate():
    for C in tiny_categories():
        assert category_violations(C) == []


def test_functor_count_oracle():
    # monotone maps chain(1) → chain(2): pairs i ≤ j, there are 6
    assert sum(1 for _ in functors(chain(1), chain(2))) == 6
    # functors from a 2-element discrete category: |ob D|²
    D = chain(2)
    assert sum(1 for _ in functors(discrete(["a", "b"]), D)) == 9
    # endofunctors of BC2: group homomorphisms C2 → C2
    bc2 = tiny_categories()[5]
    assert sum(1 for _ in functors(bc2, bc2)) == 2
    # brute force over object maps for posets
    brute = sum(1 for ob in itertools.product(D.objects, repeat=3)
                if all(int(a) <= int(b) for a, b in zip(ob, ob[1:])))
    assert sum(1 for _ in functors(D, D)) == brute
