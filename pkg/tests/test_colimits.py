import pytest
from hypothesis import given

from conftest import rng_for, seeds
from oracles import brute_functors
from gcat.catalog import (cell_catalog, fixed_pushout_instance, inclusion_of, poset_functor, random_dwyer,
                          random_gposet, random_mono_chain, random_monotone, random_poset, random_square,
                          tiny_categories)
from gcat.colimits import (Square, attach_cells, dwyer_violations, dwyer_witness, equivariant_pushout,
                           fixed_square_is_pushout, induced_from_fixed, is_cosieve, is_sieve, pushout_along_dwyer,
                           pushout_oracle, pushouts_agree, sequential_colimit, square_violations, tensor_functor,
                           verify_filtered_mono, verify_fixed_point_pushout, verify_phi_pullback, verify_retract)
from gcat.errors import CyclicPresentation, NotASieve, NotASubcategory, NotDwyer, NotMono
from gcat.fincat import (FinFunctor, category_violations, functor_violations, chain, constant_functor, find_isomorphism,
                         identity_functor, poset_from_covers, poset_to_category, subcategory, terminal)
from gcat.gaction import GFunctor, fixed_category, trivial_action
from gcat.group import coset_gset, cyclic, subgroup_names, symmetric

C2, S3 = cyclic(2), symmetric(3)


def arrow_cell():
    B = poset_to_category(["a", "b"], [("a", "b")])
    return inclusion_of(subcategory(B, ["a"]), B)


def antichain_under_top():
    B = poset_to_category(["a1", "a2", "w"], [("a1", "w"), ("a2", "w")])
    return inclusion_of(subcategory(B, ["a1", "a2"]), B)


def test_sieve_examples():
    B = arrow_cell().target
    assert is_sieve(["a"], B)
    assert not is_sieve(["b"], B)
    assert is_cosieve(["b"], B)
    assert not is_cosieve(["a"], B)
    with pytest.raises(NotASubcategory):
        is_sieve(["zzz"], B)


def test_arrow_witness():
    i = arrow_cell()
    wit = dwyer_witness(i)
    assert wit is not None
    assert set(wit.cosieve) == {"a", "b"}
    assert wit.r.ob == {"a": "a", "b": "a"}
    assert dwyer_violations(i, wit) == []


def test_antichain_has_no_witness():
    i = antichain_under_top()
    assert dwyer_witness(i) is None
    C = terminal()
    with pytest.raises(NotDwyer):
        pushout_along_dwyer(i, constant_functor(i.source, C, "*"))


def test_non_sieve_rejected():
    B = arrow_cell().target
    with pytest.raises(NotASieve):
        dwyer_witness(inclusion_of(subcategory(B, ["b"]), B))


def test_cells_have_witnesses():
    for label, i in cell_catalog():
        wit = dwyer_witness(i)
        assert wit is not None, label
        assert dwyer_violations(i, wit) == []


def test_arrow_pushout_onto_point():
    i = arrow_cell()
    F = constant_functor(i.source, terminal(), "*")
    p = pushout_along_dwyer(i, F)
    D = p.category
    assert len(D.objects) == 2
    c, b = p.right.ob["*"], p.left.ob["b"]
    assert len(D.hom(c, b)) == 1 and len(D.hom(b, c)) == 0
    assert pushouts_agree(p, pushout_oracle(i, F)) is not None


def test_identity_sieve_gives_target():
    B = chain(2)
    i = identity_functor(B)
    C = random_poset(rng_for(5), 5, prefix="c")
    F = random_monotone(rng_for(6), B, C)
    p = pushout_along_dwyer(i, F)
    assert find_isomorphism(p.category, C) is not None
    assert find_isomorphism(pushout_oracle(i, F).category, C) is not None


def test_objects_outside_cosieve_receive_nothing():
    # B: a < b plus an unrelated c; A = {a}; W = {a, b}
    B = poset_from_covers(["a", "b", "c"], [("a", "b")])
    i = inclusion_of(subcategory(B, ["a"]), B)
    F = constant_functor(i.source, terminal(), "*")
    p = pushout_along_dwyer(i, F)
    star, c = p.right.ob["*"], p.left.ob["c"]
    assert not p.category.hom(star, c)
    assert pushouts_agree(p, pushout_oracle(i, F)) is not None


def test_oracle_rejects_cycles():
    i = arrow_cell()
    bc2 = tiny_categories()[5]
    F = FinFunctor(i.source, bc2, {"a": "*"}, {})
    # the explicit formula handles non-poset C; the presentation does not
    p = pushout_along_dwyer(i, F)
    assert category_violations(p.category) == []
    with pytest.raises(CyclicPresentation):
        pushout_oracle(i, F)


@given(seeds)
def test_explicit_matches_oracle(seed):
    rng = rng_for(seed)
    i = random_dwyer(rng, 8)
    C = random_poset(rng, 6, prefix="c")
    F = random_monotone(rng, i.source, C)
    p = pushout_along_dwyer(i, F)
    assert category_violations(p.category) == []
    assert functor_violations(p.left) == [] and functor_violations(p.right) == []
    assert pushouts_agree(p, pushout_oracle(i, F)) is not None


def _posets_up_to(n):
    out = [terminal("e"), poset_to_category(["e0", "e1"], [("e0", "e1")]),
           poset_to_category(["e0", "e1"], []), chain(2)]
    return [E for E in out if len(E.objects) <= n]


@pytest.mark.parametrize("seed", range(6))
def test_universal_property_exhaustive(seed):
    rng = rng_for(seed)
    i = random_dwyer(rng, 4)
    C = random_poset(rng, 3, prefix="c")
    F = random_monotone(rng, i.source, C)
    p = pushout_along_dwyer(i, F)
    for E in _posets_up_to(3):
        for P in brute_functors(i.target, E):
            for Q in brute_functors(C, E):
                if i.then(P) != F.then(Q):
                    continue
                matches = [M for M in brute_functors(p.category, E)
                           if p.left.then(M) == P and p.right.then(M) == Q]
                assert len(matches) == 1
                assert matches[0] == p.induced(P, Q)


def test_sequential_colimit_examples():
    c0, c1, c2 = chain(0), chain(1), chain(2)
    f = poset_functor(c0, c1, {"0": "0"})
    g = poset_functor(c1, c2, {"0": "0", "1": "1"})
    col = sequential_colimit([f, g])
    assert find_isomorphism(col.category, c2) is not None
    ident = identity_functor(c2)
    col = sequential_colimit([ident, ident, ident])
    assert col.category == c2
    with pytest.raises(NotMono):
        sequential_colimit([constant_functor(c1, c0, "0")])


@pytest.mark.parametrize("seed", range(5))
def test_filtered_mono_c2(seed):
    maps = random_mono_chain(rng_for(seed), C2, 3)
    for H in ("H0", "H1"):
        assert verify_filtered_mono(maps, H).iso


def _arrow_on_point(G, K):
    i = arrow_cell()
    C = trivial_action(G, terminal())
    F = induced_from_fixed(G, K, i.source, C, constant_functor(i.source, C.base, "*"))
    return i, F


def test_fixed_point_pushout_c2_free():
    i, F = _arrow_on_point(C2, "H0")
    rep = verify_fixed_point_pushout(C2, "H0", "H1", i, F)
    assert rep.iso and rep.source_size[0] == rep.target_size[0] == 1
    D, _ = equivariant_pushout(tensor_functor(coset_gset(C2, "H0"), i), F)
    assert len(D.base.objects) == 3
    assert verify_fixed_point_pushout(C2, "H0", "H0", i, F).iso


def test_fixed_point_pushout_s3_c3():
    i, F = _arrow_on_point(S3, "H4")
    rep = verify_fixed_point_pushout(S3, "H4", "H4", i, F)
    assert rep.iso
    assert rep.source_size[0] == rep.target_size[0] == 3   # the point and two fixed b-copies


@given(seeds)
def test_fixed_point_pushout_random(seed):
    rng = rng_for(seed)
    G = rng.choice([C2, cyclic(3), S3])
    names = list(subgroup_names(G))
    K, H = rng.choice(names), rng.choice(names)
    i, F = fixed_pushout_instance(rng, G, K)
    assert verify_fixed_point_pushout(G, K, H, i, F).iso


def test_two_arrow_cells_preserved():
    G = C2
    X0 = trivial_action(G, terminal("x"))
    i = arrow_cell()
    f0 = constant_functor(i.source, X0.base, "x")
    Y = trivial_action(G, poset_to_category(["y0", "y1"], [("y0", "y1")]))
    g = GFunctor(X0, Y, FinFunctor(X0.base, Y.base, {"x": "y1"}, {}))
    sq = attach_cells(X0, [("H0", i, f0), ("H1", i, f0)], g)
    assert square_violations(sq) == []
    for H in ("H0", "H1"):
        assert fixed_square_is_pushout(sq, H).iso


def test_single_cell_square_matches_fixed_point_pushout():
    G = S3
    X0 = trivial_action(G, terminal("x"))
    i = arrow_cell()
    f0 = constant_functor(i.source, X0.base, "x")
    Y = trivial_action(G, terminal("y"))
    g = GFunctor(X0, Y, constant_functor(X0.base, Y.base, "y"))
    sq = attach_cells(X0, [("H4", i, f0)], g)
    for H in subgroup_names(G):
        a = fixed_square_is_pushout(sq, H)
        b = verify_fixed_point_pushout(G, "H4", H, i, induced_from_fixed(G, "H4", i.source, X0, f0))
        assert a.iso and b.iso
        assert a.target_size == b.target_size


@pytest.mark.parametrize("seed", range(4))
def test_retract_of_preserved_square(seed):
    sq = random_square(rng_for(seed), C2, 2)
    for H in ("H0", "H1"):
        rep = verify_retract(sq, H)
        assert rep.retract_data_ok and rep.doubled.iso and rep.retract.iso


def test_broken_square_is_caught():
    X0 = trivial_action(C2, terminal("x"))
    Y = trivial_action(C2, poset_to_category(["y0", "y1"], [("y0", "y1")]))
    g = GFunctor(X0, Y, FinFunctor(X0.base, Y.base, {"x": "y0"}, {}))
    i = arrow_cell()
    sq = attach_cells(X0, [("H0", i, constant_functor(i.source, X0.base, "x"))], g)
    # re-route the Y leg so that the square no longer commutes
    Q = sq.to_q.target.base
    top = sq.from_y.functor.ob["y1"]
    bad_y = constant_functor(Y.base, Q, top)
    bad = Square(sq.j, sq.g, sq.to_q, GFunctor(Y, sq.to_q.target, bad_y))
    assert [v.detail for v in square_violations(bad)] == ["square does not commute"]


@given(seeds)
def test_phi_commutes_with_pullbacks(seed):
    rng = rng_for(seed)
    G = rng.choice([C2, S3])
    Z = random_gposet(rng, G, 3)
    X = random_gposet(rng, G, 3)
    Y = random_gposet(rng, G, 3)
    F = GFunctor(X, Z, _equivariant_to_fixed(X, Z, rng))
    H = GFunctor(Y, Z, _equivariant_to_fixed(Y, Z, rng))
    for K in subgroup_names(G):
        assert verify_phi_pullback(F, H, K)


def _equivariant_to_fixed(X, Z, rng):
    """Collapse onto a random G-fixed object of ``Z`` (always equivariant)."""
    fixed = fixed_category(Z, Z.group.elements).objects
    z = rng.choice(fixed)
    return constant_functor(X.base, Z.base, z)
