from math import comb

import pytest
from hypothesis import given

from conftest import rng_for, seeds
from oracles import chain_face_poset, flag_counts, path_category_counts
from gcat.catalog import adjunction_catalog, random_poset, tiny_categories
from gcat.errors import BadIndices, CyclicOneSkeleton, NotRegular
from gcat.fincat import chain, find_isomorphism, is_poset, poset_to_category, terminal
from gcat.group import cyclic, subgroup_names
from gcat.sset import (TruncSSet, categorify, ex, face_poset, generating_cell, nerve,
                       nerve_fixed_points, sd, simplicial_maps, sset_violations, standard_complex, surj_to_word,
                       surjections, truncate, word_to_surj)


def delta(m):
    return standard_complex("delta", m)


def hom_counts(C):
    out = {}
    for f in C.morphisms:
        k = (C.src[f], C.tgt[f])
        out[k] = out.get(k, 0) + 1
    return out


def test_degeneracy_words_round_trip():
    for n in range(5):
        for m in range(n + 1):
            for s in surjections(n, m):
                assert word_to_surj(surj_to_word(s), n) == s


def test_nerve_of_terminal():
    N = nerve(terminal(), 2)
    assert N.counts() == [1, 0, 0]


def test_nerve_of_chain_counts():
    N = nerve(chain(2), 3)
    assert N.counts() == [3, 3, 1, 0]
    for n in range(5):
        assert nerve(chain(n)).counts() == [comb(n + 1, k + 1) for k in range(n + 1)]


def test_nerve_of_cyclic_category_needs_truncation():
    bc2 = tiny_categories()[5]
    with pytest.raises(ValueError):
        nerve(bc2)
    N = nerve(bc2, 3)
    assert N.counts() == [1, 1, 1, 1]
    assert sset_violations(N) == []


def test_subdivision_counts():
    point = delta(0)
    assert sd(point).counts() == [1]
    for n in range(4):
        assert sd(delta(n)).counts() == flag_counts(n)
    assert sd(delta(1)).counts() == [3, 2]
    assert sd(delta(2)).counts() == [7, 12, 6]


def test_subdivision_rejects_non_regular():
    with pytest.raises(NotRegular):
        sd(nerve(tiny_categories()[5], 2))


def test_standard_complexes():
    assert delta(0).counts() == [1]
    assert standard_complex("boundary", 2).counts() == [3, 3, 0]
    assert standard_complex("horn", 2, 0).counts() == [3, 2, 0]
    assert len(standard_complex("boundary", 0)) == 0
    with pytest.raises(BadIndices):
        standard_complex("horn", 2, 3)
    with pytest.raises(BadIndices):
        standard_complex("cube", 1)


def test_simplicial_identities_everywhere():
    built = [delta(3), standard_complex("boundary", 3), standard_complex("horn", 3, 1), sd(sd(delta(2))),
             nerve(tiny_categories()[4], 3), nerve(tiny_categories()[6], 3), ex(delta(1), 2)]
    for X in built:
        assert sset_violations(X) == []


def test_categorify_examples():
    assert find_isomorphism(categorify(nerve(chain(1))), chain(1)) is not None
    assert find_isomorphism(categorify(delta(2)), chain(2)) is not None
    faces = poset_to_category(["0", "1", "01"], [("0", "01"), ("1", "01")])
    assert find_isomorphism(categorify(sd(delta(1))), faces) is not None


def test_categorify_loop_without_filler():
    loop = TruncSSet(1, {0: ["v"], 1: ["e"]}, {"e": [("v", (0,)), ("v", (0,))]})
    assert sset_violations(loop) == []
    with pytest.raises(CyclicOneSkeleton):
        categorify(loop)


@pytest.mark.parametrize("C", tiny_categories(), ids=lambda C: f"{len(C.objects)}ob{len(C.morphisms)}mor")
def test_counit_is_iso(C):
    assert find_isomorphism(categorify(nerve(C, 3)), C) is not None


@pytest.mark.parametrize("X", [delta(2), standard_complex("boundary", 2), standard_complex("horn", 2, 1),
                               sd(delta(2)), sd(sd(delta(1))), nerve(chain(3))],
                         ids=["delta2", "boundary2", "horn21", "sd-delta2", "sd2-delta1", "nerve3"])
def test_categorify_matches_path_oracle(X):
    assert hom_counts(categorify(X)) == path_category_counts(X)


@given(seeds)
def test_subdivided_nerve_is_face_poset(seed):
    P = random_poset(rng_for(seed), 4)
    elements, rel = chain_face_poset(P)
    oracle = poset_to_category(elements, rel)
    X = nerve(P)
    assert find_isomorphism(categorify(sd(X)), oracle) is not None
    assert find_isomorphism(face_poset(X), oracle) is not None


@pytest.mark.parametrize("X", [delta(0), delta(1), delta(2), standard_complex("boundary", 2),
                               standard_complex("horn", 2, 0), nerve(chain(2))],
                         ids=["d0", "d1", "d2", "bd2", "horn20", "nerve2"])
def test_double_subdivision_categorifies_to_poset(X):
    assert is_poset(categorify(sd(sd(X))))


def test_generating_cells():
    g0 = generating_cell(0)
    assert g0.source.objects == () and len(g0.target.objects) == 1
    g1 = generating_cell(1)
    assert len(g1.target.objects) == 5
    covers = [f for f in g1.target.nonidentity()]
    assert len(covers) == 4
    assert len(g1.source.objects) == 2 and len(g1.source.morphisms) == 2
    assert is_poset(generating_cell(2).target)


def test_double_subdivision_of_boundary_of_3_simplex():
    X = sd(sd(standard_complex("boundary", 3)))
    assert X.counts() == [74, 216, 144, 0]
    assert len(categorify(X).objects) == 74


def test_ex_vertices_and_edges():
    for X in (delta(0), delta(1), standard_complex("boundary", 2)):
        assert set(ex(X, 1).simplices[0]) == set(X.simplices[0])
    E = ex(delta(1), 2)
    assert len(E.all_simplices(1)) == 5
    assert len(simplicial_maps(sd(delta(1)), delta(1))) == 5


@pytest.mark.parametrize("Y", [delta(0), delta(1), standard_complex("boundary", 2), standard_complex("horn", 2, 1),
                               nerve(tiny_categories()[5], 2)],
                         ids=["d0", "d1", "bd2", "horn21", "nerveBC2"])
def test_sd_ex_adjunction_counts(Y):
    EY = ex(Y, 2)
    for n in range(3):
        for X in (delta(n), standard_complex("horn", n, 0) if n else delta(0)):
            assert len(simplicial_maps(sd(X), Y)) == len(simplicial_maps(X, EY))


def test_truncate():
    X = delta(3)
    assert truncate(X, 1).counts() == [4, 6]
    assert truncate(X, 9) == X


@pytest.mark.parametrize("G", [cyclic(2), cyclic(3)], ids=lambda G: G.name)
def test_nerve_commutes_with_fixed_points(G):
    gcats, _ = adjunction_catalog(G)
    for X in gcats:
        for H in subgroup_names(G):
            a, b = nerve_fixed_points(X, H, 3)
            assert a == b
