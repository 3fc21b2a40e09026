import itertools

import pytest

from gcat.errors import NoInverse, NotASubgroup
from gcat.fincat import category_violations
from gcat.group import (coset_gset, cyclic, dihedral, fixture_groups, gset_fixed_points, gset_violations,
                        orbit_category, quaternion, resolve_subgroup, subgroup_names, subgroups, symmetric,
                        validate_group)


def brute_subgroups(G):
    """Every subset closed under products and containing e."""
    out = set()
    others = [g for g in G.elements if g != G.identity]
    for mask in range(2 ** len(others)):
        S = {G.identity} | {g for k, g in enumerate(others) if mask >> k & 1}
        if all(G.mul(a, b) in S for a in S for b in S):
            out.add(frozenset(S))
    return out


def brute_equivariant_maps(S, T):
    """Equivariant maps between coset G-sets, by listing every function."""
    G = S.group
    count = 0
    for images in itertools.product(T.points, repeat=len(S.points)):
        f = dict(zip(S.points, images))
        if all(f[S.act(g, x)] == T.act(g, f[x]) for g in G.elements for x in S.points):
            count += 1
    return count


def test_c2_table_validates():
    G = validate_group(["e", "a"], [["e", "a"], ["a", "e"]], "C2")
    assert G.identity == "e" and G.inv("a") == "a"


def test_s3_table_validates():
    S3 = symmetric(3)
    G = validate_group(S3.elements, S3.rows())
    assert G.order() == 6
    assert any(G.mul(a, b) != G.mul(b, a) for a in G.elements for b in G.elements)


def test_non_invertible_row_rejected():
    with pytest.raises(NoInverse):
        validate_group(["e", "a"], [["e", "a"], ["a", "a"]])


def test_subgroup_counts():
    assert len(subgroups(cyclic(2))) == 2
    S3 = symmetric(3)
    orders = sorted(len(H) for H in subgroups(S3))
    assert orders == [1, 2, 2, 2, 3, 6]
    assert len(subgroups(cyclic(4))) == 3


@pytest.mark.parametrize("G", fixture_groups(), ids=lambda G: G.name)
def test_subgroups_match_subset_enumeration(G):
    assert {frozenset(H) for H in subgroups(G)} == brute_subgroups(G)


@pytest.mark.parametrize("G", fixture_groups(), ids=lambda G: G.name)
def test_subgroups_closed_under_conjugation(G):
    subs = {frozenset(H) for H in subgroups(G)}
    for H in subs:
        for g in G.elements:
            assert frozenset(G.conj(g, h) for h in H) in subs


def test_subgroup_naming():
    names = subgroup_names(symmetric(3))
    assert len(names["H0"]) == 1 and len(names["H5"]) == 6
    assert [len(names[f"H{i}"]) for i in range(1, 4)] == [2, 2, 2]
    assert len(names["H4"]) == 3
    S3 = symmetric(3)
    a, b = (g for g in names["H1"] + names["H2"] if g != S3.identity)
    with pytest.raises(NotASubgroup):
        resolve_subgroup(S3, [S3.identity, a, b])
    with pytest.raises(NotASubgroup):
        resolve_subgroup(S3, ["nope"])


def test_known_subgroup_counts():
    # D4 has 10 subgroups, Q8 has 6, C2^3 has 16
    assert len(subgroups(dihedral(4))) == 10
    assert len(subgroups(quaternion())) == 6
    c2cube = [G for G in fixture_groups() if G.order() == 8 and all(G.mul(g, g) == G.identity for g in G.elements)]
    assert len(subgroups(c2cube[0])) == 16


def test_coset_examples():
    C2 = cyclic(2)
    free = coset_gset(C2, "H0")
    assert len(free.points) == 2
    assert all(free.act(g, x) != x for g in C2.elements if g != C2.identity for x in free.points)
    assert len(coset_gset(symmetric(3), "H1").points) == 3
    top = coset_gset(symmetric(3), "H5")
    assert len(top.points) == 1 and gset_violations(top) == []


def test_fixed_point_examples():
    C2 = cyclic(2)
    assert gset_fixed_points(coset_gset(C2, "H0"), C2.elements) == ()
    assert len(gset_fixed_points(coset_gset(C2, "H1"), C2.elements)) == 1
    S = coset_gset(symmetric(3), "H2")
    assert gset_fixed_points(S, [symmetric(3).identity]) == S.points


def test_c2_orbit_hom_sets():
    O = orbit_category(cyclic(2))
    C = O.category
    assert len(C.hom("G/H0", "G/H0")) == 2
    assert len(C.hom("G/H0", "G/H1")) == 1
    assert len(C.hom("G/H1", "G/H0")) == 0
    assert len(C.hom("G/H1", "G/H1")) == 1


@pytest.mark.parametrize("G", fixture_groups(), ids=lambda G: G.name)
def test_orbit_category_hom_counts(G):
    O = orbit_category(G)
    assert category_violations(O.category) == []
    e = O.object("H0")
    assert len(O.category.hom(e, e)) == G.order()
    for h, H in O.subgroups.items():
        for k in O.subgroups:
            fixed = gset_fixed_points(coset_gset(G, k), H)
            assert len(O.category.hom(O.object(h), O.object(k))) == len(fixed)


@pytest.mark.parametrize("G", [cyclic(2), cyclic(3), cyclic(4), symmetric(3)], ids=lambda G: G.name)
def test_orbit_hom_counts_by_brute_force(G):
    O = orbit_category(G)
    for h in O.subgroups:
        for k in O.subgroups:
            n = brute_equivariant_maps(coset_gset(G, h), coset_gset(G, k))
            assert len(O.category.hom(O.object(h), O.object(k))) == n


@pytest.mark.parametrize("G", [cyclic(3), symmetric(3), dihedral(4)], ids=lambda G: G.name)
def test_orbit_composition_is_function_composition(G):
    O = orbit_category(G)
    sets = {n: coset_gset(G, n) for n in O.subgroups}

    def as_function(m):
        h, k, r = O.cells[m]
        return {x: sets[k].act(x, r) for x in sets[h].points}

    for (g, f), gf in O.category.table.items():
        F, Gm = as_function(f), as_function(g)
        assert as_function(gf) == {x: Gm[F[x]] for x in F}
