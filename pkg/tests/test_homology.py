import itertools
from functools import reduce
from math import gcd

import sympy
from hypothesis import given, strategies as st

from gcat.catalog import adjunction_catalog, random_poset
from gcat.fincat import chain, identity_functor, terminal
from gcat.group import cyclic, subgroup_names
from gcat.homology import (IntMatrix, chain_complex, compare_homology, homology, nerve_homology,
                           smith_normal_form)
from gcat.sset import categorify, generating_cell, nerve, nerve_fixed_points, sd, standard_complex
from conftest import rng_for, seeds


def summary(degrees):
    return [(g.betti, g.torsion) for g in degrees]


def determinantal_divisors(rows):
    """d_k = gcd of all k×k minors, computed with sympy determinants."""
    M = sympy.Matrix(rows)
    m, n = M.shape
    out = []
    for k in range(1, min(m, n) + 1):
        minors = [int(M.extract(list(r), list(c)).det())
                  for r in itertools.combinations(range(m), k) for c in itertools.combinations(range(n), k)]
        g = reduce(gcd, minors, 0)
        if g == 0:
            break
        out.append(g)
    return out


def check_snf(rows):
    M = IntMatrix.from_rows(rows)
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert snf.D.is_diagonal()
    assert abs(sympy.Matrix(snf.U.entries).det()) == 1
    assert abs(sympy.Matrix(snf.V.entries).det()) == 1
    divs = snf.divisors
    assert all(d > 0 for d in divs)
    assert all(b % a == 0 for a, b in zip(divs, divs[1:]))
    dets = determinantal_divisors(rows)
    prods = list(itertools.accumulate(divs, lambda a, b: a * b))
    assert prods == dets
    return divs


def test_snf_examples():
    assert check_snf([[1, 0], [0, 2]]) == [1, 2]
    snf = smith_normal_form(IntMatrix.from_rows([[1, 0], [0, 2]]))
    assert snf.U == IntMatrix.identity(2) and snf.V == IntMatrix.identity(2)
    assert smith_normal_form(IntMatrix.from_rows([[0]])).D == IntMatrix.from_rows([[0]])
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_against_minors(rows):
    check_snf(rows)


def test_boundaries_square_to_zero():
    for X in (standard_complex("delta", 3), standard_complex("boundary", 3), nerve(chain(3)),
              sd(standard_complex("delta", 2)), nerve(cyclic_category(), 3)):
        d = chain_complex(X)
        for n in range(2, X.dim + 1):
            assert (d[n - 1] @ d[n]).is_zero()


def cyclic_category():
    from gcat.catalog import tiny_categories
    return tiny_categories()[5]


def test_chain_complex_examples():
    assert chain_complex(standard_complex("delta", 0)) == {}
    d1 = chain_complex(standard_complex("boundary", 2))[1]
    assert (d1.rows, d1.cols) == (3, 3)
    assert all(sum(col) == 0 for col in zip(*d1.entries))


def test_homology_of_simplex_and_circle():
    assert summary(homology(standard_complex("delta", 2), include_top=True)) == [(1, []), (0, []), (0, [])]
    assert summary(homology(standard_complex("boundary", 2), include_top=True))[:2] == [(1, []), (1, [])]


def test_subdivided_circle_and_sphere():
    circle = categorify(sd(sd(standard_complex("boundary", 2))))
    assert summary(nerve_homology(circle, 2)) == [(1, []), (1, [])]
    sphere = categorify(sd(sd(standard_complex("boundary", 3))))
    assert summary(nerve_homology(sphere, 3)) == [(1, []), (0, []), (1, [])]


def test_bc2_has_2_torsion():
    # the nerve of BC2 is RP^∞: H1 = Z/2
    degrees = nerve_homology(cyclic_category(), 3)
    assert summary(degrees)[:2] == [(1, []), (0, [2])]
    assert str(degrees[1]) == "H1 = Z/2"


def test_top_degree_flagged():
    top = homology(standard_complex("boundary", 2), include_top=True)[-1]
    assert not top.exact and "note" in top.as_dict()


def test_compare_homology_examples():
    assert compare_homology(identity_functor(chain(2)), 3).equal
    horn = compare_homology(generating_cell(1, 0), 3)
    assert horn.equal and summary(horn.source) == [(1, []), (0, []), (0, [])]
    cof = compare_homology(generating_cell(2), 3)
    assert not cof.equal and cof.verdict == "not a weak equivalence"
    assert summary(cof.source)[1] == (1, []) and summary(cof.target)[1] == (0, [])


@given(seeds)
def test_subdivision_invariance(seed):
    P = random_poset(rng_for(seed), 4)
    N = nerve(P)
    d = N.dim + 1
    assert summary(nerve_homology(P, d)) == summary(nerve_homology(categorify(sd(N)), d))


def test_fixed_point_homology_two_ways():
    G = cyclic(2)
    gcats, _ = adjunction_catalog(G)
    for X in gcats:
        for H in subgroup_names(G):
            a, b = nerve_fixed_points(X, H, 3)
            assert summary(homology(a)) == summary(homology(b))


def test_point():
    assert summary(nerve_homology(terminal(), 2)) == [(1, []), (0, [])]
