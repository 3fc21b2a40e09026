from hypothesis import given

from conftest import rng_for, seeds
from gcat.catalog import (fixed_pushout_instance, random_dwyer, random_gposet, random_mono_chain, random_monotone,
                          random_poset, random_square, random_small_category)
from gcat.colimits import dwyer_witness, is_sieve, square_violations
from gcat.fincat import category_violations, functor_violations, is_poset
from gcat.gaction import equivariance_violations, gcategory_violations
from gcat.group import cyclic, symmetric


@given(seeds)
def test_random_poset(seed):
    P = random_poset(rng_for(seed), 8)
    assert 1 <= len(P.objects) <= 8 and is_poset(P)
    assert category_violations(P) == []


@given(seeds)
def test_random_dwyer_is_a_dwyer_sieve(seed):
    i = random_dwyer(rng_for(seed), 8)
    assert len(i.target.objects) <= 8
    assert is_sieve(i, i.target) and dwyer_witness(i) is not None


@given(seeds)
def test_random_monotone_is_a_functor(seed):
    rng = rng_for(seed)
    A, C = random_poset(rng, 5, prefix="a"), random_poset(rng, 5, prefix="c")
    assert functor_violations(random_monotone(rng, A, C)) == []


@given(seeds)
def test_random_small_category(seed):
    C = random_small_category(rng_for(seed), 4)
    assert len(C.objects) <= 4 and category_violations(C) == []


@given(seeds)
def test_random_gposet_and_attaching_maps(seed):
    rng = rng_for(seed)
    G = rng.choice([cyclic(2), cyclic(3), symmetric(3)])
    assert gcategory_violations(random_gposet(rng, G)) == []
    K = rng.choice(["H0", "H1"])
    i, F = fixed_pushout_instance(rng, G, K)
    assert equivariance_violations(F) == []


def test_chains_and_squares_are_equivariant():
    for seed in range(5):
        rng = rng_for(seed)
        for m in random_mono_chain(rng, symmetric(3), 3):
            assert equivariance_violations(m) == [] and m.functor.is_injective()
        assert square_violations(random_square(rng, cyclic(2), 2)) == []
