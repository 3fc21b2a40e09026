"""Seeded generators and small fixed catalogs of test instances.

Random posets are transitive closures of random DAGs (edge probability
0.3); sieves are down-closed subsets.  Every generator takes a
``random.Random`` so that instances depend only on the seed.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .colimits import (
    Square,
    attach_cells,
    dwyer_witness,
    gcoproduct,
    induced_from_fixed,
    tensor_functor,
    equivariant_pushout,
)
from .fincat import (
    FinCat,
    FinFunctor,
    chain,
    constant_functor,
    discrete,
    empty_category,
    poset_from_covers,
    poset_to_category,
    subcategory,
    terminal,
)
from .gaction import GCategory, GFunctor, all_actions, diagram_iter, fixed_category, tensor, trivial_action
from .group import FinGroup, coset_gset, cyclic, subgroup_names, symmetric
from .presentation import topological_order
from .sset import generating_cell

EDGE_PROBABILITY = 0.3


def random_poset(rng: random.Random, n_max: int = 8, n_min: int = 1, prefix: str = "p",
                 p: float = EDGE_PROBABILITY) -> FinCat:
    n = rng.randint(n_min, n_max)
    names = [f"{prefix}{k}" for k in range(n)]
    covers = [(names[a], names[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return poset_from_covers(names, covers)


def arrow(C: FinCat, x: str, y: str) -> str:
    """The unique morphism ``x → y`` of a poset."""
    return C.hom(x, y)[0]


def poset_functor(A: FinCat, C: FinCat, ob: dict[str, str]) -> FinFunctor:
    """Monotone object map between posets, extended to morphisms."""
    return FinFunctor(A, C, ob, {f: arrow(C, ob[A.src[f]], ob[A.tgt[f]]) for f in A.morphisms})


def random_monotone(rng: random.Random, A: FinCat, C: FinCat, tries: int = 20) -> FinFunctor:
    """A random order-preserving map of posets (constant as a last resort)."""
    if not A.objects:
        return FinFunctor(A, C, {}, {})
    order = topological_order(A.objects, [(f, A.src[f], A.tgt[f]) for f in A.nonidentity()])
    for _ in range(tries):
        ob = {}
        for a in order:
            below = [ob[A.src[f]] for f in A.into[a] if not A.is_identity(f)]
            cands = [c for c in C.objects if all(C.hom(b, c) for b in below)]
            if not cands:
                break
            ob[a] = rng.choice(cands)
        else:
            return poset_functor(A, C, ob)
    return constant_functor(A, C, rng.choice(C.objects))


def inclusion_of(A: FinCat, B: FinCat) -> FinFunctor:
    return FinFunctor(A, B, {x: x for x in A.objects}, {f: f for f in A.morphisms})


def random_dwyer(rng: random.Random, n_max: int = 8, attempts: int = 200) -> FinFunctor:
    """A random Dwyer sieve inclusion ``A ↪ B`` of posets with ``|B| ≤ n_max``."""
    for _ in range(attempts):
        B = random_poset(rng, n_max, n_min=1, prefix="b")
        picked = {x for x in B.objects if rng.random() < 0.5}
        down = {B.src[f] for f in B.morphisms if B.tgt[f] in picked}
        A = subcategory(B, down)
        i = inclusion_of(A, B)
        if dwyer_witness(i) is not None:
            return i
    A = subcategory(B, [])
    return inclusion_of(A, B)


# ---------------------------------------------------------------- small categories

@lru_cache(maxsize=None)
def tiny_categories() -> tuple[FinCat, ...]:
    """Every shape used by the exhaustive catalogs: at most three objects."""
    iso = FinCat(["x", "y"], [("id_x", "x", "x"), ("id_y", "y", "y"), ("f", "x", "y"), ("g", "y", "x")],
                 {"x": "id_x", "y": "id_y"}, {("g", "f"): "id_x", ("f", "g"): "id_y"})
    bc2 = FinCat(["*"], [("e", "*", "*"), ("t", "*", "*")], {"*": "e"}, {("t", "t"): "e"})
    idem = FinCat(["*"], [("e", "*", "*"), ("p", "*", "*")], {"*": "e"}, {("p", "p"): "p"})
    vee = poset_to_category(["a", "b", "c"], [("a", "b"), ("a", "c")])
    wedge = poset_to_category(["a", "b", "c"], [("a", "c"), ("b", "c")])
    return (
        empty_category(), terminal(), discrete(["a", "b"]), chain(1), iso, bc2, idem,
        discrete(["a", "b", "c"]), chain(2), vee, wedge,
        poset_to_category(["a", "b", "c"], [("a", "b")]),
    )


def random_small_category(rng: random.Random, n_max: int = 4) -> FinCat:
    """Either a random poset with at most ``n_max`` objects or a tiny fixture."""
    if rng.random() < 0.5:
        return random_poset(rng, n_max, n_min=0, prefix="a")
    return rng.choice([C for C in tiny_categories() if len(C.objects) <= n_max])


# ---------------------------------------------------------------- G-posets

def random_gposet(rng: random.Random, G: FinGroup, n_max: int = 4) -> GCategory:
    """A G-poset with a nonempty fixed part: trivial poset ⊔ G/L ⊗ poset."""
    P = random_poset(rng, n_max, n_min=1, prefix="c")
    T = trivial_action(G, P)
    if rng.random() < 0.3:
        return T
    names = list(subgroup_names(G))
    L = rng.choice(names)
    Q = tensor(coset_gset(G, L), random_poset(rng, max(1, n_max // 2), n_min=1, prefix="q"))
    return gcoproduct(T, Q)[0]


def random_fixed_attaching(rng: random.Random, G: FinGroup, K, A: FinCat, C: GCategory) -> GFunctor:
    """A random equivariant ``G/K ⊗ A → C`` induced from ``A → C^K``."""
    CK = fixed_category(C, K)
    f0 = random_monotone(rng, A, CK)
    f0 = FinFunctor(A, C.base, f0.ob, f0.mor)
    return induced_from_fixed(G, K, A, C, f0)


def fixed_pushout_instance(rng: random.Random, G: FinGroup, K: str, n_max: int = 6):
    """``(i, F)`` for the fixed-point pushout check."""
    i = random_dwyer(rng, n_max)
    C = random_gposet(rng, G)
    return i, random_fixed_attaching(rng, G, K, i.source, C)


@lru_cache(maxsize=None)
def cell_catalog() -> tuple[tuple[str, FinFunctor], ...]:
    """Small generating Dwyer cells used for attaching."""
    A = terminal("a")
    arrow_cell = inclusion_of(A, poset_to_category(["a", "b"], [("a", "b")]))
    return (
        ("a->b", arrow_cell),
        ("gen0", generating_cell(0)),
        ("gen1", generating_cell(1)),
        ("horn1,0", generating_cell(1, 0)),
        ("horn1,1", generating_cell(1, 1)),
        ("gen2", generating_cell(2)),
        ("horn2,1", generating_cell(2, 1)),
    )


def random_mono_chain(rng: random.Random, G: FinGroup, length: int) -> list[GFunctor]:
    """``X₀ → ... → X_length`` where each step attaches one equivariant cell."""
    X = random_gposet(rng, G, 3)
    names = list(subgroup_names(G))
    maps = []
    for _ in range(length):
        _, i = rng.choice(cell_catalog())
        K = rng.choice(names)
        F = random_fixed_attaching(rng, G, K, i.source, X)
        ti = tensor_functor(coset_gset(G, K), i)
        D, po = equivariant_pushout(ti, F)
        maps.append(GFunctor(X, D, FinFunctor(X.base, D.base, po.right.ob, po.right.mor)))
        X = D
    return maps


def random_square(rng: random.Random, G: FinGroup, length: int) -> Square:
    """A composite of ``length`` cell pushouts, pushed out along a random ``g``."""
    X0 = random_gposet(rng, G, 3)
    names = list(subgroup_names(G))
    cells = []
    for _ in range(length):
        _, i = rng.choice(cell_catalog())
        K = rng.choice(names)
        XK = fixed_category(X0, K)
        f0 = random_monotone(rng, i.source, XK)
        cells.append((K, i, FinFunctor(i.source, X0.base, f0.ob, f0.mor)))
    if rng.random() < 0.5:
        Y = trivial_action(G, terminal("y"))
        g = GFunctor(X0, Y, constant_functor(X0.base, Y.base, "y"))
    else:
        Y, inj, _ = gcoproduct(X0, random_gposet(rng, G, 2))
        g = inj
    return attach_cells(X0, cells, g)


# ---------------------------------------------------------------- adjunction catalog

def adjunction_catalog(G: FinGroup) -> tuple[list, list]:
    """Every G-category on a tiny shape, and every diagram built from them.

    Diagrams are assembled for groups of prime order: value ``X`` at ``G/e``
    (any catalog G-category) and any tiny ``T`` at ``G/G`` with a functor
    into ``X^G``.
    """
    key = (G.name, G.elements)
    if key not in _ADJ_CACHE:
        _ADJ_CACHE[key] = _build_adjunction_catalog(G)
    return _ADJ_CACHE[key]


_ADJ_CACHE: dict = {}


def _build_adjunction_catalog(G: FinGroup) -> tuple[list, list]:
    gcats = [X for C in tiny_categories() for X in all_actions(G, C)]
    tops = [C for C in tiny_categories() if len(C.objects) <= 2]
    small = [X for X in gcats if len(X.base.objects) <= 2]
    diagrams = list(diagram_iter(G, tops, small))
    return gcats, diagrams


def adjunction_groups() -> list[FinGroup]:
    return [cyclic(2), cyclic(3)]


def fixed_pushout_groups() -> list[FinGroup]:
    return [cyclic(2), cyclic(3), symmetric(3)]


def filtered_groups() -> list[FinGroup]:
    return [cyclic(2), symmetric(3)]
