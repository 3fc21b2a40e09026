"""Strict group actions on finite categories.

Fixed-point subcategories, the diagram of all fixed points over the orbit
category (``phi``), its left adjoint ``lambda_`` (evaluation at ``G/e``)
and the tensor ``S ⊗ A`` of a G-set with a category.

Restriction convention: the orbit map ``G/H → G/K`` named by ``aK``
restricts ``X^K → X^H`` by ``x ↦ σ_a(x)``.  Under this convention the
automorphism of ``G/e`` named ``g`` restricts along ``σ_g``, so evaluation
at ``G/e`` inherits a left action with no inversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ComparisonNotIso,
    TranspositionMismatch,
    Violation,
    raise_for,
)
from .fincat import (
    FinCat,
    FinFunctor,
    automorphisms,
    functor_violations,
    functors,
    identity_functor,
    pullback,
    subcategory,
    tag,
)
from .group import (
    FinGroup,
    GSet,
    OrbitCategory,
    coset_gset,
    gset_fixed_points,
    orbit_category,
    resolve_subgroup,
)


@dataclass
class GCategory:
    group: FinGroup
    base: FinCat
    action: dict[str, FinFunctor]

    def sigma(self, g: str) -> FinFunctor:
        return self.action[g]

    def __repr__(self):
        return f"GCategory({self.group!r} on {self.base!r})"


def _as_functor(C: FinCat, spec) -> FinFunctor:
    if isinstance(spec, FinFunctor):
        return spec
    if isinstance(spec, Mapping):
        return FinFunctor(C, C, spec.get("objects", {}), spec.get("morphisms", {}))
    ob, mor = spec
    return FinFunctor(C, C, ob, mor)


def gcategory_violations(X: GCategory) -> list[Violation]:
    G, C = X.group, X.base
    out = []
    for g in G.elements:
        if g not in X.action:
            out.append(Violation("NotAGroupHomomorphism", f"no functor for {g!r}"))
            continue
        out += functor_violations(X.action[g])
    if out:
        return out
    if X.action[G.identity] != identity_functor(C):
        out.append(Violation("IdentityNotIdentity", "σ_e is not the identity functor"))
    for g in G.elements:
        for h in G.elements:
            if X.action[h].then(X.action[g]) != X.action[G.mul(g, h)]:
                out.append(Violation("NotAGroupHomomorphism", f"σ_{g}σ_{h} ≠ σ_{G.mul(g, h)}"))
    for g in G.elements:
        if not X.action[g].is_bijective():
            out.append(Violation("NotAGroupHomomorphism", f"σ_{g} is not invertible"))
    return out


def validate_gcategory(G: FinGroup, C: FinCat, action: Mapping) -> GCategory:
    """``action`` maps each element to a functor, an ``{"objects", "morphisms"}``
    dict, or an ``(object map, morphism map)`` pair."""
    X = GCategory(G, C, {g: _as_functor(C, spec) for g, spec in action.items()})
    raise_for(gcategory_violations(X))
    return X


def trivial_action(G: FinGroup, C: FinCat) -> GCategory:
    ident = identity_functor(C)
    return GCategory(G, C, {g: ident for g in G.elements})


def fixed_category(X: GCategory, H) -> FinCat:
    """Objects and morphisms fixed by every element of ``H``; ids are kept."""
    H = resolve_subgroup(X.group, H)
    C = X.base
    sig = [X.action[h] for h in H]
    objs = [x for x in C.objects if all(s.ob[x] == x for s in sig)]
    mors = [f for f in C.morphisms if all(s.mor[f] == f for s in sig)]
    return subcategory(C, objs, mors)


# ---------------------------------------------------------------- equivariant functors

@dataclass
class GFunctor:
    source: GCategory
    target: GCategory
    functor: FinFunctor


def equivariance_violations(F: GFunctor) -> list[Violation]:
    out = functor_violations(F.functor)
    if out:
        return out
    for g in F.source.group.elements:
        left = F.source.action[g].then(F.functor)
        right = F.functor.then(F.target.action[g])
        if left != right:
            out.append(Violation("NotEquivariant", f"F∘σ_{g} ≠ σ_{g}∘F"))
    return out


def is_equivariant(F: FinFunctor, X: GCategory, Y: GCategory) -> bool:
    for g in X.group.elements:
        sx, sy = X.action[g], Y.action[g]
        if any(F.ob[sx.ob[x]] != sy.ob[F.ob[x]] for x in X.base.objects):
            return False
        if any(F.mor[sx.mor[f]] != sy.mor[F.mor[f]] for f in X.base.morphisms):
            return False
    return True


def fixed_functor(F: GFunctor, H) -> FinFunctor:
    """``F^H: X^H → Y^H``."""
    A = fixed_category(F.source, H)
    B = fixed_category(F.target, H)
    return FinFunctor(A, B, {x: F.functor.ob[x] for x in A.objects},
                      {f: F.functor.mor[f] for f in A.morphisms})


def gpullback(F: GFunctor, G: GFunctor) -> tuple[GCategory, GFunctor, GFunctor]:
    """Pullback of equivariant functors, with the diagonal action."""
    P, p1, p2 = pullback(F.functor, G.functor)
    X, Y = F.source, G.source
    action = {}
    for g in X.group.elements:
        sx, sy = X.action[g], Y.action[g]
        action[g] = FinFunctor(
            P, P,
            {x: tag(sx.ob[p1.ob[x]], sy.ob[p2.ob[x]]) for x in P.objects},
            {f: tag(sx.mor[p1.mor[f]], sy.mor[p2.mor[f]]) for f in P.morphisms},
        )
    Z = GCategory(X.group, P, action)
    return Z, GFunctor(Z, X, p1), GFunctor(Z, Y, p2)


# ---------------------------------------------------------------- diagrams over the orbit category

@dataclass
class OGDiagram:
    """A functor from the opposite of the orbit category to finite categories.

    ``values`` is keyed by subgroup name; ``restrictions`` by orbit-category
    morphism id, the morphism ``G/H → G/K`` giving a functor
    ``values[K] → values[H]``.
    """

    group: FinGroup
    orbit: OrbitCategory
    values: dict[str, FinCat]
    restrictions: dict[str, FinFunctor]

    def value(self, H: str) -> FinCat:
        return self.values[H]

    def restrict(self, f: str) -> FinFunctor:
        return self.restrictions[f]


def ogdiagram_violations(Y: OGDiagram) -> list[Violation]:
    O = Y.orbit
    out = []
    for name in O.subgroups:
        if name not in Y.values:
            out.append(Violation("NotADiagram", f"no value at G/{name}"))
    if out:
        return out
    for f, (h, k, _) in O.cells.items():
        R = Y.restrictions.get(f)
        if R is None:
            out.append(Violation("NotADiagram", f"no restriction along {f!r}"))
            continue
        if R.source != Y.values[k] or R.target != Y.values[h]:
            out.append(Violation("NotADiagram", f"restriction along {f!r} has the wrong endpoints"))
            continue
        out += functor_violations(R)
    if out:
        return out
    C = O.category
    for name in O.subgroups:
        i = C.identities[O.object(name)]
        if Y.restrictions[i] != identity_functor(Y.values[name]):
            out.append(Violation("NotADiagram", f"identity of G/{name} restricts to a non-identity"))
    for g, f in C.composable_pairs():
        if Y.restrictions[C.table[g, f]] != Y.restrictions[g].then(Y.restrictions[f]):
            out.append(Violation("NotADiagram", f"restriction does not reverse {g!r}∘{f!r}"))
    return out


def validate_ogdiagram(Y: OGDiagram) -> OGDiagram:
    raise_for(ogdiagram_violations(Y))
    return Y


def phi(X: GCategory) -> OGDiagram:
    """The diagram ``G/H ↦ X^H``."""
    O = orbit_category(X.group)
    values = {n: fixed_category(X, H) for n, H in O.subgroups.items()}
    restrictions = {}
    for f, (h, k, r) in O.cells.items():
        src, tgt = values[k], values[h]
        s = X.action[r]
        restrictions[f] = FinFunctor(src, tgt, {x: s.ob[x] for x in src.objects},
                                     {m: s.mor[m] for m in src.morphisms})
    return OGDiagram(X.group, O, values, restrictions)


def lambda_(Y: OGDiagram) -> GCategory:
    """Evaluation at ``G/e`` with the action inherited from ``Aut(G/e)``."""
    O = Y.orbit
    base = Y.values[O.trivial]
    return GCategory(Y.group, base, {g: Y.restrictions[O.automorphism(g)] for g in Y.group.elements})


def constant_diagram(G: FinGroup, C: FinCat) -> OGDiagram:
    O = orbit_category(G)
    ident = identity_functor(C)
    return OGDiagram(G, O, {n: C for n in O.subgroups}, {f: ident for f in O.cells})


# ---------------------------------------------------------------- the adjunction

def is_natural(Y: OGDiagram, Z: OGDiagram, eta: Mapping[str, FinFunctor]) -> bool:
    for f, (h, k, _) in Y.orbit.cells.items():
        if Y.restrictions[f].then(eta[h]) != eta[k].then(Z.restrictions[f]):
            return False
    return True


def natural_transformations(Y: OGDiagram, Z: OGDiagram, budget: int = 10**6):
    """All natural transformations ``Y → Z``, as dicts of components."""
    names = list(Y.orbit.subgroups)
    comps = {n: list(functors(Y.values[n], Z.values[n], budget=budget)) for n in names}
    cells = Y.orbit.cells
    eta: dict[str, FinFunctor] = {}

    def ok_so_far(n):
        for f, (h, k, _) in cells.items():
            if n in (h, k) and h in eta and k in eta:
                if Y.restrictions[f].then(eta[h]) != eta[k].then(Z.restrictions[f]):
                    return False
        return True

    def rec(i):
        if i == len(names):
            yield dict(eta)
            return
        n = names[i]
        for F in comps[n]:
            eta[n] = F
            if ok_so_far(n):
                yield from rec(i + 1)
            del eta[n]

    yield from rec(0)


def equivariant_functors(X: GCategory, Y: GCategory, budget: int = 10**6):
    for F in functors(X.base, Y.base, budget=budget):
        if is_equivariant(F, X, Y):
            yield F


def _restrict_target(F: FinFunctor, target: FinCat) -> FinFunctor:
    return FinFunctor(F.source, target, F.ob, F.mor)


def transpose_to_diagram(Y: OGDiagram, X: GCategory, F: FinFunctor) -> dict[str, FinFunctor]:
    """Equivariant ``Λ(Y) → X`` to the natural transformation ``Y → Φ(X)``."""
    O = Y.orbit
    out = {}
    for n, H in O.subgroups.items():
        comp = Y.restrictions[O.projection(n)].then(F)
        out[n] = _restrict_target(comp, fixed_category(X, H))
    return out


def transpose_to_gcat(Y: OGDiagram, X: GCategory, eta: Mapping[str, FinFunctor]) -> FinFunctor:
    """Natural transformation ``Y → Φ(X)`` to the equivariant functor ``Λ(Y) → X``."""
    return _restrict_target(eta[Y.orbit.trivial], X.base)


def adjoint_transpose(direction: str, f, Y: OGDiagram, X: GCategory):
    """``direction`` is ``"to-diagram"`` or ``"to-gcat"``."""
    if direction == "to-diagram":
        return transpose_to_diagram(Y, X, f)
    if direction == "to-gcat":
        return transpose_to_gcat(Y, X, f)
    raise ValueError(f"unknown direction {direction!r}")


def unit(Y: OGDiagram) -> dict[str, FinFunctor]:
    """Components ``Y(G/H) → Λ(Y)^H`` of the unit."""
    L = lambda_(Y)
    O = Y.orbit
    return {n: _restrict_target(Y.restrictions[O.projection(n)], fixed_category(L, H))
            for n, H in O.subgroups.items()}


def counit(X: GCategory) -> FinFunctor:
    """``ΛΦ(X) → X``; the identity on cells."""
    return FinFunctor(lambda_(phi(X)).base, X.base, {x: x for x in X.base.objects},
                      {f: f for f in X.base.morphisms})


def _eta_key(eta):
    return tuple(sorted((n, F.key()) for n, F in eta.items()))


@dataclass
class AdjunctionReport:
    gcat_maps: int
    diagram_maps: int
    bijection: bool
    triangles: bool

    @property
    def passed(self) -> bool:
        return self.bijection and self.triangles and self.gcat_maps == self.diagram_maps


def verify_adjunction(Y: OGDiagram, X: GCategory, budget: int = 10**6) -> AdjunctionReport:
    """Enumerate both hom-sets and check transposition and the triangle identities.

    Raises :class:`TranspositionMismatch` when any check fails.
    """
    L = lambda_(Y)
    PX = phi(X)
    left = list(equivariant_functors(L, X, budget=budget))
    right = list(natural_transformations(Y, PX, budget=budget))
    right_keys = {_eta_key(e) for e in right}
    problems = []
    seen = set()
    for F in left:
        eta = transpose_to_diagram(Y, X, F)
        k = _eta_key(eta)
        if k not in right_keys or not is_natural(Y, PX, eta):
            problems.append("transpose of an equivariant functor is not a natural transformation")
        if transpose_to_gcat(Y, X, eta) != F:
            problems.append("transposing twice does not return the functor")
        seen.add(k)
    if len(seen) != len(left):
        problems.append("transposition is not injective")
    for eta in right:
        F = transpose_to_gcat(Y, X, eta)
        if functor_violations(F) or not is_equivariant(F, L, X):
            problems.append("transpose of a natural transformation is not equivariant")
        elif _eta_key(transpose_to_diagram(Y, X, F)) != _eta_key(eta):
            problems.append("transposing twice does not return the transformation")

    triangles = True
    u = unit(Y)
    if not is_natural(Y, phi(L), u) or any(functor_violations(F) for F in u.values()):
        problems.append("unit is not natural")
        triangles = False
    # εΛ ∘ Λη = id on Λ(Y)
    lam_eta = _restrict_target(u[Y.orbit.trivial], L.base)
    if lam_eta.then(counit(L)) != identity_functor(L.base):
        problems.append("first triangle identity fails")
        triangles = False
    # Φε ∘ ηΦ = id on Φ(X)
    uP = unit(PX)
    eps = counit(X)
    for n, H in PX.orbit.subgroups.items():
        comp = uP[n].then(_restrict_target(eps, X.base))
        if comp.ob != {x: x for x in PX.values[n].objects} or comp.mor != {f: f for f in PX.values[n].morphisms}:
            problems.append(f"second triangle identity fails at G/{n}")
            triangles = False
    if problems:
        raise TranspositionMismatch("; ".join(sorted(set(problems))))
    return AdjunctionReport(len(left), len(right), True, triangles)


# ---------------------------------------------------------------- tensors

def tensor(S: GSet, A: FinCat) -> GCategory:
    """``S ⊗ A``: one copy of ``A`` per point, permuted by the action on ``S``."""
    objs = [tag(x, a) for x in S.points for a in A.objects]
    mors = [(tag(x, f), tag(x, A.src[f]), tag(x, A.tgt[f])) for x in S.points for f in A.morphisms]
    ids = {tag(x, a): tag(x, A.identities[a]) for x in S.points for a in A.objects}
    table = {(tag(x, g), tag(x, f)): tag(x, h) for x in S.points for (g, f), h in A.table.items()}
    C = FinCat(objs, mors, ids, table)
    action = {}
    for g in S.group.elements:
        action[g] = FinFunctor(C, C,
                               {tag(x, a): tag(S.act(g, x), a) for x in S.points for a in A.objects},
                               {tag(x, f): tag(S.act(g, x), f) for x in S.points for f in A.morphisms})
    return GCategory(S.group, C, action)


def set_tensor(points: Iterable[str], A: FinCat) -> FinCat:
    """Non-equivariant ``T ⊗ A`` for a plain set ``T``, with the cell names of :func:`tensor`."""
    points = list(points)
    objs = [tag(x, a) for x in points for a in A.objects]
    mors = [(tag(x, f), tag(x, A.src[f]), tag(x, A.tgt[f])) for x in points for f in A.morphisms]
    ids = {tag(x, a): tag(x, A.identities[a]) for x in points for a in A.objects}
    table = {(tag(x, g), tag(x, f)): tag(x, h) for x in points for (g, f), h in A.table.items()}
    return FinCat(objs, mors, ids, table)


@dataclass
class TensorComparison:
    fixed_points: int
    source_size: tuple[int, int]
    target_size: tuple[int, int]
    iso: bool


def fixed_tensor_compare(G: FinGroup, K, H, A: FinCat) -> TensorComparison:
    """Check that ``(G/K)^H ⊗ A → (G/K ⊗ A)^H`` is an isomorphism."""
    K = resolve_subgroup(G, K)
    H = resolve_subgroup(G, H)
    S = coset_gset(G, K)
    pts = gset_fixed_points(S, H)
    lhs = set_tensor(pts, A)
    rhs = fixed_category(tensor(S, A), H)
    comparison = FinFunctor(lhs, rhs, {x: x for x in lhs.objects}, {f: f for f in lhs.morphisms})
    bad = functor_violations(comparison)
    iso = not bad and comparison.is_bijective()
    report = TensorComparison(len(pts), (len(lhs.objects), len(lhs.morphisms)),
                              (len(rhs.objects), len(rhs.morphisms)), iso)
    if not iso:
        raise ComparisonNotIso(f"tensor comparison is not an isomorphism: {report}")
    return report


def all_actions(G: FinGroup, C: FinCat, budget: int = 10**6) -> list[GCategory]:
    """Every strict action of ``G`` on ``C`` (homomorphisms into ``Aut(C)``)."""
    auts = automorphisms(C, budget=budget)
    els = G.elements
    out = []
    assign: dict[str, FinFunctor] = {}

    def rec(i):
        if i == len(els):
            out.append(GCategory(G, C, dict(assign)))
            return
        g = els[i]
        cands = [identity_functor(C)] if g == G.identity else auts
        for a in cands:
            assign[g] = a
            ok = True
            for h in els[: i + 1]:
                for k in els[: i + 1]:
                    gh = G.mul(h, k)
                    if gh in assign and assign[k].then(assign[h]).key() != assign[gh].key():
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                rec(i + 1)
            del assign[g]

    rec(0)
    return out


def diagram_iter(G: FinGroup, top_values: Iterable[FinCat], gcats: Iterable[GCategory]):
    """Diagrams for a group of prime order: ``G/e ↦ X``, ``G/G ↦ T`` with a
    functor ``T → X^G`` as the restriction along the projection."""
    O = orbit_category(G)
    if len(O.subgroups) != 2:
        raise ValueError("diagram_iter needs a group with exactly two subgroups")
    e, top = list(O.subgroups)
    for X in gcats:
        XG = fixed_category(X, O.subgroups[top])
        for T in top_values:
            for F in functors(T, XG):
                inc = _restrict_target(F, X.base)
                restrictions = {}
                for f, (h, k, r) in O.cells.items():
                    if h == e and k == e:
                        restrictions[f] = X.action[r]
                    elif h == top and k == top:
                        restrictions[f] = identity_functor(T)
                    else:
                        restrictions[f] = inc
                values = {e: X.base, top: T}
                yield OGDiagram(G, O, values, restrictions)

