"""Sieves, Dwyer maps and pushouts of finite categories.

The explicit pushout along a Dwyer sieve ``i: A → B`` (with cosieve ``W``,
retraction ``r`` and counit ``ε``) has objects ``ob C ⊔ (ob B ∖ ob A)`` and
hom-sets

* ``D(c, c') = C(c, c')`` and ``D(b, b') = B(b, b')``,
* ``D(c, b) = C(c, F r b)`` for ``b ∈ W``, empty otherwise,
* ``D(b, c)`` empty,

where a morphism ``c → b`` is the formal composite ``ε_b ∘ γ``.  The
oracle computes the same pushout from a presentation instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    ComparisonNotIso,
    CyclicPresentation,
    NotASieve,
    NotDwyer,
    NotEquivariant,
    NotMono,
    Violation,
    raise_for,
)
from .fincat import (
    FinCat,
    FinFunctor,
    coproduct,
    find_isomorphism,
    functor_violations,
    pullback,
    subcategory,
    tag,
)
from .gaction import (
    GCategory,
    GFunctor,
    equivariance_violations,
    fixed_category,
    fixed_functor,
    gpullback,
    set_tensor,
    tensor,
)
from .group import FinGroup, coset_gset, gset_fixed_points, resolve_subgroup, subgroup_name
from .presentation import present_acyclic, topological_order

DEFAULT_CLOSURE_BUDGET = 10**5


# ---------------------------------------------------------------- sieves

def _cells(A, B: FinCat) -> tuple[set[str], set[str]]:
    """Object and morphism ids of a subcategory given as a category, an
    inclusion functor, or an object list (full subcategory)."""
    if isinstance(A, FinFunctor):
        objs, mors = set(A.ob.values()), set(A.mor.values())
    elif isinstance(A, FinCat):
        objs, mors = set(A.objects), set(A.morphisms)
    else:
        objs = set(A)
        mors = {m for m in B.morphisms if B.src[m] in objs and B.tgt[m] in objs}
    bad = []
    if not objs <= set(B.objects):
        bad.append(Violation("NotASubcategory", "objects outside the ambient category"))
    if not mors <= set(B.morphisms):
        bad.append(Violation("NotASubcategory", "morphisms outside the ambient category"))
    raise_for(bad)
    for m in mors:
        if B.src[m] not in objs or B.tgt[m] not in objs:
            bad.append(Violation("NotASubcategory", f"{m!r} has an endpoint outside the subcategory"))
    for x in objs:
        if B.identities[x] not in mors:
            bad.append(Violation("NotASubcategory", f"identity of {x!r} missing"))
    for f in mors:
        for g in B.out[B.tgt[f]]:
            if g in mors and B.table[g, f] not in mors:
                bad.append(Violation("NotASubcategory", f"composite {g!r}∘{f!r} missing"))
    raise_for(bad)
    return objs, mors


def is_sieve(A, B: FinCat) -> bool:
    """Every morphism of ``B`` ending in ``A`` lies in ``A``."""
    objs, mors = _cells(A, B)
    return all(m in mors for m in B.morphisms if B.tgt[m] in objs)


def is_cosieve(W, B: FinCat) -> bool:
    """Every morphism of ``B`` starting in ``W`` lies in ``W``."""
    objs, mors = _cells(W, B)
    return all(m in mors for m in B.morphisms if B.src[m] in objs)


@dataclass
class DwyerWitness:
    """Cosieve ``W ⊇ A`` with right adjoint retraction ``r`` and counit ``ε``."""

    cosieve: tuple[str, ...]
    W: FinCat
    r: FinFunctor
    eps: dict[str, str]


def _check_sieve_inclusion(i: FinFunctor) -> None:
    if not i.is_injective():
        raise NotASieve("functor is not injective")
    bad = functor_violations(i)
    raise_for(bad)
    if not is_sieve(i, i.target):
        raise NotASieve("image is not a sieve")


def dwyer_witness(i: FinFunctor) -> DwyerWitness | None:
    """A Dwyer witness for the sieve inclusion ``i``, or ``None``.

    Only the cosieve generated by the image is tried: any cosieve containing
    ``A`` contains it, and the adjoint condition is checked objectwise, so if
    it fails there it fails everywhere.
    """
    _check_sieve_inclusion(i)
    A, B = i.source, i.target
    img = set(i.ob.values())
    inv_ob = {b: a for a, b in i.ob.items()}
    up = {B.tgt[m] for m in B.morphisms if B.src[m] in img}
    wobjs = tuple(x for x in B.objects if x in up)
    W = subcategory(B, wobjs)
    r_ob, eps = {}, {}
    for w in wobjs:
        if w in img:
            r_ob[w], eps[w] = inv_ob[w], B.identities[w]
            continue
        cands = [(a, e) for a in A.objects for e in B.hom(i.ob[a], w)]
        for a, e in cands:
            if all(sum(B.table[e, i.mor[al]] == f for al in A.hom(a2, a)) == 1 for a2, f in cands):
                r_ob[w], eps[w] = a, e
                break
        else:
            return None
    r_mor = {}
    for b in W.morphisms:
        w, w2 = W.src[b], W.tgt[b]
        target = B.table[b, eps[w]]
        r_mor[b] = next(al for al in A.hom(r_ob[w], r_ob[w2]) if B.table[eps[w2], i.mor[al]] == target)
    return DwyerWitness(wobjs, W, FinFunctor(W, A, r_ob, r_mor), eps)


def dwyer_violations(i: FinFunctor, wit: DwyerWitness) -> list[Violation]:
    """Check the defining properties of a claimed witness."""
    B = i.target
    out = []
    if not is_cosieve(wit.cosieve, B):
        out.append(Violation("NotDwyer", "W is not a cosieve"))
    if not set(i.ob.values()) <= set(wit.cosieve):
        out.append(Violation("NotDwyer", "W does not contain A"))
    out += [Violation("NotDwyer", v.detail) for v in functor_violations(wit.r)]
    if out:
        return out
    if any(wit.r.ob[i.ob[a]] != a for a in i.source.objects) or any(
            wit.r.mor[i.mor[f]] != f for f in i.source.morphisms):
        out.append(Violation("NotDwyer", "r∘i is not the identity"))
    if any(wit.eps[i.ob[a]] != B.identities[i.ob[a]] for a in i.source.objects):
        out.append(Violation("NotDwyer", "counit is not the identity on A"))
    for b in wit.W.morphisms:
        w, w2 = B.src[b], B.tgt[b]
        if B.table[b, wit.eps[w]] != B.table[wit.eps[w2], i.mor[wit.r.mor[b]]]:
            out.append(Violation("NotDwyer", f"counit not natural at {b!r}"))
    # terminality of each ε_w in the comma category i ↓ w
    A = i.source
    for w in wit.cosieve:
        a0, e0 = wit.r.ob[w], wit.eps[w]
        for a in A.objects:
            for f in B.hom(i.ob[a], w):
                n = sum(B.table[e0, i.mor[al]] == f for al in A.hom(a, a0))
                if n != 1:
                    out.append(Violation("NotDwyer", f"counit at {w!r} is not universal"))
    return out


# ---------------------------------------------------------------- pushouts

@dataclass
class Pushout:
    """A pushout square ``B ← A → C`` completed by ``left: B → D`` and ``right: C → D``."""

    category: FinCat
    left: FinFunctor
    right: FinFunctor
    _mediator: Callable = field(repr=False)

    def induced(self, P: FinFunctor, Q: FinFunctor) -> FinFunctor:
        """The functor ``D → E`` determined by ``P: B → E`` and ``Q: C → E``."""
        return self._mediator(P, Q)


def pushout_along_dwyer(i: FinFunctor, F: FinFunctor, witness: DwyerWitness | None = None) -> Pushout:
    """Pushout of ``F: A → C`` along the Dwyer sieve ``i: A → B`` by the explicit formula."""
    if witness is None:
        witness = dwyer_witness(i)
        if witness is None:
            raise NotDwyer("no Dwyer witness for the inclusion")
    else:
        raise_for(dwyer_violations(i, witness))
    A, B, C = i.source, i.target, F.target
    r, eps = witness.r, witness.eps
    img = set(i.ob.values())
    inv_mor = {b: a for a, b in i.mor.items()}
    inW = set(witness.cosieve)
    rest = [b for b in B.objects if b not in img]

    objects = [tag("C", c) for c in C.objects] + [tag("B", b) for b in rest]
    mors = [(tag("C", f), tag("C", C.src[f]), tag("C", C.tgt[f])) for f in C.morphisms]
    bmors = [m for m in B.morphisms if B.src[m] not in img]
    mors += [(tag("B", m), tag("B", B.src[m]), tag("B", B.tgt[m])) for m in bmors]
    wmors = []
    for b in rest:
        if b in inW:
            top = F.ob[r.ob[b]]
            for c in C.objects:
                for g in C.hom(c, top):
                    wmors.append((b, g))
                    mors.append((tag("W", b, g), tag("C", c), tag("B", b)))
    ids = {tag("C", c): tag("C", C.identities[c]) for c in C.objects}
    ids.update({tag("B", b): tag("B", B.identities[b]) for b in rest})
    table = {(tag("C", g), tag("C", f)): tag("C", h) for (g, f), h in C.table.items()}
    table.update({(tag("B", g), tag("B", f)): tag("B", h) for (g, f), h in B.table.items()
                  if B.src[f] not in img})
    for b, g in wmors:
        for beta in B.out[b]:
            table[tag("B", beta), tag("W", b, g)] = tag("W", B.tgt[beta], C.table[F.mor[r.mor[beta]], g])
        for d in C.into[C.src[g]]:
            table[tag("W", b, g), tag("C", d)] = tag("W", b, C.table[g, d])
    D = FinCat(objects, mors, ids, table)

    right = FinFunctor(C, D, {c: tag("C", c) for c in C.objects}, {f: tag("C", f) for f in C.morphisms})
    inv_ob = {b: a for a, b in i.ob.items()}
    lob = {b: tag("C", F.ob[inv_ob[b]]) if b in img else tag("B", b) for b in B.objects}
    lmor = {}
    for m in B.morphisms:
        s, t = B.src[m], B.tgt[m]
        if t in img:
            lmor[m] = tag("C", F.mor[inv_mor[m]])
        elif s in img:
            lmor[m] = tag("W", t, F.mor[r.mor[m]])
        else:
            lmor[m] = tag("B", m)
    left = FinFunctor(B, D, lob, lmor)

    def mediator(P: FinFunctor, Q: FinFunctor) -> FinFunctor:
        E = P.target
        ob = {tag("C", c): Q.ob[c] for c in C.objects}
        ob.update({tag("B", b): P.ob[b] for b in rest})
        mor = {tag("C", f): Q.mor[f] for f in C.morphisms}
        mor.update({tag("B", m): P.mor[m] for m in bmors})
        mor.update({tag("W", b, g): E.table[P.mor[eps[b]], Q.mor[g]] for b, g in wmors})
        return FinFunctor(D, E, ob, mor)

    return Pushout(D, left, right, mediator)


def pushout_oracle(i: FinFunctor, F: FinFunctor, budget: int = DEFAULT_CLOSURE_BUDGET) -> Pushout:
    """Pushout of ``F: A → C`` along ``i: A → B`` from a presentation.

    Generators are the non-identity morphisms of ``C`` and those of ``B``
    outside the image of ``i``; relations are the composition tables of
    ``B`` and ``C`` with ``i(α)`` replaced by ``F(α)``.  The generator graph
    must be acyclic.
    """
    A, B, C = i.source, i.target, F.target
    inv_mor = {}
    for a, b in i.mor.items():
        inv_mor.setdefault(b, a)
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for a in A.objects:
        ra, rb = find(("C", F.ob[a])), find(("B", i.ob[a]))
        if ra != rb:
            # keep the C object as the root
            if rb[0] == "C":
                ra, rb = rb, ra
            parent[rb] = ra
    cls = {}
    for c in C.objects:
        cls[("C", c)] = find(("C", c))
    for b in B.objects:
        cls[("B", b)] = find(("B", b))
    objects = []
    name = {}
    for key in [("C", c) for c in C.objects] + [("B", b) for b in B.objects]:
        root = cls[key]
        if root not in name:
            name[root] = tag(*root)
            objects.append(name[root])

    def obj(kind, x):
        return name[cls[(kind, x)]]

    def cpath(f):
        return () if C.is_identity(f) else (tag("C", f),)

    def bpath(m):
        if m in inv_mor:
            return cpath(F.mor[inv_mor[m]])
        return () if B.is_identity(m) else (tag("B", m),)

    edges = [(tag("C", f), obj("C", C.src[f]), obj("C", C.tgt[f])) for f in C.nonidentity()]
    edges += [(tag("B", m), obj("B", B.src[m]), obj("B", B.tgt[m]))
              for m in B.nonidentity() if m not in inv_mor]
    relations = [(obj("C", C.src[f]), cpath(f) + cpath(g), cpath(h)) for (g, f), h in C.table.items()]
    relations += [(obj("B", B.src[f]), bpath(f) + bpath(g), bpath(h)) for (g, f), h in B.table.items()]
    topo = topological_order(objects, edges)
    if topo is None:
        raise CyclicPresentation("the identified generator graph has a cycle")
    pres = present_acyclic(objects, edges, relations, budget, topo)
    D = pres.category
    left = FinFunctor(B, D, {b: obj("B", b) for b in B.objects},
                      {m: pres.morphism_of(obj("B", B.src[m]), bpath(m)) for m in B.morphisms})
    right = FinFunctor(C, D, {c: obj("C", c) for c in C.objects},
                       {f: pres.morphism_of(obj("C", C.src[f]), cpath(f)) for f in C.morphisms})

    def mediator(P: FinFunctor, Q: FinFunctor) -> FinFunctor:
        E = P.target
        ob = {}
        for c in C.objects:
            ob[obj("C", c)] = Q.ob[c]
        for b in B.objects:
            ob.setdefault(obj("B", b), P.ob[b])
        edge_img = {tag("C", f): Q.mor[f] for f in C.morphisms}
        edge_img.update({tag("B", m): P.mor[m] for m in B.morphisms})
        mor = {}
        for m, (start, path) in pres.representative.items():
            out = E.identities[ob[start]]
            for e in path:
                out = E.table[edge_img[e], out]
            mor[m] = out
        return FinFunctor(D, E, ob, mor)

    return Pushout(D, left, right, mediator)


def pushouts_agree(p: Pushout, q: Pushout) -> FinFunctor | None:
    """An isomorphism ``p.category → q.category`` commuting with both legs, if any."""
    fo, fm = {}, {}
    for leg_p, leg_q in ((p.left, q.left), (p.right, q.right)):
        for x, y in leg_p.ob.items():
            if fo.setdefault(y, leg_q.ob[x]) != leg_q.ob[x]:
                return None
        for f, g in leg_p.mor.items():
            if fm.setdefault(g, leg_q.mor[f]) != leg_q.mor[f]:
                return None
    return find_isomorphism(p.category, q.category, fixed_objects=fo, fixed_morphisms=fm)


# ---------------------------------------------------------------- sequential colimits

@dataclass
class Colimit:
    category: FinCat
    cocone: list[FinFunctor]


def sequential_colimit(maps: Sequence[FinFunctor], first: FinCat | None = None) -> Colimit:
    """Colimit of ``X₀ → X₁ → ... → Xₙ`` with injective maps.

    Each cell is named by the id it has at the stage where it first
    appears (tagged with the stage number if those ids would clash).
    """
    maps = list(maps)
    if not maps and first is None:
        raise ValueError("empty chain needs its single category")
    stages = [maps[0].source if maps else first] + [m.target for m in maps]
    for k, m in enumerate(maps):
        if not m.is_injective():
            raise NotMono(f"map {k} is not injective")
        if k and maps[k - 1].target is not m.source and maps[k - 1].target != m.source:
            raise NotMono(f"map {k} does not start where map {k - 1} ends")
    born = [{}]
    X0 = stages[0]
    for x in list(X0.objects) + list(X0.morphisms):
        born[0][x] = (0, x)
    for k, m in enumerate(maps, start=1):
        pre = {v: u for u, v in list(m.ob.items()) + list(m.mor.items())}
        X = stages[k]
        born.append({x: born[k - 1][pre[x]] if x in pre else (k, x) for x in list(X.objects) + list(X.morphisms)})
    last = born[-1]
    raw = [x for _, x in last.values()]
    plain = len(set(raw)) == len(raw)

    def nm(cell):
        k, x = last[cell]
        return x if plain else tag(str(k), x)

    Xn = stages[-1]
    colim = FinCat([nm(x) for x in Xn.objects],
                   [(nm(f), nm(Xn.src[f]), nm(Xn.tgt[f])) for f in Xn.morphisms],
                   {nm(x): nm(i) for x, i in Xn.identities.items()},
                   {(nm(g), nm(f)): nm(h) for (g, f), h in Xn.table.items()})
    cocone = []
    for k, X in enumerate(stages):
        ob = {x: x for x in X.objects}
        mor = {f: f for f in X.morphisms}
        for m in maps[k:]:
            ob = {x: m.ob[y] for x, y in ob.items()}
            mor = {f: m.mor[g] for f, g in mor.items()}
        cocone.append(FinFunctor(X, colim, {x: nm(y) for x, y in ob.items()},
                                 {f: nm(g) for f, g in mor.items()}))
    return Colimit(colim, cocone)


def equivariant_sequential_colimit(maps: Sequence[GFunctor]) -> tuple[GCategory, Colimit]:
    """Sequential colimit of equivariant monos, with the induced action."""
    for k, m in enumerate(maps):
        raise_for(equivariance_violations(m))
    col = sequential_colimit([m.functor for m in maps])
    Xn = maps[-1].target
    last = col.cocone[-1]
    inv = {v: u for u, v in list(last.ob.items()) + list(last.mor.items())}
    action = {}
    for g, s in Xn.action.items():
        action[g] = FinFunctor(col.category, col.category,
                               {y: last.ob[s.ob[inv[y]]] for y in col.category.objects},
                               {y: last.mor[s.mor[inv[y]]] for y in col.category.morphisms})
    return GCategory(Xn.group, col.category, action), col


@dataclass
class ComparisonReport:
    label: str
    source_size: tuple[int, int]
    target_size: tuple[int, int]
    iso: bool

    def as_dict(self) -> dict:
        return {"label": self.label, "source": list(self.source_size),
                "target": list(self.target_size), "iso": self.iso}


def _size(C: FinCat) -> tuple[int, int]:
    return len(C.objects), len(C.morphisms)


def _require_iso(label: str, comparison: FinFunctor) -> ComparisonReport:
    ok = not functor_violations(comparison) and comparison.is_bijective()
    rep = ComparisonReport(label, _size(comparison.source), _size(comparison.target), ok)
    if not ok:
        raise ComparisonNotIso(f"{label}: comparison is not an isomorphism {rep.source_size} → {rep.target_size}")
    return rep


def verify_filtered_mono(maps: Sequence[GFunctor], H) -> ComparisonReport:
    """``colim(Xᵢ^H) → (colim Xᵢ)^H`` is an isomorphism."""
    G = maps[0].source.group
    Hs = resolve_subgroup(G, H)
    X, col = equivariant_sequential_colimit(maps)
    right = fixed_category(X, Hs)
    fixed_maps = [fixed_functor(m, Hs) for m in maps]
    left = sequential_colimit(fixed_maps)
    stage = left.cocone[-1]
    inv = {v: u for u, v in list(stage.ob.items()) + list(stage.mor.items())}
    big = col.cocone[-1]
    comparison = FinFunctor(left.category, right,
                            {y: big.ob[inv[y]] for y in left.category.objects},
                            {y: big.mor[inv[y]] for y in left.category.morphisms})
    return _require_iso(f"filtered-mono H={subgroup_name(G, Hs)}", comparison)


# ---------------------------------------------------------------- equivariant pushouts

def tensor_functor(S, i: FinFunctor) -> GFunctor:
    """``S ⊗ i: S ⊗ A → S ⊗ B``."""
    TA, TB = tensor(S, i.source), tensor(S, i.target)
    F = FinFunctor(TA.base, TB.base,
                   {tag(x, a): tag(x, i.ob[a]) for x in S.points for a in i.source.objects},
                   {tag(x, f): tag(x, i.mor[f]) for x in S.points for f in i.source.morphisms})
    return GFunctor(TA, TB, F)


def induced_from_fixed(G: FinGroup, K, A: FinCat, C: GCategory, f0: FinFunctor) -> GFunctor:
    """The equivariant ``G/K ⊗ A → C`` sending ``(gK, a)`` to ``σ_g f0(a)``.

    ``f0`` must land in ``C^K``.
    """
    Ks = resolve_subgroup(G, K)
    S = coset_gset(G, Ks)
    TA = tensor(S, A)
    CK = set(fixed_category(C, Ks).morphisms)
    if any(f0.mor[f] not in CK for f in A.morphisms):
        raise NotEquivariant("f0 does not land in the K-fixed subcategory")
    ob = {tag(x, a): C.action[x].ob[f0.ob[a]] for x in S.points for a in A.objects}
    mor = {tag(x, f): C.action[x].mor[f0.mor[f]] for x in S.points for f in A.morphisms}
    return GFunctor(TA, C, FinFunctor(TA.base, C.base, ob, mor))


def equivariant_pushout(i: GFunctor, F: GFunctor, explicit: bool = True) -> tuple[GCategory, Pushout]:
    """Pushout of G-categories with the action induced through the universal property."""
    raise_for(equivariance_violations(i) + equivariance_violations(F))
    po = pushout_along_dwyer(i.functor, F.functor) if explicit else pushout_oracle(i.functor, F.functor)
    B, C = i.target, F.target
    action = {g: po.induced(B.action[g].then(po.left), C.action[g].then(po.right)) for g in B.group.elements}
    return GCategory(B.group, po.category, action), po


def _into(F: FinFunctor, target: FinCat) -> FinFunctor:
    """``F`` with its codomain shrunk to a subcategory containing the image."""
    return FinFunctor(F.source, target, F.ob, F.mor)


def _restrict(F: FinFunctor, source: FinCat, target: FinCat) -> FinFunctor:
    return FinFunctor(source, target, {x: F.ob[x] for x in source.objects},
                      {f: F.mor[f] for f in source.morphisms})


def verify_fixed_point_pushout(G: FinGroup, K, H, i: FinFunctor, F: GFunctor) -> ComparisonReport:
    """Taking ``H``-fixed points of the pushout of ``G/K ⊗ i`` along ``F`` gives a pushout.

    ``F: G/K ⊗ A → C`` must be equivariant.  Builds ``D``, ``D^H``, the
    pushout ``P`` of ``(G/K)^H ⊗ i`` along ``F^H`` and checks the induced
    ``P → D^H`` is an isomorphism.
    """
    Ks, Hs = resolve_subgroup(G, K), resolve_subgroup(G, H)
    S = coset_gset(G, Ks)
    ti = tensor_functor(S, i)
    X, po = equivariant_pushout(ti, F)
    DH = fixed_category(X, Hs)
    pts = gset_fixed_points(S, Hs)
    TAH, TBH = set_tensor(pts, i.source), set_tensor(pts, i.target)
    iH = _restrict(ti.functor, TAH, TBH)
    CH = fixed_category(F.target, Hs)
    FH = _restrict(F.functor, TAH, CH)
    P = pushout_along_dwyer(iH, FH)
    comparison = P.induced(_restrict(po.left, TBH, DH), _restrict(po.right, CH, DH))
    label = f"pushout-fixed {G.name} K={subgroup_name(G, Ks)} H={subgroup_name(G, Hs)}"
    return _require_iso(label, comparison)


# ---------------------------------------------------------------- closure under composites and retracts

@dataclass
class Square:
    """A commutative square ``X0 → Xn``, ``X0 → Y`` with pushout corner ``Q``."""

    j: GFunctor        # X0 → Xn
    g: GFunctor        # X0 → Y
    to_q: GFunctor     # Xn → Q
    from_y: GFunctor   # Y → Q


def attach_cells(X0: GCategory, cells: Sequence[tuple], g: GFunctor) -> Square:
    """Attach equivariant cells to ``X0`` and, in parallel, to ``Y`` along ``g``.

    Each cell is ``(K, i, f0)`` with ``i: A → B`` a Dwyer sieve of posets and
    ``f0: A → X0`` landing in ``X0^K``; the attaching map at stage ``k`` is
    the induced ``G/K ⊗ A → X0`` followed by ``X0 → X_k``.  The composite
    ``X0 → Xn`` is a finite composite of pushouts of cells, and ``Q`` is
    its pushout along ``g`` built the same way on the ``Y`` side.
    """
    G = X0.group
    ident_x = FinFunctor(X0.base, X0.base, {x: x for x in X0.base.objects}, {f: f for f in X0.base.morphisms})
    ident_y = FinFunctor(g.target.base, g.target.base, {x: x for x in g.target.base.objects},
                         {f: f for f in g.target.base.morphisms})
    Xk, Yk = X0, g.target
    jx, jy = ident_x, ident_y     # X0 → Xk, Y → Yk
    m = g.functor                 # Xk → Yk
    for K, i, f0 in cells:
        Ks = resolve_subgroup(G, K)
        S = coset_gset(G, Ks)
        ti = tensor_functor(S, i)
        F0 = induced_from_fixed(G, Ks, i.source, X0, f0)
        Fx = GFunctor(F0.source, Xk, F0.functor.then(jx))
        Fy = GFunctor(F0.source, Yk, Fx.functor.then(m))
        Xn, px = equivariant_pushout(ti, Fx)
        Yn, py = equivariant_pushout(ti, Fy)
        m = px.induced(py.left, m.then(py.right))
        jx = jx.then(_into(px.right, Xn.base))
        jy = jy.then(_into(py.right, Yn.base))
        Xk, Yk = Xn, Yn
    return Square(GFunctor(X0, Xk, jx), g, GFunctor(Xk, Yk, m), GFunctor(g.target, Yk, jy))


def square_violations(sq: Square) -> list[Violation]:
    out = []
    for F in (sq.j, sq.g, sq.to_q, sq.from_y):
        out += equivariance_violations(F)
    if not out and sq.j.functor.then(sq.to_q.functor) != sq.g.functor.then(sq.from_y.functor):
        out.append(Violation("NotEquivariant", "square does not commute"))
    return out


def fixed_square_is_pushout(sq: Square, H, budget: int = DEFAULT_CLOSURE_BUDGET) -> ComparisonReport:
    """Compare ``Q^H`` with the oracle pushout of ``j^H`` and ``g^H``."""
    G = sq.j.source.group
    Hs = resolve_subgroup(G, H)
    X0H = fixed_category(sq.j.source, Hs)
    XnH = fixed_category(sq.j.target, Hs)
    YH = fixed_category(sq.g.target, Hs)
    QH = fixed_category(sq.to_q.target, Hs)
    oracle = pushout_oracle(_restrict(sq.j.functor, X0H, XnH), _restrict(sq.g.functor, X0H, YH), budget)
    actual = Pushout(QH, _restrict(sq.to_q.functor, XnH, QH), _restrict(sq.from_y.functor, YH, QH), None)
    iso = pushouts_agree(oracle, actual) is not None
    rep = ComparisonReport(f"closure H={subgroup_name(G, Hs)}", _size(oracle.category), _size(QH), iso)
    if not iso:
        raise ComparisonNotIso(f"fixed points of the square are not a pushout: {rep}")
    return rep


def gcoproduct(X: GCategory, Y: GCategory) -> tuple[GCategory, GFunctor, GFunctor]:
    S, inj = coproduct([("1", X.base), ("2", Y.base)])
    action = {}
    for g in X.group.elements:
        ob = {tag("1", x): tag("1", y) for x, y in X.action[g].ob.items()}
        ob.update({tag("2", x): tag("2", y) for x, y in Y.action[g].ob.items()})
        mor = {tag("1", f): tag("1", h) for f, h in X.action[g].mor.items()}
        mor.update({tag("2", f): tag("2", h) for f, h in Y.action[g].mor.items()})
        action[g] = FinFunctor(S, S, ob, mor)
    Z = GCategory(X.group, S, action)
    return Z, GFunctor(X, Z, inj["1"]), GFunctor(Y, Z, inj["2"])


def _coproduct_functor(F: GFunctor, Z1: GCategory, Z2: GCategory) -> GFunctor:
    """``F ⊔ F: Z1 → Z2`` between doubled categories."""
    ob, mor = {}, {}
    for k in ("1", "2"):
        ob.update({tag(k, x): tag(k, y) for x, y in F.functor.ob.items()})
        mor.update({tag(k, f): tag(k, h) for f, h in F.functor.mor.items()})
    return GFunctor(Z1, Z2, FinFunctor(Z1.base, Z2.base, ob, mor))


def _fold(X: GCategory, Z: GCategory) -> GFunctor:
    ob = {tag(k, x): x for k in ("1", "2") for x in X.base.objects}
    mor = {tag(k, f): f for k in ("1", "2") for f in X.base.morphisms}
    return GFunctor(Z, X, FinFunctor(Z.base, X.base, ob, mor))


@dataclass
class RetractReport:
    doubled: ComparisonReport
    retract_data_ok: bool
    retract: ComparisonReport


def verify_retract(sq: Square, H, budget: int = DEFAULT_CLOSURE_BUDGET) -> RetractReport:
    """``sq`` is a retract of ``sq ⊔ sq`` (first inclusion, fold); check both fixed squares are pushouts."""
    corners = [sq.j.source, sq.j.target, sq.g.target, sq.to_q.target]
    doubled = [gcoproduct(X, X) for X in corners]
    Z = [d[0] for d in doubled]
    big = Square(_coproduct_functor(sq.j, Z[0], Z[1]), _coproduct_functor(sq.g, Z[0], Z[2]),
                 _coproduct_functor(sq.to_q, Z[1], Z[3]), _coproduct_functor(sq.from_y, Z[2], Z[3]))
    raise_for(square_violations(big))
    doubled_rep = fixed_square_is_pushout(big, H, budget)
    s = [d[1] for d in doubled]
    r = [_fold(X, z) for X, z in zip(corners, Z)]
    ok = all(si.functor.then(ri.functor) == FinFunctor(X.base, X.base, {x: x for x in X.base.objects},
                                                         {f: f for f in X.base.morphisms})
             for si, ri, X in zip(s, r, corners))
    edges = [(0, 1, sq.j, big.j), (0, 2, sq.g, big.g), (1, 3, sq.to_q, big.to_q), (2, 3, sq.from_y, big.from_y)]
    for a, b, small, large in edges:
        ok = ok and s[a].functor.then(large.functor) == small.functor.then(s[b].functor)
        ok = ok and r[a].functor.then(small.functor) == large.functor.then(r[b].functor)
    ok = ok and all(not equivariance_violations(f) for f in s + r)
    if not ok:
        raise ComparisonNotIso("retract data does not form a retraction of squares")
    return RetractReport(doubled_rep, ok, fixed_square_is_pushout(sq, H, budget))


# ---------------------------------------------------------------- fixed points and pullbacks

def verify_phi_pullback(F: GFunctor, G_: GFunctor, H) -> bool:
    """``(X ×_Z Y)^H`` equals ``X^H ×_{Z^H} Y^H`` cell for cell."""
    Hs = resolve_subgroup(F.source.group, H)
    P, _, _ = gpullback(F, G_)
    lhs = fixed_category(P, Hs)
    ZH = fixed_category(F.target, Hs)
    rhs, _, _ = pullback(_into(fixed_functor(F, Hs), ZH), _into(fixed_functor(G_, Hs), ZH))
    if lhs != rhs:
        raise ComparisonNotIso("fixed points of a pullback differ from the pullback of fixed points")
    return True


__all__ = [
    "Colimit", "ComparisonReport", "DwyerWitness", "Pushout", "RetractReport", "Square",
    "attach_cells", "dwyer_violations", "dwyer_witness", "equivariant_pushout",
    "equivariant_sequential_colimit", "fixed_square_is_pushout", "gcoproduct",
    "induced_from_fixed", "is_cosieve", "is_sieve", "pushout_along_dwyer",
    "pushout_oracle", "pushouts_agree", "sequential_colimit", "square_violations",
    "tensor_functor", "verify_filtered_mono", "verify_fixed_point_pushout",
    "verify_phi_pullback", "verify_retract",
]
