"""Finite categories and functors given by explicit composition tables.

Objects and morphisms are opaque string ids.  A category stores its full
composition table, so checking the category laws or comparing two
categories is a scan over the table.  Constructions that build new
categories out of old ones name the new cells with :func:`tag`.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    NotAPartialOrder,
    NotASubcategory,
    SearchBudgetExceeded,
    Violation,
    raise_for,
)

DEFAULT_SEARCH_BUDGET = 10**6


def tag(*parts: str) -> str:
    """Id of a cell built from the cells ``parts``."""
    return "(" + ",".join(parts) + ")"


class FinCat:
    """A finite category.

    ``morphisms`` is an iterable of ``(id, source, target)`` triples and must
    include the identities named in ``identities``.  ``compose`` maps
    ``(g, f)`` to ``g∘f``; entries with an identity factor may be omitted and
    are filled in.  The constructor only indexes the data; use
    :func:`validate_category` to check the category laws.
    """

    def __init__(self, objects: Iterable[str], morphisms: Iterable[tuple[str, str, str]],
                 identities: Mapping[str, str], compose: Mapping[tuple[str, str], str]):
        self.objects = tuple(objects)
        obj_set = set(self.objects)
        if len(obj_set) != len(self.objects):
            raise DuplicateId("repeated object id")
        self.src: dict[str, str] = {}
        self.tgt: dict[str, str] = {}
        mors = []
        for m, s, t in morphisms:
            if m in self.src:
                raise DuplicateId(f"repeated morphism id {m!r}")
            if s not in obj_set or t not in obj_set:
                raise DanglingEndpoint(f"morphism {m!r} has endpoint outside the object list")
            self.src[m] = s
            self.tgt[m] = t
            mors.append(m)
        self.morphisms = tuple(mors)
        self.identities = dict(identities)
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or i not in self.src:
                raise DanglingEndpoint(f"object {x!r} has no identity morphism")
        self._identity_set = frozenset(self.identities.values())

        homs: dict[tuple[str, str], list[str]] = defaultdict(list)
        out: dict[str, list[str]] = defaultdict(list)
        into: dict[str, list[str]] = defaultdict(list)
        for m in self.morphisms:
            homs[self.src[m], self.tgt[m]].append(m)
            out[self.src[m]].append(m)
            into[self.tgt[m]].append(m)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self.out = {x: tuple(out[x]) for x in self.objects}
        self.into = {x: tuple(into[x]) for x in self.objects}

        table = dict(compose)
        for f in self.morphisms:
            table.setdefault((self.identities[self.tgt[f]], f), f)
            table.setdefault((f, self.identities[self.src[f]]), f)
        self.table = table

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def ident(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, f: str) -> bool:
        return f in self._identity_set

    def compose(self, g: str, f: str) -> str:
        """``g∘f`` (first ``f``, then ``g``)."""
        return self.table[g, f]

    def compose_path(self, path: Iterable[str], start: str) -> str:
        m = self.identities[start]
        for f in path:
            m = self.table[f, m]
        return m

    def nonidentity(self) -> Iterator[str]:
        return (m for m in self.morphisms if m not in self._identity_set)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for f in self.morphisms:
            for g in self.out[self.tgt[f]]:
                yield g, f

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.identities == other.identities
            and self.table == other.table
        )

    __hash__ = None

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def category_violations(C: FinCat) -> list[Violation]:
    out = []
    for x, i in C.identities.items():
        if C.src[i] != x or C.tgt[i] != x:
            out.append(Violation("IdentityLawViolation", f"identity {i!r} of {x!r} is not a loop at it"))
    for (g, f), h in C.table.items():
        if g not in C.src or f not in C.src or h not in C.src:
            out.append(Violation("DanglingEndpoint", f"composite entry ({g!r}, {f!r}) names an unknown morphism"))
        elif C.tgt[f] != C.src[g]:
            out.append(Violation("BadComposite", f"entry for non-composable pair ({g!r}, {f!r})"))
        elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            out.append(Violation("BadComposite", f"{g!r}∘{f!r} = {h!r} lands in the wrong hom-set"))
    if out:
        return out
    for f in C.morphisms:
        x, y = C.src[f], C.tgt[f]
        if C.table[C.identities[y], f] != f or C.table[f, C.identities[x]] != f:
            out.append(Violation("IdentityLawViolation", f"identity law fails for {f!r}"))
    missing = [(g, f) for g, f in C.composable_pairs() if (g, f) not in C.table]
    out.extend(Violation("MissingComposite", f"no entry for {g!r}∘{f!r}") for g, f in missing)
    if out:
        return out
    t = C.table
    for f in C.morphisms:
        for g in C.out[C.tgt[f]]:
            gf = t[g, f]
            for h in C.out[C.tgt[g]]:
                if t[h, gf] != t[t[h, g], f]:
                    out.append(Violation("NonAssociative", f"({h!r}∘{g!r})∘{f!r} differs from {h!r}∘({g!r}∘{f!r})"))
    return out


def validate_category(objects, morphisms=None, compose=None, identities=None) -> FinCat:
    """Build a category and check its laws.

    Either pass an existing :class:`FinCat` (re-validation) or the raw data.
    ``morphisms`` are ``(id, src, tgt)`` triples; when ``identities`` is
    omitted each object ``x`` gets the identity ``"id_" + x``, which is added
    to the morphism list unless already present there.
    """
    if isinstance(objects, FinCat):
        C = objects
    else:
        objects = list(objects)
        morphisms = [tuple(m) for m in (morphisms or ())]
        if identities is None:
            identities = {x: "id_" + x for x in objects}
            present = {m[0] for m in morphisms}
            morphisms = [(identities[x], x, x) for x in objects if identities[x] not in present] + morphisms
        C = FinCat(objects, morphisms, identities, dict(compose or {}))
    raise_for(category_violations(C))
    return C


# ---------------------------------------------------------------- functors

class FinFunctor:
    """A functor between finite categories, stored as two lookup tables.

    Images of identities may be left out of ``morphisms``; they are filled in
    as the identity of the image object.
    """

    def __init__(self, source: FinCat, target: FinCat, objects: Mapping[str, str],
                 morphisms: Mapping[str, str]):
        self.source = source
        self.target = target
        self.ob = dict(objects)
        self.mor = dict(morphisms)
        for x in source.objects:
            i = source.identities[x]
            if i not in self.mor and x in self.ob and self.ob[x] in target.identities:
                self.mor[i] = target.identities[self.ob[x]]

    def then(self, other: FinFunctor) -> FinFunctor:
        """The composite ``other∘self``."""
        return FinFunctor(self.source, other.target,
                          {x: other.ob[y] for x, y in self.ob.items()},
                          {f: other.mor[g] for f, g in self.mor.items()})

    def is_injective(self) -> bool:
        return (len(set(self.ob.values())) == len(self.ob)
                and len(set(self.mor.values())) == len(self.mor))

    def is_bijective(self) -> bool:
        return (self.is_injective() and len(self.ob) == len(self.target.objects)
                and len(self.mor) == len(self.target.morphisms))

    def inverse(self) -> FinFunctor:
        if not self.is_bijective():
            raise ValueError("functor is not bijective")
        return FinFunctor(self.target, self.source,
                          {y: x for x, y in self.ob.items()},
                          {g: f for f, g in self.mor.items()})

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self.ob == other.ob and self.mor == other.mor

    __hash__ = None

    def key(self) -> tuple:
        """Hashable summary of the two maps."""
        return tuple(sorted(self.ob.items())), tuple(sorted(self.mor.items()))

    def __repr__(self):
        return f"FinFunctor({self.source!r} -> {self.target!r})"


def functor_violations(F: FinFunctor) -> list[Violation]:
    C, D = F.source, F.target
    out = []
    for x in C.objects:
        if F.ob.get(x) not in D.identities:
            out.append(Violation("EndpointMismatch", f"object {x!r} has no image in the target"))
    for f in C.morphisms:
        if F.mor.get(f) not in D.src:
            out.append(Violation("EndpointMismatch", f"morphism {f!r} has no image in the target"))
    if out:
        return out
    for f in C.morphisms:
        g = F.mor[f]
        if D.src[g] != F.ob[C.src[f]] or D.tgt[g] != F.ob[C.tgt[f]]:
            out.append(Violation("EndpointMismatch", f"{f!r} ↦ {g!r} does not respect endpoints"))
    if out:
        return out
    for x in C.objects:
        if F.mor[C.identities[x]] != D.identities[F.ob[x]]:
            out.append(Violation("IdentityNotPreserved", f"identity of {x!r}"))
    for g, f in C.composable_pairs():
        if F.mor[C.table[g, f]] != D.table[F.mor[g], F.mor[f]]:
            out.append(Violation("CompositionNotPreserved", f"{g!r}∘{f!r}"))
    return out


def validate_functor(C: FinCat, D: FinCat, objects=None, morphisms=None) -> FinFunctor:
    """Check a functor; ``objects`` may also be a ready :class:`FinFunctor`."""
    F = objects if isinstance(objects, FinFunctor) else FinFunctor(C, D, objects or {}, morphisms or {})
    raise_for(functor_violations(F))
    return F


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})


def inclusion(sub: FinCat, C: FinCat) -> FinFunctor:
    """Inclusion of a category whose ids are a subset of ``C``'s."""
    return FinFunctor(sub, C, {x: x for x in sub.objects}, {f: f for f in sub.morphisms})


def constant_functor(C: FinCat, D: FinCat, d: str) -> FinFunctor:
    i = D.identities[d]
    return FinFunctor(C, D, {x: d for x in C.objects}, {f: i for f in C.morphisms})


# ---------------------------------------------------------------- building blocks

def empty_category() -> FinCat:
    return FinCat((), (), {}, {})


def discrete(labels: Iterable[str]) -> FinCat:
    labels = list(labels)
    return FinCat(labels, [("id_" + x, x, x) for x in labels], {x: "id_" + x for x in labels}, {})


def terminal(label: str = "*") -> FinCat:
    return discrete([label])


def subcategory(C: FinCat, objects: Iterable[str], morphisms: Iterable[str] | None = None) -> FinCat:
    """Subcategory of ``C`` keeping its ids; full on ``objects`` by default."""
    wanted_objs = set(objects)
    objs = [x for x in C.objects if x in wanted_objs]
    keep = set(objs)
    if morphisms is None:
        mors = [m for m in C.morphisms if C.src[m] in keep and C.tgt[m] in keep]
    else:
        wanted = set(morphisms) | {C.identities[x] for x in objs}
        mors = [m for m in C.morphisms if m in wanted]
    bad = [Violation("NotASubcategory", f"{m!r} has an endpoint outside the object set")
           for m in mors if C.src[m] not in keep or C.tgt[m] not in keep]
    mset = set(mors)
    table = {}
    for f in mors:
        for g in C.out[C.tgt[f]]:
            if g in mset:
                h = C.table[g, f]
                if h not in mset:
                    bad.append(Violation("NotASubcategory", f"composite {g!r}∘{f!r} missing"))
                table[g, f] = h
    raise_for(bad)
    return FinCat(objs, [(m, C.src[m], C.tgt[m]) for m in mors],
                  {x: C.identities[x] for x in objs}, table)


def coproduct(parts: Iterable[tuple[str, FinCat]]) -> tuple[FinCat, dict[str, FinFunctor]]:
    """Disjoint union; cells of the part labelled ``k`` are renamed ``tag(k, id)``."""
    parts = list(parts)
    objects, mors, ids, table = [], [], {}, {}
    for k, C in parts:
        objects += [tag(k, x) for x in C.objects]
        mors += [(tag(k, m), tag(k, C.src[m]), tag(k, C.tgt[m])) for m in C.morphisms]
        ids.update({tag(k, x): tag(k, i) for x, i in C.identities.items()})
        table.update({(tag(k, g), tag(k, f)): tag(k, h) for (g, f), h in C.table.items()})
    S = FinCat(objects, mors, ids, table)
    injections = {
        k: FinFunctor(C, S, {x: tag(k, x) for x in C.objects}, {m: tag(k, m) for m in C.morphisms})
        for k, C in parts
    }
    return S, injections


def product(C: FinCat, D: FinCat) -> FinCat:
    objects = [tag(x, y) for x, y in product_ids(C.objects, D.objects)]
    mors = [(tag(f, g), tag(C.src[f], D.src[g]), tag(C.tgt[f], D.tgt[g]))
            for f, g in product_ids(C.morphisms, D.morphisms)]
    ids = {tag(x, y): tag(C.identities[x], D.identities[y]) for x, y in product_ids(C.objects, D.objects)}
    table = {(tag(g1, g2), tag(f1, f2)): tag(h1, h2)
             for (g1, f1), h1 in C.table.items() for (g2, f2), h2 in D.table.items()}
    return FinCat(objects, mors, ids, table)


def product_ids(a, b):
    return [(x, y) for x in a for y in b]


# ---------------------------------------------------------------- posets

def _poset_category(elements: list[str], less: set[tuple[str, str]]) -> FinCat:
    mors = [("id_" + x, x, x) for x in elements]
    mors += [(f"{x}<{y}", x, y) for x, y in sorted(less, key=lambda p: (elements.index(p[0]), elements.index(p[1])))]

    def arrow(x, y):
        return "id_" + x if x == y else f"{x}<{y}"

    table = {}
    for x, y in less:
        for z in elements:
            if (y, z) in less:
                table[arrow(y, z), arrow(x, y)] = arrow(x, z)
    return FinCat(elements, mors, {x: "id_" + x for x in elements}, table)


def poset_to_category(elements: Iterable[str], relation: Iterable[tuple[str, str]]) -> FinCat:
    """Category with one arrow ``x<y`` for each strict relation ``x ≤ y``.

    The relation must be transitive and antisymmetric; reflexive pairs are
    optional.
    """
    elements = list(elements)
    less = {(x, y) for x, y in relation if x != y}
    bad = []
    for x, y in less:
        if (y, x) in less:
            bad.append(Violation("NotAPartialOrder", f"{x!r} ≤ {y!r} ≤ {x!r}"))
    for x, y in less:
        for z in elements:
            if (y, z) in less and x != z and (x, z) not in less:
                bad.append(Violation("NotAPartialOrder", f"{x!r} ≤ {y!r} ≤ {z!r} but not {x!r} ≤ {z!r}"))
    raise_for(bad)
    return _poset_category(elements, less)


def poset_from_covers(elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> FinCat:
    """Poset generated by the given relations (transitive closure)."""
    elements = list(elements)
    succ = defaultdict(set)
    for x, y in covers:
        succ[x].add(y)
    less = set()
    for x in elements:
        seen, todo = set(), list(succ[x])
        while todo:
            y = todo.pop()
            if y in seen:
                continue
            seen.add(y)
            todo.extend(succ[y])
        if x in seen:
            raise NotAPartialOrder(f"cycle through {x!r}")
        less |= {(x, y) for y in seen}
    return _poset_category(elements, less)


def chain(n: int) -> FinCat:
    """The ordinal ``[n] = {0 < 1 < ... < n}``."""
    labels = [str(i) for i in range(n + 1)]
    return poset_to_category(labels, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]])


def is_poset(C: FinCat) -> bool:
    for (x, y), h in C._hom.items():
        if len(h) > 1:
            return False
        if x != y and C.hom(y, x):
            return False
    return True


# ---------------------------------------------------------------- search

def _signature(C: FinCat, x: str) -> tuple:
    outs = defaultdict(int)
    ins = defaultdict(int)
    for m in C.out[x]:
        outs[C.tgt[m]] += 1
    for m in C.into[x]:
        ins[C.src[m]] += 1
    endo = outs.pop(x, 0)
    ins.pop(x, None)
    return endo, tuple(sorted(outs.values())), tuple(sorted(ins.values()))


def _object_order(C: FinCat, first: Iterable[str]) -> list[str]:
    nbrs = defaultdict(set)
    for m in C.morphisms:
        nbrs[C.src[m]].add(C.tgt[m])
        nbrs[C.tgt[m]].add(C.src[m])
    order, seen = [], set()
    starts = list(first) + list(C.objects)
    for s in starts:
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(nbrs[x], key=C.objects.index):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _search(C: FinCat, D: FinCat, *, bijective: bool, fixed_objects=None, fixed_morphisms=None,
            budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[FinFunctor]:
    fixed_objects = dict(fixed_objects or {})
    fixed_morphisms = dict(fixed_morphisms or {})
    for f, g in fixed_morphisms.items():
        if f not in C.src or g not in D.src:
            return
        for a, b in ((C.src[f], D.src[g]), (C.tgt[f], D.tgt[g])):
            if fixed_objects.setdefault(a, b) != b:
                return
    if any(x not in C.identities or y not in D.identities for x, y in fixed_objects.items()):
        return
    if bijective:
        if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
            return
        sig_c = {x: _signature(C, x) for x in C.objects}
        sig_d = {y: _signature(D, y) for y in D.objects}
        if sorted(sig_c.values()) != sorted(sig_d.values()):
            return
    elif C.objects and not D.objects:
        return

    nodes = [0]

    def tick():
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBudgetExceeded(f"search exceeded {budget} nodes")

    order = _object_order(C, fixed_objects)
    phi: dict[str, str] = {}
    used_obj: set[str] = set()

    def fits(x, y):
        if bijective and sig_c[x] != sig_d[y]:
            return False
        if not D.hom(y, y):
            return False
        for x2, y2 in phi.items():
            a, b = C.hom(x, x2), C.hom(x2, x)
            c, d = D.hom(y, y2), D.hom(y2, y)
            if bijective:
                if len(a) != len(c) or len(b) != len(d):
                    return False
            elif (a and not c) or (b and not d):
                return False
        return True

    def objects_rec(k):
        if k == len(order):
            yield from morphisms_phase()
            return
        x = order[k]
        cands = [fixed_objects[x]] if x in fixed_objects else D.objects
        for y in cands:
            if bijective and y in used_obj:
                continue
            tick()
            if fits(x, y):
                phi[x] = y
                used_obj.add(y)
                yield from objects_rec(k + 1)
                del phi[x]
                used_obj.discard(y)

    psi: dict[str, str] = {}
    used_mor: set[str] = set()

    def push(f, v, trail):
        stack = [(f, v)]
        while stack:
            f, v = stack.pop()
            cur = psi.get(f)
            if cur is not None:
                if cur != v:
                    return False
                continue
            if D.src[v] != phi[C.src[f]] or D.tgt[v] != phi[C.tgt[f]]:
                return False
            if bijective and v in used_mor:
                return False
            psi[f] = v
            trail.append(f)
            if bijective:
                used_mor.add(v)
            for g in C.out[C.tgt[f]]:
                w = psi.get(g)
                if w is not None:
                    stack.append((C.table[g, f], D.table[w, v]))
            for h in C.into[C.src[f]]:
                w = psi.get(h)
                if w is not None:
                    stack.append((C.table[f, h], D.table[v, w]))
        return True

    def undo(trail):
        for f in trail:
            v = psi.pop(f)
            if bijective:
                used_mor.discard(v)

    free = [m for m in C.morphisms if not C.is_identity(m)]

    def morphisms_rec(k):
        while k < len(free) and free[k] in psi:
            k += 1
        if k == len(free):
            yield FinFunctor(C, D, dict(phi), dict(psi))
            return
        f = free[k]
        for v in D.hom(phi[C.src[f]], phi[C.tgt[f]]):
            tick()
            trail = []
            if push(f, v, trail):
                yield from morphisms_rec(k + 1)
            undo(trail)

    def morphisms_phase():
        trail = []
        ok = all(push(C.identities[x], D.identities[phi[x]], trail) for x in C.objects)
        ok = ok and all(push(f, g, trail) for f, g in fixed_morphisms.items())
        if ok:
            yield from morphisms_rec(0)
        undo(trail)

    yield from objects_rec(0)


def isomorphisms(C: FinCat, D: FinCat, **kw) -> Iterator[FinFunctor]:
    """All isomorphisms ``C → D`` (optionally constrained by fixed assignments)."""
    return _search(C, D, bijective=True, **kw)


def find_isomorphism(C: FinCat, D: FinCat, *, budget: int = DEFAULT_SEARCH_BUDGET,
                     fixed_objects=None, fixed_morphisms=None) -> FinFunctor | None:
    """An isomorphism of categories ``C → D``, or ``None`` if there is none.

    ``fixed_objects`` / ``fixed_morphisms`` pin part of the map, which is how
    cocone-compatible comparisons are expressed.
    """
    return next(isomorphisms(C, D, budget=budget, fixed_objects=fixed_objects,
                             fixed_morphisms=fixed_morphisms), None)


def functors(C: FinCat, D: FinCat, **kw) -> Iterator[FinFunctor]:
    """Every functor ``C → D``, by backtracking with composite propagation."""
    return _search(C, D, bijective=False, **kw)


def automorphisms(C: FinCat, **kw) -> list[FinFunctor]:
    return list(isomorphisms(C, C, **kw))


# ---------------------------------------------------------------- pullbacks

def pullback(F: FinFunctor, G: FinFunctor) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """Pullback of ``F: C → E`` and ``G: D → E`` with its two projections."""
    if F.target is not G.target and F.target != G.target:
        raise ValueError("functors must share a target")
    C, D = F.source, G.source
    objs = [(c, d) for c in C.objects for d in D.objects if F.ob[c] == G.ob[d]]
    by_pair = defaultdict(list)
    for f in C.morphisms:
        by_pair[F.mor[f]].append(f)
    mors = [(f, g) for g in D.morphisms for f in by_pair[G.mor[g]]]
    mors.sort(key=lambda p: (C.morphisms.index(p[0]), D.morphisms.index(p[1])))
    ids = {tag(c, d): tag(C.identities[c], D.identities[d]) for c, d in objs}
    mset = set(mors)
    table = {}
    for f1, g1 in mors:
        for f2 in C.out[C.tgt[f1]]:
            for g2 in D.out[D.tgt[g1]]:
                if (f2, g2) in mset:
                    table[tag(f2, g2), tag(f1, g1)] = tag(C.table[f2, f1], D.table[g2, g1])
    P = FinCat([tag(c, d) for c, d in objs],
               [(tag(f, g), tag(C.src[f], D.src[g]), tag(C.tgt[f], D.tgt[g])) for f, g in mors],
               ids, table)
    p1 = FinFunctor(P, C, {tag(c, d): c for c, d in objs}, {tag(f, g): f for f, g in mors})
    p2 = FinFunctor(P, D, {tag(c, d): d for c, d in objs}, {tag(f, g): g for f, g in mors})
    return P, p1, p2


def pullback_mediator(P: FinCat, a: FinFunctor, b: FinFunctor) -> FinFunctor:
    """The functor ``T → P`` induced by a cone ``a: T → C``, ``b: T → D``."""
    T = a.source
    return FinFunctor(T, P, {x: tag(a.ob[x], b.ob[x]) for x in T.objects},
                      {f: tag(a.mor[f], b.mor[f]) for f in T.morphisms})
