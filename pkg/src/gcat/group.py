"""Finite groups as Cayley tables, coset G-sets and the orbit category."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import MalformedTable, NotASubgroup, Violation, raise_for
from .fincat import FinCat


class FinGroup:
    """A finite group; ``table[g, h]`` is the product ``gh``."""

    def __init__(self, elements: Iterable[str], table: Mapping[tuple[str, str], str], name: str = ""):
        self.elements = tuple(elements)
        self.table = dict(table)
        self.name = name
        self.identity = _find_identity(self.elements, self.table)
        self.inverse = {}
        if self.identity is not None:
            for g in self.elements:
                for h in self.elements:
                    if self.table.get((g, h)) == self.identity and self.table.get((h, g)) == self.identity:
                        self.inverse[g] = h
                        break
        self.index = {g: i for i, g in enumerate(self.elements)}

    def mul(self, g: str, h: str) -> str:
        return self.table[g, h]

    def inv(self, g: str) -> str:
        return self.inverse[g]

    def conj(self, g: str, h: str) -> str:
        """``g⁻¹ h g``."""
        return self.table[self.table[self.inverse[g], h], g]

    def order(self) -> int:
        return len(self.elements)

    def sort(self, subset: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(set(subset), key=self.index.__getitem__))

    def rows(self) -> list[list[str]]:
        return [[self.table[g, h] for h in self.elements] for g in self.elements]

    def __eq__(self, other):
        if not isinstance(other, FinGroup):
            return NotImplemented
        return self.elements == other.elements and self.table == other.table

    __hash__ = None

    def __repr__(self):
        return f"FinGroup({self.name or 'order ' + str(len(self.elements))})"


def _find_identity(elements, table):
    for e in elements:
        if all(table.get((e, g)) == g and table.get((g, e)) == g for g in elements):
            return e
    return None


def group_violations(G: FinGroup) -> list[Violation]:
    els = set(G.elements)
    if len(els) != len(G.elements):
        return [Violation("MalformedTable", "repeated element id")]
    out = [Violation("MalformedTable", f"product {g!r}·{h!r} missing or outside the group")
           for g in G.elements for h in G.elements if G.table.get((g, h)) not in els]
    if out:
        return out
    t = G.table
    for g, h, k in product(G.elements, repeat=3):
        if t[t[g, h], k] != t[g, t[h, k]]:
            out.append(Violation("NonAssociative", f"({g}{h}){k} ≠ {g}({h}{k})"))
            break
    if G.identity is None:
        out.append(Violation("NoIdentity", "no two-sided identity"))
    else:
        out += [Violation("NoInverse", f"{g!r} has no two-sided inverse")
                for g in G.elements if g not in G.inverse]
    return out


def validate_group(elements: Sequence[str], table, name: str = "") -> FinGroup:
    """Build a group from its element list and Cayley table.

    ``table`` is either a list of rows (``table[i][j]`` is the product of the
    i-th and j-th elements) or a mapping ``(g, h) → gh``.
    """
    elements = list(elements)
    if not isinstance(table, Mapping):
        rows = list(table)
        if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
            raise MalformedTable("Cayley table is not square over the element list")
        table = {(g, h): rows[i][j] for i, g in enumerate(elements) for j, h in enumerate(elements)}
    G = FinGroup(elements, table, name)
    raise_for(group_violations(G))
    return G


# ---------------------------------------------------------------- fixtures

def cyclic(n: int) -> FinGroup:
    els = [str(i) for i in range(n)]
    return FinGroup(els, {(a, b): str((int(a) + int(b)) % n) for a in els for b in els}, f"C{n}")


def permutation_group(generators: Iterable[Sequence[int]], name: str = "") -> FinGroup:
    """Closure of permutations in one-line notation; ``(gh)(i) = g(h(i))``."""
    gens = [tuple(g) for g in generators]
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        p = todo.pop()
        for g in gens:
            q = tuple(g[p[i]] for i in range(n))
            if q not in seen:
                seen.add(q)
                todo.append(q)
    perms = sorted(seen)
    label = {p: "".join(map(str, p)) for p in perms}
    table = {(label[p], label[q]): label[tuple(p[q[i]] for i in range(n))] for p in perms for q in perms}
    return FinGroup([label[p] for p in perms], table, name)


def symmetric(n: int) -> FinGroup:
    return permutation_group(permutations(range(n)), f"S{n}")


def dihedral(n: int) -> FinGroup:
    """Symmetries of the regular n-gon, order ``2n``."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return permutation_group([rot, ref], f"D{n}")


def quaternion() -> FinGroup:
    mult = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    names = {(1, 0): "1", (-1, 0): "-1", (1, 1): "i", (-1, 1): "-i",
             (1, 2): "j", (-1, 2): "-j", (1, 3): "k", (-1, 3): "-k"}
    els = list(names.values())
    code = {v: k for k, v in names.items()}
    table = {}
    for a in els:
        for b in els:
            (sa, ua), (sb, ub) = code[a], code[b]
            s, u = mult[ua, ub]
            table[a, b] = names[sa * sb * s, u]
    return FinGroup(els, table, "Q8")


def direct_product(G: FinGroup, H: FinGroup) -> FinGroup:
    def lab(a, b):
        return f"({a},{b})"
    els = [lab(a, b) for a in G.elements for b in H.elements]
    table = {(lab(a, b), lab(c, d)): lab(G.mul(a, c), H.mul(b, d))
             for a in G.elements for b in H.elements for c in G.elements for d in H.elements}
    return FinGroup(els, table, f"{G.name}x{H.name}")


def fixture_groups() -> list[FinGroup]:
    """Every group of order at most 8, up to isomorphism."""
    c2 = cyclic(2)
    return [cyclic(1), c2, cyclic(3), cyclic(4), direct_product(c2, c2), cyclic(5), cyclic(6),
            symmetric(3), cyclic(7), cyclic(8), direct_product(cyclic(4), c2),
            direct_product(direct_product(c2, c2), c2), dihedral(4), quaternion()]


# ---------------------------------------------------------------- subgroups

def generated(G: FinGroup, gens: Iterable[str]) -> frozenset[str]:
    out = {G.identity}
    todo = list(gens)
    while todo:
        g = todo.pop()
        if g in out:
            continue
        out.add(g)
        for h in list(out):
            for p in (G.mul(h, g), G.mul(g, h)):
                if p not in out:
                    todo.append(p)
    return frozenset(out)


def subgroups(G: FinGroup) -> list[tuple[str, ...]]:
    """All subgroups, each as an element tuple in group order.

    Sorted by order, then by element positions, so ``{e}`` comes first and
    ``G`` last.
    """
    found = {frozenset([G.identity])}
    todo = list(found)
    while todo:
        H = todo.pop()
        for g in G.elements:
            if g not in H:
                K = generated(G, set(H) | {g})
                if K not in found:
                    found.add(K)
                    todo.append(K)
    out = [G.sort(H) for H in found]
    out.sort(key=lambda H: (len(H), [G.index[g] for g in H]))
    return out


def subgroup_names(G: FinGroup) -> dict[str, tuple[str, ...]]:
    """Stable names ``H0, H1, ...`` in :func:`subgroups` order."""
    return {f"H{i}": H for i, H in enumerate(subgroups(G))}


def is_subgroup(G: FinGroup, H: Iterable[str]) -> bool:
    H = set(H)
    return (G.identity in H and all(h in G.index for h in H)
            and all(G.mul(a, G.inv(b)) in H for a in H for b in H))


def resolve_subgroup(G: FinGroup, spec) -> tuple[str, ...]:
    """Accept a subgroup name (``"H2"``) or an iterable of elements."""
    if isinstance(spec, str):
        names = subgroup_names(G)
        if spec in names:
            return names[spec]
        spec = [s for s in spec.split(",") if s]
    spec = list(spec)
    unknown = [g for g in spec if g not in G.index]
    if unknown:
        raise NotASubgroup(f"{unknown} are not elements of {G!r}")
    H = G.sort(spec)
    if not is_subgroup(G, H):
        raise NotASubgroup(f"{list(H)} is not a subgroup of {G!r}")
    return H


def subgroup_name(G: FinGroup, H: Iterable[str]) -> str:
    H = G.sort(H)
    for name, K in subgroup_names(G).items():
        if K == H:
            return name
    raise NotASubgroup(f"{list(H)} is not a subgroup of {G!r}")


# ---------------------------------------------------------------- G-sets

@dataclass
class GSet:
    group: FinGroup
    points: tuple[str, ...]
    action: dict[tuple[str, str], str]

    def act(self, g: str, x: str) -> str:
        return self.action[g, x]


def gset_violations(X: GSet) -> list[Violation]:
    G = X.group
    out = [Violation("NotEquivariant", f"e·{x} ≠ {x}") for x in X.points if X.act(G.identity, x) != x]
    for g in G.elements:
        for h in G.elements:
            for x in X.points:
                if X.act(g, X.act(h, x)) != X.act(G.mul(g, h), x):
                    out.append(Violation("NotEquivariant", f"{g}·({h}·{x}) ≠ ({g}{h})·{x}"))
    return out


def left_cosets(G: FinGroup, K: Sequence[str]) -> dict[str, frozenset[str]]:
    """Left cosets ``gK`` keyed by their first element in group order."""
    out = {}
    covered = set()
    for g in G.elements:
        if g not in covered:
            c = frozenset(G.mul(g, k) for k in K)
            covered |= c
            out[g] = c
    return out


def coset_rep(G: FinGroup, K: Sequence[str], g: str) -> str:
    return min((G.mul(g, k) for k in K), key=G.index.__getitem__)


def coset_gset(G: FinGroup, K) -> GSet:
    """``G/K`` with ``h·(gK) = (hg)K``; points are named by coset representatives."""
    K = resolve_subgroup(G, K)
    reps = list(left_cosets(G, K))
    action = {(h, r): coset_rep(G, K, G.mul(h, r)) for h in G.elements for r in reps}
    return GSet(G, tuple(reps), action)


def gset_fixed_points(X: GSet, H: Iterable[str]) -> tuple[str, ...]:
    H = list(H)
    return tuple(x for x in X.points if all(X.act(h, x) == x for h in H))


# ---------------------------------------------------------------- orbit category

@dataclass
class OrbitCategory:
    """The orbit category with bookkeeping for its cells.

    The morphism ``G/H → G/K`` named by the coset ``gK`` (with ``g⁻¹Hg ⊆ K``)
    sends ``xH`` to ``xgK``; so ``bL ∘ aK = (ab)L``.
    """

    group: FinGroup
    category: FinCat
    subgroups: dict[str, tuple[str, ...]]
    cells: dict[str, tuple[str, str, str]]          # morphism id -> (H, K, rep)
    by_cell: dict[tuple[str, str, str], str] = field(repr=False)

    @staticmethod
    def object(name: str) -> str:
        return "G/" + name

    def morphism(self, H: str, K: str, g: str) -> str:
        """Id of the morphism ``G/H → G/K`` named by the coset ``gK``."""
        return self.by_cell[H, K, coset_rep(self.group, self.subgroups[K], g)]

    @property
    def trivial(self) -> str:
        return next(iter(self.subgroups))

    def projection(self, K: str) -> str:
        """The quotient map ``G/e → G/K``."""
        return self.morphism(self.trivial, K, self.group.identity)

    def automorphism(self, g: str) -> str:
        """The self-map ``x ↦ xg`` of ``G/e``."""
        e = self.trivial
        return self.morphism(e, e, g)


def orbit_category(G: FinGroup) -> OrbitCategory:
    subs = subgroup_names(G)
    sets = {n: frozenset(H) for n, H in subs.items()}
    objects = [OrbitCategory.object(n) for n in subs]
    cells, mors = {}, []
    for h_name, H in subs.items():
        for k_name, K in subs.items():
            for r in left_cosets(G, K):
                if all(G.conj(r, h) in sets[k_name] for h in H):
                    mid = f"{h_name}->{k_name}:{r}"
                    cells[mid] = (h_name, k_name, r)
                    mors.append((mid, OrbitCategory.object(h_name), OrbitCategory.object(k_name)))
    by_cell = {v: k for k, v in cells.items()}
    identities = {OrbitCategory.object(n): by_cell[n, n, G.identity] for n in subs}
    table = {}
    for f, (h, k, a) in cells.items():
        for g, (k2, l, b) in cells.items():
            if k2 == k:
                table[g, f] = by_cell[h, l, coset_rep(G, subs[l], G.mul(a, b))]
    C = FinCat(objects, mors, identities, table)
    return OrbitCategory(G, C, subs, cells, by_cell)
