"""Categories presented by an acyclic graph and path relations.

Hom-sets are built one target at a time in topological order: a morphism
``x → y`` is a class of pairs (class of ``x → z``, edge ``z → y``).  Each
relation ``l ~ r`` is imposed at its end vertex for every prefix class, which
covers all contexts because later classes are keyed by earlier ones.  The
result is the exact quotient, without listing every path.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

from .errors import ClosureBudgetExceeded
from .fincat import FinCat


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def path_name(path: Sequence[str]) -> str:
    return path[0] if len(path) == 1 else "∘".join(reversed(path))


@dataclass
class Presentation:
    """A presented category plus the path bookkeeping used to map into it."""

    category: FinCat
    edge_src: dict[str, str]
    edge_tgt: dict[str, str]
    representative: dict[str, tuple[str, tuple[str, ...]]]
    _lookup: object = field(repr=False)

    def morphism_of(self, start: str, path: Sequence[str]) -> str:
        """The morphism represented by an edge path starting at ``start``."""
        return self._lookup(start, tuple(path))


def topological_order(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> list[str] | None:
    """Vertices in an order compatible with the edges, or ``None`` if there is a cycle."""
    graph = {v: set() for v in vertices}
    for _, s, t in edges:
        if s == t:
            return None
        graph[t].add(s)
    try:
        return list(TopologicalSorter(graph).static_order())
    except CycleError:
        return None


def present_acyclic(vertices: Sequence[str], edges: Sequence[tuple[str, str, str]],
                    relations: Iterable[tuple[str, Sequence[str], Sequence[str]]],
                    budget: int, topo: list[str] | None = None) -> Presentation:
    """The category generated by ``edges`` modulo ``relations``.

    A relation is ``(start, left_path, right_path)``; both paths run from
    ``start`` to a common end.  The graph must be acyclic (``topo`` may be
    given if already known).
    """
    vertices = list(vertices)
    esrc = {e: s for e, s, _ in edges}
    etgt = {e: t for e, _, t in edges}
    if topo is None:
        topo = topological_order(vertices, edges)
        if topo is None:
            raise ValueError("graph has a cycle")
    pos = {v: i for i, v in enumerate(topo)}
    into = defaultdict(list)
    for e, s, t in edges:
        into[t].append(e)

    def end(start, path):
        return etgt[path[-1]] if path else start

    rel_at = defaultdict(list)
    for start, left, right in relations:
        left, right = tuple(left), tuple(right)
        if left == right:
            continue
        rel_at[end(start, left)].append((start, left, right))

    uf = UnionFind()
    work = [0]

    def tick():
        work[0] += 1
        if work[0] > budget:
            raise ClosureBudgetExceeded(f"congruence closure exceeded {budget} steps")

    # classes[x][y]: roots of the hom-set x → y; rep[root]: a shortest path
    classes: dict[str, dict[str, list]] = {}
    rep: dict = {}

    def fold(root, path):
        for e in path:
            root = uf.find((root, e))
        return root

    for x in vertices:
        cx: dict[str, list] = {}
        for y in topo[pos[x]:]:
            keys = []
            if y == x:
                k = (x,)
                uf.find(k)
                rep[k] = ()
                keys.append(k)
            for e in into[y]:
                for r in cx.get(esrc[e], ()):
                    tick()
                    k = (r, e)
                    uf.find(k)
                    rep[k] = rep[r] + (e,)
                    keys.append(k)
            if not keys:
                continue
            for start, left, right in rel_at[y]:
                for p in cx.get(start, ()):
                    tick()
                    uf.union(fold(p, left), fold(p, right))
            roots = {}
            for k in keys:
                r = uf.find(k)
                if r not in roots or len(rep[k]) < len(rep[roots[r]]) or (
                        len(rep[k]) == len(rep[roots[r]]) and rep[k] < rep[roots[r]]):
                    roots[r] = k
            for r, k in roots.items():
                rep[r] = rep[k]
            cx[y] = list(roots)
        classes[x] = cx

    names = {}
    representative = {}
    morphisms, identities = [], {}
    for x in vertices:
        for y in sorted(classes[x], key=pos.__getitem__):
            for r in sorted(classes[x][y], key=lambda r: (len(rep[r]), rep[r])):
                p = rep[r]
                name = "id_" + x if not p else path_name(p)
                names[r] = name
                representative[name] = (x, p)
                morphisms.append((name, x, y))
                if not p:
                    identities[x] = name
    table = {}
    for f, x, y in morphisms:
        rf = fold(uf.find((x,)), representative[f][1])
        for z, roots in classes[y].items():
            for rg in roots:
                g = names[rg]
                table[g, f] = names[fold(rf, representative[g][1])]
    C = FinCat(vertices, morphisms, identities, table)

    def lookup(start, path):
        return names[fold(uf.find((start,)), path)]

    return Presentation(C, esrc, etgt, representative, lookup)
